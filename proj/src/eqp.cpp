#include "pilp/eqp.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pilp/error.hpp"
#include "pilp/lp.hpp"
#include "pilp/oracle.hpp"
#include "pilp/transforms.hpp"

namespace pilp {

void InferenceConfig::check() const {
  if (d_max == 0) throw PreconditionError("d_max must be positive");
  if (deg_max == 0) throw PreconditionError("deg_max must be positive");
  if (validate_count < 2) throw PreconditionError("validate_count must be at least 2");
  if (t_start < 1) throw PreconditionError("t_start must be positive");
  if (t_cap <= t_start) throw PreconditionError("t_cap must exceed t_start");
  if (cross_check_count == 0) throw PreconditionError("cross_check_count must be positive");
}

bool EqpCertificate::valid() const {
  return std::all_of(validation.begin(), validation.end(), [](const ValidationEntry& e) { return e.match; });
}

namespace {

ExtendedRational widen(const ExtendedInteger& v) {
  if (!v) return std::nullopt;
  return Rational(*v);
}

class MemoSampler {
 public:
  explicit MemoSampler(const Sampler& sampler) : sampler_(sampler) {}

  const ExtendedInteger& operator()(const Integer& t) {
    auto it = cache_.find(t);
    if (it == cache_.end()) it = cache_.emplace(t, sampler_(t)).first;
    return it->second;
  }

  std::size_t evaluated() const { return cache_.size(); }

 private:
  const Sampler& sampler_;
  std::map<Integer, ExtendedInteger> cache_;
};

// Validation abscissae for one class: the member right after the fit window,
// then members spread evenly up to the last one not above t_cap.
std::vector<Integer> validation_points(const Integer& first, const Integer& d, const Integer& t_cap,
                                       std::size_t count) {
  std::vector<Integer> out;
  if (first > t_cap) return out;
  const Integer steps = (t_cap - first) / d;
  const Integer spans(static_cast<unsigned long>(count - 1));
  if (steps < spans) return out;
  for (std::size_t i = 0; i < count; ++i) {
    const Integer k = (steps * static_cast<unsigned long>(i)) / spans;
    out.push_back(first + k * d);
  }
  return out;
}

std::size_t reduce_period(const std::vector<ExtendedPolynomial>& branches) {
  const std::size_t L = branches.size();
  for (std::size_t p = 1; p < L; ++p) {
    if (L % p != 0) continue;
    bool ok = true;
    for (std::size_t j = p; j < L && ok; ++j) ok = branches[j] == branches[j % p];
    if (ok) return p;
  }
  return L;
}

QuasiPolynomial with_minimal_period(QuasiPolynomial qp) {
  const std::size_t p = reduce_period(qp.branches);
  qp.branches.resize(p);
  qp.period = p;
  return qp;
}

}  // namespace

InferenceResult infer_qp(const Sampler& sampler, const InferenceConfig& cfg) {
  cfg.check();
  MemoSampler sample(sampler);
  for (std::size_t d = 1; d <= cfg.d_max; ++d) {
    const Integer dd(static_cast<unsigned long>(d));
    for (Integer N = cfg.t_start;; N *= 2) {
      EqpCertificate cert;
      cert.qp.period = d;
      cert.qp.threshold = N;
      cert.qp.branches.assign(d, ExtendedPolynomial::bottom());
      bool in_budget = true;
      bool fits = true;
      for (std::size_t j = 0; j < d && fits && in_budget; ++j) {
        const Integer first = N + 1 + mod_floor(Integer(static_cast<unsigned long>(j)) - N - 1, dd);
        std::vector<Integer> fit_ts;
        for (unsigned i = 0; i <= cfg.deg_max; ++i) fit_ts.push_back(first + dd * i);
        const auto check_ts = validation_points(fit_ts.back() + dd, dd, cfg.t_cap, cfg.validate_count);
        if (check_ts.empty()) {
          in_budget = false;
          break;
        }
        std::vector<std::pair<Integer, Rational>> points;
        std::size_t bottoms = 0;
        for (const auto& t : fit_ts) {
          const ExtendedInteger& v = sample(t);
          cert.samples_used.push_back({t, v});
          if (v) {
            points.emplace_back(t, Rational(*v));
          } else {
            ++bottoms;
          }
        }
        if (bottoms != 0 && bottoms != fit_ts.size()) {
          fits = false;
          break;
        }
        const ExtendedPolynomial branch = bottoms != 0 ? ExtendedPolynomial::bottom()
                                                       : ExtendedPolynomial(interpolate(points));
        for (const auto& t : check_ts) {
          ValidationEntry entry{t, branch.eval(t), sample(t), false};
          entry.match = entry.predicted == widen(entry.actual);
          cert.validation.push_back(entry);
          if (!entry.match) {
            fits = false;
            break;
          }
        }
        cert.qp.branches[j] = branch;
      }
      if (!in_budget) break;
      if (fits) return cert;
    }
  }
  return NoFit{"no period d <= " + std::to_string(cfg.d_max) + " with branch degree <= " +
                   std::to_string(cfg.deg_max) + " validated up to t_cap = " + to_string(cfg.t_cap),
               sample.evaluated()};
}

VerificationReport verify_qp(const QuasiPolynomial& qp, const Sampler& sampler, const Integer& t_lo,
                             const Integer& t_hi) {
  VerificationReport report;
  for (Integer t = t_lo; t <= t_hi; ++t) {
    ValidationEntry entry{t, qp_eval(qp, t), sampler(t), false};
    entry.match = entry.predicted == widen(entry.actual);
    ++report.checked;
    if (!entry.match) report.mismatches.push_back(std::move(entry));
  }
  return report;
}

QuasiPolynomial kth_of_eqps(std::span<const QuasiPolynomial> fs, std::size_t ell) {
  if (ell == 0) throw PreconditionError("ell must be positive");
  std::size_t L = 1;
  Integer threshold = 0;
  for (const auto& f : fs) {
    L = std::lcm(L, f.period);
    if (f.threshold > threshold) threshold = f.threshold;
  }
  QuasiPolynomial out;
  out.period = L;
  out.branches.assign(L, ExtendedPolynomial::bottom());
  for (std::size_t j = 0; j < L; ++j) {
    std::vector<ExtendedPolynomial> branches;
    branches.reserve(fs.size());
    for (const auto& f : fs) branches.push_back(f.branches[j % f.period]);
    const auto order = eventual_sort(branches);
    if (ell <= order.size()) out.branches[j] = branches[order[ell - 1]];
    // Beyond every pairwise sign threshold the concrete order is the eventual one.
    std::vector<RationalPolynomial> distinct;
    for (const auto& b : branches) {
      if (b.is_bottom()) continue;
      if (std::find(distinct.begin(), distinct.end(), b.polynomial()) == distinct.end()) {
        distinct.push_back(b.polynomial());
      }
    }
    for (std::size_t a = 0; a < distinct.size(); ++a) {
      for (std::size_t b = a + 1; b < distinct.size(); ++b) {
        const Integer th = eventual_sign_threshold(distinct[a] - distinct[b]);
        if (th > threshold) threshold = th;
      }
    }
  }
  out.threshold = threshold;
  return with_minimal_period(std::move(out));
}

std::vector<QuasiPolynomial> top_of_eqps(std::span<const QuasiPolynomial> fs, std::size_t ell) {
  std::vector<QuasiPolynomial> out;
  out.reserve(ell);
  for (std::size_t k = 1; k <= ell; ++k) out.push_back(kth_of_eqps(fs, k));
  return out;
}

namespace {

using Values = std::vector<QuasiPolynomial>;

Values all_bottom(std::size_t ell, const Integer& threshold) {
  return Values(ell, QuasiPolynomial::constant(ExtendedPolynomial::bottom(), threshold));
}

void raise_threshold(Values& vs, const Integer& threshold) {
  for (auto& v : vs) {
    if (threshold > v.threshold) v.threshold = threshold;
  }
}

void shift_values(Values& vs, const RationalPolynomial& shift) {
  for (auto& v : vs) {
    for (auto& b : v.branches) b = b.shifted(shift);
  }
}

// The branch values outside t = p (mod q) become BOTTOM.
QuasiPolynomial restrict_to_class(const QuasiPolynomial& qp, const Residue& residue) {
  const std::size_t q = residue.q.get_ui();
  const std::size_t p = residue.p.get_ui();
  const std::size_t L = std::lcm(qp.period, q);
  QuasiPolynomial out = qp.lifted(L);
  for (std::size_t j = 0; j < L; ++j) {
    if (j % q != p) out.branches[j] = ExtendedPolynomial::bottom();
  }
  return with_minimal_period(std::move(out));
}

bool eventually_nonnegative(const IntPolynomial& b) { return b.leading_sign() >= 0; }

class ConstructiveDriver {
 public:
  explicit ConstructiveDriver(const ConstructiveOptions& options) : options_(options) {}

  Values top(const Pilp& p, std::size_t ell) {
    require_valid(p);
    switch (p.form) {
      case Form::kGeneral:
        return general(p, ell);
      case Form::kStandard:
        return standard(p, ell);
      case Form::kCanonical:
      case Form::kReducedCanonical:
        if (has_reduced_data(p) && !options_.force_digit_route) return reduced(p, ell);
        return top(canonical_to_standard_slack(p).program, ell);
    }
    throw Error("unknown form");
  }

  const ConstructiveStats& stats() const { return stats_; }

 private:
  Values general(const Pilp& p, std::size_t ell) {
    const CoordinateBound cb = coordinate_bound_exponent(p);
    const Transformed tr = general_to_canonical_translate(p, cb.r);
    Values vs = top(tr.program, ell);
    shift_values(vs, -to_rational(tr.objective_shift));
    raise_threshold(vs, cb.threshold);
    return vs;
  }

  Values standard(const Pilp& p, std::size_t ell) {
    const SignNormalization norm = normalize_b_signs(p);
    if (norm.degenerate) {
      // Bounded with b = 0: the only lattice point is the origin.
      Values vs = all_bottom(ell, 0);
      vs[0] = QuasiPolynomial::constant(RationalPolynomial{});
      return vs;
    }
    const CoordinateBound cb = coordinate_bound_exponent(norm.program);
    const DigitDecomposition dd = standard_to_reduced_digits(norm.program, cb.r);
    stats_.digit_parts += dd.parts.size();
    Values collected;
    for (const auto& part : dd.parts) {
      Values sub = reduced(part.program, ell);
      collected.insert(collected.end(), sub.begin(), sub.end());
    }
    Values vs = collected.empty() ? all_bottom(ell, 0) : top_of_eqps(collected, ell);
    raise_threshold(vs, std::max(cb.threshold, dd.threshold));
    return vs;
  }

  // Largest t at which R(t) can be nonempty, or nullopt when it is
  // nonempty for arbitrarily large t. Uses the LP over (x, t).
  static std::optional<Integer> last_nonempty(const Pilp& p) {
    LinearSystem sys;
    sys.num_vars = p.n + 1;
    sys.nonnegative.assign(p.n + 1, true);
    for (std::size_t i = 0; i < p.m; ++i) {
      std::vector<Rational> row;
      for (const auto& e : p.a[i]) row.emplace_back(e.coeff(0));
      row.emplace_back(-p.b[i].coeff(1));
      sys.add(std::move(row), Relation::kLessEqual, Rational(p.b[i].coeff(0)));
    }
    std::vector<Rational> t_row(p.n + 1);
    t_row[p.n] = 1;
    sys.add(t_row, Relation::kGreaterEqual, Rational(1));
    const LpResult res = maximize(sys, t_row);
    if (res.status == LpStatus::kUnbounded) return std::nullopt;
    if (res.status == LpStatus::kInfeasible) return Integer(0);
    return floor_of(res.value);
  }

  Values project(const Pilp& q, std::span<const Integer> a, const IntPolynomial& b, const Integer& k,
                 std::size_t ell) {
    ++stats_.projections;
    const Projection proj = project_to_hyperplane(q, a, b, k);
    if (!proj.residue) return all_bottom(ell, 0);
    Values sub = reduced(proj.reduced, ell);
    const Rational inv_z = make_rational(1, proj.z);
    for (auto& v : sub) {
      for (auto& br : v.branches) br = br.shifted(to_rational(proj.Z)).scaled(inv_z);
      v = restrict_to_class(v, *proj.residue);
    }
    return sub;
  }

  // Canonical program with constant A and degree <= 1 right-hand sides.
  Values reduced(const Pilp& p, std::size_t ell) {
    if (p.n == 0) {
      Integer threshold = 0;
      bool feasible = true;
      for (const auto& b : p.b) {
        threshold = std::max(threshold, eventual_sign_threshold(b));
        feasible = feasible && eventually_nonnegative(b);
      }
      Values vs = all_bottom(ell, threshold);
      if (feasible) vs[0] = QuasiPolynomial::constant(RationalPolynomial{}, threshold);
      return vs;
    }
    if (auto last = last_nonempty(p)) {
      ++stats_.pruned_layers;
      return all_bottom(ell, *last);
    }
    // A feasible set confined to a hyperplane is projected right away.
    for (std::size_t i = 0; i < p.m; ++i) {
      for (std::size_t j = i + 1; j < p.m; ++j) {
        if (p.b[j] != -p.b[i]) continue;
        bool opposite = true;
        bool nonzero = false;
        for (std::size_t h = 0; h < p.n && opposite; ++h) {
          opposite = p.a[j][h] == -p.a[i][h];
          nonzero = nonzero || !p.a[i][h].is_zero();
        }
        if (opposite && nonzero) {
          IntVector a;
          for (const auto& e : p.a[i]) a.push_back(e.coeff(0));
          return project(p, a, p.b[i], Integer(0), ell);
        }
      }
    }
    const LayerDecomposition layers = hyperplane_layers(p, ell);
    Integer threshold = 0;
    for (const auto& b : layers.zero_row_rhs) {
      const Integer th = eventual_sign_threshold(b);
      if (!eventually_nonnegative(b)) return all_bottom(ell, th);
      threshold = std::max(threshold, th);
    }
    Values collected;
    for (const auto& layer : layers.layers) {
      ++stats_.layer_programs;
      const ParametricRow& row = layers.rows[layer.row];
      IntVector a;
      for (const auto& e : row.a) a.push_back(e.coeff(0));
      Values sub;
      if (auto last = last_nonempty(layer.program)) {
        ++stats_.pruned_layers;
        sub = all_bottom(ell, *last);
      } else {
        sub = project(layer.program, a, row.b, layer.k, ell);
      }
      collected.insert(collected.end(), sub.begin(), sub.end());
    }
    Values vs = top_of_eqps(collected, ell);
    raise_threshold(vs, threshold);
    return vs;
  }

  ConstructiveOptions options_;
  ConstructiveStats stats_;
};

}  // namespace

ConstructiveResult constructive_top_values(const Pilp& p, std::size_t ell, const ConstructiveOptions& options) {
  if (ell == 0) throw PreconditionError("ell must be positive");
  if (!p.bounded) throw PreconditionError("the constructive pipeline requires the boundedness assertion");
  ConstructiveDriver driver(options);
  ConstructiveResult out;
  out.values = driver.top(p, ell);
  out.stats = driver.stats();
  return out;
}

Sampler f_ell_sampler(const Pilp& p, std::size_t ell, bool distinct) {
  if (ell == 0) throw PreconditionError("ell must be positive");
  return [p, ell, distinct](const Integer& t) { return f_ell(p, t, ell, distinct).values[ell - 1]; };
}

InferenceResult f_ell_structure(const Pilp& p, std::size_t ell, const InferenceConfig& cfg, StructureMode mode) {
  cfg.check();
  if (!p.bounded) throw PreconditionError("f_ell_structure requires the boundedness assertion");
  const Sampler oracle = f_ell_sampler(p, ell);
  InferenceResult direct = infer_qp(oracle, cfg);
  if (mode == StructureMode::kDirect) return direct;

  EqpCertificate cert;
  cert.qp = constructive_top_values(p, ell).values[ell - 1];
  const EqpCertificate* direct_cert = std::get_if<EqpCertificate>(&direct);
  for (std::size_t i = 1; i <= cfg.cross_check_count; ++i) {
    const Integer t = cert.qp.threshold + static_cast<unsigned long>(i);
    ValidationEntry entry{t, qp_eval(cert.qp, t), oracle(t), false};
    entry.match = entry.predicted == widen(entry.actual);
    if (direct_cert != nullptr && t > direct_cert->qp.threshold) {
      entry.match = entry.match && qp_eval(direct_cert->qp, t) == entry.predicted;
    }
    cert.samples_used.push_back({t, entry.actual});
    cert.validation.push_back(std::move(entry));
  }
  return cert;
}

}  // namespace pilp
