#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pilp/model.hpp"
#include "pilp/quasi_polynomial.hpp"

namespace pilp {

/// Search budget for quasi-polynomial inference.
struct InferenceConfig {
  std::size_t d_max = 12;
  unsigned deg_max = 4;
  std::size_t validate_count = 5;  // held-out samples per residue class
  Integer t_start = 8;             // first threshold guess
  Integer t_cap = 1000;            // no sample above t_cap
  /// Shared t values compared between the two modes of f_ell_structure.
  std::size_t cross_check_count = 50;

  /// Throws PreconditionError unless every field is positive and
  /// validate_count >= 2.
  void check() const;
};

using Sampler = std::function<ExtendedInteger(const Integer& t)>;

struct Sample {
  Integer t;
  ExtendedInteger value;
};

struct ValidationEntry {
  Integer t;
  ExtendedRational predicted;
  ExtendedInteger actual;
  bool match = false;
};

struct EqpCertificate {
  QuasiPolynomial qp;
  std::vector<Sample> samples_used;
  std::vector<ValidationEntry> validation;

  bool valid() const;
};

struct NoFit {
  std::string reason;
  std::size_t samples_evaluated = 0;
};

using InferenceResult = std::variant<EqpCertificate, NoFit>;

/// For d = 1..d_max and N = t_start, 2 t_start, ...: every residue class
/// mod d is fitted from the first deg_max + 1 class members above N and
/// checked on validate_count more, the first right after the fit window and
/// the rest spread up to t_cap. The first (d, N) that validates wins.
InferenceResult infer_qp(const Sampler& sampler, const InferenceConfig& cfg);

struct VerificationReport {
  std::size_t checked = 0;
  std::vector<ValidationEntry> mismatches;

  bool passed() const { return mismatches.empty(); }
};

/// Compares qp_eval against the sampler on every t in [t_lo, t_hi].
/// Precondition: t_lo > threshold.
VerificationReport verify_qp(const QuasiPolynomial& qp, const Sampler& sampler, const Integer& t_lo,
                             const Integer& t_hi);

/// Pointwise ell-th largest of the inputs (BOTTOM when fewer than ell finite
/// values), valid above the returned threshold.
QuasiPolynomial kth_of_eqps(std::span<const QuasiPolynomial> fs, std::size_t ell);

/// f_1 .. f_ell at once: result[k] = kth_of_eqps(fs, k + 1).
std::vector<QuasiPolynomial> top_of_eqps(std::span<const QuasiPolynomial> fs, std::size_t ell);

// ---- constructive pipeline ----

struct ConstructiveOptions {
  /// Route canonical programs with reduced data through slack + digits
  /// instead of going straight to the layer recursion.
  bool force_digit_route = false;
};

struct ConstructiveStats {
  std::size_t layer_programs = 0;
  std::size_t pruned_layers = 0;
  std::size_t projections = 0;
  std::size_t digit_parts = 0;
};

struct ConstructiveResult {
  std::vector<QuasiPolynomial> values;  // f_1 .. f_ell
  ConstructiveStats stats;
};

/// f_1 .. f_ell built from the slack/translation/digit/layer/projection
/// reductions, with no sampling. Precondition: p.bounded.
ConstructiveResult constructive_top_values(const Pilp& p, std::size_t ell, const ConstructiveOptions& options = {});

enum class StructureMode { kDirect, kConstructive };

/// Direct mode runs infer_qp over the oracle sampler t -> f_ell(p, t).
/// Constructive mode runs the reduction pipeline and validates the result
/// against the oracle on cross_check_count consecutive t above its
/// threshold and against the direct certificate when that one fits.
InferenceResult f_ell_structure(const Pilp& p, std::size_t ell, const InferenceConfig& cfg,
                                StructureMode mode = StructureMode::kDirect);

/// t -> f_ell(p, t) through the enumeration oracle.
Sampler f_ell_sampler(const Pilp& p, std::size_t ell, bool distinct = false);

}  // namespace pilp
