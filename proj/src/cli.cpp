#include "pilp/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "pilp/eqp.hpp"
#include "pilp/error.hpp"
#include "pilp/hull.hpp"
#include "pilp/io.hpp"
#include "pilp/oracle.hpp"
#include "pilp/transforms.hpp"

namespace pilp::cli {

using io::Json;
using io::to_json;

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace {

Json ext_json(const ExtendedRational& v) { return v ? to_json(*v) : Json("-inf"); }

Json vector_json(std::span<const Integer> v) {
  Json j = Json::array();
  for (const auto& e : v) j.push_back(to_json(e));
  return j;
}

Json poly_vector_json(const PolyVector& v) {
  Json j = Json::array();
  for (const auto& e : v) j.push_back(to_json(e));
  return j;
}

Json map_json(const AffineParamMap& m) {
  Json matrix = Json::array();
  for (const auto& row : m.matrix) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    matrix.push_back(std::move(r));
  }
  Json offset = Json::array();
  for (const auto& e : m.offset) offset.push_back(to_json(e));
  return Json{{"target_dim", m.target_dim}, {"source_dim", m.source_dim}, {"matrix", matrix}, {"offset", offset}};
}

Json certificate_json(const EqpCertificate& cert) {
  Json samples = Json::array();
  for (const auto& s : cert.samples_used) samples.push_back(Json{{"t", to_json(s.t)}, {"value", to_json(s.value)}});
  Json validation = Json::array();
  for (const auto& v : cert.validation) {
    validation.push_back(Json{{"t", to_json(v.t)},
                              {"predicted", ext_json(v.predicted)},
                              {"actual", to_json(v.actual)},
                              {"match", v.match}});
  }
  return Json{{"qp", to_json(cert.qp)},
              {"text", to_string(cert.qp)},
              {"valid", cert.valid()},
              {"samples", samples},
              {"validation", validation}};
}

Json no_fit_json(const NoFit& nf) {
  return Json{{"no_fit", Json{{"reason", nf.reason}, {"samples_evaluated", nf.samples_evaluated}}}};
}

Json family_json(const ParametricVertexFamily& fam) {
  Json classes = Json::array();
  for (const auto& cls : fam.classes) {
    Json c = Json::array();
    for (const auto& v : cls) c.push_back(poly_vector_json(v));
    classes.push_back(std::move(c));
  }
  Json samples = Json::array();
  for (const auto& s : fam.samples) samples.push_back(Json{{"t", to_json(s.t)}, {"vertices", to_json(s.value)}});
  return Json{{"period", fam.period}, {"threshold", to_json(fam.threshold)}, {"classes", classes}, {"samples", samples}};
}

std::string poly_vector_text(const PolyVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::vector<Integer> parse_t_list(const std::string& text) {
  std::vector<Integer> ts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ts.push_back(parse_integer(item));
  }
  if (ts.empty()) throw ParseError("empty t list: '" + text + "'");
  return ts;
}

std::pair<Integer, Integer> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("expected A:B, got '" + text + "'");
  Integer a = parse_integer(text.substr(0, colon));
  Integer b = parse_integer(text.substr(colon + 1));
  if (a > b) throw ParseError("empty range '" + text + "'");
  return {a, b};
}

std::string pass(bool ok) { return ok ? "pass" : "fail"; }

using PointSet = std::set<IntVector>;

PointSet point_set(const Pilp& p, const Integer& t) {
  auto pts = enumerate_lattice_points(p, t).points;
  return PointSet(pts.begin(), pts.end());
}

Integer dot(const std::vector<IntPolynomial>& c, const Integer& t, std::span<const Integer> x) {
  Integer s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i].eval(t) * x[i];
  return s;
}

// The shared checks for slack and translation: the map sends L(t) into the
// new program injectively, hits all of it, and shifts the objective.
Json verify_transformed(const Pilp& src, const Transformed& tr, const Integer& t) {
  const PointSet from = point_set(src, t);
  const PointSet to = point_set(tr.program, t);
  PointSet images;
  bool inside = true;
  bool objective = true;
  for (const auto& x : from) {
    const IntVector y = tr.map.apply(t, x);
    inside = inside && to.count(y);
    objective = objective && dot(tr.program.c, t, y) == dot(src.c, t, x) + tr.objective_shift.eval(t);
    images.insert(y);
  }
  const bool bijection = inside && images.size() == from.size() && images.size() == to.size();
  return Json{{"t", to_json(t)},
              {"source_count", from.size()},
              {"target_count", to.size()},
              {"bijection", pass(bijection)},
              {"objective", pass(objective)}};
}

Json verify_digits(const DigitDecomposition& dd, const Integer& t) {
  Integer tr = 1;
  for (unsigned j = 0; j < dd.r; ++j) tr *= t;
  const auto src = enumerate_lattice_points(instantiate(dd.source, t), Integer(tr - 1)).points;
  std::vector<PointSet> parts;
  std::size_t total = 0;
  for (const auto& part : dd.parts) {
    parts.push_back(point_set(part.program, t));
    total += parts.back().size();
  }
  bool bijection = total == src.size();
  bool disjoint = true;
  bool objective = true;
  for (const auto& x : src) {
    const IntVector y = dd.forward(t, x);
    std::size_t hits = 0;
    for (std::size_t a = 0; a < parts.size(); ++a) {
      if (!parts[a].count(y)) continue;
      ++hits;
      objective = objective && dot(dd.parts[a].program.c, t, y) == dot(dd.source.c, t, x);
    }
    disjoint = disjoint && hits <= 1;
    bijection = bijection && hits == 1 && dd.inverse_map.apply(t, y) == x;
  }
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      for (const auto& y : parts[a]) disjoint = disjoint && !parts[b].count(y);
    }
  }
  Json counts = Json::array();
  for (const auto& s : parts) counts.push_back(s.size());
  return Json{{"t", to_json(t)},
              {"source_count", src.size()},
              {"part_counts", counts},
              {"part_total", total},
              {"bijection", pass(bijection)},
              {"disjoint", pass(disjoint)},
              {"objective", pass(objective)}};
}

Json verify_layers(const LayerDecomposition& ld, const Integer& t) {
  const PointSet all = point_set(ld.source, t);
  std::vector<ExtendedInteger> pooled;
  PointSet seen;
  bool disjoint = true;
  bool inside = true;
  for (const auto& layer : ld.layers) {
    const PointSet pts = point_set(layer.program, t);
    for (const auto& x : pts) {
      disjoint = disjoint && seen.insert(x).second;
      inside = inside && all.count(x);
    }
    for (const auto& v : f_ell(layer.program, t, ld.ell0).values) pooled.push_back(v);
  }
  std::sort(pooled.begin(), pooled.end(), std::greater<>());
  const ExtendedInteger layered = pooled.size() >= ld.ell0 ? pooled[ld.ell0 - 1] : std::nullopt;
  const ExtendedInteger direct = f_ell(ld.source, t, ld.ell0).values.back();
  return Json{{"t", to_json(t)},
              {"f_direct", to_json(direct)},
              {"f_layered", to_json(layered)},
              {"identity", pass(direct == layered)},
              {"disjoint", pass(disjoint && inside)}};
}

Json verify_projection(const Pilp& q, const Projection& pr, std::span<const Integer> a, const IntPolynomial& b,
                       const Integer& k, const Integer& t) {
  const PointSet layer = point_set(q, t);
  bool on_plane = true;
  for (const auto& x : layer) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    on_plane = on_plane && s == b.eval(t) - k;
  }
  Json j{{"t", to_json(t)}, {"layer_count", layer.size()}, {"on_hyperplane", pass(on_plane)}};
  const bool in_class = pr.residue && mod_floor(t - pr.residue->p, pr.residue->q) == 0;
  j["in_residue_class"] = in_class;
  if (!in_class) {
    j["bijection"] = pass(layer.empty());
    return j;
  }
  const PointSet reduced = point_set(pr.reduced, t);
  PointSet images;
  bool inside = true;
  for (const auto& y : reduced) {
    const IntVector x = pr.map.apply(t, y);
    inside = inside && layer.count(x);
    images.insert(x);
  }
  const bool bijection = inside && images.size() == reduced.size() && images.size() == layer.size();
  const ExtendedInteger f_layer = f_ell(q, t, 1).values[0];
  const ExtendedRational f_recovered = pr.recover(t, f_ell(pr.reduced, t, 1).values[0]);
  const ExtendedRational f_layer_q = f_layer ? ExtendedRational(Rational(*f_layer)) : std::nullopt;
  j["reduced_count"] = reduced.size();
  j["bijection"] = pass(bijection);
  j["f_layer"] = to_json(f_layer);
  j["f_recovered"] = ext_json(f_recovered);
  j["objective"] = pass(f_layer_q == f_recovered);
  return j;
}

bool all_pass(const Json& checks) {
  for (const auto& c : checks) {
    for (const auto& [key, value] : c.items()) {
      if (value.is_string() && value.get<std::string>() == "fail") return false;
    }
  }
  return true;
}

struct Config {
  std::size_t d_max = InferenceConfig{}.d_max;
  unsigned deg_max = InferenceConfig{}.deg_max;
  std::size_t validate_count = InferenceConfig{}.validate_count;
  std::string t_start = "8";
  std::string t_cap = "1000";
  std::size_t cross_check = InferenceConfig{}.cross_check_count;

  void add_to(CLI::App* app) {
    app->add_option("--d-max", d_max, "largest period tried");
    app->add_option("--deg-max", deg_max, "largest branch degree");
    app->add_option("--validate-count", validate_count, "held-out samples per residue class");
    app->add_option("--t-start", t_start, "first threshold guess");
    app->add_option("--t-cap", t_cap, "no sample above this t");
    app->add_option("--cross-check", cross_check, "shared t values for constructive cross-checks");
  }

  InferenceConfig build() const {
    InferenceConfig cfg;
    cfg.d_max = d_max;
    cfg.deg_max = deg_max;
    cfg.validate_count = validate_count;
    cfg.t_start = parse_integer(t_start);
    cfg.t_cap = parse_integer(t_cap);
    cfg.cross_check_count = cross_check;
    cfg.check();
    return cfg;
  }

  Json echo() const {
    return Json{{"d_max", d_max},          {"deg_max", deg_max},      {"validate_count", validate_count},
                {"t_start", t_start},      {"t_cap", t_cap},          {"cross_check", cross_check}};
  }
};

Sampler make_sampler(const Pilp& p, const std::string& kind, std::size_t ell) {
  if (kind == "fell") return f_ell_sampler(p, ell);
  if (kind == "count") return [p](const Integer& t) -> ExtendedInteger { return count_lattice_points(p, t); };
  if (kind == "diagonal") {
    // t -> f_t(t) - t
    return [p](const Integer& t) -> ExtendedInteger {
      if (!t.fits_ulong_p()) throw PreconditionError("diagonal sampler needs t below 2^64");
      const auto v = f_ell(p, t, static_cast<std::size_t>(t.get_ui())).values.back();
      if (!v) return std::nullopt;
      return Integer(*v - t);
    };
  }
  throw ParseError("unknown sampler '" + kind + "'");
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  void load(const std::string& file) {
    const std::string text = io::read_file(file);
    digest_ = sha256_hex(text);
    program_ = io::parse_pilp(text);
  }

  void cmd_eval();
  int cmd_infer();
  int cmd_decompose();
  int cmd_hull();
  int cmd_verify();

  bool structured() const { return format_ == "structured"; }

  void emit(int status) {
    if (!structured()) {
      out_ << human_.str();
      return;
    }
    Json doc{{"schema", std::string(kSchema)}, {"command", command_}};
    doc["result"] = result_;
    doc["manifest"] = Json{{"command", command_},
                           {"input", file_},
                           {"input_sha256", digest_},
                           {"config", config_},
                           {"outputs", outputs_},
                           {"exit_status", status}};
    out_ << doc.dump(2) << "\n";
  }

  int fail(int status, std::string_view kind, const std::string& message) {
    if (structured()) {
      result_ = Json{{"error", Json{{"kind", std::string(kind)}, {"message", message}}}};
      human_.str("");
      emit(status);
    } else {
      out_ << human_.str();
      err_ << "error: " << message << "\n";
    }
    return status;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::ostringstream human_;
  Json result_ = Json::object();
  Json config_ = Json::object();
  Json outputs_ = Json::array();
  std::string command_;
  std::string digest_;
  Pilp program_;

  // options
  std::string format_ = "human";
  bool seedless = false;
  std::string file_;
  std::string t_;
  std::size_t ell_max_ = 1;
  bool distinct_ = false;
  std::string table_;
  std::size_t ell_ = 1;
  std::string mode_;
  std::string sampler_ = "fell";
  Config cfg_;
  unsigned r_ = 0;
  std::size_t ell0_ = 1;
  std::size_t row_ = 0;
  std::string k_ = "0";
  std::string verify_list_;
  std::string out_dir_;
  bool force_digits_ = false;
  bool verify_flag_ = false;
  std::string cert_file_;
  std::string range_;
};

void Runner::cmd_eval() {
  config_ = Json{{"t", t_}, {"ell_max", ell_max_}, {"distinct", distinct_}, {"table", table_}};
  std::vector<Integer> ts;
  if (!table_.empty()) {
    const auto [lo, hi] = parse_range(table_);
    for (Integer t = lo; t <= hi; ++t) ts.push_back(t);
  } else {
    if (t_.empty()) throw ParseError("eval needs --t or --table");
    ts.push_back(parse_integer(t_));
  }
  Json rows = Json::array();
  if (!table_.empty()) {
    human_ << "t count";
    for (std::size_t l = 1; l <= ell_max_; ++l) human_ << " f" << l;
    human_ << "\n";
  }
  for (const auto& t : ts) {
    const ValueList vl = f_ell(program_, t, ell_max_, distinct_);
    const Integer count = count_lattice_points(program_, t);
    Json values = Json::array();
    for (const auto& v : vl.values) values.push_back(to_json(v));
    rows.push_back(Json{{"t", to_json(t)}, {"count", to_json(count)}, {"values", values}});
    if (!table_.empty()) {
      human_ << to_string(t) << " " << to_string(count);
      for (const auto& v : vl.values) human_ << " " << to_string(v);
    } else {
      human_ << "t=" << to_string(t) << " count=" << to_string(count);
      for (std::size_t l = 0; l < vl.values.size(); ++l) human_ << " f" << l + 1 << "=" << to_string(vl.values[l]);
    }
    human_ << "\n";
  }
  result_ = Json{{"rows", rows}};
}

int Runner::cmd_infer() {
  if (mode_.empty()) mode_ = "direct";
  config_ = Json{{"ell", ell_}, {"mode", mode_}, {"sampler", sampler_}, {"inference", cfg_.echo()}};
  const InferenceConfig cfg = cfg_.build();
  InferenceResult res;
  if (mode_ != "direct" && mode_ != "constructive") throw ParseError("unknown mode '" + mode_ + "'");
  if (sampler_ == "fell") {
    res = f_ell_structure(program_, ell_, cfg, mode_ == "direct" ? StructureMode::kDirect : StructureMode::kConstructive);
  } else {
    if (mode_ != "direct") throw ParseError("--mode constructive needs --sampler fell");
    res = infer_qp(make_sampler(program_, sampler_, ell_), cfg);
  }
  if (const auto* nf = std::get_if<NoFit>(&res)) {
    result_ = no_fit_json(*nf);
    human_ << "NO_FIT: " << nf->reason << " (" << nf->samples_evaluated << " samples)\n";
    return kNoFit;
  }
  const auto& cert = std::get<EqpCertificate>(res);
  result_ = Json{{"certificate", certificate_json(cert)}};
  human_ << to_string(cert.qp) << "\n";
  human_ << "threshold=" << to_string(cert.qp.threshold) << " samples=" << cert.samples_used.size() << "\n";
  human_ << "validation:\n";
  for (const auto& v : cert.validation) {
    human_ << "  t=" << to_string(v.t) << " predicted=" << to_string(v.predicted) << " actual=" << to_string(v.actual)
           << " " << (v.match ? "ok" : "MISMATCH") << "\n";
  }
  return cert.valid() ? kOk : kFailure;
}

int Runner::cmd_decompose() {
  config_ = Json{{"mode", mode_}, {"r", r_}, {"ell0", ell0_}, {"row", row_}, {"k", k_}, {"verify", verify_list_},
                 {"out", out_dir_}};
  const std::vector<Integer> ts = verify_list_.empty() ? std::vector<Integer>{} : parse_t_list(verify_list_);
  Json manifest{{"mode", mode_}, {"source_form", std::string(to_string(program_.form))}};
  std::vector<Pilp> parts;
  Json parts_meta = Json::array();
  Json checks = Json::array();
  const auto default_r = [&](const Pilp& p) { return r_ ? r_ : coordinate_bound_exponent(p).r; };

  if (mode_ == "slack" || mode_ == "translate") {
    Transformed tr;
    if (mode_ == "slack") {
      tr = canonical_to_standard_slack(program_);
    } else {
      if (program_.form != Form::kGeneral) throw FormError("translate needs a general-form program");
      manifest["r"] = default_r(program_);
      tr = general_to_canonical_translate(program_, default_r(program_));
    }
    manifest["map"] = map_json(tr.map);
    manifest["objective_shift"] = to_json(tr.objective_shift);
    parts.push_back(tr.program);
    parts_meta.push_back(Json::object());
    for (const auto& t : ts) checks.push_back(verify_transformed(program_, tr, t));
    human_ << mode_ << ": 1 part, form " << to_string(tr.program.form) << "\n";
  } else if (mode_ == "digits") {
    if (program_.form != Form::kStandard) throw FormError("digits needs a standard-form program");
    const SignNormalization norm = normalize_b_signs(program_);
    if (norm.degenerate) throw FormError("digits needs b not identically zero");
    const unsigned r = default_r(norm.program);
    const DigitDecomposition dd = standard_to_reduced_digits(norm.program, r);
    manifest["r"] = r;
    manifest["levels"] = dd.levels;
    manifest["threshold"] = to_json(dd.threshold);
    manifest["inverse_map"] = map_json(dd.inverse_map);
    for (const auto& part : dd.parts) {
      Json carries = Json::array();
      for (const auto& row : part.carries) carries.push_back(vector_json(row));
      parts.push_back(part.program);
      parts_meta.push_back(Json{{"carries", carries}});
    }
    for (const auto& t : ts) checks.push_back(verify_digits(dd, t));
    human_ << "digits: r=" << r << " levels=" << dd.levels << " parts=" << dd.parts.size()
           << " threshold=" << to_string(dd.threshold) << "\n";
  } else if (mode_ == "layers") {
    const LayerDecomposition ld = hyperplane_layers(program_, ell0_);
    manifest["ell0"] = ell0_;
    Json rows = Json::array();
    for (const auto& row : ld.rows) {
      Json a = Json::array();
      for (const auto& e : row.a) a.push_back(to_json(e));
      rows.push_back(Json{{"a", a}, {"b", to_json(row.b)}});
    }
    manifest["rows"] = rows;
    manifest["counts"] = vector_json(ld.counts);
    for (const auto& layer : ld.layers) {
      parts.push_back(layer.program);
      parts_meta.push_back(Json{{"row", layer.row}, {"k", to_json(layer.k)}});
    }
    for (const auto& t : ts) checks.push_back(verify_layers(ld, t));
    human_ << "layers: ell0=" << ell0_ << " rows=" << ld.rows.size() << " layers=" << ld.layers.size();
    for (std::size_t i = 0; i < ld.counts.size(); ++i) human_ << " c" << i << "=" << to_string(ld.counts[i]);
    human_ << "\n";
  } else if (mode_ == "project") {
    if (!has_nonnegativity(program_.form)) throw FormError("project needs a canonical program");
    if (row_ >= program_.m) throw PreconditionError("row index out of range");
    IntVector a;
    for (const auto& e : program_.a[row_]) {
      if (e.degree() > 0) throw FormError("project needs a constant hyperplane row");
      a.push_back(e.is_zero() ? Integer(0) : e.coeffs()[0]);
    }
    const IntPolynomial& b = program_.b[row_];
    const Integer k = parse_integer(k_);
    const Projection pr = project_to_hyperplane(program_, a, b, k);
    manifest["row"] = Json{{"a", vector_json(a)}, {"b", to_json(b)}, {"k", to_json(k)}};
    manifest["residue"] =
        pr.residue ? Json{{"p", to_json(pr.residue->p)}, {"q", to_json(pr.residue->q)}} : Json("never");
    manifest["bezout"] = Json{{"d", to_json(pr.bezout.d)}, {"beta", vector_json(pr.bezout.beta)}};
    Json kernel = Json::array();
    for (const auto& v : pr.kernel) kernel.push_back(vector_json(v));
    manifest["kernel"] = kernel;
    manifest["g"] = to_json(pr.g);
    manifest["K"] = to_json(pr.K);
    manifest["z"] = to_json(pr.z);
    manifest["Z"] = to_json(pr.Z);
    manifest["map"] = map_json(pr.map);
    parts.push_back(pr.reduced);
    parts_meta.push_back(Json::object());
    for (const auto& t : ts) checks.push_back(verify_projection(program_, pr, a, b, k, t));
    human_ << "project: residue ";
    if (pr.residue) {
      human_ << "t = " << to_string(pr.residue->p) << " (mod " << to_string(pr.residue->q) << ")";
    } else {
      human_ << "never";
    }
    human_ << " z=" << to_string(pr.z) << " Z=" << to_string(pr.Z) << "\n";
  } else {
    throw ParseError("unknown decompose mode '" + mode_ + "'");
  }

  for (std::size_t i = 0; i < parts.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "part_%03zu.json", i);
    parts_meta[i]["file"] = name;
    parts_meta[i]["form"] = std::string(to_string(parts[i].form));
    if (!out_dir_.empty()) {
      const std::string text = io::serialize(parts[i]);
      parts_meta[i]["sha256"] = sha256_hex(text);
      io::write_file(std::filesystem::path(out_dir_) / name, text);
      outputs_.push_back(name);
    }
  }
  manifest["parts"] = parts_meta;
  if (!ts.empty()) manifest["verify"] = checks;
  for (const auto& c : checks) {
    human_ << " ";
    for (const auto& [key, value] : c.items()) {
      human_ << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    human_ << "\n";
  }
  if (!out_dir_.empty()) {
    io::write_file(std::filesystem::path(out_dir_) / "manifest.json", manifest.dump(2) + "\n");
    outputs_.push_back("manifest.json");
  }
  result_ = Json{{"manifest", manifest}};
  return all_pass(checks) ? kOk : kFailure;
}

int Runner::cmd_hull() {
  config_ = Json{{"verify", verify_flag_}, {"inference", cfg_.echo()}};
  const InferenceConfig cfg = cfg_.build();
  const HullInference res = infer_hull_structure(program_, cfg);
  if (const auto* nf = std::get_if<NoFit>(&res)) {
    result_ = no_fit_json(*nf);
    human_ << "NO_FIT: " << nf->reason << " (" << nf->samples_evaluated << " samples)\n";
    return kNoFit;
  }
  const auto& fam = std::get<ParametricVertexFamily>(res);
  result_ = Json{{"family", family_json(fam)}};
  human_ << "d=" << fam.period << " threshold=" << to_string(fam.threshold) << "\n";
  for (std::size_t j = 0; j < fam.classes.size(); ++j) {
    human_ << "class " << j << ":";
    for (const auto& v : fam.classes[j]) human_ << " " << poly_vector_text(v);
    human_ << "\n";
  }
  if (!verify_flag_) return kOk;
  // Fresh t: ten per class beyond the largest sample.
  Integer start = fam.threshold + 1;
  for (const auto& s : fam.samples) start = std::max(start, Integer(s.t + 1));
  Json checks = Json::array();
  bool ok = true;
  const Integer end = start + Integer(10 * fam.period);
  for (Integer t = start; t < end; ++t) {
    const bool match = fam.vertices_at(t) == lattice_hull_vertices(program_, t);
    ok = ok && match;
    checks.push_back(Json{{"t", to_json(t)}, {"match", match}});
  }
  result_["verify"] = checks;
  human_ << "verify: " << checks.size() << " fresh t " << (ok ? "pass" : "fail") << "\n";
  return ok ? kOk : kFailure;
}

int Runner::cmd_verify() {
  config_ = Json{{"certificate", cert_file_}, {"ell", ell_}, {"sampler", sampler_}, {"range", range_}};
  Json cert;
  try {
    cert = Json::parse(io::read_file(cert_file_));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  if (cert.contains("result")) cert = cert["result"];
  if (cert.contains("certificate")) cert = cert["certificate"];
  if (cert.contains("qp")) cert = cert["qp"];
  const QuasiPolynomial qp = io::quasi_polynomial_from_json(cert);
  Integer lo = qp.threshold + 1;
  Integer hi = lo + 99;
  if (!range_.empty()) std::tie(lo, hi) = parse_range(range_);
  const VerificationReport rep = verify_qp(qp, make_sampler(program_, sampler_, ell_), lo, hi);
  Json mism = Json::array();
  for (const auto& v : rep.mismatches) {
    mism.push_back(Json{{"t", to_json(v.t)}, {"predicted", ext_json(v.predicted)}, {"actual", to_json(v.actual)}});
  }
  result_ = Json{{"qp", to_string(qp)}, {"checked", rep.checked}, {"passed", rep.passed()}, {"mismatches", mism}};
  human_ << to_string(qp) << "\n";
  human_ << "checked t in [" << to_string(lo) << ", " << to_string(hi) << "]: " << rep.checked << " values, "
         << rep.mismatches.size() << " mismatches\n";
  for (const auto& v : rep.mismatches) {
    human_ << "  t=" << to_string(v.t) << " predicted=" << to_string(v.predicted) << " actual=" << to_string(v.actual)
           << "\n";
  }
  return rep.passed() ? kOk : kFailure;
}

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Parametric integer linear programs: oracle, inference, decompositions, hulls", "pilp"};
  app.require_subcommand(1);
  app.add_option("--format", format_, "output format")->check(CLI::IsMember({"human", "structured"}));
  app.add_flag("--seedless", seedless, "no randomness is used anywhere; accepted for scripts");

  auto* eval = app.add_subcommand("eval", "f_1..f_ell and |L(t)| from the enumeration oracle");
  eval->add_option("file", file_, "PILP file")->required();
  eval->add_option("--t", t_, "parameter value");
  eval->add_option("--ell-max", ell_max_, "number of top values")->check(CLI::PositiveNumber);
  eval->add_flag("--distinct", distinct_, "count distinct objective values only");
  eval->add_option("--table", table_, "per-t table over A:B");

  auto* infer = app.add_subcommand("infer", "certify f_ell as an eventual quasi-polynomial");
  infer->add_option("file", file_, "PILP file")->required();
  infer->add_option("--ell", ell_, "which largest value")->check(CLI::PositiveNumber);
  infer->add_option("--mode", mode_, "direct or constructive")->check(CLI::IsMember({"direct", "constructive"}));
  infer->add_option("--sampler", sampler_, "fell, count or diagonal")
      ->check(CLI::IsMember({"fell", "count", "diagonal"}));
  cfg_.add_to(infer);

  auto* decompose = app.add_subcommand("decompose", "write the parts of one reduction step");
  decompose->add_option("file", file_, "PILP file")->required();
  decompose->add_option("--mode", mode_, "slack, translate, digits, layers or project")
      ->required()
      ->check(CLI::IsMember({"slack", "translate", "digits", "layers", "project"}));
  decompose->add_option("--r", r_, "digit / translation exponent (default: coordinate bound)");
  decompose->add_option("--ell0", ell0_, "layer depth")->check(CLI::PositiveNumber);
  decompose->add_option("--row", row_, "hyperplane row for project");
  decompose->add_option("--k", k_, "hyperplane offset for project");
  decompose->add_option("--verify", verify_list_, "comma-separated t values for the harness");
  decompose->add_option("--out", out_dir_, "directory for part files and manifest.json");

  auto* hull = app.add_subcommand("hull", "parametric vertex family of conv(L(t))");
  hull->add_option("file", file_, "PILP file")->required();
  hull->add_flag("--verify", verify_flag_, "re-check at fresh t");
  cfg_.add_to(hull);

  auto* verify = app.add_subcommand("verify", "re-check a certificate against the oracle");
  verify->add_option("file", file_, "PILP file")->required();
  verify->add_option("--cert", cert_file_, "certificate JSON (infer structured output or a quasi-polynomial)")
      ->required();
  verify->add_option("--ell", ell_, "which largest value")->check(CLI::PositiveNumber);
  verify->add_option("--sampler", sampler_, "fell, count or diagonal")
      ->check(CLI::IsMember({"fell", "count", "diagonal"}));
  verify->add_option("--range", range_, "t range A:B (default: 100 values above the threshold)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kParseError;
  }

  command_ = app.get_subcommands().front()->get_name();
  try {
    load(file_);
    if (command_ == "eval") {
      cmd_eval();
      emit(kOk);
      return kOk;
    }
    int status = kOk;
    if (command_ == "infer") status = cmd_infer();
    if (command_ == "decompose") status = cmd_decompose();
    if (command_ == "hull") status = cmd_hull();
    if (command_ == "verify") status = cmd_verify();
    emit(status);
    return status;
  } catch (const ParseError& e) {
    return fail(kParseError, "parse", e.what());
  } catch (const UnboundedError& e) {
    return fail(kUnbounded, "unbounded", e.what());
  } catch (const FormError& e) {
    return fail(kIncompatibleForm, "form", e.what());
  } catch (const std::exception& e) {
    return fail(kFailure, "error", e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace pilp::cli
