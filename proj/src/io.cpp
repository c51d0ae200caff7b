#include "pilp/io.hpp"

#include <fstream>
#include <sstream>

#include "pilp/error.hpp"

namespace pilp::io {

Json to_json(const Integer& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Json to_json(const Rational& v) {
  if (v.get_den() == 1) return to_json(v.get_num());
  return Json(v.get_str());
}

Json to_json(const IntPolynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const RationalPolynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const ExtendedPolynomial& p) {
  if (p.is_bottom()) return Json("-inf");
  return to_json(p.polynomial());
}

Json to_json(const ExtendedInteger& v) { return v ? to_json(*v) : Json("-inf"); }

Json to_json(const QuasiPolynomial& qp) {
  Json branches = Json::array();
  for (const auto& b : qp.branches) branches.push_back(to_json(b));
  return Json{{"period", qp.period}, {"threshold", to_json(qp.threshold)}, {"branches", branches}};
}

Json to_json(const Pilp& p) {
  Json a = Json::array();
  for (const auto& row : p.a) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    a.push_back(std::move(r));
  }
  Json b = Json::array();
  for (const auto& e : p.b) b.push_back(to_json(e));
  Json c = Json::array();
  for (const auto& e : p.c) c.push_back(to_json(e));
  return Json{{"form", std::string(to_string(p.form))},
              {"n", p.n},
              {"m", p.m},
              {"A", a},
              {"b", b},
              {"c", c},
              {"bounded", p.bounded}};
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw ParseError("expected an integer, got " + j.dump());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational, got " + j.dump());
}

IntPolynomial int_polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a coefficient list, got " + j.dump());
  std::vector<Integer> cs;
  for (const auto& e : j) cs.push_back(integer_from_json(e));
  return IntPolynomial(std::move(cs));
}

RationalPolynomial rational_polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a coefficient list, got " + j.dump());
  std::vector<Rational> cs;
  for (const auto& e : j) cs.push_back(rational_from_json(e));
  return RationalPolynomial(std::move(cs));
}

ExtendedPolynomial extended_polynomial_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "-inf") return ExtendedPolynomial::bottom();
  return rational_polynomial_from_json(j);
}

QuasiPolynomial quasi_polynomial_from_json(const Json& j) {
  try {
    QuasiPolynomial qp;
    qp.period = j.at("period").get<std::size_t>();
    qp.threshold = integer_from_json(j.at("threshold"));
    qp.branches.clear();
    for (const auto& b : j.at("branches")) qp.branches.push_back(extended_polynomial_from_json(b));
    if (qp.period == 0 || qp.branches.size() != qp.period) {
      throw ParseError("quasi-polynomial needs exactly `period` branches");
    }
    return qp;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed quasi-polynomial: ") + e.what());
  }
}

namespace {

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

Pilp pilp_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("PILP file must hold a JSON object");
  Pilp p;
  try {
    p.form = parse_form(j.at("form").get<std::string>());
    p.n = size_field(j, "n");
    p.m = size_field(j, "m");
    for (const auto& row : j.at("A")) {
      if (!row.is_array()) throw ParseError("rows of A must be arrays");
      std::vector<IntPolynomial> r;
      for (const auto& e : row) r.push_back(int_polynomial_from_json(e));
      p.a.push_back(std::move(r));
    }
    for (const auto& e : j.at("b")) p.b.push_back(int_polynomial_from_json(e));
    for (const auto& e : j.at("c")) p.c.push_back(int_polynomial_from_json(e));
    p.bounded = j.value("bounded", true);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed PILP: ") + e.what());
  }
  // The A array of an n = 0 program is m empty rows; tolerate an empty A.
  if (p.n == 0 && p.a.empty()) p.a.assign(p.m, {});
  const auto diags = validate(p);
  if (has_errors(diags)) {
    std::string msg = "invalid PILP:";
    for (const auto& d : diags) {
      if (d.severity == Diagnostic::Severity::kError) msg += " " + d.message + ";";
    }
    throw ParseError(msg);
  }
  return p;
}

std::string serialize(const Pilp& p) { return to_json(p).dump(2) + "\n"; }

Pilp parse_pilp(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("PILP file is not valid JSON: ") + e.what());
  }
  return pilp_from_json(j);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Pilp load_pilp(const std::filesystem::path& path) { return parse_pilp(read_file(path)); }

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace pilp::io
