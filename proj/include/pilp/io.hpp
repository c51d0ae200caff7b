#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pilp/model.hpp"
#include "pilp/quasi_polynomial.hpp"

namespace pilp::io {

using Json = nlohmann::ordered_json;

// Integers are JSON numbers when they fit in 64 bits and decimal strings
// otherwise; rationals are numbers or "p/q" strings; BOTTOM is "-inf".
Json to_json(const Integer& v);
Json to_json(const Rational& v);
Json to_json(const IntPolynomial& p);
Json to_json(const RationalPolynomial& p);
Json to_json(const ExtendedPolynomial& p);
Json to_json(const QuasiPolynomial& qp);
Json to_json(const Pilp& p);
Json to_json(const ExtendedInteger& v);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
IntPolynomial int_polynomial_from_json(const Json& j);
RationalPolynomial rational_polynomial_from_json(const Json& j);
ExtendedPolynomial extended_polynomial_from_json(const Json& j);
QuasiPolynomial quasi_polynomial_from_json(const Json& j);
Pilp pilp_from_json(const Json& j);

/// Canonical text of a PILP file; parse_pilp(serialize(p)) == p.
std::string serialize(const Pilp& p);
/// Throws ParseError on malformed input or dimension violations.
Pilp parse_pilp(std::string_view text);

std::string read_file(const std::filesystem::path& path);
Pilp load_pilp(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pilp::io
