#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pilp {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Integer or -inf (std::nullopt). std::optional already orders nullopt below
/// every engaged value, which is exactly the -inf convention.
using ExtendedInteger = std::optional<Integer>;
using ExtendedRational = std::optional<Rational>;

Rational make_rational(const Integer& num, const Integer& den);

Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Non-negative residue of a modulo m (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);

Integer lcm(const Integer& a, const Integer& b);

/// Smallest c >= 0 with c^2 >= n (n >= 0).
Integer ceil_sqrt(const Integer& n);

std::string to_string(const Integer& v);
/// "p/q" for non-integers, "p" otherwise.
std::string to_string(const Rational& v);
std::string to_string(const ExtendedInteger& v);
std::string to_string(const ExtendedRational& v);

/// Accepts "p", "-p", "p/q".
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

}  // namespace pilp
