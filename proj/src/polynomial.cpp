#include "pilp/polynomial.hpp"

#include "pilp/error.hpp"

namespace pilp {

RationalPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> cs;
  cs.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) cs.emplace_back(c);
  return RationalPolynomial(std::move(cs));
}

std::pair<IntPolynomial, Integer> clear_denominators(const RationalPolynomial& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
  std::vector<Integer> cs;
  cs.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Rational scaled = c * den;
    cs.push_back(scaled.get_num());
  }
  return {IntPolynomial(std::move(cs)), den};
}

IntPolynomial to_integer(const RationalPolynomial& p) {
  std::vector<Integer> cs;
  cs.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    if (c.get_den() != 1) throw PreconditionError("polynomial has a non-integral coefficient");
    cs.push_back(c.get_num());
  }
  return IntPolynomial(std::move(cs));
}

Integer content(const IntPolynomial& p) {
  Integer g = 0;
  for (const auto& c : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

std::pair<RationalPolynomial, RationalPolynomial> divrem(const RationalPolynomial& a,
                                                         const RationalPolynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RationalPolynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + db)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial x = a;
  RationalPolynomial y = b;
  while (!y.is_zero()) {
    auto r = divrem(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  const Rational lead = x.leading();
  return x * Rational(1 / lead);
}

std::strong_ordering compare_eventually(const RationalPolynomial& p, const RationalPolynomial& q) {
  const int s = (p - q).leading_sign();
  return s <=> 0;
}

std::strong_ordering compare_eventually(const IntPolynomial& p, const IntPolynomial& q) {
  const int s = (p - q).leading_sign();
  return s <=> 0;
}

Integer eventual_sign_threshold(const RationalPolynomial& p) {
  if (p.degree() <= 0) return 0;
  const Rational lead = abs(p.leading());
  Rational worst = 0;
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) {
    const Rational ratio = abs(p.coeffs()[i]) / lead;
    if (ratio > worst) worst = ratio;
  }
  // Every real root z satisfies |z| <= 1 + worst.
  return ceil_of(worst + 1);
}

Integer eventual_sign_threshold(const IntPolynomial& p) {
  return eventual_sign_threshold(to_rational(p));
}

RationalPolynomial interpolate(std::span<const std::pair<Integer, Rational>> points) {
  if (points.empty()) throw PreconditionError("interpolate needs at least one point");
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].first == points[j].first) {
        throw PreconditionError("interpolate: duplicate abscissa " + to_string(points[i].first));
      }
    }
  }
  // Newton divided differences, then expansion of the Newton form.
  std::vector<Rational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const Rational span_t(points[i].first - points[i - level].first);
      dd[i] = (dd[i] - dd[i - 1]) / span_t;
    }
  }
  RationalPolynomial result = RationalPolynomial::constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    const RationalPolynomial factor{Rational(-points[k].first), Rational(1)};
    result = result * factor + RationalPolynomial::constant(dd[k]);
  }
  return result;
}

namespace {

std::string monomial_text(const Integer& abs_coeff, std::size_t degree, std::string_view var) {
  std::string out;
  if (degree == 0) return abs_coeff.get_str();
  if (abs_coeff != 1) out = abs_coeff.get_str() + "*";
  out += var;
  if (degree > 1) out += "^" + std::to_string(degree);
  return out;
}

std::size_t term_count(const IntPolynomial& p) {
  std::size_t count = 0;
  for (const auto& c : p.coeffs()) count += (c != 0);
  return count;
}

}  // namespace

std::string to_string(const IntPolynomial& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const Integer& c = p.coeffs()[i];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    out += monomial_text(abs(c), i, var);
  }
  return out;
}

std::string to_string(const RationalPolynomial& p, std::string_view var) {
  auto [numerator, den] = clear_denominators(p);
  std::string num = to_string(numerator, var);
  if (den == 1) return num;
  if (term_count(numerator) > 1) num = "(" + num + ")";
  return num + "/" + den.get_str();
}

}  // namespace pilp
