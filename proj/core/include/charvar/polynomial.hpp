#pragma once

#include <string>
#include <utility>
#include <vector>

#include "charvar/matrix.hpp"

namespace charvar {

// Dense univariate polynomial in q with exact rational coefficients,
// stored lowest degree first with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& constant);
  Polynomial(long constant) : Polynomial(Rational(constant)) {}
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial q();
  static Polynomial monomial(const Rational& c, std::size_t degree);
  // (q - 1)^k, (q + 1)^k etc. come up constantly.
  static Polynomial binomial_power(long shift, unsigned exponent);

  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  Rational coefficient(std::size_t i) const;
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Rational leading() const;
  bool has_integer_coefficients() const;

  Rational evaluate(const Rational& x) const;
  Polynomial derivative() const;
  Polynomial pow(unsigned e) const;
  Polynomial monic() const;
  // Largest k with (q - root)^k dividing this; zero polynomial gives -1.
  int multiplicity(const Rational& root) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "q") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Quotient and remainder; divisor must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(Polynomial a, Polynomial b);

// Reduced quotient num/den with monic denominator.
class RationalPoly {
 public:
  RationalPoly() : num_(), den_(Rational(1)) {}
  RationalPoly(const Polynomial& p) : num_(p), den_(Rational(1)) {}
  RationalPoly(const Rational& c) : RationalPoly(Polynomial(c)) {}
  RationalPoly(long c) : RationalPoly(Polynomial(c)) {}
  RationalPoly(Polynomial num, Polynomial den);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }
  // Throws InternalConsistency when the denominator does not cancel.
  Polynomial as_polynomial() const;
  Rational evaluate(const Rational& x) const;
  RationalPoly pow(long e) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const RationalPoly& o);
  RationalPoly& operator/=(const RationalPoly& o);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend RationalPoly operator/(RationalPoly a, const RationalPoly& b) { return a /= b; }
  RationalPoly operator-() const { return RationalPoly(-num_, den_); }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(const std::string& var = "q") const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

// Factorization over Z: sign/content times primitive factors with
// multiplicities. Factors found by cyclotomic trial division, then the
// square-free decomposition of what is left (which need not be irreducible).
struct Factorization {
  Rational content;
  std::vector<std::pair<Polynomial, unsigned>> factors;

  Polynomial expand() const;
  std::string to_string(const std::string& var = "q") const;
};

Factorization factor(const Polynomial& p);
Polynomial cyclotomic(unsigned n);

}  // namespace charvar
