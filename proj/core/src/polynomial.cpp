#include "charvar/polynomial.hpp"

#include <sstream>

#include "charvar/error.hpp"

namespace charvar {

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) c_.push_back(constant);
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

Polynomial Polynomial::q() { return monomial(Rational(1), 1); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::binomial_power(long shift, unsigned exponent) {
  return Polynomial(std::vector<Rational>{Rational(shift), Rational(1)}).pow(exponent);
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::coefficient(std::size_t i) const {
  return i < c_.size() ? c_[i] : Rational(0);
}

Rational Polynomial::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

bool Polynomial::has_integer_coefficients() const {
  for (const auto& x : c_)
    if (x.get_den() != 1) return false;
  return true;
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> v;
  for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<long>(i));
  return Polynomial(std::move(v));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(Rational(1)), base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  Polynomial r = *this;
  const Rational lc = leading();
  for (auto& x : r.c_) x /= lc;
  return r;
}

int Polynomial::multiplicity(const Rational& root) const {
  if (is_zero()) return -1;
  const Polynomial lin(std::vector<Rational>{-root, Rational(1)});
  Polynomial p = *this;
  int k = 0;
  for (;;) {
    auto [quo, rem] = divmod(p, lin);
    if (!rem.is_zero()) return k;
    p = std::move(quo);
    ++k;
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

namespace {

std::string format_coefficient(const Rational& c) {
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_str();
}

}  // namespace

std::string Polynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (k == 0) {
      out << format_coefficient(mag);
      continue;
    }
    if (!unit) out << format_coefficient(mag) << "*";
    out << var;
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::InternalConsistency, "E_DIV_ZERO", "polynomial division by zero");
  const auto& bc = b.coefficients();
  std::vector<Rational> rem = a.coefficients();
  if (rem.size() < bc.size()) return {Polynomial(), a};
  std::vector<Rational> quo(rem.size() - bc.size() + 1, Rational(0));
  const Rational lead = bc.back();
  for (std::size_t k = quo.size(); k-- > 0;) {
    Rational f = rem[k + bc.size() - 1] / lead;
    quo[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[k + j] -= f * bc[j];
  }
  rem.resize(bc.size() - 1);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RationalPoly::RationalPoly(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::InternalConsistency, "E_DIV_ZERO", "zero denominator");
  normalize();
}

void RationalPoly::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  if (den_.degree() > 0) {
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  const Rational lc = den_.leading();
  if (lc != 1) {
    num_ *= Polynomial(Rational(1) / lc);
    den_ *= Polynomial(Rational(1) / lc);
  }
}

Polynomial RationalPoly::as_polynomial() const {
  if (!is_polynomial())
    throw Error(ErrorKind::InternalConsistency, "E_NOT_POLYNOMIAL",
                "expression does not reduce to a polynomial: " + to_string());
  return num_;
}

Rational RationalPoly::evaluate(const Rational& x) const {
  Rational d = den_.evaluate(x);
  if (d == 0) throw Error(ErrorKind::InternalConsistency, "E_DIV_ZERO", "pole at evaluation point");
  return num_.evaluate(x) / d;
}

RationalPoly RationalPoly::pow(long e) const {
  if (e >= 0) return RationalPoly(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  return RationalPoly(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) { return *this += -o; }

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator/=(const RationalPoly& o) {
  if (o.is_zero()) throw Error(ErrorKind::InternalConsistency, "E_DIV_ZERO", "division by zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::string RationalPoly::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace charvar
