#include <mutex>
#include <sstream>

#include "charvar/polynomial.hpp"

namespace charvar {

Polynomial cyclotomic(unsigned n) {
  static std::mutex mu;
  static std::vector<Polynomial> cache(1);
  std::lock_guard lock(mu);
  while (cache.size() <= n) {
    const auto m = static_cast<unsigned>(cache.size());
    Polynomial p = Polynomial::monomial(Rational(1), m) - Polynomial(Rational(1));
    for (unsigned d = 1; d < m; ++d)
      if (m % d == 0) p = divmod(p, cache[d]).first;
    cache.push_back(std::move(p));
  }
  return cache[n];
}

namespace {

// p = content * primitive, primitive has integer coprime coefficients and
// positive leading coefficient.
std::pair<Rational, Polynomial> primitive_part(const Polynomial& p) {
  Integer den_lcm = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& c : p.coefficients()) {
    Integer v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.leading() < 0) content = -content;
  return {content, p * Polynomial(Rational(1) / content)};
}

bool divide_out(Polynomial& p, const Polynomial& f) {
  if (p.degree() < f.degree()) return false;
  auto [quo, rem] = divmod(p, f);
  if (!rem.is_zero()) return false;
  p = std::move(quo);
  return true;
}

void add_factor(std::vector<std::pair<Polynomial, unsigned>>& out, const Polynomial& f, unsigned k) {
  if (k == 0) return;
  for (auto& [g, e] : out)
    if (g == f) {
      e += k;
      return;
    }
  out.emplace_back(f, k);
}

}  // namespace

Factorization factor(const Polynomial& p) {
  Factorization result;
  if (p.is_zero()) {
    result.content = 0;
    return result;
  }
  auto [content, rest] = primitive_part(p);
  result.content = content;

  const Polynomial q = Polynomial::q();
  unsigned k = 0;
  while (rest.degree() > 0 && divide_out(rest, q)) ++k;
  add_factor(result.factors, q, k);

  // Cyclotomic trial division, q - 1 first.
  for (unsigned n = 1; rest.degree() > 0 && n <= 60; ++n) {
    Polynomial phi = cyclotomic(n);
    if (phi.degree() > rest.degree()) continue;
    k = 0;
    while (divide_out(rest, phi)) ++k;
    add_factor(result.factors, phi, k);
  }

  // Remaining small integer roots.
  for (long a = 2; rest.degree() > 0 && a <= 64; ++a) {
    for (long s : {a, -a}) {
      Polynomial lin(std::vector<Rational>{Rational(-s), Rational(1)});
      k = 0;
      while (divide_out(rest, lin)) ++k;
      add_factor(result.factors, lin, k);
    }
  }

  // Square-free decomposition (Yun) of what is left.
  if (rest.degree() > 0) {
    Polynomial a = rest.monic();
    Polynomial b = a.derivative();
    Polynomial c = gcd(a, b);
    Polynomial w = divmod(a, c).first;
    Polynomial y = divmod(b, c).first;
    Polynomial z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() > 0) {
      Polynomial g = gcd(w, z);
      if (g.degree() > 0) add_factor(result.factors, primitive_part(g).second, i);
      w = divmod(w, g).first;
      y = divmod(z, g).first;
      z = y - w.derivative();
      ++i;
    }
    // re-derive the unit left over after making each factor primitive
    Polynomial prod(Rational(1));
    for (const auto& [f, e] : result.factors) prod *= f.pow(e);
    Polynomial leftover = divmod(p, prod).first;
    result.content = leftover.coefficient(0);
  }
  return result;
}

Polynomial Factorization::expand() const {
  Polynomial prod(content);
  for (const auto& [f, e] : factors) prod *= f.pow(e);
  return prod;
}

std::string Factorization::to_string(const std::string& var) const {
  if (content == 0) return "0";
  std::ostringstream out;
  bool first = true;
  const bool unit = abs(content) == 1;
  if (content < 0) out << "-";
  if (!unit || factors.empty()) {
    const Rational a = abs(content);
    out << (a.get_den() == 1 ? a.get_num().get_str() : a.get_str());
    first = false;
  }
  for (const auto& [f, e] : factors) {
    if (!first) out << "*";
    first = false;
    const bool bare = f.degree() == 1 && f.coefficient(0) == 0;
    if (bare) {
      out << f.to_string(var);
    } else {
      out << "(" << f.to_string(var) << ")";
    }
    if (e > 1) out << "^" << e;
  }
  return out.str();
}

}  // namespace charvar
