#include "charvar/finite_field.hpp"

#include "charvar/error.hpp"

namespace charvar {

namespace {

std::vector<unsigned> digits(unsigned a, unsigned p, unsigned k) {
  std::vector<unsigned> d(k);
  for (unsigned i = 0; i < k; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
  unsigned a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
  return a;
}

// product of polynomials mod p, reduced modulo monic `mod` of degree k
std::vector<unsigned> polymulmod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                 const std::vector<unsigned>& mod, unsigned p) {
  const std::size_t k = mod.size() - 1;
  std::vector<unsigned> r(2 * k, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = r.size(); d-- > k;) {
    unsigned c = r[d];
    if (!c) continue;
    for (std::size_t i = 0; i <= k; ++i) r[d - k + i] = (r[d - k + i] + p * p - c * mod[i] % p) % p;
  }
  r.resize(k);
  return r;
}

bool irreducible(const std::vector<unsigned>& mod, unsigned p) {
  // brute force: no root-free check needed, try all monic divisors up to degree k/2
  const std::size_t k = mod.size() - 1;
  for (std::size_t dd = 1; dd <= k / 2; ++dd) {
    unsigned count = 1;
    for (std::size_t i = 0; i < dd; ++i) count *= p;
    for (unsigned c = 0; c < count; ++c) {
      std::vector<unsigned> f = digits(c, p, static_cast<unsigned>(dd));
      f.push_back(1);
      // long division of mod by f
      std::vector<unsigned> r = mod;
      for (std::size_t d = r.size(); d-- > dd;) {
        unsigned coef = r[d];
        if (!coef) continue;
        for (std::size_t i = 0; i <= dd; ++i) r[d - dd + i] = (r[d - dd + i] + p * p - coef * f[i] % p) % p;
      }
      bool zero = true;
      for (std::size_t i = 0; i < dd; ++i) zero &= r[i] == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField FiniteField::create(unsigned q) {
  if (q < 2 || q > 256) throw Error(ErrorKind::Validation, "E_FIELD", "field size must be a prime power in [2, 256]");
  unsigned p = 0;
  for (unsigned c = 2; c <= q; ++c)
    if (q % c == 0) {
      p = c;
      break;
    }
  unsigned k = 0, t = q;
  while (t % p == 0) {
    t /= p;
    ++k;
  }
  if (t != 1) throw Error(ErrorKind::Validation, "E_FIELD", std::to_string(q) + " is not a prime power");

  FiniteField F;
  F.q_ = q;
  F.p_ = p;
  F.k_ = k;
  std::vector<unsigned> mod;
  if (k > 1) {
    unsigned count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (unsigned c = 0; c < count; ++c) {
      mod = digits(c, p, k);
      mod.push_back(1);
      if (irreducible(mod, p)) break;
    }
  }
  F.add_.resize(q * q);
  F.mul_.resize(q * q);
  F.neg_.resize(q);
  for (unsigned a = 0; a < q; ++a) {
    auto da = digits(a, p, k);
    std::vector<unsigned> na(k);
    for (unsigned i = 0; i < k; ++i) na[i] = (p - da[i]) % p;
    F.neg_[a] = undigits(na, p);
    for (unsigned b = 0; b < q; ++b) {
      auto db = digits(b, p, k);
      std::vector<unsigned> s(k);
      for (unsigned i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      F.add_[a * q + b] = undigits(s, p);
      F.mul_[a * q + b] = k == 1 ? (a * b) % p : undigits(polymulmod(da, db, mod, p), p);
    }
  }
  // generator of the cyclic group of units
  for (unsigned g = 2; g < q + 1 && !F.gen_; ++g) {
    unsigned cand = g % q;
    if (cand == 0) continue;
    unsigned x = 1, order = 0;
    do {
      x = F.mul(x, cand);
      ++order;
    } while (x != 1);
    if (order == q - 1) F.gen_ = cand;
  }
  if (q == 2) F.gen_ = 1;
  F.exp_.resize(q - 1);
  F.log_.assign(q, 0);
  unsigned x = 1;
  for (unsigned e = 0; e + 1 < q; ++e) {
    F.exp_[e] = x;
    F.log_[x] = e;
    x = F.mul(x, F.gen_);
  }
  F.inv_.assign(q, 0);
  for (unsigned a = 1; a < q; ++a) F.inv_[a] = F.exp_[(q - 1 - F.log_[a]) % (q - 1)];
  return F;
}

unsigned FiniteField::inv(unsigned a) const {
  if (a == 0) throw Error(ErrorKind::Validation, "E_FIELD_DIV", "division by zero in F_" + std::to_string(q_));
  return inv_[a];
}

unsigned FiniteField::pow(unsigned a, long long e) const {
  if (a == 0) {
    if (e < 0) inv(0);
    return e == 0 ? 1 : 0;
  }
  long long m = static_cast<long long>(q_ - 1);
  long long r = (static_cast<long long>(log_[a]) * (e % m)) % m;
  if (r < 0) r += m;
  return exp_[static_cast<std::size_t>(r)];
}

unsigned FiniteField::log(unsigned a) const {
  if (a == 0) throw Error(ErrorKind::Validation, "E_FIELD_LOG", "logarithm of zero");
  return log_[a];
}

unsigned FiniteField::exp(long long e) const {
  long long m = static_cast<long long>(q_ - 1);
  e %= m;
  if (e < 0) e += m;
  return exp_[static_cast<std::size_t>(e)];
}

unsigned FiniteField::from_integer(long long v) const {
  if (k_ == 1) {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<unsigned>(r);
  }
  if (v < 0 || v >= static_cast<long long>(q_))
    throw Error(ErrorKind::Validation, "E_FIELD", "element code out of range for F_" + std::to_string(q_));
  return static_cast<unsigned>(v);
}

std::string FiniteField::to_string(unsigned a) const { return std::to_string(a); }

}  // namespace charvar
