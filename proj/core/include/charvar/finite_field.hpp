#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace charvar {

// Small field F_q, q = p^k, elements coded 0..q-1 as base-p digit vectors
// of polynomials modulo a fixed irreducible. Arithmetic by table lookup.
class FiniteField {
 public:
  static FiniteField create(unsigned q);

  unsigned q() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned sub(unsigned a, unsigned b) const { return add_[a * q_ + neg_[b]]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned inv(unsigned a) const;
  unsigned div(unsigned a, unsigned b) const { return mul(a, inv(b)); }
  unsigned pow(unsigned a, long long e) const;

  unsigned generator() const noexcept { return gen_; }
  // discrete log base generator(); a != 0
  unsigned log(unsigned a) const;
  unsigned exp(long long e) const;

  // Integers map through the prime field (k = 1) or as element codes (k > 1).
  unsigned from_integer(long long v) const;
  std::string to_string(unsigned a) const;

 private:
  unsigned q_ = 0, p_ = 0, k_ = 0, gen_ = 0;
  std::vector<unsigned> add_, mul_, neg_, inv_, log_, exp_;
};

}  // namespace charvar
