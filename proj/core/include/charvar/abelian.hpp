#pragma once

#include <string>
#include <vector>

#include "charvar/matrix.hpp"

namespace charvar {

using Word = std::vector<long long>;  // exponent vector, additive notation

struct SmithDecomposition {
  IntMatrix U, D, V;  // U * M * V = D
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

struct QuotientInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // elementary divisors > 1, ascending
  Integer torsion_order = 1;

  Integer exponent() const { return torsion.empty() ? Integer(1) : torsion.back(); }

  std::string to_string() const;  // "Z^2 x Z/2"
  friend bool operator==(const QuotientInvariants&, const QuotientInvariants&) = default;
};

QuotientInvariants quotient_invariants(std::size_t ambient_rank, const std::vector<Word>& generators);

// Z^d / L in adapted coordinates: x maps to x * V, and coordinate i of the
// image lives in Z / divisors[i] (divisors[i] == 0 means a free coordinate).
struct LatticeQuotient {
  std::vector<Integer> divisors;
  SmallMatrix basis_change;
  QuotientInvariants invariants;
};

LatticeQuotient lattice_quotient(std::size_t ambient_rank, const std::vector<Word>& generators);

class FPAbelianGroup {
 public:
  FPAbelianGroup() = default;
  FPAbelianGroup(std::size_t generators, std::vector<Word> relations);

  std::size_t generator_count() const noexcept { return t_; }
  const std::vector<Word>& relations() const noexcept { return relations_; }
  const QuotientInvariants& structure() const noexcept { return quotient_.invariants; }

  // Unique representative of the class of w, written in the original generators.
  Word canonical(const Word& w) const;
  bool is_identity(const Word& w) const;
  bool is_dth_power(const Word& w, const Integer& d) const;

 private:
  Word adapted(const Word& w) const;

  std::size_t t_ = 0;
  std::vector<Word> relations_;
  LatticeQuotient quotient_;
  SmallMatrix inverse_;  // inverse of quotient_.basis_change
};

Word add_words(const Word& a, const Word& b);
Word scale_word(const Word& a, long long k);

}  // namespace charvar
