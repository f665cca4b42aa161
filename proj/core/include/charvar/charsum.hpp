#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/abelian.hpp"
#include "charvar/polynomial.hpp"
#include "charvar/rootdata.hpp"
#include "charvar/subsystems.hpp"

namespace charvar {

// Eigenvalue symbols modulo declared multiplicative relations. Membership
// questions are decided inside this group (purity convention): a word is a
// d-th power in k^x iff it is one here.
class EigenvalueDatum {
 public:
  EigenvalueDatum() = default;
  EigenvalueDatum(std::vector<std::string> symbols, std::vector<Word> relations);
  // relations like "a*b = 1", "a*b = t^2", "a*b*c*d"
  static EigenvalueDatum parse(std::vector<std::string> symbols, const std::vector<std::string>& relations);

  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::size_t symbol_count() const noexcept { return symbols_.size(); }
  const FPAbelianGroup& group() const noexcept { return group_; }
  Word identity() const { return Word(symbols_.size(), 0); }

  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;
  // Symbols forced to be trivial or of finite order by the relations.
  std::vector<std::string> warnings() const;

 private:
  std::vector<std::string> symbols_;
  FPAbelianGroup group_;
};

// S in X-check (x) A: one word per X-check coordinate.
class SymbolicTorusElement {
 public:
  SymbolicTorusElement() = default;
  SymbolicTorusElement(std::size_t rank, std::size_t symbols) : coords_(rank, Word(symbols, 0)) {}
  explicit SymbolicTorusElement(std::vector<Word> coords) : coords_(std::move(coords)) {}

  std::size_t rank() const noexcept { return coords_.size(); }
  const std::vector<Word>& coords() const noexcept { return coords_; }
  const Word& coordinate(std::size_t j) const { return coords_[j]; }

  SymbolicTorusElement operator*(const SymbolicTorusElement& o) const;
  // w acting by its matrix on X-check coordinates.
  SymbolicTorusElement translated(const SmallMatrix& w) const;
  SymbolicTorusElement canonical(const FPAbelianGroup& A) const;

  friend bool operator==(const SymbolicTorusElement& a, const SymbolicTorusElement& b) {
    return a.coords_ == b.coords_;
  }

 private:
  std::vector<Word> coords_;
};

// "diag(a, b)" via the datum's diagonal map, or "coords(t, a*b^-1)".
SymbolicTorusElement parse_torus_element(const RootDatum& rd, const EigenvalueDatum& eig, std::string_view text);

Word evaluate_character(const Vec& x, const SymbolicTorusElement& S);

// No root is trivial on S and no nontrivial Weyl element fixes S.
bool strongly_regular(const RootDatum& rd, const WeylGroup& W, const EigenvalueDatum& eig,
                      const SymbolicTorusElement& S);

// Image of S in (X-check / <Psi>) (x) A is trivial.
bool in_commutator(const LatticeQuotient& quotient, const EigenvalueDatum& eig, const SymbolicTorusElement& S);
bool in_commutator(const RootDatum& rd, const RootSet& psi, const EigenvalueDatum& eig,
                   const SymbolicTorusElement& S);

// Tor(X-check/<Psi>) (q-1)^rank when S passes, else 0.
Polynomial delta_value(const LatticeQuotient& quotient);
Polynomial delta(const RootDatum& rd, const RootSet& psi, const EigenvalueDatum& eig, const SymbolicTorusElement& S);
Polynomial alpha(const SubsystemPoset& poset, std::size_t node, const EigenvalueDatum& eig,
                 const SymbolicTorusElement& S);

SymbolicTorusElement weyl_translate(std::span<const SmallMatrix> ws, std::span<const SymbolicTorusElement> S);

}  // namespace charvar
