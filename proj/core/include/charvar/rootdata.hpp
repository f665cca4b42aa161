#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/abelian.hpp"
#include "charvar/matrix.hpp"
#include "charvar/polynomial.hpp"

namespace charvar {

using Vec = std::vector<long long>;

long long pairing(const Vec& x, const Vec& y);

// Bitset over root indices (roots and coroots share indices).
class RootSet {
 public:
  RootSet() = default;
  explicit RootSet(std::size_t universe) : n_(universe), bits_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return n_; }
  bool test(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { bits_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool subset_of(const RootSet& o) const;
  std::vector<int> indices() const;
  RootSet permuted(const std::vector<int>& perm) const;
  RootSet operator|(const RootSet& o) const;

  friend bool operator==(const RootSet& a, const RootSet& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }
  friend bool operator<(const RootSet& a, const RootSet& b) { return a.bits_ < b.bits_; }
  std::size_t hash() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct RootSetHash {
  std::size_t operator()(const RootSet& s) const noexcept { return s.hash(); }
};

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept;
};

class RootDatum {
 public:
  // Validates the axioms; throws Error(Validation, "E_ROOT_DATUM") naming the
  // failed axiom. Positive roots default to the lexicographic choice.
  static RootDatum create(std::size_t rank, std::vector<Vec> roots, std::vector<Vec> coroots,
                          std::string label, std::optional<std::vector<bool>> positive = std::nullopt);

  std::size_t rank() const noexcept { return d_; }
  std::size_t size() const noexcept { return roots_.size(); }
  std::size_t positive_count() const noexcept { return positive_.size(); }
  std::size_t semisimple_rank() const noexcept { return simple_.size(); }
  const std::string& label() const noexcept { return label_; }

  const std::vector<Vec>& roots() const noexcept { return roots_; }
  const std::vector<Vec>& coroots() const noexcept { return coroots_; }
  const Vec& root(std::size_t i) const { return roots_[i]; }
  const Vec& coroot(std::size_t i) const { return coroots_[i]; }
  bool is_positive(std::size_t i) const { return is_positive_[i]; }
  const std::vector<int>& positive_indices() const noexcept { return positive_; }
  const std::vector<int>& simple_indices() const noexcept { return simple_; }
  int negative(std::size_t i) const { return negative_[i]; }
  int root_index(const Vec& v) const;
  int coroot_index(const Vec& v) const;
  // Index of the sum of two roots/coroots, or -1.
  int root_sum(std::size_t i, std::size_t j) const { return root_sum_[i * size() + j]; }
  int coroot_sum(std::size_t i, std::size_t j) const { return coroot_sum_[i * size() + j]; }
  // Permutation of coroot indices induced by s_i (equivalently of root indices).
  const std::vector<int>& reflection(std::size_t i) const { return reflection_[i]; }
  // Matrix of s_i acting on X-check coordinates (column vectors).
  SmallMatrix reflection_matrix(std::size_t i) const;

  RootSet all() const;
  RootSet none() const { return RootSet(size()); }

  // Eigenvalue shorthand: X-check coordinates = diagonal_map * (diag entries).
  const std::optional<SmallMatrix>& diagonal_map() const noexcept { return diagonal_map_; }
  void set_diagonal_map(SmallMatrix m);

  RootDatum dual() const;

  friend bool operator==(const RootDatum& a, const RootDatum& b) {
    return a.d_ == b.d_ && a.roots_ == b.roots_ && a.coroots_ == b.coroots_;
  }

 private:
  std::size_t d_ = 0;
  std::vector<Vec> roots_, coroots_;
  std::string label_;
  std::vector<bool> is_positive_;
  std::vector<int> positive_, simple_, negative_;
  std::vector<int> root_sum_, coroot_sum_;
  std::vector<std::vector<int>> reflection_;
  std::optional<SmallMatrix> diagonal_map_;
};

// "GL(3)", "PGL(2)", "SO(5)", "Sp(4)", "SL(2)", "T(3)", "G2(sc)", "B2(ad)",
// "F4", "E8", products "GL(2)xGL(1)".
RootDatum build_root_datum(std::string_view descriptor);
RootDatum product(const RootDatum& a, const RootDatum& b);
RootDatum torus(std::size_t d);
RootDatum general_linear(std::size_t n);
RootDatum cartan_type(char family, std::size_t rank, bool simply_connected);

bool connected_center_check(const RootDatum& rd);
// Torsion of X-check / <coroots>.
QuotientInvariants center_dual_quotient(const RootDatum& rd);

struct AdmissiblePrimes {
  std::set<long long> excluded;
  bool admits(long long p) const { return !excluded.count(p); }
};
AdmissiblePrimes admissible_primes(const RootDatum& rd);

// lcm of |Tor(X / <Psi>)| over closed subsystems Psi of the roots.
Integer modulus(const RootDatum& rd);

struct OrderPolynomials {
  Polynomial G, B, T, Z;
};
OrderPolynomials order_polynomials(const RootDatum& rd);

// Irreducible components of a set of roots (side = roots) or coroots.
enum class Side { Roots, Coroots };

struct Component {
  char family = '?';  // A B C D E F G
  std::size_t rank = 0;
  std::vector<int> members;
  std::vector<int> long_members;  // empty when simply laced
  std::string name() const;
};
std::vector<Component> decompose(const RootDatum& rd, const RootSet& set, Side side);
std::string type_name(const std::vector<Component>& components);
Integer weyl_order_from_type(const std::vector<Component>& components);

struct WeylGroup {
  std::vector<SmallMatrix> elements;           // on X-check coordinates
  std::vector<std::vector<int>> permutations;  // on coroot indices
  std::vector<int> generators;                 // simple root indices
  std::size_t order() const noexcept { return elements.size(); }
};

inline constexpr std::size_t kDefaultWeylBound = 1'000'000;

WeylGroup enumerate_weyl(const RootDatum& rd, std::size_t bound = kDefaultWeylBound);
bool is_closed_subsystem(const RootDatum& rd, const RootSet& set);
// Simple system of a closed subsystem of coroots (indecomposable positives).
std::vector<int> simple_system(const RootDatum& rd, const RootSet& set);
Polynomial poincare_polynomial(const RootDatum& rd, const RootSet& subsystem,
                               std::size_t bound = kDefaultWeylBound);

}  // namespace charvar
