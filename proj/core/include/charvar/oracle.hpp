#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/count.hpp"
#include "charvar/finite_field.hpp"

namespace charvar {

enum class GroupKind { GL2, GL3, PGL2 };

std::string to_string(GroupKind k);
// From a datum label ("GL(2)", "GL(3)", "PGL(2)"); other groups are rejected.
GroupKind group_kind_from_label(const std::string& label);

// Row-major n x n matrix over F_q.
using FqMatrix = std::vector<unsigned>;

// Evaluate +, -, *, /, ^ over F_q. Symbols come from `values`.
unsigned evaluate_expression(const FiniteField& F, std::string_view text,
                             const std::map<std::string, unsigned>& values);

FqMatrix fq_multiply(const FiniteField& F, unsigned n, const FqMatrix& a, const FqMatrix& b);
unsigned fq_determinant(const FiniteField& F, unsigned n, const FqMatrix& a);
FqMatrix fq_inverse(const FiniteField& F, unsigned n, const FqMatrix& a);
FqMatrix fq_identity(unsigned n);
bool fq_is_scalar(unsigned n, const FqMatrix& a);

class FiniteGroupModel {
 public:
  static constexpr std::size_t kMaxCodes = 20'000'000;
  static FiniteGroupModel create(GroupKind kind, unsigned q);

  GroupKind kind() const noexcept { return kind_; }
  const FiniteField& field() const noexcept { return F_; }
  unsigned n() const noexcept { return n_; }
  bool projective() const noexcept { return kind_ == GroupKind::PGL2; }

  std::size_t order() const noexcept { return count_; }
  // |Z(F_q)|: scalars for GL, trivial for PGL
  std::size_t center_order() const noexcept { return projective() ? 1 : F_.q() - 1; }
  std::size_t identity() const noexcept { return identity_; }

  FqMatrix element(std::size_t i) const;
  // Canonical representative (projective normalisation for PGL).
  FqMatrix canonical(FqMatrix a) const;
  std::optional<std::size_t> find(const FqMatrix& a) const;
  std::size_t index(const FqMatrix& a) const;
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  bool same(const FqMatrix& a, const FqMatrix& b) const { return canonical(a) == canonical(b); }

 private:
  std::uint64_t encode(const FqMatrix& a) const;

  GroupKind kind_ = GroupKind::GL2;
  FiniteField F_;
  unsigned n_ = 2;
  std::size_t count_ = 0;
  std::size_t identity_ = 0;
  std::vector<std::uint8_t> entries_;  // count_ * n^2
  std::vector<std::uint32_t> index_;   // code -> element + 1
  std::vector<std::uint32_t> inverse_;
};

struct ConcreteClass {
  bool unipotent = false;
  std::vector<unsigned> eigenvalues;  // diagonal entries of the representative
  std::size_t representative = 0;
  std::vector<std::uint32_t> members;
  std::vector<bool> mask;
  std::size_t expected_size = 0;  // from the order formulas
  std::size_t size() const noexcept { return members.size(); }
};

ConcreteClass semisimple_class(const FiniteGroupModel& G, const std::vector<unsigned>& diagonal);
ConcreteClass unipotent_class(const FiniteGroupModel& G);

struct BruteForceResult {
  Integer solutions;      // points of the representation variety
  Integer quotient_order; // |(G/Z)(F_q)|
  Integer count;          // solutions / quotient_order
  double steps = 0;
};

// Solutions of [A_1,B_1]...[A_g,B_g] C_1...C_n = 1 divided by |G/Z|.
BruteForceResult brute_force_count(const FiniteGroupModel& G, int g, const std::vector<const ConcreteClass*>& classes,
                                   double budget = 1e9, unsigned threads = 1);

// Exponents of the eigenvalue symbols with respect to the field generator.
struct Specialization {
  std::vector<long long> logs;
  std::vector<unsigned> values;
  bool faithful = false;
  bool strongly_regular = false;
  bool relations_hold = false;
};

std::map<std::string, unsigned> specialization_map(const ProblemSpec& spec, const Specialization& s);

// Check an explicit assignment symbol -> element of F_q (as integer code).
Specialization check_specialization(const ProblemSpec& spec, const FiniteField& F,
                                    const std::map<std::string, long long>& values);

// First faithful, strongly regular specialization (seeded order).
std::optional<Specialization> find_specialization(const ProblemSpec& spec, const FiniteField& F, std::uint64_t seed,
                                                  std::size_t max_tries = 200'000);

// Diagonal entries in F_q of a semisimple class under a specialization.
std::vector<unsigned> concrete_diagonal(const ProblemSpec& spec, GroupKind kind, const FiniteField& F,
                                        const Specialization& s, std::size_t class_index);

struct OracleOptions {
  unsigned q = 5;
  std::uint64_t seed = 1;
  double budget = 1e9;
  unsigned threads = 1;
  std::optional<std::map<std::string, long long>> specialization;
};

struct OracleResult {
  GroupKind kind = GroupKind::GL2;
  unsigned q = 0;
  std::uint64_t seed = 0;
  std::map<std::string, unsigned> specialization;
  bool faithful = false;
  std::vector<std::size_t> class_sizes;
  std::vector<std::size_t> expected_class_sizes;
  bool class_sizes_ok = true;
  BruteForceResult brute;
  Rational formula;
  bool match = false;
};

OracleResult run_oracle(const ProblemSpec& spec, const OracleOptions& opts);

struct WitnessSpec {
  std::string name;
  // 2g + n matrices of expressions; the last n lie in the declared classes
  std::vector<std::vector<std::vector<std::string>>> matrices;
};

struct WitnessResult {
  std::string name;
  unsigned q = 0;
  std::map<std::string, unsigned> specialization;
  std::vector<FqMatrix> values;
  bool relation_ok = false;
  std::vector<bool> class_ok;
  bool ok = false;
  int attempts = 0;
};

struct WitnessOptions {
  unsigned q = 5;
  std::uint64_t seed = 1;
  int retries = 20;
  std::optional<std::map<std::string, long long>> specialization;
};

// Specialises the symbols, then checks the relation and class membership
// (projectively for PGL2). Throws Inconclusive when no specialization works.
WitnessResult verify_witness(const ProblemSpec& spec, const WitnessSpec& w, const WitnessOptions& opts);
bool in_concrete_class(GroupKind kind, const FiniteField& F, const FqMatrix& m, bool unipotent,
                       const std::vector<unsigned>& eigenvalues);

// Some h in G with h X_i h^-1 = Y_i for all i.
std::optional<std::size_t> simultaneously_conjugate(const FiniteGroupModel& G, const std::vector<FqMatrix>& X,
                                                    const std::vector<FqMatrix>& Y);

}  // namespace charvar
