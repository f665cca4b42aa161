#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charvar/abelian.hpp"
#include "charvar/polynomial.hpp"
#include "charvar/rootdata.hpp"

namespace charvar {

RootSet closure(const RootDatum& rd, const RootSet& seed);

struct PosetOptions {
  std::size_t max_positive = 24;  // bound on |positive coroots|
  std::size_t max_nodes = 200'000;
  std::size_t weyl_bound = kDefaultWeylBound;
};

struct ClosedSubsystem {
  RootSet roots;
  std::vector<int> simple;
  LatticeQuotient quotient;  // X-check / <Psi>
  Integer weyl_order;
  Polynomial poincare;
  std::string type;
  std::size_t long_count = 0;  // roots long in the ambient component
  std::size_t orbit = 0;
};

class SubsystemPoset {
 public:
  const std::vector<ClosedSubsystem>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const ClosedSubsystem& node(std::size_t i) const { return nodes_[i]; }
  std::size_t bottom() const noexcept { return 0; }
  std::size_t top() const noexcept { return nodes_.size() - 1; }

  // i is contained in j
  bool leq(std::size_t i, std::size_t j) const { return (up_[i][j >> 6] >> (j & 63)) & 1u; }
  std::vector<std::size_t> above(std::size_t i) const;
  long long mobius(std::size_t i, std::size_t j) const { return mu_[i * nodes_.size() + j]; }
  std::optional<std::size_t> find(const RootSet& s) const;

  const std::vector<std::vector<std::size_t>>& orbits() const noexcept { return orbits_; }
  const std::vector<std::string>& orbit_labels() const noexcept { return labels_; }
  std::optional<std::size_t> orbit_by_label(const std::string& label) const;

  friend SubsystemPoset enumerate_closed_subsystems(const RootDatum& rd, const PosetOptions& opts);

 private:
  std::vector<ClosedSubsystem> nodes_;
  std::vector<std::vector<std::uint64_t>> up_;
  std::vector<long long> mu_;
  std::vector<std::vector<std::size_t>> orbits_;
  std::vector<std::string> labels_;
};

// All closed subsystems of the coroots, ordered by size (bottom = empty,
// top = everything), with inclusion, Moebius function and W-orbits.
SubsystemPoset enumerate_closed_subsystems(const RootDatum& rd, const PosetOptions& opts = {});

// True iff the A_{n-1} poset is the partition lattice and its Moebius
// function is (-1)^{t-s} prod (t_i - 1)!.
bool partition_mobius_check(int n);

}  // namespace charvar
