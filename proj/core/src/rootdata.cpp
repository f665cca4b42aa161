#include "charvar/rootdata.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "charvar/error.hpp"

namespace charvar {

long long pairing(const Vec& x, const Vec& y) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::size_t RootSet::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool RootSet::subset_of(const RootSet& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

std::vector<int> RootSet::indices() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    auto b = bits_[w];
    while (b) {
      out.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(b))));
      b &= b - 1;
    }
  }
  return out;
}

RootSet RootSet::permuted(const std::vector<int>& perm) const {
  RootSet r(n_);
  for (int i : indices()) r.set(static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]));
  return r;
}

RootSet RootSet::operator|(const RootSet& o) const {
  RootSet r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
  return r;
}

std::size_t RootSet::hash() const noexcept {
  std::size_t h = n_;
  for (auto w : bits_) h = h * 0x9e3779b97f4a7c15ULL ^ (w + (h << 6) + (h >> 2));
  return h;
}

std::size_t VecHash::operator()(const Vec& v) const noexcept {
  std::size_t h = v.size();
  for (auto x : v) h = h * 1000003ULL ^ static_cast<std::size_t>(x);
  return h;
}

namespace {

[[noreturn]] void axiom_failure(const std::string& axiom, const std::string& detail) {
  throw Error(ErrorKind::Validation, "E_ROOT_DATUM", "root datum axiom violated (" + axiom + "): " + detail);
}

std::string show(const Vec& v) {
  std::ostringstream o;
  o << "(";
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  o << ")";
  return o.str();
}

Vec sub_scaled(const Vec& a, long long k, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= k * b[i];
  return r;
}

bool parallel_same_direction(const Vec& a, const Vec& b) {
  // a = c * b with c > 0 rational
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) return (a[i] > 0) == (b[i] > 0);
  return false;
}

}  // namespace

int RootDatum::root_index(const Vec& v) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == v) return static_cast<int>(i);
  return -1;
}

int RootDatum::coroot_index(const Vec& v) const {
  for (std::size_t i = 0; i < coroots_.size(); ++i)
    if (coroots_[i] == v) return static_cast<int>(i);
  return -1;
}

RootDatum RootDatum::create(std::size_t rank, std::vector<Vec> roots, std::vector<Vec> coroots,
                            std::string label, std::optional<std::vector<bool>> positive) {
  RootDatum rd;
  rd.d_ = rank;
  rd.label_ = std::move(label);
  const std::size_t n = roots.size();
  if (coroots.size() != n) axiom_failure("bijection", "root and coroot counts differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (roots[i].size() != rank || coroots[i].size() != rank)
      axiom_failure("shape", "vector length differs from rank d = " + std::to_string(rank));
    if (pairing(roots[i], coroots[i]) != 2)
      axiom_failure("<a, a^v> = 2", "root " + show(roots[i]) + " with coroot " + show(coroots[i]));
  }

  std::unordered_map<Vec, int, VecHash> rindex, cindex;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rindex.emplace(roots[i], static_cast<int>(i)).second) axiom_failure("distinct roots", show(roots[i]));
    if (!cindex.emplace(coroots[i], static_cast<int>(i)).second) axiom_failure("distinct coroots", show(coroots[i]));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && parallel_same_direction(roots[i], roots[j]))
        axiom_failure("reduced", show(roots[i]) + " and " + show(roots[j]) + " are positively proportional");

  rd.reflection_.assign(n, std::vector<int>(n, -1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vec sr = sub_scaled(roots[b], pairing(roots[b], coroots[a]), roots[a]);
      Vec sc = sub_scaled(coroots[b], pairing(roots[a], coroots[b]), coroots[a]);
      auto ir = rindex.find(sr);
      auto ic = cindex.find(sc);
      if (ir == rindex.end()) axiom_failure("reflection closure of roots", "s_" + show(roots[a]) + " " + show(roots[b]));
      if (ic == cindex.end())
        axiom_failure("reflection closure of coroots", "s_" + show(coroots[a]) + " " + show(coroots[b]));
      if (ir->second != ic->second)
        axiom_failure("W-equivariant bijection", "image of " + show(roots[b]) + " under s_" + show(roots[a]));
      rd.reflection_[a][b] = ir->second;
    }

  rd.negative_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    Vec neg = roots[i];
    for (auto& x : neg) x = -x;
    rd.negative_[i] = rindex.at(neg);
  }

  if (positive) {
    if (positive->size() != n) axiom_failure("positive system", "flag count differs from root count");
    rd.is_positive_ = *positive;
  } else {
    rd.is_positive_.assign(n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (long long x : roots[i])
        if (x != 0) {
          rd.is_positive_[i] = x > 0;
          break;
        }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rd.is_positive_[i] == rd.is_positive_[static_cast<std::size_t>(rd.negative_[i])])
      axiom_failure("positive system", "exactly one of +/-" + show(roots[i]) + " must be positive");
    if (rd.is_positive_[i]) rd.positive_.push_back(static_cast<int>(i));
  }

  rd.root_sum_.assign(n * n, -1);
  rd.coroot_sum_.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec s = roots[i], c = coroots[i];
      for (std::size_t k = 0; k < rank; ++k) {
        s[k] += roots[j][k];
        c[k] += coroots[j][k];
      }
      if (auto it = rindex.find(s); it != rindex.end()) rd.root_sum_[i * n + j] = it->second;
      if (auto it = cindex.find(c); it != cindex.end()) rd.coroot_sum_[i * n + j] = it->second;
    }

  // Positive sums must stay positive, otherwise the flags are not a positive system.
  for (int i : rd.positive_)
    for (int j : rd.positive_) {
      int s = rd.root_sum_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
      if (s >= 0 && !rd.is_positive_[static_cast<std::size_t>(s)])
        axiom_failure("positive system", "sum of positive roots is negative");
    }

  for (int i : rd.positive_) {
    bool decomposable = false;
    for (int j : rd.positive_) {
      auto it = rindex.find(sub_scaled(roots[static_cast<std::size_t>(i)], 1, roots[static_cast<std::size_t>(j)]));
      if (it != rindex.end() && rd.is_positive_[static_cast<std::size_t>(it->second)]) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) rd.simple_.push_back(i);
  }

  rd.roots_ = std::move(roots);
  rd.coroots_ = std::move(coroots);
  return rd;
}

SmallMatrix RootDatum::reflection_matrix(std::size_t i) const {
  SmallMatrix m = SmallMatrix::identity(d_);
  for (std::size_t r = 0; r < d_; ++r)
    for (std::size_t c = 0; c < d_; ++c) m(r, c) -= coroots_[i][r] * roots_[i][c];
  return m;
}

RootSet RootDatum::all() const {
  RootSet s(size());
  for (std::size_t i = 0; i < size(); ++i) s.set(i);
  return s;
}

void RootDatum::set_diagonal_map(SmallMatrix m) {
  if (m.rows() != d_) throw Error(ErrorKind::Validation, "E_DIAGONAL_MAP", "diagonal map has wrong row count");
  diagonal_map_ = std::move(m);
}

RootDatum RootDatum::dual() const {
  RootDatum r = create(d_, coroots_, roots_, label_ + "^v", is_positive_);
  return r;
}

bool connected_center_check(const RootDatum& rd) {
  return quotient_invariants(rd.rank(), rd.roots()).torsion.empty();
}

QuotientInvariants center_dual_quotient(const RootDatum& rd) {
  return quotient_invariants(rd.rank(), rd.coroots());
}

AdmissiblePrimes admissible_primes(const RootDatum& rd) {
  AdmissiblePrimes out;
  out.excluded.insert(2);
  auto add_prime_factors = [&](long long v) {
    for (long long p = 2; p * p <= v; ++p)
      while (v % p == 0) {
        out.excluded.insert(p);
        v /= p;
      }
    if (v > 1) out.excluded.insert(v);
  };
  for (const auto& c : decompose(rd, rd.all(), Side::Roots)) {
    const auto r = static_cast<long long>(c.rank);
    switch (c.family) {
      case 'A':
      case 'C': add_prime_factors(r + 1); break;
      case 'B': add_prime_factors(2 * r - 1); break;
      case 'D': add_prime_factors(r - 1); break;
      case 'E':
        out.excluded.insert(3);
        if (r == 8) out.excluded.insert(5);
        break;
      case 'F':
      case 'G': out.excluded.insert(3); break;
      default: break;
    }
  }
  return out;
}

OrderPolynomials order_polynomials(const RootDatum& rd) {
  if (!connected_center_check(rd))
    throw Error(ErrorKind::Hypothesis, "E_CONNECTED_CENTER",
                "connected center required: X/<Phi> has torsion " +
                    quotient_invariants(rd.rank(), rd.roots()).to_string(),
                "connected center");
  const auto d = static_cast<unsigned>(rd.rank());
  const auto z = static_cast<unsigned>(rd.rank() - rd.semisimple_rank());
  OrderPolynomials o;
  o.T = Polynomial::binomial_power(-1, d);
  o.B = Polynomial::monomial(Rational(1), rd.positive_count()) * o.T;
  o.G = o.B * poincare_polynomial(rd, rd.all());
  o.Z = Polynomial::binomial_power(-1, z);
  return o;
}

}  // namespace charvar
