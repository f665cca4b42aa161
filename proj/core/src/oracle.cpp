#include "charvar/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

#include "charvar/error.hpp"

namespace charvar {

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::GL2: return "GL(2)";
    case GroupKind::GL3: return "GL(3)";
    case GroupKind::PGL2: return "PGL(2)";
  }
  return "?";
}

GroupKind group_kind_from_label(const std::string& label) {
  std::string s;
  for (char c : label)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "GL(2)") return GroupKind::GL2;
  if (s == "GL(3)") return GroupKind::GL3;
  if (s == "PGL(2)") return GroupKind::PGL2;
  throw Error(ErrorKind::Validation, "E_ORACLE_GROUP", "oracle supports GL(2), GL(3), PGL(2); got '" + label + "'");
}

static unsigned kind_n(GroupKind k) { return k == GroupKind::GL3 ? 3 : 2; }

// ---------------------------------------------------------------- matrices

FqMatrix fq_identity(unsigned n) {
  FqMatrix m(n * n, 0);
  for (unsigned i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

FqMatrix fq_multiply(const FiniteField& F, unsigned n, const FqMatrix& a, const FqMatrix& b) {
  FqMatrix c(n * n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) {
      unsigned x = a[i * n + k];
      if (!x) continue;
      for (unsigned j = 0; j < n; ++j) c[i * n + j] = F.add(c[i * n + j], F.mul(x, b[k * n + j]));
    }
  return c;
}

unsigned fq_determinant(const FiniteField& F, unsigned n, const FqMatrix& a) {
  if (n == 1) return a[0];
  if (n == 2) return F.sub(F.mul(a[0], a[3]), F.mul(a[1], a[2]));
  if (n == 3) {
    auto m2 = [&](int r0, int r1, int c0, int c1) {
      return F.sub(F.mul(a[r0 * 3 + c0], a[r1 * 3 + c1]), F.mul(a[r0 * 3 + c1], a[r1 * 3 + c0]));
    };
    unsigned d = F.mul(a[0], m2(1, 2, 1, 2));
    d = F.sub(d, F.mul(a[1], m2(1, 2, 0, 2)));
    return F.add(d, F.mul(a[2], m2(1, 2, 0, 1)));
  }
  throw Error(ErrorKind::Validation, "E_MATRIX", "matrix size " + std::to_string(n) + " unsupported");
}

FqMatrix fq_inverse(const FiniteField& F, unsigned n, const FqMatrix& a) {
  unsigned det = fq_determinant(F, n, a);
  if (!det) throw Error(ErrorKind::Validation, "E_SINGULAR", "singular matrix");
  unsigned di = F.inv(det);
  FqMatrix r(n * n);
  if (n == 1) {
    r[0] = di;
  } else if (n == 2) {
    r = {F.mul(a[3], di), F.mul(F.neg(a[1]), di), F.mul(F.neg(a[2]), di), F.mul(a[0], di)};
  } else {
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = 0; j < 3; ++j) {
        // cofactor of (j, i)
        unsigned r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        unsigned c = F.sub(F.mul(a[r0 * 3 + c0], a[r1 * 3 + c1]), F.mul(a[r0 * 3 + c1], a[r1 * 3 + c0]));
        r[i * 3 + j] = F.mul(c, di);
      }
  }
  return r;
}

bool fq_is_scalar(unsigned n, const FqMatrix& a) {
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (a[i * n + j] != (i == j ? a[0] : 0u)) return false;
  return a[0] != 0;
}

// ---------------------------------------------------------------- group model

FiniteGroupModel FiniteGroupModel::create(GroupKind kind, unsigned q) {
  if (q > 11) throw Error(ErrorKind::ResourceLimit, "E_ORACLE_Q", "oracle field size capped at 11, got " + std::to_string(q));
  FiniteGroupModel G;
  G.kind_ = kind;
  G.F_ = FiniteField::create(q);
  G.n_ = kind_n(kind);
  const unsigned nn = G.n_ * G.n_;
  double codes = std::pow(static_cast<double>(q), nn);
  if (codes > kMaxCodes)
    throw Error(ErrorKind::ResourceLimit, "E_ORACLE_SIZE",
                to_string(kind) + " over F_" + std::to_string(q) + " is too large for the oracle");
  const std::uint64_t total = static_cast<std::uint64_t>(codes);
  G.index_.assign(total, 0);
  FqMatrix m(nn);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < nn; ++i) {
      m[i] = static_cast<unsigned>(c % q);
      c /= q;
    }
    if (!fq_determinant(G.F_, G.n_, m)) continue;
    if (G.projective()) {
      unsigned first = 0;
      for (unsigned v : m)
        if (v) {
          first = v;
          break;
        }
      if (first != 1) continue;
    }
    for (unsigned v : m) G.entries_.push_back(static_cast<std::uint8_t>(v));
    G.index_[code] = static_cast<std::uint32_t>(++G.count_);
  }
  G.identity_ = G.index(fq_identity(G.n_));
  G.inverse_.resize(G.count_);
  for (std::size_t i = 0; i < G.count_; ++i)
    G.inverse_[i] = static_cast<std::uint32_t>(G.index(fq_inverse(G.F_, G.n_, G.element(i))));
  return G;
}

FqMatrix FiniteGroupModel::element(std::size_t i) const {
  const unsigned nn = n_ * n_;
  return FqMatrix(entries_.begin() + static_cast<std::ptrdiff_t>(i * nn),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * nn));
}

FqMatrix FiniteGroupModel::canonical(FqMatrix a) const {
  if (!projective()) return a;
  unsigned first = 0;
  for (unsigned v : a)
    if (v) {
      first = v;
      break;
    }
  if (!first) return a;
  unsigned s = F_.inv(first);
  for (auto& v : a) v = F_.mul(v, s);
  return a;
}

std::uint64_t FiniteGroupModel::encode(const FqMatrix& a) const {
  std::uint64_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * F_.q() + a[i];
  return code;
}

std::optional<std::size_t> FiniteGroupModel::find(const FqMatrix& a) const {
  if (a.size() != n_ * n_) return std::nullopt;
  auto c = canonical(a);
  for (unsigned v : c)
    if (v >= F_.q()) return std::nullopt;
  auto idx = index_[encode(c)];
  if (!idx) return std::nullopt;
  return idx - 1;
}

std::size_t FiniteGroupModel::index(const FqMatrix& a) const {
  auto r = find(a);
  if (!r) throw Error(ErrorKind::Validation, "E_NOT_IN_GROUP", "matrix is not in " + to_string(kind_));
  return *r;
}

std::size_t FiniteGroupModel::mul(std::size_t i, std::size_t j) const {
  const unsigned n = n_, nn = n * n, q = F_.q();
  const std::uint8_t* a = &entries_[i * nn];
  const std::uint8_t* b = &entries_[j * nn];
  std::array<unsigned, 9> c{};
  for (unsigned r = 0; r < n; ++r)
    for (unsigned k = 0; k < n; ++k) {
      unsigned x = a[r * n + k];
      if (!x) continue;
      for (unsigned s = 0; s < n; ++s) c[r * n + s] = F_.add(c[r * n + s], F_.mul(x, b[k * n + s]));
    }
  if (projective()) {
    unsigned first = 0;
    for (unsigned t = 0; t < nn && !first; ++t) first = c[t];
    if (first != 1) {
      unsigned s = F_.inv(first);
      for (unsigned t = 0; t < nn; ++t) c[t] = F_.mul(c[t], s);
    }
  }
  std::uint64_t code = 0;
  for (unsigned t = nn; t-- > 0;) code = code * q + c[t];
  return index_[code] - 1;
}

// ---------------------------------------------------------------- classes

namespace {

std::size_t ipow_size(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

ConcreteClass orbit_of(const FiniteGroupModel& G, const FqMatrix& rep) {
  ConcreteClass c;
  c.representative = G.index(rep);
  c.mask.assign(G.order(), false);
  for (std::size_t h = 0; h < G.order(); ++h) {
    std::size_t x = G.mul(G.mul(h, c.representative), G.inverse(h));
    if (!c.mask[x]) {
      c.mask[x] = true;
      c.members.push_back(static_cast<std::uint32_t>(x));
    }
  }
  std::sort(c.members.begin(), c.members.end());
  return c;
}

}  // namespace

ConcreteClass semisimple_class(const FiniteGroupModel& G, const std::vector<unsigned>& diagonal) {
  const unsigned n = G.n();
  if (diagonal.size() != n) throw Error(ErrorKind::Validation, "E_CLASS", "diagonal has the wrong size");
  FqMatrix rep(n * n, 0);
  for (unsigned i = 0; i < n; ++i) rep[i * n + i] = diagonal[i];
  ConcreteClass c = orbit_of(G, rep);
  c.eigenvalues = diagonal;
  const std::size_t torus = ipow_size(G.field().q() - 1, G.projective() ? n - 1 : n);
  c.expected_size = G.order() / torus;
  return c;
}

ConcreteClass unipotent_class(const FiniteGroupModel& G) {
  const unsigned n = G.n();
  FqMatrix rep = fq_identity(n);
  for (unsigned i = 0; i + 1 < n; ++i) rep[i * n + i + 1] = 1;
  ConcreteClass c = orbit_of(G, rep);
  c.unipotent = true;
  c.eigenvalues.assign(n, 1);
  c.expected_size = G.order() / (G.center_order() * ipow_size(G.field().q(), n - 1));
  return c;
}

// ---------------------------------------------------------------- brute force

namespace {

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    fn(0u, 1u);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(fn, t, threads);
  for (auto& t : pool) t.join();
}

using Dist = std::vector<std::uint64_t>;

Dist reduce(std::vector<Dist>& parts) {
  Dist out = std::move(parts[0]);
  for (std::size_t t = 1; t < parts.size(); ++t)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += parts[t][i];
  return out;
}

}  // namespace

BruteForceResult brute_force_count(const FiniteGroupModel& G, int g, const std::vector<const ConcreteClass*>& classes,
                                   double budget, unsigned threads) {
  if (g < 0) throw Error(ErrorKind::Validation, "E_SPEC", "genus must be nonnegative");
  const std::size_t N = G.order();
  const double n = static_cast<double>(N);
  BruteForceResult res;
  double steps = 0, bound = 1;
  if (g > 0) steps += n * n * g;
  for (int i = 0; i < 2 * g; ++i) bound *= n;
  for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
    steps += n * static_cast<double>(classes[i]->size());
    bound *= static_cast<double>(classes[i]->size());
  }
  steps += n;
  res.steps = steps;
  if (steps > budget)
    throw Error(ErrorKind::ResourceLimit, "E_BUDGET",
                "brute force needs about " + std::to_string(static_cast<long long>(steps)) + " steps, budget " +
                    std::to_string(static_cast<long long>(budget)));
  if (bound > 9.0e18) throw Error(ErrorKind::ResourceLimit, "E_OVERFLOW", "solution count may overflow 64 bits");

  Dist dist(N, 0);
  if (g == 0) {
    dist[G.identity()] = 1;
  } else {
    std::vector<Dist> parts;
    unsigned used = std::max(1u, threads);
    parts.assign(used, Dist(N, 0));
    parallel_for(N, used, [&](unsigned tid, unsigned stride) {
      Dist& h = parts[tid];
      for (std::size_t a = tid; a < N; a += stride) {
        const std::size_t ai = G.inverse(a);
        for (std::size_t b = 0; b < N; ++b) ++h[G.mul(G.mul(a, b), G.mul(ai, G.inverse(b)))];
      }
    });
    parts.resize(std::min<std::size_t>(used, std::max<std::size_t>(N, 1)));
    const Dist hist = reduce(parts);
    std::vector<std::size_t> support;
    for (std::size_t x = 0; x < N; ++x)
      if (hist[x]) support.push_back(x);
    dist = hist;
    for (int k = 1; k < g; ++k) {
      std::vector<Dist> next(used, Dist(N, 0));
      parallel_for(N, used, [&](unsigned tid, unsigned stride) {
        Dist& out = next[tid];
        for (std::size_t x = tid; x < N; x += stride) {
          if (!dist[x]) continue;
          for (std::size_t y : support) out[G.mul(x, y)] += dist[x] * hist[y];
        }
      });
      dist = reduce(next);
    }
  }
  for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
    Dist next(N, 0);
    for (std::size_t x = 0; x < N; ++x) {
      if (!dist[x]) continue;
      for (std::uint32_t s : classes[i]->members) next[G.mul(x, s)] += dist[x];
    }
    dist = std::move(next);
  }
  std::uint64_t total = 0;
  if (classes.empty()) {
    total = dist[G.identity()];
  } else {
    const auto& last = *classes.back();
    for (std::size_t x = 0; x < N; ++x)
      if (dist[x] && last.mask[G.inverse(x)]) total += dist[x];
  }
  res.solutions = Integer(std::to_string(total));
  res.quotient_order = Integer(static_cast<unsigned long>(N / G.center_order()));
  if (res.solutions % res.quotient_order != 0)
    throw Error(ErrorKind::InternalConsistency, "E_NOT_FREE",
                "solution count " + res.solutions.get_str() + " is not divisible by |G/Z| = " +
                    res.quotient_order.get_str());
  res.count = res.solutions / res.quotient_order;
  return res;
}

// ---------------------------------------------------------------- specialization

namespace {

long long mod(long long a, long long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

std::vector<long long> concrete_logs(const SymbolicTorusElement& S, const std::vector<long long>& e, long long m) {
  std::vector<long long> out(S.rank(), 0);
  for (std::size_t j = 0; j < S.rank(); ++j) {
    long long v = 0;
    const Word& w = S.coordinate(j);
    for (std::size_t s = 0; s < w.size(); ++s) v = mod(v + mod(w[s], m) * e[s], m);
    out[j] = v;
  }
  return out;
}

bool concrete_in_commutator(const LatticeQuotient& Q, const std::vector<long long>& L, long long m) {
  const auto& V = Q.basis_change;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const Integer& div = Q.divisors[i];
    if (div == 1) continue;
    long long v = 0;
    for (std::size_t j = 0; j < L.size(); ++j) v = mod(v + mod(V(j, i), m) * L[j], m);
    if (div == 0) {
      if (v != 0) return false;
    } else {
      long long d = std::gcd(div.get_si(), m);
      if (v % d != 0) return false;
    }
  }
  return true;
}

struct ElementKey {
  std::size_t operator()(const SymbolicTorusElement& s) const noexcept {
    std::size_t h = 0;
    VecHash vh;
    for (const auto& w : s.coords()) h = h * 0x9e3779b97f4a7c15ULL ^ vh(w);
    return h;
  }
};

struct SearchContext {
  const ProblemSpec& spec;
  SubsystemPoset poset;
  WeylGroup W;
  std::vector<SymbolicTorusElement> products;
  std::vector<std::vector<bool>> symbolic;  // [node][product]
  std::size_t identity_w = 0;

  explicit SearchContext(const ProblemSpec& s) : spec(s) {
    poset = enumerate_closed_subsystems(spec.rd, spec.poset);
    W = enumerate_weyl(spec.rd, spec.poset.weyl_bound);
    const auto I = SmallMatrix::identity(spec.rd.rank());
    for (std::size_t k = 0; k < W.order(); ++k)
      if (W.elements[k] == I) identity_w = k;
    const auto& A = spec.eigenvalues.group();
    if (spec.classes.empty()) {
      products.push_back(SymbolicTorusElement(spec.rd.rank(), spec.eigenvalues.symbol_count()));
    } else {
      std::unordered_map<SymbolicTorusElement, int, ElementKey> cur{{spec.classes[0].canonical(A), 1}};
      for (std::size_t i = 1; i < spec.classes.size(); ++i) {
        if (cur.size() * W.order() > spec.tuple_budget)
          throw Error(ErrorKind::ResourceLimit, "E_TUPLE_BUDGET", "W^m enumeration exceeds budget");
        std::unordered_map<SymbolicTorusElement, int, ElementKey> next;
        for (const auto& [y, c] : cur)
          for (const auto& w : W.elements) next[(y * spec.classes[i].translated(w)).canonical(A)] = 1;
        cur = std::move(next);
      }
      for (const auto& [y, c] : cur) products.push_back(y);
    }
    symbolic.assign(poset.size(), std::vector<bool>(products.size()));
    for (std::size_t v = 0; v < poset.size(); ++v)
      for (std::size_t p = 0; p < products.size(); ++p)
        symbolic[v][p] = in_commutator(poset.node(v).quotient, spec.eigenvalues, products[p]);
  }

  Specialization evaluate(const FiniteField& F, std::vector<long long> e) const {
    const long long m = F.q() - 1;
    Specialization s;
    for (auto& x : e) x = mod(x, m);
    s.logs = e;
    for (long long x : e) s.values.push_back(F.exp(x));
    s.relations_hold = true;
    for (const auto& r : spec.eigenvalues.group().relations()) {
      long long v = 0;
      for (std::size_t k = 0; k < r.size(); ++k) v = mod(v + mod(r[k], m) * e[k], m);
      if (v) s.relations_hold = false;
    }
    if (!s.relations_hold) return s;
    s.strongly_regular = true;
    for (std::size_t i = 0; i < spec.classes.size() && s.strongly_regular; ++i) {
      const auto L = concrete_logs(spec.classes[i], e, m);
      for (const auto& root : spec.rd.roots()) {
        long long v = 0;
        for (std::size_t j = 0; j < L.size(); ++j) v = mod(v + mod(root[j], m) * L[j], m);
        if (v == 0) s.strongly_regular = false;
      }
      for (std::size_t k = 0; k < W.order() && s.strongly_regular; ++k)
        if (k != identity_w && concrete_logs(spec.classes[i].translated(W.elements[k]), e, m) == L)
          s.strongly_regular = false;
    }
    s.faithful = true;
    for (std::size_t p = 0; p < products.size() && s.faithful; ++p) {
      const auto L = concrete_logs(products[p], e, m);
      for (std::size_t v = 0; v < poset.size(); ++v)
        if (concrete_in_commutator(poset.node(v).quotient, L, m) != symbolic[v][p]) {
          s.faithful = false;
          break;
        }
    }
    return s;
  }
};

}  // namespace

std::map<std::string, unsigned> specialization_map(const ProblemSpec& spec, const Specialization& s) {
  std::map<std::string, unsigned> out;
  const auto& names = spec.eigenvalues.symbols();
  for (std::size_t k = 0; k < names.size() && k < s.values.size(); ++k) out[names[k]] = s.values[k];
  return out;
}

Specialization check_specialization(const ProblemSpec& spec, const FiniteField& F,
                                    const std::map<std::string, long long>& values) {
  const auto& names = spec.eigenvalues.symbols();
  std::vector<long long> e(names.size(), 0);
  for (const auto& [k, v] : values)
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw Error(ErrorKind::Validation, "E_SPECIALIZATION", "unknown symbol '" + k + "' in specialization");
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto it = values.find(names[k]);
    if (it == values.end())
      throw Error(ErrorKind::Validation, "E_SPECIALIZATION", "specialization misses symbol '" + names[k] + "'");
    unsigned x = F.from_integer(it->second);
    if (!x) throw Error(ErrorKind::Validation, "E_SPECIALIZATION", "symbol '" + names[k] + "' specialised to 0");
    e[k] = F.log(x);
  }
  SearchContext ctx(spec);
  return ctx.evaluate(F, e);
}

std::optional<Specialization> find_specialization(const ProblemSpec& spec, const FiniteField& F, std::uint64_t seed,
                                                  std::size_t max_tries) {
  SearchContext ctx(spec);
  const std::size_t k = spec.eigenvalues.symbol_count();
  const std::uint64_t m = F.q() - 1;
  std::mt19937_64 rng(seed);
  auto accept = [](const Specialization& s) { return s.relations_hold && s.strongly_regular && s.faithful; };
  double total = std::pow(static_cast<double>(m), static_cast<double>(k));
  if (total <= static_cast<double>(max_tries)) {
    std::vector<std::uint64_t> order(static_cast<std::size_t>(total));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint64_t code : order) {
      std::vector<long long> e(k);
      for (std::size_t i = 0; i < k; ++i) {
        e[i] = static_cast<long long>(code % m);
        code /= m;
      }
      auto s = ctx.evaluate(F, e);
      if (accept(s)) return s;
    }
    return std::nullopt;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, m - 1);
  for (std::size_t t = 0; t < max_tries; ++t) {
    std::vector<long long> e(k);
    for (auto& x : e) x = static_cast<long long>(pick(rng));
    auto s = ctx.evaluate(F, e);
    if (accept(s)) return s;
  }
  return std::nullopt;
}

std::vector<unsigned> concrete_diagonal(const ProblemSpec& spec, GroupKind kind, const FiniteField& F,
                                        const Specialization& s, std::size_t class_index) {
  const auto L = concrete_logs(spec.classes.at(class_index), s.logs, F.q() - 1);
  if (kind == GroupKind::PGL2) return {F.exp(L.at(0)), 1u};
  std::vector<unsigned> out;
  for (long long x : L) out.push_back(F.exp(x));
  return out;
}

// ---------------------------------------------------------------- oracle

namespace {

void check_oracle_field(const ProblemSpec& spec, GroupKind kind, unsigned q) {
  if (q % 2 == 0) throw Error(ErrorKind::Hypothesis, "E_PRIME", "characteristic 2 is not admissible", "admissible primes");
  if (spec.rd.rank() != kind_n(kind) - (kind == GroupKind::PGL2 ? 1 : 0))
    throw Error(ErrorKind::Validation, "E_ORACLE_GROUP", "datum does not match " + to_string(kind));
}

}  // namespace

OracleResult run_oracle(const ProblemSpec& spec, const OracleOptions& opts) {
  OracleResult r;
  r.kind = group_kind_from_label(spec.rd.label());
  r.q = opts.q;
  r.seed = opts.seed;
  check_oracle_field(spec, r.kind, opts.q);
  FiniteGroupModel G = FiniteGroupModel::create(r.kind, opts.q);

  Specialization s;
  if (opts.specialization) {
    s = check_specialization(spec, G.field(), *opts.specialization);
    if (!s.relations_hold)
      throw Error(ErrorKind::Validation, "E_SPECIALIZATION", "specialization violates the eigenvalue relations");
    if (!s.strongly_regular)
      throw Error(ErrorKind::Validation, "E_SPECIALIZATION", "specialised classes are not strongly regular");
  } else {
    auto found = find_specialization(spec, G.field(), opts.seed);
    if (!found)
      throw Error(ErrorKind::Inconclusive, "E_NO_SPECIALIZATION",
                  "no faithful strongly regular specialization over F_" + std::to_string(opts.q));
    s = *found;
  }
  r.specialization = specialization_map(spec, s);
  r.faithful = s.faithful;

  std::vector<ConcreteClass> classes;
  for (int i = 0; i < spec.n; ++i) {
    if (i < spec.m)
      classes.push_back(semisimple_class(G, concrete_diagonal(spec, r.kind, G.field(), s, static_cast<std::size_t>(i))));
    else
      classes.push_back(unipotent_class(G));
    r.class_sizes.push_back(classes.back().size());
    r.expected_class_sizes.push_back(classes.back().expected_size);
    if (classes.back().size() != classes.back().expected_size) r.class_sizes_ok = false;
  }
  std::vector<const ConcreteClass*> ptrs;
  for (const auto& c : classes) ptrs.push_back(&c);
  r.brute = brute_force_count(G, spec.g, ptrs, opts.budget, opts.threads);

  CountReport rep = count_polynomial(spec);
  r.formula = rep.polynomial.evaluate(Rational(opts.q));
  r.match = r.formula == Rational(r.brute.count);
  return r;
}

// ---------------------------------------------------------------- witnesses

bool in_concrete_class(GroupKind kind, const FiniteField& F, const FqMatrix& m, bool unipotent,
                       const std::vector<unsigned>& ev) {
  const unsigned n = kind_n(kind);
  const unsigned det = fq_determinant(F, n, m);
  if (!det) return false;
  if (kind == GroupKind::PGL2) {
    unsigned tr = F.add(m[0], m[3]);
    unsigned tr2 = F.mul(tr, tr);
    if (unipotent) return tr2 == F.mul(4 % F.characteristic(), det) && !fq_is_scalar(2, m);
    if (ev.size() != 2 || ev[0] == ev[1]) return false;
    unsigned s = F.add(ev[0], ev[1]);
    return F.mul(tr2, F.mul(ev[0], ev[1])) == F.mul(F.mul(s, s), det);
  }
  // characteristic polynomial coefficients e1, e2, (e3) against the eigenvalues
  std::vector<unsigned> target(n + 1, 0), actual(n + 1, 0);
  std::vector<unsigned> e = unipotent ? std::vector<unsigned>(n, 1) : ev;
  if (e.size() != n) return false;
  target[0] = 1;
  for (unsigned x : e)
    for (unsigned k = n; k >= 1; --k) target[k] = F.add(target[k], F.mul(target[k - 1], x));
  actual[0] = 1;
  if (n == 2) {
    actual[1] = F.add(m[0], m[3]);
    actual[2] = det;
  } else {
    actual[1] = F.add(F.add(m[0], m[4]), m[8]);
    auto minor = [&](int i, int j) { return F.sub(F.mul(m[i * 3 + i], m[j * 3 + j]), F.mul(m[i * 3 + j], m[j * 3 + i])); };
    actual[2] = F.add(F.add(minor(0, 1), minor(0, 2)), minor(1, 2));
    actual[3] = det;
  }
  if (actual != target) return false;
  if (!unipotent) {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j)
        if (e[i] == e[j]) return false;
    return true;
  }
  // regular unipotent: rank(M - I) = n - 1
  FqMatrix a = m;
  for (unsigned i = 0; i < n; ++i) a[i * n + i] = F.sub(a[i * n + i], 1);
  unsigned rank = 0;
  for (unsigned col = 0; col < n && rank < n; ++col) {
    unsigned piv = rank;
    while (piv < n && !a[piv * n + col]) ++piv;
    if (piv == n) continue;
    for (unsigned j = 0; j < n; ++j) std::swap(a[piv * n + j], a[rank * n + j]);
    unsigned inv = F.inv(a[rank * n + col]);
    for (unsigned i = 0; i < n; ++i) {
      if (i == rank || !a[i * n + col]) continue;
      unsigned f = F.mul(a[i * n + col], inv);
      for (unsigned j = 0; j < n; ++j) a[i * n + j] = F.sub(a[i * n + j], F.mul(f, a[rank * n + j]));
    }
    ++rank;
  }
  return rank == n - 1;
}

WitnessResult verify_witness(const ProblemSpec& spec, const WitnessSpec& w, const WitnessOptions& opts) {
  const GroupKind kind = group_kind_from_label(spec.rd.label());
  check_oracle_field(spec, kind, opts.q);
  const unsigned n = kind_n(kind);
  const std::size_t expected = static_cast<std::size_t>(2 * spec.g + spec.n);
  if (w.matrices.size() != expected)
    throw Error(ErrorKind::Validation, "E_WITNESS",
                "witness '" + w.name + "' has " + std::to_string(w.matrices.size()) + " matrices, expected " +
                    std::to_string(expected));
  for (const auto& m : w.matrices) {
    bool ok = m.size() == n;
    for (const auto& row : m) ok = ok && row.size() == n;
    if (!ok) throw Error(ErrorKind::Validation, "E_WITNESS", "witness '" + w.name + "' matrix is not " + std::to_string(n) + "x" + std::to_string(n));
  }
  FiniteField F = FiniteField::create(opts.q);
  WitnessResult res;
  res.name = w.name;
  res.q = opts.q;
  const int tries = opts.specialization ? 1 : std::max(1, opts.retries);
  for (int attempt = 0; attempt < tries; ++attempt) {
    ++res.attempts;
    Specialization s;
    if (opts.specialization) {
      s = check_specialization(spec, F, *opts.specialization);
      if (!s.relations_hold || !s.strongly_regular) break;
    } else {
      auto found = find_specialization(spec, F, opts.seed + static_cast<std::uint64_t>(attempt));
      if (!found) break;
      s = *found;
    }
    auto values = specialization_map(spec, s);
    std::vector<FqMatrix> mats;
    try {
      for (const auto& m : w.matrices) {
        FqMatrix x;
        for (const auto& row : m)
          for (const auto& e : row) x.push_back(evaluate_expression(F, e, values));
        mats.push_back(std::move(x));
      }
    } catch (const Error& e) {
      if (e.code() == "E_FIELD_DIV") continue;
      throw;
    }
    res.specialization = values;
    res.values = mats;
    bool invertible = true;
    for (const auto& x : mats) invertible = invertible && fq_determinant(F, n, x) != 0;
    FqMatrix prod = fq_identity(n);
    if (invertible) {
      for (int i = 0; i < spec.g; ++i) {
        const auto& A = mats[2 * i];
        const auto& B = mats[2 * i + 1];
        prod = fq_multiply(F, n, prod, A);
        prod = fq_multiply(F, n, prod, B);
        prod = fq_multiply(F, n, prod, fq_inverse(F, n, A));
        prod = fq_multiply(F, n, prod, fq_inverse(F, n, B));
      }
      for (std::size_t i = 2 * spec.g; i < mats.size(); ++i) prod = fq_multiply(F, n, prod, mats[i]);
      res.relation_ok = kind == GroupKind::PGL2 ? fq_is_scalar(n, prod) : prod == fq_identity(n);
    }
    res.class_ok.clear();
    for (int i = 0; i < spec.n; ++i) {
      const auto& x = mats[2 * spec.g + i];
      const bool uni = i >= spec.m;
      std::vector<unsigned> ev = uni ? std::vector<unsigned>(n, 1) : concrete_diagonal(spec, kind, F, s, i);
      res.class_ok.push_back(in_concrete_class(kind, F, x, uni, ev));
    }
    res.ok = res.relation_ok && std::all_of(res.class_ok.begin(), res.class_ok.end(), [](bool b) { return b; });
    return res;
  }
  throw Error(ErrorKind::Inconclusive, "E_INCONCLUSIVE",
              "no admissible specialization for witness '" + w.name + "' over F_" + std::to_string(opts.q) + " after " +
                  std::to_string(res.attempts) + " attempts");
}

std::optional<std::size_t> simultaneously_conjugate(const FiniteGroupModel& G, const std::vector<FqMatrix>& X,
                                                    const std::vector<FqMatrix>& Y) {
  if (X.size() != Y.size()) return std::nullopt;
  std::vector<std::size_t> xi, yi;
  for (std::size_t k = 0; k < X.size(); ++k) {
    auto a = G.find(X[k]);
    auto b = G.find(Y[k]);
    if (!a || !b) return std::nullopt;
    xi.push_back(*a);
    yi.push_back(*b);
  }
  for (std::size_t h = 0; h < G.order(); ++h) {
    bool all = true;
    for (std::size_t k = 0; k < xi.size() && all; ++k) all = G.mul(G.mul(h, xi[k]), G.inverse(h)) == yi[k];
    if (all) return h;
  }
  return std::nullopt;
}

}  // namespace charvar
