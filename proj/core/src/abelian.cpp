#include "charvar/abelian.hpp"

#include <algorithm>
#include <sstream>

#include "charvar/error.hpp"

namespace charvar {

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// row_i -= f * row_j
void row_axpy(IntMatrix& a, std::size_t i, std::size_t j, const Integer& f) {
  for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) -= f * a(j, c);
}

void col_axpy(IntMatrix& a, std::size_t i, std::size_t j, const Integer& f) {
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) -= f * a(r, j);
}

long long to_small(const Integer& x) {
  if (!x.fits_slong_p()) throw Error(ErrorKind::InternalConsistency, "E_OVERFLOW", "basis change entry exceeds 64 bits");
  return x.get_si();
}

long long checked_mul_add(long long acc, long long a, long long b) {
  long long prod, sum;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum))
    throw Error(ErrorKind::InternalConsistency, "E_OVERFLOW", "word arithmetic exceeds 64 bits");
  return sum;
}

}  // namespace

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t s = m.rows(), n = m.cols();
  SmithDecomposition out{IntMatrix::identity(s), m, IntMatrix::identity(n), 0};
  IntMatrix& A = out.D;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;

  std::size_t t = 0;
  for (; t < std::min(s, n); ++t) {
    // smallest nonzero entry of the remaining block becomes the pivot
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < s; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (A(i, j) != 0 && (!found || abs(A(i, j)) < abs(A(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(A, t, pi);
    swap_rows(U, t, pi);
    swap_cols(A, t, pj);
    swap_cols(V, t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < s; ++i) {
        if (A(i, t) == 0) continue;
        Integer f = A(i, t) / A(t, t);
        row_axpy(A, i, t, f);
        row_axpy(U, i, t, f);
        if (A(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        Integer f = A(t, j) / A(t, t);
        col_axpy(A, j, t, f);
        col_axpy(V, j, t, f);
        if (A(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // move the smallest remainder in row/column t onto the diagonal
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < s; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) bi = t, bj = j;
        swap_rows(A, t, bi);
        swap_rows(U, t, bi);
        swap_cols(A, t, bj);
        swap_cols(V, t, bj);
        continue;
      }
      // divisibility: fold an offending row into row t and go again
      std::size_t bad = s;
      for (std::size_t i = t + 1; i < s && bad == s; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == s) break;
      row_axpy(A, t, bad, Integer(-1));
      row_axpy(U, t, bad, Integer(-1));
    }
    if (A(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) A(t, c) = -A(t, c);
      for (std::size_t c = 0; c < s; ++c) U(t, c) = -U(t, c);
    }
  }
  out.rank = t;
  return out;
}

std::string QuotientInvariants::to_string() const {
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << "Z";
    if (free_rank > 1) out << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) out << " x ";
    out << "Z/" << d.get_str();
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

LatticeQuotient lattice_quotient(std::size_t ambient_rank, const std::vector<Word>& generators) {
  IntMatrix m(generators.size(), ambient_rank);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != ambient_rank)
      throw Error(ErrorKind::Validation, "E_DIMENSION", "generator length does not match ambient rank");
    for (std::size_t j = 0; j < ambient_rank; ++j) m(i, j) = static_cast<long>(generators[i][j]);
  }
  SmithDecomposition snf = smith_normal_form(m);
  LatticeQuotient out;
  out.divisors.assign(ambient_rank, Integer(0));
  for (std::size_t i = 0; i < snf.rank; ++i) out.divisors[i] = snf.D(i, i);
  out.basis_change = SmallMatrix(ambient_rank, ambient_rank);
  for (std::size_t i = 0; i < ambient_rank; ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j) out.basis_change(i, j) = to_small(snf.V(i, j));
  out.invariants.free_rank = ambient_rank - snf.rank;
  for (const auto& d : out.divisors)
    if (d > 1) {
      out.invariants.torsion.push_back(d);
      out.invariants.torsion_order *= d;
    }
  return out;
}

QuotientInvariants quotient_invariants(std::size_t ambient_rank, const std::vector<Word>& generators) {
  return lattice_quotient(ambient_rank, generators).invariants;
}

FPAbelianGroup::FPAbelianGroup(std::size_t generators, std::vector<Word> relations)
    : t_(generators), relations_(std::move(relations)), quotient_(lattice_quotient(t_, relations_)) {
  // V is unimodular; invert it over Q and read back the integer entries
  const std::size_t n = t_;
  Matrix<Rational> a(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(static_cast<long>(quotient_.basis_change(i, j)));
    a(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::InternalConsistency, "E_SNF", "basis change is singular");
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(piv, j), a(col, j));
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) a(col, j) /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  inverse_ = SmallMatrix(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a(i, n + j);
      if (x.get_den() != 1 || !x.get_num().fits_slong_p())
        throw Error(ErrorKind::InternalConsistency, "E_SNF", "basis change is not unimodular");
      inverse_(i, j) = x.get_num().get_si();
    }
}

Word FPAbelianGroup::adapted(const Word& w) const {
  if (w.size() != t_) throw Error(ErrorKind::Validation, "E_DIMENSION", "word length does not match generator count");
  Word c(t_, 0);
  for (std::size_t j = 0; j < t_; ++j)
    for (std::size_t i = 0; i < t_; ++i)
      if (w[i] != 0) c[j] = checked_mul_add(c[j], w[i], quotient_.basis_change(i, j));
  return c;
}

Word FPAbelianGroup::canonical(const Word& w) const {
  Word c = adapted(w);
  for (std::size_t j = 0; j < t_; ++j) {
    const Integer& e = quotient_.divisors[j];
    if (e == 0) continue;
    long long m = e.get_si();
    c[j] %= m;
    if (c[j] < 0) c[j] += m;
  }
  // back to the original generators
  Word out(t_, 0);
  for (std::size_t i = 0; i < t_; ++i)
    for (std::size_t j = 0; j < t_; ++j)
      if (c[j] != 0) out[i] = checked_mul_add(out[i], c[j], inverse_(j, i));
  return out;
}

bool FPAbelianGroup::is_identity(const Word& w) const {
  Word c = adapted(w);
  for (std::size_t j = 0; j < t_; ++j) {
    const Integer& e = quotient_.divisors[j];
    if (e != 0) c[j] %= e.get_si();
  }
  return std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
}

bool FPAbelianGroup::is_dth_power(const Word& w, const Integer& d) const {
  if (d <= 0) throw Error(ErrorKind::Validation, "E_BAD_EXPONENT", "d-th power test needs d >= 1");
  const Word c = adapted(w);
  for (std::size_t j = 0; j < t_; ++j) {
    Integer g;
    const Integer& e = quotient_.divisors[j];
    if (e == 0) {
      g = d;
    } else {
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
    }
    if (Integer(static_cast<long>(c[j])) % g != 0) return false;
  }
  return true;
}

Word add_words(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Validation, "E_DIMENSION", "word length mismatch");
  Word r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (__builtin_add_overflow(a[i], b[i], &r[i]))
      throw Error(ErrorKind::InternalConsistency, "E_OVERFLOW", "word arithmetic exceeds 64 bits");
  return r;
}

Word scale_word(const Word& a, long long k) {
  Word r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul_add(0, a[i], k);
  return r;
}

}  // namespace charvar
