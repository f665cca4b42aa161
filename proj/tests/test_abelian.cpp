#include <doctest.h>

#include <random>

#include "charvar/abelian.hpp"

using namespace charvar;

namespace {

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Integer det(IntMatrix m) {
  // fraction-free elimination, small matrices only
  const std::size_t n = m.rows();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace

TEST_SUITE("abelian") {
  TEST_CASE("smith form of a small matrix") {
    const IntMatrix M = int_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3);
    const SmithDecomposition s = smith_normal_form(M);
    const auto d = s.diagonal();
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 2);
    CHECK(d[1] == 6);
    CHECK(d[2] == 12);
    CHECK(s.U * M * s.V == s.D);
  }

  TEST_CASE("smith form invariants on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> entry(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
      IntMatrix M(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) M(i, j) = entry(rng);
      const SmithDecomposition s = smith_normal_form(M);
      CHECK(s.U * M * s.V == s.D);
      CHECK(abs(det(s.U)) == 1);
      CHECK(abs(det(s.V)) == 1);
      const auto d = s.diagonal();
      for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
          if (i != j) CHECK(s.D(i, j) == 0);
      for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
    }
  }

  TEST_CASE("quotient invariants") {
    const auto a = quotient_invariants(2, {{2, 0}, {0, 2}});
    CHECK(a.free_rank == 0);
    CHECK(a.torsion_order == 4);
    CHECK(a.exponent() == 2);
    CHECK(a.to_string() == "Z/2 x Z/2");
    const auto b = quotient_invariants(3, {{1, -1, 0}, {0, 1, -1}});
    CHECK(b.free_rank == 1);
    CHECK(b.torsion.empty());
    const auto c = quotient_invariants(2, {{2, 0}});
    CHECK(c.free_rank == 1);
    CHECK(c.torsion_order == 2);
  }

  TEST_CASE("word problem with relations") {
    // a, b, t with ab = t^2
    const FPAbelianGroup A(3, {{1, 1, -2}});
    CHECK(A.is_identity({1, 1, -2}));
    CHECK_FALSE(A.is_identity({1, 1, 0}));
    CHECK(A.is_dth_power({1, 1, 0}, 2));
    CHECK_FALSE(A.is_dth_power({1, 0, 0}, 2));
    CHECK(A.canonical({2, 2, -4}) == A.canonical({0, 0, 0}));
    CHECK(A.canonical({1, 1, 0}) == A.canonical({0, 0, 2}));
  }

  TEST_CASE("canonical forms agree exactly on equal classes") {
    const FPAbelianGroup A(3, {{1, 1, 1}, {1, 1, 0}});  // abc = 1, ab = 1
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> e(-5, 5);
    for (int i = 0; i < 300; ++i) {
      Word w{e(rng), e(rng), e(rng)};
      Word v = add_words(w, add_words(scale_word({1, 1, 1}, e(rng)), scale_word({1, 1, 0}, e(rng))));
      CHECK(A.canonical(w) == A.canonical(v));
      CHECK(A.is_identity(add_words(A.canonical(w), scale_word(w, -1))));
    }
    CHECK(A.is_identity({0, 0, 1}));
    CHECK_FALSE(A.is_identity({1, 0, 0}));
  }
}
