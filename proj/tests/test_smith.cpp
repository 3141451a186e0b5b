#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fusion/smith.hpp"

using namespace fusion;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

Integer cofactor_det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Integer t = a[0][j] * cofactor_det(minor);
    s += (j % 2 ? -t : t);
  }
  return s;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
std::vector<Integer> determinantal_factors(const IntMatrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rs);
    subsets(a.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a(r[i], c[j]);
        Integer d = cofactor_det(m);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Textbook elimination: move a smallest non-zero entry to the pivot, clear
// its row and column by division with remainder, and repair divisibility by
// adding the offending row.
std::vector<Integer> naive_factors(IntMatrix a) {
  std::vector<Integer> out;
  const std::size_t r = a.rows(), c = a.cols();
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    while (true) {
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0 && (pi == r || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == r) return out;
      a.swap_rows(t, pi);
      a.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      for (std::size_t i = t + 1; i < r && clean; ++i)
        for (std::size_t j = t + 1; j < c && clean; ++j) {
          Integer rem;
          mpz_tdiv_r(rem.get_mpz_t(), a(i, j).get_mpz_t(), a(t, t).get_mpz_t());
          if (rem != 0) {
            a.add_row(t, i, 1);
            clean = false;
          }
        }
      if (clean) break;
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-3, 3);
  for (int s = 0; s < 12; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    u.add_row(i, j, coef(rng));
  }
  return u;
}

}  // namespace

TEST_CASE("spec examples") {
  auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 2}});
  CHECK(s.factors == std::vector<Integer>{2, 2});
  auto r = smith_normal_form(IntMatrix{{2, -2}});
  CHECK(r.factors == std::vector<Integer>{2});
  CHECK(to_string(cokernel_invariants(IntMatrix{{2}, {-2}})) == "Z + Z/2");
  CHECK(cokernel_invariants(IntMatrix{{2}, {-2}}) == CokernelInvariants{1, {2}});
  CHECK(cokernel_invariants(IntMatrix(2, 2)) == CokernelInvariants{2, {}});
  CHECK(cokernel_invariants(IntMatrix{{2}}) == CokernelInvariants{0, {2}});
  CHECK(integer_kernel(IntMatrix::identity(3)).cols() == 0);
  IntMatrix k = integer_kernel(IntMatrix{{1, 1}, {1, 1}});
  REQUIRE(k.cols() == 1);
  CHECK(abs(k(0, 0)) == 1);
  CHECK(k(0, 0) == -k(1, 0));
  CHECK(hermite_normal_form(IntMatrix{{2, 4}, {3, 5}}) == IntMatrix{{1, 1}, {0, 2}});
}

TEST_CASE("certified decompositions agree with determinantal divisors and naive elimination") {
  std::mt19937 rng(7);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, -5, 5);
    auto s = smith_normal_form(a);
    REQUIRE(verify_smith(a, s));
    CHECK(s.factors == determinantal_factors(a));
    CHECK(s.factors == naive_factors(a));
  }
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    IntMatrix a = random_matrix(rng, r, c, -5, 5);
    auto s = smith_normal_form(a);
    REQUIRE(verify_smith(a, s));
    CHECK(s.factors == naive_factors(a));
  }
}

TEST_CASE("construct-then-decompose recovers the diagonal") {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::vector<Integer> d{1, 2, 6, 12, 0, 0};
    const std::size_t rank = 1 + rng() % 4;
    IntMatrix diag(6, 6);
    for (std::size_t i = 0; i < rank; ++i) diag(i, i) = d[i];
    IntMatrix a = random_unimodular(rng, 6) * diag * random_unimodular(rng, 6);
    auto s = smith_normal_form(a);
    CHECK(verify_smith(a, s));
    CHECK(s.factors == std::vector<Integer>(d.begin(), d.begin() + rank));
  }
}

TEST_CASE("kernels are saturated") {
  std::mt19937 rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = 1 + rng() % 5, c = 2 + rng() % 6;
    IntMatrix a = random_matrix(rng, r, c, -4, 4);
    IntMatrix k = integer_kernel(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == c - smith_normal_form(a).rank);
    if (k.cols() == 0) continue;
    for (auto f : naive_factors(k)) CHECK(f == 1);
    for (int p : {2, 3, 5, 7, 11, 13})
      for (std::size_t j = 0; j < k.cols(); ++j) {
        bool all = true;
        for (std::size_t i = 0; i < k.rows(); ++i)
          if (k(i, j) % p != 0) all = false;
        CHECK_FALSE(all);
      }
  }
}

TEST_CASE("sparse reduction matches the dense path") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> keep(0, 9), val(-3, 3);
  for (int t = 0; t < 80; ++t) {
    const std::size_t r = 2 + rng() % 10, c = 2 + rng() % 10;
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (keep(rng) < 3) a(i, j) = val(rng);
    auto sp = sparse_reduce(SparseMatrix::from_dense(a), true);
    auto s = smith_normal_form(a);
    CHECK(sp.rank == s.rank);
    CHECK(sp.cokernel == cokernel_invariants(a));
    CHECK(sp.kernel.size() == c - s.rank);
    IntMatrix k(c, sp.kernel.size());
    for (std::size_t j = 0; j < sp.kernel.size(); ++j)
      for (const auto& [i, v] : sp.kernel[j]) k(i, j) = v;
    CHECK((a * k).is_zero());
    if (k.cols()) {
      for (auto f : naive_factors(k)) CHECK(f == 1);
    }
    // Lattice membership: every column is in, a random odd multiple of e_0 is
    // in only when the dense oracle says so.
    std::vector<SparseVector> targets;
    std::vector<Integer> col(r);
    SparseVector v;
    for (std::size_t i = 0; i < r; ++i) {
      col[i] = a(i, 0);
      if (a(i, 0) != 0) v[i] = a(i, 0);
    }
    targets.push_back(v);
    SparseVector e0{{0, 1}};
    targets.push_back(e0);
    auto in = sparse_in_lattice(SparseMatrix::from_dense(a), targets);
    CHECK(in[0]);
    std::vector<Integer> unit(r);
    unit[0] = 1;
    CHECK(in[1] == in_column_lattice(a, unit));
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix{{2, 1}, {1, 3}}) == 5);
  CHECK(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == -3);
  std::mt19937 rng(9);
  for (int t = 0; t < 30; ++t) {
    IntMatrix a = random_matrix(rng, 4, 4, -6, 6);
    std::vector<std::vector<Integer>> m(4, std::vector<Integer>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] = a(i, j);
    CHECK(determinant(a) == cofactor_det(m));
  }
}
