#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "fusion/report.hpp"

using namespace fusion;

namespace {

std::vector<std::string> formatted(const OrbitSpace& s, const std::vector<Label>& ls) {
  std::vector<std::string> out;
  for (const auto& l : ls) out.push_back(s.format(l));
  return out;
}

ZCombo e(const Label& x, std::int64_t copy = 0, long k = 1) { return ZCombo::single(Label(copy, {x}), k); }

// Applies the untruncated boundary rule to a domain vector.
ZCombo apply_delta(const OrbitSpace& s, const std::vector<DeltaSummand>& sums, const ZCombo& v) {
  ZCombo out;
  for (const auto& [l, k] : v)
    for (const auto& [c, m] : apply_summand(s, sums[static_cast<std::size_t>(l.index)], l.letters.front()))
      out.add(c, k * m);
  return out;
}

Label single(const FusionRing& r, const Label& a, const Label& b) {
  auto t = r.tensor(a, b);
  REQUIRE(t.size() == 1);
  return t.begin()->first;
}

}  // namespace

TEST_CASE("orbit bases") {
  OrbitSpace o3(make_orthogonal(3));
  CHECK(formatted(o3, o3.basis(1)) == std::vector<std::string>{"()", "U", "(v1)"});
  CHECK(formatted(o3, o3.basis(0)) == std::vector<std::string>{"()", "U"});
  OrbitSpace f1(make_free_group(1));
  auto b = f1.basis(2);
  // Words alternate between the group and SU_q(2) and start in the group.
  for (const auto& l : b) {
    if (l == OrbitSpace::empty() || l == OrbitSpace::special()) continue;
    auto w = OrbitSpace::ambient_word(l);
    CHECK(FreeProductRing::factor_of(w.letters.front()) == 0);
    CHECK(f1.degree(l) <= 2);
  }
  // deg 1: a, a^-1; deg 2: a^2, a^-2, a u1, a^-1 u1.
  CHECK(b.size() == 8);
}

TEST_CASE("descent of u and of the fundamental") {
  OrbitSpace s(make_orthogonal(3));
  CHECK(s.partial_u(OrbitSpace::empty()) == ZCombo::single(OrbitSpace::special(), 2));
  CHECK(s.partial_u(OrbitSpace::special()) == ZCombo::single(OrbitSpace::empty(), 2));
  CHECK(s.format(s.partial_u(s.parse("(v1)"))) == "(v1 u1)");
  ZCombo exp = ZCombo::single(s.parse("(v1 u2)"));
  exp.add(s.parse("(v1)"), 1);
  CHECK(s.partial_u(s.parse("(v1 u1)")) == exp);
  CHECK(s.partial(Label(1), OrbitSpace::special()) == ZCombo::single(OrbitSpace::special(), 3));
  CHECK(s.partial(Label(1), OrbitSpace::empty()) == ZCombo::single(s.parse("(v1)")));
  ZCombo v2 = ZCombo::single(s.parse("(v2)"));
  v2.add(OrbitSpace::empty(), 1);
  CHECK(s.partial(Label(1), s.parse("(v1)")) == v2);

  OrbitSpace f(make_free_group(1));
  CHECK(f.partial(f.group().parse("a"), f.parse("(a)")) == ZCombo::single(f.parse("(a^2)")));
  CHECK(f.partial(f.group().parse("a"), OrbitSpace::special()) == ZCombo::single(OrbitSpace::special()));
}

TEST_CASE("boundary summands and local finiteness") {
  OrbitSpace o3(make_orthogonal(3));
  auto s = delta_summands(o3);
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "u");
  CHECK(s[0].dim == 2);
  CHECK(s[1].dim == 3);
  CHECK(delta_summands(OrbitSpace(make_free_group(2))).size() == 3);
  CHECK(delta_summands(OrbitSpace(make_unitary(2))).size() == 3);
  CHECK(delta_summands(OrbitSpace(make_free_product({make_unitary(2), make_orthogonal(3)}))).size() == 4);
  for (auto g : {make_orthogonal(3), make_free_group(2), make_unitary(2)}) {
    OrbitSpace sp(g);
    for (const auto& sm : delta_summands(sp))
      for (const auto& x : sp.basis(4)) {
        auto img = apply_summand(sp, sm, x);
        CHECK(img.size() <= 3);
        for (const auto& [l, k] : img) CHECK(std::abs(sp.degree(l) - sp.degree(x)) <= 1);
      }
  }
}

TEST_CASE("serial and parallel assembly agree") {
  for (RingPtr g : {make_orthogonal(3), make_free_group(2), RingPtr(make_free_product({make_unitary(2), make_orthogonal(3)}))}) {
    OrbitSpace sp(g);
    auto a = assemble_delta(sp, 4, Execution::serial);
    auto b = assemble_delta(sp, 4, Execution::parallel);
    CHECK(a.matrix.rows == b.matrix.rows);
    CHECK(a.matrix.cols == b.matrix.cols);
    CHECK(a.column_reach == b.column_reach);
  }
}

TEST_CASE("K-theory of the supported models") {
  struct Case {
    RingPtr g;
    std::vector<int> radii;
    std::size_t k1;
    std::string method;
  };
  std::vector<Case> cases{{make_orthogonal(2), {4, 6, 8}, 2, "both"},
                          {make_orthogonal(3), {4, 6, 8}, 2, "both"},
                          {make_orthogonal(5), {4, 6, 8}, 2, "both"},
                          {make_free_group(1), {3, 4, 5}, 2, "both"},
                          {make_free_group(2), {2, 3, 4}, 3, "both"},
                          {make_unitary(2), {2, 3, 4}, 3, "truncated_snf"},
                          {make_free_product({make_unitary(2), make_orthogonal(3)}), {2, 3, 4}, 4, "truncated_snf"}};
  for (const auto& c : cases) {
    CAPTURE(c.g->name());
    OrbitSpace sp(c.g);
    auto r = compute_ktheory(sp, c.radii);
    CHECK(r.stable);
    CHECK(r.method == c.method);
    CHECK(r.k0 == CokernelInvariants{1, {2}});
    CHECK(r.k1_rank == c.k1);
    auto sums = delta_summands(sp);
    for (const auto& v : r.kernel_basis) CHECK(apply_delta(sp, sums, v).empty());
  }
  CHECK_THROWS_AS(compute_ktheory(OrbitSpace(make_orthogonal(3)), {2, 3}), ConstructionError);
  CHECK_THROWS_AS(compute_ktheory(OrbitSpace(make_orthogonal(3)), {2, 4, 3}), ConstructionError);
}

TEST_CASE("the kernel for O+(3) is spanned by e_0 + e_U and f_U at every radius") {
  OrbitSpace sp(make_orthogonal(3));
  ZCombo a = e(OrbitSpace::empty());
  a.add(Label(0, {OrbitSpace::special()}), 1);
  std::vector<ZCombo> expected{a, e(OrbitSpace::special(), 1)};
  for (int r = 2; r <= 6; ++r) {
    CAPTURE(r);
    auto res = compute_ktheory(sp, {r, r + 1, r + 2});
    CHECK(same_lattice(res.kernel_basis, expected));
  }
}

TEST_CASE("rewriting reduction") {
  OrbitSpace sp(make_orthogonal(3));
  // p(e_{v1 u1}) = a_0 b_0 p(e_0)
  CHECK(rewrite(sp, sp.parse("(v1 u1)")) == std::make_pair(Integer(6), Integer(0)));
  CHECK(rewrite(sp, OrbitSpace::special()) == std::make_pair(Integer(0), Integer(1)));
  auto rw = rewriting_cokernel(sp, 5);
  CHECK(rw.cokernel == CokernelInvariants{1, {2}});
  bool found = false;
  for (const auto& rel : rw.relations)
    if (rel[0] == -rel[1] && abs(rel[0]) == 2) found = true;
  CHECK(found);
  CHECK(rewriting_supported(*make_orthogonal(3)));
  CHECK(rewriting_supported(*make_free_group(2)));
  CHECK_FALSE(rewriting_supported(*make_unitary(2)));
  OrbitSpace u(make_unitary(2));
  CHECK_THROWS(rewriting_cokernel(u, 3));
}

TEST_CASE("image lattices follow the corrected recurrences") {
  for (int k = 0; k < 6; ++k) CHECK(sequence_a(k) == k + 2);
  std::vector<long> b{3, 8, 21, 55, 144};
  for (int k = 0; k < 5; ++k) CHECK(sequence_b(3, k) == b[static_cast<std::size_t>(k)]);
  OrbitSpace sp(make_orthogonal(3));
  auto sums = delta_summands(sp);
  auto a = image_sequence(sp, sums[0], sp.parse("(v1)"), 5);
  CHECK(a.coefficients == std::vector<Integer>{2, 3, 4, 5, 6});
  CHECK(a.free_of_rank);
  auto bv = image_sequence(sp, sums[1], OrbitSpace::empty(), 4);
  CHECK(bv.coefficients == std::vector<Integer>{3, 8, 21, 55});
  CHECK(bv.free_of_rank);
}

TEST_CASE("exactness windows") {
  for (auto g : {make_free_group(1), make_free_group(2)}) {
    auto r = exactness_check(g, g->name() == "F(1)" ? 5 : 4);
    CHECK(r.augmentation_kills_image);
    CHECK(r.injective);
    CHECK(r.interior_exact);
    CHECK(r.interior_checked > 0);
    CHECK(r.passed);
  }
  auto r = exactness_check(make_orthogonal(3), 4);
  CHECK(r.passed);
  auto z2 = exactness_check(make_free_abelian(2), 4);
  CHECK(z2.augmentation_kills_image);
  CHECK_FALSE(z2.injective);
  CHECK_FALSE(z2.passed);
  CHECK_FALSE(z2.witness.empty());
}

TEST_CASE("the commutation relation collapses the resolution over Z^2 only") {
  auto check = [](RingPtr g, bool equal) {
    auto amb = make_free_product({g, make_su2()});
    const auto& gr = *g;
    Label a = gr.parse("a"), b = gr.parse("b");
    Label ai = gr.conj(a), bi = gr.conj(b);
    auto lift = [&](const Label& x) { return amb->letter(0, x); };
    // d_{a^-1}(a - ab) versus d_{b^-1}(a b a^-1 - ab)
    Label ab = single(*amb, lift(a), lift(b));
    Label aba = single(*amb, ab, lift(ai));
    ZCombo x = ZCombo::single(lift(a));
    x.add(ab, -1);
    ZCombo y = ZCombo::single(aba);
    y.add(ab, -1);
    auto lhs = resolution_map(*amb, lift(ai), x);
    auto rhs = resolution_map(*amb, lift(bi), y);
    CHECK((lhs == rhs) == equal);
    CHECK_FALSE(lhs.empty());
  };
  check(make_free_abelian(2), true);
  check(make_free_group(2), false);
}

TEST_CASE("unsupported groups are rejected") {
  CHECK_THROWS_AS(delta_summands(OrbitSpace(make_cyclic(3))), ConstructionError);
  CHECK_THROWS_AS(delta_summands(OrbitSpace(make_free_abelian(2))), ConstructionError);
  CHECK_THROWS_AS(exactness_check(make_cyclic(2), 3), ConstructionError);
}

TEST_CASE("K-theory reports round-trip through JSON") {
  OrbitSpace sp(make_orthogonal(3));
  auto r = compute_ktheory(sp, {2, 3, 4});
  Json j = to_json(r, "wreath(O+(3))");
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["k0"]["rank"] == 1);
  CHECK(j["k1"]["rank"] == 2);
  auto back = ktheory_from_json(j);
  CHECK(back.k0 == r.k0);
  CHECK(back.k1_rank == r.k1_rank);
  CHECK(back.kernel_basis == r.kernel_basis);
  CHECK(back.stable == r.stable);
  CHECK(to_json(back, "wreath(O+(3))") == j);
  auto ex = exactness_check(make_free_group(1), 3);
  Json je = to_json(ex, "F(1)");
  CHECK(to_json(exactness_from_json(je), "F(1)") == je);
}
