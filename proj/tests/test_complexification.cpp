#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fusion/complexification.hpp"

using namespace fusion;

namespace {

std::shared_ptr<const FiniteModule> swap_module(RingPtr ring) {
  // Even powers of the generator fix both points, odd powers swap them.
  return FiniteModule::from_generators(ring, "swap", {"j0", "j1"}, {{ring->generators().front(), {{0, 1}, {1, 0}}}});
}

// Labels of the ambient ring reached by words in the generators of the
// tilde ring, tracked up to `cap` in degree.
std::set<Label> reachable(const TildeRing& t, int steps, int cap) {
  const auto& amb = t.ambient();
  std::set<Label> seen{amb.unit()};
  std::set<Label> frontier{amb.unit()};
  for (int s = 0; s < steps; ++s) {
    std::set<Label> next;
    for (const auto& x : frontier)
      for (const auto& g : t.generators())
        for (const auto& [l, k] : amb.tensor(x, g))
          if (amb.degree(l) <= cap && seen.insert(l).second) next.insert(l);
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("even parts") {
  auto o3 = make_orthogonal(3);
  auto ev = even_part(o3, Label(1));
  CHECK_FALSE(ev->contains(Label(1)));
  CHECK(ev->contains(Label(2)));
  CHECK(ev->contains(Label(0)));
  auto su = make_su2();
  auto es = even_part(su, Label(1));
  CHECK(es->contains(Label(4)));
  CHECK_FALSE(es->contains(Label(3)));
  auto w = make_wreath(make_cyclic(2));
  auto ew = even_part(w, w->parse("[s]"));
  CHECK(ew->contains(w->parse("[1]")));
  CHECK_FALSE(ew->contains(w->parse("[s]")));
  auto z4 = make_cyclic(4);
  CHECK_THROWS_AS(even_part(z4, Label(1)), DomainError);
  auto ez4 = even_part(z4, {Label(1), Label(3)});
  CHECK(ez4->contains(Label(2)));
  CHECK_FALSE(ez4->contains(Label(1)));
}

TEST_CASE("free complexification of O+(3)") {
  auto t = make_tilde(make_orthogonal(3), Label(1));
  CHECK_FALSE(t->degenerate());
  const auto& amb = t->ambient();
  CHECK(t->contains(t->tilde_u()));
  CHECK(t->contains(amb.conj(t->tilde_u())));
  CHECK_FALSE(t->contains(t->z(1)));
  CHECK(verify_based_ring_axioms(*t, 4).passed);
  // Every product of generators stays in W, and W is exhausted on a small window.
  auto reach = reachable(*t, 8, 8);
  for (const auto& l : reach) CHECK(tilde_membership(*t, l));
  for (const auto& l : amb.enumerate(4))
    if (tilde_membership(*t, l)) CHECK(reach.count(l) == 1);
}

TEST_CASE("degenerate complexification is all of G * S1") {
  // In Z/3 the products of g and g^2 reach every element, so G_ev = G.
  auto t = make_tilde(make_cyclic(3), std::vector<Label>{Label(1), Label(2)});
  CHECK(t->degenerate());
  CHECK(t->contains(t->z(1)));
  CHECK_FALSE(make_tilde(make_orthogonal(2), Label(1))->degenerate());
}

TEST_CASE("divisibility of the complexification") {
  auto o3 = make_orthogonal(3);
  auto t = make_tilde(o3, Label(1));
  auto rep = divisibility_check([&](const Label& l) { return t->contains(l); }, t->ambient(), 4);
  CHECK(rep.failed == 0);
  CHECK(rep.verified > 0);
  auto su = make_su2();
  auto ev = even_part(su, Label(1));
  auto neg = divisibility_check([&](const Label& l) { return ev->contains(l); }, *su, 4);
  CHECK(neg.failed >= 1);
}

TEST_CASE("even-class trichotomy") {
  auto z4 = make_cyclic(4);
  auto ev4 = even_part(z4, {Label(1), Label(3)});
  auto sw = swap_module(z4);
  CHECK(check_module_axioms(*sw, 0).passed);
  auto r = even_class_trichotomy(*sw, *ev4, 2);
  CHECK(r.classes == 2);
  CHECK_FALSE(r.odd_stabilizer_found);
  CHECK(r.consistent);
  auto z2 = make_cyclic(2);
  auto ev2 = even_part(z2, Label(1));
  auto t = even_class_trichotomy(*trivial_module(z2), *ev2, 2);
  CHECK(t.classes == 1);
  CHECK(t.odd_stabilizer_found);
  CHECK(t.consistent);
}

TEST_CASE("complexified submodule counts for the hyperoctahedral model") {
  auto z2 = make_cyclic(2);
  auto w = make_wreath(z2);
  auto t = make_tilde(w, w->parse("[s]"));
  auto triv = wreath_submodule_scan(w, trivial_module(z2), 3);
  auto swp = wreath_submodule_scan(w, swap_module(z2), 3);
  REQUIRE(triv.submodule);
  REQUIRE(swp.submodule);
  auto a = complexified_submodule_count(triv.submodule, t, 3);
  CHECK(a.count == 1);
  auto b = complexified_submodule_count(swp.submodule, t, 3);
  CHECK(b.count == 2);
  CHECK(b.iso_between.kind == IsoResult::Kind::yes);
  for (const auto& m : b.modules) CHECK(check_module_axioms(*m, 3).passed);
}
