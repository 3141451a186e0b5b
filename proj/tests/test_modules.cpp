#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fusion/modules.hpp"

using namespace fusion;

namespace {

std::shared_ptr<const FiniteModule> swap_module() {
  auto z2 = make_cyclic(2);
  return FiniteModule::from_generators(z2, "swap", {"j0", "j1"}, {{Label(1), {{0, 1}, {1, 0}}}});
}

}  // namespace

TEST_CASE("finite modules over Z/2") {
  auto z2 = make_cyclic(2);
  auto triv = trivial_module(z2);
  CHECK(z2->format(pairing(*triv, Label(0), Label(0), 3)) == "1 + s");
  CHECK(check_module_axioms(*triv, 3).passed);
  auto sw = swap_module();
  CHECK(check_module_axioms(*sw, 3).passed);
  CHECK(check_pairing_equivariance(*sw, 3).passed);
  CHECK(stabilizer(*triv, Label(0), 3).size() == 2);
  CHECK(stabilizer(*sw, Label(0), 3).size() == 1);
  CHECK(detect_standard(*sw, 3).kind == StandardVerdict::Kind::standard);
  CHECK(detect_standard(*triv, 3).kind == StandardVerdict::Kind::non_standard);
}

TEST_CASE("a relation-violating matrix is rejected") {
  auto z4 = make_cyclic(4);
  // g^3 must act by the transpose of g's matrix; the identity breaks that.
  auto bad = std::make_shared<FiniteModule>(
      z4, "bad", std::vector<std::string>{"j0", "j1"},
      std::map<Label, SmallMatrix>{{Label(0), {{1, 0}, {0, 1}}},
                                   {Label(1), {{0, 1}, {1, 0}}},
                                   {Label(2), {{1, 0}, {0, 1}}},
                                   {Label(3), {{1, 0}, {0, 1}}}});
  CHECK_FALSE(check_module_axioms(*bad, 0).passed);
}

TEST_CASE("standard modules") {
  for (auto r : {make_su2(), make_orthogonal(3), make_free_group(2)}) {
    auto m = standard_module(r);
    CHECK(check_module_axioms(*m, 4).passed);
    CHECK(check_pairing_equivariance(*m, 4).passed);
    CHECK(detect_standard(*m, 4).kind == StandardVerdict::Kind::standard);
  }
}

TEST_CASE("spin module over the SO_q(3) ring") {
  auto s = spin_module();
  CHECK(check_module_axioms(*s, 6).passed);
  CHECK(check_pairing_equivariance(*s, 6).passed);
  auto v = detect_standard(*s, 6);
  CHECK(v.kind == StandardVerdict::Kind::non_standard);
  // u^2 (x) j_0 = j_0 + j_1: u^2 stabilizes j_0.
  auto u2 = s->ring().parse("[1]");
  CHECK(s->act(u2, Label(0)) == [] {
    ZCombo c;
    c.add(Label(0), 1);
    c.add(Label(1), 1);
    return c;
  }());
}

TEST_CASE("induced modules decompose into N and standard modules on restriction") {
  auto z2 = make_cyclic(2);
  auto prod = make_free_product({z2, make_su2()});
  for (ModulePtr n : {ModulePtr(trivial_module(z2)), ModulePtr(swap_module())}) {
    auto ind = induce(n, prod, 0);
    CHECK(check_module_axioms(*ind, 4).passed);
    CHECK(check_pairing_equivariance(*ind, 4).passed);
    auto res = restrict_to_factor(ind, prod, 0);
    auto comps = orbit_components(*res, 3, 2);
    std::size_t with_root = 0, standard = 0;
    for (const auto& c : comps) {
      const bool root = std::any_of(c.begin(), c.end(), [&](const Label& e) {
        return InducedModule::word_of(e) == prod->unit();
      });
      if (root) {
        ++with_root;
        CHECK(c.size() == static_cast<const FiniteModule&>(*n).rank());
      } else if (detect_standard(*res, 3, c).kind == StandardVerdict::Kind::standard) {
        ++standard;
      }
    }
    CHECK(with_root == 1);
    CHECK(standard + 1 == comps.size());
  }
}

TEST_CASE("module isomorphism search") {
  auto z2 = make_cyclic(2);
  auto a = module_isomorphic(*standard_module(z2), *swap_module(), 2);
  CHECK(a.kind == IsoResult::Kind::yes);
  auto b = module_isomorphic(*trivial_module(z2), *standard_module(z2), 2);
  CHECK(b.kind == IsoResult::Kind::no);
  auto su = make_su2();
  CHECK(module_isomorphic(*standard_module(su), *standard_module(su), 4).kind == IsoResult::Kind::yes);
}

TEST_CASE("wreath scan finds a unique non-standard submodule") {
  auto z2 = make_cyclic(2);
  auto w = make_wreath(z2);
  for (ModulePtr n : {ModulePtr(trivial_module(z2)), ModulePtr(swap_module())}) {
    auto s = wreath_submodule_scan(w, n, 4);
    CHECK(s.passed);
    CHECK(s.non_standard_components == 1);
    CHECK(s.undecided_components == 0);
    CHECK(s.contains_all_u1j);
    CHECK(s.u2_stabilizes_all);
    REQUIRE(s.submodule);
    CHECK(check_module_axioms(*s.submodule, 4).passed);
  }
}

TEST_CASE("serial and parallel module checks agree") {
  auto s = spin_module();
  VerifyOptions ser;
  ser.execution = Execution::serial;
  auto a = check_module_axioms(*s, 6);
  auto b = check_module_axioms(*s, 6, ser);
  CHECK(a.passed == b.passed);
  CHECK(a.triples == b.triples);
}
