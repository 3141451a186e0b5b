#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fusion/rings.hpp"

namespace fusion {

enum class Execution { serial, parallel };

struct VerifyOptions {
  /// Beyond this many triples, associativity is checked on a random sample.
  std::size_t triple_limit = 60000;
  std::uint32_t seed = 20240601;
  Execution execution = Execution::parallel;
};

/// Outcome of an axiom verification. `failed_check` and `counterexample`
/// describe the first violation in the deterministic checking order.
struct AxiomReport {
  bool passed = true;
  std::string failed_check;
  std::string counterexample;
  std::size_t labels = 0;
  std::size_t triples = 0;
  bool sampled = false;

  void fail(std::string check, std::string witness) {
    if (!passed) return;
    passed = false;
    failed_check = std::move(check);
    counterexample = std::move(witness);
  }
};

/// Checks unit, involution, Frobenius (multiplicity one), non-negativity,
/// anti-multiplicativity of conj, associativity and dimension
/// multiplicativity on all labels of degree <= bound.
AxiomReport verify_based_ring_axioms(const FusionRing& ring, int bound, const VerifyOptions& opts = {});

/// Checks that Lambda is injective and multiplicative on wreath words of
/// degree <= bound.
AxiomReport verify_lambda(const WreathRing& ring, int bound, const VerifyOptions& opts = {});

/// Index triples in [0,n0) x [0,n1) x [0,n2): all of them when there are at
/// most `limit`, otherwise `limit` triples drawn with the seeded generator.
std::vector<std::array<std::uint32_t, 3>> index_triples(std::array<std::size_t, 3> sizes, std::size_t limit,
                                                        std::uint32_t seed, bool* sampled = nullptr);

}  // namespace fusion
