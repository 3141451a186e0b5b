#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fusion/modules.hpp"

namespace fusion {

/// Connected finite-rank module over a finite ring, presented by one matrix
/// per chosen generator (conjugate generators act by the transpose).
struct ModuleCandidate {
  std::size_t rank = 0;
  std::vector<std::pair<Label, SmallMatrix>> generators;
  std::vector<std::int64_t> canonical_key;  // lex-min over relabelings

  /// Matrices of every ring label, derived from the generators.
  std::map<Label, SmallMatrix> full_action(const FusionRing& ring) const;
  std::shared_ptr<const FiniteModule> to_module(RingPtr ring, const std::string& name) const;
};

struct EnumerationOptions {
  std::size_t max_rank = 4;
  long long max_entry = 3;
  /// Search nodes allowed per rank before the result is marked as over budget.
  std::uint64_t budget = 50'000'000;
  Execution execution = Execution::parallel;
};

struct EnumerationResult {
  std::string ring;
  std::vector<ModuleCandidate> modules;  // sorted by (rank, canonical key)
  std::uint64_t nodes = 0;
  std::size_t raw_solutions = 0;  // before isomorphism dedup
  bool budget_exceeded = false;
  std::size_t completed_rank = 0;  // largest rank searched exhaustively
};

/// Exhaustive search for connected based modules of rank <= max_rank with
/// entries <= max_entry, deduplicated under simultaneous permutation
/// conjugation. Requires a finite ring.
EnumerationResult enumerate_modules(RingPtr ring, const EnumerationOptions& opts = {});

/// Lex-min relabeling key of a family of matrices.
std::vector<std::int64_t> canonical_key(const std::vector<SmallMatrix>& mats);

/// Checks the product relations M_a M_b = sum_c lambda_{ab}^c M_c, transpose
/// compatibility, the unit and connectivity on a complete action. Returns an
/// empty string when all hold, otherwise the first violation.
std::string check_matrix_module(const FusionRing& ring, const std::map<Label, SmallMatrix>& action);

struct CandidateReport {
  AxiomReport axioms;
  bool connected = false;
  std::size_t components = 0;
  bool cofinite = false;
  std::string note;
  bool passed = false;
};

/// Verifies a closed-form (possibly infinite-basis) module on the window of
/// degree <= bound: module axioms, connectivity and that every generator
/// maps window elements to finite combinations of module elements. Throws
/// DomainError when the rule is not defined on the window.
CandidateReport verify_candidate_module(const BasedModule& m, int bound, const VerifyOptions& opts = {});

}  // namespace fusion
