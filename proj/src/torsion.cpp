#include "fusion/torsion.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>
#include <set>

#include "fusion/parallel.hpp"

namespace fusion {

namespace {

SmallMatrix identity_matrix(std::size_t r) {
  SmallMatrix m(r, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

SmallMatrix transpose(const SmallMatrix& a) {
  const std::size_t r = a.size();
  SmallMatrix t(r, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) t[j][i] = a[i][j];
  return t;
}

SmallMatrix multiply(const SmallMatrix& a, const SmallMatrix& b) {
  const std::size_t r = a.size();
  SmallMatrix c(r, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

bool connected(const std::map<Label, SmallMatrix>& action, std::size_t r) {
  if (r == 0) return false;
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [l, m] : action)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (m[i][j]) parent[find(i)] = find(j);
  for (std::size_t i = 1; i < r; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

struct GeneratorInfo {
  Label label;
  bool self_conjugate = false;
  bool group_like = false;  // label (x) conj(label) = unit
};

// Derives the matrices of all labels reachable from the unit by right
// multiplication with generators whose products are single labels.
bool derive_action(const FusionRing& ring, const std::vector<Label>& all_generators,
                   const std::map<Label, SmallMatrix>& gen_mats, std::size_t r,
                   std::map<Label, SmallMatrix>* out) {
  std::map<Label, SmallMatrix> act;
  act.emplace(ring.unit(), identity_matrix(r));
  std::deque<Label> queue{ring.unit()};
  while (!queue.empty()) {
    Label a = queue.front();
    queue.pop_front();
    for (const auto& g : all_generators) {
      auto c = ring.tensor(a, g).as_single();
      if (!c) continue;
      SmallMatrix m = multiply(act.at(a), gen_mats.at(g));
      auto it = act.find(*c);
      if (it == act.end()) {
        act.emplace(*c, std::move(m));
        queue.push_back(*c);
      } else if (it->second != m) {
        return false;
      }
    }
  }
  *out = std::move(act);
  return true;
}

class Search {
 public:
  Search(const FusionRing& ring, std::size_t rank, long long max_entry, std::uint64_t budget,
         std::atomic<std::uint64_t>* nodes, std::atomic<bool>* over)
      : ring_(ring), r_(rank), max_entry_(max_entry), budget_(budget), nodes_(nodes), over_(over) {
    std::set<Label> seen;
    for (const auto& g : ring.generators()) {
      all_generators_.push_back(g);
      if (seen.count(ring.conj(g))) continue;
      seen.insert(g);
      GeneratorInfo info;
      info.label = g;
      info.self_conjugate = ring.conj(g) == g;
      info.group_like = ring.tensor(g, ring.conj(g)).as_single() == ring.unit();
      gens_.push_back(info);
    }
  }

  const std::vector<GeneratorInfo>& generators() const { return gens_; }

  /// Row vectors allowed as the first row of the first generator.
  std::vector<std::vector<long long>> first_rows() const {
    std::vector<std::vector<long long>> out;
    if (gens_.empty()) return out;
    std::vector<long long> row(r_, 0);
    enumerate_rows(0, row, 0, [&](const std::vector<long long>& v) { out.push_back(v); });
    return out;
  }

  void run_from(const std::vector<long long>& first, std::vector<ModuleCandidate>* found) {
    mats_.assign(gens_.size(), SmallMatrix(r_, std::vector<long long>(r_, 0)));
    found_ = found;
    if (gens_.empty()) {
      finish();
      return;
    }
    mats_[0][0] = first;
    if (!row_ok(0, 0)) return;
    step(0, 1);
  }

  /// Used when the ring has no generators (only the unit).
  void run_trivial(std::vector<ModuleCandidate>* found) {
    mats_.clear();
    found_ = found;
    finish();
  }

 private:
  template <class F>
  void enumerate_rows(std::size_t gen, std::vector<long long>& row, std::size_t row_index, F&& emit) const {
    // For self-conjugate generators the entries left of the diagonal are
    // fixed by symmetry; the caller overwrites them, so only j >= row_index vary.
    const std::size_t start = gens_[gen].self_conjugate ? row_index : 0;
    std::fill(row.begin(), row.end(), 0);
    while (true) {
      emit(row);
      std::size_t j = start;
      while (j < r_ && row[j] == max_entry_) row[j++] = 0;
      if (j == r_) return;
      ++row[j];
    }
  }

  bool charge() {
    if (over_->load(std::memory_order_relaxed)) return false;
    if (nodes_->fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
      over_->store(true);
      return false;
    }
    return true;
  }

  bool row_ok(std::size_t g, std::size_t i) const {
    const auto& m = mats_[g];
    if (gens_[g].self_conjugate)
      for (std::size_t j = 0; j < i; ++j)
        if (m[i][j] != m[j][i]) return false;
    if (gens_[g].group_like) {
      for (std::size_t k = 0; k <= i; ++k) {
        long long dot = 0;
        for (std::size_t j = 0; j < r_; ++j) dot += m[i][j] * m[k][j];
        if (dot != (k == i ? 1 : 0)) return false;
      }
    }
    return true;
  }

  void step(std::size_t g, std::size_t i) {
    if (i == r_) {
      if (g + 1 == gens_.size()) {
        finish();
        return;
      }
      step(g + 1, 0);
      return;
    }
    std::vector<long long> row(r_, 0);
    bool stop = false;
    enumerate_rows(g, row, i, [&](const std::vector<long long>& v) {
      if (stop) return;
      if (!charge()) {
        stop = true;
        return;
      }
      auto& target = mats_[g][i];
      target = v;
      if (gens_[g].self_conjugate)
        for (std::size_t j = 0; j < i; ++j) target[j] = mats_[g][j][i];
      if (row_ok(g, i)) step(g, i + 1);
    });
  }

  void finish() {
    std::map<Label, SmallMatrix> gen_mats;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      gen_mats[gens_[g].label] = mats_[g];
      gen_mats[ring_.conj(gens_[g].label)] = transpose(mats_[g]);
    }
    std::map<Label, SmallMatrix> action;
    if (!derive_action(ring_, all_generators_, gen_mats, r_, &action)) return;
    if (!check_matrix_module(ring_, action).empty()) return;
    ModuleCandidate c;
    c.rank = r_;
    for (std::size_t g = 0; g < gens_.size(); ++g) c.generators.emplace_back(gens_[g].label, mats_[g]);
    c.canonical_key = canonical_key(mats_);
    found_->push_back(std::move(c));
  }

  const FusionRing& ring_;
  std::size_t r_;
  long long max_entry_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>* nodes_;
  std::atomic<bool>* over_;
  std::vector<Label> all_generators_;
  std::vector<GeneratorInfo> gens_;
  std::vector<SmallMatrix> mats_;
  std::vector<ModuleCandidate>* found_ = nullptr;
};

ModuleCandidate canonical_representative(const ModuleCandidate& c) {
  const std::size_t r = c.rank;
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::int64_t> best;
  std::vector<std::size_t> best_perm = perm;
  do {
    std::vector<std::int64_t> key;
    for (const auto& [l, m] : c.generators)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) key.push_back(m[perm[i]][perm[j]]);
    if (best.empty() || key < best) {
      best = std::move(key);
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  ModuleCandidate out;
  out.rank = r;
  for (const auto& [l, m] : c.generators) {
    SmallMatrix p(r, std::vector<long long>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) p[i][j] = m[best_perm[i]][best_perm[j]];
    out.generators.emplace_back(l, std::move(p));
  }
  out.canonical_key = std::move(best);
  return out;
}

}  // namespace

std::vector<std::int64_t> canonical_key(const std::vector<SmallMatrix>& mats) {
  const std::size_t r = mats.empty() ? 0 : mats.front().size();
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::int64_t> best;
  bool first = true;
  do {
    std::vector<std::int64_t> key;
    for (const auto& m : mats)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) key.push_back(m[perm[i]][perm[j]]);
    if (first || key < best) best = std::move(key);
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::map<Label, SmallMatrix> ModuleCandidate::full_action(const FusionRing& ring) const {
  std::map<Label, SmallMatrix> gen_mats;
  std::vector<Label> all;
  for (const auto& [l, m] : generators) {
    gen_mats[l] = m;
    gen_mats[ring.conj(l)] = transpose(m);
  }
  for (const auto& [l, m] : gen_mats) all.push_back(l);
  std::map<Label, SmallMatrix> action;
  if (!derive_action(ring, all, gen_mats, rank, &action))
    throw DomainError("generator matrices do not define a module");
  return action;
}

std::shared_ptr<const FiniteModule> ModuleCandidate::to_module(RingPtr ring, const std::string& name) const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) names.push_back("j" + std::to_string(i));
  return std::make_shared<FiniteModule>(ring, name, std::move(names), full_action(*ring));
}

std::string check_matrix_module(const FusionRing& ring, const std::map<Label, SmallMatrix>& action) {
  if (!ring.is_finite()) return "ring is not finite";
  const auto labels = ring.enumerate(0);
  if (action.empty()) return "empty action";
  const std::size_t r = action.begin()->second.size();
  for (const auto& l : labels)
    if (!action.count(l)) return "no matrix for " + ring.format(l);
  if (action.at(ring.unit()) != identity_matrix(r)) return "unit does not act as the identity";
  for (const auto& a : labels) {
    const auto& m = action.at(a);
    for (const auto& row : m)
      for (long long x : row)
        if (x < 0) return "negative entry for " + ring.format(a);
    if (action.at(ring.conj(a)) != transpose(m)) return "conjugate of " + ring.format(a) + " is not the transpose";
  }
  for (const auto& a : labels)
    for (const auto& b : labels) {
      SmallMatrix lhs = multiply(action.at(a), action.at(b));
      SmallMatrix rhs(r, std::vector<long long>(r, 0));
      for (const auto& [c, k] : ring.tensor(a, b)) {
        const auto& mc = action.at(c);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) rhs[i][j] += k.get_si() * mc[i][j];
      }
      if (lhs != rhs) return "product relation fails for " + ring.format(a) + " (x) " + ring.format(b);
    }
  if (!connected(action, r)) return "not connected";
  return {};
}

EnumerationResult enumerate_modules(RingPtr ring, const EnumerationOptions& opts) {
  if (!ring || !ring->is_finite()) throw ConstructionError("module enumeration needs a finite ring");
  if (opts.max_rank < 1 || opts.max_rank > 6) throw ConstructionError("max_rank must be between 1 and 6");
  if (opts.max_entry < 1) throw ConstructionError("max_entry must be positive");
  EnumerationResult res;
  res.ring = ring->name();
  std::set<std::vector<std::int64_t>> seen;
  for (std::size_t r = 1; r <= opts.max_rank; ++r) {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> over{false};
    Search probe(*ring, r, opts.max_entry, opts.budget, &nodes, &over);
    std::vector<ModuleCandidate> found;
    if (probe.generators().empty()) {
      probe.run_trivial(&found);
    } else {
      auto firsts = probe.first_rows();
      std::vector<std::vector<ModuleCandidate>> local(firsts.size());
      parallel_for(firsts.size(), opts.execution, [&](std::size_t k) {
        Search s(*ring, r, opts.max_entry, opts.budget, &nodes, &over);
        s.run_from(firsts[k], &local[k]);
      });
      for (auto& v : local)
        for (auto& c : v) found.push_back(std::move(c));
    }
    res.nodes += nodes.load();
    if (over.load()) {
      res.budget_exceeded = true;
      break;
    }
    res.raw_solutions += found.size();
    std::vector<ModuleCandidate> fresh;
    for (const auto& c : found)
      if (seen.insert(c.canonical_key).second) fresh.push_back(canonical_representative(c));
    std::sort(fresh.begin(), fresh.end(),
              [](const ModuleCandidate& a, const ModuleCandidate& b) { return a.canonical_key < b.canonical_key; });
    for (auto& c : fresh) res.modules.push_back(std::move(c));
    res.completed_rank = r;
  }
  return res;
}

CandidateReport verify_candidate_module(const BasedModule& m, int bound, const VerifyOptions& opts) {
  CandidateReport rep;
  const auto basis = m.basis(bound);
  const auto gens = m.ring().generators();
  rep.cofinite = true;
  for (const auto& j : basis)
    for (const auto& g : gens) {
      ZCombo img;
      try {
        img = m.act_impl(g, j);
      } catch (const std::exception& e) {
        throw DomainError("rule is not defined on " + m.ring().format(g) + " (x) " + m.format(j) + ": " + e.what());
      }
      for (const auto& [l, k] : img)
        if (k < 0 || !m.contains(l)) {
          rep.cofinite = false;
          if (rep.note.empty()) rep.note = "image of " + m.format(j) + " leaves the module";
        }
    }
  rep.axioms = check_module_axioms(m, bound, opts);
  auto comps = orbit_components(m, bound, 2);
  rep.components = comps.size();
  rep.connected = comps.size() == 1;
  if (!rep.axioms.passed && rep.note.empty()) rep.note = rep.axioms.failed_check + ": " + rep.axioms.counterexample;
  if (!rep.connected && rep.note.empty()) rep.note = std::to_string(comps.size()) + " components in the window";
  rep.passed = rep.axioms.passed && rep.connected && rep.cofinite;
  return rep;
}

}  // namespace fusion
