#include "fusion/modules.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <set>

#include "fusion/parallel.hpp"

namespace fusion {

BasedModule::BasedModule(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw ConstructionError("module over a null ring");
}

std::vector<Label> BasedModule::basis(int bound) const {
  if (bound < 0) return {};
  auto raw = generate_basis(bound);
  std::vector<std::pair<int, Label>> keyed;
  keyed.reserve(raw.size());
  for (auto& l : raw) keyed.emplace_back(degree(l), std::move(l));
  std::sort(keyed.begin(), keyed.end());
  keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
  std::vector<Label> out;
  out.reserve(keyed.size());
  for (auto& [d, l] : keyed)
    if (d <= bound) out.push_back(std::move(l));
  return out;
}

std::string BasedModule::format(const ZCombo& c) const {
  if (c.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [l, k] : c) {
    if (!first) out += k < 0 ? " - " : " + ";
    else if (k < 0) out += "-";
    first = false;
    Integer a = abs(k);
    if (a != 1) out += a.get_str() + "*";
    out += format(l);
  }
  return out;
}

ZCombo BasedModule::act(const Label& i, const Label& j) const {
  if (!ring_->contains(i)) throw DomainError("ring label does not belong to " + ring_->name());
  if (!contains(j)) throw DomainError("basis label does not belong to module " + name());
  return act_impl(i, j);
}

ZCombo BasedModule::act(const Label& i, const ZCombo& x) const {
  ZCombo out;
  for (const auto& [j, c] : x) out.add(act(i, j), c);
  return out;
}

// ---------------------------------------------------------------- finite

FiniteModule::FiniteModule(RingPtr ring, std::string name, std::vector<std::string> names,
                           std::map<Label, SmallMatrix> action)
    : BasedModule(std::move(ring)), name_(std::move(name)), names_(std::move(names)), action_(std::move(action)) {
  if (names_.empty()) throw ConstructionError("a based module needs a non-empty basis");
  const std::size_t r = names_.size();
  for (const auto& [l, m] : action_) {
    if (!this->ring().contains(l)) throw ConstructionError("action given for a foreign ring label");
    if (m.size() != r) throw ConstructionError("action matrix has the wrong size");
    for (const auto& row : m)
      if (row.size() != r) throw ConstructionError("action matrix is not square");
  }
}

std::shared_ptr<FiniteModule> FiniteModule::from_generators(RingPtr ring, std::string name,
                                                            std::vector<std::string> names,
                                                            const std::map<Label, SmallMatrix>& generators) {
  if (!ring->is_finite()) throw ConstructionError("finite modules need a finite ring");
  const std::size_t r = names.size();
  if (r == 0) throw ConstructionError("a based module needs a non-empty basis");
  SmallMatrix id(r, std::vector<long long>(r, 0));
  for (std::size_t k = 0; k < r; ++k) id[k][k] = 1;
  std::map<Label, SmallMatrix> known{{ring->unit(), id}};
  std::deque<Label> queue{ring->unit()};
  while (!queue.empty()) {
    Label x = queue.front();
    queue.pop_front();
    for (const auto& [g, mg] : generators) {
      if (mg.size() != r) throw ConstructionError("generator matrix has the wrong size");
      auto y = ring->tensor(x, g).as_single();
      if (!y || known.count(*y)) continue;
      const auto& mx = known.at(x);
      SmallMatrix p(r, std::vector<long long>(r, 0));
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          for (std::size_t c = 0; c < r; ++c) p[a][c] += mx[a][b] * mg[b][c];
      known.emplace(*y, std::move(p));
      queue.push_back(*y);
    }
  }
  for (const auto& l : ring->enumerate(0))
    if (!known.count(l)) throw ConstructionError("generators do not reach " + ring->format(l));
  return std::make_shared<FiniteModule>(std::move(ring), std::move(name), std::move(names), std::move(known));
}

bool FiniteModule::contains(const Label& j) const {
  return j.letters.empty() && j.index >= 0 && j.index < static_cast<std::int64_t>(names_.size());
}

std::string FiniteModule::format(const Label& j) const { return names_.at(static_cast<std::size_t>(j.index)); }

const SmallMatrix& FiniteModule::matrix(const Label& ring_label) const {
  auto it = action_.find(ring_label);
  if (it == action_.end()) throw DomainError("no action recorded for " + ring().format(ring_label));
  return it->second;
}

ZCombo FiniteModule::act_impl(const Label& i, const Label& j) const {
  const auto& m = matrix(i);
  ZCombo out;
  for (std::size_t r = 0; r < m.size(); ++r)
    if (m[r][j.index] != 0) out.add(Label(static_cast<std::int64_t>(r)), Integer(static_cast<long>(m[r][j.index])));
  return out;
}

std::vector<Label> FiniteModule::generate_basis(int) const {
  std::vector<Label> out;
  for (std::size_t k = 0; k < names_.size(); ++k) out.emplace_back(static_cast<std::int64_t>(k));
  return out;
}

// ---------------------------------------------------------------- rule

RuleModule::RuleModule(RingPtr ring, std::string name, Rules rules)
    : BasedModule(std::move(ring)), name_(std::move(name)), rules_(std::move(rules)) {
  if (!rules_.contains || !rules_.act || !rules_.degree || !rules_.basis || !rules_.format)
    throw ConstructionError("rule module is missing a rule");
}

// ---------------------------------------------------------------- induced

InducedModule::InducedModule(ModulePtr base, std::shared_ptr<const FreeProductRing> product, std::size_t factor)
    : BasedModule(product), base_(std::move(base)), product_(std::move(product)), factor_(factor) {
  if (!base_) throw ConstructionError("induction of a null module");
  if (factor_ >= product_->factors().size()) throw ConstructionError("factor index out of range");
  const auto& f = product_->factor(factor_);
  if (&f != &base_->ring() && f.name() != base_->ring().name())
    throw ConstructionError("module ring " + base_->ring().name() + " is not factor " + f.name());
  if (base_->basis(0).empty() && base_->basis(1).empty())
    throw ConstructionError("induction of the zero module");
}

std::string InducedModule::name() const { return "Ind(" + base_->name() + " -> " + product_->name() + ")"; }

Label InducedModule::element(const Label& word, const Label& j) const {
  Label e(0, {word, j});
  if (!contains(e)) throw DomainError("not a basis element of " + name());
  return e;
}

bool InducedModule::contains(const Label& e) const {
  if (e.index != 0 || e.letters.size() != 2) return false;
  const Label& w = e.letters[0];
  if (!product_->contains(w)) return false;
  if (!w.letters.empty() && FreeProductRing::factor_of(w.letters.back()) == factor_) return false;
  return base_->contains(e.letters[1]);
}

int InducedModule::degree(const Label& e) const {
  return product_->degree_impl(word_of(e)) + base_->degree(base_of(e));
}

std::string InducedModule::format(const Label& e) const {
  const Label& w = word_of(e);
  if (w.letters.empty()) return base_->format(base_of(e));
  return product_->format_impl(w) + " " + base_->format(base_of(e));
}

ZCombo InducedModule::act_impl(const Label& i, const Label& e) const {
  ZCombo out;
  const Label& j = base_of(e);
  for (const auto& [x, c] : product_->tensor_impl(i, word_of(e))) {
    if (!x.letters.empty() && FreeProductRing::factor_of(x.letters.back()) == factor_) {
      Label rest = x;
      rest.letters.pop_back();
      for (const auto& [j2, k] : base_->act_impl(FreeProductRing::payload(x.letters.back()), j))
        out.add(Label(0, {rest, j2}), c * k);
    } else {
      out.add(Label(0, {x, j}), c);
    }
  }
  return out;
}

std::vector<Label> InducedModule::generate_basis(int bound) const {
  std::vector<Label> out;
  for (const auto& w : product_->enumerate(bound)) {
    if (!w.letters.empty() && FreeProductRing::factor_of(w.letters.back()) == factor_) continue;
    for (const auto& j : base_->basis(bound - product_->degree_impl(w))) out.emplace_back(0, std::vector<Label>{w, j});
  }
  return out;
}

// ---------------------------------------------------------------- restricted

RestrictedModule::RestrictedModule(ModulePtr parent, RingPtr subring, Embedding embed, std::string name)
    : BasedModule(std::move(subring)), parent_(std::move(parent)), embed_(std::move(embed)), name_(std::move(name)) {
  if (!parent_ || !embed_) throw ConstructionError("restriction needs a module and an embedding");
}

ZCombo RestrictedModule::act_impl(const Label& i, const Label& j) const {
  ZCombo out;
  for (const auto& [x, c] : embed_(i)) out.add(parent_->act_impl(x, j), c);
  return out;
}

// ---------------------------------------------------------------- submodule

SubModule::SubModule(ModulePtr parent, std::vector<Label> seeds, int slack, std::string name)
    : BasedModule(parent->ring_ptr()), parent_(std::move(parent)), seeds_(std::move(seeds)), slack_(slack),
      name_(std::move(name)) {
  if (seeds_.empty()) throw ConstructionError("submodule needs at least one generator");
  for (const auto& s : seeds_)
    if (!parent_->contains(s)) throw ConstructionError("submodule generator outside the parent module");
}

std::vector<Label> SubModule::generate_basis(int bound) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(bound);
  if (it != cache_.end()) return it->second;
  const int cap = bound + slack_;
  const auto gens = ring().generators();
  std::set<Label> seen;
  std::deque<Label> queue;
  for (const auto& s : seeds_)
    if (parent_->degree(s) <= cap && seen.insert(s).second) queue.push_back(s);
  while (!queue.empty()) {
    Label x = queue.front();
    queue.pop_front();
    for (const auto& g : gens)
      for (const auto& [y, c] : parent_->act_impl(g, x))
        if (parent_->degree(y) <= cap && seen.insert(y).second) queue.push_back(y);
  }
  std::vector<Label> out;
  for (const auto& l : seen)
    if (parent_->degree(l) <= bound) out.push_back(l);
  cache_.emplace(bound, out);
  return out;
}

bool SubModule::contains(const Label& j) const {
  if (!parent_->contains(j)) return false;
  int window = 0;
  for (const auto& s : seeds_) window = std::max(window, parent_->degree(s));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!cache_.empty()) window = std::max(window, cache_.rbegin()->first);
    auto it = membership_.find(j);
    if (it != membership_.end()) return it->second;
  }
  const auto known = generate_basis(window);
  if (parent_->degree(j) <= window) return std::binary_search(known.begin(), known.end(), j);

  // The submodule generated by basis elements is a union of components of
  // the action graph, so the first window element reached from j decides.
  const int cap = parent_->degree(j) + slack_;
  const auto gens = ring().generators();
  using Item = std::pair<int, Label>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  std::set<Label> seen{j};
  queue.emplace(parent_->degree(j), j);
  bool found = false;
  while (!queue.empty()) {
    auto [d, x] = queue.top();
    queue.pop();
    if (d <= window) {
      found = std::binary_search(known.begin(), known.end(), x);
      break;
    }
    for (const auto& g : gens)
      for (const auto& [y, c] : parent_->act_impl(g, x)) {
        const int dy = parent_->degree(y);
        if (dy <= cap && seen.insert(y).second) queue.emplace(dy, y);
      }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  membership_.emplace(j, found);
  return found;
}

// ---------------------------------------------------------------- factories

std::shared_ptr<const StandardModule> standard_module(RingPtr ring) {
  return std::make_shared<StandardModule>(std::move(ring));
}

std::shared_ptr<const FiniteModule> trivial_module(RingPtr ring) {
  std::map<Label, SmallMatrix> gens;
  for (const auto& g : ring->generators()) gens[g] = SmallMatrix{{1}};
  auto name = "trivial(" + ring->name() + ")";
  return FiniteModule::from_generators(std::move(ring), name, {"j0"}, gens);
}

std::shared_ptr<const InducedModule> induce(ModulePtr base, std::shared_ptr<const FreeProductRing> product,
                                            std::size_t factor) {
  return std::make_shared<InducedModule>(std::move(base), std::move(product), factor);
}

std::shared_ptr<const RestrictedModule> restrict_to_wreath(ModulePtr module, std::shared_ptr<const WreathRing> wreath) {
  if (module->ring_ptr().get() != wreath->ambient_ptr().get())
    throw ConstructionError("module is not over the ambient ring of " + wreath->name());
  auto name = module->name() + " | " + wreath->name();
  auto w = wreath;
  return std::make_shared<RestrictedModule>(
      std::move(module), wreath, [w](const Label& l) { return ZCombo::single(w->lambda(l)); }, name);
}

std::shared_ptr<const RestrictedModule> restrict_to_factor(ModulePtr module, std::shared_ptr<const FreeProductRing> product,
                                                           std::size_t factor) {
  if (module->ring_ptr().get() != product.get()) throw ConstructionError("module is not over " + product->name());
  auto name = module->name() + " | " + product->factor(factor).name();
  auto p = product;
  return std::make_shared<RestrictedModule>(
      std::move(module), product->factors().at(factor),
      [p, factor](const Label& l) { return ZCombo::single(p->letter(factor, l)); }, name);
}

std::shared_ptr<const RuleModule> spin_module() {
  RuleModule::Rules r;
  r.contains = [](const Label& j) { return j.letters.empty() && j.index >= 0; };
  r.act = [](const Label& i, const Label& j) {
    // u^{2n} (x) u^{2k+1} = sum_{t=0}^{min(2n, 2k+1)} u^{2(k+n-t)+1}
    const std::int64_t n = static_cast<std::int64_t>(i.letters.size());
    const std::int64_t k = j.index;
    ZCombo out;
    for (std::int64_t t = 0; t <= std::min(2 * n, 2 * k + 1); ++t) out.add(Label(k + n - t), 1);
    return out;
  };
  r.degree = [](const Label& j) { return static_cast<int>(j.index); };
  r.basis = [](int bound) {
    std::vector<Label> out;
    for (int k = 0; k <= bound; ++k) out.emplace_back(k);
    return out;
  };
  r.format = [](const Label& j) { return "j" + std::to_string(j.index); };
  return std::make_shared<RuleModule>(make_wreath(make_cyclic(1)), "spin", std::move(r));
}

// ---------------------------------------------------------------- operations

std::vector<Label> stabilizer(const BasedModule& m, const Label& j, int bound) {
  if (!m.contains(j)) throw DomainError("basis label does not belong to module " + m.name());
  std::vector<Label> out;
  for (const auto& i : m.ring().enumerate(bound))
    if (m.act_impl(i, j).contains(j)) out.push_back(i);
  return out;
}

ZCombo pairing(const BasedModule& m, const Label& j1, const Label& j2, int bound) {
  if (!m.contains(j1) || !m.contains(j2)) throw DomainError("basis label does not belong to module " + m.name());
  ZCombo out;
  const auto& r = m.ring();
  for (const auto& i : r.enumerate(bound)) out.add(i, m.act_impl(r.conj_impl(i), j1).coefficient(j2));
  return out;
}

std::string to_string(StandardVerdict::Kind k) {
  switch (k) {
    case StandardVerdict::Kind::standard:
      return "standard";
    case StandardVerdict::Kind::non_standard:
      return "non_standard";
    default:
      return "unknown";
  }
}

StandardVerdict detect_standard(const BasedModule& m, int bound, const std::vector<Label>& candidates) {
  StandardVerdict v;
  const auto labels = m.ring().enumerate(bound);
  const Label e = m.ring().unit();
  const auto cand = candidates.empty() ? m.basis(bound) : candidates;
  bool all_stabilized = !cand.empty();
  for (const auto& j : cand) {
    std::optional<Label> stab;
    for (const auto& i : labels)
      if (i != e && m.act_impl(i, j).contains(j)) {
        stab = i;
        break;
      }
    if (stab) {
      if (v.kind != StandardVerdict::Kind::non_standard) {
        v.kind = StandardVerdict::Kind::non_standard;
        v.element = j;
        v.stabilizer = *stab;
      }
      continue;
    }
    all_stabilized = false;
    // Trivial stabilizer: every non-unit label must move j to a distinct basis element.
    std::set<Label> images;
    bool ok = true;
    for (const auto& i : labels) {
      auto img = m.act_impl(i, j).as_single();
      if (!img || !images.insert(*img).second) {
        ok = false;
        v.note = m.ring().format_impl(i) + " does not send " + m.format(j) + " to a new basis element";
        break;
      }
    }
    if (ok) {
      StandardVerdict s;
      s.kind = StandardVerdict::Kind::standard;
      s.element = j;
      return s;
    }
  }
  if (all_stabilized) return v;
  StandardVerdict u;
  u.note = v.note.empty() ? "window contains elements without a visible stabilizer" : v.note;
  return u;
}

AxiomReport check_module_axioms(const BasedModule& m, int bound, const VerifyOptions& opts) {
  AxiomReport rep;
  const auto& ring = m.ring();
  const auto labels = ring.enumerate(bound);
  const auto basis = m.basis(bound);
  rep.labels = basis.size();
  if (basis.empty()) {
    rep.fail("basis", "empty basis window");
    return rep;
  }
  const Label e = ring.unit();
  const std::size_t nl = labels.size(), nb = basis.size();

  auto pairs = first_violation(nl * nb, opts.execution, [&](std::size_t t) -> std::optional<std::string> {
    const Label& i = labels[t / nb];
    const Label& j = basis[t % nb];
    ZCombo ij = m.act_impl(i, j);
    if (i == e && ij != ZCombo::single(j)) return "unit does not fix " + m.format(j);
    if (!ij.is_nonnegative()) return "negative coefficient in " + ring.format_impl(i) + " . " + m.format(j);
    const Label ci = ring.conj_impl(i);
    for (const auto& [j2, c] : ij) {
      if (!m.contains(j2)) return "action leaves the module at " + ring.format_impl(i) + " . " + m.format(j);
      if (m.act_impl(ci, j2).coefficient(j) != c)
        return "Frobenius symmetry fails for " + ring.format_impl(i) + ", " + m.format(j) + ", " + m.format(j2);
    }
    return std::nullopt;
  });
  if (pairs) rep.fail("unit/positivity/Frobenius", pairs->second);
  if (!rep.passed) return rep;

  const auto triples = index_triples({nl, nl, nb}, opts.triple_limit, opts.seed, &rep.sampled);
  rep.triples = triples.size();
  auto assoc = first_violation(triples.size(), opts.execution, [&](std::size_t t) -> std::optional<std::string> {
    const auto [ia, ib, ij] = triples[t];
    const Label& a = labels[ia];
    const Label& b = labels[ib];
    const Label& j = basis[ij];
    ZCombo left;
    for (const auto& [x, c] : m.act_impl(b, j)) left.add(m.act_impl(a, x), c);
    ZCombo right;
    for (const auto& [x, c] : ring.tensor_impl(a, b)) right.add(m.act_impl(x, j), c);
    if (left != right)
      return ring.format_impl(a) + " . (" + ring.format_impl(b) + " . " + m.format(j) + ") = " + m.format(left) +
             " but (a b) . j = " + m.format(right);
    return std::nullopt;
  });
  if (assoc) rep.fail("associativity", assoc->second);
  return rep;
}

namespace {

ZCombo truncate(const FusionRing& r, const ZCombo& c, int bound) {
  ZCombo out;
  for (const auto& [l, k] : c)
    if (r.degree_impl(l) <= bound) out.add(l, k);
  return out;
}

}  // namespace

AxiomReport check_pairing_equivariance(const BasedModule& m, int bound, const VerifyOptions& opts) {
  AxiomReport rep;
  const auto& ring = m.ring();
  const auto labels = ring.enumerate(bound);
  const auto basis = m.basis(bound);
  rep.labels = basis.size();
  const std::size_t limit = std::min<std::size_t>(opts.triple_limit, 1500);
  const auto triples = index_triples({labels.size(), basis.size(), basis.size()}, limit, opts.seed, &rep.sampled);
  rep.triples = triples.size();
  auto bad = first_violation(triples.size(), opts.execution, [&](std::size_t t) -> std::optional<std::string> {
    const auto [ii, i1, i2] = triples[t];
    const Label& i = labels[ii];
    const Label& j1 = basis[i1];
    const Label& j2 = basis[i2];
    const int keep = bound - ring.degree_impl(i);
    ZCombo lhs;
    for (const auto& [x, c] : m.act_impl(i, j1)) lhs.add(pairing(m, x, j2, bound), c);
    ZCombo rhs = ring.tensor(i, pairing(m, j1, j2, bound));
    lhs = truncate(ring, lhs, keep);
    rhs = truncate(ring, rhs, keep);
    if (lhs != rhs)
      return "<" + ring.format_impl(i) + " . " + m.format(j1) + ", " + m.format(j2) + "> = " + ring.format(lhs) +
             " but " + ring.format(rhs);
    return std::nullopt;
  });
  if (bad) rep.fail("equivariance", bad->second);
  return rep;
}

std::vector<std::vector<Label>> orbit_components(const BasedModule& m, int bound, int slack) {
  const auto nodes = m.basis(bound + slack);
  std::map<Label, std::size_t> index;
  for (std::size_t k = 0; k < nodes.size(); ++k) index.emplace(nodes[k], k);
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto gens = m.ring().generators();
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (const auto& g : gens)
      for (const auto& [y, c] : m.act_impl(g, nodes[k])) {
        auto it = index.find(y);
        if (it == index.end()) continue;
        auto a = find(k), b = find(it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::map<std::size_t, std::vector<Label>> groups;
  std::set<std::size_t> touches;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    auto root = find(k);
    groups[root].push_back(nodes[k]);
    if (m.degree(nodes[k]) <= bound) touches.insert(root);
  }
  std::vector<std::vector<Label>> out;
  for (auto& [root, members] : groups)
    if (touches.count(root)) out.push_back(std::move(members));
  return out;
}

std::string to_string(IsoResult::Kind k) {
  switch (k) {
    case IsoResult::Kind::yes:
      return "yes";
    case IsoResult::Kind::no:
      return "no";
    default:
      return "not_found";
  }
}

namespace {

struct IsoSearch {
  const BasedModule& a;
  const BasedModule& b;
  int bound;
  int expand;  // elements up to this degree are propagated
  std::vector<Label> gens;

  struct State {
    std::map<Label, Label> fwd, bwd;
    std::deque<Label> pending;
  };

  bool assign(State& s, const Label& x, const Label& y) const {
    auto f = s.fwd.find(x);
    if (f != s.fwd.end()) return f->second == y;
    if (s.bwd.count(y)) return false;
    if (a.degree(x) != b.degree(y)) return false;
    s.fwd.emplace(x, y);
    s.bwd.emplace(y, x);
    if (a.degree(x) <= expand) s.pending.push_back(x);
    return true;
  }

  // Depth-first propagation; returns a complete state or nothing.
  std::optional<State> run(State s) const {
    while (!s.pending.empty()) {
      Label x = s.pending.front();
      s.pending.pop_front();
      const Label y = s.fwd.at(x);
      for (const auto& g : gens) {
        ZCombo ax = a.act_impl(g, x);
        ZCombo by = b.act_impl(g, y);
        if (ax.size() != by.size()) return std::nullopt;
        std::vector<std::pair<Label, Integer>> open_a;
        std::map<Label, Integer> open_b;
        for (const auto& [l, c] : ax) {
          auto f = s.fwd.find(l);
          if (f != s.fwd.end()) {
            if (by.coefficient(f->second) != c) return std::nullopt;
          } else {
            open_a.emplace_back(l, c);
          }
        }
        for (const auto& [l, c] : by)
          if (!s.bwd.count(l)) open_b.emplace(l, c);
        if (open_a.size() != open_b.size()) return std::nullopt;
        if (open_a.empty()) continue;
        if (open_a.size() == 1) {
          const auto& [l, c] = open_a.front();
          if (open_b.begin()->second != c || !assign(s, l, open_b.begin()->first)) return std::nullopt;
          continue;
        }
        // Branch on the first unmatched term.
        const auto& [l, c] = open_a.front();
        s.pending.push_front(x);
        for (const auto& [cand, k] : open_b) {
          if (k != c) continue;
          State t = s;
          if (!assign(t, l, cand)) continue;
          if (auto done = run(std::move(t))) return done;
        }
        return std::nullopt;
      }
    }
    return s;
  }
};

std::vector<std::vector<Label>> stabilizer_profile(const BasedModule& m, const std::vector<Label>& basis, int bound) {
  std::vector<std::vector<Label>> out;
  for (const auto& j : basis) out.push_back(stabilizer(m, j, bound));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

IsoResult module_isomorphic(const BasedModule& a, const BasedModule& b, int bound) {
  IsoResult res;
  if (a.ring().name() != b.ring().name()) {
    res.kind = IsoResult::Kind::no;
    res.reason = "modules over different rings";
    return res;
  }
  const auto ba = a.basis(bound);
  const auto bb = b.basis(bound);
  const bool finite = a.is_finite() && b.is_finite();
  if (finite) {
    if (ba.size() != bb.size()) {
      res.kind = IsoResult::Kind::no;
      res.reason = "rank mismatch: " + std::to_string(ba.size()) + " vs " + std::to_string(bb.size());
      return res;
    }
    if (stabilizer_profile(a, ba, bound) != stabilizer_profile(b, bb, bound)) {
      res.kind = IsoResult::Kind::no;
      res.reason = "stabilizer multisets differ";
      return res;
    }
  }
  if (ba.empty() || bb.empty()) {
    res.reason = "empty window";
    return res;
  }
  const auto gens = a.ring().generators();
  int reach = 0;
  for (const auto& g : gens) reach = std::max(reach, a.ring().degree_impl(g));
  IsoSearch search{a, b, bound, bound + 2 * reach, gens};
  const Label root = ba.front();
  const auto root_stab = stabilizer(a, root, bound);
  for (const auto& cand : bb) {
    if (b.degree(cand) != a.degree(root) || stabilizer(b, cand, bound) != root_stab) continue;
    IsoSearch::State s;
    if (!search.assign(s, root, cand)) continue;
    auto done = search.run(std::move(s));
    if (!done) continue;
    bool covers = std::all_of(ba.begin(), ba.end(), [&](const Label& x) { return done->fwd.count(x); }) &&
                  std::all_of(bb.begin(), bb.end(), [&](const Label& y) { return done->bwd.count(y); });
    if (!covers) continue;
    res.kind = IsoResult::Kind::yes;
    for (const auto& x : ba) res.map.emplace(x, done->fwd.at(x));
    res.reason = "bijection on " + std::to_string(ba.size()) + " window elements commutes with all generators";
    return res;
  }
  if (finite) {
    res.kind = IsoResult::Kind::no;
    res.reason = "no bijection commutes with the generators";
  } else {
    res.reason = "no isomorphism sends the root " + a.format(root) + " into the window";
  }
  return res;
}

WreathScanResult wreath_submodule_scan(std::shared_ptr<const WreathRing> wreath, ModulePtr n, int bound) {
  WreathScanResult res;
  auto m = induce(n, wreath->ambient_ptr(), 0);
  auto r = restrict_to_wreath(m, wreath);
  const int slack = 4;
  const auto su = [](std::int64_t k) { return Label(1, {Label(k)}); };
  const auto nbasis = n->basis(std::max(0, bound - 1));
  res.input_rank = nbasis.size();
  const Label u2 = wreath->word({wreath->base().unit()});

  std::set<Label> u1j;
  for (const auto& j : nbasis) u1j.insert(Label(0, {Label(0, {su(1)}), j}));

  const auto comps = orbit_components(*r, bound, slack);
  res.components = comps.size();
  const std::vector<Label>* special = nullptr;
  for (const auto& comp : comps) {
    auto v = detect_standard(*r, bound, comp);
    if (v.kind == StandardVerdict::Kind::standard) {
      ++res.standard_components;
    } else if (v.kind == StandardVerdict::Kind::non_standard) {
      ++res.non_standard_components;
      special = &comp;
    } else {
      ++res.undecided_components;
    }
  }
  if (special) {
    std::set<Label> members(special->begin(), special->end());
    res.contains_all_u1j =
        std::all_of(u1j.begin(), u1j.end(), [&](const Label& x) { return members.count(x) != 0; });
    res.u2_stabilizes_all = std::all_of(special->begin(), special->end(),
                                        [&](const Label& x) { return r->act_impl(u2, x).contains(x); });
    res.witness = *u1j.begin();
    res.submodule = std::make_shared<SubModule>(r, std::vector<Label>{res.witness}, slack, "N_u1(" + n->name() + ")");
  }
  res.passed = res.non_standard_components == 1 && res.undecided_components == 0 && res.contains_all_u1j &&
               res.u2_stabilizes_all;
  return res;
}

}  // namespace fusion
