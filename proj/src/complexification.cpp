#include "fusion/complexification.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace fusion {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

// ---------------------------------------------------------------- even part

EvenPart::EvenPart(RingPtr ring, std::vector<Label> fundamental)
    : ring_(std::move(ring)), fundamental_(std::move(fundamental)) {
  if (fundamental_.empty()) throw ConstructionError("even part needs a fundamental representation");
  std::set<Label> given(fundamental_.begin(), fundamental_.end());
  for (const auto& u : fundamental_) {
    if (!ring_->contains(u)) throw DomainError("fundamental letter does not belong to " + ring_->name());
    if (!given.count(ring_->conj_impl(u)))
      throw DomainError("fundamental list is not closed under conjugation at " + ring_->format_impl(u));
    step_ = std::max(step_, 2 * ring_->degree_impl(u));
  }
}

const std::set<Label>& EvenPart::closure(int cap) const {
  if (cap <= cap_) return members_;
  std::set<Label> seen{ring_->unit()};
  std::deque<Label> queue{ring_->unit()};
  while (!queue.empty()) {
    Label x = queue.front();
    queue.pop_front();
    for (const auto& a : fundamental_)
      for (const auto& [y, c] : ring_->tensor_impl(x, a))
        for (const auto& b : fundamental_)
          for (const auto& [w, k] : ring_->tensor_impl(y, b))
            if (ring_->degree_impl(w) <= cap && seen.insert(w).second) queue.push_back(w);
  }
  members_ = std::move(seen);
  cap_ = cap;
  return members_;
}

bool EvenPart::contains(const Label& l) const {
  if (!ring_->contains(l)) throw DomainError("label does not belong to " + ring_->name());
  std::lock_guard<std::mutex> lock(mutex_);
  return closure(ring_->degree_impl(l) + step_).count(l) != 0;
}

bool EvenPart::is_everything(int bound) const {
  for (const auto& l : ring_->enumerate(bound))
    if (!contains(l)) return false;
  return true;
}

std::shared_ptr<const EvenPart> even_part(RingPtr ring, const Label& u) {
  if (!ring->contains(u)) throw DomainError("fundamental letter does not belong to " + ring->name());
  if (ring->conj_impl(u) != u) throw DomainError(ring->format_impl(u) + " is not self-conjugate");
  return std::make_shared<EvenPart>(std::move(ring), std::vector<Label>{u});
}

std::shared_ptr<const EvenPart> even_part(RingPtr ring, std::vector<Label> fundamental) {
  return std::make_shared<EvenPart>(std::move(ring), std::move(fundamental));
}

// ---------------------------------------------------------------- tilde ring

TildeRing::TildeRing(std::shared_ptr<const EvenPart> even, bool everything_even)
    : even_(std::move(even)), everything_even_(everything_even) {
  ambient_ = make_free_product({even_->ring_ptr(), make_circle()});
  tilde_u_ = FreeProductRing::concat(ambient_->letter(0, even_->fundamental().front()), z(1));
}

std::string TildeRing::name() const { return "tilde(" + even_->ring().name() + ")"; }

Label TildeRing::z(std::int64_t k) const { return ambient_->letter(1, Label(k)); }

bool tilde_membership(const TildeRing& tilde, const Label& word) {
  if (!tilde.ambient().contains(word)) return false;
  if (tilde.degenerate()) return true;
  const auto& l = word.letters;
  const bool any_g = std::any_of(l.begin(), l.end(), [](const Label& x) { return FreeProductRing::factor_of(x) == 0; });
  if (!any_g) return l.empty();
  std::size_t pos = 0;
  int eps = 1;
  if (FreeProductRing::factor_of(l[0]) == 1) {
    if (FreeProductRing::payload(l[0]).index != -1) return false;
    eps = -1;
    pos = 1;
  }
  while (true) {
    // l[pos] is a G letter because words alternate.
    if (tilde.even().contains(FreeProductRing::payload(l[pos]))) eps = -eps;
    ++pos;
    if (pos == l.size()) return eps == -1;
    const std::int64_t k = FreeProductRing::payload(l[pos]).index;
    if (pos + 1 == l.size()) return eps == 1 && k == 1;
    if (k != eps) return false;
    ++pos;
  }
}

bool TildeRing::contains(const Label& l) const { return tilde_membership(*this, l); }

std::vector<Label> TildeRing::generators() const {
  if (everything_even_) return ambient_->generators();
  std::vector<Label> out;
  for (const auto& b : even_->fundamental()) {
    Label bz = FreeProductRing::concat(ambient_->letter(0, b), z(1));
    out.push_back(bz);
    out.push_back(ambient_->conj_impl(bz));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Label TildeRing::parse_impl(std::string_view text) const {
  Label l = ambient_->parse_impl(text);
  if (!contains(l)) throw DomainError("'" + std::string(text) + "' is not a word of " + name());
  return l;
}

std::vector<Label> TildeRing::generate(int bound) const {
  std::vector<Label> out;
  for (auto& l : ambient_->enumerate(bound))
    if (contains(l)) out.push_back(std::move(l));
  return out;
}

std::shared_ptr<const TildeRing> make_tilde(RingPtr ring, const Label& u, int probe_bound) {
  auto even = even_part(std::move(ring), u);
  bool all = even->is_everything(probe_bound);
  return std::make_shared<TildeRing>(std::move(even), all);
}

std::shared_ptr<const TildeRing> make_tilde(RingPtr ring, std::vector<Label> fundamental, int probe_bound) {
  auto even = even_part(std::move(ring), std::move(fundamental));
  bool all = even->is_everything(probe_bound);
  return std::make_shared<TildeRing>(std::move(even), all);
}

// ---------------------------------------------------------------- divisibility

std::string to_string(DivisibilityClass::Status s) {
  switch (s) {
    case DivisibilityClass::Status::verified:
      return "verified";
    case DivisibilityClass::Status::failed:
      return "failed";
    default:
      return "indeterminate";
  }
}

DivisibilityReport divisibility_check(const std::function<bool(const Label&)>& sub_membership,
                                      const FusionRing& ambient, int bound) {
  DivisibilityReport rep;
  const auto labels = ambient.enumerate(bound);
  std::vector<Label> sub;
  for (const auto& l : labels)
    if (sub_membership(l)) sub.push_back(l);
  std::map<Label, std::size_t> index;
  for (std::size_t k = 0; k < labels.size(); ++k) index.emplace(labels[k], k);

  UnionFind uf(labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k)
    for (const auto& g : sub)
      for (const auto& [x, c] : ambient.tensor_impl(labels[k], g)) {
        auto it = index.find(x);
        if (it != index.end()) uf.unite(k, it->second);
      }

  int min_sub = bound + 1;
  for (const auto& g : sub)
    if (g != ambient.unit()) min_sub = std::min(min_sub, ambient.degree_impl(g));

  std::map<std::size_t, std::vector<Label>> groups;
  for (std::size_t k = 0; k < labels.size(); ++k) groups[uf.find(k)].push_back(labels[k]);
  for (auto& [root, members] : groups) {
    DivisibilityClass cls;
    cls.members = std::move(members);
    const int d = ambient.degree_impl(cls.members.front());
    bool found = false;
    for (const auto& beta : cls.members) {
      if (ambient.degree_impl(beta) != d) break;
      std::optional<Label> bad;
      for (const auto& g : sub) {
        auto prod = ambient.tensor_impl(beta, g);
        if (!prod.as_single()) {
          bad = g;
          break;
        }
      }
      if (!bad) {
        cls.representative = beta;
        cls.status = DivisibilityClass::Status::verified;
        found = true;
        break;
      }
      if (beta == cls.members.front()) {
        cls.representative = beta;
        cls.gamma = *bad;
      }
    }
    if (!found) {
      // A class whose lowest member cannot be linked to anything lower inside
      // the window may be a fragment of a class with smaller representatives.
      cls.status = 2 * d > bound || d + min_sub > bound ? DivisibilityClass::Status::indeterminate
                                                       : DivisibilityClass::Status::failed;
    }
    switch (cls.status) {
      case DivisibilityClass::Status::verified:
        ++rep.verified;
        break;
      case DivisibilityClass::Status::failed:
        ++rep.failed;
        break;
      default:
        ++rep.indeterminate;
    }
    rep.classes.push_back(std::move(cls));
  }
  return rep;
}

// ---------------------------------------------------------------- trichotomy

namespace {

TrichotomyResult trichotomy_at(const BasedModule& m, const EvenPart& even, int bound) {
  TrichotomyResult res;
  res.bound_used = bound;
  const auto& ring = m.ring();
  const auto& fund = even.fundamental();
  int step = 0;
  for (const auto& u : fund) step = std::max(step, ring.degree_impl(u));
  const auto nodes = m.basis(bound + 2 * step);
  std::map<Label, std::size_t> index;
  for (std::size_t k = 0; k < nodes.size(); ++k) index.emplace(nodes[k], k);

  // Two elements are even-equivalent iff they are linked by steps through
  // u (x) u, since every even label sits in a power of u (x) u.
  UnionFind uf(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (const auto& a : fund)
      for (const auto& [y, c] : m.act_impl(a, nodes[k]))
        for (const auto& b : fund)
          for (const auto& [w, d] : m.act_impl(b, y)) {
            auto it = index.find(w);
            if (it != index.end()) uf.unite(k, it->second);
          }
  std::map<std::size_t, std::vector<Label>> groups;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (m.degree(nodes[k]) <= bound) groups[uf.find(k)].push_back(nodes[k]);
  for (auto& [root, members] : groups) res.class_members.push_back(std::move(members));
  res.classes = res.class_members.size();

  std::vector<Label> odd;
  for (const auto& l : ring.enumerate(bound))
    if (!even.contains(l)) odd.push_back(l);
  for (const auto& j : m.basis(bound)) {
    for (const auto& b : odd)
      if (m.act_impl(b, j).contains(j)) {
        res.odd_stabilizer_found = true;
        res.witness_element = j;
        res.witness_label = b;
        break;
      }
    if (res.odd_stabilizer_found) break;
  }
  res.consistent = res.classes >= 1 && res.classes <= 2 && (res.odd_stabilizer_found == (res.classes == 1));
  return res;
}

}  // namespace

TrichotomyResult even_class_trichotomy(const BasedModule& m, const EvenPart& even, int bound) {
  if (m.ring().name() != even.ring().name()) throw DomainError("module and even part live over different rings");
  auto res = trichotomy_at(m, even, bound);
  if (res.consistent) return res;
  res = trichotomy_at(m, even, bound + 2);
  if (res.consistent) return res;
  throw std::logic_error("even-class trichotomy violated on " + m.name() + " at bound " +
                         std::to_string(res.bound_used) + ": " + std::to_string(res.classes) +
                         " classes, odd stabilizer " + (res.odd_stabilizer_found ? "found" : "not found"));
}

// ---------------------------------------------------------------- count

ComplexifiedCount complexified_submodule_count(ModulePtr n, std::shared_ptr<const TildeRing> tilde, int bound) {
  if (n->ring().name() != tilde->even().ring().name())
    throw DomainError(n->name() + " is not a module over " + tilde->even().ring().name());
  ComplexifiedCount res;
  auto m = induce(n, tilde->ambient_ptr(), 0);
  auto restricted = std::make_shared<RestrictedModule>(
      m, tilde, [](const Label& l) { return ZCombo::single(l); }, m->name() + " | " + tilde->name());
  const int slack = 2 * tilde->degree_impl(tilde->tilde_u());
  const auto roots = n->basis(bound);
  res.window_elements = roots.size();

  std::vector<std::set<Label>> classes;
  for (const auto& j : roots) {
    Label e(0, {Label(), j});
    if (std::any_of(classes.begin(), classes.end(), [&](const std::set<Label>& s) { return s.count(e) != 0; }))
      continue;
    auto p = std::make_shared<SubModule>(restricted, std::vector<Label>{e}, slack,
                                         "P(" + n->format(j) + ")");
    auto window = p->basis(bound);
    classes.emplace_back(window.begin(), window.end());
    res.modules.push_back(p);
    res.roots.push_back(j);
  }
  res.count = classes.size();
  if (res.count == 2) res.iso_between = module_isomorphic(*res.modules[0], *res.modules[1], bound);
  return res;
}

}  // namespace fusion
