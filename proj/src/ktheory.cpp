#include "fusion/ktheory.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fusion/parallel.hpp"

namespace fusion {

namespace {

constexpr std::size_t kGroupFactor = 0;
constexpr std::size_t kSuFactor = 1;

const ChebyshevRing* as_orthogonal(const FusionRing& r) {
  auto* c = dynamic_cast<const ChebyshevRing*>(&r);
  return (c && c->symbol() == 'v') ? c : nullptr;
}

bool ends_in_group(const Label& word) {
  return !word.letters.empty() && FreeProductRing::factor_of(word.letters.back()) == kGroupFactor;
}

Label drop_last(const Label& word) {
  Label w = word;
  w.letters.pop_back();
  return w;
}

}  // namespace

// ---------------------------------------------------------------- OrbitSpace

OrbitSpace::OrbitSpace(RingPtr group) {
  if (!group) throw ConstructionError("orbit space needs a group");
  if (auto* w = dynamic_cast<const WreathRing*>(group.get())) group = w->base_ptr();
  group_ = std::move(group);
  ambient_ = make_free_product({group_, make_su2()});
}

Label OrbitSpace::word(const Label& ambient_word) const {
  if (!ambient_->contains(ambient_word)) throw DomainError("not a word of " + ambient_->name());
  if (ambient_word.letters.empty()) return empty();
  if (FreeProductRing::factor_of(ambient_word.letters.front()) != kGroupFactor)
    throw DomainError("orbit words start with a letter of " + group_->name());
  return Label(2, ambient_word.letters);
}

bool OrbitSpace::contains(const Label& x) const {
  if (x == empty() || x == special()) return true;
  if (x.index != 2 || x.letters.empty()) return false;
  Label w = ambient_word(x);
  return ambient_->contains(w) && FreeProductRing::factor_of(w.letters.front()) == kGroupFactor;
}

int OrbitSpace::degree(const Label& x) const {
  if (!contains(x)) throw DomainError("not an orbit label");
  if (x.index != 2) return 0;
  return ambient_->degree(ambient_word(x));
}

std::string OrbitSpace::format(const Label& x) const {
  if (x == empty()) return "()";
  if (x == special()) return "U";
  if (!contains(x)) throw DomainError("not an orbit label");
  return "(" + ambient_->format(ambient_word(x)) + ")";
}

std::string OrbitSpace::format(const ZCombo& c) const {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [l, k] : c) {
    if (!out.empty()) out += k < 0 ? " - " : " + ";
    else if (k < 0) out += "-";
    Integer a = abs(k);
    if (a != 1) out += a.get_str() + " ";
    out += format(l);
  }
  return out;
}

Label OrbitSpace::parse(std::string_view text) const {
  std::string t = trim(text);
  if (t == "()" || t == "1") return empty();
  if (t == "U") return special();
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = trim(t.substr(1, t.size() - 2));
  return word(ambient_->parse(t));
}

std::vector<Label> OrbitSpace::basis(int bound) const {
  std::vector<Label> out{empty(), special()};
  for (const auto& w : ambient_->enumerate(bound))
    if (!w.letters.empty() && FreeProductRing::factor_of(w.letters.front()) == kGroupFactor)
      out.emplace_back(2, w.letters);
  return out;
}

ZCombo OrbitSpace::partial_u(const Label& x) const {
  if (x == empty()) return ZCombo::single(special(), 2);
  if (x == special()) return ZCombo::single(empty(), 2);
  if (!contains(x)) throw DomainError("not an orbit label");
  Label w = ambient_word(x);
  ZCombo out;
  if (ends_in_group(w)) {
    out.add(Label(2, ambient_->concat(w, ambient_->letter(kSuFactor, Label(1))).letters), 1);
    return out;
  }
  const auto k = FreeProductRing::payload(w.letters.back()).index;
  Label stem = drop_last(w);
  out.add(Label(2, ambient_->concat(stem, ambient_->letter(kSuFactor, Label(k + 1))).letters), 1);
  if (k == 1)
    out.add(Label(2, stem.letters), 1);
  else
    out.add(Label(2, ambient_->concat(stem, ambient_->letter(kSuFactor, Label(k - 1))).letters), 1);
  return out;
}

ZCombo OrbitSpace::partial(const Label& gamma, const Label& x) const {
  if (!group_->contains(gamma)) throw DomainError("not a label of " + group_->name());
  if (x == special()) return ZCombo::single(special(), group_->dim(gamma));
  if (!contains(x)) throw DomainError("not an orbit label");
  Label w = ambient_word(x);
  ZCombo out;
  if (!ends_in_group(w)) {
    out.add(word(ambient_->concat(w, ambient_->letter(kGroupFactor, gamma))), 1);
    return out;
  }
  const Label& last = FreeProductRing::payload(w.letters.back());
  Label stem = drop_last(w);
  for (const auto& [c, m] : group_->tensor(last, gamma)) {
    if (c == group_->unit())
      out.add(stem.letters.empty() ? empty() : Label(2, stem.letters), m);
    else
      out.add(Label(2, ambient_->concat(stem, ambient_->letter(kGroupFactor, c)).letters), m);
  }
  return out;
}

// ---------------------------------------------------------------- summands

std::vector<std::pair<Label, Integer>> resolution_letters(const FusionRing& group) {
  std::vector<std::pair<Label, Integer>> out;
  if (auto* o = as_orthogonal(group)) {
    out.emplace_back(Label(1), o->fundamental_dim());
  } else if (auto* u = dynamic_cast<const UnitaryRing*>(&group)) {
    out.emplace_back(u->v(), u->fundamental_dim());
    out.emplace_back(u->vbar(), u->fundamental_dim());
  } else if (auto* f = dynamic_cast<const FreeGroupRing*>(&group)) {
    for (int g = 0; g < f->rank(); ++g) out.emplace_back(f->generator(g), 1);
  } else if (auto* a = dynamic_cast<const FreeAbelianRing*>(&group)) {
    for (const auto& g : a->generators())
      if (g.letters.size() && std::count_if(g.letters.begin(), g.letters.end(),
                                            [](const Label& e) { return e.index == 1; }) == 1)
        out.emplace_back(g, 1);
  } else if (auto* p = dynamic_cast<const FreeProductRing*>(&group)) {
    for (std::size_t f = 0; f < p->factors().size(); ++f) {
      const auto& factor = *p->factors()[f];
      if (!as_orthogonal(factor) && !dynamic_cast<const UnitaryRing*>(&factor) &&
          !dynamic_cast<const FreeGroupRing*>(&factor))
        throw ConstructionError("free product factor " + factor.name() +
                                " has no length-one resolution; use O+, U+ or free groups");
      for (const auto& [l, d] : resolution_letters(factor)) out.emplace_back(p->letter(f, l), d);
    }
  } else {
    throw ConstructionError(group.name() +
                            " has no length-one resolution; K-theory needs G built from O+, U+ or free groups");
  }
  return out;
}

std::vector<DeltaSummand> delta_summands(const OrbitSpace& space) {
  const auto& g = space.group();
  if (dynamic_cast<const FreeAbelianRing*>(&g))
    throw ConstructionError(g.name() + " is not free: the length-one resolution is not exact");
  auto letters = resolution_letters(g);
  std::vector<DeltaSummand> out;
  out.push_back({"u", "e", std::nullopt, 2});
  for (std::size_t i = 0; i < letters.size(); ++i) {
    std::string copy = letters.size() == 1 ? "f" : "f" + std::to_string(i + 1);
    out.push_back({g.format(letters[i].first), copy, letters[i].first, letters[i].second});
  }
  return out;
}

ZCombo apply_summand(const OrbitSpace& space, const DeltaSummand& s, const Label& x) {
  ZCombo out = s.gamma ? space.partial(*s.gamma, x) : space.partial_u(x);
  out.add(x, -s.dim);
  return out;
}

TruncatedDelta assemble_delta(const OrbitSpace& space, int radius, Execution ex) {
  if (radius < 1) throw ConstructionError("radius must be at least 1");
  TruncatedDelta t;
  t.radius = radius;
  t.summands = delta_summands(space);
  t.codomain = space.basis(radius + 1);
  std::map<Label, std::size_t> row;
  for (std::size_t i = 0; i < t.codomain.size(); ++i) row.emplace(t.codomain[i], i);
  std::vector<int> degrees(t.codomain.size());
  for (std::size_t i = 0; i < t.codomain.size(); ++i) degrees[i] = space.degree(t.codomain[i]);
  for (const auto& l : t.codomain)
    if (space.degree(l) <= radius) t.domain.push_back(l);

  const std::size_t n = t.domain.size();
  const std::size_t m = t.summands.size() * n;
  t.matrix.rows = t.codomain.size();
  t.matrix.cols.assign(m, {});
  t.column_reach.assign(m, 0);
  parallel_for(m, ex, [&](std::size_t c) {
    const auto& s = t.summands[c / n];
    const Label& x = t.domain[c % n];
    const int dx = space.degree(x);
    ZCombo img = apply_summand(space, s, x);
    int reach = 0;
    for (const auto& [l, k] : img) {
      auto it = row.find(l);
      if (it == row.end()) throw std::logic_error("boundary image leaves the truncation window");
      const int d = degrees[it->second];
      if (d > dx + 1 + (s.gamma ? space.group().letter_weight(*s.gamma) - 1 : 0))
        throw std::logic_error("boundary raises degree by more than one letter");
      t.matrix.cols[c].emplace(it->second, k);
      reach = std::max(reach, d);
    }
    t.column_reach[c] = reach;
  });
  return t;
}

std::string format_domain(const OrbitSpace& space, const std::vector<DeltaSummand>& summands, const ZCombo& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [l, k] : v) {
    if (!out.empty()) out += k < 0 ? " - " : " + ";
    else if (k < 0) out += "-";
    Integer a = abs(k);
    if (a != 1) out += a.get_str() + " ";
    out += summands.at(l.index).copy + "[" + space.format(l.letters.front()) + "]";
  }
  return out;
}

// ---------------------------------------------------------------- rewriting

Integer sequence_a(int k) {
  if (k < 0) throw DomainError("sequence index must be non-negative");
  return k + 2;
}

Integer sequence_b(int n, int k) {
  if (k < 0) throw DomainError("sequence index must be non-negative");
  Integer prev = n, cur = Integer(n) * n - 1;
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    Integer next = Integer(n) * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

bool rewriting_supported(const FusionRing& group) {
  if (as_orthogonal(group) || dynamic_cast<const FreeGroupRing*>(&group)) return true;
  if (auto* p = dynamic_cast<const FreeProductRing*>(&group)) {
    for (const auto& f : p->factors())
      if (!as_orthogonal(*f) && !dynamic_cast<const FreeGroupRing*>(f.get())) return false;
    return true;
  }
  return false;
}

namespace {

// Coefficient of stripping the final letter of a G-label, and the stripped label.
std::pair<Integer, Label> strip_group_letter(const FusionRing& g, const Label& l) {
  if (auto* o = as_orthogonal(g)) return {sequence_b(o->fundamental_dim(), static_cast<int>(l.index) - 1), Label(0)};
  if (dynamic_cast<const FreeGroupRing*>(&g)) {
    Label rest = l;
    rest.letters.pop_back();
    return {Integer(1), rest};
  }
  if (auto* p = dynamic_cast<const FreeProductRing*>(&g)) {
    const Label& last = l.letters.back();
    const auto& factor = *p->factors()[FreeProductRing::factor_of(last)];
    auto [c, inner] = strip_group_letter(factor, FreeProductRing::payload(last));
    Label rest = l;
    rest.letters.pop_back();
    if (inner != factor.unit()) rest.letters.emplace_back(last.index, std::vector<Label>{inner});
    return {c, rest};
  }
  throw ConstructionError("no rewriting rule for " + g.name());
}

}  // namespace

std::pair<Integer, Integer> rewrite(const OrbitSpace& space, const Label& x) {
  if (x == OrbitSpace::empty()) return {1, 0};
  if (x == OrbitSpace::special()) return {0, 1};
  if (!rewriting_supported(space.group())) throw ConstructionError("no rewriting rule for " + space.group().name());
  if (!space.contains(x)) throw DomainError("not an orbit label");
  const auto& g = space.group();
  Label w = OrbitSpace::ambient_word(x);
  Integer coef = 1;
  while (!w.letters.empty()) {
    const Label last = w.letters.back();
    w.letters.pop_back();
    if (FreeProductRing::factor_of(last) == kSuFactor) {
      coef *= sequence_a(static_cast<int>(FreeProductRing::payload(last).index) - 1);
    } else {
      auto [c, rest] = strip_group_letter(g, FreeProductRing::payload(last));
      coef *= c;
      if (rest != g.unit()) w.letters.emplace_back(last.index, std::vector<Label>{rest});
    }
  }
  return {coef, 0};
}

RewritingResult rewriting_cokernel(const OrbitSpace& space, int radius) {
  auto summands = delta_summands(space);
  auto domain = space.basis(radius);
  std::set<std::vector<Integer>> rels;
  for (const auto& s : summands) {
    for (const auto& x : domain) {
      Integer c0 = 0, c1 = 0;
      for (const auto& [l, k] : apply_summand(space, s, x)) {
        auto [a, b] = rewrite(space, l);
        c0 += k * a;
        c1 += k * b;
      }
      if (c0 != 0 || c1 != 0) rels.insert({c0, c1});
    }
  }
  RewritingResult r;
  r.relations.assign(rels.begin(), rels.end());
  IntMatrix m(2, r.relations.size());
  for (std::size_t j = 0; j < r.relations.size(); ++j) {
    m(0, j) = r.relations[j][0];
    m(1, j) = r.relations[j][1];
  }
  r.cokernel = r.relations.empty() ? CokernelInvariants{2, {}} : cokernel_invariants(m);
  return r;
}

// ---------------------------------------------------------------- driver

KTheoryResult compute_ktheory(const OrbitSpace& space, const std::vector<int>& radii, Execution ex) {
  if (radii.size() < 3) throw ConstructionError("stability needs at least three radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 1) throw ConstructionError("radii must be positive");
    if (i && radii[i] <= radii[i - 1]) throw ConstructionError("radii must be strictly increasing");
  }
  KTheoryResult res;
  res.group = space.group().name();
  res.radii = radii;
  const bool rewriting = rewriting_supported(space.group());
  res.method = rewriting ? "both" : "truncated_snf";

  for (int r : radii) {
    TruncatedDelta t = assemble_delta(space, r, ex);
    RadiusTrace tr;
    tr.radius = r;
    tr.rows = t.matrix.rows;
    tr.cols = t.matrix.cols.size();

    SparseReduction full = sparse_reduce(t.matrix, true);
    tr.k1_rank = full.kernel.size();

    SparseMatrix inner;
    inner.rows = t.domain.size();
    for (std::size_t c = 0; c < t.matrix.cols.size(); ++c)
      if (t.column_reach[c] <= r) inner.cols.push_back(t.matrix.cols[c]);
    tr.k0_snf = sparse_reduce(inner, false).cokernel;

    if (rewriting) {
      auto rw = rewriting_cokernel(space, r);
      tr.k0_rewriting = rw.cokernel;
      if (r == radii.back()) res.residual_relations = rw.relations;
    }
    if (r == radii.back()) {
      const std::size_t n = t.domain.size();
      for (const auto& v : full.kernel) {
        ZCombo z;
        for (const auto& [c, k] : v) z.add(Label(static_cast<std::int64_t>(c / n), {t.domain[c % n]}), k);
        res.kernel_text.push_back(format_domain(space, t.summands, z));
        res.kernel_basis.push_back(std::move(z));
      }
    }
    res.trace.push_back(std::move(tr));
  }

  const auto& last = res.trace.back();
  res.k0 = last.k0_snf;
  res.k1_rank = last.k1_rank;
  bool agree = true;
  for (std::size_t i = res.trace.size() - 3; i < res.trace.size(); ++i) {
    const auto& t = res.trace[i];
    if (!(t.k0_snf == last.k0_snf) || t.k1_rank != last.k1_rank) agree = false;
    if (t.k0_rewriting && !(*t.k0_rewriting == t.k0_snf)) agree = false;
  }
  res.stable = agree;
  if (!agree) {
    std::ostringstream os;
    os << "unstable:";
    for (const auto& t : res.trace) {
      os << " R=" << t.radius << " K0=" << to_string(t.k0_snf);
      if (t.k0_rewriting) os << " (rewriting " << to_string(*t.k0_rewriting) << ")";
      os << " K1=Z^" << t.k1_rank << ";";
    }
    res.note = os.str();
  } else {
    res.note = rewriting ? "truncated SNF and rewriting agree on the last three radii"
                         : "truncated SNF stable on the last three radii; no rewriting rule for this G";
  }
  return res;
}

// ---------------------------------------------------------------- lattices

bool same_lattice(const std::vector<ZCombo>& a, const std::vector<ZCombo>& b) {
  std::map<Label, std::size_t> coord;
  for (const auto* fam : {&a, &b})
    for (const auto& v : *fam)
      for (const auto& [l, k] : v) coord.emplace(l, 0);
  std::size_t i = 0;
  for (auto& [l, idx] : coord) idx = i++;
  auto hnf = [&](const std::vector<ZCombo>& fam) {
    IntMatrix m(fam.size(), coord.size());
    for (std::size_t r = 0; r < fam.size(); ++r)
      for (const auto& [l, k] : fam[r]) m(r, coord.at(l)) = k;
    IntMatrix h = hermite_normal_form(m);
    std::vector<std::vector<Integer>> rows;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      std::vector<Integer> row(h.cols());
      bool zero = true;
      for (std::size_t c = 0; c < h.cols(); ++c) {
        row[c] = h(r, c);
        if (row[c] != 0) zero = false;
      }
      if (!zero) rows.push_back(std::move(row));
    }
    return rows;
  };
  return hnf(a) == hnf(b);
}

ImageSequence image_sequence(const OrbitSpace& space, const DeltaSummand& s, const Label& w, int count) {
  if (count < 1) throw DomainError("count must be positive");
  if (!space.contains(w) || w == OrbitSpace::special()) throw DomainError("chain base must be an orbit word");
  const auto& amb = space.ambient();
  Label base = OrbitSpace::ambient_word(w);
  std::vector<Label> chain;
  for (int l = 0; l <= count; ++l) {
    if (l == 0) {
      chain.push_back(w);
      continue;
    }
    if (!s.gamma) {
      if (!ends_in_group(base)) throw DomainError("the u chain needs a word ending in G");
      chain.push_back(Label(2, amb.concat(base, amb.letter(kSuFactor, Label(l))).letters));
    } else {
      if (!as_orthogonal(space.group()) || *s.gamma != Label(1))
        throw DomainError("gamma chains are defined for the fundamental of O+");
      if (ends_in_group(base)) throw DomainError("the gamma chain needs a word not ending in G");
      chain.push_back(Label(2, amb.concat(base, amb.letter(kGroupFactor, Label(l))).letters));
    }
  }
  // Coordinates ordered x_count, ..., x_1, x_0 so the HNF pivots sit on the chain tops.
  std::map<Label, std::size_t> coord;
  for (int l = 0; l <= count; ++l) coord.emplace(chain[l], static_cast<std::size_t>(count - l));
  IntMatrix m(count, count + 1);
  for (int l = 0; l < count; ++l)
    for (const auto& [lab, k] : apply_summand(space, s, chain[l])) {
      auto it = coord.find(lab);
      if (it == coord.end()) throw std::logic_error("image leaves the chain");
      m(l, it->second) = k;
    }
  IntMatrix h = hermite_normal_form(m);
  ImageSequence out;
  bool ok = true;
  for (int r = 0; r < count; ++r) {
    if (h(r, r) != 1) ok = false;
    for (int c = 0; c < count; ++c)
      if (c != r && h(r, c) != 0) ok = false;
  }
  out.free_of_rank = ok;
  if (!ok) return out;
  // Row r has pivot at x_{count - r}; the coefficient for x_{k+1} is -entry at x_0.
  out.coefficients.resize(count);
  for (int r = 0; r < count; ++r) out.coefficients[count - 1 - r] = -h(r, count);
  return out;
}

// ---------------------------------------------------------------- exactness

ZCombo resolution_map(const FreeProductRing& ambient, const Label& gamma, const ZCombo& x) {
  ZCombo out = ambient.tensor(x, gamma);
  out.add(x, -ambient.dim(gamma));
  return out;
}

ExactnessReport exactness_check(RingPtr group, int radius, Execution ex) {
  if (radius < 2) throw ConstructionError("exactness needs radius at least 2");
  if (auto* w = dynamic_cast<const WreathRing*>(group.get())) group = w->base_ptr();
  auto ambient = make_free_product({group, make_su2()});
  std::vector<std::pair<Label, std::string>> gammas;
  gammas.emplace_back(ambient->letter(kSuFactor, Label(1)), "u");
  for (const auto& [l, d] : resolution_letters(*group)) {
    Label c = group->conj(l);
    gammas.emplace_back(ambient->letter(kGroupFactor, c), group->format(c));
  }

  ExactnessReport rep;
  rep.radius = radius;
  auto codomain = ambient->enumerate(radius + 1);
  std::map<Label, std::size_t> row;
  for (std::size_t i = 0; i < codomain.size(); ++i) row.emplace(codomain[i], i);
  std::vector<Label> domain;
  for (const auto& l : codomain)
    if (ambient->degree(l) <= radius) domain.push_back(l);

  const std::size_t n = domain.size();
  SparseMatrix mat;
  mat.rows = codomain.size();
  mat.cols.assign(gammas.size() * n, {});
  std::vector<char> augmented(mat.cols.size(), 1);
  parallel_for(mat.cols.size(), ex, [&](std::size_t c) {
    ZCombo img = resolution_map(*ambient, gammas[c / n].first, ZCombo::single(domain[c % n]));
    Integer eps = 0;
    for (const auto& [l, k] : img) {
      auto it = row.find(l);
      if (it == row.end()) throw std::logic_error("resolution image leaves the truncation window");
      mat.cols[c].emplace(it->second, k);
      eps += k * ambient->dim(l);
    }
    if (eps != 0) augmented[c] = 0;
  });
  rep.rows = mat.rows;
  rep.cols = mat.cols.size();
  rep.augmentation_kills_image = std::all_of(augmented.begin(), augmented.end(), [](char c) { return c != 0; });

  SparseReduction red = sparse_reduce(mat, true);
  rep.injective = red.kernel.empty();
  if (!rep.injective) {
    std::string w;
    for (const auto& [c, k] : red.kernel.front()) {
      if (!w.empty()) w += k < 0 ? " - " : " + ";
      else if (k < 0) w += "-";
      Integer a = abs(k);
      if (a != 1) w += a.get_str() + " ";
      w += "d_" + gammas[c / n].second + "[" + ambient->format(domain[c % n]) + "]";
    }
    rep.witness = "kernel element " + w;
  }

  std::vector<SparseVector> targets;
  std::vector<Label> target_words;
  const std::size_t unit_row = row.at(ambient->unit());
  for (const auto& w : domain) {
    if (w == ambient->unit() || ambient->degree(w) > radius - 1) continue;
    SparseVector v;
    v[row.at(w)] += 1;
    v[unit_row] -= ambient->dim(w);
    targets.push_back(std::move(v));
    target_words.push_back(w);
  }
  auto in = sparse_in_lattice(mat, targets);
  rep.interior_checked = targets.size();
  rep.interior_exact = true;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (!in[i]) {
      rep.interior_exact = false;
      if (rep.witness.empty()) rep.witness = "x_w not in the image for w = " + ambient->format(target_words[i]);
      break;
    }
  rep.passed = rep.augmentation_kills_image && rep.injective && rep.interior_exact;
  return rep;
}

}  // namespace fusion
