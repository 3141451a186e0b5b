#include "fusion/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fusion/parallel.hpp"

namespace fusion {

std::vector<std::array<std::uint32_t, 3>> index_triples(std::array<std::size_t, 3> sizes, std::size_t limit,
                                                        std::uint32_t seed, bool* sampled) {
  std::vector<std::array<std::uint32_t, 3>> out;
  const std::size_t total = sizes[0] * sizes[1] * sizes[2];
  if (sampled) *sampled = total > limit;
  if (total == 0) return out;
  if (total <= limit) {
    out.reserve(total);
    for (std::uint32_t i = 0; i < sizes[0]; ++i)
      for (std::uint32_t j = 0; j < sizes[1]; ++j)
        for (std::uint32_t k = 0; k < sizes[2]; ++k) out.push_back({i, j, k});
    return out;
  }
  std::mt19937 rng(seed);
  std::array<std::uniform_int_distribution<std::uint32_t>, 3> pick{
      std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(sizes[0] - 1)),
      std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(sizes[1] - 1)),
      std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(sizes[2] - 1))};
  out.reserve(limit);
  for (std::size_t t = 0; t < limit; ++t) out.push_back({pick[0](rng), pick[1](rng), pick[2](rng)});
  return out;
}

namespace {

std::string pair_text(const FusionRing& r, const Label& a, const Label& b) {
  return "(" + r.format_impl(a) + ", " + r.format_impl(b) + ")";
}

}  // namespace

AxiomReport verify_based_ring_axioms(const FusionRing& ring, int bound, const VerifyOptions& opts) {
  AxiomReport rep;
  const auto labels = ring.enumerate(bound);
  rep.labels = labels.size();
  if (labels.empty()) {
    rep.fail("enumeration", "no labels within bound");
    return rep;
  }
  const Label e = ring.unit();
  if (!ring.contains(e) || ring.conj_impl(e) != e) rep.fail("unit", "conj(unit) != unit");
  if (ring.dim_impl(e) != 1) rep.fail("unit", "dim(unit) != 1");

  // Enumeration is monotone and respects the bound.
  {
    auto smaller = ring.enumerate(bound - 1);
    std::set<Label> have(labels.begin(), labels.end());
    for (const auto& l : smaller)
      if (!have.count(l)) rep.fail("enumeration", ring.format_impl(l) + " lost when the bound grows");
    for (const auto& l : labels)
      if (ring.degree_impl(l) > bound) rep.fail("enumeration", ring.format_impl(l) + " exceeds the bound");
  }

  const std::size_t n = labels.size();
  auto single = first_violation(n, opts.execution, [&](std::size_t i) -> std::optional<std::string> {
    const Label& a = labels[i];
    Label ca = ring.conj_impl(a);
    if (!ring.contains(ca) || ring.conj_impl(ca) != a) return "conj is not an involution at " + ring.format_impl(a);
    Integer d = ring.dim_impl(a);
    if (d <= 0) return "dim(" + ring.format_impl(a) + ") is not positive";
    if (ring.dim_impl(ca) != d) return "dim not conj-invariant at " + ring.format_impl(a);
    if (ring.tensor_impl(e, a) != ZCombo::single(a) || ring.tensor_impl(a, e) != ZCombo::single(a))
      return "unit does not act trivially on " + ring.format_impl(a);
    return std::nullopt;
  });
  if (single) rep.fail("involution/dimension", single->second);

  // Pairwise checks; the products are reused for associativity.
  std::vector<ZCombo> prod(n * n);
  auto pairs = first_violation(n * n, opts.execution, [&](std::size_t t) -> std::optional<std::string> {
    const Label& a = labels[t / n];
    const Label& b = labels[t % n];
    ZCombo ab = ring.tensor_impl(a, b);
    prod[t] = ab;
    if (!ab.is_nonnegative()) return "negative structure constant in " + pair_text(ring, a, b);
    Integer dsum = 0;
    for (const auto& [c, k] : ab) {
      if (!ring.contains(c)) return "non-canonical label in " + pair_text(ring, a, b);
      dsum += k * ring.dim_impl(c);
    }
    if (dsum != ring.dim_impl(a) * ring.dim_impl(b)) return "dim not multiplicative on " + pair_text(ring, a, b);
    ZCombo conj_ab;
    for (const auto& [c, k] : ab) conj_ab.add(ring.conj_impl(c), k);
    if (conj_ab != ring.tensor_impl(ring.conj_impl(b), ring.conj_impl(a)))
      return "conj not anti-multiplicative on " + pair_text(ring, a, b);
    Integer frob = ring.tensor_impl(ring.conj_impl(a), b).coefficient(e);
    if (frob != (a == b ? 1 : 0)) return "Frobenius unit condition fails on " + pair_text(ring, a, b);
    return std::nullopt;
  });
  if (pairs) rep.fail("pairwise", pairs->second);
  if (!rep.passed) return rep;

  const auto triples = index_triples({n, n, n}, opts.triple_limit, opts.seed, &rep.sampled);
  rep.triples = triples.size();
  auto assoc = first_violation(triples.size(), opts.execution, [&](std::size_t t) -> std::optional<std::string> {
    const auto [i, j, k] = triples[t];
    const Label& a = labels[i];
    const Label& b = labels[j];
    const Label& c = labels[k];
    ZCombo left, right;
    for (const auto& [x, m] : prod[i * n + j]) left.add(ring.tensor_impl(x, c), m);
    for (const auto& [x, m] : prod[j * n + k]) right.add(ring.tensor_impl(a, x), m);
    if (left != right)
      return "(" + ring.format_impl(a) + ", " + ring.format_impl(b) + ", " + ring.format_impl(c) +
             "): " + ring.format(left) + " vs " + ring.format(right);
    return std::nullopt;
  });
  if (assoc) rep.fail("associativity", assoc->second);
  return rep;
}

AxiomReport verify_lambda(const WreathRing& ring, int bound, const VerifyOptions& opts) {
  AxiomReport rep;
  const auto words = ring.enumerate(bound);
  rep.labels = words.size();
  const auto& amb = ring.ambient();
  std::map<Label, Label> image;
  for (const auto& w : words) {
    Label l = ring.lambda(w);
    if (!amb.contains(l)) rep.fail("canonical", ring.format_impl(w) + " maps outside G * SU_q(2)");
    auto [it, fresh] = image.emplace(l, w);
    if (!fresh) rep.fail("injective", ring.format_impl(w) + " and " + ring.format_impl(it->second) + " collide");
  }
  if (ring.lambda(ring.unit()) != amb.unit()) rep.fail("unit", "Lambda(1) is not the unit");
  const std::size_t n = words.size();
  auto bad = first_violation(n * n, opts.execution, [&](std::size_t t) -> std::optional<std::string> {
    const Label& a = words[t / n];
    const Label& b = words[t % n];
    ZCombo lhs = ring.lambda(ring.tensor_impl(a, b));
    ZCombo rhs = amb.tensor_impl(ring.lambda(a), ring.lambda(b));
    if (lhs != rhs)
      return "Lambda" + pair_text(ring, a, b) + ": " + amb.format(lhs) + " vs " + amb.format(rhs);
    if (ring.dim_impl(a) * ring.dim_impl(b) != [&] {
          Integer s = 0;
          for (const auto& [c, k] : ring.tensor_impl(a, b)) s += k * ring.dim_impl(c);
          return s;
        }())
      return "dim not multiplicative on " + pair_text(ring, a, b);
    return std::nullopt;
  });
  rep.triples = n * n;
  if (bad) rep.fail("homomorphism", bad->second);
  return rep;
}

}  // namespace fusion
