#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fusion/rings.hpp"
#include "fusion/smith.hpp"
#include "fusion/verify.hpp"

namespace fusion {

/// Orbit classes of Irr(G * SU_q(2)) under the wreath subring: the trivial
/// class, the special class U and alternating words starting in Irr(G).
/// Labels: Label(0) is the trivial class, Label(1) is U and Label(2, letters)
/// is a word whose letters are those of the ambient free product.
class OrbitSpace {
 public:
  explicit OrbitSpace(RingPtr group);

  const FusionRing& group() const { return *group_; }
  const RingPtr& group_ptr() const { return group_; }
  /// G * SU_q(2), factor 0 = G.
  const FreeProductRing& ambient() const { return *ambient_; }
  const std::shared_ptr<const FreeProductRing>& ambient_ptr() const { return ambient_; }

  static Label empty() { return Label(0); }
  static Label special() { return Label(1); }
  /// Orbit word of an ambient word; the empty ambient word gives the trivial class.
  Label word(const Label& ambient_word) const;
  /// The ambient word underlying an orbit word (empty for the two special classes).
  static Label ambient_word(const Label& x) { return Label(0, x.letters); }

  bool contains(const Label& x) const;
  int degree(const Label& x) const;
  std::string format(const Label& x) const;
  std::string format(const ZCombo& c) const;
  /// "()" or "1" is the trivial class, "U" the special class, anything else an ambient word.
  Label parse(std::string_view text) const;

  /// Trivial class, U, then words by (degree, label).
  std::vector<Label> basis(int bound) const;

  /// Descent of tensoring by the fundamental u of SU_q(2).
  ZCombo partial_u(const Label& x) const;
  /// Descent of tensoring by the G-label gamma, with f_U -> dim(gamma) f_U.
  ZCombo partial(const Label& gamma, const Label& x) const;

 private:
  RingPtr group_;
  std::shared_ptr<const FreeProductRing> ambient_;
};

/// One summand d = partial_gamma - dim(gamma) id of the boundary map; gamma
/// is empty for the SU_q(2) summand.
struct DeltaSummand {
  std::string name;  // "u", or the formatted G-label
  std::string copy;  // basis name of this copy of the orbit space: e, f, f2, ...
  std::optional<Label> gamma;
  Integer dim;
};

/// Letters gamma with the dimensions used by the resolution of G: the
/// fundamental of each O+ factor, v and vb for each U+ factor and the
/// generators of a free group. Throws ConstructionError otherwise.
std::vector<std::pair<Label, Integer>> resolution_letters(const FusionRing& group);

/// The u summand first, then one summand per resolution letter.
std::vector<DeltaSummand> delta_summands(const OrbitSpace& space);

/// (partial - dim id)(x) for one summand.
ZCombo apply_summand(const OrbitSpace& space, const DeltaSummand& s, const Label& x);

/// Truncated stacked boundary map: domain = copies of the orbit basis of
/// degree <= radius, codomain = orbit basis of degree <= radius + 1.
struct TruncatedDelta {
  int radius = 0;
  std::vector<DeltaSummand> summands;
  std::vector<Label> domain;    // orbit basis of degree <= radius (one copy)
  std::vector<Label> codomain;  // orbit basis of degree <= radius + 1
  SparseMatrix matrix;          // column s * |domain| + i is summand s at domain[i]
  std::vector<int> column_reach;  // highest codomain degree hit by each column
};
TruncatedDelta assemble_delta(const OrbitSpace& space, int radius, Execution ex = Execution::parallel);

/// Domain elements are Label(s, {x}) for summand s and orbit label x.
std::string format_domain(const OrbitSpace& space, const std::vector<DeltaSummand>& summands, const ZCombo& v);

struct RadiusTrace {
  int radius = 0;
  std::size_t rows = 0, cols = 0;
  std::size_t k1_rank = 0;
  CokernelInvariants k0_snf;
  std::optional<CokernelInvariants> k0_rewriting;
};

struct KTheoryResult {
  std::string group;
  std::vector<int> radii;
  CokernelInvariants k0;
  std::size_t k1_rank = 0;
  std::string method;  // "both" or "truncated_snf"
  bool stable = false;
  std::string note;
  std::vector<RadiusTrace> trace;
  std::vector<ZCombo> kernel_basis;  // at the last radius, domain labels
  std::vector<std::string> kernel_text;
  std::vector<std::vector<Integer>> residual_relations;  // rewriting presentation on (trivial, U)
};

/// Whether the closed-form rewriting applies (O+ factors and free groups).
bool rewriting_supported(const FusionRing& group);

/// Image of an orbit label in the residual presentation on the trivial class
/// and U: p(x) = c0 p(trivial) + c1 p(U).
std::pair<Integer, Integer> rewrite(const OrbitSpace& space, const Label& x);

struct RewritingResult {
  CokernelInvariants cokernel;
  std::vector<std::vector<Integer>> relations;  // distinct non-zero relation columns
};
/// Pushes every column of degree <= radius through the rewriting map and
/// reduces the resulting presentation on two generators.
RewritingResult rewriting_cokernel(const OrbitSpace& space, int radius);

/// Runs every radius of the schedule (strictly increasing, at least three).
KTheoryResult compute_ktheory(const OrbitSpace& space, const std::vector<int>& radii,
                              Execution ex = Execution::parallel);

/// a_0 = 2, a_1 = 3, a_{k+1} = 2 a_k - a_{k-1}.
Integer sequence_a(int k);
/// b_0 = n, b_1 = n^2 - 1, b_{k+1} = n b_k - b_{k-1}.
Integer sequence_b(int n, int k);

struct ImageSequence {
  std::vector<Integer> coefficients;  // c_k with e_{w g^{k+1}} - c_k e_w in the image
  bool free_of_rank = false;           // the column lattice has rank equal to the number of columns
};
/// Column-reduces the summand's columns on w, w g, ..., w g^{count-1}, where
/// g is u (for the u summand) or gamma, and reads off the coefficients c_k.
ImageSequence image_sequence(const OrbitSpace& space, const DeltaSummand& s, const Label& w, int count);

/// True iff the two families span the same lattice (compared through Hermite
/// normal forms on the union of their supports).
bool same_lattice(const std::vector<ZCombo>& a, const std::vector<ZCombo>& b);

struct ExactnessReport {
  int radius = 0;
  std::size_t rows = 0, cols = 0;
  bool augmentation_kills_image = false;  // eps o d = 0
  bool injective = false;
  bool interior_exact = false;
  std::size_t interior_checked = 0;
  std::string witness;
  bool passed = false;
};

/// Checks 0 -> R_G^m -> R_G -> Z -> 0 on the full basis of G * SU_q(2) of
/// degree <= radius (+1 for the codomain), with d_gamma(x) = x (x) conj(gamma) - dim x.
ExactnessReport exactness_check(RingPtr group, int radius, Execution ex = Execution::parallel);

/// d_gamma on the ambient ring G * SU_q(2): x (x) gamma - dim(gamma) x, where
/// gamma is an ambient word.
ZCombo resolution_map(const FreeProductRing& ambient, const Label& gamma, const ZCombo& x);

}  // namespace fusion
