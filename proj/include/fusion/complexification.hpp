#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "fusion/modules.hpp"

namespace fusion {

/// Even part of (G, u): the labels contained in some power of u (x) u.
/// `fundamental` is a conjugation-closed list of letters; a single
/// self-conjugate u is the orthogonal case.
class EvenPart {
 public:
  EvenPart(RingPtr ring, std::vector<Label> fundamental);

  const FusionRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Label>& fundamental() const { return fundamental_; }
  [[nodiscard]] bool contains(const Label& l) const;
  /// True iff every label of degree <= bound is even.
  [[nodiscard]] bool is_everything(int bound) const;

 private:
  const std::set<Label>& closure(int cap) const;

  RingPtr ring_;
  std::vector<Label> fundamental_;
  int step_ = 0;
  mutable std::mutex mutex_;
  mutable int cap_ = -1;
  mutable std::set<Label> members_;
};

/// Throws DomainError when u is not self-conjugate.
std::shared_ptr<const EvenPart> even_part(RingPtr ring, const Label& u);
/// Even part for a conjugation-closed list of fundamental letters.
std::shared_ptr<const EvenPart> even_part(RingPtr ring, std::vector<Label> fundamental);

/// The free complexification of (G, u) realised inside G * S^1 as the set of
/// words z^[e0]- b1 z^e1 ... bp z^[ep]+ where the sign flips across even
/// letters and is kept across odd ones. When G_ev = G it is all of G * S^1.
class TildeRing final : public FusionRing {
 public:
  TildeRing(std::shared_ptr<const EvenPart> even, bool everything_even);

  std::string name() const override;
  Label unit() const override { return Label(); }
  bool contains(const Label& l) const override;
  std::vector<Label> generators() const override;
  std::optional<Label> default_fundamental() const override { return tilde_u_; }

  const FreeProductRing& ambient() const { return *ambient_; }
  const std::shared_ptr<const FreeProductRing>& ambient_ptr() const { return ambient_; }
  const EvenPart& even() const { return *even_; }
  bool degenerate() const { return everything_even_; }
  /// The word u z.
  const Label& tilde_u() const { return tilde_u_; }
  /// z^k as a one-letter word of the ambient ring.
  Label z(std::int64_t k) const;

  ZCombo tensor_impl(const Label& a, const Label& b) const override { return ambient_->tensor_impl(a, b); }
  Label conj_impl(const Label& a) const override { return ambient_->conj_impl(a); }
  Integer dim_impl(const Label& a) const override { return ambient_->dim_impl(a); }
  int degree_impl(const Label& a) const override { return ambient_->degree_impl(a); }
  std::string format_impl(const Label& a) const override { return ambient_->format_impl(a); }
  Label parse_impl(std::string_view text) const override;
  bool accepts_token(std::string_view token) const override { return ambient_->accepts_token(token); }

 protected:
  std::vector<Label> generate(int bound) const override;

 private:
  std::shared_ptr<const EvenPart> even_;
  std::shared_ptr<const FreeProductRing> ambient_;
  bool everything_even_;
  Label tilde_u_;
};

/// Free complexification of (ring, u). `probe_bound` is the window on which
/// G_ev = G is decided.
std::shared_ptr<const TildeRing> make_tilde(RingPtr ring, const Label& u, int probe_bound = 6);
std::shared_ptr<const TildeRing> make_tilde(RingPtr ring, std::vector<Label> fundamental, int probe_bound = 6);

/// W-pattern membership of a G * S^1 word (see TildeRing).
bool tilde_membership(const TildeRing& tilde, const Label& word);

struct DivisibilityClass {
  enum class Status { verified, failed, indeterminate };
  Status status = Status::indeterminate;
  std::vector<Label> members;  // window members ordered by (degree, label)
  Label representative;        // the verified representative, or the first tried
  Label gamma;                 // a subring label making representative (x) gamma reducible
};
std::string to_string(DivisibilityClass::Status s);

struct DivisibilityReport {
  std::vector<DivisibilityClass> classes;
  std::size_t verified = 0, failed = 0, indeterminate = 0;
};

/// Classes of the ambient window modulo the subring and, for each, a search
/// for a minimal-degree representative beta with beta (x) gamma irreducible for
/// every subring label gamma in the window.
DivisibilityReport divisibility_check(const std::function<bool(const Label&)>& sub_membership,
                                      const FusionRing& ambient, int bound);

struct TrichotomyResult {
  std::size_t classes = 0;
  bool odd_stabilizer_found = false;
  Label witness_element;  // basis element with an odd stabilizer
  Label witness_label;    // the odd stabilizer
  std::vector<std::vector<Label>> class_members;
  int bound_used = 0;
  bool consistent = false;  // odd stabilizer <=> one class, and at most two classes
};

/// Equivalence classes of the basis window under even-label connectivity and
/// a search for odd stabilizers. A window that contradicts the trichotomy is
/// retried once at bound + 2; a persistent contradiction throws
/// std::logic_error.
TrichotomyResult even_class_trichotomy(const BasedModule& m, const EvenPart& even, int bound);

struct ComplexifiedCount {
  std::size_t count = 0;
  std::vector<std::shared_ptr<const SubModule>> modules;  // P, and P' when distinct
  std::vector<Label> roots;                               // the N basis elements generating them
  IsoResult iso_between;                                  // filled when count == 2
  std::size_t window_elements = 0;                        // N basis elements examined
};

/// Induces N to G * S^1, restricts to the tilde ring and groups the basis
/// elements of N by the tilde submodules they generate.
ComplexifiedCount complexified_submodule_count(ModulePtr n, std::shared_ptr<const TildeRing> tilde, int bound);

}  // namespace fusion
