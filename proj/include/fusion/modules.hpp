#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fusion/rings.hpp"
#include "fusion/verify.hpp"

namespace fusion {

/// Based module over a fusion ring, possibly with an infinite basis that is
/// enumerated through degree windows.
class BasedModule {
 public:
  explicit BasedModule(RingPtr ring);
  virtual ~BasedModule() = default;

  const FusionRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual bool contains(const Label& j) const = 0;
  [[nodiscard]] virtual bool is_finite() const { return false; }
  [[nodiscard]] virtual int degree(const Label& j) const = 0;
  [[nodiscard]] virtual std::string format(const Label& j) const = 0;
  [[nodiscard]] std::string format(const ZCombo& c) const;

  /// Basis labels of degree <= bound ordered by (degree, label).
  [[nodiscard]] std::vector<Label> basis(int bound) const;

  [[nodiscard]] ZCombo act(const Label& i, const Label& j) const;
  [[nodiscard]] ZCombo act(const Label& i, const ZCombo& x) const;
  [[nodiscard]] virtual ZCombo act_impl(const Label& i, const Label& j) const = 0;

 protected:
  [[nodiscard]] virtual std::vector<Label> generate_basis(int bound) const = 0;

 private:
  RingPtr ring_;
};

using ModulePtr = std::shared_ptr<const BasedModule>;

/// Square matrix of non-negative structure constants; entry [j2][j1] is the
/// multiplicity of j2 in i (x) j1.
using SmallMatrix = std::vector<std::vector<long long>>;

/// Finite-rank module over a finite ring given by one matrix per ring label.
/// Module labels are Label(0) ... Label(rank - 1).
class FiniteModule final : public BasedModule {
 public:
  FiniteModule(RingPtr ring, std::string name, std::vector<std::string> names, std::map<Label, SmallMatrix> action);

  /// Derives the matrix of every ring label from the generator matrices,
  /// multiplying along products that decompose into a single label.
  static std::shared_ptr<FiniteModule> from_generators(RingPtr ring, std::string name,
                                                       std::vector<std::string> names,
                                                       const std::map<Label, SmallMatrix>& generators);

  std::string name() const override { return name_; }
  bool contains(const Label& j) const override;
  bool is_finite() const override { return true; }
  int degree(const Label&) const override { return 0; }
  std::string format(const Label& j) const override;
  using BasedModule::format;
  ZCombo act_impl(const Label& i, const Label& j) const override;

  std::size_t rank() const { return names_.size(); }
  const SmallMatrix& matrix(const Label& ring_label) const;
  const std::vector<std::string>& names() const { return names_; }

 protected:
  std::vector<Label> generate_basis(int bound) const override;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::map<Label, SmallMatrix> action_;
};

/// The ring acting on itself.
class StandardModule final : public BasedModule {
 public:
  explicit StandardModule(RingPtr ring) : BasedModule(std::move(ring)) {}
  std::string name() const override { return "standard(" + ring().name() + ")"; }
  bool contains(const Label& j) const override { return ring().contains(j); }
  bool is_finite() const override { return ring().is_finite(); }
  int degree(const Label& j) const override { return ring().degree_impl(j); }
  std::string format(const Label& j) const override { return ring().format_impl(j); }
  using BasedModule::format;
  ZCombo act_impl(const Label& i, const Label& j) const override { return ring().tensor_impl(i, j); }

 protected:
  std::vector<Label> generate_basis(int bound) const override { return ring().enumerate(bound); }
};

/// Module given by closed-form rules, used for infinite-basis candidates.
class RuleModule final : public BasedModule {
 public:
  struct Rules {
    std::function<bool(const Label&)> contains;
    std::function<ZCombo(const Label&, const Label&)> act;
    std::function<int(const Label&)> degree;
    std::function<std::vector<Label>(int)> basis;
    std::function<std::string(const Label&)> format;
  };
  RuleModule(RingPtr ring, std::string name, Rules rules);

  std::string name() const override { return name_; }
  bool contains(const Label& j) const override { return rules_.contains(j); }
  int degree(const Label& j) const override { return rules_.degree(j); }
  std::string format(const Label& j) const override { return rules_.format(j); }
  using BasedModule::format;
  ZCombo act_impl(const Label& i, const Label& j) const override { return rules_.act(i, j); }

 protected:
  std::vector<Label> generate_basis(int bound) const override { return rules_.basis(bound); }

 private:
  std::string name_;
  Rules rules_;
};

/// Induction of an R_f-module along the inclusion of factor f into a free
/// product. Basis labels are Label(0, {w, j}) with w an alternating word not
/// ending in factor f.
class InducedModule final : public BasedModule {
 public:
  InducedModule(ModulePtr base, std::shared_ptr<const FreeProductRing> product, std::size_t factor);

  std::string name() const override;
  bool contains(const Label& j) const override;
  int degree(const Label& j) const override;
  std::string format(const Label& j) const override;
  using BasedModule::format;
  ZCombo act_impl(const Label& i, const Label& j) const override;

  const BasedModule& base() const { return *base_; }
  const FreeProductRing& product() const { return *product_; }
  std::size_t factor() const { return factor_; }
  Label element(const Label& word, const Label& j) const;
  static const Label& word_of(const Label& e) { return e.letters.at(0); }
  static const Label& base_of(const Label& e) { return e.letters.at(1); }

 protected:
  std::vector<Label> generate_basis(int bound) const override;

 private:
  ModulePtr base_;
  std::shared_ptr<const FreeProductRing> product_;
  std::size_t factor_;
};

/// A module seen over a subring through an embedding of based rings.
class RestrictedModule final : public BasedModule {
 public:
  using Embedding = std::function<ZCombo(const Label&)>;
  RestrictedModule(ModulePtr parent, RingPtr subring, Embedding embed, std::string name);

  std::string name() const override { return name_; }
  bool contains(const Label& j) const override { return parent_->contains(j); }
  bool is_finite() const override { return parent_->is_finite(); }
  int degree(const Label& j) const override { return parent_->degree(j); }
  std::string format(const Label& j) const override { return parent_->format(j); }
  using BasedModule::format;
  ZCombo act_impl(const Label& i, const Label& j) const override;
  const BasedModule& parent() const { return *parent_; }

 protected:
  std::vector<Label> generate_basis(int bound) const override { return parent_->basis(bound); }

 private:
  ModulePtr parent_;
  Embedding embed_;
  std::string name_;
};

/// Submodule spanned by the basis elements reachable from `seeds`. Windows
/// are explored with a degree slack so that short detours above the window
/// are followed.
class SubModule final : public BasedModule {
 public:
  SubModule(ModulePtr parent, std::vector<Label> seeds, int slack, std::string name);

  std::string name() const override { return name_; }
  bool contains(const Label& j) const override;
  bool is_finite() const override { return parent_->is_finite(); }
  int degree(const Label& j) const override { return parent_->degree(j); }
  std::string format(const Label& j) const override { return parent_->format(j); }
  using BasedModule::format;
  ZCombo act_impl(const Label& i, const Label& j) const override { return parent_->act_impl(i, j); }
  const std::vector<Label>& seeds() const { return seeds_; }
  const BasedModule& parent() const { return *parent_; }

 protected:
  std::vector<Label> generate_basis(int bound) const override;

 private:
  ModulePtr parent_;
  std::vector<Label> seeds_;
  int slack_;
  std::string name_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::vector<Label>> cache_;
  mutable std::map<Label, bool> membership_;
};

std::shared_ptr<const StandardModule> standard_module(RingPtr ring);
/// Z.j0 with every group element acting trivially (finite group rings).
std::shared_ptr<const FiniteModule> trivial_module(RingPtr ring);
/// Ind of `base` along factor `factor` of `product`.
std::shared_ptr<const InducedModule> induce(ModulePtr base, std::shared_ptr<const FreeProductRing> product,
                                            std::size_t factor);
/// A module over G * SU_q(2) restricted to the wreath ring through Lambda.
std::shared_ptr<const RestrictedModule> restrict_to_wreath(ModulePtr module, std::shared_ptr<const WreathRing> wreath);
/// A module over a free product restricted to one factor.
std::shared_ptr<const RestrictedModule> restrict_to_factor(ModulePtr module, std::shared_ptr<const FreeProductRing> product,
                                                           std::size_t factor);
/// The module u^{2n} (x) j_k = sum_t j_{k+n-t} over wreath(Z/1), the fusion
/// ring of SO_q(3): the half-integer spins of SU_q(2) with j_k = u^{2k+1}.
std::shared_ptr<const RuleModule> spin_module();

// ---------------------------------------------------------------- operations

/// Ring labels of degree <= bound stabilizing j.
std::vector<Label> stabilizer(const BasedModule& m, const Label& j, int bound);
/// <j1, j2> = sum_i lambda_{conj(i) j1}^{j2} i over ring labels of degree <= bound.
ZCombo pairing(const BasedModule& m, const Label& j1, const Label& j2, int bound);

struct StandardVerdict {
  enum class Kind { standard, non_standard, unknown };
  Kind kind = Kind::unknown;
  Label element;   // j0 for standard, the witness j otherwise
  Label stabilizer;  // a non-trivial stabilizer of `element` when non_standard
  std::string note;
};
std::string to_string(StandardVerdict::Kind k);

/// Three-valued standardness test on the window of degree <= bound. When
/// `candidates` is non-empty only those basis elements are examined.
StandardVerdict detect_standard(const BasedModule& m, int bound, const std::vector<Label>& candidates = {});

/// Unit action, non-negativity, associativity against the ring structure
/// constants and coefficient-level Frobenius symmetry on the window.
AxiomReport check_module_axioms(const BasedModule& m, int bound, const VerifyOptions& opts = {});
/// <i (x) j1, j2> = i (x) <j1, j2>, compared on ring labels of degree <= bound - deg(i).
AxiomReport check_pairing_equivariance(const BasedModule& m, int bound, const VerifyOptions& opts = {});

/// Connected components of the window under the action of ring generators,
/// explored up to degree bound + slack and reported on degree <= bound.
std::vector<std::vector<Label>> orbit_components(const BasedModule& m, int bound, int slack);

struct IsoResult {
  enum class Kind { yes, no, not_found };
  Kind kind = Kind::not_found;
  std::map<Label, Label> map;
  std::string reason;
};
std::string to_string(IsoResult::Kind k);

/// Searches for a based-module isomorphism commuting with the ring
/// generators on the window of `a`. Roots are the lowest-degree elements.
IsoResult module_isomorphic(const BasedModule& a, const BasedModule& b, int bound);

struct WreathScanResult {
  std::size_t input_rank = 0;  // basis elements of N in the window
  std::size_t components = 0;  // components of the restricted window
  std::size_t standard_components = 0;
  std::size_t non_standard_components = 0;
  std::size_t undecided_components = 0;
  bool contains_all_u1j = false;  // every u1 j lies in the non-standard one
  bool u2_stabilizes_all = false;
  Label witness;  // an element of the non-standard submodule (u1 j)
  std::shared_ptr<const SubModule> submodule;
  bool passed = false;
};

/// Restricts Ind_G^{G*SU_q(2)}(N) to the wreath ring and classifies the
/// components met by the window.
WreathScanResult wreath_submodule_scan(std::shared_ptr<const WreathRing> wreath, ModulePtr n, int bound);

}  // namespace fusion
