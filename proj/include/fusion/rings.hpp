#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fusion/ring.hpp"

namespace fusion {

/// SU(2)-type fusion u^a (x) u^b = u^{|a-b|} + ... + u^{a+b} with classical
/// dimensions d_0 = 1, d_1 = n, d_{k+1} = n d_k - d_{k-1}. Used for
/// SU_q(2) (symbol 'u', n = 2) and O_n^+ (symbol 'v').
class ChebyshevRing final : public FusionRing {
 public:
  ChebyshevRing(std::string name, char symbol, int fundamental_dim);

  std::string name() const override { return name_; }
  Label unit() const override { return Label(0); }
  bool contains(const Label& l) const override;
  std::vector<Label> generators() const override { return {Label(1)}; }
  std::optional<Label> default_fundamental() const override { return Label(1); }
  char symbol() const { return symbol_; }
  int fundamental_dim() const { return n_; }

  ZCombo tensor_impl(const Label& a, const Label& b) const override;
  Label conj_impl(const Label& a) const override { return a; }
  Integer dim_impl(const Label& a) const override;
  int degree_impl(const Label& a) const override { return static_cast<int>(a.index); }
  std::string format_impl(const Label& a) const override;
  Label parse_impl(std::string_view text) const override;

 protected:
  std::vector<Label> generate(int bound) const override;

 private:
  std::string name_;
  char symbol_;
  int n_;
};

/// Group ring of Z/k. Elements have degree 0, so every bound enumerates
/// the whole group.
class CyclicRing final : public FusionRing {
 public:
  explicit CyclicRing(int order);

  std::string name() const override { return "Z/" + std::to_string(k_); }
  Label unit() const override { return Label(0); }
  bool contains(const Label& l) const override;
  bool is_finite() const override { return true; }
  std::vector<Label> generators() const override;
  std::optional<Label> default_fundamental() const override;
  int order() const { return k_; }

  ZCombo tensor_impl(const Label& a, const Label& b) const override;
  Label conj_impl(const Label& a) const override;
  Integer dim_impl(const Label&) const override { return 1; }
  int degree_impl(const Label&) const override { return 0; }
  std::string format_impl(const Label& a) const override;
  Label parse_impl(std::string_view text) const override;

 protected:
  std::vector<Label> generate(int bound) const override;

 private:
  int k_;
};

/// Group ring of the free group F_n; labels are reduced words. Letter
/// codes are 2g for the generator g and 2g+1 for its inverse.
class FreeGroupRing final : public FusionRing {
 public:
  explicit FreeGroupRing(int rank);

  std::string name() const override { return "F(" + std::to_string(n_) + ")"; }
  Label unit() const override { return Label(); }
  bool contains(const Label& l) const override;
  std::vector<Label> generators() const override;
  int rank() const { return n_; }
  /// Word consisting of the single generator `g` (inverse if `inverse`).
  Label generator(int g, bool inverse = false) const;
  /// Reduced product of two words.
  Label multiply(const Label& a, const Label& b) const;

  ZCombo tensor_impl(const Label& a, const Label& b) const override;
  Label conj_impl(const Label& a) const override;
  Integer dim_impl(const Label&) const override { return 1; }
  int degree_impl(const Label& a) const override { return static_cast<int>(a.letters.size()); }
  std::string format_impl(const Label& a) const override;
  Label parse_impl(std::string_view text) const override;

 protected:
  std::vector<Label> generate(int bound) const override;

 private:
  int n_;
};

/// Group ring of Z^n (commuting generators); labels hold exponent vectors.
/// Only used to exhibit the failure of the length-one resolution for
/// non-free groups.
class FreeAbelianRing final : public FusionRing {
 public:
  explicit FreeAbelianRing(int rank);

  std::string name() const override { return "Z^" + std::to_string(n_); }
  Label unit() const override;
  bool contains(const Label& l) const override;
  std::vector<Label> generators() const override;
  Label generator(int g, bool inverse = false) const;

  ZCombo tensor_impl(const Label& a, const Label& b) const override;
  Label conj_impl(const Label& a) const override;
  Integer dim_impl(const Label&) const override { return 1; }
  int degree_impl(const Label& a) const override;
  std::string format_impl(const Label& a) const override;
  Label parse_impl(std::string_view text) const override;

 protected:
  std::vector<Label> generate(int bound) const override;

 private:
  int n_;
};

/// Dual of the circle group: labels z^k, k in Z.
class CircleRing final : public FusionRing {
 public:
  std::string name() const override { return "S1"; }
  Label unit() const override { return Label(0); }
  bool contains(const Label& l) const override { return l.letters.empty(); }
  std::vector<Label> generators() const override { return {Label(1), Label(-1)}; }

  ZCombo tensor_impl(const Label& a, const Label& b) const override {
    return ZCombo::single(Label(a.index + b.index));
  }
  Label conj_impl(const Label& a) const override { return Label(-a.index); }
  Integer dim_impl(const Label&) const override { return 1; }
  int degree_impl(const Label& a) const override { return static_cast<int>(a.index < 0 ? -a.index : a.index); }
  std::string format_impl(const Label& a) const override;
  Label parse_impl(std::string_view text) const override;

 protected:
  std::vector<Label> generate(int bound) const override;
};

/// Free unitary quantum group U_P^+ with dim P = m: words over {v, vb}
/// with x (x) y = xy + [last(x) = conj(first(y))] (x- (x) y-).
class UnitaryRing final : public FusionRing {
 public:
  explicit UnitaryRing(int m);

  std::string name() const override { return "U+(" + std::to_string(m_) + ")"; }
  Label unit() const override { return Label(); }
  bool contains(const Label& l) const override;
  std::vector<Label> generators() const override;
  int fundamental_dim() const { return m_; }
  Label v() const;
  Label vbar() const;

  ZCombo tensor_impl(const Label& a, const Label& b) const override;
  Label conj_impl(const Label& a) const override;
  Integer dim_impl(const Label& a) const override;
  int degree_impl(const Label& a) const override { return static_cast<int>(a.letters.size()); }
  std::string format_impl(const Label& a) const override;
  Label parse_impl(std::string_view text) const override;

 protected:
  std::vector<Label> generate(int bound) const override;

 private:
  int m_;
};

/// Free product of based rings. Labels are alternating words whose letters
/// are Label{factor, {non-unit factor label}}; the empty word is the unit.
class FreeProductRing final : public FusionRing {
 public:
  explicit FreeProductRing(std::vector<RingPtr> factors);

  std::string name() const override;
  Label unit() const override { return Label(); }
  bool contains(const Label& l) const override;
  std::vector<Label> generators() const override;
  bool accepts_token(std::string_view token) const override;

  const std::vector<RingPtr>& factors() const { return factors_; }
  const FusionRing& factor(std::size_t f) const { return *factors_.at(f); }

  /// The one-letter word for a factor label (the unit maps to the empty word).
  Label letter(std::size_t f, const Label& factor_label) const;
  /// Concatenation of two words that must already alternate at the junction.
  static Label concat(const Label& a, const Label& b);
  static std::size_t factor_of(const Label& letter) { return static_cast<std::size_t>(letter.index); }
  static const Label& payload(const Label& letter) { return letter.letters.front(); }

  ZCombo tensor_impl(const Label& a, const Label& b) const override;
  Label conj_impl(const Label& a) const override;
  Integer dim_impl(const Label& a) const override;
  int degree_impl(const Label& a) const override;
  std::string format_impl(const Label& a) const override;
  Label parse_impl(std::string_view text) const override;

 protected:
  std::vector<Label> generate(int bound) const override;

 private:
  int token_factor(std::string_view token, std::string* stripped) const;

  std::vector<RingPtr> factors_;
};

/// Fusion ring of G wreath SO_q(3): words in the free monoid over Irr(G)
/// (unit letters allowed), realised inside G * SU_q(2) through Lambda.
/// Letter weight is 1 + deg_G, so the unit letter has weight 1.
class WreathRing final : public FusionRing {
 public:
  explicit WreathRing(RingPtr base);

  std::string name() const override { return "wreath(" + base_->name() + ")"; }
  Label unit() const override { return Label(); }
  bool contains(const Label& l) const override;
  std::vector<Label> generators() const override;
  std::optional<Label> default_fundamental() const override;

  const FusionRing& base() const { return *base_; }
  const RingPtr& base_ptr() const { return base_; }
  /// The free product G * SU_q(2) (factor 0 = G, factor 1 = SU_q(2)).
  const FreeProductRing& ambient() const { return *ambient_; }
  const std::shared_ptr<const FreeProductRing>& ambient_ptr() const { return ambient_; }
  /// The one-letter word (g).
  Label word(const std::vector<Label>& base_labels) const { return Label(0, base_labels); }
  /// Explicit embedding into G * SU_q(2).
  Label lambda(const Label& w) const;
  /// Lambda applied termwise.
  ZCombo lambda(const ZCombo& c) const;

  ZCombo tensor_impl(const Label& a, const Label& b) const override;
  Label conj_impl(const Label& a) const override;
  Integer dim_impl(const Label& a) const override;
  int degree_impl(const Label& a) const override;
  std::string format_impl(const Label& a) const override;
  Label parse_impl(std::string_view text) const override;

 protected:
  std::vector<Label> generate(int bound) const override;

 private:
  RingPtr base_;
  std::shared_ptr<const FreeProductRing> ambient_;
};

RingPtr make_su2();
RingPtr make_orthogonal(int n);
RingPtr make_unitary(int m);
RingPtr make_cyclic(int k);
RingPtr make_free_group(int n);
RingPtr make_free_abelian(int n);
RingPtr make_circle();
std::shared_ptr<const FreeProductRing> make_free_product(std::vector<RingPtr> factors);
std::shared_ptr<const WreathRing> make_wreath(RingPtr base);

}  // namespace fusion
