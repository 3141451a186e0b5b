#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusion/label.hpp"

namespace fusion {

/// A based ring with an integer dimension function (a fusion ring), given
/// lazily through rules rather than tables. Implementations are immutable
/// and safe to share between threads.
///
/// The public methods validate their label arguments and throw DomainError
/// for foreign labels; the protected `*_impl` hooks may assume valid input.
class FusionRing {
 public:
  virtual ~FusionRing() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual Label unit() const = 0;
  /// True iff `l` is a canonical label of this ring.
  [[nodiscard]] virtual bool contains(const Label& l) const = 0;
  [[nodiscard]] virtual bool is_finite() const { return false; }
  /// Labels generating the ring under tensor products (closed under conj).
  [[nodiscard]] virtual std::vector<Label> generators() const = 0;
  /// Self-conjugate fundamental used by free complexification, if any.
  [[nodiscard]] virtual std::optional<Label> default_fundamental() const { return std::nullopt; }

  [[nodiscard]] ZCombo tensor(const Label& a, const Label& b) const;
  [[nodiscard]] ZCombo tensor(const ZCombo& a, const Label& b) const;
  [[nodiscard]] ZCombo tensor(const Label& a, const ZCombo& b) const;
  [[nodiscard]] Label conj(const Label& a) const;
  [[nodiscard]] Integer dim(const Label& a) const;
  [[nodiscard]] int degree(const Label& a) const;
  /// Weight of a non-unit label when it is used as a letter of a word.
  [[nodiscard]] int letter_weight(const Label& a) const { return std::max(1, degree_impl(a)); }

  /// Labels of degree <= bound ordered by (degree, label).
  [[nodiscard]] std::vector<Label> enumerate(int bound) const;

  [[nodiscard]] std::string format(const Label& a) const;
  [[nodiscard]] std::string format(const ZCombo& c) const;
  /// Inverse of format; throws DomainError with the offending text.
  [[nodiscard]] Label parse(std::string_view text) const;
  /// Whether a single whitespace-free token is a letter of this ring.
  [[nodiscard]] virtual bool accepts_token(std::string_view token) const;

  // Unchecked hooks, used by composite rings on already validated labels.
  [[nodiscard]] virtual ZCombo tensor_impl(const Label& a, const Label& b) const = 0;
  [[nodiscard]] virtual Label conj_impl(const Label& a) const = 0;
  [[nodiscard]] virtual Integer dim_impl(const Label& a) const = 0;
  [[nodiscard]] virtual int degree_impl(const Label& a) const = 0;
  [[nodiscard]] virtual std::string format_impl(const Label& a) const = 0;
  [[nodiscard]] virtual Label parse_impl(std::string_view text) const = 0;

 protected:
  /// Every label of degree <= bound, in any order.
  [[nodiscard]] virtual std::vector<Label> generate(int bound) const = 0;
  void check(const Label& a) const;
};

using RingPtr = std::shared_ptr<const FusionRing>;

/// Splits on whitespace that is not nested inside brackets or parentheses.
std::vector<std::string> split_tokens(std::string_view text);
std::string trim(std::string_view text);

}  // namespace fusion
