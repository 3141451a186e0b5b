#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fusion {

/// Arbitrary-precision integer used for every coefficient in the library.
using Integer = mpz_class;

/// Raised when a label does not belong to the ring or module it is used with.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a ring, module or group specification has invalid parameters.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Name of an irreducible (or of a module basis element).
///
/// A label is a small tree: atoms carry only `index` (a spin, a group
/// element, a power of z), composite words carry their letters. Each ring
/// fixes the interpretation and keeps its labels in canonical form, so
/// structural equality is label equality.
struct Label {
  std::int64_t index = 0;
  std::vector<Label> letters;

  Label() = default;
  explicit Label(std::int64_t i) : index(i) {}
  Label(std::int64_t i, std::vector<Label> l) : index(i), letters(std::move(l)) {}

  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (auto c = a.index <=> b.index; c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                  b.letters.begin(), b.letters.end());
  }
};

struct LabelHash {
  std::size_t operator()(const Label& l) const noexcept;
};

/// Finitely supported map label -> integer with no stored zeros.
class ZCombo {
 public:
  using Map = std::map<Label, Integer>;
  using const_iterator = Map::const_iterator;

  ZCombo() = default;
  static ZCombo single(Label l, const Integer& c = 1);

  void add(const Label& l, const Integer& c);
  void add(const ZCombo& other, const Integer& scale = 1);
  ZCombo& operator+=(const ZCombo& other) {
    add(other);
    return *this;
  }
  ZCombo& operator-=(const ZCombo& other) {
    add(other, -1);
    return *this;
  }

  [[nodiscard]] Integer coefficient(const Label& l) const;
  [[nodiscard]] bool contains(const Label& l) const { return terms_.count(l) != 0; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_nonnegative() const;
  /// The label if this is exactly `1 * label`.
  [[nodiscard]] std::optional<Label> as_single() const;
  [[nodiscard]] Integer total(const std::map<Label, Integer>& weights) const;

  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  friend bool operator==(const ZCombo& a, const ZCombo& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

}  // namespace fusion
