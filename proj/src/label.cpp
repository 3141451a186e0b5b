#include "fusion/label.hpp"

#include <functional>

namespace fusion {

std::size_t LabelHash::operator()(const Label& l) const noexcept {
  std::size_t h = std::hash<std::int64_t>{}(l.index) ^ (l.letters.size() * 0x9e3779b97f4a7c15ULL);
  for (const auto& c : l.letters) {
    h ^= (*this)(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

ZCombo ZCombo::single(Label l, const Integer& c) {
  ZCombo z;
  z.add(l, c);
  return z;
}

void ZCombo::add(const Label& l, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(l, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void ZCombo::add(const ZCombo& other, const Integer& scale) {
  if (scale == 0) return;
  for (const auto& [l, c] : other.terms_) add(l, c * scale);
}

Integer ZCombo::coefficient(const Label& l) const {
  auto it = terms_.find(l);
  return it == terms_.end() ? Integer(0) : it->second;
}

bool ZCombo::is_nonnegative() const {
  for (const auto& [l, c] : terms_)
    if (c < 0) return false;
  return true;
}

std::optional<Label> ZCombo::as_single() const {
  if (terms_.size() == 1 && terms_.begin()->second == 1) return terms_.begin()->first;
  return std::nullopt;
}

Integer ZCombo::total(const std::map<Label, Integer>& weights) const {
  Integer s = 0;
  for (const auto& [l, c] : terms_) s += c * weights.at(l);
  return s;
}

}  // namespace fusion
