#include "fusion/ring.hpp"

#include <algorithm>
#include <cctype>

namespace fusion {

void FusionRing::check(const Label& a) const {
  if (!contains(a)) throw DomainError("label does not belong to ring " + name());
}

ZCombo FusionRing::tensor(const Label& a, const Label& b) const {
  check(a);
  check(b);
  return tensor_impl(a, b);
}

ZCombo FusionRing::tensor(const ZCombo& a, const Label& b) const {
  check(b);
  ZCombo out;
  for (const auto& [l, c] : a) {
    check(l);
    out.add(tensor_impl(l, b), c);
  }
  return out;
}

ZCombo FusionRing::tensor(const Label& a, const ZCombo& b) const {
  check(a);
  ZCombo out;
  for (const auto& [l, c] : b) {
    check(l);
    out.add(tensor_impl(a, l), c);
  }
  return out;
}

Label FusionRing::conj(const Label& a) const {
  check(a);
  return conj_impl(a);
}

Integer FusionRing::dim(const Label& a) const {
  check(a);
  return dim_impl(a);
}

int FusionRing::degree(const Label& a) const {
  check(a);
  return degree_impl(a);
}

std::vector<Label> FusionRing::enumerate(int bound) const {
  if (bound < 0) return {};
  auto labels = generate(bound);
  std::vector<std::pair<int, Label>> keyed;
  keyed.reserve(labels.size());
  for (auto& l : labels) keyed.emplace_back(degree_impl(l), std::move(l));
  std::sort(keyed.begin(), keyed.end());
  keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
  std::vector<Label> out;
  out.reserve(keyed.size());
  for (auto& [d, l] : keyed) out.push_back(std::move(l));
  return out;
}

std::string FusionRing::format(const Label& a) const {
  check(a);
  return format_impl(a);
}

std::string FusionRing::format(const ZCombo& c) const {
  if (c.empty()) return "0";
  std::vector<std::pair<int, Label>> order;
  for (const auto& [l, k] : c) order.emplace_back(degree_impl(l), l);
  // Highest degree first, so leading terms read left to right.
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  std::string out;
  bool first = true;
  for (const auto& [d, l] : order) {
    Integer k = c.coefficient(l);
    if (!first) out += k < 0 ? " - " : " + ";
    else if (k < 0) out += "-";
    first = false;
    Integer a = abs(k);
    if (a != 1) out += a.get_str() + "*";
    out += format_impl(l);
  }
  return out;
}

Label FusionRing::parse(std::string_view text) const {
  Label l = parse_impl(trim(text));
  if (!contains(l)) throw DomainError("'" + std::string(text) + "' is not a canonical label of " + name());
  return l;
}

bool FusionRing::accepts_token(std::string_view token) const {
  try {
    (void)parse(token);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace fusion
