#include "fusion/rings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

namespace fusion {

namespace {

// Parses an optionally signed decimal integer that must span all of `text`.
std::optional<long long> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  long long v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (*b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) return std::nullopt;
  return v;
}

// Splits "x^k" into ("x", k); a bare "x" has exponent 1.
std::pair<std::string, long long> split_power(std::string_view tok, std::string_view whole) {
  auto caret = tok.find('^');
  if (caret == std::string_view::npos) return {std::string(tok), 1};
  auto e = parse_int(tok.substr(caret + 1));
  if (!e) throw DomainError("bad exponent in '" + std::string(whole) + "'");
  return {std::string(tok.substr(0, caret)), *e};
}

std::string power(const std::string& base, long long e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

std::string group_letter_name(int g, int rank) {
  if (rank <= 6) return std::string(1, static_cast<char>('a' + g));
  return "x" + std::to_string(g + 1);
}

int group_letter_index(const std::string& name, int rank) {
  for (int g = 0; g < rank; ++g)
    if (group_letter_name(g, rank) == name) return g;
  return -1;
}

}  // namespace

// ---------------------------------------------------------------- Chebyshev

ChebyshevRing::ChebyshevRing(std::string name, char symbol, int fundamental_dim)
    : name_(std::move(name)), symbol_(symbol), n_(fundamental_dim) {
  if (n_ < 2) throw ConstructionError(name_ + ": fundamental dimension must be at least 2");
}

bool ChebyshevRing::contains(const Label& l) const { return l.letters.empty() && l.index >= 0; }

ZCombo ChebyshevRing::tensor_impl(const Label& a, const Label& b) const {
  ZCombo out;
  auto lo = std::min(a.index, b.index);
  for (std::int64_t k = 0; k <= lo; ++k) out.add(Label(a.index + b.index - 2 * k), 1);
  return out;
}

Integer ChebyshevRing::dim_impl(const Label& a) const {
  Integer prev = 1, cur = n_;
  if (a.index == 0) return prev;
  for (std::int64_t k = 1; k < a.index; ++k) {
    Integer next = n_ * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::string ChebyshevRing::format_impl(const Label& a) const {
  return std::string(1, symbol_) + std::to_string(a.index);
}

Label ChebyshevRing::parse_impl(std::string_view text) const {
  if (text.size() < 2 || text[0] != symbol_ || !std::isdigit(static_cast<unsigned char>(text[1])))
    throw DomainError("expected " + std::string(1, symbol_) + "<k>, got '" + std::string(text) + "'");
  auto k = parse_int(text.substr(1));
  if (!k) throw DomainError("bad spin in '" + std::string(text) + "'");
  return Label(*k);
}

std::vector<Label> ChebyshevRing::generate(int bound) const {
  std::vector<Label> out;
  for (int k = 0; k <= bound; ++k) out.emplace_back(k);
  return out;
}

// ---------------------------------------------------------------- Cyclic

CyclicRing::CyclicRing(int order) : k_(order) {
  if (k_ < 1) throw ConstructionError("Z/k needs k >= 1");
}

bool CyclicRing::contains(const Label& l) const {
  return l.letters.empty() && l.index >= 0 && l.index < k_;
}

std::vector<Label> CyclicRing::generators() const {
  if (k_ == 1) return {};
  if (k_ == 2) return {Label(1)};
  return {Label(1), Label(k_ - 1)};
}

std::optional<Label> CyclicRing::default_fundamental() const {
  if (k_ == 2) return Label(1);
  return std::nullopt;
}

ZCombo CyclicRing::tensor_impl(const Label& a, const Label& b) const {
  return ZCombo::single(Label((a.index + b.index) % k_));
}

Label CyclicRing::conj_impl(const Label& a) const { return Label((k_ - a.index) % k_); }

std::string CyclicRing::format_impl(const Label& a) const {
  if (a.index == 0) return "1";
  if (k_ == 2) return "s";
  return power("g", a.index);
}

Label CyclicRing::parse_impl(std::string_view text) const {
  if (text == "1") return Label(0);
  auto [base, e] = split_power(text, text);
  if (!(base == "g" || (base == "s" && k_ == 2)))
    throw DomainError("'" + std::string(text) + "' is not an element of " + name());
  long long r = ((e % k_) + k_) % k_;
  return Label(r);
}

std::vector<Label> CyclicRing::generate(int) const {
  std::vector<Label> out;
  for (int j = 0; j < k_; ++j) out.emplace_back(j);
  return out;
}

// ---------------------------------------------------------------- Free group

FreeGroupRing::FreeGroupRing(int rank) : n_(rank) {
  if (n_ < 1) throw ConstructionError("F(n) needs n >= 1");
}

bool FreeGroupRing::contains(const Label& l) const {
  if (l.index != 0) return false;
  for (std::size_t i = 0; i < l.letters.size(); ++i) {
    const auto& c = l.letters[i];
    if (!c.letters.empty() || c.index < 0 || c.index >= 2 * n_) return false;
    if (i > 0 && (l.letters[i - 1].index ^ 1) == c.index) return false;
  }
  return true;
}

std::vector<Label> FreeGroupRing::generators() const {
  std::vector<Label> out;
  for (int g = 0; g < n_; ++g) {
    out.push_back(generator(g));
    out.push_back(generator(g, true));
  }
  return out;
}

Label FreeGroupRing::generator(int g, bool inverse) const {
  if (g < 0 || g >= n_) throw DomainError("generator index out of range");
  return Label(0, {Label(2 * g + (inverse ? 1 : 0))});
}

Label FreeGroupRing::multiply(const Label& a, const Label& b) const {
  std::vector<Label> w = a.letters;
  for (const auto& c : b.letters) {
    if (!w.empty() && (w.back().index ^ 1) == c.index)
      w.pop_back();
    else
      w.push_back(c);
  }
  return Label(0, std::move(w));
}

ZCombo FreeGroupRing::tensor_impl(const Label& a, const Label& b) const {
  return ZCombo::single(multiply(a, b));
}

Label FreeGroupRing::conj_impl(const Label& a) const {
  std::vector<Label> w;
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it) w.emplace_back(it->index ^ 1);
  return Label(0, std::move(w));
}

std::string FreeGroupRing::format_impl(const Label& a) const {
  if (a.letters.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < a.letters.size()) {
    auto code = a.letters[i].index;
    std::size_t j = i;
    while (j < a.letters.size() && a.letters[j].index == code) ++j;
    long long e = static_cast<long long>(j - i) * ((code & 1) ? -1 : 1);
    if (!out.empty()) out += ' ';
    out += power(group_letter_name(static_cast<int>(code / 2), n_), e);
    i = j;
  }
  return out;
}

Label FreeGroupRing::parse_impl(std::string_view text) const {
  Label w;
  if (text == "1") return w;
  auto toks = split_tokens(text);
  if (toks.empty()) throw DomainError("empty group word");
  for (const auto& tok : toks) {
    auto [base, e] = split_power(tok, text);
    int g = group_letter_index(base, n_);
    if (g < 0 || e == 0) throw DomainError("'" + tok + "' is not a letter of " + name());
    Label step = generator(g, e < 0);
    for (long long r = 0; r < (e < 0 ? -e : e); ++r) w = multiply(w, step);
  }
  return w;
}

std::vector<Label> FreeGroupRing::generate(int bound) const {
  std::vector<Label> out;
  std::vector<Label> word;
  std::function<void()> rec = [&]() {
    out.emplace_back(0, word);
    if (static_cast<int>(word.size()) >= bound) return;
    for (int c = 0; c < 2 * n_; ++c) {
      if (!word.empty() && (word.back().index ^ 1) == c) continue;
      word.emplace_back(c);
      rec();
      word.pop_back();
    }
  };
  rec();
  return out;
}

// ---------------------------------------------------------------- Free abelian

FreeAbelianRing::FreeAbelianRing(int rank) : n_(rank) {
  if (n_ < 1) throw ConstructionError("Z^n needs n >= 1");
}

Label FreeAbelianRing::unit() const { return Label(0, std::vector<Label>(n_, Label(0))); }

bool FreeAbelianRing::contains(const Label& l) const {
  if (l.index != 0 || static_cast<int>(l.letters.size()) != n_) return false;
  return std::all_of(l.letters.begin(), l.letters.end(), [](const Label& c) { return c.letters.empty(); });
}

std::vector<Label> FreeAbelianRing::generators() const {
  std::vector<Label> out;
  for (int g = 0; g < n_; ++g) {
    out.push_back(generator(g));
    out.push_back(generator(g, true));
  }
  return out;
}

Label FreeAbelianRing::generator(int g, bool inverse) const {
  Label l = unit();
  l.letters.at(g).index = inverse ? -1 : 1;
  return l;
}

ZCombo FreeAbelianRing::tensor_impl(const Label& a, const Label& b) const {
  Label c = a;
  for (int g = 0; g < n_; ++g) c.letters[g].index += b.letters[g].index;
  return ZCombo::single(c);
}

Label FreeAbelianRing::conj_impl(const Label& a) const {
  Label c = a;
  for (auto& e : c.letters) e.index = -e.index;
  return c;
}

int FreeAbelianRing::degree_impl(const Label& a) const {
  int d = 0;
  for (const auto& e : a.letters) d += static_cast<int>(e.index < 0 ? -e.index : e.index);
  return d;
}

std::string FreeAbelianRing::format_impl(const Label& a) const {
  std::string out;
  for (int g = 0; g < n_; ++g) {
    if (a.letters[g].index == 0) continue;
    if (!out.empty()) out += ' ';
    out += power(group_letter_name(g, n_), a.letters[g].index);
  }
  return out.empty() ? "1" : out;
}

Label FreeAbelianRing::parse_impl(std::string_view text) const {
  Label l = unit();
  if (text == "1") return l;
  for (const auto& tok : split_tokens(text)) {
    auto [base, e] = split_power(tok, text);
    int g = group_letter_index(base, n_);
    if (g < 0) throw DomainError("'" + tok + "' is not a letter of " + name());
    l.letters[g].index += e;
  }
  return l;
}

std::vector<Label> FreeAbelianRing::generate(int bound) const {
  std::vector<Label> out;
  Label cur = unit();
  std::function<void(int, int)> rec = [&](int g, int left) {
    if (g == n_) {
      out.push_back(cur);
      return;
    }
    for (int e = -left; e <= left; ++e) {
      cur.letters[g].index = e;
      rec(g + 1, left - (e < 0 ? -e : e));
    }
    cur.letters[g].index = 0;
  };
  rec(0, bound);
  return out;
}

// ---------------------------------------------------------------- Circle

std::string CircleRing::format_impl(const Label& a) const {
  if (a.index == 0) return "1";
  return power("z", a.index);
}

Label CircleRing::parse_impl(std::string_view text) const {
  if (text == "1") return Label(0);
  auto [base, e] = split_power(text, text);
  if (base != "z") throw DomainError("'" + std::string(text) + "' is not a power of z");
  return Label(e);
}

std::vector<Label> CircleRing::generate(int bound) const {
  std::vector<Label> out;
  for (int k = -bound; k <= bound; ++k) out.emplace_back(k);
  return out;
}

// ---------------------------------------------------------------- U+

UnitaryRing::UnitaryRing(int m) : m_(m) {
  if (m_ < 2) throw ConstructionError("U+(m) needs m >= 2");
}

bool UnitaryRing::contains(const Label& l) const {
  if (l.index != 0) return false;
  return std::all_of(l.letters.begin(), l.letters.end(),
                     [](const Label& c) { return c.letters.empty() && (c.index == 0 || c.index == 1); });
}

Label UnitaryRing::v() const { return Label(0, {Label(0)}); }
Label UnitaryRing::vbar() const { return Label(0, {Label(1)}); }
std::vector<Label> UnitaryRing::generators() const { return {v(), vbar()}; }

ZCombo UnitaryRing::tensor_impl(const Label& a, const Label& b) const {
  ZCombo out;
  std::size_t i = a.letters.size(), j = 0;
  while (true) {
    std::vector<Label> w(a.letters.begin(), a.letters.begin() + i);
    w.insert(w.end(), b.letters.begin() + j, b.letters.end());
    out.add(Label(0, std::move(w)), 1);
    if (i == 0 || j == b.letters.size() || a.letters[i - 1].index == b.letters[j].index) break;
    --i;
    ++j;
  }
  return out;
}

Label UnitaryRing::conj_impl(const Label& a) const {
  std::vector<Label> w;
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it) w.emplace_back(it->index ^ 1);
  return Label(0, std::move(w));
}

Integer UnitaryRing::dim_impl(const Label& a) const {
  // dim(w) = m dim(w-) - [last two letters conjugate] dim(w--)
  std::vector<Integer> d(a.letters.size() + 1);
  d[0] = 1;
  for (std::size_t k = 1; k <= a.letters.size(); ++k) {
    d[k] = m_ * d[k - 1];
    if (k >= 2 && a.letters[k - 1].index != a.letters[k - 2].index) d[k] -= d[k - 2];
  }
  return d.back();
}

std::string UnitaryRing::format_impl(const Label& a) const {
  if (a.letters.empty()) return "1";
  std::string out;
  for (const auto& c : a.letters) {
    if (!out.empty()) out += ' ';
    out += c.index == 0 ? "v" : "vb";
  }
  return out;
}

Label UnitaryRing::parse_impl(std::string_view text) const {
  Label w;
  if (text == "1") return w;
  auto toks = split_tokens(text);
  if (toks.empty()) throw DomainError("empty U+ word");
  for (const auto& t : toks) {
    if (t == "v")
      w.letters.emplace_back(0);
    else if (t == "vb")
      w.letters.emplace_back(1);
    else
      throw DomainError("'" + t + "' is not v or vb");
  }
  return w;
}

std::vector<Label> UnitaryRing::generate(int bound) const {
  std::vector<Label> out;
  std::vector<Label> level{Label()};
  out.push_back(Label());
  for (int len = 1; len <= bound; ++len) {
    std::vector<Label> next;
    for (const auto& w : level)
      for (int c = 0; c < 2; ++c) {
        Label x = w;
        x.letters.emplace_back(c);
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------- Free product

FreeProductRing::FreeProductRing(std::vector<RingPtr> factors) : factors_(std::move(factors)) {
  if (factors_.size() < 2) throw ConstructionError("free product needs at least two factors");
  for (const auto& f : factors_)
    if (!f) throw ConstructionError("null factor in free product");
}

std::string FreeProductRing::name() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += " * ";
    auto n = f->name();
    bool wrap = dynamic_cast<const FreeProductRing*>(f.get()) != nullptr;
    out += wrap ? "(" + n + ")" : n;
  }
  return out;
}

bool FreeProductRing::contains(const Label& l) const {
  if (l.index != 0) return false;
  for (std::size_t i = 0; i < l.letters.size(); ++i) {
    const auto& c = l.letters[i];
    if (c.index < 0 || c.index >= static_cast<std::int64_t>(factors_.size()) || c.letters.size() != 1) return false;
    const auto& f = *factors_[c.index];
    if (!f.contains(c.letters[0]) || c.letters[0] == f.unit()) return false;
    if (i > 0 && l.letters[i - 1].index == c.index) return false;
  }
  return true;
}

std::vector<Label> FreeProductRing::generators() const {
  std::vector<Label> out;
  for (std::size_t f = 0; f < factors_.size(); ++f)
    for (const auto& g : factors_[f]->generators()) out.push_back(letter(f, g));
  return out;
}

Label FreeProductRing::letter(std::size_t f, const Label& factor_label) const {
  const auto& ring = *factors_.at(f);
  if (!ring.contains(factor_label)) throw DomainError("label does not belong to factor " + ring.name());
  if (factor_label == ring.unit()) return Label();
  return Label(0, {Label(static_cast<std::int64_t>(f), {factor_label})});
}

Label FreeProductRing::concat(const Label& a, const Label& b) {
  Label w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

ZCombo FreeProductRing::tensor_impl(const Label& a, const Label& b) const {
  ZCombo out;
  // Peel matching junction letters: w x (x) y w' = sum over z in x (x) y.
  std::function<void(std::size_t, std::size_t, const Integer&)> rec = [&](std::size_t ia, std::size_t jb,
                                                                          const Integer& c) {
    if (ia == 0 || jb == b.letters.size() || a.letters[ia - 1].index != b.letters[jb].index) {
      Label w(0, std::vector<Label>(a.letters.begin(), a.letters.begin() + ia));
      w.letters.insert(w.letters.end(), b.letters.begin() + jb, b.letters.end());
      out.add(w, c);
      return;
    }
    std::size_t f = a.letters[ia - 1].index;
    const auto& ring = *factors_[f];
    ZCombo junction = ring.tensor_impl(payload(a.letters[ia - 1]), payload(b.letters[jb]));
    for (const auto& [z, k] : junction) {
      if (z == ring.unit()) {
        rec(ia - 1, jb + 1, c * k);
        continue;
      }
      Label w(0, std::vector<Label>(a.letters.begin(), a.letters.begin() + (ia - 1)));
      w.letters.emplace_back(static_cast<std::int64_t>(f), std::vector<Label>{z});
      w.letters.insert(w.letters.end(), b.letters.begin() + (jb + 1), b.letters.end());
      out.add(w, c * k);
    }
  };
  rec(a.letters.size(), 0, 1);
  return out;
}

Label FreeProductRing::conj_impl(const Label& a) const {
  Label w;
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    w.letters.emplace_back(it->index, std::vector<Label>{factors_[it->index]->conj_impl(payload(*it))});
  return w;
}

Integer FreeProductRing::dim_impl(const Label& a) const {
  Integer d = 1;
  for (const auto& c : a.letters) d *= factors_[c.index]->dim_impl(payload(c));
  return d;
}

int FreeProductRing::degree_impl(const Label& a) const {
  int d = 0;
  for (const auto& c : a.letters) d += factors_[c.index]->letter_weight(payload(c));
  return d;
}

int FreeProductRing::token_factor(std::string_view token, std::string* stripped) const {
  int found = -1;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    if (factors_[f]->accepts_token(token)) {
      if (found >= 0) throw DomainError("ambiguous letter '" + std::string(token) + "'; qualify it with @k");
      found = static_cast<int>(f);
    }
  }
  if (found >= 0) {
    if (stripped) *stripped = std::string(token);
    return found;
  }
  auto at = token.rfind('@');
  if (at == std::string_view::npos) return -1;
  auto idx = parse_int(token.substr(at + 1));
  if (!idx || *idx < 1 || *idx > static_cast<long long>(factors_.size())) return -1;
  auto inner = token.substr(0, at);
  if (!factors_[*idx - 1]->accepts_token(inner)) return -1;
  if (stripped) *stripped = std::string(inner);
  return static_cast<int>(*idx - 1);
}

bool FreeProductRing::accepts_token(std::string_view token) const {
  try {
    return token_factor(token, nullptr) >= 0;
  } catch (const DomainError&) {
    return true;
  }
}

std::string FreeProductRing::format_impl(const Label& a) const {
  if (a.letters.empty()) return "1";
  std::string out;
  for (const auto& c : a.letters) {
    std::size_t f = c.index;
    for (const auto& tok : split_tokens(factors_[f]->format_impl(payload(c)))) {
      int owners = 0;
      for (const auto& r : factors_) owners += r->accepts_token(tok) ? 1 : 0;
      if (!out.empty()) out += ' ';
      out += tok;
      if (owners > 1) out += "@" + std::to_string(f + 1);
    }
  }
  return out;
}

Label FreeProductRing::parse_impl(std::string_view text) const {
  if (text == "1") return Label();
  auto toks = split_tokens(text);
  if (toks.empty()) throw DomainError("empty word");
  Label w;
  std::size_t i = 0;
  while (i < toks.size()) {
    std::string s;
    int f = token_factor(toks[i], &s);
    if (f < 0) throw DomainError("'" + toks[i] + "' is not a letter of any factor of " + name());
    std::string group = s;
    std::size_t j = i + 1;
    while (j < toks.size()) {
      std::string s2;
      int f2 = token_factor(toks[j], &s2);
      if (f2 != f) break;
      group += " " + s2;
      ++j;
    }
    Label l = factors_[f]->parse(group);
    if (l == factors_[f]->unit()) throw DomainError("unit letter '" + group + "' inside a word");
    w.letters.emplace_back(f, std::vector<Label>{l});
    i = j;
  }
  return w;
}

std::vector<Label> FreeProductRing::generate(int bound) const {
  std::vector<std::vector<std::pair<Label, int>>> pool(factors_.size());
  for (std::size_t f = 0; f < factors_.size(); ++f)
    for (auto& l : factors_[f]->enumerate(bound))
      if (l != factors_[f]->unit()) pool[f].emplace_back(l, factors_[f]->letter_weight(l));
  std::vector<Label> out;
  Label cur;
  std::function<void(int, int)> rec = [&](int last, int left) {
    out.push_back(cur);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      if (static_cast<int>(f) == last) continue;
      for (const auto& [l, wgt] : pool[f]) {
        if (wgt > left) continue;
        cur.letters.emplace_back(static_cast<std::int64_t>(f), std::vector<Label>{l});
        rec(static_cast<int>(f), left - wgt);
        cur.letters.pop_back();
      }
    }
  };
  rec(-1, bound);
  return out;
}

// ---------------------------------------------------------------- Wreath

WreathRing::WreathRing(RingPtr base) : base_(std::move(base)) {
  if (!base_) throw ConstructionError("wreath of a null ring");
  ambient_ = std::make_shared<FreeProductRing>(std::vector<RingPtr>{base_, make_su2()});
}

bool WreathRing::contains(const Label& l) const {
  if (l.index != 0) return false;
  return std::all_of(l.letters.begin(), l.letters.end(), [&](const Label& c) { return base_->contains(c); });
}

std::vector<Label> WreathRing::generators() const {
  std::vector<Label> out{word({base_->unit()})};
  for (const auto& g : base_->generators()) out.push_back(word({g}));
  return out;
}

std::optional<Label> WreathRing::default_fundamental() const {
  auto f = base_->default_fundamental();
  if (!f) return std::nullopt;
  return word({*f});
}

Label WreathRing::lambda(const Label& w) const {
  check(w);
  if (w.letters.empty()) return Label();
  const Label e = base_->unit();
  auto su = [](std::int64_t k) { return Label(1, {Label(k)}); };
  if (std::all_of(w.letters.begin(), w.letters.end(), [&](const Label& c) { return c == e; }))
    return Label(0, {su(2 * static_cast<std::int64_t>(w.letters.size()))});
  // u^{2 n_1 + 1} b_1 u^{2 n_2 + 2} b_2 ... b_r u^{2 n_{r+1} + 1}, n_i = unit letters between.
  Label out;
  std::int64_t units = 0;
  bool seen = false;
  for (const auto& c : w.letters) {
    if (c == e) {
      ++units;
      continue;
    }
    out.letters.push_back(su(2 * units + (seen ? 2 : 1)));
    out.letters.emplace_back(0, std::vector<Label>{c});
    units = 0;
    seen = true;
  }
  out.letters.push_back(su(2 * units + 1));
  if (!ambient_->contains(out)) throw std::logic_error("lambda produced a non-canonical word");
  return out;
}

ZCombo WreathRing::lambda(const ZCombo& c) const {
  ZCombo out;
  for (const auto& [l, k] : c) out.add(lambda(l), k);
  return out;
}

ZCombo WreathRing::tensor_impl(const Label& a, const Label& b) const {
  ZCombo out;
  std::function<void(std::size_t, std::size_t, const Integer&)> rec = [&](std::size_t ia, std::size_t jb,
                                                                          const Integer& c) {
    Label ab(0, std::vector<Label>(a.letters.begin(), a.letters.begin() + ia));
    ab.letters.insert(ab.letters.end(), b.letters.begin() + jb, b.letters.end());
    out.add(ab, c);
    if (ia == 0 || jb == b.letters.size()) return;
    const Label& x = a.letters[ia - 1];
    const Label& y = b.letters[jb];
    for (const auto& [beta, k] : base_->tensor_impl(x, y)) {
      Label w(0, std::vector<Label>(a.letters.begin(), a.letters.begin() + (ia - 1)));
      w.letters.push_back(beta);
      w.letters.insert(w.letters.end(), b.letters.begin() + (jb + 1), b.letters.end());
      out.add(w, c * k);
    }
    if (base_->conj_impl(x) == y) rec(ia - 1, jb + 1, c);
  };
  rec(a.letters.size(), 0, 1);
  return out;
}

Label WreathRing::conj_impl(const Label& a) const {
  Label w;
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it) w.letters.push_back(base_->conj_impl(*it));
  return w;
}

Integer WreathRing::dim_impl(const Label& a) const { return ambient_->dim_impl(lambda(a)); }

int WreathRing::degree_impl(const Label& a) const {
  int d = 0;
  for (const auto& c : a.letters) d += 1 + base_->degree_impl(c);
  return d;
}

std::string WreathRing::format_impl(const Label& a) const {
  if (a.letters.empty()) return "1";
  std::string out;
  for (const auto& c : a.letters) out += "[" + base_->format_impl(c) + "]";
  return out;
}

Label WreathRing::parse_impl(std::string_view text) const {
  Label w;
  if (text == "1") return w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '[') throw DomainError("expected '[' at position " + std::to_string(i) + " in '" + std::string(text) + "'");
    int depth = 0;
    std::size_t j = i;
    for (; j < text.size(); ++j) {
      if (text[j] == '[') ++depth;
      if (text[j] == ']' && --depth == 0) break;
    }
    if (j == text.size()) throw DomainError("unbalanced '[' in '" + std::string(text) + "'");
    w.letters.push_back(base_->parse(text.substr(i + 1, j - i - 1)));
    i = j + 1;
  }
  if (w.letters.empty()) throw DomainError("empty wreath word");
  return w;
}

std::vector<Label> WreathRing::generate(int bound) const {
  std::vector<std::pair<Label, int>> pool;
  for (auto& l : base_->enumerate(bound - 1)) pool.emplace_back(l, 1 + base_->degree_impl(l));
  std::vector<Label> out;
  Label cur;
  std::function<void(int)> rec = [&](int left) {
    out.push_back(cur);
    for (const auto& [l, wgt] : pool) {
      if (wgt > left) continue;
      cur.letters.push_back(l);
      rec(left - wgt);
      cur.letters.pop_back();
    }
  };
  rec(bound);
  return out;
}

// ---------------------------------------------------------------- factories

RingPtr make_su2() { return std::make_shared<ChebyshevRing>("SUq2", 'u', 2); }

RingPtr make_orthogonal(int n) {
  if (n < 2) throw ConstructionError("O+(n) needs n >= 2");
  return std::make_shared<ChebyshevRing>("O+(" + std::to_string(n) + ")", 'v', n);
}

RingPtr make_unitary(int m) { return std::make_shared<UnitaryRing>(m); }
RingPtr make_cyclic(int k) { return std::make_shared<CyclicRing>(k); }
RingPtr make_free_group(int n) { return std::make_shared<FreeGroupRing>(n); }
RingPtr make_free_abelian(int n) { return std::make_shared<FreeAbelianRing>(n); }
RingPtr make_circle() { return std::make_shared<CircleRing>(); }

std::shared_ptr<const FreeProductRing> make_free_product(std::vector<RingPtr> factors) {
  return std::make_shared<FreeProductRing>(std::move(factors));
}

std::shared_ptr<const WreathRing> make_wreath(RingPtr base) { return std::make_shared<WreathRing>(std::move(base)); }

}  // namespace fusion
