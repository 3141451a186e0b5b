#include "fusion/spec.hpp"

#include <cctype>
#include <vector>

#include "fusion/complexification.hpp"
#include "fusion/rings.hpp"

namespace fusion {

namespace {

std::string annotate(const std::string& message, std::string_view text, std::size_t pos) {
  std::string out = "parse error at column " + std::to_string(pos + 1) + ": " + message + "\n  ";
  out += text;
  out += "\n  " + std::string(pos, ' ') + "^";
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RingPtr parse() {
    RingPtr r = spec();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SpecError(msg, text_, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw SpecError(msg, text_, at); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  int integer(int min_value, const char* what) {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    if (pos_ - start > 6) fail_at(std::string(what) + " is too large", start);
    int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (v < min_value) fail_at(std::string(what) + " must be at least " + std::to_string(min_value), start);
    return v;
  }

  RingPtr spec() {
    std::vector<RingPtr> parts{factor()};
    while (accept("*")) parts.push_back(factor());
    if (parts.size() == 1) return parts.front();
    return make_free_product(std::move(parts));
  }

  RingPtr factor() {
    skip();
    const std::size_t start = pos_;
    if (accept("(")) {
      RingPtr r = spec();
      expect(")");
      return r;
    }
    if (accept("wreath")) {
      expect("(");
      RingPtr base = spec();
      expect(")");
      return make_wreath(base);
    }
    if (accept("tilde")) {
      expect("(");
      RingPtr base = spec();
      std::vector<Label> fundamental;
      if (accept(";")) {
        do {
          skip();
          const std::size_t at = pos_;
          while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
          std::string label(text_.substr(at, pos_ - at));
          try {
            fundamental.push_back(base->parse(label));
          } catch (const DomainError& e) {
            fail_at(std::string("bad fundamental label: ") + e.what(), at);
          }
        } while (accept(","));
      } else if (auto f = base->default_fundamental()) {
        fundamental.push_back(*f);
      } else {
        fail("tilde(" + base->name() + ") needs an explicit fundamental label after ';'");
      }
      expect(")");
      try {
        return make_tilde(base, fundamental);
      } catch (const DomainError& e) {
        fail_at(e.what(), start);
      }
    }
    if (accept("SUq2")) return make_su2();
    if (accept("S1")) return make_circle();
    if (accept("Z/")) return make_cyclic(integer(1, "group order"));
    if (accept("Z^")) return make_free_abelian(integer(1, "rank"));
    if (accept("F(")) {
      int n = integer(1, "rank");
      expect(")");
      return make_free_group(n);
    }
    if (accept("O+(")) {
      int n = integer(2, "O+ parameter");
      expect(")");
      return make_orthogonal(n);
    }
    if (accept("U+(")) {
      int m = integer(2, "U+ parameter");
      expect(")");
      return make_unitary(m);
    }
    if (pos_ >= text_.size()) fail("unexpected end of specification");
    fail("unknown group; expected Z/k, Z^n, F(n), SUq2, O+(n), U+(m), S1, wreath(...), tilde(...)");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SpecError::SpecError(const std::string& message, std::string_view text, std::size_t position)
    : ConstructionError(annotate(message, text, position)), position_(position) {}

RingPtr parse_group_spec(std::string_view text) { return Parser(text).parse(); }

}  // namespace fusion
