#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "fusion/ring.hpp"

namespace fusion {

/// Syntax error in a group specification; `position` is the 0-based offset
/// of the offending character.
class SpecError : public ConstructionError {
 public:
  SpecError(const std::string& message, std::string_view text, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses a group specification:
///   spec    := factor ('*' factor)*
///   factor  := atom | 'wreath(' spec ')' | 'tilde(' spec [';' label (',' label)*] ')' | '(' spec ')'
///   atom    := 'Z/' k | 'Z^' n | 'F(' n ')' | 'SUq2' | 'O+(' n ')' | 'U+(' m ')' | 'S1'
/// Whitespace is ignored between tokens; chains of '*' become one free product.
RingPtr parse_group_spec(std::string_view text);

}  // namespace fusion
