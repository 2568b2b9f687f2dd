#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sk/resolution.hpp"

namespace sk {

// Line-oriented input:
//   ring                      vars x y z / weights 1 1 1 / char 0
//   ideal                     one generator per line; a line "regular" flags a regular sequence
//   module                    extra generators of J for the cyclic module Q/J, J = I + (module) (optional)
// '#' starts a comment. Blocks may appear in any order after ring.
struct InputSpec {
  RingPtr ring;
  std::vector<Polynomial> ideal;
  std::vector<Polynomial> module;
  bool has_module = false;
  bool regular = false;

  RingSpec spec() const;
  std::optional<RingSpec> module_spec() const;  // Q/J with J = I + (module)
};

// Throws ParseError with 1-based line and column.
InputSpec parse_input(const std::string& text, std::optional<uint32_t> characteristic = std::nullopt);
// Reads only the module block of `text` over an existing ring.
std::vector<Polynomial> parse_module_block(const std::string& text, const RingPtr& ring);

// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(const std::string& data);

}  // namespace sk
