#include "sk/input.hpp"

#include <sstream>

namespace sk {

namespace {

enum class Block { None, Ring, Ideal, Module };

std::string strip(const std::string& line, size_t& offset) {
  std::string s = line.substr(0, line.find('#'));
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  offset = b;
  return s.substr(b, e - b + 1);
}

Polynomial parse_generator(const RingPtr& r, const std::string& text, int line, size_t offset) {
  Polynomial p;
  try {
    p = parse_polynomial(r, text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line, e.column + static_cast<int>(offset));
  }
  if (p.is_zero()) throw ParseError("zero generator", line, static_cast<int>(offset) + 1);
  if (!p.is_homogeneous()) throw ParseError("generator is not homogeneous", line, static_cast<int>(offset) + 1);
  if (p.degree() < 1) throw ParseError("generator must have positive degree", line, static_cast<int>(offset) + 1);
  return p;
}

}  // namespace

RingSpec InputSpec::spec() const { return RingSpec::make(ring, ideal, regular); }

std::optional<RingSpec> InputSpec::module_spec() const {
  if (!has_module) return std::nullopt;
  auto gens = ideal;
  gens.insert(gens.end(), module.begin(), module.end());
  return RingSpec::make(ring, gens);
}

InputSpec parse_input(const std::string& text, std::optional<uint32_t> characteristic) {
  InputSpec in;
  std::vector<std::string> vars;
  std::vector<int> weights;
  uint32_t p = kDefaultCharacteristic;
  std::vector<std::tuple<Block, std::string, int, size_t>> pending;
  Block block = Block::None;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool saw_ring = false, saw_ideal = false;
  while (std::getline(is, raw)) {
    ++lineno;
    size_t off = 0;
    std::string line = strip(raw, off);
    if (line.empty()) continue;
    if (line == "ring") {
      block = Block::Ring;
      saw_ring = true;
      continue;
    }
    if (line == "ideal") {
      block = Block::Ideal;
      saw_ideal = true;
      continue;
    }
    if (line == "module") {
      block = Block::Module;
      in.has_module = true;
      continue;
    }
    switch (block) {
      case Block::None:
        throw ParseError("expected 'ring'", lineno, static_cast<int>(off) + 1);
      case Block::Ring: {
        std::istringstream ls(line);
        std::string key, tok;
        ls >> key;
        if (key == "vars") {
          while (ls >> tok) vars.push_back(tok);
        } else if (key == "weights") {
          while (ls >> tok) {
            try {
              weights.push_back(std::stoi(tok));
            } catch (const std::exception&) {
              throw ParseError("bad weight '" + tok + "'", lineno, static_cast<int>(off + line.find(tok)) + 1);
            }
            if (weights.back() < 1) throw ParseError("weights must be positive", lineno, static_cast<int>(off) + 1);
          }
        } else if (key == "char") {
          long v = -1;
          if (!(ls >> v) || v < 0 || (v > 0 && !is_prime(static_cast<uint32_t>(v))))
            throw ParseError("characteristic must be 0 or a prime", lineno, static_cast<int>(off) + 1);
          p = static_cast<uint32_t>(v);
        } else {
          throw ParseError("unknown ring key '" + key + "'", lineno, static_cast<int>(off) + 1);
        }
        break;
      }
      case Block::Ideal:
        if (line == "regular") {
          in.regular = true;
          break;
        }
        pending.emplace_back(block, line, lineno, off);
        break;
      case Block::Module:
        pending.emplace_back(block, line, lineno, off);
        break;
    }
  }
  if (!saw_ring) throw ParseError("missing ring block", lineno, 1);
  if (!saw_ideal) throw ParseError("missing ideal block", lineno, 1);
  if (vars.empty()) throw ParseError("ring has no variables", lineno, 1);
  if (!weights.empty() && weights.size() != vars.size())
    throw ParseError("weights and vars differ in length", lineno, 1);
  if (characteristic) p = *characteristic;
  in.ring = make_ring(vars, Field{p}, weights);
  for (auto& [b, t, l, o] : pending) (b == Block::Ideal ? in.ideal : in.module).push_back(parse_generator(in.ring, t, l, o));
  if (in.ideal.empty()) throw ParseError("ideal has no generators", lineno, 1);
  return in;
}

std::vector<Polynomial> parse_module_block(const std::string& text, const RingPtr& ring) {
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool in_block = false;
  std::vector<Polynomial> out;
  while (std::getline(is, raw)) {
    ++lineno;
    size_t off = 0;
    std::string line = strip(raw, off);
    if (line.empty()) continue;
    if (line == "module") {
      in_block = true;
      continue;
    }
    if (line == "ring" || line == "ideal") {
      in_block = false;
      continue;
    }
    if (in_block) out.push_back(parse_generator(ring, line, lineno, off));
  }
  if (out.empty()) throw ParseError("module file has no module block", lineno, 1);
  return out;
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sk
