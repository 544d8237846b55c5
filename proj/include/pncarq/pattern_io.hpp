#pragma once

#include <stdexcept>
#include <string>

#include "pncarq/atom.hpp"

namespace pncarq {

// Parse or validation failure of a pattern document, with the offending line.
class PatternError : public std::runtime_error {
  public:
    PatternError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// Line-oriented ASCII pattern document. Sections:
//   [nodes]  node ids, whitespace separated
//   [links]  <id> <kind> <lsp>
//   [flows]  <id> <source> <destination> <chain link ids...>
//   [slots]  <index>: <tx>... | <rx>...
//            tx: NODE->FLOW or NODE->@LINK[+@LINK...]
//            rx: NODE<-LINK:NODE[+NODE...]
// '#' starts a comment. The parsed atom is validated before being returned.
AtomSpec load_pattern(const std::string& text);

// Inverse of load_pattern: serialize(a) reparses to an equal AtomSpec.
std::string serialize_pattern(const AtomSpec& atom);

}  // namespace pncarq
