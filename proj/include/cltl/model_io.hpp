// Text formats: model files and lasso words.
//
// Model file, one declaration per line, `#` starts a comment:
//
//   ap: a b
//   states: 2
//   init: 0
//   accsets: 1
//   trans: 0 1 a&!b {0}
//   trans: 1 0 true {}
//
// Lasso word: braced letters, a bar, then the (nonempty) cycle:
//
//   {a,b} {} | {a}

#ifndef CLTL_MODEL_IO_HPP
#define CLTL_MODEL_IO_HPP

#include <string>
#include <string_view>

#include "cltl/automaton.hpp"

namespace cltl {

/// Throws FileError, ParseError (with line) or ValidationError.
CounterAutomaton load_model(const std::string& path);
CounterAutomaton parse_model(std::string_view text);
std::string format_model(const CounterAutomaton& a);

LassoWord parse_lasso(std::string_view text);
std::string format_lasso(const LassoWord& u);
std::string format_letter(const Letter& l);

}  // namespace cltl

#endif  // CLTL_MODEL_IO_HPP
