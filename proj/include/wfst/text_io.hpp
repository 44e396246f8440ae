#ifndef WFST_TEXT_IO_HPP_
#define WFST_TEXT_IO_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "wfst/transducer.hpp"

namespace wfst {

// Text format, one record per line, fields separated by tabs or spaces:
//   @initial  state [weight]        (only before the first transition)
//   src dst ilabel olabel [weight]  (transition)
//   state [weight]                  (final state)
// Missing weights are the semiring one, `inf` is accepted, blank lines and
// lines starting with '#' are skipped. Without an @initial line the source of
// the first transition is the initial state. Errors are kParse and name the
// line number.
Transducer read_text(std::istream& in, Semiring semiring);
Transducer read_text(const std::string& path, Semiring semiring);
// Same, with the semiring given by name ("tropical", "probability", "log").
Transducer read_text(const std::string& path, std::string_view semiring);
void write_text(const Transducer& t, std::ostream& out);
void write_text(const Transducer& t, const std::string& path);

// Shortest decimal that reads back to the same double; "inf" for infinity.
std::string format_weight(Weight w);

// Graphviz rendering: initial states as input arrows, finals double-circled.
std::string to_dot(const Transducer& t, std::string_view name = "fst");

// `symbol<TAB>id` sidecar files.
using SymbolTable = std::map<std::string, Label>;
SymbolTable read_symbols(std::istream& in);
void write_symbols(const SymbolTable& symbols, std::ostream& out);

}  // namespace wfst

#endif  // WFST_TEXT_IO_HPP_
