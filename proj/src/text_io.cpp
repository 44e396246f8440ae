#include "wfst/text_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "wfst/error.hpp"

namespace wfst {

namespace {

// Upper bound on state ids read from text, so a typo cannot allocate
// billions of states.
constexpr long long kMaxTextState = 1 << 26;

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) fields.push_back(s.substr(i, j - i));
    i = j;
  }
  return fields;
}

long long parse_int(std::string_view f, std::size_t line, const char* what, long long max) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec == std::errc::result_out_of_range || (ec == std::errc() && ptr == f.data() + f.size() && v > max)) {
    parse_error(line, std::string(what) + " out of range: '" + std::string(f) + "'");
  }
  if (ec != std::errc() || ptr != f.data() + f.size() || v < 0) {
    parse_error(line, std::string("invalid ") + what + ": '" + std::string(f) + "'");
  }
  return v;
}

Weight parse_weight(std::string_view f, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size() || std::isnan(v)) {
    parse_error(line, "invalid weight: '" + std::string(f) + "'");
  }
  return v;
}

}  // namespace

Transducer read_text(std::istream& in, Semiring semiring) {
  Transducer t(semiring);
  auto ensure = [&](long long q) { t.reserve_states(static_cast<StateId>(q) + 1); };
  std::string raw;
  std::size_t line = 0;
  bool seen_transition = false;
  bool seen_initial = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto fields = split_fields(raw);
    if (fields.empty() || fields[0].front() == '#') continue;
    try {
      if (fields[0] == "@initial") {
        if (seen_transition) parse_error(line, "@initial must precede all transitions");
        if (fields.size() < 2 || fields.size() > 3) parse_error(line, "expected '@initial state [weight]'");
        const long long q = parse_int(fields[1], line, "state", kMaxTextState);
        ensure(q);
        t.set_initial(static_cast<StateId>(q), fields.size() == 3 ? parse_weight(fields[2], line) : semiring.one());
        seen_initial = true;
      } else if (fields.size() == 4 || fields.size() == 5) {
        const long long src = parse_int(fields[0], line, "state", kMaxTextState);
        const long long dst = parse_int(fields[1], line, "state", kMaxTextState);
        const long long il = parse_int(fields[2], line, "label", std::numeric_limits<Label>::max());
        const long long ol = parse_int(fields[3], line, "label", std::numeric_limits<Label>::max());
        const Weight w = fields.size() == 5 ? parse_weight(fields[4], line) : semiring.one();
        ensure(std::max(src, dst));
        if (!seen_transition && !seen_initial) t.set_initial(static_cast<StateId>(src), semiring.one());
        t.add_transition(static_cast<StateId>(src),
                         {static_cast<Label>(il), static_cast<Label>(ol), w, static_cast<StateId>(dst)});
        seen_transition = true;
      } else if (fields.size() == 1 || fields.size() == 2) {
        const long long q = parse_int(fields[0], line, "state", kMaxTextState);
        ensure(q);
        t.set_final(static_cast<StateId>(q), fields.size() == 2 ? parse_weight(fields[1], line) : semiring.one());
      } else {
        parse_error(line, "expected 1, 2, 4 or 5 fields, got " + std::to_string(fields.size()));
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      parse_error(line, e.what());
    }
  }
  return t;
}

Transducer read_text(const std::string& path, Semiring semiring) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  try {
    return read_text(in, semiring);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

Transducer read_text(const std::string& path, std::string_view semiring) {
  const auto sr = semiring_from_name(semiring);
  if (!sr) throw Error(ErrorCode::kParse, "unknown semiring '" + std::string(semiring) + "'");
  return read_text(path, *sr);
}

std::string format_weight(Weight w) {
  if (std::isinf(w)) return w > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, ptr);
}

void write_text(const Transducer& t, std::ostream& out) {
  const Semiring& sr = t.semiring();
  for (StateId q : t.initial_states()) {
    out << "@initial\t" << q;
    if (t.initial_weight(q) != sr.one()) out << '\t' << format_weight(t.initial_weight(q));
    out << '\n';
  }
  for (StateId q = 0; q < t.num_states(); ++q) {
    for (const Arc& a : t.transitions(q)) {
      out << q << '\t' << a.nextstate << '\t' << a.ilabel << '\t' << a.olabel;
      if (a.weight != sr.one()) out << '\t' << format_weight(a.weight);
      out << '\n';
    }
  }
  for (StateId q = 0; q < t.num_states(); ++q) {
    if (!t.is_final(q)) continue;
    out << q;
    if (t.final_weight(q) != sr.one()) out << '\t' << format_weight(t.final_weight(q));
    out << '\n';
  }
}

void write_text(const Transducer& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  write_text(t, out);
}

std::string to_dot(const Transducer& t, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (StateId q = 0; q < t.num_states(); ++q) {
    os << "  " << q << " [shape=" << (t.is_final(q) ? "doublecircle" : "circle");
    if (t.is_final(q)) os << ", label=\"" << q << "/" << format_weight(t.final_weight(q)) << "\"";
    os << "];\n";
    if (t.is_initial(q)) {
      os << "  start" << q << " [shape=point];\n  start" << q << " -> " << q << " [label=\""
         << format_weight(t.initial_weight(q)) << "\"];\n";
    }
  }
  for (StateId q = 0; q < t.num_states(); ++q) {
    for (const Arc& a : t.transitions(q)) {
      os << "  " << q << " -> " << a.nextstate << " [label=\"" << a.ilabel << ":" << a.olabel << "/"
         << format_weight(a.weight) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

SymbolTable read_symbols(std::istream& in) {
  SymbolTable table;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto fields = split_fields(raw);
    if (fields.empty()) continue;
    if (fields.size() != 2) parse_error(line, "expected 'symbol id'");
    table[std::string(fields[0])] =
        static_cast<Label>(parse_int(fields[1], line, "label", std::numeric_limits<Label>::max()));
  }
  return table;
}

void write_symbols(const SymbolTable& symbols, std::ostream& out) {
  for (const auto& [s, id] : symbols) out << s << '\t' << id << '\n';
}

}  // namespace wfst
