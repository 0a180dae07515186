#include "cltl/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "cltl/error.hpp"

namespace cltl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

bool parse_uint(std::string_view s, std::uint64_t& v) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

struct RawTransition {
  std::uint64_t src, dst;
  std::vector<std::pair<std::string, bool>> lits;
  std::vector<std::uint64_t> acc;
  std::size_t line;
};

}  // namespace

CounterAutomaton parse_model(std::string_view text) {
  std::map<std::string, std::size_t> seen;  // key -> line
  std::vector<std::string> ap_names;
  std::uint64_t states = 0, init = 0, accsets = 0;
  bool have_states = false;
  std::vector<RawTransition> raw;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected `key: value`", line_no, 1);
    std::string key(trim(line.substr(0, colon)));
    std::string_view value = trim(line.substr(colon + 1));
    auto fail = [&](const std::string& what) -> ParseError {
      return ParseError(what, line_no, colon + 2);
    };
    if (key != "trans") {
      if (seen.count(key)) throw fail("duplicate `" + key + ":` declaration");
      seen.emplace(key, line_no);
    }

    if (key == "ap") {
      for (auto name : split_ws(value)) {
        if (!is_valid_prop_name(name))
          throw fail("invalid proposition name `" + std::string(name) + "`");
        ap_names.emplace_back(name);
      }
    } else if (key == "states" || key == "init" || key == "accsets") {
      std::uint64_t v = 0;
      if (!parse_uint(value, v)) throw fail("expected a nonnegative integer");
      if (key == "states") {
        states = v;
        have_states = true;
      } else if (key == "init") {
        init = v;
      } else {
        accsets = v;
      }
    } else if (key == "trans") {
      auto parts = split_ws(value);
      if (parts.size() != 4)
        throw fail("expected `trans: SRC DST CUBE ACC`");
      RawTransition t{};
      t.line = line_no;
      if (!parse_uint(parts[0], t.src) || !parse_uint(parts[1], t.dst))
        throw fail("transition endpoints must be nonnegative integers");
      if (parts[2] != "true") {
        for (auto lit : split(parts[2], '&')) {
          bool pos = true;
          if (!lit.empty() && lit[0] == '!') {
            pos = false;
            lit.remove_prefix(1);
          }
          if (!is_valid_prop_name(lit))
            throw fail("malformed cube `" + std::string(parts[2]) + "`");
          t.lits.emplace_back(std::string(lit), pos);
        }
      }
      std::string_view acc = parts[3];
      if (acc.size() < 2 || acc.front() != '{' || acc.back() != '}')
        throw fail("acceptance must be written `{i,j,...}`");
      acc = acc.substr(1, acc.size() - 2);
      if (!acc.empty()) {
        for (auto idx : split(acc, ',')) {
          std::uint64_t v = 0;
          if (!parse_uint(idx, v))
            throw fail("malformed acceptance set index");
          t.acc.push_back(v);
        }
      }
      raw.push_back(std::move(t));
    } else {
      throw ParseError("unknown declaration `" + key + "`", line_no, 1);
    }
  }

  if (!have_states) throw ValidationError("missing `states:` declaration");
  if (states == 0) throw ValidationError("a model needs at least one state");
  if (init >= states)
    throw ValidationError("initial state " + std::to_string(init) +
                          " out of range (states: " + std::to_string(states) +
                          ")");

  std::vector<PropId> aps;
  for (const auto& n : ap_names) aps.push_back(intern_prop(n));
  CounterAutomaton a(states, static_cast<State>(init), 0, accsets);
  a.set_aps(aps);
  for (const auto& t : raw) {
    auto where = " (line " + std::to_string(t.line) + ")";
    if (t.src >= states || t.dst >= states)
      throw ValidationError("transition endpoint out of range" + where);
    std::vector<CubeLiteral> lits;
    for (const auto& [name, pos] : t.lits) {
      if (std::find(ap_names.begin(), ap_names.end(), name) == ap_names.end())
        throw ValidationError("proposition `" + name + "` not declared in ap" +
                              where);
      lits.push_back({intern_prop(name), pos});
    }
    auto cube = Cube::try_make(std::move(lits));
    if (!cube) throw ValidationError("inconsistent cube" + where);
    Transition tr;
    tr.src = static_cast<State>(t.src);
    tr.dst = static_cast<State>(t.dst);
    tr.cube = std::move(*cube);
    tr.acc.resize(accsets);
    for (auto j : t.acc) {
      if (j >= accsets)
        throw ValidationError("acceptance index " + std::to_string(j) +
                              " not below accsets" + where);
      tr.acc.set(j);
    }
    a.add_transition(std::move(tr));
  }
  return a;
}

CounterAutomaton load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open model file `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string format_model(const CounterAutomaton& a) {
  std::ostringstream os;
  os << "ap:";
  for (PropId p : a.aps()) os << ' ' << prop_name(p);
  os << "\nstates: " << a.num_states() << "\ninit: " << a.initial()
     << "\naccsets: " << a.num_acc_sets() << '\n';
  for (const Transition& t : a.transitions()) {
    os << "trans: " << t.src << ' ' << t.dst << ' ' << t.cube.to_string()
       << " {";
    bool first = true;
    for (std::size_t j = 0; j < t.acc.size(); ++j) {
      if (!t.acc.test(j)) continue;
      os << (first ? "" : ",") << j;
      first = false;
    }
    os << "}\n";
  }
  return os.str();
}

// ── Lassos ──────────────────────────────────────────────────────────────────

LassoWord parse_lasso(std::string_view text) {
  LassoWord u;
  bool in_cycle = false;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    return ParseError(what, 1, i + 1);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '|') {
      if (in_cycle) throw fail("second `|` in lasso word");
      in_cycle = true;
      ++i;
    } else if (c == '{') {
      std::size_t close = text.find('}', i);
      if (close == std::string_view::npos) throw fail("unterminated letter");
      std::vector<PropId> props;
      std::string_view body = trim(text.substr(i + 1, close - i - 1));
      if (!body.empty()) {
        for (auto name : split(body, ',')) {
          name = trim(name);
          if (!is_valid_prop_name(name))
            throw fail("invalid proposition `" + std::string(name) + "`");
          props.push_back(intern_prop(name));
        }
      }
      (in_cycle ? u.cycle : u.prefix).emplace_back(std::move(props));
      i = close + 1;
    } else {
      throw fail(std::string("unexpected character `") + c + "`");
    }
  }
  if (!in_cycle) throw ParseError("lasso word needs `|` before the cycle", 1, i + 1);
  if (u.cycle.empty()) throw ParseError("lasso cycle must be nonempty", 1, i + 1);
  return u;
}

std::string format_letter(const Letter& l) {
  std::vector<std::string> names;
  for (PropId p : l.props()) names.push_back(prop_name(p));
  std::sort(names.begin(), names.end());
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ',';
    s += names[i];
  }
  return s + "}";
}

std::string format_lasso(const LassoWord& u) {
  std::string s;
  for (const auto& l : u.prefix) s += format_letter(l) + " ";
  s += "|";
  for (const auto& l : u.cycle) s += " " + format_letter(l);
  return s;
}

}  // namespace cltl
