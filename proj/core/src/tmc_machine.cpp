#include <algorithm>
#include <deque>
#include <map>
#include <nlohmann/json.hpp>

#include "pcr/tmc.hpp"

namespace pcr {

namespace {

using Json = nlohmann::ordered_json;

constexpr char kBlank = '_';
constexpr char kEnd = '>';

char symbol_of(const Json& j, const char* what) {
  if (!j.is_string() || j.get<std::string>().size() != 1)
    throw Error(std::string("machine: ") + what + " must be a one-character string");
  return j.get<std::string>()[0];
}

Move move_of(const Json& j) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "L") return Move::L;
  if (s == "R") return Move::R;
  if (s == "S") return Move::S;
  throw Error("machine: move must be \"L\", \"R\" or \"S\"");
}

std::string move_name(Move m) { return m == Move::L ? "L" : m == Move::R ? "R" : "S"; }

std::string fresh_state(const MachineSpec& m, const std::string& base) {
  std::string name = base;
  while (std::find(m.states.begin(), m.states.end(), name) != m.states.end()) name += "'";
  return name;
}

std::map<std::pair<std::string, char>, std::vector<Transition>> by_key(const MachineSpec& m) {
  std::map<std::pair<std::string, char>, std::vector<Transition>> out;
  for (const auto& t : m.transitions) out[{t.from, t.read}].push_back(t);
  return out;
}

bool uniform(const std::vector<Transition>& ts) {
  return std::all_of(ts.begin(), ts.end(), [&](const Transition& t) {
    return t.write == ts.front().write && t.move == ts.front().move;
  });
}

// Every (state, symbol) pair gets a single write and move.
void make_uniform(MachineSpec& m) {
  std::vector<Transition> out;
  for (auto& [key, ts] : by_key(m)) {
    if (uniform(ts)) {
      out.insert(out.end(), ts.begin(), ts.end());
      continue;
    }
    std::map<std::pair<char, Move>, std::vector<Transition>> groups;
    for (const auto& t : ts) groups[{t.write, t.move}].push_back(t);
    std::size_t g = 0;
    for (auto& [wm, members] : groups) {
      const std::string choice = fresh_state(m, key.first + "#" + std::string(1, key.second) + "#" + std::to_string(g++));
      m.states.push_back(choice);
      out.push_back({key.first, key.second, choice, key.second, Move::S});
      for (const auto& t : members) out.push_back({choice, key.second, t.to, t.write, t.move});
    }
  }
  m.transitions = std::move(out);
}

}  // namespace

MachineSpec machine_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(std::string("machine: invalid JSON: ") + e.what());
  }
  MachineSpec m;
  try {
    for (const auto& s : j.at("states")) m.states.push_back(s.get<std::string>());
    for (const auto& s : j.at("tape_alphabet")) m.tape_alphabet.push_back(symbol_of(s, "tape symbol"));
    m.start = j.at("start").get<std::string>();
    for (const auto& s : j.at("accept")) m.accept.insert(s.get<std::string>());
    for (const auto& t : j.at("transitions")) {
      m.transitions.push_back({t.at("from").get<std::string>(), symbol_of(t.at("read"), "read"),
                               t.at("to").get<std::string>(), symbol_of(t.at("write"), "write"),
                               move_of(t.at("move"))});
    }
  } catch (const Json::exception& e) {
    throw Error(std::string("machine: ") + e.what());
  }
  validate_machine(m);
  return m;
}

std::string to_json(const MachineSpec& m) {
  Json j;
  j["states"] = m.states;
  Json alphabet = Json::array();
  for (char c : m.tape_alphabet) alphabet.push_back(std::string(1, c));
  j["tape_alphabet"] = alphabet;
  j["start"] = m.start;
  j["accept"] = m.accept;
  Json ts = Json::array();
  for (const auto& t : m.transitions)
    ts.push_back({{"from", t.from}, {"read", std::string(1, t.read)}, {"to", t.to},
                  {"write", std::string(1, t.write)}, {"move", move_name(t.move)}});
  j["transitions"] = ts;
  return j.dump(2);
}

void validate_machine(const MachineSpec& m) {
  auto has_state = [&](const std::string& s) { return std::find(m.states.begin(), m.states.end(), s) != m.states.end(); };
  auto has_symbol = [&](char c) {
    return std::find(m.tape_alphabet.begin(), m.tape_alphabet.end(), c) != m.tape_alphabet.end();
  };
  std::set<std::string> states(m.states.begin(), m.states.end());
  if (states.size() != m.states.size()) throw Error("machine: duplicate state");
  std::set<char> symbols(m.tape_alphabet.begin(), m.tape_alphabet.end());
  if (symbols.size() != m.tape_alphabet.size()) throw Error("machine: duplicate tape symbol");
  for (char c : {kBlank, kEnd, '0', '1'})
    if (!has_symbol(c)) throw Error(std::string("machine: tape alphabet lacks '") + c + "'");
  if (!has_state(m.start)) throw Error("machine: unknown start state '" + m.start + "'");
  for (const auto& a : m.accept)
    if (!has_state(a)) throw Error("machine: unknown accepting state '" + a + "'");
  for (const auto& t : m.transitions) {
    const std::string where = "machine: transition (" + t.from + ", " + t.read + "): ";
    if (!has_state(t.from) || !has_state(t.to)) throw Error(where + "unknown state");
    if (!has_symbol(t.read) || !has_symbol(t.write)) throw Error(where + "unknown symbol");
    if (t.read == kEnd && (t.write != kEnd || t.move == Move::L))
      throw Error(where + "'>' must be kept and not moved left of");
    if (t.read != kEnd && t.write == kEnd) throw Error(where + "only cell 0 may hold '>'");
  }
}

bool is_normalized(const MachineSpec& m) {
  if (m.accept.size() != 1) return false;
  const std::string& f = *m.accept.begin();
  std::set<Transition> loops;
  for (const auto& t : m.transitions) {
    if (t.from == f) {
      if (t.to != f || t.write != t.read || t.move != Move::S) return false;
      loops.insert(t);
    } else if (t.to == f && (t.read != kEnd || t.move != Move::S)) {
      return false;
    }
  }
  if (loops.size() != m.tape_alphabet.size()) return false;
  for (const auto& [key, ts] : by_key(m))
    if (!uniform(ts)) return false;
  return true;
}

const std::string& final_state(const MachineSpec& normalized) {
  if (!is_normalized(normalized)) throw Error("machine is not normalized");
  return *normalized.accept.begin();
}

MachineSpec normalize_machine(const MachineSpec& in) {
  validate_machine(in);
  if (is_normalized(in)) return in;
  MachineSpec m = in;
  const std::string sweep = fresh_state(m, "q_sweep");
  m.states.push_back(sweep);
  const std::string final = fresh_state(m, "q_final");
  m.states.push_back(final);

  std::vector<Transition> ts;
  for (const auto& t : m.transitions)
    if (!m.accept.count(t.from)) ts.push_back(t);
  std::vector<std::string> walkers(m.accept.begin(), m.accept.end());
  walkers.push_back(sweep);
  for (const auto& q : walkers)
    for (char a : m.tape_alphabet)
      ts.push_back(a == kEnd ? Transition{q, a, final, a, Move::S} : Transition{q, a, sweep, a, Move::L});
  for (char a : m.tape_alphabet) ts.push_back({final, a, final, a, Move::S});
  m.transitions = std::move(ts);
  m.accept = {final};
  make_uniform(m);
  return m;
}

Configuration initial_configuration(const MachineSpec& m, const std::string& x) {
  for (char c : x)
    if (c != '0' && c != '1') throw Error("input must be a binary string");
  return {m.start, 0, std::string(1, kEnd) + x};
}

std::vector<Configuration> successors(const MachineSpec& m, const Configuration& c) {
  const char read = c.head < c.tape.size() ? c.tape[c.head] : kBlank;
  std::vector<Configuration> out;
  for (const auto& t : m.transitions) {
    if (t.from != c.state || t.read != read) continue;
    if (t.move == Move::L && c.head == 0) continue;
    Configuration next = c;
    if (next.tape.size() <= next.head) next.tape.resize(next.head + 1, kBlank);
    next.tape[next.head] = t.write;
    next.state = t.to;
    if (t.move == Move::L) --next.head;
    if (t.move == Move::R) ++next.head;
    while (next.tape.size() > 1 && next.tape.back() == kBlank) next.tape.pop_back();
    out.push_back(std::move(next));
  }
  return out;
}

std::optional<std::vector<Configuration>> simulate(const MachineSpec& m, const std::string& x, std::size_t max_steps) {
  validate_machine(m);
  struct Key {
    std::string state;
    std::size_t head;
    std::string tape;
    auto operator<=>(const Key&) const = default;
  };
  std::vector<Configuration> nodes{initial_configuration(m, x)};
  std::vector<std::size_t> parent{0};
  std::vector<std::size_t> depth{0};
  std::set<Key> seen{{nodes[0].state, nodes[0].head, nodes[0].tape}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (m.accept.count(nodes[i].state)) {
      std::vector<Configuration> run;
      for (std::size_t j = i;; j = parent[j]) {
        run.push_back(nodes[j]);
        if (j == 0) break;
      }
      std::reverse(run.begin(), run.end());
      return run;
    }
    if (depth[i] == max_steps) continue;
    for (auto& next : successors(m, nodes[i])) {
      if (!seen.insert({next.state, next.head, next.tape}).second) continue;
      nodes.push_back(std::move(next));
      parent.push_back(i);
      depth.push_back(depth[i] + 1);
    }
  }
  return std::nullopt;
}

}  // namespace pcr
