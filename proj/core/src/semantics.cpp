#include "pcr/semantics.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>
#include <unordered_map>

namespace pcr {

std::string to_json(const Structure& s) {
  nlohmann::ordered_json j;
  j["atoms"] = nlohmann::ordered_json::object();
  for (const auto& [name, v] : s.atoms) j["atoms"][name] = v ? 1 : 0;
  j["oracle"] = nlohmann::ordered_json::array();
  for (const auto& str : s.oracle) j["oracle"].push_back(str);
  return j.dump();
}

Structure structure_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed structure: ") + e.what());
  }
  Structure s;
  if (!j.is_object()) throw Error("malformed structure: expected an object");
  if (j.contains("atoms")) {
    if (!j["atoms"].is_object()) throw Error("malformed structure: \"atoms\" must be an object");
    for (const auto& [name, v] : j["atoms"].items()) {
      if (v.is_boolean()) {
        s.atoms[name] = v.get<bool>();
      } else if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) {
        s.atoms[name] = v.get<int>() == 1;
      } else {
        throw Error("malformed structure: atom '" + name + "' must be 0 or 1");
      }
    }
  }
  if (j.contains("oracle")) {
    if (!j["oracle"].is_array()) throw Error("malformed structure: \"oracle\" must be an array");
    for (const auto& v : j["oracle"]) {
      if (!v.is_string()) throw Error("malformed structure: oracle entries must be strings");
      auto str = v.get<std::string>();
      if (str.find_first_not_of("01") != std::string::npos)
        throw Error("malformed structure: oracle string '" + str + "' is not binary");
      s.oracle.insert(std::move(str));
    }
  }
  return s;
}

std::string_view to_string(SatStatus s) {
  switch (s) {
    case SatStatus::Sat:
      return "SAT";
    case SatStatus::Unsat:
      return "UNSAT";
    case SatStatus::BudgetExceeded:
      return "BUDGET_EXCEEDED";
  }
  return "UNSAT";
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Structure& s) : s_(s) {}

  bool run(const Formula& f) {
    switch (f.kind()) {
      case Kind::Const:
        return f.bit();
      case Kind::Atom:
        return lookup(f.name());
      case Kind::Not:
        return !run(f.child());
      case Kind::And:
        return run(f.left()) && run(f.right());
      case Kind::Or:
        return run(f.left()) || run(f.right());
      case Kind::RApp: {
        std::string key;
        key.reserve(f.children().size());
        for (const auto& a : f.children()) key.push_back(run(a) ? '1' : '0');
        return s_.contains(key);
      }
      case Kind::Forall:
      case Kind::Exists: {
        const bool all = f.kind() == Kind::Forall;
        bound_.emplace_back(&f.name(), false);
        bool r = run(f.body());
        if (r == all) {
          bound_.back().second = true;
          r = run(f.body());
        }
        bound_.pop_back();
        return r;
      }
    }
    return false;
  }

 private:
  bool lookup(const std::string& name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it->first == name) return it->second;
    auto it = s_.atoms.find(name);
    if (it == s_.atoms.end()) throw EvalError(name);
    return it->second;
  }

  const Structure& s_;
  std::vector<std::pair<const std::string*, bool>> bound_;
};

}  // namespace

bool eval(const Formula& f, const Structure& s) { return Evaluator(s).run(f); }

Formula sequent_formula(const Sequent& s) {
  std::vector<Formula> parts;
  for (const auto& g : s.antecedent) parts.push_back(Formula::negation(g));
  for (const auto& d : s.succedent) parts.push_back(d);
  return disj_all(parts);
}

bool eval(const Sequent& s, const Structure& st) { return eval(sequent_formula(s), st); }

// ---------------------------------------------------------------------------
// Certificate search

namespace {

enum Tri : unsigned char { F = 0, T = 1, U = 2 };

struct Partial {
  Tri value;
  std::optional<std::string> pending;  // an undecided string the value depends on
};

class CertificateSearch {
 public:
  CertificateSearch(const Formula& f, std::vector<std::string> atoms)
      : f_(f), atom_names_(std::move(atoms)) {}

  std::optional<Structure> run() {
    const std::size_t n = atom_names_.size();
    if (n >= 63) throw Error("sat_pc: too many atoms");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      atoms_.clear();
      for (std::size_t i = 0; i < n; ++i) atoms_[atom_names_[i]] = (mask >> (n - 1 - i)) & 1;
      decided_.clear();
      if (search()) {
        Structure w;
        w.atoms = atoms_;
        for (const auto& [str, in] : decided_)
          if (in) w.oracle.insert(str);
        return w;
      }
    }
    return std::nullopt;
  }

 private:
  bool search() {
    Partial p = eval3(f_);
    if (p.value == T) return true;
    if (p.value == F) return false;
    const std::string key = *p.pending;
    for (bool in : {false, true}) {
      decided_[key] = in;
      if (search()) return true;
    }
    decided_.erase(key);
    return false;
  }

  Partial eval3(const Formula& f) const {
    switch (f.kind()) {
      case Kind::Const:
        return {f.bit() ? T : F, {}};
      case Kind::Atom:
        return {atoms_.at(f.name()) ? T : F, {}};
      case Kind::Not: {
        Partial a = eval3(f.child());
        if (a.value != U) a.value = a.value == T ? F : T;
        return a;
      }
      case Kind::And:
      case Kind::Or: {
        const Tri absorbing = f.kind() == Kind::And ? F : T;
        Partial a = eval3(f.left());
        if (a.value == absorbing) return a;
        Partial b = eval3(f.right());
        if (b.value == absorbing) return b;
        if (a.value == U) return a;
        return b;
      }
      case Kind::RApp: {
        std::string key;
        for (const auto& arg : f.children()) {
          Partial a = eval3(arg);
          if (a.value == U) return a;
          key.push_back(a.value == T ? '1' : '0');
        }
        auto it = decided_.find(key);
        if (it == decided_.end()) return {U, std::move(key)};
        return {it->second ? T : F, {}};
      }
      default:
        throw Error("sat_pc requires a quantifier-free formula");
    }
  }

  const Formula& f_;
  std::vector<std::string> atom_names_;
  std::map<std::string, bool> atoms_;
  std::map<std::string, bool> decided_;
};

}  // namespace

SatResult sat_pc(const Formula& f) {
  if (!f.is_quantifier_free()) throw Error("sat_pc requires a quantifier-free formula");
  auto atoms = free_atoms(f);
  CertificateSearch search(f, {atoms.begin(), atoms.end()});
  auto w = search.run();
  if (!w) return {SatStatus::Unsat, std::nullopt};
  if (!eval(f, *w)) throw std::logic_error("sat_pc produced a witness that does not satisfy the formula");
  return {SatStatus::Sat, std::move(w)};
}

bool valid_pc(const Formula& f) { return !sat_pc(Formula::negation(f)).sat(); }

bool sequent_valid(const Sequent& s) { return valid_pc(sequent_formula(s)); }

std::optional<Structure> counterexample(const Sequent& s) {
  auto r = sat_pc(Formula::negation(sequent_formula(s)));
  if (!r.sat()) return std::nullopt;
  return r.witness;
}

// ---------------------------------------------------------------------------
// Brute-force validity

bool valid_q_bruteforce(const Formula& f, unsigned max_arity) {
  if (max_arity > 4) throw Error("valid_q_bruteforce: max_arity is limited to 4");
  if (auto fa = free_atoms(f); !fa.empty())
    throw Error("valid_q_bruteforce: formula is not closed (free atom '" + *fa.begin() + "')");
  auto arities = r_arities(f);
  if (arities.size() > 1) throw Error("valid_q_bruteforce: R is used with mixed arities");
  const std::size_t m = arities.empty() ? 0 : *arities.begin();
  if (m > max_arity)
    throw Error("valid_q_bruteforce: arity " + std::to_string(m) + " exceeds " + std::to_string(max_arity));
  const std::size_t strings = std::size_t{1} << m;
  std::vector<std::string> universe;
  for (std::size_t v = 0; v < strings; ++v) {
    std::string s(m, '0');
    for (std::size_t i = 0; i < m; ++i)
      if ((v >> i) & 1) s[i] = '1';
    universe.push_back(std::move(s));
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << strings); ++mask) {
    Structure st;
    for (std::size_t v = 0; v < strings; ++v)
      if ((mask >> v) & 1) st.oracle.insert(universe[v]);
    if (!eval(f, st)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bit-parallel evaluation

OracleIndex::OracleIndex(const std::set<std::string>& oracle) {
  for (const auto& s : oracle) {
    if (s.size() <= kDenseMax) {
      if (dense_.size() <= s.size()) dense_.resize(s.size() + 1);
      auto& bits = dense_[s.size()];
      if (bits.empty()) bits.assign(std::size_t{1} << s.size(), false);
      std::uint64_t idx = 0;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') idx |= std::uint64_t{1} << i;
      bits[idx] = true;
    } else {
      sparse_.insert(s);
    }
  }
}

bool OracleIndex::contains_index(std::size_t length, std::uint64_t index) const {
  if (length >= dense_.size() || dense_[length].empty()) return false;
  return dense_[length][index];
}

bool OracleIndex::contains(std::span<const bool> bits) const {
  if (bits.size() <= kDenseMax) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) idx |= std::uint64_t{1} << i;
    return contains_index(bits.size(), idx);
  }
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return sparse_.count(s) != 0;
}

BatchEvaluator::BatchEvaluator(const Formula& f, std::vector<std::string> vars) : vars_(std::move(vars)) {
  std::unordered_map<std::string, std::uint32_t> var_index;
  for (std::uint32_t i = 0; i < vars_.size(); ++i) var_index.emplace(vars_[i], i);
  std::unordered_map<Formula, std::uint32_t, FormulaHash> memo;

  auto compile = [&](auto&& self, const Formula& g) -> std::uint32_t {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    Instr in{Op::Const, 0, 0, {}};
    switch (g.kind()) {
      case Kind::Const:
        in.op = Op::Const;
        in.a = g.bit() ? 1 : 0;
        break;
      case Kind::Atom: {
        auto it = var_index.find(g.name());
        if (it == var_index.end()) throw EvalError(g.name());
        in.op = Op::Var;
        in.a = it->second;
        break;
      }
      case Kind::Not:
        in.op = Op::Not;
        in.a = self(self, g.child());
        break;
      case Kind::And:
      case Kind::Or:
        in.op = g.kind() == Kind::And ? Op::And : Op::Or;
        in.a = self(self, g.left());
        in.b = self(self, g.right());
        break;
      case Kind::RApp:
        in.op = Op::RApp;
        for (const auto& arg : g.children()) in.args.push_back(self(self, arg));
        break;
      default:
        throw Error("BatchEvaluator requires a quantifier-free formula");
    }
    code_.push_back(std::move(in));
    auto id = static_cast<std::uint32_t>(code_.size() - 1);
    memo.emplace(g, id);
    return id;
  };
  compile(compile, f);
}

std::uint64_t BatchEvaluator::eval(std::span<const std::uint64_t> inputs, const OracleIndex& oracle) const {
  if (inputs.size() != vars_.size()) throw Error("BatchEvaluator: wrong number of inputs");
  std::vector<std::uint64_t> val(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::Const:
        val[i] = in.a ? ~std::uint64_t{0} : 0;
        break;
      case Op::Var:
        val[i] = inputs[in.a];
        break;
      case Op::Not:
        val[i] = ~val[in.a];
        break;
      case Op::And:
        val[i] = val[in.a] & val[in.b];
        break;
      case Op::Or:
        val[i] = val[in.a] | val[in.b];
        break;
      case Op::RApp: {
        std::uint64_t out = 0;
        const std::size_t n = in.args.size();
        for (unsigned lane = 0; lane < 64; ++lane) {
          bool hit;
          if (n <= 24) {
            std::uint64_t idx = 0;
            for (std::size_t k = 0; k < n; ++k) idx |= ((val[in.args[k]] >> lane) & 1) << k;
            hit = oracle.contains_index(n, idx);
          } else {
            std::unique_ptr<bool[]> tmp(new bool[n]);
            for (std::size_t k = 0; k < n; ++k) tmp[k] = (val[in.args[k]] >> lane) & 1;
            hit = oracle.contains(std::span<const bool>(tmp.get(), n));
          }
          if (hit) out |= std::uint64_t{1} << lane;
        }
        val[i] = out;
        break;
      }
    }
  }
  return val.back();
}

}  // namespace pcr
