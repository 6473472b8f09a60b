#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "pcr/tmc.hpp"

namespace pcr {

namespace {

std::size_t ceil_log2(std::size_t v) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < v) ++k;
  return k;
}

const Formula& zero() {
  static const Formula f = Formula::constant(false);
  return f;
}
const Formula& one() {
  static const Formula f = Formula::constant(true);
  return f;
}

// Connectives with constant folding.
Formula f_not(const Formula& a) { return a.is_const() ? Formula::constant(!a.bit()) : Formula::negation(a); }
Formula f_and(const Formula& a, const Formula& b) {
  if (a.is_const()) return a.bit() ? b : a;
  if (b.is_const()) return b.bit() ? a : b;
  return Formula::conj(a, b);
}
Formula f_or(const Formula& a, const Formula& b) {
  if (a.is_const()) return a.bit() ? a : b;
  if (b.is_const()) return b.bit() ? b : a;
  return Formula::disj(a, b);
}
Formula f_and_all(const std::vector<Formula>& v) {
  Formula out = one();
  for (const auto& f : v) out = f_and(out, f);
  return out;
}
Formula f_or_all(const std::vector<Formula>& v) {
  Formula out = zero();
  for (const auto& f : v) out = f_or(out, f);
  return out;
}
Formula literal(const Formula& x, bool positive) { return positive ? x : f_not(x); }

std::vector<Formula> constants(std::uint64_t value, std::size_t bits) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < bits; ++i) out.push_back(Formula::constant((value >> i) & 1));
  return out;
}

std::string bit_string(std::uint64_t value, std::size_t bits) {
  std::string out;
  for (std::size_t i = 0; i < bits; ++i) out.push_back(((value >> i) & 1) ? '1' : '0');
  return out;
}

Formula r_at(const std::vector<Formula>& offset, const std::vector<Formula>& cell, const std::vector<Formula>& time) {
  std::vector<Formula> args = offset;
  args.insert(args.end(), cell.begin(), cell.end());
  args.insert(args.end(), time.begin(), time.end());
  return Formula::rapp(std::move(args));
}

// Variables with a common prefix: prefix1, prefix2, ...
std::vector<std::string> names(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<Formula> atoms(const std::vector<std::string>& ns) {
  std::vector<Formula> out;
  for (const auto& n : ns) out.push_back(Formula::atom(n));
  return out;
}

std::size_t symbol_index(const MachineSpec& m, char s) {
  auto it = std::find(m.tape_alphabet.begin(), m.tape_alphabet.end(), s);
  if (it == m.tape_alphabet.end()) throw Error(std::string("unknown tape symbol '") + s + "'");
  return static_cast<std::size_t>(it - m.tape_alphabet.begin());
}

std::size_t state_index(const MachineSpec& m, const std::string& q) {
  auto it = std::find(m.states.begin(), m.states.end(), q);
  if (it == m.states.end()) throw Error("unknown state '" + q + "'");
  return static_cast<std::size_t>(it - m.states.begin());
}

// Offset variables o equal to j.
Formula offset_is(const std::vector<Formula>& o, std::uint64_t j) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < o.size(); ++i) lits.push_back(literal(o[i], (j >> i) & 1));
  return f_and_all(lits);
}

// Bit o of the given content code, as a formula in the offset variables.
Formula code_bit(const std::vector<Formula>& o, std::uint64_t code) {
  std::vector<Formula> cases;
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << o.size()); ++j)
    if ((code >> j) & 1) cases.push_back(offset_is(o, j));
  return f_or_all(cases);
}

// c > n for cell bits c (low-order first).
Formula greater_than(const std::vector<Formula>& c, std::uint64_t n) {
  Formula g = zero();
  for (std::size_t j = 0; j < c.size(); ++j) g = ((n >> j) & 1) ? f_and(c[j], g) : f_or(c[j], g);
  if (c.size() < 64 && (n >> c.size()) != 0) return zero();
  return g;
}

void add_circuit(Block& b, Circuit circuit, const std::vector<std::string>& inputs, const std::string& gate_prefix,
                 std::vector<std::string> outputs, std::vector<Formula>& betas) {
  CircuitBinding cb{std::move(circuit), inputs, names(gate_prefix, 0), std::move(outputs)};
  cb.gates = names(gate_prefix, cb.circuit.gate_count());
  betas.push_back(circuit_to_formula(cb.circuit, atoms(cb.inputs), atoms(cb.gates), atoms(cb.outputs)));
  for (const auto& g : cb.gates) {
    b.universals.push_back(g);
    b.roles[g] = VarRole::Gate;
  }
  for (const auto& o : cb.outputs) {
    b.universals.push_back(o);
    b.roles[o] = VarRole::Output;
  }
  b.circuits.push_back(std::move(cb));
}

void add_vars(Block& b, const std::vector<std::string>& vs, VarRole role) {
  for (const auto& v : vs) {
    b.universals.push_back(v);
    b.roles[v] = role;
  }
}

// Content bits of one cell at one time: R(j, cell, time) for each offset j.
std::vector<Formula> content(const EncodingParams& enc, const std::vector<Formula>& cell,
                             const std::vector<Formula>& time) {
  std::vector<Formula> out;
  for (std::size_t j = 0; j < enc.width(); ++j) out.push_back(r_at(constants(j, enc.w_bits), cell, time));
  return out;
}

class Fields {
 public:
  Fields(const MachineSpec& m, const EncodingParams& enc) : m_(m), enc_(enc) {}

  Formula sym(const std::vector<Formula>& x, char a) const {
    const std::size_t v = symbol_index(m_, a);
    std::vector<Formula> lits;
    for (std::size_t b = 0; b < enc_.s_bits; ++b) lits.push_back(literal(x[b], (v >> b) & 1));
    return f_and_all(lits);
  }
  Formula head(const std::vector<Formula>& x, const std::string& q) const { return slot(x, state_index(m_, q) + 1); }
  Formula no_head(const std::vector<Formula>& x) const { return slot(x, 0); }
  Formula heads(const std::vector<Formula>& x, const std::set<std::string>& qs) const {
    std::vector<Formula> v;
    for (const auto& q : qs) v.push_back(head(x, q));
    return f_or_all(v);
  }
  Formula same_symbol(const std::vector<Formula>& x, const std::vector<Formula>& y) const {
    std::vector<Formula> v;
    for (std::size_t b = 0; b < enc_.s_bits; ++b) v.push_back(iff(x[b], y[b]));
    return f_and_all(v);
  }

 private:
  Formula slot(const std::vector<Formula>& x, std::size_t v) const {
    std::vector<Formula> lits;
    for (std::size_t b = 0; b < enc_.q_bits; ++b) lits.push_back(literal(x[enc_.s_bits + b], (v >> b) & 1));
    return f_and_all(lits);
  }

  const MachineSpec& m_;
  const EncodingParams& enc_;
};

// Transitions grouped by (state, symbol): the common write and move, and the
// set of target states.
struct Step {
  std::string from;
  char read;
  char write;
  Move move;
  std::set<std::string> targets;
};

std::vector<Step> steps(const MachineSpec& m) {
  std::map<std::pair<std::string, char>, Step> by;
  for (const auto& t : m.transitions) {
    auto [it, fresh] = by.try_emplace({t.from, t.read}, Step{t.from, t.read, t.write, t.move, {}});
    if (!fresh && (it->second.write != t.write || it->second.move != t.move))
      throw Error("machine is not normalized: (" + t.from + ", " + t.read + ") has several writes or moves");
    it->second.targets.insert(t.to);
  }
  std::vector<Step> out;
  for (auto& [key, s] : by) out.push_back(std::move(s));
  return out;
}

}  // namespace

EncodingParams make_encoding(const MachineSpec& normalized, std::size_t n, std::size_t t) {
  if (t == 0) throw Error("time exponent must be at least 1");
  if (t > 40) throw Error("time exponent too large");
  EncodingParams e;
  e.n = n;
  e.t = t;
  e.k = ceil_log2(n + 1);
  e.m = std::max(t + 1, e.k);
  e.s_bits = std::max<std::size_t>(1, ceil_log2(normalized.tape_alphabet.size()));
  e.q_bits = std::max<std::size_t>(1, ceil_log2(normalized.states.size() + 1));
  e.w_bits = ceil_log2(e.s_bits + e.q_bits);
  return e;
}

std::uint64_t cell_code(const MachineSpec& m, const EncodingParams& enc, char symbol, const std::string* state) {
  const std::uint64_t slot = state ? state_index(m, *state) + 1 : 0;
  return symbol_index(m, symbol) | (slot << enc.s_bits);
}

Formula Block::closed() const {
  Formula f = matrix;
  for (auto it = universals.rbegin(); it != universals.rend(); ++it) f = Formula::forall(*it, f);
  return f;
}

Block build_S(const MachineSpec& m, const std::string& x, const EncodingParams& enc) {
  if (x.size() != enc.n) throw Error("build_S: input length does not match the encoding");
  Block b;
  const auto o_names = names("s_o", enc.w_bits);
  const auto c_names = names("s_c", enc.m);
  add_vars(b, o_names, VarRole::Offset);
  add_vars(b, c_names, VarRole::Cell);
  const auto o = atoms(o_names);
  const auto c = atoms(c_names);
  const auto time0 = constants(0, enc.t);
  auto code = [&](char s, const std::string* q) { return code_bit(o, cell_code(m, enc, s, q)); };

  std::vector<Formula> parts;
  parts.push_back(iff(r_at(o, constants(0, enc.m), time0), code('>', &m.start)));
  const Formula cell = r_at(o, c, time0);
  if (enc.n > 0) {
    std::vector<std::string> inputs(c_names.begin(), c_names.begin() + enc.k);
    std::vector<Formula> betas;
    add_circuit(b, decoder_circuit(enc.n), inputs, "s_g", names("s_r", enc.n), betas);
    const auto r = atoms(b.circuits.back().outputs);
    std::vector<Formula> high_zero;
    for (std::size_t i = enc.k; i < enc.m; ++i) high_zero.push_back(f_not(c[i]));
    std::vector<Formula> ones;
    for (std::size_t i = 0; i < enc.n; ++i)
      if (x[i] == '1') ones.push_back(r[i]);
    const Formula bit = f_or_all(ones);
    const Formula value = f_or(f_and(bit, code('1', nullptr)), f_and(f_not(bit), code('0', nullptr)));
    const Formula guard = f_and(f_and(betas.front(), f_and_all(high_zero)), f_or_all(r));
    parts.push_back(implies(guard, iff(cell, value)));
  }
  parts.push_back(implies(greater_than(c, enc.n), iff(cell, code('_', nullptr))));
  b.matrix = f_and_all(parts);
  return b;
}

Block build_I(const MachineSpec& m, const EncodingParams& enc) {
  Block b;
  const auto q_names = names("i_q", enc.t);
  const auto c_names = names("i_c", enc.m);
  add_vars(b, q_names, VarRole::Time);
  add_vars(b, c_names, VarRole::Cell);
  std::vector<Formula> betas;
  auto with_flag = [](std::vector<std::string> v, const std::string& flag) {
    v.push_back(flag);
    return v;
  };
  add_circuit(b, decrement_circuit(enc.m), c_names, "i_dg", with_flag(names("i_d", enc.m), "i_db"), betas);
  add_circuit(b, increment_circuit(enc.m), c_names, "i_ig", with_flag(names("i_i", enc.m), "i_ic"), betas);
  add_circuit(b, increment_circuit(enc.t), q_names, "i_tg", with_flag(names("i_t", enc.t), "i_tc"), betas);

  const auto q = atoms(q_names);
  const auto c = atoms(c_names);
  const auto d = atoms(names("i_d", enc.m));
  const auto inc = atoms(names("i_i", enc.m));
  const auto tq = atoms(names("i_t", enc.t));
  const Formula left_ok = f_not(Formula::atom("i_db"));
  const Formula right_ok = f_not(Formula::atom("i_ic"));
  const Formula last_time = Formula::atom("i_tc");

  const auto cur = content(enc, c, q);
  const auto lft = content(enc, d, q);
  const auto rgt = content(enc, inc, q);
  const auto nxt = content(enc, c, tq);
  const Fields f(m, enc);

  std::vector<Formula> head_cases;
  std::vector<Formula> from_left;
  std::vector<Formula> from_right;
  std::vector<Formula> arrivals;
  for (const auto& s : steps(m)) {
    const Formula here = f_and(f.head(cur, s.from), f.sym(cur, s.read));
    const Formula next_head = s.move == Move::S ? f.heads(nxt, s.targets) : f.no_head(nxt);
    head_cases.push_back(f_and(f_and(here, f.sym(nxt, s.write)), next_head));
    if (s.move == Move::R) {
      const Formula sender = f_and(left_ok, f_and(f.head(lft, s.from), f.sym(lft, s.read)));
      from_left.push_back(sender);
      arrivals.push_back(f_and(sender, f.heads(nxt, s.targets)));
    } else if (s.move == Move::L) {
      const Formula sender = f_and(right_ok, f_and(f.head(rgt, s.from), f.sym(rgt, s.read)));
      from_right.push_back(sender);
      arrivals.push_back(f_and(sender, f.heads(nxt, s.targets)));
    }
  }
  const Formula quiet = f_and(f_and(f_not(f_or_all(from_left)), f_not(f_or_all(from_right))), f.no_head(nxt));
  arrivals.push_back(quiet);
  const Formula idle = f.no_head(cur);
  const Formula window = f_and(f_or(idle, f_or_all(head_cases)),
                               f_or(f_not(idle), f_and(f.same_symbol(cur, nxt), f_or_all(arrivals))));
  std::vector<Formula> body{window};
  for (std::size_t j = enc.s_bits + enc.q_bits; j < enc.width(); ++j) body.push_back(f_not(nxt[j]));

  const Formula guard = f_and(f_and_all(betas), f_not(last_time));
  b.matrix = implies(guard, f_and_all(body));
  return b;
}

Formula build_E(const MachineSpec& m, const EncodingParams& enc) {
  const std::string& final = final_state(m);
  const std::uint64_t code = cell_code(m, enc, '>', &final);
  const auto cell0 = constants(0, enc.m);
  const auto last = constants(~std::uint64_t{0}, enc.t);
  std::vector<Formula> lits;
  for (std::size_t j = 0; j < enc.width(); ++j)
    lits.push_back(literal(r_at(constants(j, enc.w_bits), cell0, last), (code >> j) & 1));
  return f_and_all(lits);
}

Compiled compile(const MachineSpec& machine, const std::string& x, std::size_t t) {
  Compiled out;
  out.machine = normalize_machine(machine);
  if (t == 0) t = std::max<std::size_t>(1, x.size());
  out.enc = make_encoding(out.machine, x.size(), t);
  initial_configuration(out.machine, x);  // validates x
  Block s = build_S(out.machine, x, out.enc);
  Block i = build_I(out.machine, out.enc);
  Block& b = out.block;
  b.matrix = Formula::conj(Formula::conj(s.matrix, i.matrix), build_E(out.machine, out.enc));
  for (Block* part : {&s, &i}) {
    b.universals.insert(b.universals.end(), part->universals.begin(), part->universals.end());
    b.roles.insert(part->roles.begin(), part->roles.end());
    for (auto& cb : part->circuits) b.circuits.push_back(std::move(cb));
  }
  out.formula = b.closed();
  return out;
}

Structure witness_structure(const MachineSpec& m, const std::string& x, const EncodingParams& enc,
                            const std::vector<Configuration>& run) {
  if (run.empty()) throw Error("witness_structure: empty run");
  if (!(run.front() == initial_configuration(m, x))) throw Error("witness_structure: run does not start on x");
  if (run.size() > enc.times()) throw Error("witness_structure: run longer than 2^t configurations");
  for (std::size_t i = 0; i + 1 < run.size(); ++i) {
    const auto next = successors(m, run[i]);
    if (std::find(next.begin(), next.end(), run[i + 1]) == next.end())
      throw Error("witness_structure: step " + std::to_string(i) + " -> " + std::to_string(i + 1) +
                  " is not a legal transition");
  }
  Structure s;
  for (std::uint64_t time = 0; time < enc.times(); ++time) {
    const Configuration& conf = run[std::min<std::uint64_t>(time, run.size() - 1)];
    if (conf.tape.size() > enc.cells() || conf.head >= enc.cells())
      throw Error("witness_structure: configuration exceeds 2^m cells");
    for (std::size_t cell = 0; cell < enc.cells(); ++cell) {
      const char sym = cell < conf.tape.size() ? conf.tape[cell] : '_';
      const std::uint64_t code = cell_code(m, enc, sym, cell == conf.head ? &conf.state : nullptr);
      for (std::size_t j = 0; j < enc.width(); ++j)
        if ((code >> j) & 1)
          s.oracle.insert(bit_string(j, enc.w_bits) + bit_string(cell, enc.m) + bit_string(time, enc.t));
    }
  }
  return s;
}

VerifyReport verify_witness(const Compiled& c, const Structure& s, const VerifyOptions& options) {
  const auto& vars = c.block.universals;
  const BatchEvaluator ev(c.block.matrix, vars);
  const OracleIndex oracle(s.oracle);
  const std::size_t u = vars.size();
  VerifyReport report;
  const unsigned jobs = std::max(1u, options.jobs);

  // Runs fill(batch, lanes) -> lane mask for batches [0, count) across jobs.
  auto parallel = [&](std::uint64_t count, const std::function<std::uint64_t(std::uint64_t, std::vector<std::uint64_t>&)>& fill,
                      std::uint64_t& checked, std::uint64_t& violations) {
    std::vector<std::uint64_t> chk(jobs, 0), bad(jobs, 0);
    auto work = [&](unsigned id) {
      std::vector<std::uint64_t> in(u);
      for (std::uint64_t batch = id; batch < count; batch += jobs) {
        const std::uint64_t mask = fill(batch, in);
        const std::uint64_t result = ev.eval(in, oracle);
        chk[id] += static_cast<std::uint64_t>(std::popcount(mask));
        bad[id] += static_cast<std::uint64_t>(std::popcount(mask & ~result));
      }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 1; id < jobs; ++id) pool.emplace_back(work, id);
    work(0);
    for (auto& th : pool) th.join();
    for (unsigned id = 0; id < jobs; ++id) {
      checked += chk[id];
      violations += bad[id];
    }
  };

  if (u <= options.exhaustive_limit) {
    report.exhaustive = true;
    const std::uint64_t total = std::uint64_t{1} << u;
    parallel((total + 63) / 64, [&](std::uint64_t batch, std::vector<std::uint64_t>& in) {
      const std::uint64_t base = batch * 64;
      for (std::size_t v = 0; v < u; ++v) {
        std::uint64_t lanes = 0;
        for (unsigned l = 0; l < 64; ++l)
          if (((base + l) >> v) & 1) lanes |= std::uint64_t{1} << l;
        in[v] = lanes;
      }
      const std::uint64_t n = std::min<std::uint64_t>(64, total - base);
      return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }, report.checked, report.violations);
    return report;
  }

  const std::uint64_t batches = (options.samples + 63) / 64;
  parallel(batches, [&](std::uint64_t batch, std::vector<std::uint64_t>& in) {
    std::mt19937_64 rng(options.seed ^ (batch * 0x9e3779b97f4a7c15ULL));
    for (auto& lanes : in) lanes = rng();
    const std::uint64_t n = std::min<std::uint64_t>(64, options.samples - batch * 64);
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }, report.checked, report.violations);

  // Index bits enumerated, circuit variables at their computed values.
  std::vector<std::size_t> primary;
  std::map<std::string, std::size_t> pos;
  for (std::size_t v = 0; v < u; ++v) {
    pos[vars[v]] = v;
    const VarRole r = c.block.roles.at(vars[v]);
    if (r == VarRole::Offset || r == VarRole::Cell || r == VarRole::Time) primary.push_back(v);
  }
  if (primary.size() > 30) return report;
  const std::uint64_t total = std::uint64_t{1} << primary.size();
  parallel((total + 63) / 64, [&](std::uint64_t batch, std::vector<std::uint64_t>& in) {
    std::fill(in.begin(), in.end(), 0);
    std::vector<bool> value(u, false);
    const std::uint64_t base = batch * 64;
    const std::uint64_t n = std::min<std::uint64_t>(64, total - base);
    for (unsigned l = 0; l < n; ++l) {
      const std::uint64_t a = base + l;
      for (std::size_t i = 0; i < primary.size(); ++i) value[primary[i]] = (a >> i) & 1;
      for (const auto& cb : c.block.circuits) {
        std::vector<bool> ins;
        for (const auto& name : cb.inputs) ins.push_back(value[pos.at(name)]);
        const auto wires = cb.circuit.simulate(ins);
        for (std::size_t g = 0; g < cb.gates.size(); ++g) value[pos.at(cb.gates[g])] = wires[cb.circuit.inputs + g];
        for (std::size_t o = 0; o < cb.outputs.size(); ++o) value[pos.at(cb.outputs[o])] = wires[cb.circuit.outputs[o]];
      }
      for (std::size_t v = 0; v < u; ++v)
        if (value[v]) in[v] |= std::uint64_t{1} << l;
    }
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }, report.guarded_checked, report.guarded_violations);
  return report;
}

}  // namespace pcr
