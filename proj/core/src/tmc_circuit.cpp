#include <map>
#include <set>

#include "pcr/tmc.hpp"

namespace pcr {

namespace {

std::size_t ceil_log2(std::size_t v) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < v) ++k;
  return k;
}

// Wires for the needed lines of a decoder on inputs 0..bits-1.
std::map<std::size_t, std::size_t> decoder_lines(Circuit& c, std::size_t bits, const std::set<std::size_t>& needed) {
  std::map<std::size_t, std::size_t> out;
  const std::size_t top = bits - 1;  // wire of the high input
  if (bits == 1) {
    for (std::size_t v : needed) out[v] = v == 1 ? top : c.add(GateOp::Not, {top});
    return out;
  }
  const std::size_t half = std::size_t{1} << (bits - 1);
  std::set<std::size_t> lower;
  for (std::size_t v : needed) lower.insert(v % half);
  const auto low = decoder_lines(c, bits - 1, lower);
  std::optional<std::size_t> not_top;
  for (std::size_t v : needed) {
    if (v < half) {
      if (!not_top) not_top = c.add(GateOp::Not, {top});
      out[v] = c.add(GateOp::And, {low.at(v), *not_top});
    } else {
      out[v] = c.add(GateOp::And, {low.at(v - half), top});
    }
  }
  return out;
}

// a XOR b from OR, AND, NOT, AND; returns {xor wire, and wire}.
std::pair<std::size_t, std::size_t> add_xor(Circuit& c, std::size_t a, std::size_t b) {
  const std::size_t either = c.add(GateOp::Or, {a, b});
  const std::size_t both = c.add(GateOp::And, {a, b});
  const std::size_t not_both = c.add(GateOp::Not, {both});
  return {c.add(GateOp::And, {either, not_both}), both};
}

}  // namespace

std::size_t Circuit::add(GateOp op, std::vector<std::size_t> operands) {
  const std::size_t wire = inputs + gates.size();
  for (std::size_t o : operands)
    if (o >= wire) throw Error("circuit: operand refers to a later wire");
  if ((op == GateOp::Not) != (operands.size() == 1) || operands.empty())
    throw Error("circuit: wrong number of operands");
  gates.push_back({op, std::move(operands)});
  return wire;
}

std::vector<bool> Circuit::simulate(const std::vector<bool>& in) const {
  if (in.size() != inputs) throw Error("circuit: expected " + std::to_string(inputs) + " inputs");
  std::vector<bool> v(in);
  v.reserve(inputs + gates.size());
  for (const auto& g : gates) {
    bool r = false;
    switch (g.op) {
      case GateOp::Not:
        r = !v[g.operands[0]];
        break;
      case GateOp::And:
        r = true;
        for (std::size_t o : g.operands) r = r && v[o];
        break;
      case GateOp::Or:
        for (std::size_t o : g.operands) r = r || v[o];
        break;
    }
    v.push_back(r);
  }
  return v;
}

std::vector<bool> Circuit::evaluate(const std::vector<bool>& in) const {
  const auto v = simulate(in);
  std::vector<bool> out;
  for (std::size_t o : outputs) out.push_back(v[o]);
  return out;
}

Circuit decoder_circuit(std::size_t n) {
  if (n == 0) throw Error("decoder_circuit: n must be at least 1");
  Circuit c;
  c.inputs = ceil_log2(n + 1);
  std::set<std::size_t> needed;
  for (std::size_t i = 1; i <= n; ++i) needed.insert(i);
  const auto lines = decoder_lines(c, c.inputs, needed);
  for (std::size_t i = 1; i <= n; ++i) c.outputs.push_back(lines.at(i));
  return c;
}

Circuit increment_circuit(std::size_t m) {
  if (m == 0) throw Error("increment_circuit: m must be at least 1");
  Circuit c;
  c.inputs = m;
  c.outputs.push_back(c.add(GateOp::Not, {0}));
  std::size_t carry = 0;  // carry into bit i is the AND of bits below
  for (std::size_t i = 1; i < m; ++i) {
    auto [sum, next] = add_xor(c, i, carry);
    c.outputs.push_back(sum);
    carry = next;
  }
  c.outputs.push_back(m == 1 ? 0 : carry);
  return c;
}

Circuit decrement_circuit(std::size_t m) {
  if (m == 0) throw Error("decrement_circuit: m must be at least 1");
  Circuit c;
  c.inputs = m;
  const std::size_t first = c.add(GateOp::Not, {0});
  c.outputs.push_back(first);
  std::size_t borrow = first;  // borrow into bit i: all bits below are 0
  for (std::size_t i = 1; i < m; ++i) {
    auto [diff, unused] = add_xor(c, i, borrow);
    (void)unused;
    c.outputs.push_back(diff);
    const std::size_t not_bit = c.add(GateOp::Not, {i});
    borrow = c.add(GateOp::And, {not_bit, borrow});
  }
  c.outputs.push_back(borrow);
  return c;
}

Formula circuit_to_formula(const Circuit& c, const std::vector<Formula>& input_vars,
                           const std::vector<Formula>& gate_vars, const std::vector<Formula>& output_vars) {
  if (input_vars.size() != c.inputs || gate_vars.size() != c.gates.size() || output_vars.size() != c.outputs.size())
    throw Error("circuit_to_formula: variable lists do not match the circuit");
  auto wire = [&](std::size_t w) -> const Formula& { return w < c.inputs ? input_vars[w] : gate_vars[w - c.inputs]; };
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    Formula rhs = wire(g.operands[0]);
    if (g.op == GateOp::Not) {
      rhs = Formula::negation(rhs);
    } else {
      for (std::size_t j = 1; j < g.operands.size(); ++j)
        rhs = g.op == GateOp::And ? Formula::conj(rhs, wire(g.operands[j])) : Formula::disj(rhs, wire(g.operands[j]));
    }
    parts.push_back(iff(gate_vars[i], rhs));
  }
  for (std::size_t j = 0; j < c.outputs.size(); ++j) parts.push_back(iff(output_vars[j], wire(c.outputs[j])));
  return conj_all(parts);
}

}  // namespace pcr
