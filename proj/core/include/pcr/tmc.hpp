// Compiler from nondeterministic Turing machines to Pi1 formulas over R, with
// the supporting circuits, a machine simulator, and witness structures.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pcr/formula.hpp"
#include "pcr/semantics.hpp"

namespace pcr {

// ---------------------------------------------------------------- machines

enum class Move { L, R, S };

struct Transition {
  std::string from;
  char read = '_';
  std::string to;
  char write = '_';
  Move move = Move::S;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Tape symbols are single characters; '_' is the blank and '>' the left-end
// marker in cell 0.
struct MachineSpec {
  std::vector<std::string> states;
  std::vector<char> tape_alphabet;
  std::string start;
  std::set<std::string> accept;
  std::vector<Transition> transitions;

  friend bool operator==(const MachineSpec&, const MachineSpec&) = default;
};

// {"states": [...], "tape_alphabet": ["_", ">", "0", "1"], "start": "q0",
//  "accept": [...], "transitions": [{"from", "read", "to", "write", "move"}]}
MachineSpec machine_from_json(const std::string& text);
std::string to_json(const MachineSpec& m);

// Throws Error unless the alphabet contains _ > 0 1, every name resolves,
// transitions reading '>' write '>' and do not move left, and no other
// transition writes '>'.
void validate_machine(const MachineSpec& m);

// Adds a sweep state and a final state: from an accepting state the head walks
// left to '>' and the machine loops there in the final state, the only
// accepting state. Transitions out of one (state, symbol) pair that differ in
// written symbol or move are routed through choice states that first stay in
// place, so every (state, symbol) pair has a single write and move. A machine
// already in this form is returned unchanged.
MachineSpec normalize_machine(const MachineSpec& m);
bool is_normalized(const MachineSpec& m);
// The accepting state of a normalized machine.
const std::string& final_state(const MachineSpec& normalized);

struct Configuration {
  std::string state;
  std::size_t head = 0;
  std::string tape;  // cell 0 is '>'; cells past the end are blank

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const MachineSpec& m, const std::string& x);
std::vector<Configuration> successors(const MachineSpec& m, const Configuration& c);

// Breadth-first search over nondeterministic runs of at most max_steps steps.
// Returns a shortest run ending in an accepting state.
std::optional<std::vector<Configuration>> simulate(const MachineSpec& m, const std::string& x,
                                                   std::size_t max_steps);

// ---------------------------------------------------------------- circuits

enum class GateOp { Not, And, Or };

// Wires 0..inputs-1 are the inputs; wire inputs+i is gate i. Operands refer to
// earlier wires only.
struct Circuit {
  struct Gate {
    GateOp op;
    std::vector<std::size_t> operands;
  };
  std::size_t inputs = 0;
  std::vector<Gate> gates;
  std::vector<std::size_t> outputs;

  std::size_t gate_count() const noexcept { return gates.size(); }
  std::size_t add(GateOp op, std::vector<std::size_t> operands);
  // Values of every wire.
  std::vector<bool> simulate(const std::vector<bool>& in) const;
  std::vector<bool> evaluate(const std::vector<bool>& in) const;
};

// k = ceil(log2(n+1)) inputs, low-order first; output i-1 is 1 iff the input
// encodes i, for i in 1..n.
Circuit decoder_circuit(std::size_t n);
// m outputs j+1 mod 2^m, then the carry out.
Circuit increment_circuit(std::size_t m);
// m outputs j-1 mod 2^m, then the borrow out (set iff j = 0).
Circuit decrement_circuit(std::size_t m);

// Conjunction of gate_i <=> op(operands) and output_j <=> source_j.
Formula circuit_to_formula(const Circuit& c, const std::vector<Formula>& input_vars,
                           const std::vector<Formula>& gate_vars, const std::vector<Formula>& output_vars);

// Gate count bound of decoder_circuit: at most kDecoderFactor * n gates.
inline constexpr std::size_t kDecoderFactor = 4;

// ---------------------------------------------------------------- encoding

struct EncodingParams {
  std::size_t n = 0;       // input length
  std::size_t t = 0;       // time exponent; times 0 .. 2^t - 1
  std::size_t k = 0;       // ceil(log2(n+1))
  std::size_t m = 0;       // cell index bits
  std::size_t s_bits = 0;  // symbol field width
  std::size_t q_bits = 0;  // state field width (0 = no head)
  std::size_t w_bits = 0;  // offset bits; cells are 2^w_bits bits wide

  std::size_t width() const noexcept { return std::size_t{1} << w_bits; }
  std::size_t cells() const noexcept { return std::size_t{1} << m; }
  std::uint64_t times() const noexcept { return std::uint64_t{1} << t; }
  // Arity of every R application: offset, cell, time bits.
  std::size_t arity() const noexcept { return w_bits + m + t; }
};

EncodingParams make_encoding(const MachineSpec& normalized, std::size_t n, std::size_t t);

// Content code of a cell: symbol index in the low s_bits, state slot (0 for no
// head, i+1 for states[i]) above.
std::uint64_t cell_code(const MachineSpec& normalized, const EncodingParams& enc, char symbol,
                        const std::string* state);

enum class VarRole { Offset, Cell, Time, Gate, Output };

struct CircuitBinding {
  Circuit circuit;
  std::vector<std::string> inputs;
  std::vector<std::string> gates;
  std::vector<std::string> outputs;
};

// A universally closed block: matrix plus its universal variables in prenex
// order (index bits first, then circuit variables in topological order).
struct Block {
  Formula matrix = Formula::constant(true);
  std::vector<std::string> universals;
  std::map<std::string, VarRole> roles;
  std::vector<CircuitBinding> circuits;

  Formula closed() const;
};

Block build_S(const MachineSpec& normalized, const std::string& x, const EncodingParams& enc);
Block build_I(const MachineSpec& normalized, const EncodingParams& enc);
Formula build_E(const MachineSpec& normalized, const EncodingParams& enc);

struct Compiled {
  MachineSpec machine;  // normalized
  EncodingParams enc;
  Block block;          // S and I merged, E conjoined into the matrix
  Formula formula = Formula::constant(true);  // all universals . matrix
};

// t = 0 selects t = |x|.
Compiled compile(const MachineSpec& m, const std::string& x, std::size_t t = 0);

// Oracle with exactly the 1-bits of each configuration of `run`, padded with
// its last configuration up to time 2^t - 1. Throws Error naming the first
// illegal step.
Structure witness_structure(const MachineSpec& normalized, const std::string& x, const EncodingParams& enc,
                            const std::vector<Configuration>& run);

struct VerifyOptions {
  std::size_t exhaustive_limit = 22;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  unsigned jobs = 1;
};

struct VerifyReport {
  bool exhaustive = false;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  // Assignments of the index bits with circuit variables set to their
  // computed values (run when not exhaustive).
  std::uint64_t guarded_checked = 0;
  std::uint64_t guarded_violations = 0;

  bool ok() const noexcept { return violations == 0 && guarded_violations == 0; }
};

// Evaluates the matrix of `c` under `s` on every universal assignment, or on
// uniform samples when there are more than exhaustive_limit universals.
VerifyReport verify_witness(const Compiled& c, const Structure& s, const VerifyOptions& options = {});

}  // namespace pcr
