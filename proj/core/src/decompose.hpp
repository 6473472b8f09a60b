// One backward step of the propositional completeness procedure, shared by
// prove() and gprove().

#pragma once

#include <functional>
#include <optional>

#include "pcr/prover.hpp"

namespace pcr::detail {

using Recurse = std::function<std::optional<Proof>(const Sequent&)>;

// Moves the target occurrence to its cedent edge: the end of the succedent or
// the front of the antecedent.
Sequent to_edge(const Sequent& s, Occurrence occ);

// Premises of decomposing the edge formula of an edge-normalized sequent. For
// an R application, `arg` is the argument position replaced.
std::vector<Sequent> edge_premises(const Sequent& normalized, bool succedent, std::size_t arg);

// Decomposes the target formula (connective, or R application at argument
// `arg`), proving the premises with `recurse`. Returns nullopt as soon as a
// premise fails.
std::optional<Proof> decompose(const Sequent& s, Occurrence occ, std::size_t arg, const Recurse& recurse,
                               ProverStats& stats);

}  // namespace pcr::detail
