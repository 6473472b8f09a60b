// Calibrated constants of the provers and the machine compiler.

#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "pcr/calculus.hpp"
#include "pcr/prover.hpp"
#include "pcr/tmc.hpp"

namespace pcr {

inline constexpr std::string_view kVersion = "1.0.0";

// length(compile(M, x, t)) <= C_M * max(|x|, t) for the sample machines under
// data/machines, measured over |x| <= 32 and t <= 2 plus t = |x|.
struct MachineConstant {
  std::string_view machine;
  std::size_t c_m;
};
inline constexpr std::array<MachineConstant, 4> kMachineConstants{{
    {"accept_all", 3300},
    {"first1", 5300},
    {"reject_all", 2500},
    {"some1", 6000},
}};

}  // namespace pcr
