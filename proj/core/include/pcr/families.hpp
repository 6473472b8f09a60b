// Benchmark formula families.

#pragma once

#include "pcr/formula.hpp"

namespace pcr {

// Weak pigeonhole principle for 2^(2n) pigeons and 2^n holes:
//   ex p ex q ex r [(p != q & R(p,r) & R(q,r)) | all s ~R(p,s)]
// with p, q of 2n bits and r, s of n bits. p != q is the disjunction of
// ~(p_i <=> q_i).
Formula wphp(unsigned n);

}  // namespace pcr
