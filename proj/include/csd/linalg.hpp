#pragma once

#include "csd/cyclotomic.hpp"

namespace csd {

using CMat = std::vector<std::vector<Cyclo>>;

unsigned cyclo_rank(CMat m);
// Basis of the right null space of an r x c matrix (vectors of length c).
std::vector<std::vector<Cyclo>> cyclo_nullspace(CMat m, size_t cols);
Cyclo cyclo_det(CMat m);

}  // namespace csd
