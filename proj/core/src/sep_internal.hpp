#pragma once

#include <vector>

#include "noon_ent/sep.hpp"

namespace noon_ent::detail {

// Rotates each factor so its first non-negligible amplitude is real positive.
ProductVector canonical_phase(const ProductVector& v);

// Sorts by g, then by the canonical amplitude sequence, and drops entries
// whose g agrees within 1e-8 and whose overlap is >= 1 - 1e-8.
void sort_and_deduplicate(std::vector<SepSolution>& sols);

void finalize(SepSolutionSet& set);

}  // namespace noon_ent::detail
