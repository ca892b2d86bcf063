#pragma once

#include <vector>

#include "towerforge/bigint.hpp"

namespace towerforge {

using IMat = std::vector<std::vector<Int>>;

// Smith normal form U * M * V = D with U, V unimodular and D diagonal with
// nonnegative entries d_1 | d_2 | ... . Also returns the inverses of the
// transforms.
struct SmithResult {
    IMat D, U, Uinv, V, Vinv;
};

SmithResult smith_normal_form(IMat m);

IMat identity_matrix(std::size_t n);
IMat mat_mul(const IMat& a, const IMat& b);

}  // namespace towerforge
