#pragma once

#include "chromroots/bigint.hpp"
#include "chromroots/polynomial.hpp"

#include <span>
#include <vector>

namespace chromroots {

/// Power sums p_1..p_K of the roots from elementary symmetric values
/// e_1, e_2, ... (missing e_i are zero), by Newton's identities.
std::vector<Rational> power_sums_from_elementary(std::span<const Rational> e, int k_max);

/// p_1..p_K of the roots of a monic polynomial, with no root finding.
std::vector<Rational> power_sums_from_coeffs(const IntPolynomial& p, int k_max);

}  // namespace chromroots
