#pragma once

#include "cantor/reals.hpp"

#include <string>

namespace cantor {

// Named example targets shared by the command-line surface and the
// verification battery.
Real target_sqrt2_minus_1();
Real target_golden();
// sum of 2 * 3^{-n!}, the staircase point with factorially deep flats
Real target_lacunary3();

// Parse a target description: an exact rational ("p/q", "0.25"), a named
// constant (sqrt2-1, golden, lacunary3, pi, e, log2), or sqrtN / cbrtN for a
// positive integer N. Errors with "parse-error".
Real parse_target(const std::string& text);

}  // namespace cantor
