#pragma once

#include "ocssg/rational.hpp"

#include <vector>

namespace ocssg {

struct LinearSolution {
    std::vector<Rational> x;
    // Determinant of the row-scaled integer system actually eliminated.
    // Every denominator in x divides it.
    Integer determinant;
};

// Solves a x = b for square nonsingular a. Each row is first scaled to
// integers, then reduced with Bareiss' fraction-free elimination.
// Throws std::domain_error when a is singular.
LinearSolution solve_linear_system(const std::vector<std::vector<Rational>>& a,
                                   const std::vector<Rational>& b);

}  // namespace ocssg
