#pragma once

#include <array>
#include <functional>

namespace qd {

struct SimplexResult {
    std::array<double, 2> point{};
    double value = 0.0;
    long evaluations = 0;
};

// Nelder-Mead minimization in two dimensions. Terminates when the simplex
// diameter drops below diameter_tol or after max_iter iterations.
SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f,
                             std::array<double, 2> start,
                             double step,
                             double diameter_tol = 1e-6,
                             int max_iter = 500);

}  // namespace qd
