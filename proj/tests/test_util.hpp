#pragma once

#include "qd/qmath.hpp"

#include <random>

namespace qdtest {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817);
    return gen;
}

inline qd::Mat random_matrix(int rows, int cols) {
    std::normal_distribution<double> d;
    qd::Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = qd::Complex(d(rng()), d(rng()));
        }
    }
    return m;
}

inline qd::Mat random_hermitian(int n) {
    const qd::Mat m = random_matrix(n, n);
    return 0.5 * (m + m.adjoint());
}

inline qd::DensityMatrix random_density(const std::vector<int>& dims) {
    long d = 1;
    for (int x : dims) d *= x;
    const qd::Mat g = random_matrix(int(d), int(d));
    qd::Mat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return qd::DensityMatrix{std::move(rho), dims};
}

inline qd::Mat pauli_x() {
    qd::Mat s(2, 2);
    s << 0, 1, 1, 0;
    return s;
}

inline qd::Mat pauli_y() {
    qd::Mat s(2, 2);
    s << qd::Complex(0, 0), qd::Complex(0, -1), qd::Complex(0, 1), qd::Complex(0, 0);
    return s;
}

inline qd::Mat pauli_z() {
    qd::Mat s(2, 2);
    s << 1, 0, 0, -1;
    return s;
}

inline qd::DensityMatrix bell_phi_plus() {
    qd::Vec psi = qd::Vec::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return qd::DensityMatrix{psi * psi.adjoint(), {2, 2}};
}

inline qd::DensityMatrix bell_psi_plus() {
    qd::Vec psi = qd::Vec::Zero(4);
    psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
    return qd::DensityMatrix{psi * psi.adjoint(), {2, 2}};
}

inline qd::DensityMatrix werner(double p) {
    const auto bell = bell_phi_plus();
    return qd::DensityMatrix{p * bell.rho + (1.0 - p) * qd::Mat::Identity(4, 4) / 4.0,
                             {2, 2}};
}

}  // namespace qdtest
