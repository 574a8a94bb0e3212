#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qd {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// All matrices are dense; superoperators act on column-stacked states.

Mat kron(const Mat& a, const Mat& b);

inline Mat dagger(const Mat& a) { return a.adjoint(); }

struct EigSystem {
    Eigen::VectorXd values;  // ascending
    Mat vectors;             // columns, same order
};

// Throws std::invalid_argument if a is not Hermitian within tol,
// reporting the maximum asymmetry.
EigSystem herm_eig(const Mat& a, double tol = 1e-10);

// Scaling-and-squaring matrix exponential (Pade core).
Mat expm(const Mat& a);

// Column-stacking: v(i + j*rows) = m(i, j).
Vec vectorize(const Mat& m);
Mat devectorize(const Vec& v);  // throws if length is not a perfect square

double trace_distance(const Mat& rho, const Mat& sigma);

struct DensityMatrix {
    Mat rho;
    std::vector<int> dims;  // subsystem dimensions, product equals rho.rows()

    int dim() const { return static_cast<int>(rho.rows()); }

    double hermiticity_defect() const;
    double trace_defect() const;
    double min_eigenvalue() const;

    // Throws std::invalid_argument on violated invariants.
    void validate(double pos_tol = 1e-9) const;
};

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

DensityMatrix basis_state_projector(const std::vector<int>& dims,
                                    const std::vector<int>& levels);

}  // namespace qd
