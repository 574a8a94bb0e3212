#include "qd/qmath.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numeric>
#include <sstream>

namespace qd {

Mat kron(const Mat& a, const Mat& b) {
    return Eigen::kroneckerProduct(a, b);
}

EigSystem herm_eig(const Mat& a, double tol) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("herm_eig: matrix is not square");
    }
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        std::ostringstream os;
        os << "herm_eig: matrix is not Hermitian, max asymmetry " << asym;
        throw std::invalid_argument(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(a);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("herm_eig: eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Mat expm(const Mat& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("expm: matrix is not square");
    }
    if (!a.allFinite()) {
        throw std::invalid_argument("expm: matrix has non-finite entries");
    }
    return a.exp();
}

Vec vectorize(const Mat& m) {
    return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat devectorize(const Vec& v) {
    const auto n = v.size();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
    if (d * d != n) {
        throw std::invalid_argument("devectorize: length is not a perfect square");
    }
    return Eigen::Map<const Mat>(v.data(), d, d);
}

double trace_distance(const Mat& rho, const Mat& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    const auto eig = herm_eig(rho - sigma, 1e-8);
    return 0.5 * eig.values.cwiseAbs().sum();
}

double DensityMatrix::hermiticity_defect() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_defect() const {
    return std::abs(rho.trace() - Complex(1.0));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (rho + rho.adjoint()));
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double pos_tol) const {
    const long prod = std::accumulate(dims.begin(), dims.end(), 1L,
                                      std::multiplies<long>());
    if (rho.rows() != rho.cols() || prod != rho.rows()) {
        throw std::invalid_argument("DensityMatrix: dims do not match matrix size");
    }
    if (!rho.allFinite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    }
    if (hermiticity_defect() > 1e-10) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    }
    if (trace_defect() > 1e-9) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-9");
    }
    if (min_eigenvalue() < -pos_tol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& keep) {
    const auto& dims = state.dims;
    const int n = static_cast<int>(dims.size());
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) {
            throw std::invalid_argument("partial_trace: subsystem index out of range");
        }
        kept[k] = true;
    }

    std::vector<int> out_dims;
    long dout = 1;
    for (int i = 0; i < n; ++i) {
        if (kept[i]) {
            out_dims.push_back(dims[i]);
            dout *= dims[i];
        }
    }

    // Strides of each factor in the composite index (last factor fastest).
    std::vector<long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    Mat out = Mat::Zero(dout, dout);
    std::vector<int> idx_row(n, 0), idx_col(n, 0);

    const long D = state.rho.rows();
    for (long r = 0; r < D; ++r) {
        long rr = r;
        for (int i = 0; i < n; ++i) { idx_row[i] = int(rr / stride[i]); rr %= stride[i]; }
        for (long c = 0; c < D; ++c) {
            // traced-out factors must match on row and column
            long cc = c;
            bool diag = true;
            for (int i = 0; i < n; ++i) {
                idx_col[i] = int(cc / stride[i]);
                cc %= stride[i];
                if (!kept[i] && idx_col[i] != idx_row[i]) { diag = false; break; }
            }
            if (!diag) continue;
            long orow = 0, ocol = 0;
            for (int i = 0; i < n; ++i) {
                if (kept[i]) {
                    orow = orow * dims[i] + idx_row[i];
                    ocol = ocol * dims[i] + idx_col[i];
                }
            }
            out(orow, ocol) += state.rho(r, c);
        }
    }
    return DensityMatrix{std::move(out), std::move(out_dims)};
}

DensityMatrix basis_state_projector(const std::vector<int>& dims,
                                    const std::vector<int>& levels) {
    if (dims.size() != levels.size()) {
        throw std::invalid_argument("basis_state_projector: dims/levels size mismatch");
    }
    long D = 1, index = 0;
    for (size_t i = 0; i < dims.size(); ++i) {
        if (levels[i] < 0 || levels[i] >= dims[i]) {
            throw std::invalid_argument("basis_state_projector: level out of range");
        }
        index = index * dims[i] + levels[i];
        D *= dims[i];
    }
    Mat rho = Mat::Zero(D, D);
    rho(index, index) = 1.0;
    return DensityMatrix{std::move(rho), dims};
}

}  // namespace qd
