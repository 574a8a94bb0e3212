#include "qd/correlations.hpp"

#include "qd/simplex.hpp"

#include <cmath>
#include <numbers>

namespace qd {

namespace {

constexpr double kProbFloor = 1e-14;

void require_two_qubits(const DensityMatrix& rho) {
    if (rho.dims != std::vector<int>{2, 2}) {
        throw std::invalid_argument("expected a two-qubit state with dims [2,2]");
    }
}

double entropy_of_eigenvalues(const Eigen::VectorXd& w) {
    double s = 0.0;
    for (double lam : w) {
        if (lam < 0.0) {
            if (lam < -1e-8) {
                throw std::invalid_argument("entropy: eigenvalue below -1e-8, not a state");
            }
            lam = 0.0;
        } else if (lam > 1.0 && lam < 1.0 + 1e-10) {
            lam = 1.0;
        }
        if (lam > 0.0) s -= lam * std::log2(lam);
    }
    return s;
}

}  // namespace

Mat MeasurementBasis::projector(int k) const {
    Vec psi(2);
    if (k == 1) {
        psi << std::cos(theta), std::exp(Complex(0, phi)) * std::sin(theta);
    } else if (k == 2) {
        psi << std::exp(Complex(0, -phi)) * std::sin(theta), -std::cos(theta);
    } else {
        throw std::invalid_argument("MeasurementBasis::projector: k must be 1 or 2");
    }
    return psi * psi.adjoint();
}

double entropy(const DensityMatrix& rho) {
    const auto eig = herm_eig(rho.rho);
    return entropy_of_eigenvalues(eig.values);
}

double mutual_information(const DensityMatrix& rho_ab) {
    require_two_qubits(rho_ab);
    const auto ra = partial_trace(rho_ab, {0});
    const auto rb = partial_trace(rho_ab, {1});
    return entropy(ra) + entropy(rb) - entropy(rho_ab);
}

double conditional_entropy(const DensityMatrix& rho_ab, const MeasurementBasis& basis) {
    require_two_qubits(rho_ab);
    const Mat i2 = Mat::Identity(2, 2);
    double total = 0.0;
    for (int k = 1; k <= 2; ++k) {
        const Mat M = kron(i2, basis.projector(k));
        Mat post = M * rho_ab.rho * M;
        // Hermitian by construction; normalizing by a small p amplifies
        // rounding asymmetry, so symmetrize before the eigensolve.
        post = 0.5 * (post + post.adjoint()).eval();
        const double p = post.trace().real();
        if (p < kProbFloor) continue;
        DensityMatrix cond{post / p, {2, 2}};
        const auto ra = partial_trace(cond, {0});
        // Normalizing by a small p scales rounding noise up to ~eps/p, which
        // can exceed the strict negativity guard in entropy(). The branch is
        // weighted by p, so clipping negatives to zero costs at most ~eps.
        const auto vals = herm_eig(ra.rho).values;
        double sum_pos = 0.0;
        for (double lam : vals) sum_pos += std::max(lam, 0.0);
        double s = 0.0;
        for (double lam : vals) {
            if (lam > 0.0) {
                const double q = lam / sum_pos;
                s -= q * std::log2(q);
            }
        }
        total += p * s;
    }
    return total;
}

ClassicalCorrelation classical_correlation(const DensityMatrix& rho_ab,
                                           int grid_theta, int grid_phi) {
    require_two_qubits(rho_ab);
    const double sa = entropy(partial_trace(rho_ab, {0}));

    long evals = 0;
    auto objective = [&](double th, double ph) {
        ++evals;
        return sa - conditional_entropy(rho_ab, MeasurementBasis{th, ph});
    };

    using std::numbers::pi;
    double best = -1.0;
    MeasurementBasis best_basis;
    for (int i = 0; i < grid_theta; ++i) {
        const double th = pi * i / grid_theta;
        for (int j = 0; j < grid_phi; ++j) {
            const double ph = 2.0 * pi * j / grid_phi;
            const double v = objective(th, ph);
            if (v > best) {
                best = v;
                best_basis = MeasurementBasis{th, ph};
            }
        }
    }

    const double step = pi / grid_theta;
    const auto refined = nelder_mead_2d(
        [&](double th, double ph) { return -objective(th, ph); },
        {best_basis.theta, best_basis.phi}, step, 1e-6);
    if (-refined.value > best) {
        best = -refined.value;
        best_basis = MeasurementBasis{refined.point[0], refined.point[1]};
    }
    return ClassicalCorrelation{best, best_basis, evals};
}

CorrelationReport discord(const DensityMatrix& rho_ab) {
    require_two_qubits(rho_ab);
    CorrelationReport report;
    report.mutual_information = mutual_information(rho_ab);
    const auto cc = classical_correlation(rho_ab);
    report.classical_correlation = cc.value;
    report.optimal_basis = cc.basis;
    report.optimizer_evaluations = cc.evaluations;
    report.discord = report.mutual_information - report.classical_correlation;
    report.concurrence = concurrence(rho_ab);
    return report;
}

double concurrence(const DensityMatrix& rho_ab) {
    require_two_qubits(rho_ab);
    Mat yy = Mat::Zero(4, 4);
    yy(0, 3) = -1; yy(1, 2) = 1; yy(2, 1) = 1; yy(3, 0) = -1;
    const Mat R = rho_ab.rho * yy * rho_ab.rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat> solver(R);
    Eigen::Vector4d lam;
    for (int i = 0; i < 4; ++i) {
        lam(i) = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
    }
    std::sort(lam.data(), lam.data() + 4, std::greater<double>());
    return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

CorrelationReport atoms_report(const DensityMatrix& rho_full) {
    if (rho_full.dims.size() != 3 || rho_full.dims[0] != 2 || rho_full.dims[1] != 2) {
        throw std::invalid_argument("atoms_report: expected dims [2,2,cavity]");
    }
    return discord(partial_trace(rho_full, {0, 1}));
}

}  // namespace qd
