#pragma once

#include "qd/qmath.hpp"

namespace qd {

// Projective measurement family on one qubit:
//   |psi1> = cos(theta)|g> + e^{+i phi} sin(theta)|e>
//   |psi2> = e^{-i phi} sin(theta)|g> - cos(theta)|e>
struct MeasurementBasis {
    double theta = 0.0;
    double phi = 0.0;

    Mat projector(int k) const;  // k = 1 or 2
};

struct CorrelationReport {
    double mutual_information = 0.0;   // bits
    double classical_correlation = 0.0;
    double discord = 0.0;
    double concurrence = 0.0;
    MeasurementBasis optimal_basis;
    long optimizer_evaluations = 0;
};

// Von Neumann entropy in bits; eigenvalues within 1e-10 of [0,1] are clipped.
double entropy(const DensityMatrix& rho);

double mutual_information(const DensityMatrix& rho_ab);

// Measurement acts on atom 2 (subsystem b); outcomes with p_k < 1e-14
// contribute zero.
double conditional_entropy(const DensityMatrix& rho_ab, const MeasurementBasis& basis);

struct ClassicalCorrelation {
    double value = 0.0;
    MeasurementBasis basis;
    long evaluations = 0;
};

// max over (theta, phi) of S(rho^a) - S(rho|{B_k}): coarse grid followed by
// Nelder-Mead refinement down to simplex diameter 1e-6 rad.
ClassicalCorrelation classical_correlation(const DensityMatrix& rho_ab,
                                           int grid_theta = 48, int grid_phi = 48);

CorrelationReport discord(const DensityMatrix& rho_ab);

// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho_ab);

// Trace out the cavity from a [2,2,nc] state and report on the atoms.
CorrelationReport atoms_report(const DensityMatrix& rho_full);

}  // namespace qd
