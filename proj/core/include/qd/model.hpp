#pragma once

#include "qd/qmath.hpp"

#include <optional>

namespace qd {

// Physical rates in units of the atom-cavity coupling g. The dissipator
// prefactors are (n_T+1)*gamma, n_T*gamma, (m_T+1)*kappa, m_T*kappa with the
// factor-2 sandwich convention, so the zero-temperature decay channels carry
// total rates 2*gamma and 2*kappa.
struct ModelParams {
    double g = 1.0;
    double gamma = 0.0;
    double kappa = 0.0;
    double n_T = 0.0;
    double m_T = 0.0;
    int cutoff = 5;
    std::optional<double> omega_a;  // informational; dynamics is interaction-picture
    std::optional<double> omega_c;

    int cavity_dim() const { return cutoff + 1; }
    int dim() const { return 4 * (cutoff + 1); }
    std::vector<int> dims() const { return {2, 2, cutoff + 1}; }

    void validate() const;
};

struct Superoperator {
    int dim = 0;     // Hilbert dimension D; matrix is D^2 x D^2
    Mat matrix;
};

// Truncated cavity ladder operator, a|n> = sqrt(n)|n-1>, dimension cutoff+1.
Mat annihilation(int cutoff);

// Qubit basis order is |g>, |e>; sigma_minus = |g><e|.
Mat sigma_minus();

// Tensor order atom1 (x) atom2 (x) cavity throughout.
Mat embed_atom_op(const Mat& op, int atom_index, int cutoff);
Mat embed_cavity_op(const Mat& op, int cutoff);

Mat hamiltonian(const ModelParams& params);

// Generic generator assembly on column-stacked states:
//   -i[H, rho] + sum_k rate_k (2 C_k rho C_k^dag - C_k^dag C_k rho - rho C_k^dag C_k)
struct Channel {
    Mat op;
    double rate = 0.0;
};
Superoperator lindblad_superoperator(const Mat& h, const std::vector<Channel>& channels);

Superoperator liouvillian(const ModelParams& params);

// -i[H,rho] + dissipators applied directly to the matrix; must agree with
// devectorize(L * vectorize(rho)) entrywise.
Mat apply_generator(const ModelParams& params, const DensityMatrix& rho);

}  // namespace qd
