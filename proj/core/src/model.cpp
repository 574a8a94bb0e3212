#include "qd/model.hpp"

#include <cmath>

namespace qd {

namespace {
const Complex kI(0.0, 1.0);
}

void ModelParams::validate() const {
    if (g < 0) throw std::invalid_argument("ModelParams: g must be >= 0");
    if (gamma < 0) throw std::invalid_argument("ModelParams: gamma must be >= 0");
    if (kappa < 0) throw std::invalid_argument("ModelParams: kappa must be >= 0");
    if (n_T < 0) throw std::invalid_argument("ModelParams: n_T must be >= 0");
    if (m_T < 0) throw std::invalid_argument("ModelParams: m_T must be >= 0");
    if (cutoff < 1) throw std::invalid_argument("ModelParams: cutoff must be >= 1");
}

Mat annihilation(int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("annihilation: cutoff must be >= 1");
    const int nc = cutoff + 1;
    Mat a = Mat::Zero(nc, nc);
    for (int n = 1; n < nc; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Mat sigma_minus() {
    Mat s = Mat::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

Mat embed_atom_op(const Mat& op, int atom_index, int cutoff) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("embed_atom_op: operator must be 2x2");
    }
    if (atom_index != 1 && atom_index != 2) {
        throw std::invalid_argument("embed_atom_op: atom index must be 1 or 2");
    }
    const Mat i2 = Mat::Identity(2, 2);
    const Mat ic = Mat::Identity(cutoff + 1, cutoff + 1);
    if (atom_index == 1) return kron(kron(op, i2), ic);
    return kron(kron(i2, op), ic);
}

Mat embed_cavity_op(const Mat& op, int cutoff) {
    if (op.rows() != cutoff + 1 || op.cols() != cutoff + 1) {
        throw std::invalid_argument("embed_cavity_op: operator dimension mismatch");
    }
    return kron(Mat::Identity(4, 4), op);
}

Mat hamiltonian(const ModelParams& params) {
    params.validate();
    const Mat a = embed_cavity_op(annihilation(params.cutoff), params.cutoff);
    const Mat ad = dagger(a);
    Mat h = Mat::Zero(params.dim(), params.dim());
    for (int i = 1; i <= 2; ++i) {
        const Mat sm = embed_atom_op(sigma_minus(), i, params.cutoff);
        h += params.g * (ad * sm + dagger(sm) * a);
    }
    return h;
}

Superoperator lindblad_superoperator(const Mat& h, const std::vector<Channel>& channels) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("lindblad_superoperator: Hamiltonian must be square");
    }
    const auto D = h.rows();
    const Mat id = Mat::Identity(D, D);
    Mat L = -kI * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& ch : channels) {
        if (ch.op.rows() != D || ch.op.cols() != D) {
            throw std::invalid_argument("lindblad_superoperator: channel dimension mismatch");
        }
        if (ch.rate < 0) {
            throw std::invalid_argument("lindblad_superoperator: negative channel rate");
        }
        if (ch.rate == 0.0) continue;
        // vec(C rho C^dag) = (conj(C) (x) C) vec(rho) under column stacking
        const Mat CdC = dagger(ch.op) * ch.op;
        L += ch.rate * (2.0 * kron(ch.op.conjugate(), ch.op)
                        - kron(id, CdC)
                        - kron(CdC.transpose(), id));
    }
    return Superoperator{static_cast<int>(D), std::move(L)};
}

Superoperator liouvillian(const ModelParams& params) {
    params.validate();
    std::vector<Channel> channels;
    const Mat a = embed_cavity_op(annihilation(params.cutoff), params.cutoff);
    for (int i = 1; i <= 2; ++i) {
        const Mat sm = embed_atom_op(sigma_minus(), i, params.cutoff);
        channels.push_back({sm, (params.n_T + 1.0) * params.gamma});
        channels.push_back({dagger(sm), params.n_T * params.gamma});
    }
    channels.push_back({a, (params.m_T + 1.0) * params.kappa});
    channels.push_back({dagger(a), params.m_T * params.kappa});
    return lindblad_superoperator(hamiltonian(params), channels);
}

Mat apply_generator(const ModelParams& params, const DensityMatrix& state) {
    params.validate();
    if (state.dim() != params.dim()) {
        throw std::invalid_argument("apply_generator: state dimension mismatch");
    }
    const Mat& rho = state.rho;
    const Mat H = hamiltonian(params);
    Mat out = -kI * (H * rho - rho * H);

    auto dissipate = [&](const Mat& C, double rate) {
        if (rate == 0.0) return;
        const Mat CdC = dagger(C) * C;
        out += rate * (2.0 * C * rho * dagger(C) - CdC * rho - rho * CdC);
    };

    const Mat a = embed_cavity_op(annihilation(params.cutoff), params.cutoff);
    for (int i = 1; i <= 2; ++i) {
        const Mat sm = embed_atom_op(sigma_minus(), i, params.cutoff);
        dissipate(sm, (params.n_T + 1.0) * params.gamma);
        dissipate(dagger(sm), params.n_T * params.gamma);
    }
    dissipate(a, (params.m_T + 1.0) * params.kappa);
    dissipate(dagger(a), params.m_T * params.kappa);
    return out;
}

}  // namespace qd
