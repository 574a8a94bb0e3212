#include "qd/dynamics.hpp"

#include "qd/correlations.hpp"

#include <cmath>
#include <limits>

namespace qd {

DensityMatrix initial_state(const ModelParams& params) {
    params.validate();
    return basis_state_projector(params.dims(), {0, 0, 0});
}

EvolveStats evolve_observed(
    const ModelParams& params, const DensityMatrix& rho0, double t_max,
    double dt, double report_dt,
    const std::function<void(double, const DensityMatrix&)>& observe) {
    params.validate();
    if (!(dt > 0) || t_max < dt) {
        throw std::invalid_argument("evolve: need dt > 0 and t_max >= dt");
    }
    if (rho0.dim() != params.dim()) {
        throw std::invalid_argument("evolve: initial state dimension mismatch");
    }
    const auto report_every = static_cast<long>(std::llround(report_dt / dt));
    if (report_every < 1 || std::abs(report_every * dt - report_dt) > 1e-9 * report_dt) {
        throw std::invalid_argument("evolve: report_dt must be a multiple of dt");
    }

    const auto L = liouvillian(params);
    const Mat propagator = expm(L.matrix * dt);
    if (!propagator.allFinite()) {
        throw std::runtime_error("evolve: propagator has non-finite entries");
    }

    EvolveStats stats;
    const auto n_steps = static_cast<long>(std::floor(t_max / dt + 1e-9));
    Vec v = vectorize(rho0.rho);
    const auto dims = params.dims();
    for (long k = 0; k <= n_steps; ++k) {
        if (k > 0) v = propagator * v;
        Mat rho = devectorize(v);
        rho = 0.5 * (rho + rho.adjoint());
        const double drift = std::abs(rho.trace() - Complex(1.0));
        stats.max_trace_drift = std::max(stats.max_trace_drift, drift);
        if (drift > 1e-12) {
            rho /= rho.trace().real();
        }
        v = vectorize(rho);
        if (k % report_every == 0 || k == n_steps) {
            DensityMatrix state{std::move(rho), dims};
            const double lam_min = state.min_eigenvalue();
            stats.min_eigenvalue = std::min(stats.min_eigenvalue, lam_min);
            if (lam_min < -1e-6) stats.positivity_flagged = true;
            observe(k * dt, state);
        }
    }
    return stats;
}

Trajectory evolve(const ModelParams& params, const DensityMatrix& rho0,
                  double t_max, double dt) {
    Trajectory traj;
    traj.params = params;
    const auto stats = evolve_observed(
        params, rho0, t_max, dt, dt,
        [&](double t, const DensityMatrix& state) {
            traj.times.push_back(t);
            traj.states.push_back(state);
        });
    traj.max_trace_drift = stats.max_trace_drift;
    traj.min_eigenvalue = stats.min_eigenvalue;
    traj.positivity_flagged = stats.positivity_flagged;
    return traj;
}

SteadyState steady_state(const Superoperator& generator, const std::vector<int>& dims) {
    Eigen::BDCSVD<Mat> svd(generator.matrix, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const auto n = sv.size();
    const double gap = sv(n - 2);
    if (gap < 1e-8) {
        throw std::runtime_error("steady_state: non-unique steady state (degenerate null space)");
    }

    Mat rho = devectorize(svd.matrixV().col(n - 1));
    rho = 0.5 * (rho + rho.adjoint());
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12) {
        throw std::runtime_error("steady_state: null vector is traceless");
    }
    rho /= tr;

    DensityMatrix state{std::move(rho), dims};
    if (state.min_eigenvalue() < -1e-7) {
        throw std::runtime_error("steady_state: negative eigenvalue beyond -1e-7");
    }
    const double residual = devectorize(generator.matrix * vectorize(state.rho)).norm();
    return SteadyState{std::move(state), residual, gap};
}

SteadyState steady_state(const ModelParams& params) {
    params.validate();
    if (params.gamma <= 0 && params.kappa <= 0) {
        throw std::invalid_argument(
            "steady_state: at least one dissipative rate must be positive");
    }
    return steady_state(liouvillian(params), params.dims());
}

std::optional<double> settle_time(const std::vector<double>& times,
                                  const std::vector<double>& series, double tol) {
    if (times.size() != series.size() || times.empty()) {
        throw std::invalid_argument("settle_time: series length mismatch");
    }
    const double final_value = series.back();
    // Walk back from the end; the settle point is just after the last excursion.
    for (auto i = static_cast<long>(series.size()) - 1; i >= 0; --i) {
        if (std::abs(series[i] - final_value) > tol) {
            // an excursion at or next to the last sample means the series has
            // not demonstrated stability inside the window
            if (i + 2 >= static_cast<long>(series.size())) return std::nullopt;
            return times[i + 1];
        }
    }
    return times.front();
}

double eval_observable(Observable obs, const DensityMatrix& full_state) {
    switch (obs) {
        case Observable::Discord:
            return atoms_report(full_state).discord;
        case Observable::PhotonNumber: {
            const int cutoff = full_state.dims.back() - 1;
            const Mat a = annihilation(cutoff);
            const auto cav = partial_trace(full_state, {2});
            return (dagger(a) * a * cav.rho).trace().real();
        }
    }
    throw std::invalid_argument("eval_observable: unknown observable");
}

int cutoff_audit(ModelParams params, Observable obs, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("cutoff_audit: tol must be positive");
    constexpr int kMaxCutoff = 30;

    auto observable_at = [&](int cutoff) {
        ModelParams p = params;
        p.cutoff = cutoff;
        if (p.g == 0.0 && obs == Observable::PhotonNumber && p.kappa > 0) {
            // atoms decouple; the cavity marginal is the one-mode fixed point
            const Mat a = annihilation(cutoff);
            const auto L = lindblad_superoperator(
                Mat::Zero(cutoff + 1, cutoff + 1),
                {{a, (p.m_T + 1.0) * p.kappa}, {dagger(a), p.m_T * p.kappa}});
            const auto ss = steady_state(L, {cutoff + 1});
            return (dagger(a) * a * ss.state.rho).trace().real();
        }
        if (p.gamma <= 0 && p.kappa <= 0) {
            // Purely coherent dynamics has no steady state; audit the
            // long-time-average observable instead of the null space.
            const auto traj = evolve(p, initial_state(p), 20.0, 0.1);
            double acc = 0.0;
            for (const auto& s : traj.states) acc += eval_observable(obs, s);
            return acc / double(traj.states.size());
        }
        return eval_observable(obs, steady_state(p).state);
    };

    std::vector<double> value(kMaxCutoff + 1,
                              std::numeric_limits<double>::quiet_NaN());
    auto at = [&](int c) {
        if (std::isnan(value[c])) value[c] = observable_at(c);
        return value[c];
    };
    for (int c = 1; c + 2 <= kMaxCutoff; ++c) {
        if (std::abs(at(c + 2) - at(c)) < tol) return c;
    }
    throw std::runtime_error("cutoff_audit: no convergence below cutoff 30");
}

}  // namespace qd
