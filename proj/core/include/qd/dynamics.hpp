#pragma once

#include "qd/model.hpp"

#include <functional>
#include <optional>

namespace qd {

struct Trajectory {
    std::vector<double> times;           // starting at 0, step dt
    std::vector<DensityMatrix> states;   // full composite space
    ModelParams params;
    double max_trace_drift = 0.0;        // largest |Tr-1| seen before renormalization
    double min_eigenvalue = 0.0;         // most negative eigenvalue seen
    bool positivity_flagged = false;     // eigenvalue dipped below -1e-6
};

struct SteadyState {
    DensityMatrix state;
    double residual = 0.0;      // Frobenius norm of the generator applied to state
    double spectral_gap = 0.0;  // second-smallest singular value of L
};

DensityMatrix initial_state(const ModelParams& params);  // |g g 0><g g 0|

struct EvolveStats {
    double max_trace_drift = 0.0;
    double min_eigenvalue = 0.0;
    bool positivity_flagged = false;
};

// Streaming evolution: steps the vectorized state with a single reused
// propagator expm(L*dt) and invokes observe at every report_dt (a multiple
// of dt) without retaining the visited states.
EvolveStats evolve_observed(
    const ModelParams& params, const DensityMatrix& rho0, double t_max,
    double dt, double report_dt,
    const std::function<void(double, const DensityMatrix&)>& observe);

Trajectory evolve(const ModelParams& params, const DensityMatrix& rho0,
                  double t_max, double dt);

SteadyState steady_state(const ModelParams& params);

// Null-space extraction for an arbitrary generator; dims labels the state.
SteadyState steady_state(const Superoperator& generator, const std::vector<int>& dims);

// Earliest time after which the series stays within tol of its final value.
// nullopt when the series has not settled inside the trajectory.
std::optional<double> settle_time(const std::vector<double>& times,
                                  const std::vector<double>& series, double tol);

enum class Observable { Discord, PhotonNumber };

double eval_observable(Observable obs, const DensityMatrix& full_state);

// Smallest cutoff c such that the steady-state observable changes by less
// than tol between c and c+2. Throws if no convergence below cutoff 30.
int cutoff_audit(ModelParams params, Observable obs, double tol);

}  // namespace qd
