#include "qd/dynamics.hpp"

#include "qd/correlations.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace qd;

namespace {
double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
}

TEST_CASE("initial state is the pure vacuum |g g 0>") {
    ModelParams p;
    const auto rho0 = initial_state(p);
    rho0.validate();
    CHECK(std::abs(rho0.rho.trace() - Complex(1.0)) < 1e-15);
    CHECK(std::abs((rho0.rho * rho0.rho).trace() - Complex(1.0)) < 1e-15);

    const auto cav = partial_trace(rho0, {2});
    const Mat a = annihilation(p.cutoff);
    CHECK(std::abs((dagger(a) * a * cav.rho).trace()) < 1e-15);
    for (int atom = 0; atom < 2; ++atom) {
        const auto r = partial_trace(rho0, {atom});
        CHECK(std::abs(r.rho(1, 1)) < 1e-15);
    }

    // atom-swap symmetry: swapping the two identical qubit factors is a no-op
    const auto swapped = partial_trace(rho0, {1, 0});
    CHECK(max_abs(swapped.rho - partial_trace(rho0, {0, 1}).rho) == 0.0);
}

TEST_CASE("vacuum is stationary without noise") {
    ModelParams p;
    p.gamma = 0.1; p.kappa = 1.5; p.cutoff = 2;
    const auto traj = evolve(p, initial_state(p), 5.0, 0.1);
    for (const auto& state : traj.states) {
        CHECK(max_abs(state.rho - initial_state(p).rho) < 1e-12);
    }
    CHECK(atoms_report(traj.states.back()).discord < 1e-9);
}

TEST_CASE("closed evolution conserves excitation number and spectrum") {
    ModelParams p;
    p.cutoff = 2;
    const auto rho0 = basis_state_projector(p.dims(), {0, 0, 1});

    const Mat sm = sigma_minus();
    const Mat a = annihilation(p.cutoff);
    const Mat n_op = embed_atom_op(dagger(sm) * sm, 1, p.cutoff) +
                     embed_atom_op(dagger(sm) * sm, 2, p.cutoff) +
                     embed_cavity_op(dagger(a) * a, p.cutoff);

    const auto traj = evolve(p, rho0, 20.0, 0.1);
    const auto spectrum0 = herm_eig(rho0.rho).values;
    for (const auto& state : traj.states) {
        CHECK(std::abs((n_op * state.rho).trace().real() - 1.0) < 1e-9);
    }
    const auto spectrum_end = herm_eig(traj.states.back().rho).values;
    CHECK((spectrum_end - spectrum0).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("trace and Hermiticity are preserved along a noisy trajectory") {
    ModelParams p;
    p.gamma = 0.1; p.kappa = 1.5; p.n_T = 0.7; p.cutoff = 3;
    const auto traj = evolve(p, initial_state(p), 10.0, 0.05);
    CHECK(traj.max_trace_drift < 1e-9);
    CHECK(traj.min_eigenvalue > -1e-8);
    CHECK_FALSE(traj.positivity_flagged);
    for (const auto& state : traj.states) {
        CHECK(state.hermiticity_defect() < 1e-10);
        CHECK(state.trace_defect() < 1e-12);
    }
}

TEST_CASE("propagator semigroup property") {
    ModelParams p;
    p.gamma = 0.3; p.kappa = 0.6; p.n_T = 0.5; p.m_T = 0.2; p.cutoff = 2;
    const auto rho0 = initial_state(p);
    const auto fine = evolve(p, rho0, 2.0, 0.1);
    const auto coarse = evolve(p, rho0, 2.0, 0.2);
    CHECK(trace_distance(fine.states.back().rho, coarse.states.back().rho) < 1e-10);
}

TEST_CASE("atom-exchange symmetry holds along the trajectory") {
    ModelParams p;
    p.gamma = 0.2; p.kappa = 0.9; p.n_T = 0.8; p.m_T = 0.1; p.cutoff = 2;
    const auto traj = evolve(p, initial_state(p), 6.0, 0.1);
    for (const auto& state : traj.states) {
        const auto atoms = partial_trace(state, {0, 1});
        Mat swapped(4, 4);
        // exchange the two qubit indices: basis order gg, ge, eg, ee
        const int perm[4] = {0, 2, 1, 3};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) swapped(i, j) = atoms.rho(perm[i], perm[j]);
        }
        CHECK(max_abs(swapped - atoms.rho) < 1e-9);
    }
}

TEST_CASE("steady state: decoupled thermal atoms") {
    // g = 0 decouples atoms from the cavity; kappa drains the cavity to vacuum
    // so the composite null space stays one-dimensional.
    ModelParams p;
    p.g = 0.0; p.gamma = 1.0; p.kappa = 1.0; p.n_T = 1.0; p.cutoff = 2;
    const auto ss = steady_state(p);
    CHECK(ss.residual < 1e-9);
    CHECK(ss.spectral_gap > 1e-8);
    for (int atom = 0; atom < 2; ++atom) {
        const auto r = partial_trace(ss.state, {atom});
        CHECK(r.rho(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    }
}

TEST_CASE("steady state: thermal cavity detailed balance") {
    // one-mode generator at cutoff 15 via the generic assembly
    const int cutoff = 15;
    const Mat a = annihilation(cutoff);
    const Mat h = Mat::Zero(cutoff + 1, cutoff + 1);
    const double m_T = 0.5;
    const auto L = lindblad_superoperator(
        h, {{a, (m_T + 1.0) * 1.0}, {dagger(a), m_T * 1.0}});
    const auto ss = steady_state(L, {cutoff + 1});
    const double n_mean = (dagger(a) * a * ss.state.rho).trace().real();
    CHECK(n_mean == doctest::Approx(m_T).epsilon(1e-4));
}

TEST_CASE("steady state matches long-time evolution in the strong-noise regime") {
    ModelParams p;
    p.gamma = 0.1; p.kappa = 1.5; p.n_T = 0.7; p.cutoff = 3;
    const auto ss = steady_state(p);
    DensityMatrix last{Mat(), {}};
    evolve_observed(p, initial_state(p), 100.0, 0.1, 100.0,
                    [&](double, const DensityMatrix& s) { last = s; });
    CHECK(trace_distance(ss.state.rho, last.rho) < 1e-6);
}

TEST_CASE("steady state rejects non-dissipative and degenerate models") {
    ModelParams closed;
    CHECK_THROWS_AS(steady_state(closed), std::invalid_argument);

    // g = 0 and kappa = 0 leaves the cavity sector untouched: degenerate
    ModelParams degen;
    degen.g = 0.0; degen.gamma = 1.0; degen.cutoff = 1;
    CHECK_THROWS_WITH_AS(steady_state(degen), doctest::Contains("non-unique"),
                         std::runtime_error);
}

TEST_CASE("settle_time") {
    const std::vector<double> times{0, 1, 2, 3};
    CHECK(settle_time(times, {2.0, 2.0, 2.0, 2.0}, 0.01) == 0.0);

    std::vector<double> t, s;
    for (int i = 0; i <= 1000; ++i) {
        t.push_back(0.01 * i);
        s.push_back(std::exp(-0.01 * i));
    }
    const auto st = settle_time(t, s, 0.01);
    REQUIRE(st.has_value());
    // final value is e^-10 ~ 0; series enters the 0.01 band at t = -ln(0.01)
    CHECK(*st == doctest::Approx(4.6).epsilon(0.01));

    // a series still moving at the last sample reports not settled
    std::vector<double> t2{0, 1, 2}, s2{0.0, 0.5, 1.0};
    CHECK_FALSE(settle_time(t2, s2, 0.1).has_value());

    CHECK_THROWS_AS(settle_time({0, 1}, {0.0}, 0.1), std::invalid_argument);
}

TEST_CASE("cutoff audit") {
    // vacuum dynamics stays below one excitation
    ModelParams vac;
    vac.gamma = 0.1; vac.kappa = 1.5;
    CHECK(cutoff_audit(vac, Observable::PhotonNumber, 1e-6) == 1);
    CHECK(cutoff_audit(vac, Observable::Discord, 1e-6) == 1);

    // a hot cavity needs more room than cutoff 5
    ModelParams hot;
    hot.g = 0.0; hot.gamma = 1.0; hot.kappa = 1.0; hot.m_T = 2.0;
    CHECK(cutoff_audit(hot, Observable::PhotonNumber, 1e-3) > 5);
}
