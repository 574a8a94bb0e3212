#include "qd/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace qd {

namespace {

double diameter(const std::array<std::array<double, 2>, 3>& pts) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            d = std::max(d, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
        }
    }
    return d;
}

}  // namespace

SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f,
                             std::array<double, 2> start, double step,
                             double diameter_tol, int max_iter) {
    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    long evals = 0;
    auto eval = [&](const std::array<double, 2>& p) {
        ++evals;
        return f(p[0], p[1]);
    };

    std::array<std::array<double, 2>, 3> x{{
        start,
        {start[0] + step, start[1]},
        {start[0], start[1] + step},
    }};
    std::array<double, 3> fx{eval(x[0]), eval(x[1]), eval(x[2])};

    for (int it = 0; it < max_iter && diameter(x) > diameter_tol; ++it) {
        std::array<int, 3> ord{0, 1, 2};
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const auto& best = x[ord[0]];
        const auto& worst = x[ord[2]];

        const std::array<double, 2> cen{(best[0] + x[ord[1]][0]) / 2.0,
                                        (best[1] + x[ord[1]][1]) / 2.0};
        const std::array<double, 2> refl{cen[0] + alpha * (cen[0] - worst[0]),
                                         cen[1] + alpha * (cen[1] - worst[1])};
        const double frefl = eval(refl);

        if (frefl < fx[ord[0]]) {
            const std::array<double, 2> exp_{cen[0] + gamma * (refl[0] - cen[0]),
                                             cen[1] + gamma * (refl[1] - cen[1])};
            const double fexp = eval(exp_);
            if (fexp < frefl) {
                x[ord[2]] = exp_; fx[ord[2]] = fexp;
            } else {
                x[ord[2]] = refl; fx[ord[2]] = frefl;
            }
        } else if (frefl < fx[ord[1]]) {
            x[ord[2]] = refl; fx[ord[2]] = frefl;
        } else {
            const std::array<double, 2> con{cen[0] + rho * (worst[0] - cen[0]),
                                            cen[1] + rho * (worst[1] - cen[1])};
            const double fcon = eval(con);
            if (fcon < fx[ord[2]]) {
                x[ord[2]] = con; fx[ord[2]] = fcon;
            } else {
                for (int k = 1; k < 3; ++k) {
                    auto& p = x[ord[k]];
                    p = {best[0] + sigma * (p[0] - best[0]),
                         best[1] + sigma * (p[1] - best[1])};
                    fx[ord[k]] = eval(p);
                }
            }
        }
    }

    int imin = 0;
    for (int i = 1; i < 3; ++i) {
        if (fx[i] < fx[imin]) imin = i;
    }
    return SimplexResult{x[imin], fx[imin], evals};
}

}  // namespace qd
