// Copyright 2026 The lruqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lruqec/analysis/fits.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace lruqec::analysis {

namespace {

/// Golden-section minimization of a smooth single-minimum objective.
double golden_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

std::vector<PlPoint> window(const std::vector<PlPoint>& curve, int start) {
    std::vector<PlPoint> out;
    for (const auto& pt : curve) {
        if (pt.rounds >= start) {
            out.push_back(pt);
        }
    }
    return out;
}

}  // namespace

FitResult fit_memory(const std::vector<PlPoint>& curve, int window_start) {
    const auto pts = window(curve, window_start);
    if (pts.size() < 3) {
        throw std::invalid_argument("memory fit needs at least 3 points in the window");
    }
    auto model = [](double eps, int rounds) {
        return 0.5 - 0.5 * std::pow(1.0 - 2.0 * eps, rounds);
    };
    auto chi2 = [&](double eps) {
        double acc = 0.0;
        for (const auto& pt : pts) {
            const double r = (pt.p - model(eps, pt.rounds)) / pt.sigma;
            acc += r * r;
        }
        return acc;
    };
    const double eps = golden_minimize(chi2, 0.0, 0.5, 1e-12);

    // Gauss-Newton curvature: var = 1 / sum w (dm/deps)^2.
    double curvature = 0.0;
    for (const auto& pt : pts) {
        const double dm = pt.rounds * std::pow(1.0 - 2.0 * eps, pt.rounds - 1);
        curvature += dm * dm / (pt.sigma * pt.sigma);
    }
    FitResult res;
    res.kind = FitKind::memory;
    res.epsilon = eps;
    res.epsilon_sigma = curvature > 0.0 ? 1.0 / std::sqrt(curvature) : 0.0;
    res.window_start = window_start;
    res.points_used = static_cast<int>(pts.size());
    res.chi2 = chi2(eps);
    return res;
}

FitResult fit_stability(const std::vector<PlPoint>& curve, int window_start) {
    const auto all = window(curve, window_start);
    std::vector<PlPoint> pts;
    int excluded = 0;
    for (const auto& pt : all) {
        if (pt.p > 0.0) {
            pts.push_back(pt);
        } else {
            ++excluded;
        }
    }
    if (pts.size() < 3) {
        throw std::invalid_argument("stability fit needs at least 3 nonzero points in the window");
    }

    // Weighted linear regression of log p on R; sigma_logp = sigma_p / p.
    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (const auto& pt : pts) {
        const double y = std::log(pt.p);
        const double sy = pt.sigma / pt.p;
        const double w = 1.0 / (sy * sy);
        const double x = pt.rounds;
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
    }
    const double det = sw * swxx - swx * swx;
    if (std::abs(det) < 1e-30) {
        throw std::runtime_error("degenerate stability fit");
    }
    const double intercept = (swxx * swy - swx * swxy) / det;
    const double slope = (sw * swxy - swx * swy) / det;
    const double var_intercept = swxx / det;
    const double var_slope = sw / det;

    FitResult res;
    res.kind = FitKind::stability;
    res.gamma = std::max(-slope, 0.0);
    res.gamma_sigma = std::sqrt(var_slope);
    res.amplitude = std::exp(intercept);
    res.amplitude_sigma = res.amplitude * std::sqrt(var_intercept);
    res.window_start = window_start;
    res.points_used = static_cast<int>(pts.size());
    res.excluded_points = excluded;
    for (const auto& pt : pts) {
        const double r = (pt.p - res.amplitude * std::exp(-res.gamma * pt.rounds)) / pt.sigma;
        res.chi2 += r * r;
    }
    return res;
}

FitResult fit_cheating(const std::vector<PlPoint>& curve, int window_start) {
    const auto pts = window(curve, window_start);
    if (pts.size() < 4) {
        throw std::invalid_argument("cheating fit needs at least 4 points");
    }
    // For fixed eps the model p_inf - C q^R (q = 1 - 2 eps) is linear in
    // (p_inf, C); profile the weighted chi^2 over eps.
    struct Linear {
        double p_inf, c, chi2;
    };
    auto solve_linear = [&](double eps) {
        const double q = 1.0 - 2.0 * eps;
        double s11 = 0.0, s1b = 0.0, sbb = 0.0, s1y = 0.0, sby = 0.0;
        for (const auto& pt : pts) {
            const double w = 1.0 / (pt.sigma * pt.sigma);
            const double basis = -std::pow(q, pt.rounds);
            s11 += w;
            s1b += w * basis;
            sbb += w * basis * basis;
            s1y += w * pt.p;
            sby += w * basis * pt.p;
        }
        const double det = s11 * sbb - s1b * s1b;
        Linear out{0.5, 0.5, 1e300};
        if (std::abs(det) < 1e-30) {
            return out;
        }
        out.p_inf = (sbb * s1y - s1b * sby) / det;
        out.c = (s11 * sby - s1b * s1y) / det;
        out.chi2 = 0.0;
        for (const auto& pt : pts) {
            const double m = out.p_inf - out.c * std::pow(1.0 - 2.0 * eps, pt.rounds);
            const double r = (pt.p - m) / pt.sigma;
            out.chi2 += r * r;
        }
        return out;
    };
    // The profiled chi^2 need not be unimodal in eps; locate the basin on a
    // coarse grid first, then refine.
    double best_e = 1e-6;
    double best_chi2 = solve_linear(best_e).chi2;
    const int n_scan = 400;
    for (int i = 1; i <= n_scan; ++i) {
        const double e = 1e-6 + (0.5 - 2e-6) * i / n_scan;
        const double c2 = solve_linear(e).chi2;
        if (c2 < best_chi2) {
            best_chi2 = c2;
            best_e = e;
        }
    }
    const double span = (0.5 - 2e-6) / n_scan;
    const double eps = golden_minimize([&](double e) { return solve_linear(e).chi2; },
                                       std::max(1e-6, best_e - span),
                                       std::min(0.5 - 1e-6, best_e + span), 1e-10);
    const Linear lin = solve_linear(eps);

    // Covariance from the 3-parameter Gauss-Newton normal matrix.
    const double q = 1.0 - 2.0 * eps;
    double a[3][3] = {{0.0}};
    for (const auto& pt : pts) {
        const double w = 1.0 / (pt.sigma * pt.sigma);
        const double j0 = 1.0;                                           // d/dp_inf
        const double j1 = -std::pow(q, pt.rounds);                       // d/dC
        const double j2 = lin.c * 2.0 * pt.rounds * std::pow(q, pt.rounds - 1);  // d/deps
        const double jac[3] = {j0, j1, j2};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                a[i][j] += w * jac[i] * jac[j];
            }
        }
    }
    // Invert the 3x3 normal matrix to read off var(p_inf) and var(eps).
    const double det3 = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                        a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                        a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    double var_pinf = 0.0, var_eps = 0.0;
    if (std::abs(det3) > 1e-30) {
        var_pinf = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det3;
        var_eps = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det3;
    }

    FitResult res;
    res.kind = FitKind::cheating;
    res.epsilon = eps;
    res.epsilon_sigma = var_eps > 0.0 ? std::sqrt(var_eps) : 0.0;
    res.p_inf = lin.p_inf;
    res.p_inf_sigma = var_pinf > 0.0 ? std::sqrt(var_pinf) : 0.0;
    res.r0 = (lin.c > 0.0 && q > 0.0 && q < 1.0) ? std::log(2.0 * lin.c) / std::log(q) : 0.0;
    res.window_start = window_start;
    res.points_used = static_cast<int>(pts.size());
    res.chi2 = lin.chi2;
    return res;
}

ExpDecayFit fit_exp_decay(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) {
        throw std::invalid_argument("exponential fit needs at least 3 points");
    }
    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    int used = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) {
            continue;
        }
        const double ly = std::log(y[i]);
        sw += 1.0;
        swx += x[i];
        swy += ly;
        swxx += x[i] * x[i];
        swxy += x[i] * ly;
        ++used;
    }
    if (used < 3) {
        throw std::invalid_argument("exponential fit needs at least 3 positive points");
    }
    const double det = sw * swxx - swx * swx;
    const double intercept = (swxx * swy - swx * swxy) / det;
    const double slope = (sw * swxy - swx * swy) / det;

    ExpDecayFit fit;
    fit.a = std::exp(intercept);
    fit.b = -slope;
    fit.points_used = used;

    double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
    int n = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (y[i] > 0.0) {
            mean += y[i];
            ++n;
        }
    }
    mean /= n;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) {
            continue;
        }
        const double fit_y = fit.a * std::exp(-fit.b * x[i]);
        ss_res += (y[i] - fit_y) * (y[i] - fit_y);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace lruqec::analysis
