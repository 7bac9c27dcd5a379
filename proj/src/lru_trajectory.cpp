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

#include "lruqec/lru/trajectory.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lruqec/rng.hpp"

namespace lruqec::lru {

namespace {

/// Transmon (3 levels) x resonator (cutoff+1 Fock states), level-major:
/// index = level * (N+1) + n.
struct Workspace {
    int n_fock;  // N + 1
    double delta_r[3];
    double delta_q;
    double kappa;
    double gamma1, gamma_ef, gamma_phi;
    std::vector<double> sqrt_n;  // sqrt(0..N)
    // Dispersive-breakdown scrambling weight per Fock state:
    // mist_rate * max(0, n / n_crit - 1); zero in the dispersive regime.
    std::vector<double> mist_w;

    int dim() const { return 3 * n_fock; }
    int idx(int level, int n) const { return level * n_fock + n; }
};

using Vec = std::vector<Complex>;

/// y = -i H_eff psi with the drives at (eps_r, omega_t).
void apply_rhs(const Workspace& w, const Vec& psi, double eps_r, double omega_t, Vec& y) {
    const int nf = w.n_fock;
    for (int level = 0; level < 3; ++level) {
        const double gamma_level = (level == 1 ? w.gamma1 : 0.0) +
                                   (level == 2 ? w.gamma_ef : 0.0) +
                                   w.gamma_phi * level * level;
        for (int n = 0; n < nf; ++n) {
            const int i = w.idx(level, n);
            // Diagonal: dispersive pull + drive detuning on |f>, minus i/2
            // times the total jump rate (photon loss + transmon channels).
            const double re_h = w.delta_r[level] * n + (level == 2 ? w.delta_q : 0.0);
            // The up- and down-cycle scrambling operators together
            // contribute 2 * mist_w(n) to the total jump rate.
            const double decay = w.kappa * n + gamma_level + 2.0 * w.mist_w[static_cast<size_t>(n)];
            Complex acc = Complex(re_h, -0.5 * decay) * psi[i];
            // Resonator drive eps_r (a + a^dag).
            if (eps_r != 0.0) {
                if (n + 1 < nf) {
                    acc += eps_r * w.sqrt_n[n + 1] * psi[i + 1];
                }
                if (n > 0) {
                    acc += eps_r * w.sqrt_n[n] * psi[i - 1];
                }
            }
            // Transmon drive Omega/2 (|e><f| + |f><e|).
            if (omega_t != 0.0) {
                if (level == 1) {
                    acc += 0.5 * omega_t * psi[w.idx(2, n)];
                } else if (level == 2) {
                    acc += 0.5 * omega_t * psi[w.idx(1, n)];
                }
            }
            y[i] = Complex(0.0, -1.0) * acc;
        }
    }
}

void rk4_step(const Workspace& w, Vec& psi, double t, double dt, const LRUPulseParams& pulse,
              Vec& k1, Vec& k2, Vec& k3, Vec& k4, Vec& tmp) {
    auto drives = [&](double time, double& eps, double& om) {
        eps = pulse.resonator_amp_rad_ns * pulse.resonator_envelope(time);
        om = pulse.transmon_amp_rad_ns * pulse.transmon_envelope(time);
    };
    const int d = w.dim();
    double eps, om;
    drives(t, eps, om);
    apply_rhs(w, psi, eps, om, k1);
    drives(t + 0.5 * dt, eps, om);
    for (int i = 0; i < d; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    apply_rhs(w, tmp, eps, om, k2);
    for (int i = 0; i < d; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    apply_rhs(w, tmp, eps, om, k3);
    drives(t + dt, eps, om);
    for (int i = 0; i < d; ++i) tmp[i] = psi[i] + dt * k3[i];
    apply_rhs(w, tmp, eps, om, k4);
    for (int i = 0; i < d; ++i) {
        psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

double norm_sq(const Vec& psi) {
    double s = 0.0;
    for (const auto& a : psi) {
        s += std::norm(a);
    }
    return s;
}

void normalize(Vec& psi) {
    const double n2 = norm_sq(psi);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw std::runtime_error("trajectory integrator produced a non-finite state");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : psi) {
        a *= inv;
    }
}

/// Jump channels: photon loss, |g><e|, |e><f|, transmon dephasing, and the
/// two high-photon scrambling cycles.
void apply_collapse(const Workspace& w, Vec& psi, int channel) {
    const int nf = w.n_fock;
    if (channel == 4 || channel == 5) {  // level cycle on the n > n_crit subspace
        Vec out(psi.size(), Complex(0.0, 0.0));
        for (int level = 0; level < 3; ++level) {
            const int src = channel == 4 ? (level + 2) % 3 : (level + 1) % 3;
            for (int n = 0; n < nf; ++n) {
                out[static_cast<size_t>(w.idx(level, n))] =
                    std::sqrt(w.mist_w[static_cast<size_t>(n)]) * psi[w.idx(src, n)];
            }
        }
        psi = std::move(out);
        normalize(psi);
        return;
    }
    if (channel == 0) {  // a
        for (int level = 0; level < 3; ++level) {
            for (int n = 0; n + 1 < nf; ++n) {
                psi[w.idx(level, n)] = w.sqrt_n[n + 1] * psi[w.idx(level, n + 1)];
            }
            psi[w.idx(level, nf - 1)] = 0.0;
        }
    } else if (channel == 1) {  // |g><e|
        for (int n = 0; n < nf; ++n) {
            psi[w.idx(0, n)] = psi[w.idx(1, n)];
            psi[w.idx(1, n)] = 0.0;
            psi[w.idx(2, n)] = 0.0;
        }
    } else if (channel == 2) {  // |e><f|
        for (int n = 0; n < nf; ++n) {
            psi[w.idx(1, n)] = psi[w.idx(2, n)];
            psi[w.idx(2, n)] = 0.0;
            psi[w.idx(0, n)] = 0.0;
        }
    } else {  // diag(0, 1, 2)
        for (int level = 0; level < 3; ++level) {
            for (int n = 0; n < nf; ++n) {
                psi[w.idx(level, n)] *= static_cast<double>(level);
            }
        }
    }
    normalize(psi);
}

void pick_and_apply_jump(const Workspace& w, Vec& psi, Rng& rng) {
    double weights[6] = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const int nf = w.n_fock;
    for (int level = 0; level < 3; ++level) {
        for (int n = 0; n < nf; ++n) {
            const double p = std::norm(psi[w.idx(level, n)]);
            weights[0] += w.kappa * n * p;
            if (level == 1) {
                weights[1] += w.gamma1 * p;
            }
            if (level == 2) {
                weights[2] += w.gamma_ef * p;
            }
            weights[3] += w.gamma_phi * level * level * p;
            weights[4] += w.mist_w[static_cast<size_t>(n)] * p;
            weights[5] += w.mist_w[static_cast<size_t>(n)] * p;
        }
    }
    const double total =
        weights[0] + weights[1] + weights[2] + weights[3] + weights[4] + weights[5];
    if (!(total > 0.0)) {
        normalize(psi);
        return;
    }
    apply_collapse(w, psi, rng.sample_discrete(weights, 6, total));
}

struct TrajectoryAccumulator {
    std::vector<Complex> field;
    std::vector<std::array<double, 3>> pops;
    std::vector<double> photons;
    std::vector<double> top_fock;  // ensemble accumulation per sample
    std::vector<Complex> signals;
    std::array<double, 3> final_pops{};
    double top_fock_max = 0.0;  // per-trajectory worst case (diagnostic)
};

void run_trajectory(const Workspace& w, const LRUPulseParams& pulse,
                    const TrajectoryOptions& opt, int initial_level, Rng& rng,
                    TrajectoryAccumulator& acc) {
    const int d = w.dim();
    Vec psi(static_cast<size_t>(d), Complex(0.0, 0.0));
    psi[static_cast<size_t>(w.idx(initial_level, 0))] = 1.0;
    Vec k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size()), tmp(psi.size());

    const double total_ns = pulse.total_ns();
    const int n_samples = static_cast<int>(acc.field.size());
    const int nf = w.n_fock;
    double t = 0.0;
    double threshold = rng.uniform_open();
    Complex signal(0.0, 0.0);
    int sample_idx = 0;

    auto record_sample = [&]() {
        // Normalized expectation values of the (unnormalized) no-jump state.
        const double n2 = norm_sq(psi);
        Complex a_exp(0.0, 0.0);
        double photons = 0.0;
        std::array<double, 3> pops{0.0, 0.0, 0.0};
        double top = 0.0;
        for (int level = 0; level < 3; ++level) {
            for (int n = 0; n < nf; ++n) {
                const Complex amp = psi[w.idx(level, n)];
                const double p = std::norm(amp);
                pops[static_cast<size_t>(level)] += p;
                photons += n * p;
                if (n + 1 < nf) {
                    a_exp += std::conj(amp) * w.sqrt_n[n + 1] * psi[w.idx(level, n + 1)];
                }
                if (n == nf - 1) {
                    top += p;
                }
            }
        }
        a_exp /= n2;
        photons /= n2;
        for (auto& p : pops) {
            p /= n2;
        }
        acc.field[static_cast<size_t>(sample_idx)] += a_exp;
        acc.photons[static_cast<size_t>(sample_idx)] += photons;
        for (int level = 0; level < 3; ++level) {
            acc.pops[static_cast<size_t>(sample_idx)][static_cast<size_t>(level)] +=
                pops[static_cast<size_t>(level)];
        }
        acc.top_fock[static_cast<size_t>(sample_idx)] += top / n2;
        acc.top_fock_max = std::max(acc.top_fock_max, top / n2);
        // Matched-filter accumulation over the drive window (uniform weight).
        if (t < pulse.pulse_len_ns) {
            signal += a_exp * opt.sample_dt_ns;
        }
        ++sample_idx;
    };

    record_sample();
    while (t < total_ns - 1e-9) {
        const double t_sample = sample_idx < n_samples ? sample_idx * opt.sample_dt_ns : total_ns;
        const double dt = std::min(opt.dt_ns, std::min(total_ns, t_sample) - t);
        Vec saved = psi;
        rk4_step(w, psi, t, dt, pulse, k1, k2, k3, k4, tmp);
        if (norm_sq(psi) < threshold) {
            // Bisect the step to locate the jump time, then collapse.
            double lo = 0.0, hi = dt;
            for (int it = 0; it < 5; ++it) {
                const double mid = 0.5 * (lo + hi);
                Vec probe = saved;
                rk4_step(w, probe, t, mid, pulse, k1, k2, k3, k4, tmp);
                if (norm_sq(probe) < threshold) {
                    hi = mid;
                } else {
                    lo = mid;
                    psi = std::move(probe);
                }
            }
            // psi holds the state just before the jump (advanced by lo).
            if (lo == 0.0) {
                psi = saved;
            }
            pick_and_apply_jump(w, psi, rng);
            threshold = rng.uniform_open();
            t += lo;
        } else {
            t += dt;
        }
        if (sample_idx < n_samples && t >= sample_idx * opt.sample_dt_ns - 1e-9) {
            record_sample();
        }
    }

    normalize(psi);
    std::array<double, 3> fin{0.0, 0.0, 0.0};
    for (int level = 0; level < 3; ++level) {
        for (int n = 0; n < nf; ++n) {
            fin[static_cast<size_t>(level)] += std::norm(psi[w.idx(level, n)]);
        }
    }
    for (int level = 0; level < 3; ++level) {
        acc.final_pops[static_cast<size_t>(level)] += fin[static_cast<size_t>(level)];
    }
    acc.signals.push_back(signal);
}

}  // namespace

LruRun evolve_lru_level(const DeviceParams& device, const LRUPulseParams& pulse, int initial_level,
                        const TrajectoryOptions& options) {
    LruRun run = [&] {
        LruRun r;
        r.n_traj = options.n_traj;
        return r;
    }();
    device.validate();
    pulse.validate();
    if (initial_level < 0 || initial_level > 2) {
        throw std::invalid_argument("initial level must be g, e or f");
    }

    Workspace w;
    w.n_fock = device.fock_cutoff + 1;
    const double omega_rd = kTwoPi * pulse.resonator_freq_ghz;
    const double chi2 = device.chi2_rad_ns();
    w.delta_r[0] = kTwoPi * device.omega_r_g_ghz - omega_rd;
    w.delta_r[1] = w.delta_r[0] - chi2;
    w.delta_r[2] = w.delta_r[0] - chi2 * device.r_f;
    w.delta_q = kTwoPi * (device.omega_ef_ghz() - pulse.transmon_freq_ghz) -
                0.0;  // ef detuning at zero photons
    w.kappa = device.kappa_rad_ns();
    w.gamma1 = device.gamma1_ns();
    w.gamma_ef = device.gamma_ef_ns();
    w.gamma_phi = device.gamma_phi_ns();
    w.sqrt_n.resize(static_cast<size_t>(w.n_fock) + 1);
    for (size_t n = 0; n < w.sqrt_n.size(); ++n) {
        w.sqrt_n[n] = std::sqrt(static_cast<double>(n));
    }
    w.mist_w.resize(static_cast<size_t>(w.n_fock));
    const double n_crit = device.n_crit();
    for (int n = 0; n < w.n_fock; ++n) {
        // Quadratic onset: the coherent-state tail just above n_crit barely
        // scrambles, deep violations do so strongly.
        const double excess = std::max(0.0, n / n_crit - 1.0);
        w.mist_w[static_cast<size_t>(n)] = device.mist_rate_ns * excess * excess;
    }

    // RK4 stability: cap the step so the spectral bound of H_eff (dominated
    // by the top Fock rows) keeps |lambda| dt of order one.
    TrajectoryOptions opt = options;
    {
        const double n_top = static_cast<double>(device.fock_cutoff);
        const double bound = 0.5 * w.kappa * n_top +
                             std::max({std::abs(w.delta_r[0]), std::abs(w.delta_r[1]),
                                       std::abs(w.delta_r[2])}) *
                                 n_top +
                             2.0 * pulse.resonator_amp_rad_ns * std::sqrt(n_top + 1.0) +
                             0.5 * pulse.transmon_amp_rad_ns + std::abs(w.delta_q);
        if (bound > 0.0) {
            opt.dt_ns = std::min(options.dt_ns, 1.4 / bound);
        }
    }

    const int n_samples = static_cast<int>(pulse.total_ns() / opt.sample_dt_ns) + 1;
    run.t_grid_ns.resize(static_cast<size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        run.t_grid_ns[static_cast<size_t>(i)] = i * opt.sample_dt_ns;
    }

    const int n_threads = std::max(1, opt.n_threads);
    std::vector<TrajectoryAccumulator> partial(static_cast<size_t>(n_threads));
    for (auto& acc : partial) {
        acc.field.assign(static_cast<size_t>(n_samples), Complex(0.0, 0.0));
        acc.pops.assign(static_cast<size_t>(n_samples), {0.0, 0.0, 0.0});
        acc.photons.assign(static_cast<size_t>(n_samples), 0.0);
        acc.top_fock.assign(static_cast<size_t>(n_samples), 0.0);
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(static) num_threads(n_threads)
    for (int k = 0; k < opt.n_traj; ++k) {
        try {
            TrajectoryAccumulator& acc = partial[static_cast<size_t>(omp_get_thread_num())];
            Rng rng = Rng::stream(opt.seed,
                                  static_cast<uint64_t>(initial_level) * 1000003u +
                                      static_cast<uint64_t>(k));
            run_trajectory(w, pulse, opt, initial_level, rng, acc);
        } catch (...) {
#pragma omp critical
            if (!error) {
                error = std::current_exception();
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    // Deterministic merge: signals must follow trajectory order, so rebuild
    // them serially when more than one thread contributed.
    auto& sig = run.signals[static_cast<size_t>(initial_level)];
    if (n_threads == 1) {
        sig = std::move(partial[0].signals);
    } else {
        // Static schedule assigns contiguous chunks per thread in order.
        for (const auto& acc : partial) {
            sig.insert(sig.end(), acc.signals.begin(), acc.signals.end());
        }
    }
    auto& field = run.mean_field[static_cast<size_t>(initial_level)];
    auto& pops = run.mean_pops[static_cast<size_t>(initial_level)];
    auto& photons = run.mean_photons[static_cast<size_t>(initial_level)];
    field.assign(static_cast<size_t>(n_samples), Complex(0.0, 0.0));
    pops.assign(static_cast<size_t>(n_samples), {0.0, 0.0, 0.0});
    photons.assign(static_cast<size_t>(n_samples), 0.0);
    std::vector<double> top_mean(static_cast<size_t>(n_samples), 0.0);
    std::array<double, 3> fin{0.0, 0.0, 0.0};
    for (const auto& acc : partial) {
        for (int i = 0; i < n_samples; ++i) {
            field[static_cast<size_t>(i)] += acc.field[static_cast<size_t>(i)];
            photons[static_cast<size_t>(i)] += acc.photons[static_cast<size_t>(i)];
            top_mean[static_cast<size_t>(i)] += acc.top_fock[static_cast<size_t>(i)];
            for (int level = 0; level < 3; ++level) {
                pops[static_cast<size_t>(i)][static_cast<size_t>(level)] +=
                    acc.pops[static_cast<size_t>(i)][static_cast<size_t>(level)];
            }
        }
        for (int level = 0; level < 3; ++level) {
            fin[static_cast<size_t>(level)] += acc.final_pops[static_cast<size_t>(level)];
        }
        run.top_fock_max = std::max(run.top_fock_max, acc.top_fock_max);
    }
    const double inv = 1.0 / opt.n_traj;
    for (int i = 0; i < n_samples; ++i) {
        field[static_cast<size_t>(i)] *= inv;
        photons[static_cast<size_t>(i)] *= inv;
        for (int level = 0; level < 3; ++level) {
            pops[static_cast<size_t>(i)][static_cast<size_t>(level)] *= inv;
        }
    }
    for (int level = 0; level < 3; ++level) {
        run.transfer[static_cast<size_t>(initial_level)][static_cast<size_t>(level)] =
            fin[static_cast<size_t>(level)] * inv;
    }

    // Truncation error scales with the ensemble-mean top-Fock weight; rare
    // scrambling jumps can spike a single trajectory without invalidating
    // the cutoff (top_fock_max keeps that diagnostic).
    double top_mean_max = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        top_mean_max = std::max(top_mean_max, top_mean[static_cast<size_t>(i)] * inv);
    }
    if (top_mean_max > opt.cutoff_tolerance) {
        throw std::runtime_error("fock cutoff too small for the configured drives");
    }
    return run;
}

LruRun evolve_lru(const DeviceParams& device, const LRUPulseParams& pulse,
                  const TrajectoryOptions& options) {
    LruRun combined;
    for (int level = 0; level < 3; ++level) {
        LruRun one = evolve_lru_level(device, pulse, level, options);
        if (level == 0) {
            combined = one;
        } else {
            combined.transfer[static_cast<size_t>(level)] = one.transfer[static_cast<size_t>(level)];
            combined.mean_field[static_cast<size_t>(level)] =
                std::move(one.mean_field[static_cast<size_t>(level)]);
            combined.mean_pops[static_cast<size_t>(level)] =
                std::move(one.mean_pops[static_cast<size_t>(level)]);
            combined.mean_photons[static_cast<size_t>(level)] =
                std::move(one.mean_photons[static_cast<size_t>(level)]);
            combined.signals[static_cast<size_t>(level)] =
                std::move(one.signals[static_cast<size_t>(level)]);
            combined.top_fock_max = std::max(combined.top_fock_max, one.top_fock_max);
        }
    }
    return combined;
}

}  // namespace lruqec::lru
