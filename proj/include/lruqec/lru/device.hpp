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

#pragma once

#include <complex>
#include <stdexcept>

namespace lruqec::lru {

inline constexpr double kTwoPi = 6.283185307179586476925;

/// Dispersively coupled transmon-resonator system. Frequencies are linear
/// (GHz / MHz); rates used in the dynamics are angular and in 1/ns.
///
/// Resonator pulls: omega_r(g) = omega_r_g, omega_r(e) = omega_r_g - 2chi,
/// omega_r(f) = omega_r_g - 2chi * r_f. The paper-level parameter is the
/// total dispersive shift 2chi; the f-state pull ratio r_f is a model knob.
struct DeviceParams {
    double omega_ge_ghz = 5.941;
    double anharmonicity_mhz = 306.0;
    double omega_r_g_ghz = 7.314;
    double chi2_mhz = 10.8;   // total dispersive shift, 2*chi
    double kappa_mhz = 24.8;  // effective resonator linewidth kappa / 2pi
    double t1_us = 11.0;
    double t2_star_us = 13.0;
    int fock_cutoff = 20;
    // f-state pull ratio. The bare dispersive value (2) cannot reproduce the
    // protocol's directionality once the Purcell filter is folded into an
    // effective kappa: the f-state resonator response is then only
    // Lorentzian-suppressed and holds several photons, capping the removal
    // fraction below the working regime. 3 restores an effectively dark
    // f-state resonator. Configurable.
    double r_f = 3.0;
    // Transmon state randomization once the photon number exceeds n_crit
    // (the dispersive approximation itself is photon-number blind, so the
    // high-power breakdown enters as this explicit channel). Rate per unit
    // squared fractional excess, 1/ns.
    double mist_rate_ns = 0.05;

    double omega_ef_ghz() const { return omega_ge_ghz - anharmonicity_mhz * 1e-3; }
    double chi2_rad_ns() const { return kTwoPi * chi2_mhz * 1e-3; }
    double kappa_rad_ns() const { return kTwoPi * kappa_mhz * 1e-3; }
    double gamma1_ns() const { return 1.0 / (t1_us * 1e3); }
    double gamma_ef_ns() const { return 2.0 / (t1_us * 1e3); }
    double gamma_phi_ns() const {
        const double g = 1.0 / (t2_star_us * 1e3) - 0.5 / (t1_us * 1e3);
        return g > 0.0 ? g : 0.0;
    }

    /// Transmon-resonator coupling back-solved from the dispersive shift,
    /// chi = g^2 alpha / (Delta (Delta - alpha)).
    double coupling_ghz() const {
        const double chi_ghz = chi2_mhz * 1e-3 / 2.0;
        const double delta = omega_ge_ghz - omega_r_g_ghz;
        const double alpha = anharmonicity_mhz * 1e-3;
        return std::sqrt(std::abs(chi_ghz * delta * (delta - alpha) / alpha));
    }

    /// Critical photon number (Delta / 2g)^2 of the dispersive regime.
    double n_crit() const {
        const double delta = omega_ge_ghz - omega_r_g_ghz;
        const double g = coupling_ghz();
        return (delta * delta) / (4.0 * g * g);
    }

    void validate() const {
        if (!(omega_ge_ghz > 0.0 && omega_r_g_ghz > 0.0 && chi2_mhz > 0.0 && kappa_mhz > 0.0 &&
              anharmonicity_mhz > 0.0 && t1_us > 0.0 && t2_star_us > 0.0)) {
            throw std::invalid_argument("device rates must be strictly positive");
        }
        if (fock_cutoff < 10) {
            throw std::invalid_argument("fock cutoff must be at least 10");
        }
    }
};

/// Configured operating points must stay dispersive: the on-resonance
/// steady-state photon number (2 eps / kappa)^2 has to sit below n_crit.
/// Landscape sweeps may cross this bound on purpose; that is the high-power
/// band, where the model's predictions are qualitative.
void check_dispersive_drive(const DeviceParams& device, double resonator_amp_rad_ns);

/// LRU-enhanced measurement pulse: a square resonator drive over the pulse
/// window, a sine-squared-edged transmon drive delayed by t_delay, and a
/// drive-free depletion tail.
/// Defaults are the CMA-ES-calibrated operating point for the default
/// device (removal fraction 0.95, g-e assignment fidelity preserved). Note
/// the transmon drive sits ~30 MHz below omega_ef,0 -- with photons in the
/// resonator the f,n <-> e,n line is shifted down, and the drive targets the
/// shifted transition, as the hardware calibration does.
struct LRUPulseParams {
    double transmon_freq_ghz = 5.6050;
    double transmon_amp_rad_ns = 0.098;  // e<->f drive rate Omega
    double resonator_freq_ghz = 7.30801;
    double resonator_amp_rad_ns = 0.2104;
    double t_delay_ns = 153.0;
    double pulse_len_ns = 380.0;
    double depletion_ns = 120.0;
    double rise_fall_ns = 10.0;

    double total_ns() const { return pulse_len_ns + depletion_ns; }

    void validate() const {
        if (!(pulse_len_ns > 0.0 && depletion_ns >= 0.0 && rise_fall_ns >= 0.0 &&
              t_delay_ns >= 0.0)) {
            throw std::invalid_argument("pulse durations must be non-negative");
        }
        if (!(t_delay_ns + rise_fall_ns < pulse_len_ns)) {
            throw std::invalid_argument("t_delay + rise_fall must stay inside the pulse");
        }
        if (!(transmon_amp_rad_ns >= 0.0 && resonator_amp_rad_ns >= 0.0)) {
            throw std::invalid_argument("drive amplitudes must be non-negative");
        }
    }

    /// Sine-squared rise/fall envelope of the transmon drive at time t (ns).
    double transmon_envelope(double t) const;
    /// Square resonator envelope at time t (ns).
    double resonator_envelope(double t) const {
        return (t >= 0.0 && t < pulse_len_ns) ? 1.0 : 0.0;
    }
};

/// State jump rate gamma_jump = Omega_R^2 / (2 (gamma_2 + Gamma_d)).
double jump_rate(double rabi_rate, double gamma2, double meas_dephasing);

/// Measurement-induced dephasing 2 chi Im(alpha_e alpha_f^*) from the
/// pointer-state fields.
double measurement_dephasing(std::complex<double> alpha_e, std::complex<double> alpha_f,
                             double chi2_rad_ns);

}  // namespace lruqec::lru
