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

#include "lruqec/lru/device.hpp"

#include <cmath>

namespace lruqec::lru {

double LRUPulseParams::transmon_envelope(double t) const {
    if (t < t_delay_ns || t >= pulse_len_ns) {
        return 0.0;
    }
    // sin^2(pi/2 * x) ramps over the first and last rise_fall_ns.
    const double since_on = t - t_delay_ns;
    if (rise_fall_ns > 0.0 && since_on < rise_fall_ns) {
        const double ramp = std::sin(0.25 * kTwoPi * since_on / rise_fall_ns);
        return ramp * ramp;
    }
    const double until_off = pulse_len_ns - t;
    if (rise_fall_ns > 0.0 && until_off < rise_fall_ns) {
        const double ramp = std::sin(0.25 * kTwoPi * until_off / rise_fall_ns);
        return ramp * ramp;
    }
    return 1.0;
}

void check_dispersive_drive(const DeviceParams& device, double resonator_amp_rad_ns) {
    device.validate();
    const double n_res = 4.0 * resonator_amp_rad_ns * resonator_amp_rad_ns /
                         (device.kappa_rad_ns() * device.kappa_rad_ns());
    if (n_res >= device.n_crit()) {
        throw std::invalid_argument("configured drive exceeds the critical photon number");
    }
}

double jump_rate(double rabi_rate, double gamma2, double meas_dephasing) {
    const double denom = gamma2 + meas_dephasing;
    if (!(denom > 0.0)) {
        throw std::invalid_argument("jump rate denominator must be positive");
    }
    return rabi_rate * rabi_rate / (2.0 * denom);
}

double measurement_dephasing(std::complex<double> alpha_e, std::complex<double> alpha_f,
                             double chi2_rad_ns) {
    return chi2_rad_ns * std::imag(alpha_e * std::conj(alpha_f));
}

}  // namespace lruqec::lru
