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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lruqec/noise_model.hpp"

namespace lruqec {

using Complex = std::complex<double>;

/// Pure state of n qutrits. Basis index = sum over qubits of
/// level(q) * 3^(n-1-q), i.e. qubit 0 is the most significant trit.
class QutritRegister {
  public:
    explicit QutritRegister(int n) : n_(n) {
        if (n < 1 || n > 12) {
            throw std::invalid_argument("qutrit count out of supported range [1, 12]");
        }
        dim_ = 1;
        for (int i = 0; i < n; ++i) {
            dim_ *= 3;
        }
        amp_.assign(dim_, Complex(0.0, 0.0));
        amp_[0] = 1.0;
    }

    int n() const { return n_; }
    size_t dim() const { return dim_; }
    size_t stride(int q) const {
        size_t s = 1;
        for (int i = n_ - 1; i > q; --i) {
            s *= 3;
        }
        return s;
    }
    static int digit(size_t index, size_t stride) { return static_cast<int>((index / stride) % 3); }

    Complex& amp(size_t i) { return amp_[i]; }
    const Complex& amp(size_t i) const { return amp_[i]; }
    std::vector<Complex>& amplitudes() { return amp_; }
    const std::vector<Complex>& amplitudes() const { return amp_; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amp_) {
            s += std::norm(a);
        }
        return s;
    }

    void renormalize() {
        const double n2 = norm_sq();
        if (!(n2 > 0.0)) {
            throw std::runtime_error("attempted to renormalize a zero state");
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : amp_) {
            a *= inv;
        }
    }

    /// Apply a 2x2 unitary on levels {la, lb} of qubit q.
    void apply_two_level(int q, int la, int lb, Complex u00, Complex u01, Complex u10,
                         Complex u11) {
        const size_t s = stride(q);
        const size_t block = 3 * s;
        for (size_t base = 0; base < dim_; base += block) {
            for (size_t j = 0; j < s; ++j) {
                const size_t ia = base + static_cast<size_t>(la) * s + j;
                const size_t ib = base + static_cast<size_t>(lb) * s + j;
                const Complex a = amp_[ia];
                const Complex b = amp_[ib];
                amp_[ia] = u00 * a + u01 * b;
                amp_[ib] = u10 * a + u11 * b;
            }
        }
    }

    /// Rotation by `angle` about the xy-plane axis at azimuth `axis_phi`,
    /// acting on the {g, e} subspace. |f> is untouched.
    void apply_ge_rotation(int q, double axis_phi, double angle) {
        const double c = std::cos(angle / 2.0);
        const double s = std::sin(angle / 2.0);
        const Complex mi(0.0, -1.0);
        apply_two_level(q, 0, 1, Complex(c, 0.0), mi * std::exp(Complex(0.0, -axis_phi)) * s,
                        mi * std::exp(Complex(0.0, axis_phi)) * s, Complex(c, 0.0));
    }

    /// X rotation in the {e, f} subspace (leakage injection gate).
    void apply_ef_rotation(int q, double angle) {
        const double c = std::cos(angle / 2.0);
        const double s = std::sin(angle / 2.0);
        const Complex mi(0.0, -1.0);
        apply_two_level(q, 1, 2, Complex(c, 0.0), mi * s, mi * s, Complex(c, 0.0));
    }

    /// CZ on (partner, leaker) composed with the leakage exchange block:
    /// the ideal conditional phase (-1 on |11>) followed by
    ///   |11> -> sqrt(1-4*l1) |11> + e^{i phi} sqrt(4*l1) |02>,
    ///   |02> -> sqrt(1-4*l1) |02> - e^{-i phi} sqrt(4*l1) |11>,
    /// where the second trit of the pair label is the leaker's level.
    void apply_cz(int partner, int leaker, const CZSpec& spec) {
        if (partner == leaker || partner < 0 || leaker < 0 || partner >= n_ || leaker >= n_) {
            throw std::invalid_argument("cz needs two distinct in-range qubits");
        }
        spec.validate();
        const double c = std::sqrt(1.0 - 4.0 * spec.l1);
        const double s = std::sqrt(4.0 * spec.l1);
        const Complex eip = std::exp(Complex(0.0, spec.phi));
        const size_t sp = stride(partner);
        const size_t sl = stride(leaker);
        for (size_t i = 0; i < dim_; ++i) {
            if (digit(i, sp) == 1 && digit(i, sl) == 1) {
                const size_t j = i - sp + sl;  // partner 1 -> 0, leaker 1 -> 2
                const Complex a11 = amp_[i];
                const Complex a02 = amp_[j];
                amp_[i] = -c * a11 - std::conj(eip) * s * a02;
                amp_[j] = -eip * s * a11 + c * a02;
            }
        }
    }

    std::array<double, 3> level_populations(int q) const {
        const size_t s = stride(q);
        std::array<double, 3> p{0.0, 0.0, 0.0};
        for (size_t i = 0; i < dim_; ++i) {
            p[static_cast<size_t>(digit(i, s))] += std::norm(amp_[i]);
        }
        return p;
    }

    /// Keep only the components where qubit q is at `level`, then renormalize.
    void project_level(int q, int level) {
        const size_t s = stride(q);
        for (size_t i = 0; i < dim_; ++i) {
            if (digit(i, s) != level) {
                amp_[i] = 0.0;
            }
        }
        renormalize();
    }

    /// Move the (previously projected) level `from` of qubit q to `to`,
    /// leaving the conditional state of the other qutrits untouched.
    void relabel_level(int q, int from, int to) {
        if (from == to) {
            return;
        }
        const size_t s = stride(q);
        const size_t block = 3 * s;
        for (size_t base = 0; base < dim_; base += block) {
            for (size_t j = 0; j < s; ++j) {
                const size_t src = base + static_cast<size_t>(from) * s + j;
                const size_t dst = base + static_cast<size_t>(to) * s + j;
                amp_[dst] = amp_[src];
                amp_[src] = 0.0;
            }
        }
    }

  private:
    int n_;
    size_t dim_;
    std::vector<Complex> amp_;
};

}  // namespace lruqec
