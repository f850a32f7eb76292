// Copyright 2026 The repro-bound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// \file
/// Single-qubit noise primitives for the prepare |0>, apply H, measure circuit.
///
/// The model has three parameters per register element: the readout fidelities
/// f0 = Pr(read 0 | |0>) and f1 = Pr(read 1 | |1>), and the Hadamard angle
/// error theta. The noisy Hadamard is the real reflection
///
///     H(theta) = [[cos(pi/4 + theta),  sin(pi/4 + theta)],
///                 [sin(pi/4 + theta), -cos(pi/4 + theta)]]
///
/// and everything the circuit can show collapses into one signed number,
///
///     gamma = eps - 2 sin(2 theta) (f - 1/2),   eps = f0 - f1,  f = (f0 + f1) / 2,
///
/// with Pr(0) = (1 + gamma) / 2 and Pr(1) = (1 - gamma) / 2.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "repro/errors.hpp"

namespace repro {

using Mat2 = std::array<std::array<double, 2>, 2>;
using CMat2 = std::array<std::array<std::complex<double>, 2>, 2>;

/// Probability pair (Pr(0), Pr(1)) for a single measured qubit.
using BinaryDist = std::array<double, 2>;

/// Default model-validity region for the Hadamard angle error: |theta| < pi/4.
/// Inside it sin(2 theta) is injective, which the theta inversion relies on.
inline constexpr double kDefaultThetaLimit = std::numbers::pi / 4;

/// Ground-truth noise of one register element.
struct QubitNoiseParams {
    double f0 = 1.0;
    double f1 = 1.0;
    double theta = 0.0;  // radians

    bool operator==(const QubitNoiseParams &) const = default;
};

/// Throws invalid-parameter unless both fidelities lie in [0, 1] and theta is
/// finite with |theta| < theta_limit. Pass a larger limit (or infinity) to
/// admit boundary cases such as theta = pi/4.
inline void validate(const QubitNoiseParams &p, double theta_limit = kDefaultThetaLimit) {
    auto fail = [](const std::string &what) { throw Error(ErrorKind::invalid_parameter, what); };
    if (!(p.f0 >= 0.0 && p.f0 <= 1.0)) {
        fail("f0 must lie in [0,1], got " + std::to_string(p.f0));
    }
    if (!(p.f1 >= 0.0 && p.f1 <= 1.0)) {
        fail("f1 must lie in [0,1], got " + std::to_string(p.f1));
    }
    if (!std::isfinite(p.theta)) {
        fail("theta must be finite");
    }
    if (!(std::abs(p.theta) < theta_limit)) {
        std::ostringstream os;
        os << "|theta| must be below " << theta_limit << " rad, got " << p.theta;
        fail(os.str());
    }
}

struct DerivedReadout {
    double f;    // average readout fidelity
    double eps;  // readout asymmetry f0 - f1
};

inline DerivedReadout derived_readout(const QubitNoiseParams &p) {
    return {(p.f0 + p.f1) / 2, p.f0 - p.f1};
}

namespace detail {

inline void require_finite_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw Error(ErrorKind::invalid_parameter, "angle must be finite");
    }
}

inline void require_fidelities(double f0, double f1) {
    if (!(f0 >= 0.0 && f0 <= 1.0) || !(f1 >= 0.0 && f1 <= 1.0)) {
        std::ostringstream os;
        os << "readout fidelities must lie in [0,1], got f0=" << f0 << " f1=" << f1;
        throw Error(ErrorKind::invalid_parameter, os.str());
    }
}

}  // namespace detail

inline Mat2 matmul(const Mat2 &a, const Mat2 &b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return r;
}

inline Mat2 transpose(const Mat2 &a) { return {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}}; }

/// Ideal Hadamard, (1/sqrt 2) [[1, 1], [1, -1]].
inline Mat2 hadamard() {
    const double s = std::numbers::sqrt2 / 2;
    return {{{s, s}, {s, -s}}};
}

/// Hadamard implemented with an angle error theta. theta = 0 is the ideal gate.
inline Mat2 noisy_hadamard(double theta) {
    detail::require_finite_angle(theta);
    const double c = std::cos(std::numbers::pi / 4 + theta);
    const double s = std::sin(std::numbers::pi / 4 + theta);
    return {{{c, s}, {s, -c}}};
}

/// Control-error operator E = H(theta) H^T, a plane rotation by theta.
inline Mat2 control_error_operator(double theta) {
    detail::require_finite_angle(theta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {{{c, -s}, {s, c}}};
}

/// Computational-basis probabilities of H(theta)|0> before readout noise.
inline BinaryDist pre_readout_probs(double theta) {
    detail::require_finite_angle(theta);
    const double s2 = std::sin(2 * theta);
    return {(1 - s2) / 2, (1 + s2) / 2};
}

/// Column-stochastic readout channel: entry (i, j) is Pr(read i | state j).
struct ReadoutMatrix {
    Mat2 entries{};

    BinaryDist apply(const BinaryDist &p_true) const {
        return {entries[0][0] * p_true[0] + entries[0][1] * p_true[1],
                entries[1][0] * p_true[0] + entries[1][1] * p_true[1]};
    }
};

inline ReadoutMatrix readout_matrix(const QubitNoiseParams &p) {
    detail::require_fidelities(p.f0, p.f1);
    return {{{{p.f0, 1 - p.f1}, {1 - p.f0, p.f1}}}};
}

/// Composite device parameter gamma. |gamma| <= 1 for valid fidelities.
inline double gamma_of(const QubitNoiseParams &p) {
    const auto [f, eps] = derived_readout(p);
    return eps - 2 * std::sin(2 * p.theta) * (f - 0.5);
}

/// Output distribution of the noisy circuit, ((1 + gamma)/2, (1 - gamma)/2).
inline BinaryDist observed_probs(const QubitNoiseParams &p) {
    detail::require_fidelities(p.f0, p.f1);
    const double g = gamma_of(p);
    return {(1 + g) / 2, (1 - g) / 2};
}

struct SingleQubitState {
    std::array<std::complex<double>, 2> amplitudes{1.0, 0.0};

    double norm_squared() const { return std::norm(amplitudes[0]) + std::norm(amplitudes[1]); }
};

/// H(theta)|0>.
inline SingleQubitState state_after_noisy_hadamard(double theta) {
    const Mat2 h = noisy_hadamard(theta);
    return {{h[0][0], h[1][0]}};
}

inline CMat2 density_of(const SingleQubitState &psi) {
    CMat2 rho{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            rho[i][j] = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
        }
    }
    return rho;
}

namespace detail {

inline CMat2 cmatmul(const CMat2 &a, const CMat2 &b) {
    CMat2 r{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return r;
}

inline CMat2 dagger(const CMat2 &a) {
    return {{{std::conj(a[0][0]), std::conj(a[1][0])}, {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

inline void validate_density(const CMat2 &rho, double tol) {
    auto fail = [](const std::string &what) { throw Error(ErrorKind::invalid_state, what); };
    for (const auto &row : rho) {
        for (const auto &z : row) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                fail("density matrix has non-finite entries");
            }
        }
    }
    if (std::abs(rho[0][1] - std::conj(rho[1][0])) > tol || std::abs(rho[0][0].imag()) > tol ||
        std::abs(rho[1][1].imag()) > tol) {
        fail("density matrix is not Hermitian");
    }
    const double a = rho[0][0].real();
    const double d = rho[1][1].real();
    if (std::abs(a + d - 1.0) > tol) {
        fail("density matrix trace differs from 1");
    }
    const double radius = std::sqrt((a - d) * (a - d) / 4 + std::norm(rho[0][1]));
    if ((a + d) / 2 - radius < -tol) {
        fail("density matrix is not positive semidefinite");
    }
}

}  // namespace detail

/// Measurement operators {M0, M1} of the noisy readout, Kraus form.
inline std::array<CMat2, 2> readout_kraus_operators(const QubitNoiseParams &p) {
    detail::require_fidelities(p.f0, p.f1);
    CMat2 m0{};
    CMat2 m1{};
    m0[0][0] = std::sqrt(p.f0);
    m0[1][1] = std::sqrt(1 - p.f1);
    m1[0][0] = std::sqrt(1 - p.f0);
    m1[1][1] = std::sqrt(p.f1);
    return {m0, m1};
}

/// Pr(i) = Tr{M_i^dagger M_i rho}. Validates rho within 1e-10.
inline BinaryDist kraus_readout(const QubitNoiseParams &p, const CMat2 &rho) {
    detail::validate_density(rho, 1e-10);
    const auto ops = readout_kraus_operators(p);
    BinaryDist out{};
    for (int i = 0; i < 2; ++i) {
        const CMat2 prod = detail::cmatmul(detail::cmatmul(detail::dagger(ops[i]), ops[i]), rho);
        out[i] = (prod[0][0] + prod[1][1]).real();
    }
    return out;
}

}  // namespace repro
