// Copyright 2026 The weakfisher Authors
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

#include "weakfisher/qubit_selection.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "weakfisher/errors.h"

namespace weakfisher {

double wrap_angle(double radians) {
    constexpr double pi = std::numbers::pi;
    if (radians > -pi && radians <= pi) {
        return radians;
    }
    double wrapped = std::remainder(radians, 2.0 * pi);
    if (wrapped <= -pi) {
        wrapped += 2.0 * pi;
    }
    return wrapped;
}

QubitState::QubitState(double theta, double phi) : theta_(theta), phi_(0.0) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw Error(ErrorCode::InvalidInput, "qubit angles must be finite");
    }
    if (theta < 0.0 || theta > std::numbers::pi) {
        throw Error(ErrorCode::InvalidInput, "theta must lie in [0, pi], got " + std::to_string(theta));
    }
    phi_ = wrap_angle(phi);
}

SelectionPair::SelectionPair(QubitState pre, QubitState post)
    : pre_(pre), post_(post), phi0_(wrap_angle(pre.phi() - post.phi())) {
}

SelectionPair SelectionPair::from_angles(double theta_i, double theta_f, double phi0) {
    return SelectionPair(QubitState(theta_i, phi0), QubitState(theta_f, 0.0));
}

double SelectionPair::cos_product() const {
    return std::cos(pre_.theta()) * std::cos(post_.theta());
}

double SelectionPair::sin_product() const {
    return std::sin(pre_.theta()) * std::sin(post_.theta());
}

double SelectionCoefficients::norm_squared() const {
    return std::norm(gamma_d_minus) + std::norm(gamma_d_plus) + std::norm(gamma_r_minus) +
           std::norm(gamma_r_plus);
}

SelectionCoefficients selection_coefficients(const SelectionPair &pair) {
    const double ci = std::cos(pair.pre().theta() / 2.0);
    const double si = std::sin(pair.pre().theta() / 2.0);
    const double cf = std::cos(pair.post().theta() / 2.0);
    const double sf = std::sin(pair.post().theta() / 2.0);
    const std::complex<double> phase = std::polar(1.0, pair.phi0());
    return SelectionCoefficients{
        .gamma_d_minus = ci * cf,
        .gamma_d_plus = si * sf * phase,
        .gamma_r_minus = ci * sf,
        .gamma_r_plus = -si * cf * phase,
    };
}

BranchProbabilities interference_probabilities(const SelectionPair &pair, double decay, double phase) {
    const double ti = pair.pre().theta();
    const double tf = pair.post().theta();
    const double sin_product = pair.sin_product();
    const double visibility = std::exp(-decay);
    const double lost = -std::expm1(-decay);
    const double sum_half = std::cos((ti + tf) / 2.0);
    const double diff_half = std::sin((ti - tf) / 2.0);
    const double c = std::cos(phase / 2.0);
    const double s = std::sin(phase / 2.0);
    // 1 + C + sin_product * v cos(phase) = 2 cos^2((ti+tf)/2) + sin_product (1 - v + 2 v cos^2(phase/2))
    const double success = sum_half * sum_half + 0.5 * sin_product * (lost + 2.0 * visibility * c * c);
    const double failure = diff_half * diff_half + 0.5 * sin_product * (lost + 2.0 * visibility * s * s);
    return BranchProbabilities{
        .success = std::clamp(success, 0.0, 1.0),
        .failure = std::clamp(failure, 0.0, 1.0),
    };
}

}  // namespace weakfisher
