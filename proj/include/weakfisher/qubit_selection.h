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

#ifndef WEAKFISHER_QUBIT_SELECTION_H
#define WEAKFISHER_QUBIT_SELECTION_H

#include <complex>

namespace weakfisher {

/// Wraps an angle into (-pi, pi].
double wrap_angle(double radians);

/// Qubit state cos(theta/2)|-1> + sin(theta/2) e^{i phi}|+1>.
/// theta is in [0, pi]; phi is stored wrapped into (-pi, pi].
class QubitState {
   public:
    QubitState(double theta, double phi = 0.0);

    double theta() const noexcept {
        return theta_;
    }
    double phi() const noexcept {
        return phi_;
    }

   private:
    double theta_;
    double phi_;
};

/// Pre- and post-selected system states. Only the relative phase
/// phi0 = phi_i - phi_f enters any downstream formula.
class SelectionPair {
   public:
    SelectionPair(QubitState pre, QubitState post);

    /// Convenience form with phi_i = phi0 and phi_f = 0.
    static SelectionPair from_angles(double theta_i, double theta_f, double phi0);

    const QubitState &pre() const noexcept {
        return pre_;
    }
    const QubitState &post() const noexcept {
        return post_;
    }
    double phi0() const noexcept {
        return phi0_;
    }

    double cos_product() const;  // cos(theta_i) cos(theta_f)
    double sin_product() const;  // sin(theta_i) sin(theta_f)

   private:
    QubitState pre_;
    QubitState post_;
    double phi0_;
};

/// Amplitudes of the two meter branches |Phi_{-g}>, |Phi_{+g}> after a
/// successful (d) or failed (r) post-selection.
struct SelectionCoefficients {
    std::complex<double> gamma_d_minus;
    std::complex<double> gamma_d_plus;
    std::complex<double> gamma_r_minus;
    std::complex<double> gamma_r_plus;

    double norm_squared() const;
};

SelectionCoefficients selection_coefficients(const SelectionPair &pair);

struct BranchProbabilities {
    double success = 0.0;
    double failure = 0.0;
};

/// p_d = (1 + cos(theta_i) cos(theta_f) + sin(theta_i) sin(theta_f) e^{-decay} cos(phase)) / 2
/// and 1 - p_d, each summed from non-negative terms so that a nearly empty
/// branch keeps its relative accuracy. `decay` may be +infinity.
BranchProbabilities interference_probabilities(const SelectionPair &pair, double decay, double phase);

}  // namespace weakfisher

#endif
