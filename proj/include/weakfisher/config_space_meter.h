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

#ifndef WEAKFISHER_CONFIG_SPACE_METER_H
#define WEAKFISHER_CONFIG_SPACE_METER_H

#include <complex>

#include "weakfisher/fisher_breakdown.h"
#include "weakfisher/fisher_engine.h"
#include "weakfisher/qubit_selection.h"
#include "weakfisher/sampled_wavefunction.h"

namespace weakfisher {

/// Gaussian pointer exp(-q^2 / (4 sigma^2)) in position; its momentum
/// amplitude is (2 sigma^2 / pi)^{1/4} exp(-sigma^2 p^2).
class GaussianMeter {
   public:
    explicit GaussianMeter(double sigma);

    double sigma() const noexcept {
        return sigma_;
    }

    /// Momentum grid wide enough for the meter shifted by up to |max_shift|.
    MomentumGrid default_grid(double max_shift = 0.0, std::size_t points = kDefaultGridPoints) const;

   private:
    double sigma_;
};

enum class Regime { General, Weak, Strong };

/// Measurement strength at which the weak / strong limits are cross-checked.
inline constexpr double kWeakStrength = 1e-3;
inline constexpr double kStrongStrength = 5.0;

double gaussian_success_probability(const GaussianMeter &meter, const SelectionPair &pair, double g);

/// Closed-form p_d, Q_d, Q_r, F_p for the Gaussian pointer; q_j = 4 sigma^2 and
/// f_tot is assembled from the branch products. A vanishing branch is flagged
/// and its product takes the limit 0; an indeterminate F_p is replaced by the
/// mean of its values at g +- kFallbackOffset.
FisherBreakdown gaussian_fisher_breakdown(const GaussianMeter &meter, const SelectionPair &pair, double g);

/// p_d Q_d in the weak (s -> 0) or strong (s >> 1) limit.
double gaussian_limit_pdqd(const GaussianMeter &meter, const SelectionPair &pair, Regime regime);

/// The limit formula next to the breakdown evaluated at kWeakStrength or
/// kStrongStrength. They differ at orthogonal selection, where the formula
/// reads 4 sigma^2 but the directly evaluated p_d Q_d goes to 0 and F_p
/// carries the information.
struct LimitReport {
    double formula = 0.0;
    double direct = 0.0;
    double direct_f_p = 0.0;
};
LimitReport gaussian_limit_report(const GaussianMeter &meter, const SelectionPair &pair, Regime regime);

/// FI of n independent copies: n * fi_single.
double classical_resource_scaling(double fi_single, double n);

enum class MeterBranch { Minus, Plus };

/// Normalized Gaussian pointer sampled on `grid`, shifted to f(p + g) for the
/// Minus branch and f(p - g) for the Plus branch.
StateFamily gaussian_meter_family(const GaussianMeter &meter, const MomentumGrid &grid, MeterBranch branch);

/// numeric_fisher_breakdown on Gaussian families sampled over the default grid.
FisherBreakdown gaussian_fisher_breakdown_numeric(const GaussianMeter &meter, const SelectionPair &pair, double g,
                                                  std::size_t points = kDefaultGridPoints);

/// int |f'|^2 dp and int conj(f) f' dp.
struct WavefunctionMoments {
    double derivative_norm = 0.0;
    std::complex<double> connection = 0.0;
};
WavefunctionMoments wavefunction_moments(const SampledWavefunction &f);

/// 4 (int|f'|^2 - cos^2(theta_i) |int conj(f) f'|^2), independent of g.
/// Throws GridTooCoarse when the grid-halving estimate exceeds 1e-6 and
/// InvalidInput when int conj(f) f' has a real part above 1e-8.
double sampled_joint_qfi(const SampledWavefunction &f, const QubitState &pre);

/// Breakdown for an arbitrary sampled pointer. General regime: branch
/// amplitudes gamma^- f(p+g) + gamma^+ f(p-g) and their g-derivatives are
/// integrated on the grid. Weak / strong: the g -> 0 / g -> infinity limits,
/// with f_tot from the closed-form limit expression. Throws GridTooCoarse if
/// the grid-halving estimate of f_tot exceeds 1e-6 (relative, floor 1) or if
/// the shifted copies leave the grid.
FisherBreakdown sampled_fisher_breakdown(const SampledWavefunction &f, const SelectionPair &pair, double g,
                                         Regime regime);

}  // namespace weakfisher

#endif
