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

#ifndef WEAKFISHER_SAMPLED_WAVEFUNCTION_H
#define WEAKFISHER_SAMPLED_WAVEFUNCTION_H

#include <complex>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "weakfisher/fisher_engine.h"

namespace weakfisher {

/// Uniform momentum grid p_k = p_min + k * step, k = 0 .. points-1.
struct MomentumGrid {
    double p_min = 0.0;
    double step = 0.0;
    std::size_t points = 0;

    double at(std::size_t k) const {
        return p_min + static_cast<double>(k) * step;
    }
    double p_max() const {
        return at(points - 1);
    }

    static MomentumGrid symmetric(double half_width, std::size_t points, double center = 0.0);
};

/// Trapezoid rule on a uniform grid.
double trapezoid(const std::vector<double> &values, double step);
std::complex<double> trapezoid(const Amplitudes &values, double step);

/// 4th-order finite-difference derivative (central in the interior, one-sided
/// 4th-order stencils on the two outermost points at each end).
Amplitudes finite_difference_derivative(const Amplitudes &values, double step);

/// Samples of v(p + offset) on the same grid, by band-limited (Fourier)
/// interpolation of the zero-padded samples. Mass shifted past the grid edge
/// is lost, so callers check that the vacated band is empty.
Amplitudes shift_samples(const Amplitudes &values, double step, double offset);

/// Meter amplitude f(p) in the momentum representation, sampled on a uniform
/// grid. Construction validates normalization (trapezoid norm within 1e-8) and
/// decay of |f| and |f'| at both ends (below 1e-6 of their peaks). f' is the
/// supplied analytic derivative if present, otherwise finite differences.
class SampledWavefunction {
   public:
    SampledWavefunction(MomentumGrid grid, Amplitudes amplitudes, std::optional<Amplitudes> derivative = std::nullopt);

    const MomentumGrid &grid() const noexcept {
        return grid_;
    }
    const Amplitudes &amplitudes() const noexcept {
        return amplitudes_;
    }
    const Amplitudes &derivative() const noexcept {
        return derivative_;
    }
    bool has_analytic_derivative() const noexcept {
        return analytic_derivative_;
    }

    /// Same function on every other grid point (step doubled); used for the
    /// grid-halving error estimate.
    SampledWavefunction decimated() const;

    /// Copy without the analytic derivative (derivative recomputed by finite
    /// differences).
    SampledWavefunction without_analytic_derivative() const;

   private:
    struct Unchecked {};
    SampledWavefunction(Unchecked, MomentumGrid grid, Amplitudes amplitudes, std::optional<Amplitudes> derivative);

    MomentumGrid grid_;
    Amplitudes amplitudes_;
    Amplitudes derivative_;
    bool analytic_derivative_ = false;
};

/// Reads `p,re,im` CSV. Lines starting with '#' are ignored. Errors name the
/// offending line number.
SampledWavefunction read_wavefunction_csv(std::istream &in);
SampledWavefunction load_wavefunction_csv(const std::string &path);
void write_wavefunction_csv(std::ostream &out, const SampledWavefunction &f);

inline constexpr std::size_t kDefaultGridPoints = 4096;

/// Normalized (2 sigma^2 / pi)^{1/4} exp(-sigma^2 p^2). The default grid
/// spans +-(10 sigma_eff + max_shift) with sigma_eff = 1 / (2 sigma).
SampledWavefunction gaussian_wavefunction(double sigma, double max_shift = 0.0,
                                          std::size_t points = kDefaultGridPoints);

/// Normalized first Hermite mode p exp(-sigma^2 p^2).
SampledWavefunction hermite_wavefunction(double sigma, double max_shift = 0.0,
                                         std::size_t points = kDefaultGridPoints);

/// Normalized exp(-sigma^2 (p - center)^2) exp(i chirp p).
SampledWavefunction chirped_gaussian_wavefunction(double sigma, double center, double chirp, double max_shift = 0.0,
                                                  std::size_t points = kDefaultGridPoints);

}  // namespace weakfisher

#endif
