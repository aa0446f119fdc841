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

#ifndef WEAKFISHER_PHASE_SPACE_METER_H
#define WEAKFISHER_PHASE_SPACE_METER_H

#include <complex>
#include <span>
#include <vector>

#include "weakfisher/fisher_breakdown.h"
#include "weakfisher/fisher_engine.h"
#include "weakfisher/qubit_selection.h"

namespace weakfisher {

/// Symmetric: |-1>|alpha e^{-ig}> + |+1>|alpha e^{ig}>.
/// Asymmetric: |-1>|alpha> + |+1>|alpha e^{2ig}>.
enum class Coupling { Symmetric, Asymmetric };

/// Coherent-state meter |alpha> with mean photon number n = |alpha|^2.
class CoherentMeter {
   public:
    CoherentMeter(std::complex<double> alpha, Coupling coupling = Coupling::Symmetric);

    static CoherentMeter from_photon_number(double n, Coupling coupling = Coupling::Symmetric);

    std::complex<double> alpha() const noexcept {
        return alpha_;
    }
    Coupling coupling() const noexcept {
        return coupling_;
    }
    double photon_number() const noexcept {
        return std::norm(alpha_);
    }

   private:
    std::complex<double> alpha_;
    Coupling coupling_;
};

/// a = sin(theta_i) sin(theta_f) exp(-2 n sin^2 g)
/// b = n sin(2g) + 2g + phi0
/// c = cos(theta_i) cos(theta_f)
struct PhaseAux {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Symmetric coupling only; UnsupportedCoupling otherwise.
PhaseAux phase_aux(const CoherentMeter &meter, const SelectionPair &pair, double g);

/// p_d = (1 + a cos(b - 2g) + c) / 2.
double phase_success_probability(const CoherentMeter &meter, const SelectionPair &pair, double g);

/// Closed-form breakdown for the symmetric coupling:
///   F_p       = n^2 a^2 sin^2 b / (p_d (1 - p_d))
///   p_d Q_d   = 4 [n/2 (1 + c - a cos b) + n^2/2 (1 + c - a cos(b+2g))]
///               - n^2 (cos^2 theta_i + cos^2 theta_f + 2c + a^2 sin^2 b) / p_d
///   p_r Q_r   = 4 [n/2 (1 - c + a cos b) + n^2/2 (1 - c + a cos(b+2g))]
///               - n^2 (cos^2 theta_i + cos^2 theta_f - 2c + a^2 sin^2 b) / p_r
/// q_j = 4 n^2 sin^2 theta_i + 4 n. Degenerate branches and an indeterminate
/// F_p are handled as in gaussian_fisher_breakdown.
FisherBreakdown phase_fisher_breakdown(const CoherentMeter &meter, const SelectionPair &pair, double g);

/// p_d Q_d - (1 - p_d) Q_r from the closed forms, rearranged so the large
/// branch terms cancel analytically.
double phase_branch_gap(const CoherentMeter &meter, const SelectionPair &pair, double g);

/// Joint system-meter QFI: 4 n^2 sin^2 theta_i + 4 n (symmetric) or
/// 4 n^2 sin^2 theta_i + 16 n sin^2(theta_i / 2) (asymmetric).
double joint_qfi(const CoherentMeter &meter, const QubitState &pre);

/// -4 n (n - 1) e^{-2n}, the stated branch gap at g = pi/2, theta = pi/2,
/// phi0 = pi.
double qd_qr_gap(double n);

/// Breakdowns at each coupling in `g_grid` (symmetric coupling).
std::vector<FisherBreakdown> figure_sweep(const CoherentMeter &meter, const SelectionPair &pair,
                                          std::span<const double> g_grid);

/// Breakdowns at fixed g for each mean photon number in `n_values`.
std::vector<FisherBreakdown> photon_number_sweep(std::span<const double> n_values, const SelectionPair &pair, double g);

/// `points` equally spaced couplings on [0, pi/2].
std::vector<double> quarter_period_grid(std::size_t points);

/// Small-coupling statements next to the breakdown evaluated at g = 0:
/// F_p = 4 n^2, p_d Q_d = 4 n sin^2(phi0/2), p_r Q_r = 4 n cos^2(phi0/2).
/// At phi0 = pi the evaluated limit is F_p = 4 n (n + 1) with p_d Q_d = 0.
struct SmallCouplingLimits {
    double f_p_formula = 0.0;
    double pd_qd_formula = 0.0;
    double pr_qr_formula = 0.0;
    double f_p_limit = 0.0;
    double pd_qd_limit = 0.0;
    double pr_qr_limit = 0.0;
};
SmallCouplingLimits phase_small_coupling_limits(const CoherentMeter &meter, const SelectionPair &pair);

/// Fock-truncated family |alpha e^{i rate g}>.
StateFamily coherent_rotation_family(std::complex<double> alpha, double rate, std::size_t dimension);

/// Breakdown from Fock-truncated states through fisher_engine, for either
/// coupling. Branch states are the normalized superpositions
/// gamma^- |Phi_-> + gamma^+ |Phi_+>; F_p is the classical FI of
/// {p_d, 1 - p_d}; q_j is the numerical QFI of the joint state.
FisherBreakdown phase_fisher_breakdown_numeric(const CoherentMeter &meter, const SelectionPair &pair, double g);

}  // namespace weakfisher

#endif
