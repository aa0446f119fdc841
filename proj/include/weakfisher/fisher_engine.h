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

#ifndef WEAKFISHER_FISHER_ENGINE_H
#define WEAKFISHER_FISHER_ENGINE_H

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "weakfisher/fisher_breakdown.h"
#include "weakfisher/qubit_selection.h"

namespace weakfisher {

using Amplitudes = std::vector<std::complex<double>>;

/// Names the fixed basis a family's vectors are expressed in. Two families can
/// only be combined when their bases compare equal.
struct Basis {
    std::string kind;  // e.g. "momentum-grid", "fock", "qubit x momentum-grid"
    std::size_t dimension = 0;
    double origin = 0.0;  // grid start for momentum grids, unused otherwise
    double step = 0.0;    // grid step for momentum grids, unused otherwise

    friend bool operator==(const Basis &, const Basis &) = default;
};

/// g -> normalized pure state in a fixed basis. Every evaluation is checked for
/// dimension and unit norm (within 1e-10).
class StateFamily {
   public:
    using Evaluator = std::function<Amplitudes(double)>;

    StateFamily(Basis basis, Evaluator evaluator);

    Amplitudes operator()(double g) const;

    const Basis &basis() const noexcept {
        return basis_;
    }

   private:
    Basis basis_;
    Evaluator evaluator_;
};

/// g -> finite outcome distribution. Evaluations are checked to be
/// non-negative and to sum to 1 within 1e-12.
class ProbFamily {
   public:
    using Evaluator = std::function<std::vector<double>(double)>;

    ProbFamily(std::size_t outcomes, Evaluator evaluator);

    std::vector<double> operator()(double g) const;

    std::size_t outcomes() const noexcept {
        return outcomes_;
    }

   private:
    std::size_t outcomes_;
    Evaluator evaluator_;
};

/// 1e-4 * max(1, |g|).
double default_step(double g);

/// QFI 4 [<dpsi|dpsi> - |<psi|dpsi>|^2] with a 4th-order central-difference
/// derivative. Each shifted vector is phase-aligned to psi(g) before
/// differencing. Throws StepUnstable if step and step/2 disagree by more than
/// 1e-4 relative.
double pure_state_qfi(const StateFamily &family, double g, double step);
double pure_state_qfi(const StateFamily &family, double g);

/// sum_k (dp_k/dg)^2 / p_k with 4th-order central differences. Outcomes with
/// p < 1e-14 and |dp/dg| < 1e-10 are skipped.
double classical_fi(const ProbFamily &family, double g, double step);
double classical_fi(const ProbFamily &family, double g);

enum class AssemblyMode { Full, DiscardFailure };

/// p_d Q_d + (1 - p_d) Q_r + F_p, or p_d Q_d + F_p when the failed branch's
/// meter is discarded.
double assemble_ftot(double p_d, double q_d, double q_r, double f_p, AssemblyMode mode = AssemblyMode::Full);

/// <alpha|beta> for coherent states.
std::complex<double> coherent_overlap(std::complex<double> alpha, std::complex<double> beta);

/// Fock amplitudes of |alpha> truncated to `dimension` levels (not renormalized).
Amplitudes coherent_state(std::complex<double> alpha, std::size_t dimension);

/// ceil(n + 10 sqrt(n) + 20): Poisson tail below 1e-12 for n <= 100.
std::size_t fock_truncation(double mean_photon_number);

std::complex<double> inner_product(const Amplitudes &bra, const Amplitudes &ket);

/// Joint qubit-meter family c_minus |-1>|minus(g)> + c_plus |+1>|plus(g)>,
/// stored as the concatenation of the two meter blocks.
StateFamily qubit_meter_family(std::complex<double> c_minus, StateFamily minus, std::complex<double> c_plus,
                               StateFamily plus);

/// Normalized meter superposition (c_minus |minus(g)> + c_plus |plus(g)>) / norm.
StateFamily superposition_family(std::complex<double> c_minus, StateFamily minus, std::complex<double> c_plus,
                                 StateFamily plus);

/// Breakdown of a qubit-meter round computed only from the two meter
/// families: p_d from the norm of gamma_d^- |minus> + gamma_d^+ |plus>, Q_d and
/// Q_r from pure_state_qfi of the normalized branch states, F_p from
/// classical_fi of {p_d, 1 - p_d} and q_j from the joint state. Branches below
/// kBranchProbabilityFloor are flagged and their products set to 0.
FisherBreakdown numeric_fisher_breakdown(const SelectionPair &pair, const StateFamily &minus, const StateFamily &plus,
                                         double g);

}  // namespace weakfisher

#endif
