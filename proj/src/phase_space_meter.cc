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

#include "weakfisher/phase_space_meter.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "weakfisher/errors.h"

namespace weakfisher {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_symmetric(const CoherentMeter &meter) {
    if (meter.coupling() != Coupling::Symmetric) {
        throw Error(ErrorCode::UnsupportedCoupling,
                    "closed forms cover the symmetric coupling only; use phase_fisher_breakdown_numeric");
    }
}

void require_finite(double g) {
    if (!std::isfinite(g)) {
        throw Error(ErrorCode::InvalidInput, "coupling g must be finite");
    }
}

BranchProbabilities symmetric_probabilities(double n, const SelectionPair &pair, double g) {
    const double sg = std::sin(g);
    return interference_probabilities(pair, 2.0 * n * sg * sg, n * std::sin(2.0 * g) + pair.phi0());
}

// Closed-form F_p; 0 where p_d (1 - p_d) vanishes identically.
double phase_fp_closed(double n, const SelectionPair &pair, double g) {
    const BranchProbabilities probs = symmetric_probabilities(n, pair, g);
    const double denominator = probs.success * probs.failure;
    if (denominator == 0.0) {
        return 0.0;
    }
    const double sg = std::sin(g);
    const double a = pair.sin_product() * std::exp(-2.0 * n * sg * sg);
    const double sb = std::sin(n * std::sin(2.0 * g) + 2.0 * g + pair.phi0());
    return n * n * a * a * sb * sb / denominator;
}

}  // namespace

CoherentMeter::CoherentMeter(std::complex<double> alpha, Coupling coupling) : alpha_(alpha), coupling_(coupling) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw Error(ErrorCode::InvalidInput, "coherent amplitude must be finite");
    }
}

CoherentMeter CoherentMeter::from_photon_number(double n, Coupling coupling) {
    if (!(n >= 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::InvalidInput, "mean photon number must be finite and non-negative");
    }
    return CoherentMeter(std::sqrt(n), coupling);
}

PhaseAux phase_aux(const CoherentMeter &meter, const SelectionPair &pair, double g) {
    require_symmetric(meter);
    require_finite(g);
    const double n = meter.photon_number();
    const double sg = std::sin(g);
    return PhaseAux{
        .a = pair.sin_product() * std::exp(-2.0 * n * sg * sg),
        .b = n * std::sin(2.0 * g) + 2.0 * g + pair.phi0(),
        .c = pair.cos_product(),
    };
}

double phase_success_probability(const CoherentMeter &meter, const SelectionPair &pair, double g) {
    require_symmetric(meter);
    require_finite(g);
    return symmetric_probabilities(meter.photon_number(), pair, g).success;
}

FisherBreakdown phase_fisher_breakdown(const CoherentMeter &meter, const SelectionPair &pair, double g) {
    const PhaseAux aux = phase_aux(meter, pair, g);
    const double n = meter.photon_number();
    const double ci = std::cos(pair.pre().theta());
    const double cf = std::cos(pair.post().theta());
    const double sb = std::sin(aux.b);
    const double cos_b = std::cos(aux.b);
    const double cos_b2 = std::cos(aux.b + 2.0 * g);
    const BranchProbabilities probs = symmetric_probabilities(n, pair, g);

    // <d theta_k | d theta_k> and |<theta_k | d theta_k>|^2 for the unnormalized branches.
    const double speed_d = n / 2.0 * (1.0 + aux.c - aux.a * cos_b) + n * n / 2.0 * (1.0 + aux.c - aux.a * cos_b2);
    const double speed_r = n / 2.0 * (1.0 - aux.c + aux.a * cos_b) + n * n / 2.0 * (1.0 - aux.c + aux.a * cos_b2);
    const double shared = ci * ci + cf * cf + aux.a * aux.a * sb * sb;
    const double connection_d = n * n / 4.0 * (shared + 2.0 * aux.c);
    const double connection_r = n * n / 4.0 * (shared - 2.0 * aux.c);

    FisherBreakdown out;
    out.p_d = probs.success;
    out.q_j = joint_qfi(meter, pair.pre());
    if (probs.success >= kBranchProbabilityFloor) {
        out.pd_qd = 4.0 * (speed_d - connection_d / probs.success);
        out.q_d = out.pd_qd / probs.success;
    } else {
        out.diagnostics.degenerate_success = true;
        out.q_d = kNaN;
    }
    if (probs.failure >= kBranchProbabilityFloor) {
        out.pr_qr = 4.0 * (speed_r - connection_r / probs.failure);
        out.q_r = out.pr_qr / probs.failure;
    } else {
        out.diagnostics.degenerate_failure = true;
        out.q_r = kNaN;
    }
    if (probs.success * probs.failure < kIndeterminateFloor) {
        out.diagnostics.indeterminate_fp = true;
        out.f_p = 0.5 * (phase_fp_closed(n, pair, g + kFallbackOffset) + phase_fp_closed(n, pair, g - kFallbackOffset));
    } else {
        out.f_p = n * n * aux.a * aux.a * sb * sb / (probs.success * probs.failure);
    }
    out.f_tot = out.assembled();
    return out;
}

double phase_branch_gap(const CoherentMeter &meter, const SelectionPair &pair, double g) {
    const PhaseAux aux = phase_aux(meter, pair, g);
    const BranchProbabilities probs = symmetric_probabilities(meter.photon_number(), pair, g);
    if (probs.success < kBranchProbabilityFloor || probs.failure < kBranchProbabilityFloor) {
        const FisherBreakdown b = phase_fisher_breakdown(meter, pair, g);
        return b.pd_qd - b.pr_qr;
    }
    const double n = meter.photon_number();
    const double ci = std::cos(pair.pre().theta());
    const double cf = std::cos(pair.post().theta());
    const double sb = std::sin(aux.b);
    const double shared = ci * ci + cf * cf + aux.a * aux.a * sb * sb;
    const double speed_gap =
        (n * n + n) * aux.c - aux.a * (n * n * std::cos(aux.b + 2.0 * g) + n * std::cos(aux.b));
    const double product = probs.success * probs.failure;
    const double connection_gap =
        n * n / 4.0 * (shared * (probs.failure - probs.success) / product + 2.0 * aux.c / product);
    return 4.0 * (speed_gap - connection_gap);
}

double joint_qfi(const CoherentMeter &meter, const QubitState &pre) {
    const double n = meter.photon_number();
    const double s = std::sin(pre.theta());
    if (meter.coupling() == Coupling::Symmetric) {
        return 4.0 * n * n * s * s + 4.0 * n;
    }
    const double half = std::sin(pre.theta() / 2.0);
    return 4.0 * n * n * s * s + 16.0 * n * half * half;
}

double qd_qr_gap(double n) {
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::InvalidInput, "n must be positive");
    }
    return -4.0 * n * (n - 1.0) * std::exp(-2.0 * n);
}

std::vector<FisherBreakdown> figure_sweep(const CoherentMeter &meter, const SelectionPair &pair,
                                          std::span<const double> g_grid) {
    std::vector<FisherBreakdown> rows;
    rows.reserve(g_grid.size());
    for (double g : g_grid) {
        rows.push_back(phase_fisher_breakdown(meter, pair, g));
    }
    return rows;
}

std::vector<FisherBreakdown> photon_number_sweep(std::span<const double> n_values, const SelectionPair &pair,
                                                 double g) {
    std::vector<FisherBreakdown> rows;
    rows.reserve(n_values.size());
    for (double n : n_values) {
        rows.push_back(phase_fisher_breakdown(CoherentMeter::from_photon_number(n), pair, g));
    }
    return rows;
}

std::vector<double> quarter_period_grid(std::size_t points) {
    if (points == 0) {
        throw Error(ErrorCode::InvalidInput, "grid needs at least one point");
    }
    std::vector<double> grid(points, 0.0);
    for (std::size_t k = 1; k < points; ++k) {
        grid[k] = std::numbers::pi / 2.0 * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    return grid;
}

SmallCouplingLimits phase_small_coupling_limits(const CoherentMeter &meter, const SelectionPair &pair) {
    const double n = meter.photon_number();
    const double half = pair.phi0() / 2.0;
    const FisherBreakdown at_zero = phase_fisher_breakdown(meter, pair, 0.0);
    return SmallCouplingLimits{
        .f_p_formula = 4.0 * n * n,
        .pd_qd_formula = 4.0 * n * std::sin(half) * std::sin(half),
        .pr_qr_formula = 4.0 * n * std::cos(half) * std::cos(half),
        .f_p_limit = at_zero.f_p,
        .pd_qd_limit = at_zero.pd_qd,
        .pr_qr_limit = at_zero.pr_qr,
    };
}

StateFamily coherent_rotation_family(std::complex<double> alpha, double rate, std::size_t dimension) {
    return StateFamily(Basis{.kind = "fock", .dimension = dimension},
                       [=](double g) { return coherent_state(alpha * std::polar(1.0, rate * g), dimension); });
}

FisherBreakdown phase_fisher_breakdown_numeric(const CoherentMeter &meter, const SelectionPair &pair, double g) {
    require_finite(g);
    const std::size_t dimension = fock_truncation(meter.photon_number());
    const std::complex<double> alpha = meter.alpha();
    const bool symmetric = meter.coupling() == Coupling::Symmetric;
    const StateFamily minus = coherent_rotation_family(alpha, symmetric ? -1.0 : 0.0, dimension);
    const StateFamily plus = coherent_rotation_family(alpha, symmetric ? 1.0 : 2.0, dimension);
    return numeric_fisher_breakdown(pair, minus, plus, g);
}

}  // namespace weakfisher
