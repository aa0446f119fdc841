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

#include "weakfisher/config_space_meter.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "weakfisher/errors.h"

namespace weakfisher {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kGridTolerance = 1e-6;

void require_finite(double g) {
    if (!std::isfinite(g)) {
        throw Error(ErrorCode::InvalidInput, "coupling g must be finite");
    }
}

// Closed-form F_p; 0 where p_d (1 - p_d) vanishes identically.
double gaussian_fp_closed(const GaussianMeter &meter, const SelectionPair &pair, double g) {
    const double sigma = meter.sigma();
    const double s = g * sigma;
    const BranchProbabilities probs = interference_probabilities(pair, 2.0 * s * s, pair.phi0());
    const double denominator = probs.success * probs.failure;
    if (denominator == 0.0) {
        return 0.0;
    }
    const double shape = std::exp(-2.0 * s * s) * pair.sin_product() * std::cos(pair.phi0());
    return 4.0 * sigma * sigma * s * s * shape * shape / denominator;
}

struct BranchIntegrals {
    double probability = 0.0;
    double derivative_norm = 0.0;          // int |d theta_k / dg|^2
    std::complex<double> connection = 0.0;  // int conj(theta_k) d theta_k / dg
};

// p_k Q_k = 4 (I_k - |J_k|^2 / p_k), F_p = sum 4 Re(J_k)^2 / p_k. A vanishing
// branch has J_k -> 0 with p_k Q_k -> 0, and its 4 I_k shows up in F_p.
FisherBreakdown assemble_branches(const BranchIntegrals &d, const BranchIntegrals &r, double q_j) {
    FisherBreakdown out;
    out.p_d = d.probability;
    out.q_j = q_j;
    double total = 0.0;
    const auto branch = [&](const BranchIntegrals &k, double &product, double &qfi, bool &degenerate) {
        if (k.probability < kBranchProbabilityFloor) {
            degenerate = true;
            product = 0.0;
            qfi = kNaN;
            out.f_p += 4.0 * k.derivative_norm;
            total += 4.0 * k.derivative_norm;
            return;
        }
        product = 4.0 * (k.derivative_norm - std::norm(k.connection) / k.probability);
        qfi = product / k.probability;
        out.f_p += 4.0 * k.connection.real() * k.connection.real() / k.probability;
        const std::complex<double> antisym = std::conj(k.connection) - k.connection;
        total += 4.0 * k.derivative_norm + (antisym * antisym).real() / k.probability;
    };
    branch(d, out.pd_qd, out.q_d, out.diagnostics.degenerate_success);
    branch(r, out.pr_qr, out.q_r, out.diagnostics.degenerate_failure);
    out.f_tot = total;
    return out;
}

WavefunctionMoments raw_moments(const SampledWavefunction &f) {
    const Amplitudes &amp = f.amplitudes();
    const Amplitudes &der = f.derivative();
    std::vector<double> speed(amp.size());
    Amplitudes connection(amp.size());
    for (std::size_t k = 0; k < amp.size(); ++k) {
        speed[k] = std::norm(der[k]);
        connection[k] = std::conj(amp[k]) * der[k];
    }
    return WavefunctionMoments{
        .derivative_norm = trapezoid(speed, f.grid().step),
        .connection = trapezoid(connection, f.grid().step),
    };
}

double joint_qfi_from_moments(const WavefunctionMoments &m, const QubitState &pre) {
    const double c = std::cos(pre.theta());
    return 4.0 * (m.derivative_norm - c * c * std::norm(m.connection));
}

void check_halving(double fine, double coarse, const char *what) {
    const double error = std::abs(fine - coarse) / std::max(1.0, std::abs(fine));
    if (error > kGridTolerance) {
        throw Error(ErrorCode::GridTooCoarse, std::string(what) + " grid-halving estimate " + std::to_string(error) +
                                                  " exceeds " + std::to_string(kGridTolerance));
    }
}

void check_shift_inside_grid(const SampledWavefunction &f, double g) {
    if (g == 0.0) {
        return;
    }
    const MomentumGrid &grid = f.grid();
    const auto band = static_cast<std::size_t>(std::ceil(std::abs(g) / grid.step));
    if (2 * band >= grid.points) {
        throw Error(ErrorCode::GridTooCoarse, "shift |g| = " + std::to_string(std::abs(g)) + " exceeds half the grid");
    }
    const Amplitudes &amp = f.amplitudes();
    double peak = 0.0;
    double edge = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
        const double m = std::abs(amp[k]);
        peak = std::max(peak, m);
        if (k <= band || k + band + 1 >= amp.size()) {
            edge = std::max(edge, m);
        }
    }
    if (edge > 1e-6 * peak) {
        throw Error(ErrorCode::GridTooCoarse, "copies shifted by g = " + std::to_string(g) + " leave the grid");
    }
}

std::pair<BranchIntegrals, BranchIntegrals> general_branches(const SampledWavefunction &f, const SelectionPair &pair,
                                                             double g) {
    const SelectionCoefficients gamma = selection_coefficients(pair);
    const double h = f.grid().step;
    // f(p + g) is the |Phi_{-g}> branch, f(p - g) the |Phi_{+g}> branch.
    const Amplitudes f_minus = shift_samples(f.amplitudes(), h, g);
    const Amplitudes f_plus = shift_samples(f.amplitudes(), h, -g);
    const Amplitudes d_minus = shift_samples(f.derivative(), h, g);
    const Amplitudes d_plus = shift_samples(f.derivative(), h, -g);

    const auto integrate = [&](std::complex<double> c_minus, std::complex<double> c_plus) {
        const std::size_t n = f_minus.size();
        std::vector<double> density(n);
        std::vector<double> speed(n);
        Amplitudes connection(n);
        for (std::size_t k = 0; k < n; ++k) {
            const std::complex<double> amp = c_minus * f_minus[k] + c_plus * f_plus[k];
            const std::complex<double> der = c_minus * d_minus[k] - c_plus * d_plus[k];
            density[k] = std::norm(amp);
            speed[k] = std::norm(der);
            connection[k] = std::conj(amp) * der;
        }
        return BranchIntegrals{
            .probability = trapezoid(density, h),
            .derivative_norm = trapezoid(speed, h),
            .connection = trapezoid(connection, h),
        };
    };
    return {integrate(gamma.gamma_d_minus, gamma.gamma_d_plus), integrate(gamma.gamma_r_minus, gamma.gamma_r_plus)};
}

FisherBreakdown limit_breakdown(const WavefunctionMoments &m, const SelectionPair &pair, double q_j, Regime regime) {
    const double ci = std::cos(pair.pre().theta());
    const double cf = std::cos(pair.post().theta());
    const double phi0 = pair.phi0();
    const double decay = regime == Regime::Weak ? 0.0 : std::numeric_limits<double>::infinity();
    const BranchProbabilities probs = interference_probabilities(pair, decay, phi0);
    // int |d theta_k/dg|^2 carries the opposite interference sign.
    const BranchProbabilities speeds = interference_probabilities(pair, decay, phi0 + std::numbers::pi);
    const double cross = regime == Regime::Weak ? pair.sin_product() * std::sin(phi0) : 0.0;
    const std::complex<double> j_d = std::complex<double>(ci + cf, cross) / 2.0 * m.connection;
    const std::complex<double> j_r = std::complex<double>(ci - cf, -cross) / 2.0 * m.connection;

    FisherBreakdown out = assemble_branches(
        BranchIntegrals{.probability = probs.success,
                        .derivative_norm = speeds.success * m.derivative_norm,
                        .connection = j_d},
        BranchIntegrals{.probability = probs.failure,
                        .derivative_norm = speeds.failure * m.derivative_norm,
                        .connection = j_r},
        q_j);
    if (!out.diagnostics.degenerate_branch()) {
        const double sum = (ci + cf) * (ci + cf) / (4.0 * probs.success) + (ci - cf) * (ci - cf) / (4.0 * probs.failure);
        out.f_tot = 4.0 * (m.derivative_norm - sum * std::norm(m.connection));
    }
    return out;
}

}  // namespace

GaussianMeter::GaussianMeter(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorCode::InvalidInput, "sigma must be positive and finite");
    }
}

MomentumGrid GaussianMeter::default_grid(double max_shift, std::size_t points) const {
    return MomentumGrid::symmetric(10.0 / (2.0 * sigma_) + std::abs(max_shift), points);
}

double gaussian_success_probability(const GaussianMeter &meter, const SelectionPair &pair, double g) {
    require_finite(g);
    const double s = g * meter.sigma();
    return interference_probabilities(pair, 2.0 * s * s, pair.phi0()).success;
}

FisherBreakdown gaussian_fisher_breakdown(const GaussianMeter &meter, const SelectionPair &pair, double g) {
    require_finite(g);
    const double sigma2 = meter.sigma() * meter.sigma();
    const double s = g * meter.sigma();
    const BranchProbabilities probs = interference_probabilities(pair, 2.0 * s * s, pair.phi0());
    const double shape = std::exp(-2.0 * s * s) * pair.sin_product() * std::cos(pair.phi0());
    const double tilt = shape * (2.0 * s * s - 1.0);
    const double cross = shape * shape * s * s;

    FisherBreakdown out;
    out.p_d = probs.success;
    out.q_j = 4.0 * sigma2;
    if (probs.success >= kBranchProbabilityFloor) {
        out.pd_qd = 4.0 * sigma2 * (probs.success + tilt - cross / probs.success);
        out.q_d = out.pd_qd / probs.success;
    } else {
        out.diagnostics.degenerate_success = true;
        out.q_d = kNaN;
    }
    if (probs.failure >= kBranchProbabilityFloor) {
        out.pr_qr = 4.0 * sigma2 * (probs.failure - tilt - cross / probs.failure);
        out.q_r = out.pr_qr / probs.failure;
    } else {
        out.diagnostics.degenerate_failure = true;
        out.q_r = kNaN;
    }
    if (probs.success * probs.failure < kIndeterminateFloor) {
        out.diagnostics.indeterminate_fp = true;
        out.f_p = 0.5 * (gaussian_fp_closed(meter, pair, g + kFallbackOffset) +
                         gaussian_fp_closed(meter, pair, g - kFallbackOffset));
    } else {
        out.f_p = 4.0 * sigma2 * s * s * shape * shape / (probs.success * probs.failure);
    }
    out.f_tot = out.assembled();
    return out;
}

double gaussian_limit_pdqd(const GaussianMeter &meter, const SelectionPair &pair, Regime regime) {
    const double sigma2 = meter.sigma() * meter.sigma();
    switch (regime) {
        case Regime::Weak:
            return 2.0 * sigma2 * (1.0 + pair.cos_product() - pair.sin_product() * std::cos(pair.phi0()));
        case Regime::Strong:
            return 2.0 * sigma2 * (1.0 + pair.cos_product());
        case Regime::General:
            break;
    }
    throw Error(ErrorCode::InvalidInput, "limit p_d Q_d is defined for the weak and strong regimes only");
}

LimitReport gaussian_limit_report(const GaussianMeter &meter, const SelectionPair &pair, Regime regime) {
    const double formula = gaussian_limit_pdqd(meter, pair, regime);
    const double strength = regime == Regime::Weak ? kWeakStrength : kStrongStrength;
    const FisherBreakdown direct = gaussian_fisher_breakdown(meter, pair, strength / meter.sigma());
    return LimitReport{.formula = formula, .direct = direct.pd_qd, .direct_f_p = direct.f_p};
}

double classical_resource_scaling(double fi_single, double n) {
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::InvalidInput, "resource count n must be positive");
    }
    return n * fi_single;
}

StateFamily gaussian_meter_family(const GaussianMeter &meter, const MomentumGrid &grid, MeterBranch branch) {
    const double a = meter.sigma() * meter.sigma();
    const double sign = branch == MeterBranch::Minus ? 1.0 : -1.0;
    return StateFamily(Basis{.kind = "momentum-grid", .dimension = grid.points, .origin = grid.p_min, .step = grid.step},
                       [=](double g) {
                           Amplitudes v(grid.points);
                           double norm = 0.0;
                           for (std::size_t k = 0; k < grid.points; ++k) {
                               const double x = grid.at(k) + sign * g;
                               const double value = std::exp(-a * x * x);
                               v[k] = value;
                               norm += value * value;
                           }
                           const double scale = 1.0 / std::sqrt(norm);
                           for (auto &c : v) {
                               c *= scale;
                           }
                           return v;
                       });
}

FisherBreakdown gaussian_fisher_breakdown_numeric(const GaussianMeter &meter, const SelectionPair &pair, double g,
                                                  std::size_t points) {
    require_finite(g);
    const MomentumGrid grid = meter.default_grid(std::abs(g) + 1e-2, points);
    return numeric_fisher_breakdown(pair, gaussian_meter_family(meter, grid, MeterBranch::Minus),
                                    gaussian_meter_family(meter, grid, MeterBranch::Plus), g);
}

WavefunctionMoments wavefunction_moments(const SampledWavefunction &f) {
    return raw_moments(f);
}

double sampled_joint_qfi(const SampledWavefunction &f, const QubitState &pre) {
    const WavefunctionMoments fine = raw_moments(f);
    const WavefunctionMoments coarse = raw_moments(f.decimated());
    if (std::abs(fine.connection.real()) > 1e-8) {
        throw Error(ErrorCode::InvalidInput,
                    "int conj(f) f' dp has real part " + std::to_string(fine.connection.real()) + " (expected 0)");
    }
    const double q = joint_qfi_from_moments(fine, pre);
    check_halving(q, joint_qfi_from_moments(coarse, pre), "joint QFI");
    return q;
}

FisherBreakdown sampled_fisher_breakdown(const SampledWavefunction &f, const SelectionPair &pair, double g,
                                         Regime regime) {
    require_finite(g);
    const double q_j = sampled_joint_qfi(f, pair.pre());
    if (regime == Regime::General) {
        check_shift_inside_grid(f, g);
        const auto [d, r] = general_branches(f, pair, g);
        FisherBreakdown out = assemble_branches(d, r, q_j);
        const auto [dc, rc] = general_branches(f.decimated(), pair, g);
        check_halving(out.f_tot, assemble_branches(dc, rc, q_j).f_tot, "F_tot");
        return out;
    }
    FisherBreakdown out = limit_breakdown(raw_moments(f), pair, q_j, regime);
    check_halving(out.f_tot, limit_breakdown(raw_moments(f.decimated()), pair, q_j, regime).f_tot, "F_tot");
    return out;
}

}  // namespace weakfisher
