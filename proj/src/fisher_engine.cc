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

#include "weakfisher/fisher_engine.h"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "weakfisher/errors.h"

namespace weakfisher {
namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kDistributionTolerance = 1e-12;
constexpr double kRichardsonTolerance = 1e-4;

// 4th-order central-difference stencil at offsets -2h, -h, +h, +2h.
constexpr std::array<double, 4> kStencilOffsets{-2.0, -1.0, 1.0, 2.0};
constexpr std::array<double, 4> kStencilWeights{1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};

void require_positive_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorCode::InvalidInput, "finite-difference step must be positive");
    }
}

double qfi_at_step(const StateFamily &family, double g, double h) {
    const Amplitudes center = family(g);
    Amplitudes derivative(center.size());
    for (std::size_t s = 0; s < kStencilOffsets.size(); ++s) {
        const Amplitudes shifted = family(g + kStencilOffsets[s] * h);
        const std::complex<double> overlap = inner_product(center, shifted);
        const double magnitude = std::abs(overlap);
        const std::complex<double> align = magnitude > 0.0 ? std::conj(overlap) / magnitude : 1.0;
        const std::complex<double> weight = align * (kStencilWeights[s] / h);
        for (std::size_t k = 0; k < center.size(); ++k) {
            derivative[k] += weight * shifted[k];
        }
    }
    const double speed = inner_product(derivative, derivative).real();
    const double connection = std::norm(inner_product(center, derivative));
    return 4.0 * (speed - connection);
}

double cfi_at_step(const ProbFamily &family, double g, double h) {
    const std::vector<double> center = family(g);
    std::vector<double> derivative(center.size(), 0.0);
    for (std::size_t s = 0; s < kStencilOffsets.size(); ++s) {
        const std::vector<double> shifted = family(g + kStencilOffsets[s] * h);
        for (std::size_t k = 0; k < center.size(); ++k) {
            derivative[k] += kStencilWeights[s] / h * shifted[k];
        }
    }
    double info = 0.0;
    for (std::size_t k = 0; k < center.size(); ++k) {
        if (center[k] < 1e-14 && std::abs(derivative[k]) < 1e-10) {
            continue;
        }
        info += derivative[k] * derivative[k] / center[k];
    }
    return info;
}

template <typename Fn>
double richardson_checked(Fn &&at_step, double step, const char *what) {
    require_positive_step(step);
    const double coarse = at_step(step);
    const double fine = at_step(step / 2.0);
    const double scale = std::max(std::abs(coarse), std::abs(fine));
    if (std::abs(coarse - fine) > kRichardsonTolerance * scale + 1e-10) {
        throw Error(ErrorCode::StepUnstable, std::string(what) + " changed from " + std::to_string(coarse) + " to " +
                                                 std::to_string(fine) + " when halving the step");
    }
    return fine;
}

void require_same_basis(const StateFamily &a, const StateFamily &b) {
    if (!(a.basis() == b.basis())) {
        throw Error(ErrorCode::BasisMismatch,
                    "cannot combine families in bases '" + a.basis().kind + "' and '" + b.basis().kind + "'");
    }
}

}  // namespace

StateFamily::StateFamily(Basis basis, Evaluator evaluator)
    : basis_(std::move(basis)), evaluator_(std::move(evaluator)) {
}

Amplitudes StateFamily::operator()(double g) const {
    Amplitudes v = evaluator_(g);
    if (v.size() != basis_.dimension) {
        throw Error(ErrorCode::BasisMismatch, "family returned " + std::to_string(v.size()) +
                                                  " amplitudes for a basis of dimension " +
                                                  std::to_string(basis_.dimension));
    }
    const double norm = inner_product(v, v).real();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw Error(ErrorCode::InvalidInput, "family state at g=" + std::to_string(g) +
                                                 " is not normalized (norm^2=" + std::to_string(norm) + ")");
    }
    return v;
}

ProbFamily::ProbFamily(std::size_t outcomes, Evaluator evaluator)
    : outcomes_(outcomes), evaluator_(std::move(evaluator)) {
}

std::vector<double> ProbFamily::operator()(double g) const {
    std::vector<double> p = evaluator_(g);
    if (p.size() != outcomes_) {
        throw Error(ErrorCode::InvalidInput, "distribution has " + std::to_string(p.size()) + " outcomes, expected " +
                                                 std::to_string(outcomes_));
    }
    double total = 0.0;
    for (double pk : p) {
        if (pk < 0.0 || !std::isfinite(pk)) {
            throw Error(ErrorCode::NegativeProbability,
                        "outcome probability " + std::to_string(pk) + " at g=" + std::to_string(g));
        }
        total += pk;
    }
    if (std::abs(total - 1.0) > kDistributionTolerance) {
        throw Error(ErrorCode::InvalidInput, "distribution sums to " + std::to_string(total));
    }
    return p;
}

double default_step(double g) {
    return 1e-4 * std::max(1.0, std::abs(g));
}

double pure_state_qfi(const StateFamily &family, double g, double step) {
    return richardson_checked([&](double h) { return qfi_at_step(family, g, h); }, step, "pure-state QFI");
}

double pure_state_qfi(const StateFamily &family, double g) {
    return pure_state_qfi(family, g, default_step(g));
}

double classical_fi(const ProbFamily &family, double g, double step) {
    return richardson_checked([&](double h) { return cfi_at_step(family, g, h); }, step, "classical FI");
}

double classical_fi(const ProbFamily &family, double g) {
    return classical_fi(family, g, default_step(g));
}

double assemble_ftot(double p_d, double q_d, double q_r, double f_p, AssemblyMode mode) {
    if (!(p_d >= 0.0 && p_d <= 1.0)) {
        throw Error(ErrorCode::InvalidInput, "p_d must lie in [0, 1]");
    }
    if (!(q_d >= 0.0 && q_r >= 0.0 && f_p >= 0.0)) {
        throw Error(ErrorCode::InvalidInput, "Fisher informations must be non-negative");
    }
    const double detected = p_d * q_d + f_p;
    if (mode == AssemblyMode::DiscardFailure) {
        return detected;
    }
    return detected + (1.0 - p_d) * q_r;
}

std::complex<double> coherent_overlap(std::complex<double> alpha, std::complex<double> beta) {
    return std::exp(-(std::norm(alpha) + std::norm(beta)) / 2.0 + std::conj(alpha) * beta);
}

Amplitudes coherent_state(std::complex<double> alpha, std::size_t dimension) {
    Amplitudes c(dimension);
    if (dimension == 0) {
        return c;
    }
    c[0] = std::exp(-std::norm(alpha) / 2.0);
    for (std::size_t k = 1; k < dimension; ++k) {
        c[k] = c[k - 1] * alpha / std::sqrt(static_cast<double>(k));
    }
    return c;
}

std::size_t fock_truncation(double mean_photon_number) {
    if (!(mean_photon_number >= 0.0) || !std::isfinite(mean_photon_number)) {
        throw Error(ErrorCode::InvalidInput, "mean photon number must be finite and non-negative");
    }
    return static_cast<std::size_t>(
        std::ceil(mean_photon_number + 10.0 * std::sqrt(mean_photon_number) + 20.0));
}

std::complex<double> inner_product(const Amplitudes &bra, const Amplitudes &ket) {
    if (bra.size() != ket.size()) {
        throw Error(ErrorCode::BasisMismatch, "inner product of vectors with different dimensions");
    }
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < bra.size(); ++k) {
        sum += std::conj(bra[k]) * ket[k];
    }
    return sum;
}

StateFamily qubit_meter_family(std::complex<double> c_minus, StateFamily minus, std::complex<double> c_plus,
                               StateFamily plus) {
    require_same_basis(minus, plus);
    Basis joint = minus.basis();
    joint.kind = "qubit x " + joint.kind;
    joint.dimension *= 2;
    return StateFamily(joint, [=](double g) {
        const Amplitudes m = minus(g);
        const Amplitudes p = plus(g);
        Amplitudes v;
        v.reserve(m.size() + p.size());
        for (const auto &a : m) {
            v.push_back(c_minus * a);
        }
        for (const auto &a : p) {
            v.push_back(c_plus * a);
        }
        return v;
    });
}

StateFamily superposition_family(std::complex<double> c_minus, StateFamily minus, std::complex<double> c_plus,
                                 StateFamily plus) {
    require_same_basis(minus, plus);
    return StateFamily(minus.basis(), [=](double g) {
        const Amplitudes m = minus(g);
        const Amplitudes p = plus(g);
        Amplitudes v(m.size());
        for (std::size_t k = 0; k < m.size(); ++k) {
            v[k] = c_minus * m[k] + c_plus * p[k];
        }
        const double norm = std::sqrt(inner_product(v, v).real());
        if (norm == 0.0) {
            throw Error(ErrorCode::DegenerateBranch, "superposition vanishes at g=" + std::to_string(g));
        }
        for (auto &a : v) {
            a /= norm;
        }
        return v;
    });
}

FisherBreakdown numeric_fisher_breakdown(const SelectionPair &pair, const StateFamily &minus, const StateFamily &plus,
                                         double g) {
    if (!(minus.basis() == plus.basis())) {
        throw Error(ErrorCode::BasisMismatch, "branch families use different bases");
    }
    const SelectionCoefficients gamma = selection_coefficients(pair);
    const auto success_probability = [=](double at) {
        const Amplitudes m = minus(at);
        const Amplitudes p = plus(at);
        double norm = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k) {
            norm += std::norm(gamma.gamma_d_minus * m[k] + gamma.gamma_d_plus * p[k]);
        }
        return std::min(norm, 1.0);
    };
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    FisherBreakdown out;
    out.p_d = success_probability(g);
    const double p_r = 1.0 - out.p_d;
    if (out.p_d >= kBranchProbabilityFloor) {
        out.q_d = pure_state_qfi(superposition_family(gamma.gamma_d_minus, minus, gamma.gamma_d_plus, plus), g);
        out.pd_qd = out.p_d * out.q_d;
    } else {
        out.diagnostics.degenerate_success = true;
        out.q_d = kNaN;
    }
    if (p_r >= kBranchProbabilityFloor) {
        out.q_r = pure_state_qfi(superposition_family(gamma.gamma_r_minus, minus, gamma.gamma_r_plus, plus), g);
        out.pr_qr = p_r * out.q_r;
    } else {
        out.diagnostics.degenerate_failure = true;
        out.q_r = kNaN;
    }
    const ProbFamily outcomes(2, [=](double at) {
        const double p = success_probability(at);
        return std::vector<double>{p, 1.0 - p};
    });
    out.f_p = classical_fi(outcomes, g);
    const QubitState &pre = pair.pre();
    out.q_j = pure_state_qfi(qubit_meter_family(std::cos(pre.theta() / 2.0), minus,
                                                std::polar(std::sin(pre.theta() / 2.0), pre.phi()), plus),
                             g);
    out.f_tot = out.assembled();
    return out;
}

}  // namespace weakfisher
