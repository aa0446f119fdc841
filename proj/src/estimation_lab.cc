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

#include "weakfisher/estimation_lab.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "weakfisher/errors.h"

namespace weakfisher {
namespace {

constexpr std::size_t kMonotonicitySamples = 64;
constexpr double kMleTolerance = 1e-10;

// KL divergence of Bernoulli(p) from Bernoulli(q_hat); same minimizer as the
// negative log-likelihood but free of the large constant offset.
double binomial_divergence(double q_hat, double p) {
    double d = 0.0;
    if (q_hat > 0.0) {
        if (p <= 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        d += q_hat * std::log1p((q_hat - p) / p);
    }
    if (q_hat < 1.0) {
        if (p >= 1.0) {
            return std::numeric_limits<double>::infinity();
        }
        d += (1.0 - q_hat) * std::log1p((p - q_hat) / (1.0 - p));
    }
    return d;
}

}  // namespace

PostSelectionModel::PostSelectionModel(Meter meter, SelectionPair pair) : meter_(std::move(meter)), pair_(pair) {
}

double PostSelectionModel::success_probability(double g) const {
    if (const auto *gauss = std::get_if<GaussianMeter>(&meter_)) {
        return gaussian_success_probability(*gauss, pair_, g);
    }
    return phase_success_probability(std::get<CoherentMeter>(meter_), pair_, g);
}

double PostSelectionModel::fisher_information(double g) const {
    if (const auto *gauss = std::get_if<GaussianMeter>(&meter_)) {
        return gaussian_fisher_breakdown(*gauss, pair_, g).f_p;
    }
    return phase_fisher_breakdown(std::get<CoherentMeter>(meter_), pair_, g).f_p;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TrialCounts simulate_postselection(const TrialConfig &config, std::uint64_t stream) {
    if (config.trials < 1) {
        throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
    }
    if (!std::isfinite(config.g_true)) {
        throw Error(ErrorCode::InvalidInput, "g_true must be finite");
    }
    const double p = std::clamp(config.model.success_probability(config.g_true), 0.0, 1.0);
    std::mt19937_64 rng(derive_seed(config.seed, stream));
    std::binomial_distribution<std::int64_t> draw(config.trials, p);
    const std::int64_t success = draw(rng);
    return TrialCounts{success, config.trials - success};
}

double mle_from_counts(const TrialCounts &counts, const PostSelectionModel &model, EstimationWindow window) {
    if (counts.n_success < 0 || counts.n_fail < 0 || counts.total() == 0) {
        throw Error(ErrorCode::InvalidInput, "counts must be non-negative with a positive total");
    }
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || !(window.lo < window.hi)) {
        throw Error(ErrorCode::InvalidInput, "window must be a finite interval with lo < hi");
    }
    const double q_hat = static_cast<double>(counts.n_success) / static_cast<double>(counts.total());
    const auto objective = [&](double g) { return binomial_divergence(q_hat, model.success_probability(g)); };

    std::array<double, kMonotonicitySamples> xs{};
    std::array<double, kMonotonicitySamples> ps{};
    const double width = window.hi - window.lo;
    for (std::size_t k = 0; k < kMonotonicitySamples; ++k) {
        xs[k] = k + 1 == kMonotonicitySamples
                    ? window.hi
                    : window.lo + width * static_cast<double>(k) / static_cast<double>(kMonotonicitySamples - 1);
        ps[k] = model.success_probability(xs[k]);
    }
    const bool increasing = ps[1] > ps[0];
    for (std::size_t k = 1; k < kMonotonicitySamples; ++k) {
        const bool ok = increasing ? ps[k] > ps[k - 1] : ps[k] < ps[k - 1];
        if (!ok) {
            throw Error(ErrorCode::NonIdentifiable,
                        "p_d is not strictly monotone on [" + std::to_string(window.lo) + ", " +
                            std::to_string(window.hi) + "]");
        }
    }

    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < kMonotonicitySamples; ++k) {
        const double value = binomial_divergence(q_hat, ps[k]);
        if (value < best_value) {
            best_value = value;
            best = k;
        }
    }
    double a = xs[best == 0 ? 0 : best - 1];
    double b = xs[std::min(best + 1, kMonotonicitySamples - 1)];

    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > kMleTolerance) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = objective(d);
        }
    }
    double g_hat = 0.5 * (a + b);
    double g_value = objective(g_hat);
    for (double edge : {window.lo, window.hi}) {
        const double value = objective(edge);
        if (value < g_value) {
            g_value = value;
            g_hat = edge;
        }
    }
    return g_hat;
}

EstimationWindow default_window(const PostSelectionModel &model, double g_true, std::int64_t trials) {
    if (trials < 1) {
        throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
    }
    const double fisher = model.fisher_information(g_true);
    if (!(fisher > 0.0)) {
        throw Error(ErrorCode::NonIdentifiable, "post-selection Fisher information is zero at g_true");
    }
    const double half = 10.0 / std::sqrt(static_cast<double>(trials) * fisher);
    return EstimationWindow{std::max(0.0, g_true - half), g_true + half};
}

EstimateSummary crb_experiment(const TrialConfig &config, std::int64_t repeats,
                               std::optional<EstimationWindow> window) {
    if (repeats < 1) {
        throw Error(ErrorCode::InvalidInput, "repeats must be at least 1");
    }
    if (config.trials < 1) {
        throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
    }
    const double fisher = config.model.fisher_information(config.g_true);
    if (!(fisher > 0.0)) {
        throw Error(ErrorCode::NonIdentifiable, "post-selection Fisher information is zero at g_true");
    }
    const EstimationWindow used = window ? *window : default_window(config.model, config.g_true, config.trials);

    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t r = 0; r < repeats; ++r) {
        const TrialCounts counts = simulate_postselection(config, static_cast<std::uint64_t>(r));
        const double g_hat = mle_from_counts(counts, config.model, used);
        const double delta = g_hat - mean;
        mean += delta / static_cast<double>(r + 1);
        m2 += delta * (g_hat - mean);
    }

    EstimateSummary out;
    out.g_true = config.g_true;
    out.g_hat_mean = mean;
    out.g_hat_variance = repeats > 1 ? m2 / static_cast<double>(repeats - 1) : 0.0;
    out.crb = 1.0 / (static_cast<double>(config.trials) * fisher);
    out.repeats = repeats;
    out.trials = config.trials;
    out.window = used;
    return out;
}

}  // namespace weakfisher
