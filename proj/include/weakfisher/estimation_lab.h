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

#ifndef WEAKFISHER_ESTIMATION_LAB_H
#define WEAKFISHER_ESTIMATION_LAB_H

#include <cstdint>
#include <optional>
#include <variant>

#include "weakfisher/config_space_meter.h"
#include "weakfisher/phase_space_meter.h"
#include "weakfisher/qubit_selection.h"

namespace weakfisher {

/// Post-selection statistic {p_d(g), 1 - p_d(g)} of one of the two meters.
class PostSelectionModel {
   public:
    using Meter = std::variant<GaussianMeter, CoherentMeter>;

    PostSelectionModel(Meter meter, SelectionPair pair);

    double success_probability(double g) const;

    /// F_p(g), the Fisher information carried by the success/failure record.
    double fisher_information(double g) const;

    const Meter &meter() const noexcept {
        return meter_;
    }
    const SelectionPair &pair() const noexcept {
        return pair_;
    }

   private:
    Meter meter_;
    SelectionPair pair_;
};

struct TrialConfig {
    PostSelectionModel model;
    double g_true = 0.0;
    std::int64_t trials = 1;
    std::uint64_t seed = 0;
};

struct TrialCounts {
    std::int64_t n_success = 0;
    std::int64_t n_fail = 0;

    std::int64_t total() const {
        return n_success + n_fail;
    }
};

struct EstimationWindow {
    double lo = 0.0;
    double hi = 0.0;
};

struct EstimateSummary {
    double g_true = 0.0;
    double g_hat_mean = 0.0;
    double g_hat_variance = 0.0;
    double crb = 0.0;  // 1 / (N F_p(g_true))
    std::int64_t repeats = 0;
    std::int64_t trials = 0;
    EstimationWindow window;

    double efficiency() const {
        return g_hat_variance / crb;
    }
};

/// SplitMix64 mix of (seed, stream). Each stream seeds its own generator.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// n_success ~ Binomial(N, p_d(g_true)) from the generator of (seed, stream).
TrialCounts simulate_postselection(const TrialConfig &config, std::uint64_t stream = 0);

/// Maximum-likelihood g on `window`. p_d must be strictly monotone over 64
/// samples of the window, otherwise NonIdentifiable. The best sample is refined
/// by golden-section search to 1e-10 in g.
double mle_from_counts(const TrialCounts &counts, const PostSelectionModel &model, EstimationWindow window);

/// [max(0, g - 10/sqrt(N F_p)), g + 10/sqrt(N F_p)]. NonIdentifiable if F_p = 0.
EstimationWindow default_window(const PostSelectionModel &model, double g_true, std::int64_t trials);

/// `repeats` independent simulate + estimate rounds, stream r for repeat r.
EstimateSummary crb_experiment(const TrialConfig &config, std::int64_t repeats,
                               std::optional<EstimationWindow> window = std::nullopt);

}  // namespace weakfisher

#endif
