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

#ifndef WEAKFISHER_FISHER_BREAKDOWN_H
#define WEAKFISHER_FISHER_BREAKDOWN_H

namespace weakfisher {

/// Branch probability below which 1/p_k is never formed.
inline constexpr double kBranchProbabilityFloor = 1e-12;

/// p_d (1 - p_d) below which the closed-form F_p is treated as 0/0.
inline constexpr double kIndeterminateFloor = 1e-14;

/// Offset used to evaluate F_p beside an indeterminate point.
inline constexpr double kFallbackOffset = 1e-6;

struct BreakdownDiagnostics {
    bool degenerate_success = false;
    bool degenerate_failure = false;
    bool indeterminate_fp = false;

    bool degenerate_branch() const {
        return degenerate_success || degenerate_failure;
    }
};

/// Fisher-information accounting of one pre-selection / coupling /
/// post-selection round, in units of 1/g^2.
///
/// `pd_qd` and `pr_qr` are the branch products p_d Q_d and (1 - p_d) Q_r. They
/// are always finite; `q_d` / `q_r` are NaN when their branch is degenerate
/// (probability below kBranchProbabilityFloor), in which case the product
/// carries its vanishing-branch limit of 0.
struct FisherBreakdown {
    double p_d = 0.0;
    double q_d = 0.0;
    double q_r = 0.0;
    double pd_qd = 0.0;
    double pr_qr = 0.0;
    double f_p = 0.0;
    double f_tot = 0.0;
    double q_j = 0.0;
    BreakdownDiagnostics diagnostics;

    /// p_d Q_d + (1 - p_d) Q_r + F_p from the stored products.
    double assembled() const {
        return pd_qd + pr_qr + f_p;
    }
};

}  // namespace weakfisher

#endif
