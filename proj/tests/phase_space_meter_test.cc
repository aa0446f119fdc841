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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.h"

namespace weakfisher {
namespace {

constexpr double kPi = std::numbers::pi;

CoherentMeter meter(double n, Coupling coupling = Coupling::Symmetric) {
    return CoherentMeter::from_photon_number(n, coupling);
}

SelectionPair equatorial(double phi0) {
    return SelectionPair::from_angles(kPi / 2, kPi / 2, phi0);
}

TEST(PhaseAux, Examples) {
    const SelectionPair pair = SelectionPair::from_angles(1.0, 0.6, 0.4);
    const PhaseAux vacuum = phase_aux(meter(0.0), pair, 0.7);
    EXPECT_DOUBLE_EQ(vacuum.a, std::sin(1.0) * std::sin(0.6));
    EXPECT_DOUBLE_EQ(vacuum.b, 1.4 + 0.4);
    EXPECT_DOUBLE_EQ(vacuum.c, std::cos(1.0) * std::cos(0.6));

    const PhaseAux orth = phase_aux(meter(3.0), equatorial(kPi), kPi / 2);
    EXPECT_REL_NEAR(orth.a, std::exp(-6.0), 1e-14);
    EXPECT_REL_NEAR(orth.b, 2.0 * kPi, 1e-14);
    EXPECT_NEAR(orth.c, 0.0, 1e-16);

    const PhaseAux zero = phase_aux(meter(2.5), pair, 0.0);
    EXPECT_DOUBLE_EQ(zero.a, std::sin(1.0) * std::sin(0.6));
    EXPECT_DOUBLE_EQ(zero.b, 0.4);
}

TEST(PhaseAux, AsymmetricUnsupported) {
    const SelectionPair pair = equatorial(0.0);
    EXPECT_WF_ERROR(phase_aux(meter(2.0, Coupling::Asymmetric), pair, 0.1), ErrorCode::UnsupportedCoupling);
    EXPECT_WF_ERROR(phase_fisher_breakdown(meter(2.0, Coupling::Asymmetric), pair, 0.1),
                    ErrorCode::UnsupportedCoupling);
    EXPECT_WF_ERROR(phase_success_probability(meter(2.0, Coupling::Asymmetric), pair, 0.1),
                    ErrorCode::UnsupportedCoupling);
}

TEST(PhaseSuccessProbability, Examples) {
    EXPECT_DOUBLE_EQ(phase_success_probability(meter(7.0), SelectionPair::from_angles(0, 0, 0), 0.9), 1.0);
    EXPECT_REL_NEAR(phase_success_probability(meter(3.0), equatorial(kPi), kPi / 2), 0.5 * (1.0 - std::exp(-6.0)),
                    1e-14);
    EXPECT_NEAR(phase_success_probability(meter(3.0), equatorial(kPi), 0.0), 0.0, 1e-16);
}

TEST(PhaseBreakdown, ProductState) {
    const FisherBreakdown b = phase_fisher_breakdown(meter(4.0), SelectionPair::from_angles(0, kPi / 2, 0), 0.37);
    EXPECT_REL_NEAR(b.p_d, 0.5, 1e-14);
    EXPECT_REL_NEAR(b.q_d, 16.0, 1e-12);
    EXPECT_REL_NEAR(b.q_r, 16.0, 1e-12);
    EXPECT_NEAR(b.f_p, 0.0, 1e-12);
    EXPECT_REL_NEAR(b.f_tot, 16.0, 1e-12);
    EXPECT_REL_NEAR(b.q_j, 16.0, 1e-15);
}

TEST(PhaseBreakdown, SmallCouplingGenericPhase) {
    const FisherBreakdown b = phase_fisher_breakdown(meter(100.0), equatorial(kPi / 2), 1e-6);
    EXPECT_REL_NEAR(b.f_p, 40000.0, 1e-3);
    EXPECT_REL_NEAR(b.pd_qd, 200.0, 5e-3);
}

TEST(PhaseBreakdown, FrozenFockValues) {
    // Reference values from Fock-basis states with analytic g-derivatives.
    struct Case {
        double n, theta_i, theta_f, phi0, g;
        double p_d, pd_qd, pr_qr, f_p;
    };
    const Case cases[] = {
        {4.0, 1.0, 0.7, 0.3, 0.4, 0.6260853105160636, 13.21653905844061, 20.132009158345525, 0.9625304365391661},
        {5.0, 0.3, 2.0, 1.0, 0.2, 0.2123852740330219, 10.981439312803744, 14.888502464072872, 0.20406003828828878},
    };
    for (const Case &c : cases) {
        const SelectionPair pair = SelectionPair::from_angles(c.theta_i, c.theta_f, c.phi0);
        const FisherBreakdown b = phase_fisher_breakdown(meter(c.n), pair, c.g);
        EXPECT_REL_NEAR(b.p_d, c.p_d, 1e-12);
        EXPECT_REL_NEAR(b.pd_qd, c.pd_qd, 1e-10);
        EXPECT_REL_NEAR(b.pr_qr, c.pr_qr, 1e-10);
        EXPECT_REL_NEAR(b.f_p, c.f_p, 1e-10);
    }
}

TEST(PhaseBreakdown, EigenstatePreselection) {
    // |-1> gives p_d Q_d = 2n (1 + cos theta_f); |+1> gives 2n (1 - cos theta_f).
    for (double theta_f : {0.3, 1.2, 2.5}) {
        const FisherBreakdown minus = phase_fisher_breakdown(meter(3.0), SelectionPair::from_angles(0, theta_f, 0), 0.4);
        const FisherBreakdown plus = phase_fisher_breakdown(meter(3.0), SelectionPair::from_angles(kPi, theta_f, 0), 0.4);
        EXPECT_REL_NEAR(minus.pd_qd, 6.0 * (1.0 + std::cos(theta_f)), 1e-12);
        EXPECT_REL_NEAR(plus.pd_qd, 6.0 * (1.0 - std::cos(theta_f)), 1e-12);
        for (const FisherBreakdown &b : {minus, plus}) {
            EXPECT_NEAR(b.f_p, 0.0, 1e-12);
            EXPECT_REL_NEAR(b.pd_qd + b.pr_qr, 12.0, 1e-12);
        }
    }
}

TEST(JointQfi, Examples) {
    EXPECT_DOUBLE_EQ(joint_qfi(meter(5.0), QubitState(kPi / 2)), 120.0);
    EXPECT_DOUBLE_EQ(joint_qfi(meter(5.0), QubitState(0.0)), 20.0);
    EXPECT_DOUBLE_EQ(joint_qfi(meter(5.0, Coupling::Asymmetric), QubitState(0.0)), 0.0);
    EXPECT_REL_NEAR(joint_qfi(meter(5.0, Coupling::Asymmetric), QubitState(kPi / 2)), 100.0 + 40.0, 1e-14);
}

TEST(QdQrGap, Formula) {
    EXPECT_EQ(qd_qr_gap(1.0), 0.0);
    EXPECT_REL_NEAR(qd_qr_gap(3.0), -24.0 * std::exp(-6.0), 1e-15);
    EXPECT_REL_NEAR(qd_qr_gap(3.0), -0.05949005224, 1e-9);
    EXPECT_REL_NEAR(qd_qr_gap(30.0), -3.06e-23, 1e-2);
    EXPECT_LT(std::abs(qd_qr_gap(30.0)) / joint_qfi(meter(30.0), QubitState(kPi / 2)), 1e-24);
    EXPECT_WF_ERROR(qd_qr_gap(0.0), ErrorCode::InvalidInput);
}

TEST(QdQrGap, BreakdownSignAtOrthogonalSelection) {
    // At phi0 = pi the closed forms give +4n(n-1)e^{-2n}; the negative
    // value of qd_qr_gap is what phi0 = 0 produces.
    for (int n = 1; n <= 30; ++n) {
        const double expected = 4.0 * n * (n - 1.0) * std::exp(-2.0 * n);
        const double tol = 1e-9 * expected + 1e-15;
        EXPECT_NEAR(phase_branch_gap(meter(n), equatorial(kPi), kPi / 2), expected, tol) << "n=" << n;
        EXPECT_NEAR(phase_branch_gap(meter(n), equatorial(0.0), kPi / 2), qd_qr_gap(n), tol) << "n=" << n;
    }
}

TEST(QdQrGap, MatchesDirectDifference) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> theta(0.1, kPi - 0.1);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::uniform_real_distribution<double> coupling(0.0, 3.0);
    for (int k = 0; k < 200; ++k) {
        const SelectionPair pair = SelectionPair::from_angles(theta(rng), theta(rng), phase(rng));
        const double g = coupling(rng);
        const FisherBreakdown b = phase_fisher_breakdown(meter(6.0), pair, g);
        EXPECT_NEAR(phase_branch_gap(meter(6.0), pair, g), b.pd_qd - b.pr_qr, 1e-9 * b.q_j);
    }
}

TEST(PhaseBreakdown, ConservationAtEquator) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::uniform_real_distribution<double> coupling(0.0, 3.0);
    std::uniform_real_distribution<double> photons(0.1, 30.0);
    for (int k = 0; k < 500; ++k) {
        const double n = photons(rng);
        const FisherBreakdown b = phase_fisher_breakdown(meter(n), equatorial(phase(rng)), coupling(rng));
        EXPECT_REL_NEAR(b.f_tot, 4.0 * n * n + 4.0 * n, 1e-6);
    }
}

TEST(PhaseBreakdown, BoundOverRandomDraws) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> theta(0.0, kPi);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::uniform_real_distribution<double> coupling(0.0, 3.0);
    std::uniform_real_distribution<double> photons(0.0, 30.0);
    for (int k = 0; k < 1000; ++k) {
        const FisherBreakdown b = phase_fisher_breakdown(
            meter(photons(rng)), SelectionPair::from_angles(theta(rng), theta(rng), phase(rng)), coupling(rng));
        EXPECT_LE(b.f_tot, b.q_j * (1.0 + 1e-9));
    }
}

TEST(PhaseBreakdown, PeriodicInCoupling) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> theta(0.1, kPi - 0.1);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::uniform_real_distribution<double> coupling(0.0, 3.0);
    for (int k = 0; k < 100; ++k) {
        const SelectionPair pair = SelectionPair::from_angles(theta(rng), theta(rng), phase(rng));
        const double g = coupling(rng);
        const FisherBreakdown a = phase_fisher_breakdown(meter(3.0), pair, g);
        const FisherBreakdown b = phase_fisher_breakdown(meter(3.0), pair, g + kPi);
        EXPECT_NEAR(a.p_d, b.p_d, 1e-12);
        EXPECT_NEAR(a.pd_qd, b.pd_qd, 1e-9 * a.q_j);
        EXPECT_NEAR(a.pr_qr, b.pr_qr, 1e-9 * a.q_j);
        EXPECT_NEAR(a.f_p, b.f_p, 1e-9 * a.q_j);
    }
}

TEST(PhaseBreakdown, OrthogonalZeroCoupling) {
    const FisherBreakdown b = phase_fisher_breakdown(meter(4.0), equatorial(kPi), 0.0);
    EXPECT_TRUE(b.diagnostics.degenerate_success);
    EXPECT_TRUE(b.diagnostics.indeterminate_fp);
    EXPECT_TRUE(std::isnan(b.q_d));
    EXPECT_REL_NEAR(b.f_p, 80.0, 1e-6);
    EXPECT_REL_NEAR(b.f_tot, 80.0, 1e-6);
}

TEST(FigureSweep, FigureOne) {
    const std::vector<double> grid = quarter_period_grid(200);
    ASSERT_EQ(grid.size(), 200u);
    EXPECT_EQ(grid.front(), 0.0);
    EXPECT_DOUBLE_EQ(grid.back(), kPi / 2);
    const std::vector<FisherBreakdown> rows = figure_sweep(meter(4.0), equatorial(kPi), grid);
    for (const FisherBreakdown &b : rows) {
        EXPECT_REL_NEAR(b.f_tot, 80.0, 1e-6);
    }
    EXPECT_LT(rows[2].f_p, rows[1].f_p);
    EXPECT_GT(rows[2].pd_qd, rows[1].pd_qd);
    EXPECT_GT(rows[2].pr_qr, rows[1].pr_qr);
}

TEST(FigureSweep, FigureTwo) {
    std::vector<double> ns;
    for (int n = 1; n <= 30; ++n) {
        ns.push_back(n);
    }
    const std::vector<FisherBreakdown> rows = photon_number_sweep(ns, equatorial(kPi), kPi / 2);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const double n = ns[k];
        EXPECT_NEAR(rows[k].f_p, 0.0, 1e-12);
        EXPECT_REL_NEAR(rows[k].pd_qd + rows[k].pr_qr, 4.0 * n * n + 4.0 * n, 1e-9);
        if (n >= 2) {
            EXPECT_GT(rows[k].pd_qd, 4.0 * n);
            EXPECT_GT(rows[k].pr_qr, 4.0 * n);
        }
    }
}

TEST(SmallCouplingLimits, RegularAndOrthogonal) {
    const SmallCouplingLimits generic = phase_small_coupling_limits(meter(100.0), equatorial(kPi / 2));
    EXPECT_DOUBLE_EQ(generic.f_p_formula, 40000.0);
    EXPECT_REL_NEAR(generic.pd_qd_formula, 200.0, 1e-14);
    EXPECT_REL_NEAR(generic.pr_qr_formula, 200.0, 1e-14);
    EXPECT_REL_NEAR(generic.f_p_limit, generic.f_p_formula, 1e-12);
    EXPECT_REL_NEAR(generic.pd_qd_limit, generic.pd_qd_formula, 1e-12);

    const SmallCouplingLimits orth = phase_small_coupling_limits(meter(4.0), equatorial(kPi));
    EXPECT_DOUBLE_EQ(orth.f_p_formula, 64.0);
    EXPECT_REL_NEAR(orth.f_p_limit, 80.0, 1e-6);
    EXPECT_EQ(orth.pd_qd_limit, 0.0);
}

TEST(FockOracle, SymmetricMatchesClosedForms) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> theta(0.1, kPi - 0.1);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::uniform_real_distribution<double> coupling(0.0, 1.5);
    std::uniform_real_distribution<double> photons(0.5, 16.0);
    int checked = 0;
    while (checked < 20) {
        const CoherentMeter m = meter(photons(rng));
        const SelectionPair pair = SelectionPair::from_angles(theta(rng), theta(rng), phase(rng));
        const double g = coupling(rng);
        const FisherBreakdown closed = phase_fisher_breakdown(m, pair, g);
        if (closed.p_d < 1e-3 || closed.p_d > 1.0 - 1e-3) {
            continue;
        }
        const FisherBreakdown numeric = phase_fisher_breakdown_numeric(m, pair, g);
        EXPECT_REL_NEAR(numeric.p_d, closed.p_d, 1e-10);
        EXPECT_REL_NEAR(numeric.q_d, closed.q_d, 1e-6);
        EXPECT_REL_NEAR(numeric.q_r, closed.q_r, 1e-6);
        EXPECT_NEAR(numeric.f_p, closed.f_p, 1e-6 * std::max(closed.f_p, 1e-3 * closed.q_j));
        EXPECT_REL_NEAR(numeric.q_j, closed.q_j, 1e-6);
        ++checked;
    }
}

TEST(FockOracle, EquatorConservation) {
    for (double phi0 : {0.3, 1.7, -2.4}) {
        const FisherBreakdown b = phase_fisher_breakdown_numeric(meter(9.0), equatorial(phi0), 0.45);
        EXPECT_REL_NEAR(b.f_tot, 360.0, 1e-4);
    }
}

TEST(FockOracle, Asymmetric) {
    // Reference values from Fock-basis states with analytic g-derivatives.
    const SelectionPair pair = SelectionPair::from_angles(1.1, 0.7, 2.0);
    const FisherBreakdown b = phase_fisher_breakdown_numeric(meter(5.0, Coupling::Asymmetric), pair, 0.3);
    EXPECT_REL_NEAR(b.p_d, 0.6867217043423419, 1e-10);
    EXPECT_REL_NEAR(b.pd_qd, 11.262244808950594, 1e-6);
    EXPECT_REL_NEAR(b.pr_qr, 60.99764575467992, 1e-6);
    EXPECT_REL_NEAR(b.f_p, 3.835585865235597, 1e-6);
    EXPECT_REL_NEAR(b.q_j, joint_qfi(meter(5.0, Coupling::Asymmetric), pair.pre()), 1e-6);
    EXPECT_LE(b.f_tot, b.q_j * (1.0 + 1e-6));
}

TEST(CoherentMeter, Validation) {
    EXPECT_WF_ERROR(CoherentMeter::from_photon_number(-1.0), ErrorCode::InvalidInput);
    EXPECT_WF_ERROR(CoherentMeter(std::complex<double>(NAN, 0.0)), ErrorCode::InvalidInput);
    EXPECT_REL_NEAR(meter(7.0).photon_number(), 7.0, 1e-15);
}

}  // namespace
}  // namespace weakfisher
