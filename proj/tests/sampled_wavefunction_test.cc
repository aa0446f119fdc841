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

#include "weakfisher/sampled_wavefunction.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "test_util.h"

namespace weakfisher {
namespace {

constexpr double kPi = std::numbers::pi;

std::string csv_error(const std::string &text) {
    std::istringstream in(text);
    try {
        read_wavefunction_csv(in);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
        return e.what();
    }
    ADD_FAILURE() << "expected InvalidInput";
    return "";
}

std::string gaussian_csv_rows(std::size_t points, double half_width) {
    std::ostringstream out;
    out.precision(17);
    const double step = 2.0 * half_width / static_cast<double>(points - 1);
    const double c = std::pow(2.0 / kPi, 0.25);
    for (std::size_t k = 0; k < points; ++k) {
        const double p = -half_width + step * static_cast<double>(k);
        out << p << "," << c * std::exp(-p * p) << ",0\n";
    }
    return out.str();
}

TEST(MomentumGrid, Symmetric) {
    const MomentumGrid grid = MomentumGrid::symmetric(2.0, 5, 1.0);
    EXPECT_DOUBLE_EQ(grid.p_min, -1.0);
    EXPECT_DOUBLE_EQ(grid.step, 1.0);
    EXPECT_DOUBLE_EQ(grid.p_max(), 3.0);
    EXPECT_WF_ERROR(MomentumGrid::symmetric(0.0, 5), ErrorCode::InvalidInput);
}

TEST(Quadrature, TrapezoidGaussian) {
    const MomentumGrid grid = MomentumGrid::symmetric(8.0, 801);
    std::vector<double> v(grid.points);
    for (std::size_t k = 0; k < grid.points; ++k) {
        v[k] = std::exp(-grid.at(k) * grid.at(k));
    }
    EXPECT_NEAR(trapezoid(v, grid.step), std::sqrt(kPi), 1e-13);
}

TEST(Quadrature, FiniteDifferenceIsFourthOrder) {
    auto max_error = [](std::size_t points) {
        const MomentumGrid grid = MomentumGrid::symmetric(3.0, points);
        Amplitudes v(points);
        for (std::size_t k = 0; k < points; ++k) {
            v[k] = std::sin(grid.at(k));
        }
        const Amplitudes d = finite_difference_derivative(v, grid.step);
        double worst = 0.0;
        for (std::size_t k = 0; k < points; ++k) {
            worst = std::max(worst, std::abs(d[k] - std::cos(grid.at(k))));
        }
        return worst;
    };
    const double coarse = max_error(101);
    const double fine = max_error(201);
    EXPECT_LT(fine, 1e-6);
    EXPECT_GT(coarse / fine, 12.0);
}

TEST(ShiftSamples, BandLimitedGaussian) {
    const MomentumGrid grid = MomentumGrid::symmetric(12.0, 1024);
    Amplitudes v(grid.points);
    for (std::size_t k = 0; k < grid.points; ++k) {
        v[k] = std::exp(-grid.at(k) * grid.at(k));
    }
    const double offset = 0.3712;
    const Amplitudes shifted = shift_samples(v, grid.step, offset);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.points; ++k) {
        const double x = grid.at(k) + offset;
        worst = std::max(worst, std::abs(shifted[k] - std::exp(-x * x)));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(SampledWavefunction, ValidatesNormAndDecay) {
    const MomentumGrid grid = MomentumGrid::symmetric(8.0, 401);
    Amplitudes v(grid.points);
    for (std::size_t k = 0; k < grid.points; ++k) {
        v[k] = 2.0 * std::exp(-grid.at(k) * grid.at(k));
    }
    EXPECT_WF_ERROR(SampledWavefunction(grid, v), ErrorCode::InvalidInput);

    const MomentumGrid narrow = MomentumGrid::symmetric(1.0, 401);
    Amplitudes flat(narrow.points, 1.0 / std::sqrt(2.0));
    EXPECT_WF_ERROR(SampledWavefunction(narrow, flat), ErrorCode::InvalidInput);
}

TEST(SampledWavefunction, Builders) {
    for (const SampledWavefunction &f :
         {gaussian_wavefunction(0.7), hermite_wavefunction(1.3, 0.5), chirped_gaussian_wavefunction(1.0, 0.4, 2.0)}) {
        std::vector<double> density(f.grid().points);
        for (std::size_t k = 0; k < density.size(); ++k) {
            density[k] = std::norm(f.amplitudes()[k]);
        }
        EXPECT_NEAR(trapezoid(density, f.grid().step), 1.0, 1e-10);
    }
    EXPECT_TRUE(gaussian_wavefunction(1.0).has_analytic_derivative());
    EXPECT_TRUE(hermite_wavefunction(1.0).has_analytic_derivative());
    EXPECT_FALSE(hermite_wavefunction(1.0).without_analytic_derivative().has_analytic_derivative());
    EXPECT_EQ(gaussian_wavefunction(1.0, 0.0, 1001).decimated().grid().points, 501u);
}

TEST(WavefunctionCsv, RoundTrip) {
    const SampledWavefunction f = chirped_gaussian_wavefunction(1.0, 0.2, 1.5, 0.0, 512);
    std::stringstream buffer;
    write_wavefunction_csv(buffer, f);
    const SampledWavefunction g = read_wavefunction_csv(buffer);
    ASSERT_EQ(g.grid().points, f.grid().points);
    EXPECT_NEAR(g.grid().step, f.grid().step, 1e-14);
    for (std::size_t k = 0; k < f.grid().points; ++k) {
        EXPECT_EQ(g.amplitudes()[k], f.amplitudes()[k]);
    }
}

TEST(WavefunctionCsv, CommentsAndBlankLines) {
    std::istringstream in("# meter\n\np,re,im\n# body\n" + gaussian_csv_rows(401, 8.0));
    EXPECT_EQ(read_wavefunction_csv(in).grid().points, 401u);
}

TEST(WavefunctionCsv, Errors) {
    EXPECT_NE(csv_error("x,y,z\n1,0,0\n").find("line 1"), std::string::npos);
    EXPECT_NE(csv_error("").find("missing header"), std::string::npos);
    EXPECT_NE(csv_error("p,re,im\n0,1,0\n0.1,abc,0\n").find("line 3"), std::string::npos);
    EXPECT_NE(csv_error("p,re,im\n0,1,0\n0.1,1\n").find("line 3"), std::string::npos);
    EXPECT_NE(csv_error("p,re,im\n0,0,0\n0.1,0,0\n0.25,0,0\n").find("line 4"), std::string::npos);
    EXPECT_NE(csv_error("p,re,im\n0,0,0\n-0.1,0,0\n").find("line 3"), std::string::npos);
    EXPECT_NE(csv_error("p,re,im\n0,0,0\n0.1,0,0\n0.2,0,0\n").find("at least 5"), std::string::npos);
    EXPECT_WF_ERROR(load_wavefunction_csv("/nonexistent/meter.csv"), ErrorCode::InvalidInput);
}

}  // namespace
}  // namespace weakfisher
