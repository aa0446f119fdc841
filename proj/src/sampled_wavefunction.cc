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

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "weakfisher/errors.h"

namespace weakfisher {
namespace {

constexpr double kNormTolerance = 1e-8;
constexpr double kDecayTolerance = 1e-6;

// The FFTW planner is not reentrant.
std::mutex &fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

double peak_magnitude(const Amplitudes &v) {
    double peak = 0.0;
    for (const auto &a : v) {
        peak = std::max(peak, std::abs(a));
    }
    return peak;
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t m = 1;
    while (m < n) {
        m <<= 1;
    }
    return m;
}

void check_decay(const Amplitudes &v, const char *what) {
    const double peak = peak_magnitude(v);
    const double ends = std::max(std::abs(v.front()), std::abs(v.back()));
    if (ends > kDecayTolerance * peak) {
        std::ostringstream msg;
        msg << what << " does not decay at the grid ends (|end| / peak = " << ends / peak << ")";
        throw Error(ErrorCode::InvalidInput, msg.str());
    }
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double parse_field(const std::string &text, std::size_t line, const char *column) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line) + ": cannot parse " + column + " value '" +
                                                 text + "'");
    }
    return value;
}

}  // namespace

MomentumGrid MomentumGrid::symmetric(double half_width, std::size_t points, double center) {
    if (!(half_width > 0.0) || points < 5) {
        throw Error(ErrorCode::InvalidInput, "momentum grid needs a positive half width and at least 5 points");
    }
    return MomentumGrid{
        .p_min = center - half_width,
        .step = 2.0 * half_width / static_cast<double>(points - 1),
        .points = points,
    };
}

double trapezoid(const std::vector<double> &values, double step) {
    if (values.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    sum -= 0.5 * (values.front() + values.back());
    return sum * step;
}

std::complex<double> trapezoid(const Amplitudes &values, double step) {
    if (values.empty()) {
        return 0.0;
    }
    std::complex<double> sum = 0.0;
    for (const auto &v : values) {
        sum += v;
    }
    sum -= 0.5 * (values.front() + values.back());
    return sum * step;
}

Amplitudes finite_difference_derivative(const Amplitudes &f, double step) {
    const std::size_t n = f.size();
    if (n < 5) {
        throw Error(ErrorCode::InvalidInput, "finite differences need at least 5 samples");
    }
    Amplitudes d(n);
    const double inv = 1.0 / (12.0 * step);
    for (std::size_t k = 2; k + 2 < n; ++k) {
        d[k] = (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) * inv;
    }
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * inv;
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * inv;
    return d;
}

Amplitudes shift_samples(const Amplitudes &values, double step, double offset) {
    const std::size_t n = values.size();
    if (offset == 0.0 || n == 0) {
        return values;
    }
    const std::size_t m = next_power_of_two(2 * n);
    fftw_complex *buffer = fftw_alloc_complex(m);
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        forward = fftw_plan_dft_1d(static_cast<int>(m), buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(static_cast<int>(m), buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (std::size_t k = 0; k < m; ++k) {
        buffer[k][0] = k < n ? values[k].real() : 0.0;
        buffer[k][1] = k < n ? values[k].imag() : 0.0;
    }
    fftw_execute(forward);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(m) * step);
    for (std::size_t k = 0; k < m; ++k) {
        const double index = k < m / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(m);
        const std::complex<double> ramp = std::polar(1.0 / static_cast<double>(m), index * dk * offset);
        const std::complex<double> c(buffer[k][0], buffer[k][1]);
        const std::complex<double> shifted = c * ramp;
        buffer[k][0] = shifted.real();
        buffer[k][1] = shifted.imag();
    }
    fftw_execute(backward);
    Amplitudes out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = {buffer[k][0], buffer[k][1]};
    }
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    fftw_free(buffer);
    return out;
}

SampledWavefunction::SampledWavefunction(Unchecked, MomentumGrid grid, Amplitudes amplitudes,
                                         std::optional<Amplitudes> derivative)
    : grid_(grid), amplitudes_(std::move(amplitudes)), analytic_derivative_(derivative.has_value()) {
    derivative_ = derivative ? std::move(*derivative) : finite_difference_derivative(amplitudes_, grid_.step);
}

SampledWavefunction::SampledWavefunction(MomentumGrid grid, Amplitudes amplitudes, std::optional<Amplitudes> derivative)
    : grid_(grid), analytic_derivative_(derivative.has_value()) {
    if (grid.points < 5 || amplitudes.size() != grid.points) {
        throw Error(ErrorCode::InvalidInput, "wavefunction needs at least 5 samples matching the grid");
    }
    if (!(grid.step > 0.0) || !std::isfinite(grid.step) || !std::isfinite(grid.p_min)) {
        throw Error(ErrorCode::InvalidInput, "grid step must be positive and finite");
    }
    if (derivative && derivative->size() != grid.points) {
        throw Error(ErrorCode::InvalidInput, "derivative samples do not match the grid");
    }
    amplitudes_ = std::move(amplitudes);
    derivative_ = derivative ? std::move(*derivative) : finite_difference_derivative(amplitudes_, grid_.step);

    std::vector<double> density(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), density.begin(), [](auto a) { return std::norm(a); });
    const double norm = trapezoid(density, grid_.step);
    if (std::abs(norm - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "wavefunction is not normalized (trapezoid norm " << norm << ")";
        throw Error(ErrorCode::InvalidInput, msg.str());
    }
    check_decay(amplitudes_, "|f|");
    check_decay(finite_difference_derivative(amplitudes_, grid_.step), "|f'|");
}

SampledWavefunction SampledWavefunction::decimated() const {
    MomentumGrid coarse{.p_min = grid_.p_min, .step = 2.0 * grid_.step, .points = (grid_.points + 1) / 2};
    Amplitudes f(coarse.points);
    for (std::size_t k = 0; k < coarse.points; ++k) {
        f[k] = amplitudes_[2 * k];
    }
    std::optional<Amplitudes> d;
    if (analytic_derivative_) {
        d.emplace(coarse.points);
        for (std::size_t k = 0; k < coarse.points; ++k) {
            (*d)[k] = derivative_[2 * k];
        }
    }
    return SampledWavefunction(Unchecked{}, coarse, std::move(f), std::move(d));
}

SampledWavefunction SampledWavefunction::without_analytic_derivative() const {
    return SampledWavefunction(Unchecked{}, grid_, amplitudes_, std::nullopt);
}

SampledWavefunction read_wavefunction_csv(std::istream &in) {
    std::string line;
    std::size_t line_number = 0;
    bool seen_header = false;
    std::vector<double> p;
    Amplitudes f;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        if (!seen_header) {
            if (content != "p,re,im") {
                throw Error(ErrorCode::InvalidInput,
                            "line " + std::to_string(line_number) + ": expected header 'p,re,im', got '" + content + "'");
            }
            seen_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream row(content);
        std::string field;
        while (std::getline(row, field, ',')) {
            fields.push_back(trim(field));
        }
        if (fields.size() != 3) {
            throw Error(ErrorCode::InvalidInput,
                        "line " + std::to_string(line_number) + ": expected 3 columns, got " + std::to_string(fields.size()));
        }
        const double pk = parse_field(fields[0], line_number, "p");
        const double re = parse_field(fields[1], line_number, "re");
        const double im = parse_field(fields[2], line_number, "im");
        if (p.size() >= 2) {
            const double expected = p[1] - p[0];
            const double actual = pk - p.back();
            if (std::abs(actual - expected) > 1e-6 * std::abs(expected)) {
                throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_number) +
                                                         ": grid is not uniform (spacing " + std::to_string(actual) +
                                                         " vs " + std::to_string(expected) + ")");
            }
        } else if (p.size() == 1 && !(pk > p[0])) {
            throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_number) + ": p must increase");
        }
        p.push_back(pk);
        f.emplace_back(re, im);
    }
    if (!seen_header) {
        throw Error(ErrorCode::InvalidInput, "missing header 'p,re,im'");
    }
    if (p.size() < 5) {
        throw Error(ErrorCode::InvalidInput, "need at least 5 data rows, got " + std::to_string(p.size()));
    }
    MomentumGrid grid{
        .p_min = p.front(),
        .step = (p.back() - p.front()) / static_cast<double>(p.size() - 1),
        .points = p.size(),
    };
    return SampledWavefunction(grid, std::move(f));
}

SampledWavefunction load_wavefunction_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidInput, "cannot open wavefunction file '" + path + "'");
    }
    return read_wavefunction_csv(in);
}

void write_wavefunction_csv(std::ostream &out, const SampledWavefunction &f) {
    const auto precision = out.precision(17);
    out << "p,re,im\n";
    for (std::size_t k = 0; k < f.grid().points; ++k) {
        out << f.grid().at(k) << ',' << f.amplitudes()[k].real() << ',' << f.amplitudes()[k].imag() << '\n';
    }
    out.precision(precision);
}

SampledWavefunction gaussian_wavefunction(double sigma, double max_shift, std::size_t points) {
    return chirped_gaussian_wavefunction(sigma, 0.0, 0.0, max_shift, points);
}

SampledWavefunction hermite_wavefunction(double sigma, double max_shift, std::size_t points) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorCode::InvalidInput, "sigma must be positive and finite");
    }
    const double a = sigma * sigma;
    const double b = 2.0 * a;
    const double norm = std::sqrt(2.0 * std::pow(b, 1.5) / std::sqrt(std::numbers::pi));
    const MomentumGrid grid = MomentumGrid::symmetric(12.0 / (2.0 * sigma) + std::abs(max_shift), points);
    Amplitudes f(points);
    Amplitudes d(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double p = grid.at(k);
        const double envelope = norm * std::exp(-a * p * p);
        f[k] = p * envelope;
        d[k] = (1.0 - 2.0 * a * p * p) * envelope;
    }
    return SampledWavefunction(grid, std::move(f), std::move(d));
}

SampledWavefunction chirped_gaussian_wavefunction(double sigma, double center, double chirp, double max_shift,
                                                  std::size_t points) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorCode::InvalidInput, "sigma must be positive and finite");
    }
    const double a = sigma * sigma;
    const double norm = std::pow(2.0 * a / std::numbers::pi, 0.25);
    const MomentumGrid grid = MomentumGrid::symmetric(10.0 / (2.0 * sigma) + std::abs(max_shift), points, center);
    Amplitudes f(points);
    Amplitudes d(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double p = grid.at(k);
        const double x = p - center;
        f[k] = std::polar(norm * std::exp(-a * x * x), chirp * p);
        d[k] = std::complex<double>(-2.0 * a * x, chirp) * f[k];
    }
    return SampledWavefunction(grid, std::move(f), std::move(d));
}

}  // namespace weakfisher
