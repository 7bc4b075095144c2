// Copyright 2026 The bogomin Authors
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

#include "bogomin/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bogomin {

namespace {

// 7-point Gauss-Legendre on [-1, 1].
constexpr double kGl7X[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                             0.0,
                             0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr double kGl7W[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                             0.4179591836734694,
                             0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

// Cumulative table of W(t) = int_0^t u vhat(u) du on a uniform grid.
struct WTable {
    double h = 0.0;
    std::vector<double> value;  // W at k*h
    std::vector<double> deriv;  // W'(k*h) = k*h*vhat(k*h), exact

    double eval(double t) const {
        if (t <= 0.0) return 0.0;
        const double tmax = h * static_cast<double>(value.size() - 1);
        if (t >= tmax) return value.back();
        const double u = t / h;
        const std::size_t k = std::min(static_cast<std::size_t>(u), value.size() - 2);
        const double x = u - static_cast<double>(k);
        const double x2 = x * x, x3 = x2 * x;
        return (2.0 * x3 - 3.0 * x2 + 1.0) * value[k] + (x3 - 2.0 * x2 + x) * h * deriv[k] +
               (-2.0 * x3 + 3.0 * x2) * value[k + 1] + (x3 - x2) * h * deriv[k + 1];
    }
};

WTable build_w_table(const PotentialSpec& spec, double tmax, int min_intervals) {
    WTable w;
    const int m = std::max(4096, min_intervals);
    w.h = tmax / m;
    w.value.resize(static_cast<std::size_t>(m) + 1);
    w.deriv.resize(static_cast<std::size_t>(m) + 1);
    w.value[0] = 0.0;
    w.deriv[0] = 0.0;
    double acc = 0.0;
    for (int k = 1; k <= m; ++k) {
        const double a = w.h * (k - 1), b = w.h * k;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double seg = 0.0;
        for (int q = 0; q < 7; ++q) {
            const double u = mid + half * kGl7X[q];
            seg += kGl7W[q] * u * spec.vhat(u);
        }
        acc += half * seg;
        w.value[static_cast<std::size_t>(k)] = acc;
        w.deriv[static_cast<std::size_t>(k)] = b * spec.vhat(b);
    }
    return w;
}

// int_{lo}^{hi} u vhat(u) du by direct Gauss-Legendre; used where the table
// difference would cancel.
double short_interval(const PotentialSpec& spec, double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int q = 0; q < 7; ++q) {
        const double u = mid + half * kGl7X[q];
        acc += kGl7W[q] * u * spec.vhat(u);
    }
    return half * acc;
}

}  // namespace

ConvolutionKernel::ConvolutionKernel(const RadialGrid& grid, const PotentialSpec& spec) {
    const int n = grid.n();
    const WTable w = build_w_table(spec, 2.0 * grid.pmax, 8 * n);
    const double short_cut = 4.0 * w.h;

    k_.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const double r = grid.nodes[i];
        for (int j = i; j < n; ++j) {
            const double s = grid.nodes[j];
            const double lo = std::abs(r - s), hi = r + s;
            double d;  // W(r+s) - W(|r-s|)
            if (hi - lo < short_cut)
                d = short_interval(spec, lo, hi);
            else
                d = w.eval(hi) - w.eval(lo);
            const double kappa = std::max(0.0, d) / (2.0 * r * s);
            k_(i, j) = kappa * grid.weights[j];
            k_(j, i) = kappa * grid.weights[i];
        }
    }
}

Eigen::ArrayXd ConvolutionKernel::apply(const Eigen::ArrayXd& samples) const {
    if (samples.size() != k_.rows())
        throw std::invalid_argument("apply: sample length does not match kernel");
    return (k_ * samples.matrix()).array();
}

}  // namespace bogomin
