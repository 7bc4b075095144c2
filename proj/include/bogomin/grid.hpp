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

#ifndef BOGOMIN_GRID_HPP
#define BOGOMIN_GRID_HPP

#include <Eigen/Dense>

namespace bogomin {

enum class GridScheme { Uniform, Clustered };

/// Radial momentum grid realizing the absorbed measure
/// (2pi)^-3 * 4pi p^2 dp on [0, pmax].
///
/// Nodes are strictly positive and ascend to pmax. Weights are strictly
/// positive and integrate constants exactly: sum(w) = (2pi)^-3 (4pi/3) pmax^3.
/// The weights realize a composite Simpson rule on p^2 f(p) over [0, pmax]
/// (fourth order for smooth f); the p = 0 endpoint carries no weight since
/// p^2 f vanishes there.
struct RadialGrid {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
    double pmax = 0.0;
    GridScheme scheme = GridScheme::Uniform;
    double pivot = 0.0;  // only meaningful for the clustered scheme

    int n() const { return static_cast<int>(nodes.size()); }
};

/// Build a grid with n nodes. The clustered scheme places half the nodes
/// uniformly below `pivot` to resolve small-p structure.
RadialGrid build_grid(int n, double pmax, GridScheme scheme = GridScheme::Uniform,
                      double pivot = 0.0);

/// Quadrature of per-node samples against the absorbed measure.
double integrate(const RadialGrid& grid, const Eigen::ArrayXd& samples);

/// Volume of the momentum ball |p| <= radius under the absorbed measure.
double ball_volume(double radius);

}  // namespace bogomin

#endif
