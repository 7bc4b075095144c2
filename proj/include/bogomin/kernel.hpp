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

#ifndef BOGOMIN_KERNEL_HPP
#define BOGOMIN_KERNEL_HPP

#include <Eigen/Dense>

#include "bogomin/grid.hpp"
#include "bogomin/potential.hpp"

namespace bogomin {

/// Dense matrix realizing the radial convolution g -> vhat * g on a grid,
/// with the absorbed measure on both sides.
///
/// For radial functions the 3D convolution reduces to
///
///   (vhat * g)(r) = (2pi)^-3 (2pi/r) int_0^inf s g(s) [W(r+s) - W(|r-s|)] ds,
///   W(t) = int_0^t u vhat(u) du,
///
/// which against the absorbed measure dmu(s) = (2pi)^-3 4pi s^2 ds reads
/// (vhat * g)(r) = int kappa(r,s) g(s) dmu(s) with the symmetric kernel
/// kappa(r,s) = [W(r+s) - W(|r-s|)] / (2 r s). The matrix is the Nystrom
/// discretization K[i][j] = kappa(p_i, p_j) w_j, so entries are nonnegative
/// and the w-weighted form <f, K g>_w is symmetric by construction.
///
/// W is precomputed by cumulative Gauss-Legendre quadrature on a refined
/// uniform grid over [0, 2 pmax] and evaluated by cubic Hermite interpolation
/// (the derivative W'(t) = t vhat(t) is exact at the table nodes). Where the
/// integration interval [|r-s|, r+s] is shorter than a few table cells the
/// difference W(r+s) - W(|r-s|) would cancel catastrophically; there kappa is
/// integrated directly over the short interval, which reproduces the small-r
/// limit kappa(0, s) = vhat(s).
///
/// Immutable after construction; apply() is pure.
class ConvolutionKernel {
  public:
    ConvolutionKernel(const RadialGrid& grid, const PotentialSpec& spec);

    /// Matrix-vector product: samples of vhat * g at the grid nodes.
    Eigen::ArrayXd apply(const Eigen::ArrayXd& samples) const;

    const Eigen::MatrixXd& matrix() const { return k_; }
    int n() const { return static_cast<int>(k_.rows()); }

  private:
    Eigen::MatrixXd k_;
};

}  // namespace bogomin

#endif
