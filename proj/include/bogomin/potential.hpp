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

#ifndef BOGOMIN_POTENTIAL_HPP
#define BOGOMIN_POTENTIAL_HPP

#include <string>
#include <vector>

namespace bogomin {

enum class PotentialFamily { Gaussian, Exponential, Tabulated };

/// Outcome of one admissibility condition. NotVerified marks conditions the
/// code cannot decide (positivity of V in position space for tabulated data).
enum class CheckStatus { Pass, Fail, NotVerified };

struct AdmissibilityCheck {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct AdmissibilityReport {
    std::vector<AdmissibilityCheck> checks;
    // True when no check failed (NotVerified does not count as failure).
    bool admissible() const;
};

/// A radial interaction potential given through its Fourier transform vhat.
/// All integrals use the absorbed measure (2pi)^-3 * 4pi p^2 dp, so that
/// integral(vhat) equals V(0).
///
/// Immutable after construction; all evaluation is const and thread-safe.
class PotentialSpec {
  public:
    // vhat(p) = amplitude * exp(-width^2 p^2 / 2)
    static PotentialSpec gaussian(double amplitude, double width);
    // vhat(p) = amplitude * exp(-rate * p)
    static PotentialSpec exponential(double amplitude, double rate);
    // Piecewise-linear vhat through (p, value) pairs, zero beyond the last
    // node. Nodes must ascend from 0 and values must be nonnegative.
    static PotentialSpec tabulated(std::vector<double> nodes, std::vector<double> values);
    // Two-column text file: p vhat(p), ascending p.
    static PotentialSpec tabulated_from_file(const std::string& path);

    /// Evaluate vhat at momentum magnitude p >= 0.
    double vhat(double p) const;

    double vhat0() const { return vhat0_; }
    /// V(0) = integral of vhat under the absorbed measure.
    double v0() const { return v0_; }
    /// L2 norm of vhat under the absorbed measure.
    double l2norm() const { return l2norm_; }

    PotentialFamily family() const { return family_; }
    double amplitude() const { return amplitude_; }
    /// Gaussian width or exponential rate; 0 for tabulated.
    double shape_param() const { return shape_; }
    /// Momentum beyond which vhat is negligible; used for sampling sweeps.
    double support_radius() const;

    std::string family_name() const;

  private:
    PotentialSpec() = default;

    PotentialFamily family_ = PotentialFamily::Gaussian;
    double amplitude_ = 0.0;
    double shape_ = 0.0;
    std::vector<double> table_p_, table_v_;
    double vhat0_ = 0.0, v0_ = 0.0, l2norm_ = 0.0;
};

/// Report-valued admissibility checks: vhat >= 0, vhat <= vhat(0),
/// finite L1/L2 norms, and positivity of V where decidable.
AdmissibilityReport check_admissible(const PotentialSpec& spec);

}  // namespace bogomin

#endif
