#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "sepvol/mc.hpp"

namespace sepvol::mc_oracle {

// Sphere average of a support function over S^{dim-1}, sampled by
// normalizing Gaussian vectors.
mc::McEstimate mc_mean_width(
    const std::function<double(const Eigen::VectorXd&)>& support_fn, int dim,
    std::int64_t samples, std::uint64_t seed);

struct VolumeEstimate {
  mc::McEstimate estimate;   // volume, not the acceptance ratio
  double acceptance = 0.0;
  bool low_acceptance = false;  // acceptance < 1e-3: error bars were widened
};

// Rejection-sampling volume of {x in box : membership(x)}.
VolumeEstimate mc_volume_ratio(
    const std::function<bool(const Eigen::VectorXd&)>& membership_fn,
    const std::vector<std::pair<double, double>>& bounding_box, int dim,
    std::int64_t samples, std::uint64_t seed);

struct DiscreteMaxResult {
  mc::McEstimate estimate;  // E max_{y in F} <y, x>, x standard Gaussian
  double bound = 0.0;       // R sqrt(2 log #F)
  bool bound_ok = false;    // estimate - 3 stderr <= bound
};

// Checks the discrete Gaussian maximum bound on a finite point set.
DiscreteMaxResult check_discrete_gaussian(
    const std::vector<Eigen::VectorXd>& points, std::int64_t samples,
    std::uint64_t seed);

}  // namespace sepvol::mc_oracle
