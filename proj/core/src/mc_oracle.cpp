#include "sepvol/mc_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "sepvol/nets.hpp"

namespace sepvol::mc_oracle {

mc::McEstimate mc_mean_width(
    const std::function<double(const Eigen::VectorXd&)>& support_fn, int dim,
    std::int64_t samples, std::uint64_t seed) {
  if (dim < 2) throw std::domain_error("mc_mean_width: dim must be >= 2");
  if (samples < 100)
    throw std::invalid_argument("mc_mean_width: samples must be >= 100");
  return mc::run_streams(seed, samples, [&](mc::GaussianRng& rng) {
    Eigen::VectorXd g(dim);
    for (int i = 0; i < dim; ++i) g(i) = rng.normal();
    g /= g.norm();
    return support_fn(g);
  });
}

VolumeEstimate mc_volume_ratio(
    const std::function<bool(const Eigen::VectorXd&)>& membership_fn,
    const std::vector<std::pair<double, double>>& bounding_box, int dim,
    std::int64_t samples, std::uint64_t seed) {
  if (dim < 1) throw std::domain_error("mc_volume_ratio: dim must be >= 1");
  if (static_cast<int>(bounding_box.size()) != dim)
    throw std::invalid_argument("mc_volume_ratio: box/dim mismatch");
  if (samples < 100)
    throw std::invalid_argument("mc_volume_ratio: samples must be >= 100");

  double box_vol = 1.0;
  for (const auto& [lo, hi] : bounding_box) {
    if (!(hi > lo)) throw std::invalid_argument("mc_volume_ratio: empty box");
    box_vol *= hi - lo;
  }

  // Uniform box sampling from the Gaussian stream's underlying uniforms.
  std::int64_t hits = 0;
  const int streams = 64;
  const int used = samples < streams ? static_cast<int>(samples) : streams;
  std::vector<std::int64_t> per_stream(static_cast<std::size_t>(used));
  for (int i = 0; i < used; ++i)
    per_stream[static_cast<std::size_t>(i)] =
        samples / used + (i < samples % used ? 1 : 0);
  for (int i = 0; i < used; ++i) {
    mc::GaussianRng rng(mc::derive_seed(seed, static_cast<std::uint64_t>(i)));
    Eigen::VectorXd x(dim);
    for (std::int64_t k = 0; k < per_stream[static_cast<std::size_t>(i)]; ++k) {
      for (int j = 0; j < dim; ++j) {
        const auto& [lo, hi] = bounding_box[static_cast<std::size_t>(j)];
        x(j) = lo + (hi - lo) * rng.uniform();
      }
      if (membership_fn(x)) ++hits;
    }
  }

  VolumeEstimate out;
  double n = static_cast<double>(samples);
  double p = static_cast<double>(hits) / n;
  out.acceptance = p;
  out.low_acceptance = p < 1e-3;
  double se_p;
  if (out.low_acceptance) {
    // Agresti-Coull adjustment keeps the error bar meaningful at tiny or
    // zero acceptance counts.
    double pt = (static_cast<double>(hits) + 2.0) / (n + 4.0);
    se_p = std::sqrt(pt * (1.0 - pt) / (n + 4.0)) + pt / n;
  } else {
    se_p = std::sqrt(p * (1.0 - p) / n);
  }
  out.estimate =
      mc::McEstimate{box_vol * p, box_vol * se_p, samples, seed};
  return out;
}

DiscreteMaxResult check_discrete_gaussian(
    const std::vector<Eigen::VectorXd>& points, std::int64_t samples,
    std::uint64_t seed) {
  if (points.empty())
    throw std::invalid_argument("check_discrete_gaussian: empty point set");
  if (samples < 1000)
    throw std::invalid_argument(
        "check_discrete_gaussian: samples must be >= 1000");
  const int dim = static_cast<int>(points.front().size());
  double radius = 0.0;
  Eigen::MatrixXd y(static_cast<Eigen::Index>(points.size()), dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim)
      throw std::invalid_argument("check_discrete_gaussian: ragged points");
    y.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    radius = std::max(radius, points[i].norm());
  }

  mc::McEstimate est = mc::run_streams(seed, samples, [&](mc::GaussianRng& rng) {
    Eigen::VectorXd x(dim);
    for (int j = 0; j < dim; ++j) x(j) = rng.normal();
    return (y * x).maxCoeff();
  });

  DiscreteMaxResult out;
  out.estimate = est;
  out.bound = radius > 0.0
                  ? nets::gaussian_max_bound(
                        radius, static_cast<long>(points.size()))
                  : 0.0;
  out.bound_ok = est.mean - 3.0 * est.stderr_ <= out.bound + 1e-12;
  return out;
}

}  // namespace sepvol::mc_oracle
