#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>

namespace sepvol::mc {

// Monte Carlo estimate with its standard error (sample sd / sqrt(samples)).
// Deterministic given (seed, samples).
struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;

  double upper3() const { return mean + 3.0 * stderr_; }
  double lower3() const { return mean - 3.0 * stderr_; }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for parallel stream i: results must not depend on how streams are
// scheduled, only on (seed, i).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Standard normal generator: mt19937_64 + Box-Muller.  Self-contained so the
// stream does not depend on the standard library's unspecified
// normal_distribution algorithm.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  double uniform() {  // (0, 1]
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925287 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Mean and standard error accumulated in one pass.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stderr_of_mean() const {
    return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

  McEstimate estimate(std::uint64_t seed) const {
    return McEstimate{mean(), stderr_of_mean(), n_, seed};
  }

  // Chan et al. pairwise combination; merging stream partials in a fixed
  // order keeps results independent of the parallelism degree.
  void merge(const RunningStats& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    double delta = o.mean_ - mean_;
    std::int64_t n = n_ + o.n_;
    m2_ +=
        o.m2_ + delta * delta * (static_cast<double>(n_) * static_cast<double>(o.n_) / static_cast<double>(n));
    mean_ += delta * static_cast<double>(o.n_) / static_cast<double>(n);
    n_ = n;
  }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Runs `samples` evaluations of sample_fn split over a fixed number of
// deterministic streams (seeded via derive_seed), merging partials in stream
// order.  The result depends only on (seed, samples), never on thread count.
McEstimate run_streams(std::uint64_t seed, std::int64_t samples,
                       const std::function<double(GaussianRng&)>& sample_fn,
                       int streams = 64);

}  // namespace sepvol::mc
