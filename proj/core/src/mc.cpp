#include "sepvol/mc.hpp"

#include <future>
#include <vector>

namespace sepvol::mc {

McEstimate run_streams(std::uint64_t seed, std::int64_t samples,
                       const std::function<double(GaussianRng&)>& sample_fn,
                       int streams) {
  if (samples < 1) throw std::invalid_argument("run_streams: samples < 1");
  if (streams < 1) streams = 1;
  if (samples < streams) streams = static_cast<int>(samples);

  auto run_one = [&](int i) {
    GaussianRng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    std::int64_t n = samples / streams + (i < samples % streams ? 1 : 0);
    RunningStats stats;
    for (std::int64_t k = 0; k < n; ++k) stats.add(sample_fn(rng));
    return stats;
  };

  std::vector<std::future<RunningStats>> futs;
  futs.reserve(static_cast<std::size_t>(streams));
  for (int i = 0; i < streams; ++i)
    futs.push_back(std::async(std::launch::async | std::launch::deferred,
                              run_one, i));

  RunningStats total;
  for (auto& f : futs) total.merge(f.get());
  return total.estimate(seed);
}

}  // namespace sepvol::mc
