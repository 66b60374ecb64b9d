#include "cartansym/sampling.hpp"

#include <cmath>
#include <numbers>

#include "cartansym/error.hpp"

namespace cartansym {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::size_t kMaxRejections = 10000;

}  // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    : engine_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index)) {}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ 0x5851f42d4c957f2dULL) + index);
}

double SampleRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

double SampleRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> sample_point(const Chart& chart, std::uint64_t seed, std::uint64_t index, Stream stream) {
  SampleRng rng(seed, static_cast<std::uint64_t>(stream), index);
  std::vector<double> x(chart.dim());
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    for (std::size_t i = 0; i < chart.dim(); ++i) x[i] = rng.uniform(chart.domain_box[i].lo, chart.domain_box[i].hi);
    if (chart.admits(x)) return x;
  }
  throw ValidationError("could not sample a point outside the excluded regions of the chart");
}

std::vector<std::vector<double>> sample_points(const Chart& chart, std::size_t count, std::uint64_t seed,
                                               Stream stream) {
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(sample_point(chart, seed, i, stream));
  return pts;
}

}  // namespace cartansym
