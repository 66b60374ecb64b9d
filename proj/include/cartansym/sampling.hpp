#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cartansym/expr.hpp"

namespace cartansym {

/// Deterministic random stream keyed by (seed, stream, index). Two streams with
/// the same key produce the same numbers on every platform: only the raw
/// mt19937_64 output is used, never the implementation-defined distributions.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Independent seed for sub-sampling under item `index` (e.g. the frames at
/// base point `index`).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Stream identifiers, so that unrelated draws never share a sequence.
enum class Stream : std::uint64_t {
  BasePoints = 1,
  Frames = 2,
  Velocities = 3,
  Validation = 4,
};

/// Base point number `index` for the given seed: uniform in the chart box,
/// rejected while inside an excluded region. Throws ValidationError if no
/// admissible point is found.
std::vector<double> sample_point(const Chart& chart, std::uint64_t seed, std::uint64_t index,
                                 Stream stream = Stream::BasePoints);

std::vector<std::vector<double>> sample_points(const Chart& chart, std::size_t count, std::uint64_t seed,
                                               Stream stream = Stream::BasePoints);

}  // namespace cartansym
