#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "maplines/extraction.hpp"

namespace maplines::cli {

/// Middle element; the mean of the two middle elements for even counts.
/// Throws std::invalid_argument on an empty sample.
double median(std::vector<double> samples);

/// Wall time of `fn` in milliseconds over `runs` calls, after `warmup`
/// discarded calls.
std::vector<double> time_runs(const std::function<void()>& fn, int runs, int warmup = 1);

struct BenchSample {
  int size = 0;
  int lines = 0;
  std::size_t ink = 0;  ///< foreground pixels of the generated image
  std::vector<double> runs_ms;
  double median_ms = 0;
  std::optional<double> oracle_ms;  ///< single oracle run, when requested
};

struct BenchOptions {
  int runs = 5;
  int warmup = 1;
  bool parallel = false;  ///< serial by default so timings are comparable
  bool with_oracle = false;
  std::uint64_t seed = 1;
};

/// Times extract() on a size x size image of `lines` random solid lines.
BenchSample bench_extract(int size, int lines, const PipelineConfig& cfg, const BenchOptions& opts);

}  // namespace maplines::cli
