#include "bench.hpp"

#include <algorithm>
#include <stdexcept>

#include "maplines/oracle.hpp"
#include "maplines/scene.hpp"

namespace maplines::cli {

double median(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("median of an empty sample");
  const std::size_t mid = samples.size() / 2;
  std::nth_element(samples.begin(), samples.begin() + mid, samples.end());
  const double upper = samples[mid];
  if (samples.size() % 2 == 1) return upper;
  const double lower = *std::max_element(samples.begin(), samples.begin() + mid);
  return (lower + upper) / 2;
}

std::vector<double> time_runs(const std::function<void()>& fn, int runs, int warmup) {
  if (runs < 1) throw std::invalid_argument("runs must be at least 1");
  for (int i = 0; i < warmup; ++i) fn();
  std::vector<double> out;
  out.reserve(runs);
  for (int i = 0; i < runs; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    out.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return out;
}

BenchSample bench_extract(int size, int lines, const PipelineConfig& cfg, const BenchOptions& opts) {
  const scene::Scene s = scene::synth(scene::random_lines(size, size, lines, opts.seed));
  BenchSample out;
  out.size = size;
  out.lines = lines;
  out.ink = s.image.popcount();

  ExtractOptions eo;
  eo.parallel = opts.parallel;
  out.runs_ms = time_runs([&] { (void)extract(s.image, cfg, eo); }, opts.runs, opts.warmup);
  out.median_ms = median(out.runs_ms);

  if (opts.with_oracle) {
    const oracle::Grid g = oracle::from_image(s.image);
    const auto t = time_runs([&] { (void)oracle::extract(g, cfg); }, 1, 0);
    out.oracle_ms = t.front();
  }
  return out;
}

}  // namespace maplines::cli
