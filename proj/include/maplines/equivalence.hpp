#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "maplines/extraction.hpp"
#include "maplines/oracle.hpp"
#include "maplines/recognition.hpp"

namespace maplines::oracle {

struct SweepReport {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> examples;  ///< first few mismatch descriptions

  void record(bool equal, const std::string& what);
  bool ok() const { return mismatches == 0; }
};

/// Compares oracle and packed results of `op_id` on `in`, recording one case.
void compare(SweepReport& report, const std::string& op_id, const OpInputs& in,
             const std::string& label);

/// Every primitive (neighbor, decompose, interior8, boolean ops, each
/// dilate/erode selector under both fan variants, masked forms, open/close,
/// end_points) on all 2^(w*h) images with 1 <= w, h <= max_size. Binary
/// operands are paired with a fixed family of masks.
SweepReport exhaustive_primitive_sweep(int max_size);

/// Uniform random image with per-pixel probability `density`.
BinaryImage random_image(int width, int height, double density, std::uint64_t seed);

/// extract and recognize on `count` random images of the given size.
SweepReport random_pipeline_sweep(int count, int width, int height, std::uint64_t seed,
                                  const PipelineConfig& pcfg = {},
                                  const RecognitionConfig& rcfg = {});

/// extract and recognize on `count` random synthetic line scenes.
SweepReport scene_pipeline_sweep(int count, int width, int height, std::uint64_t seed,
                                 const PipelineConfig& pcfg = {},
                                 const RecognitionConfig& rcfg = {});

}  // namespace maplines::oracle
