#pragma once

// Naive per-pixel reference implementations. Everything here is written
// from the set formulas with nested loops over an unpacked grid; it shares
// no code with the packed kernels beyond BinaryImage get/set for
// conversion.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "maplines/binary_image.hpp"
#include "maplines/extraction.hpp"
#include "maplines/morphology.hpp"
#include "maplines/recognition.hpp"

namespace maplines::oracle {

/// One byte per pixel; reads outside the grid return 0.
struct Grid {
  int w = 0;
  int h = 0;
  std::vector<std::uint8_t> px;

  Grid(int width, int height) : w(width), h(height), px(static_cast<std::size_t>(width) * height, 0) {}

  bool at(int x, int y) const {
    if (x < 0 || y < 0 || x >= w || y >= h) return false;
    return px[static_cast<std::size_t>(y) * w + x] != 0;
  }
  void put(int x, int y, bool v) { px[static_cast<std::size_t>(y) * w + x] = v ? 1 : 0; }
};

Grid from_image(const BinaryImage& img);
BinaryImage to_image(const Grid& g);

// Primitives, by direct per-pixel evaluation.
Grid neighbor(const Grid& f, int d);
Grid complement(const Grid& f);
Grid unite(const Grid& f, const Grid& g);
Grid intersect(const Grid& f, const Grid& g);
Grid difference(const Grid& f, const Grid& g);
std::vector<Grid> decompose(const Grid& b);
Grid merge(const std::vector<Grid>& planes);
Grid interior8(const Grid& f);
Grid dilate(const Grid& f, Selector s);
Grid erode(const Grid& f, Selector s, FanErosion v);
Grid masked_dilate(const Grid& f, const Grid& g, Selector s, int k);
Grid masked_erode(const Grid& f, const Grid& g, Selector s, FanErosion v);
/// mask_kind: none, self, or image (then `mask` is used).
Grid open_close(MorphOp which, const Grid& f, Selector s, int k, MorphMask::Kind mask_kind,
                const Grid* mask, FanErosion v, OpenSemantics sem);
Grid end_points(const Grid& f, int d, FanErosion v);

// Line extraction and recognition.
Grid edge(const Grid& plane, int d, const PipelineConfig& cfg);
Grid short_segments(const Grid& edge_img, const Grid& plane, int d, const PipelineConfig& cfg);
Grid middle_segments(const Grid& short_img, const Grid& b, int d, const PipelineConfig& cfg);
Grid long_solid(const Grid& middle_img, int d, const PipelineConfig& cfg);
Grid long_stippled(const Grid& middle_img, int d, const PipelineConfig& cfg);

struct Extracted {
  Grid solid;
  Grid stippled_segments;
};
Extracted extract(const Grid& b, const PipelineConfig& cfg);

Grid stippled_lines(const Grid& longw, const RecognitionConfig& cfg);
Grid track_lines(const Grid& solid, const Grid& stippled, const RecognitionConfig& cfg);
Grid path_lines(const Grid& stippled, const Grid& track, const RecognitionConfig& cfg);

struct Recognized {
  Grid solid, stippled, track, path;
};
Recognized recognize(const Grid& b, const PipelineConfig& pcfg, const RecognitionConfig& rcfg);

/// Operands and parameters for oracle_eval / packed_eval. Which fields an
/// operation reads depends on the operation.
struct OpInputs {
  std::vector<BinaryImage> images;
  Selector selector = Selector::n8();
  Direction direction{};
  int k = 1;
  FanErosion variant = FanErosion::union_of_shifts;
  MorphOp which = MorphOp::open;
  MorphMask::Kind mask = MorphMask::Kind::none;  ///< image mask = images[1]
  OpenSemantics semantics = OpenSemantics::ek_dk;
  PipelineConfig pipeline{};
  RecognitionConfig recognition{};
};

/// Identifiers accepted by oracle_eval and packed_eval.
const std::vector<std::string>& registered_ops();

/// Evaluates `op_id` with the reference implementation. Multi-output
/// operations (decompose, extract, recognize) return several images.
/// Throws std::invalid_argument for an unknown op_id or missing operands.
std::vector<BinaryImage> oracle_eval(std::string_view op_id, const OpInputs& in);

/// Same operation through the packed implementation.
std::vector<BinaryImage> packed_eval(std::string_view op_id, const OpInputs& in);

}  // namespace maplines::oracle
