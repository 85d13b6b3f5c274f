#pragma once

#include <string_view>

#include "maplines/binary_image.hpp"
#include "maplines/extraction.hpp"

namespace maplines {

/// Input of the stippled-line class. long_stippled_minus_solid drops the
/// segments that already pass the solid gate, leaving lines that only
/// survive through dash bridging; long_stippled uses the raw merge, which
/// also contains every solid line and so closes every track corridor.
enum class StippleSource { long_stippled_minus_solid, long_stippled };

std::string_view to_string(StippleSource v);

/// Iteration counts of the map-class operators. Defaults are the
/// published exponents.
struct RecognitionConfig {
  StippleSource stipple_source = StippleSource::long_stippled_minus_solid;
  int stipple_close = 2;
  int track_close = 2;
  int track_dilate = 2;
  int path_guard_dilate = 3;

  /// Throws std::invalid_argument if any count is below 1.
  void validate() const;

  bool operator==(const RecognitionConfig&) const = default;
};

struct RecognitionResult {
  BinaryImage solid;
  BinaryImage stippled;
  BinaryImage track;  ///< corridor between the two member lines of a track
  BinaryImage path;   ///< stippled lines away from any track
};

/// n8 close of the long-stippled segments, bridging residual dash gaps.
BinaryImage stippled_lines(const BinaryImage& long_stippled_img, const RecognitionConfig& cfg);

/// Corridor of double lines: closed(solid ∪ stippled) minus the lines,
/// grown cfg.track_dilate n8 steps inside the closed image.
BinaryImage track_lines(const BinaryImage& solid, const BinaryImage& stippled,
                        const RecognitionConfig& cfg);

/// Stippled pixels outside the cfg.path_guard_dilate n8 dilation of track.
BinaryImage path_lines(const BinaryImage& stippled, const BinaryImage& track,
                       const RecognitionConfig& cfg);

/// The stippled-class input selected by cfg.stipple_source.
BinaryImage stipple_input(const ExtractionResult& extracted, const RecognitionConfig& cfg);

RecognitionResult classify(const ExtractionResult& extracted, const RecognitionConfig& cfg);

RecognitionResult recognize(const BinaryImage& b, const PipelineConfig& pcfg,
                            const RecognitionConfig& rcfg, const ExtractOptions& opts = {});

}  // namespace maplines
