#include "maplines/recognition.hpp"

#include <stdexcept>
#include <string>

#include "maplines/morphology.hpp"

namespace maplines {

namespace {

BinaryImage close_n8(const BinaryImage& f, int k) {
  OpenCloseParams p;
  p.selector = Selector::n8();
  p.k = k;
  return close(f, p);
}

}  // namespace

std::string_view to_string(StippleSource v) {
  return v == StippleSource::long_stippled_minus_solid ? "longw_minus_longb" : "longw";
}

void RecognitionConfig::validate() const {
  const std::pair<const char*, int> counts[] = {
      {"stipple_close", stipple_close},
      {"track_close", track_close},
      {"track_dilate", track_dilate},
      {"path_guard_dilate", path_guard_dilate},
  };
  for (const auto& [name, value] : counts) {
    if (value < 1) {
      throw std::invalid_argument(std::string("RecognitionConfig: ") + name +
                                  " must be at least 1, got " + std::to_string(value));
    }
  }
}

BinaryImage stippled_lines(const BinaryImage& long_stippled_img, const RecognitionConfig& cfg) {
  return close_n8(long_stippled_img, cfg.stipple_close);
}

BinaryImage track_lines(const BinaryImage& solid, const BinaryImage& stippled,
                        const RecognitionConfig& cfg) {
  require_same_size(solid, stippled, "track_lines");
  const BinaryImage total = unite(solid, stippled);
  const BinaryImage closed = close_n8(total, cfg.track_close);
  return masked_dilate(difference(closed, total), closed, Selector::n8(), cfg.track_dilate);
}

BinaryImage path_lines(const BinaryImage& stippled, const BinaryImage& track,
                       const RecognitionConfig& cfg) {
  require_same_size(stippled, track, "path_lines");
  return difference(stippled, dilate(track, Selector::n8(), cfg.path_guard_dilate));
}

BinaryImage stipple_input(const ExtractionResult& extracted, const RecognitionConfig& cfg) {
  if (cfg.stipple_source == StippleSource::long_stippled) return extracted.stippled_segments;
  return difference(extracted.stippled_segments, extracted.solid);
}

RecognitionResult classify(const ExtractionResult& extracted, const RecognitionConfig& cfg) {
  cfg.validate();
  BinaryImage stippled = stippled_lines(stipple_input(extracted, cfg), cfg);
  BinaryImage track = track_lines(extracted.solid, stippled, cfg);
  BinaryImage path = path_lines(stippled, track, cfg);
  return {extracted.solid, std::move(stippled), std::move(track), std::move(path)};
}

RecognitionResult recognize(const BinaryImage& b, const PipelineConfig& pcfg,
                            const RecognitionConfig& rcfg, const ExtractOptions& opts) {
  rcfg.validate();
  return classify(extract(b, pcfg, opts), rcfg);
}

}  // namespace maplines
