#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maplines/extraction.hpp"
#include "maplines/imageio.hpp"
#include "maplines/recognition.hpp"
#include "maplines/scene.hpp"

namespace maplines::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run can be configured with.
///
/// File format, one entry per line:
///
///   # comment
///   long_len = 12
///   fan_variant = union            # or intersection
///   [scene]
///   width = 256
///   solid_line = x0 y0 x1 y1 [thickness]
///   stipple_line = x0 y0 x1 y1 dash gap [thickness]
///   track = x0 y0 x1 y1 separation dash gap
///   blob = cx cy w h
///   noise = density [seed]
///   [color black]
///   hue = low high                  # degrees, optional
///   saturation_min = 0
///   intensity = 0 0.25
///
/// Element keys may repeat inside [scene]; each line adds one element.
struct RunConfig {
  PipelineConfig pipeline;
  RecognitionConfig recognition;
  int gray_threshold = 128;
  std::uint64_t seed = 0;
  std::vector<io::ColorClassSpec> colors;
  std::optional<scene::SceneSpec> scene;
  /// Indices of scene noise elements given without a seed; they are seeded
  /// from `seed` at synthesis time.
  std::vector<std::size_t> unseeded_noise;

  /// Scene with every unseeded noise element resolved against `seed`.
  scene::SceneSpec resolved_scene() const;
};

/// Parses config text. `origin` names the source in error messages.
/// Throws ConfigError with the offending line number.
RunConfig parse_config(std::string_view text, std::string_view origin = "config");

/// Reads a config file. A run manifest (JSON with a "config_text" member)
/// is accepted too, so a recorded run can be replayed.
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& c);

FanErosion parse_fan_variant(std::string_view s);

}  // namespace maplines::cli
