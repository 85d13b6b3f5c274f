#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maplines/binary_image.hpp"
#include "maplines/recognition.hpp"

namespace maplines::io {

/// Malformed, truncated, or unsupported image data, or a failed file
/// operation.
class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BinaryFormat { pbm_plain, pbm_raw, png };

/// Options for read_binary.
struct ReadOptions {
  /// Detected from the file signature when unset.
  std::optional<BinaryFormat> format;
  /// Gray PNG pixels strictly below this level are foreground (ink).
  int gray_threshold = 128;
};

/// PBM black (1) and dark PNG pixels become foreground.
BinaryImage read_binary(const std::filesystem::path& path, const ReadOptions& opts = {});
void write_binary(const BinaryImage& img, const std::filesystem::path& path,
                  BinaryFormat format = BinaryFormat::pbm_raw);

/// In-memory PBM codec (P1 or P4).
BinaryImage decode_pbm(std::string_view bytes);
std::string encode_pbm(const BinaryImage& img, BinaryFormat format = BinaryFormat::pbm_raw);

/// 8-bit interleaved RGB raster.
struct ColorImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  std::uint8_t r(int x, int y) const { return rgb[3 * (static_cast<std::size_t>(y) * width + x)]; }
  std::uint8_t g(int x, int y) const { return rgb[3 * (static_cast<std::size_t>(y) * width + x) + 1]; }
  std::uint8_t b(int x, int y) const { return rgb[3 * (static_cast<std::size_t>(y) * width + x) + 2]; }
};

/// PPM P6 (maxval 255) or RGB/gray PNG, detected from the signature.
ColorImage read_color(const std::filesystem::path& path);
ColorImage decode_ppm(std::string_view bytes);
std::string encode_ppm(const ColorImage& img);
void write_ppm(const ColorImage& img, const std::filesystem::path& path);

/// Hue in degrees [0, 360) or nullopt when undefined (gray pixels);
/// saturation and intensity in [0, 1].
struct Hsi {
  std::optional<double> hue;
  double saturation = 0;
  double intensity = 0;
};

/// I = mean of channels, S = 1 - min/I (0 for black), H from the arccos form.
Hsi rgb_to_hsi(std::uint8_t r, std::uint8_t g, std::uint8_t b);

struct ColorClassSpec {
  std::string name;
  /// [low, high) in degrees; low > high wraps through 0. Unset matches any
  /// hue, including undefined hue.
  std::optional<std::pair<double, double>> hue_range;
  double saturation_min = 0.0;
  std::pair<double, double> intensity_range{0.0, 1.0};  ///< inclusive

  /// Throws std::invalid_argument for out-of-range bounds.
  void validate() const;
  bool matches(const Hsi& c) const;
};

/// One plane per class; each pixel goes to the first class it matches, or to
/// none. Throws std::invalid_argument for an empty image or class list.
std::map<std::string, BinaryImage> color_separate(const ColorImage& img,
                                                  const std::vector<ColorClassSpec>& classes);

/// Source ink in light gray with solid, stippled, path and track painted
/// over it (in that order).
ColorImage render_overlay(const BinaryImage& source, const RecognitionResult& result);

/// Reads a whole file; throws ImageIoError on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace maplines::io
