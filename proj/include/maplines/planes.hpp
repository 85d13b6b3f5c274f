#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "maplines/binary_image.hpp"
#include "maplines/direction.hpp"

namespace maplines {

/// The 8 per-direction planes of one image, all of the same size.
class DirectionalPlanes {
 public:
  /// Eight empty planes of the given size.
  DirectionalPlanes(int width, int height);

  int width() const { return planes_[0].width(); }
  int height() const { return planes_[0].height(); }

  BinaryImage& operator[](Direction d) { return planes_[d.code()]; }
  const BinaryImage& operator[](Direction d) const { return planes_[d.code()]; }

  /// Replaces plane d. Throws std::invalid_argument on size mismatch.
  void assign(Direction d, BinaryImage plane);

  bool operator==(const DirectionalPlanes&) const = default;

 private:
  std::vector<BinaryImage> planes_;
};

/// f_d = b minus b[d+4]: plane d holds the foreground pixels whose
/// neighbor toward d+4 is background.
DirectionalPlanes decompose(const BinaryImage& b);

/// Pixelwise union of all 8 planes.
BinaryImage merge(const DirectionalPlanes& planes);

/// Pixels of f whose 8 neighbors are all in f.
BinaryImage interior8(const BinaryImage& f);

/// Row-major, one byte per pixel; bit d of each byte is membership in
/// plane d.
std::vector<std::uint8_t> to_direction_bytes(const DirectionalPlanes& planes);
/// Inverse of to_direction_bytes. Throws std::invalid_argument when the
/// byte count does not match width*height.
DirectionalPlanes from_direction_bytes(std::span<const std::uint8_t> bytes, int width,
                                       int height);

}  // namespace maplines
