#include "maplines/planes.hpp"

#include <stdexcept>
#include <string>

namespace maplines {

DirectionalPlanes::DirectionalPlanes(int width, int height)
    : planes_(8, BinaryImage(width, height)) {}

void DirectionalPlanes::assign(Direction d, BinaryImage plane) {
  require_same_size(planes_[0], plane, "DirectionalPlanes::assign");
  planes_[d.code()] = std::move(plane);
}

DirectionalPlanes decompose(const BinaryImage& b) {
  DirectionalPlanes planes(b.width(), b.height());
  for (Direction d : Direction::all()) {
    BinaryImage plane = b;
    plane.subtract(neighbor(b, d + 4));
    planes.assign(d, std::move(plane));
  }
  return planes;
}

BinaryImage merge(const DirectionalPlanes& planes) {
  BinaryImage out(planes.width(), planes.height());
  for (Direction d : Direction::all()) out |= planes[d];
  return out;
}

BinaryImage interior8(const BinaryImage& f) {
  BinaryImage out = f;
  for (Direction d : Direction::all()) kernel::and_neighbor(out, f, d);
  return out;
}

std::vector<std::uint8_t> to_direction_bytes(const DirectionalPlanes& planes) {
  const int w = planes.width();
  const int h = planes.height();
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(w) * h, 0);
  for (Direction d : Direction::all()) {
    const BinaryImage& plane = planes[d];
    const auto bit = static_cast<std::uint8_t>(1u << d.code());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (plane.get(x, y)) bytes[static_cast<std::size_t>(y) * w + x] |= bit;
      }
    }
  }
  return bytes;
}

DirectionalPlanes from_direction_bytes(std::span<const std::uint8_t> bytes, int width,
                                       int height) {
  DirectionalPlanes planes(width, height);
  if (bytes.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("from_direction_bytes: expected " +
                                std::to_string(static_cast<std::size_t>(width) * height) +
                                " bytes, got " + std::to_string(bytes.size()));
  }
  for (Direction d : Direction::all()) {
    BinaryImage& plane = planes[d];
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if ((bytes[static_cast<std::size_t>(y) * width + x] >> d.code()) & 1u) plane.set(x, y);
      }
    }
  }
  return planes;
}

}  // namespace maplines
