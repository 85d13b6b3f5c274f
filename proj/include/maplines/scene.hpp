#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "maplines/binary_image.hpp"

namespace maplines::scene {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

struct SolidLine {
  Point start, end;
  int thickness = 1;
};

/// Dashes start at `start`; the pattern is counted in raster steps.
struct StippleLine {
  Point start, end;
  int dash = 6;
  int gap = 3;
  int thickness = 1;
};

/// A solid line along start-end plus a parallel stippled line offset by
/// `separation` pixels along the minor axis. The track's route is the
/// band strictly between them.
struct Track {
  Point start, end;
  int separation = 3;
  int dash = 6;
  int gap = 3;
};

/// Filled w x h rectangle centred on `center`.
struct Blob {
  Point center;
  int w = 3;
  int h = 3;
};

/// Sets each pixel independently with probability `density`.
struct Noise {
  double density = 0.0;
  std::uint64_t seed = 0;
};

using Element = std::variant<SolidLine, StippleLine, Track, Blob, Noise>;

struct SceneSpec {
  int width = 256;
  int height = 256;
  std::vector<Element> elements;
};

/// Rasterized scene and per-class ground truth.
struct Scene {
  BinaryImage image;
  BinaryImage solid;     ///< solid lines, including the solid member of tracks
  BinaryImage stippled;  ///< full route of stippled lines (dashes and gaps), including tracks
  BinaryImage path;      ///< route of standalone stippled lines
  BinaryImage track;     ///< corridor between track members
  BinaryImage blob;
  std::vector<std::string> warnings;  ///< elements clipped away entirely
};

/// Lattice points from a to b, one 8-neighbor step at a time, endpoints
/// included.
std::vector<Point> raster_line(Point a, Point b);

/// Throws std::invalid_argument for non-positive sizes or parameters.
Scene synth(const SceneSpec& spec);

/// `count` solid 1-px lines with random endpoints, used by benchmarks.
SceneSpec random_lines(int width, int height, int count, std::uint64_t seed);

/// A random mix of solid lines, stippled lines, tracks and blobs.
SceneSpec random_scene(int width, int height, std::uint64_t seed);

}  // namespace maplines::scene
