#pragma once

// Hand-rolled generators and small helpers shared by the test binaries.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maplines/binary_image.hpp"
#include "maplines/direction.hpp"
#include "maplines/extraction.hpp"
#include "maplines/morphology.hpp"
#include "maplines/planes.hpp"

namespace maplines::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(eng_); }
  Direction direction() { return Direction(uniform(0, 7)); }
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

inline BinaryImage random_image(Rng& rng, int w, int h, double density) {
  BinaryImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (rng.chance(density)) img.set(x, y, true);
    }
  }
  return img;
}

/// Random size (including widths straddling a 64-bit word) and density.
inline BinaryImage random_image(Rng& rng) {
  static constexpr int kWidths[] = {1, 2, 3, 7, 31, 63, 64, 65, 100, 129};
  const int w = kWidths[rng.uniform(0, 9)];
  const int h = rng.uniform(1, 40);
  return random_image(rng, w, h, rng.real(0.05, 0.95));
}

/// Keeps each pixel of f with probability `keep`.
inline BinaryImage random_subset(Rng& rng, const BinaryImage& f, double keep) {
  BinaryImage out(f.width(), f.height());
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      if (f.get(x, y) && rng.chance(keep)) out.set(x, y, true);
    }
  }
  return out;
}

inline Selector random_selector(Rng& rng) {
  const Direction d = rng.direction();
  switch (rng.uniform(0, 5)) {
    case 0: return Selector::n4();
    case 1: return Selector::n8();
    case 2: return Selector::single(d);
    case 3: return Selector::fan(d);
    case 4: return Selector::orth_single(d);
    default: return Selector::orth_fan(d);
  }
}

inline std::vector<Selector> all_selectors() {
  std::vector<Selector> out{Selector::n4(), Selector::n8()};
  for (Direction d : Direction::all()) {
    out.push_back(Selector::single(d));
    out.push_back(Selector::fan(d));
    out.push_back(Selector::orth_single(d));
    out.push_back(Selector::orth_fan(d));
  }
  return out;
}

/// Rows of '#' (set) and '.' (clear), all the same length.
inline BinaryImage from_rows(std::initializer_list<std::string_view> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.begin()->size());
  BinaryImage img(w, h);
  int y = 0;
  for (std::string_view row : rows) {
    for (int x = 0; x < w; ++x) {
      if (row[x] == '#') img.set(x, y, true);
    }
    ++y;
  }
  return img;
}

inline std::vector<std::pair<int, int>> pixels(const BinaryImage& f) {
  std::vector<std::pair<int, int>> out;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      if (f.get(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

inline std::string render(const BinaryImage& f) {
  std::string s;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) s += f.get(x, y) ? '#' : '.';
    s += '\n';
  }
  return s;
}

/// Image of the given size with only the listed pixels set.
inline BinaryImage with_pixels(int w, int h, std::initializer_list<std::pair<int, int>> px) {
  BinaryImage img(w, h);
  for (auto [x, y] : px) img.set(x, y, true);
  return img;
}

/// Straight run of `len` pixels starting at (x0, y0) stepping along d.
inline BinaryImage straight_run(int w, int h, int x0, int y0, Direction d, int len) {
  BinaryImage img(w, h);
  for (int i = 0; i < len; ++i) img.set(x0 + i * d.dx(), y0 + i * d.dy(), true);
  return img;
}

/// Quarter turn taking pixel (x, y) of a W x H image to (y, W-1-x) of an
/// H x W image; a step toward direction d becomes a step toward d+2.
inline BinaryImage rotate90(const BinaryImage& f) {
  BinaryImage out(f.height(), f.width());
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      if (f.get(x, y)) out.set(y, f.width() - 1 - x, true);
    }
  }
  return out;
}

/// Number of 8-connected components.
inline int components8(const BinaryImage& f) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(f.width()) * f.height(), 0);
  int count = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      if (!f.get(x, y) || seen[static_cast<std::size_t>(y) * f.width() + x]) continue;
      ++count;
      stack.emplace_back(x, y);
      seen[static_cast<std::size_t>(y) * f.width() + x] = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (Direction d : Direction::all()) {
          const int nx = cx + d.dx(), ny = cy + d.dy();
          if (!f.contains(nx, ny) || !f.get(nx, ny)) continue;
          auto& s = seen[static_cast<std::size_t>(ny) * f.width() + nx];
          if (!s) {
            s = 1;
            stack.emplace_back(nx, ny);
          }
        }
      }
    }
  }
  return count;
}

/// Fraction of truth pixels present in `found`; 1 for an empty truth.
inline double recall(const BinaryImage& found, const BinaryImage& truth) {
  const std::size_t total = truth.popcount();
  if (total == 0) return 1.0;
  return static_cast<double>(intersect(found, truth).popcount()) / static_cast<double>(total);
}

}  // namespace maplines::testing
