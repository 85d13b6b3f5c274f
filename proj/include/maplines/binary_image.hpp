#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maplines/direction.hpp"

namespace maplines {

/// Bit-packed binary raster. Rows are stored as 64-bit words, pixel x of a
/// row living in bit (x % 64) of word (x / 64). Bits past `width` in the
/// last word of each row are kept at zero, so popcount and equality are
/// exact word comparisons.
class BinaryImage {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  /// All-background image. Throws std::invalid_argument unless both
  /// dimensions are at least 1.
  BinaryImage(int width, int height);

  static BinaryImage filled(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int words_per_row() const { return stride_; }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  /// Out-of-bounds reads return false.
  bool get(int x, int y) const {
    if (!contains(x, y)) return false;
    return (words_[index(x, y)] >> (x % kWordBits)) & 1u;
  }

  void set(int x, int y, bool value = true);

  std::span<const Word> row(int y) const {
    return {words_.data() + static_cast<std::size_t>(y) * stride_,
            static_cast<std::size_t>(stride_)};
  }
  std::span<Word> row(int y) {
    return {words_.data() + static_cast<std::size_t>(y) * stride_,
            static_cast<std::size_t>(stride_)};
  }

  std::span<const Word> words() const { return words_; }

  /// Mask of valid bits in the last word of each row.
  Word tail_mask() const { return tail_mask_; }

  /// Zeroes the padding bits of every row.
  void clear_padding();

  std::size_t popcount() const;
  bool none() const;
  bool same_size(const BinaryImage& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  /// Throws std::invalid_argument on dimension mismatch.
  bool subset_of(const BinaryImage& other) const;
  bool equals(const BinaryImage& other) const;

  bool operator==(const BinaryImage& other) const {
    return same_size(other) && words_ == other.words_;
  }

  BinaryImage& operator|=(const BinaryImage& other);
  BinaryImage& operator&=(const BinaryImage& other);
  /// In-place set difference: this & ~other.
  BinaryImage& subtract(const BinaryImage& other);

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * stride_ + x / kWordBits;
  }

  int width_;
  int height_;
  int stride_;
  Word tail_mask_;
  std::vector<Word> words_;
};

/// Throws std::invalid_argument with a message naming `what` when the two
/// images differ in size.
void require_same_size(const BinaryImage& a, const BinaryImage& b,
                       const char* what);

BinaryImage complement(const BinaryImage& f);
BinaryImage unite(const BinaryImage& f, const BinaryImage& g);
BinaryImage intersect(const BinaryImage& f, const BinaryImage& g);
/// f minus g.
BinaryImage difference(const BinaryImage& f, const BinaryImage& g);

inline BinaryImage operator|(const BinaryImage& f, const BinaryImage& g) {
  return unite(f, g);
}
inline BinaryImage operator&(const BinaryImage& f, const BinaryImage& g) {
  return intersect(f, g);
}
inline BinaryImage operator~(const BinaryImage& f) { return complement(f); }

/// f[d]: result(p) = f(p + offset(d)), i.e. every pixel takes the value of
/// its neighbor toward d. Sources outside the image read as background.
BinaryImage neighbor(const BinaryImage& f, Direction d);

namespace kernel {

/// acc |= neighbor(src, d) without allocating. Sizes must match and acc must
/// not alias src.
void or_neighbor(BinaryImage& acc, const BinaryImage& src, Direction d);
/// acc &= neighbor(src, d) without allocating. Same requirements.
void and_neighbor(BinaryImage& acc, const BinaryImage& src, Direction d);

}  // namespace kernel

}  // namespace maplines
