#include "maplines/binary_image.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace maplines {

namespace {

using Word = BinaryImage::Word;

// Word i of `row` as seen after a horizontal shift: out[x] = row[x + dx].
inline Word shifted_word(std::span<const Word> row, int i, int dx) {
  const int n = static_cast<int>(row.size());
  if (dx == 0) return row[i];
  if (dx > 0) {
    Word w = row[i] >> 1;
    if (i + 1 < n) w |= row[i + 1] << 63;
    return w;
  }
  Word w = row[i] << 1;
  if (i > 0) w |= row[i - 1] >> 63;
  return w;
}

}  // namespace

BinaryImage::BinaryImage(int width, int height)
    : width_(width), height_(height), stride_(0), tail_mask_(0) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("BinaryImage: dimensions must be at least 1x1, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  stride_ = (width + kWordBits - 1) / kWordBits;
  const int tail_bits = width % kWordBits;
  tail_mask_ = tail_bits == 0 ? ~Word{0} : ((Word{1} << tail_bits) - 1);
  words_.assign(static_cast<std::size_t>(stride_) * height, 0);
}

BinaryImage BinaryImage::filled(int width, int height) {
  BinaryImage img(width, height);
  std::fill(img.words_.begin(), img.words_.end(), ~Word{0});
  img.clear_padding();
  return img;
}

void BinaryImage::set(int x, int y, bool value) {
  if (!contains(x, y)) {
    throw std::out_of_range("BinaryImage::set: pixel (" + std::to_string(x) + "," +
                            std::to_string(y) + ") outside " + std::to_string(width_) +
                            "x" + std::to_string(height_));
  }
  const Word bit = Word{1} << (x % kWordBits);
  if (value) {
    words_[index(x, y)] |= bit;
  } else {
    words_[index(x, y)] &= ~bit;
  }
}

void BinaryImage::clear_padding() {
  if (tail_mask_ == ~Word{0}) return;
  for (int y = 0; y < height_; ++y) {
    words_[static_cast<std::size_t>(y) * stride_ + stride_ - 1] &= tail_mask_;
  }
}

std::size_t BinaryImage::popcount() const {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BinaryImage::none() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool BinaryImage::subset_of(const BinaryImage& other) const {
  require_same_size(*this, other, "subset_of");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool BinaryImage::equals(const BinaryImage& other) const {
  require_same_size(*this, other, "equals");
  return words_ == other.words_;
}

BinaryImage& BinaryImage::operator|=(const BinaryImage& other) {
  require_same_size(*this, other, "union");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BinaryImage& BinaryImage::operator&=(const BinaryImage& other) {
  require_same_size(*this, other, "intersection");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BinaryImage& BinaryImage::subtract(const BinaryImage& other) {
  require_same_size(*this, other, "difference");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

void require_same_size(const BinaryImage& a, const BinaryImage& b, const char* what) {
  if (!a.same_size(b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                " vs " + std::to_string(b.width()) + "x" +
                                std::to_string(b.height()) + ")");
  }
}

BinaryImage complement(const BinaryImage& f) {
  BinaryImage out = BinaryImage::filled(f.width(), f.height());
  out.subtract(f);
  return out;
}

BinaryImage unite(const BinaryImage& f, const BinaryImage& g) {
  BinaryImage out = f;
  out |= g;
  return out;
}

BinaryImage intersect(const BinaryImage& f, const BinaryImage& g) {
  BinaryImage out = f;
  out &= g;
  return out;
}

BinaryImage difference(const BinaryImage& f, const BinaryImage& g) {
  BinaryImage out = f;
  out.subtract(g);
  return out;
}

BinaryImage neighbor(const BinaryImage& f, Direction d) {
  BinaryImage out(f.width(), f.height());
  kernel::or_neighbor(out, f, d);
  return out;
}

namespace kernel {

void or_neighbor(BinaryImage& acc, const BinaryImage& src, Direction d) {
  require_same_size(acc, src, "or_neighbor");
  if (&acc == &src) throw std::invalid_argument("or_neighbor: accumulator aliases source");
  const int h = src.height();
  const int n = src.words_per_row();
  const int dx = d.dx();
  const int dy = d.dy();
  for (int y = 0; y < h; ++y) {
    const int sy = y + dy;
    if (sy < 0 || sy >= h) continue;
    auto in = src.row(sy);
    auto out = acc.row(y);
    for (int i = 0; i < n; ++i) out[i] |= shifted_word(in, i, dx);
    out[n - 1] &= acc.tail_mask();
  }
}

void and_neighbor(BinaryImage& acc, const BinaryImage& src, Direction d) {
  require_same_size(acc, src, "and_neighbor");
  if (&acc == &src) throw std::invalid_argument("and_neighbor: accumulator aliases source");
  const int h = src.height();
  const int n = src.words_per_row();
  const int dx = d.dx();
  const int dy = d.dy();
  for (int y = 0; y < h; ++y) {
    const int sy = y + dy;
    auto out = acc.row(y);
    if (sy < 0 || sy >= h) {
      std::fill(out.begin(), out.end(), Word{0});
      continue;
    }
    auto in = src.row(sy);
    for (int i = 0; i < n; ++i) out[i] &= shifted_word(in, i, dx);
  }
}

}  // namespace kernel

}  // namespace maplines
