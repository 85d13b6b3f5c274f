#pragma once

#include <functional>
#include <stdexcept>
#include <string_view>

#include "maplines/binary_image.hpp"
#include "maplines/direction.hpp"

namespace maplines {

/// Neighborhood of a directional erosion or dilation.
///
///   n4, n8        nondirectional, 4- or 8-neighbors
///   single(d)     one neighbor (dilation grows toward d, erosion trims the
///                 end facing d)
///   fan(d)        the wedge d-1, d, d+1
///   orth_single   single(d-2) and single(d+2) combined
///   orth_fan      fan(d-2) and fan(d+2) combined
struct Selector {
  enum class Kind { n4, n8, single, fan, orth_single, orth_fan };

  Kind kind = Kind::n8;
  Direction dir{};

  static constexpr Selector n4() { return {Kind::n4, Direction(0)}; }
  static constexpr Selector n8() { return {Kind::n8, Direction(0)}; }
  static constexpr Selector single(Direction d) { return {Kind::single, d}; }
  static constexpr Selector fan(Direction d) { return {Kind::fan, d}; }
  static constexpr Selector orth_single(Direction d) { return {Kind::orth_single, d}; }
  static constexpr Selector orth_fan(Direction d) { return {Kind::orth_fan, d}; }

  bool operator==(const Selector&) const = default;
};

/// Fan erosion definition. union_of_shifts keeps a pixel when any of the
/// three wedge neighbors is set; intersection_of_shifts requires all three.
enum class FanErosion { union_of_shifts, intersection_of_shifts };

/// Meaning of an exponent on open/close. ek_dk: k erosions then k
/// dilations. repeated: the one-step macro-operator applied k times.
enum class OpenSemantics { ek_dk, repeated };

std::string_view to_string(FanErosion v);
std::string_view to_string(OpenSemantics v);

BinaryImage dilate(const BinaryImage& f, Selector s);
BinaryImage erode(const BinaryImage& f, Selector s,
                  FanErosion variant = FanErosion::union_of_shifts);

/// k-fold composition; k = 0 returns f unchanged. Throws on negative k.
template <class Op>
BinaryImage iterate(Op&& op, BinaryImage f, int k);

BinaryImage dilate(const BinaryImage& f, Selector s, int k);
BinaryImage erode(const BinaryImage& f, Selector s, int k, FanErosion variant);

/// g ∩ D_s(f), applied `k` times with the mask intersected after every step.
BinaryImage masked_dilate(const BinaryImage& f, const BinaryImage& g, Selector s, int k = 1);

/// E_s(f ∪ g).
BinaryImage masked_erode(const BinaryImage& f, const BinaryImage& g, Selector s,
                         FanErosion variant = FanErosion::union_of_shifts);

/// Mask applied to the dilation phase of open/close.
class MorphMask {
 public:
  enum class Kind { none, self, image };

  static MorphMask none() { return MorphMask(Kind::none, nullptr); }
  static MorphMask self() { return MorphMask(Kind::self, nullptr); }
  /// The referenced image must outlive the call it is passed to.
  static MorphMask image(const BinaryImage& g) { return MorphMask(Kind::image, &g); }

  Kind kind() const { return kind_; }
  const BinaryImage* image_ptr() const { return image_; }

 private:
  MorphMask(Kind kind, const BinaryImage* image) : kind_(kind), image_(image) {}
  Kind kind_;
  const BinaryImage* image_;
};

enum class MorphOp { open, close };

struct OpenCloseParams {
  Selector selector = Selector::n8();
  int k = 1;
  MorphMask mask = MorphMask::none();
  FanErosion variant = FanErosion::union_of_shifts;
  OpenSemantics semantics = OpenSemantics::ek_dk;
};

/// Open: erosion phase then (masked) dilation phase. Close: (masked)
/// dilation phase then erosion phase. A self mask is the input of the
/// macro-operator. Requires k >= 1.
BinaryImage open_close(MorphOp which, const BinaryImage& f, const OpenCloseParams& p);

inline BinaryImage open(const BinaryImage& f, const OpenCloseParams& p) {
  return open_close(MorphOp::open, f, p);
}
inline BinaryImage close(const BinaryImage& f, const OpenCloseParams& p) {
  return open_close(MorphOp::close, f, p);
}

/// f minus E_fan(d) f: pixels deleted by one fan erosion toward d.
BinaryImage end_points(const BinaryImage& f, Direction d,
                       FanErosion variant = FanErosion::union_of_shifts);

/// Receives (stage, direction, image) after a traced operation.
using TraceHook = std::function<void(std::string_view, Direction, const BinaryImage&)>;

template <class Op>
BinaryImage iterate(Op&& op, BinaryImage f, int k) {
  if (k < 0) throw std::invalid_argument("iterate: negative count");
  for (int i = 0; i < k; ++i) f = op(f);
  return f;
}

}  // namespace maplines
