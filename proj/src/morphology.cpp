#include "maplines/morphology.hpp"

#include <stdexcept>
#include <string>

namespace maplines {

namespace {

constexpr Direction kAxes4[] = {Direction(0), Direction(2), Direction(4), Direction(6)};

// f ∪ ⋃ f[d + offset] over the given offsets.
void grow_into(BinaryImage& acc, const BinaryImage& f, Direction base,
               std::initializer_list<int> offsets) {
  for (int o : offsets) kernel::or_neighbor(acc, f, base + o);
}

// f ∩ (f[d-1] ∪ f[d] ∪ f[d+1]) or f ∩ f[d-1] ∩ f[d] ∩ f[d+1].
BinaryImage fan_erode(const BinaryImage& f, Direction d, FanErosion variant) {
  if (variant == FanErosion::intersection_of_shifts) {
    BinaryImage out = f;
    for (int o : {-1, 0, 1}) kernel::and_neighbor(out, f, d + o);
    return out;
  }
  BinaryImage support(f.width(), f.height());
  grow_into(support, f, d, {-1, 0, 1});
  support &= f;
  return support;
}

BinaryImage single_erode(const BinaryImage& f, Direction d) {
  BinaryImage out = f;
  kernel::and_neighbor(out, f, d);
  return out;
}

void require_count(int k, const char* what) {
  if (k < 0) throw std::invalid_argument(std::string(what) + ": negative iteration count");
}

}  // namespace

std::string_view to_string(FanErosion v) {
  return v == FanErosion::union_of_shifts ? "union" : "intersection";
}

std::string_view to_string(OpenSemantics v) {
  return v == OpenSemantics::ek_dk ? "ek_dk" : "repeated";
}

BinaryImage dilate(const BinaryImage& f, Selector s) {
  BinaryImage out = f;
  switch (s.kind) {
    case Selector::Kind::n4:
      for (Direction d : kAxes4) kernel::or_neighbor(out, f, d);
      break;
    case Selector::Kind::n8:
      for (Direction d : Direction::all()) kernel::or_neighbor(out, f, d);
      break;
    case Selector::Kind::single:
      grow_into(out, f, s.dir, {4});
      break;
    case Selector::Kind::fan:
      grow_into(out, f, s.dir, {3, 4, 5});
      break;
    case Selector::Kind::orth_single:
      grow_into(out, f, s.dir - 2, {4});
      grow_into(out, f, s.dir + 2, {4});
      break;
    case Selector::Kind::orth_fan:
      grow_into(out, f, s.dir - 2, {3, 4, 5});
      grow_into(out, f, s.dir + 2, {3, 4, 5});
      break;
  }
  return out;
}

BinaryImage erode(const BinaryImage& f, Selector s, FanErosion variant) {
  switch (s.kind) {
    case Selector::Kind::n4: {
      BinaryImage out = f;
      for (Direction d : kAxes4) kernel::and_neighbor(out, f, d);
      return out;
    }
    case Selector::Kind::n8: {
      BinaryImage out = f;
      for (Direction d : Direction::all()) kernel::and_neighbor(out, f, d);
      return out;
    }
    case Selector::Kind::single:
      return single_erode(f, s.dir);
    case Selector::Kind::fan:
      return fan_erode(f, s.dir, variant);
    case Selector::Kind::orth_single: {
      BinaryImage out = single_erode(f, s.dir - 2);
      out &= single_erode(f, s.dir + 2);
      return out;
    }
    case Selector::Kind::orth_fan: {
      BinaryImage out = fan_erode(f, s.dir - 2, variant);
      out &= fan_erode(f, s.dir + 2, variant);
      return out;
    }
  }
  throw std::logic_error("erode: unknown selector");
}

BinaryImage dilate(const BinaryImage& f, Selector s, int k) {
  require_count(k, "dilate");
  return iterate([s](const BinaryImage& x) { return dilate(x, s); }, f, k);
}

BinaryImage erode(const BinaryImage& f, Selector s, int k, FanErosion variant) {
  require_count(k, "erode");
  return iterate([s, variant](const BinaryImage& x) { return erode(x, s, variant); }, f, k);
}

BinaryImage masked_dilate(const BinaryImage& f, const BinaryImage& g, Selector s, int k) {
  require_same_size(f, g, "masked_dilate");
  require_count(k, "masked_dilate");
  BinaryImage out = f;
  for (int i = 0; i < k; ++i) {
    out = dilate(out, s);
    out &= g;
  }
  return out;
}

BinaryImage masked_erode(const BinaryImage& f, const BinaryImage& g, Selector s,
                         FanErosion variant) {
  require_same_size(f, g, "masked_erode");
  return erode(unite(f, g), s, variant);
}

namespace {

BinaryImage dilation_phase(const BinaryImage& f, const BinaryImage* mask, Selector s, int k) {
  if (mask == nullptr) return dilate(f, s, k);
  return masked_dilate(f, *mask, s, k);
}

BinaryImage one_open_close(MorphOp which, const BinaryImage& f, const OpenCloseParams& p,
                           int k) {
  const BinaryImage* mask = nullptr;
  switch (p.mask.kind()) {
    case MorphMask::Kind::none:
      break;
    case MorphMask::Kind::self:
      mask = &f;
      break;
    case MorphMask::Kind::image:
      mask = p.mask.image_ptr();
      require_same_size(f, *mask, "open_close");
      break;
  }
  if (which == MorphOp::open) {
    return dilation_phase(erode(f, p.selector, k, p.variant), mask, p.selector, k);
  }
  return erode(dilation_phase(f, mask, p.selector, k), p.selector, k, p.variant);
}

}  // namespace

BinaryImage open_close(MorphOp which, const BinaryImage& f, const OpenCloseParams& p) {
  if (p.k < 1) throw std::invalid_argument("open_close: k must be at least 1");
  if (p.semantics == OpenSemantics::ek_dk) return one_open_close(which, f, p, p.k);
  BinaryImage out = f;
  for (int i = 0; i < p.k; ++i) out = one_open_close(which, out, p, 1);
  return out;
}

BinaryImage end_points(const BinaryImage& f, Direction d, FanErosion variant) {
  return difference(f, fan_erode(f, d, variant));
}

}  // namespace maplines
