#include "maplines/scene.hpp"

#include <cstdlib>
#include <random>
#include <stdexcept>

namespace maplines::scene {

namespace {

// floor(n / d) for d > 0.
long floor_div(long n, long d) { return n >= 0 ? n / d : -((-n + d - 1) / d); }

// Rounds i * delta / steps to the nearest integer, halves rounding up.
int lerp_round(long i, long delta, long steps) {
  return static_cast<int>(floor_div(2 * i * delta + steps, 2 * steps));
}

bool x_major(Point a, Point b) { return std::abs(b.x - a.x) >= std::abs(b.y - a.y); }

// Offsets -(t-1)/2 .. t/2 across the line.
std::vector<int> thickness_offsets(int t) {
  std::vector<int> v;
  for (int o = -(t - 1) / 2; o <= t / 2; ++o) v.push_back(o);
  return v;
}

Point across(Point p, bool xmajor, int offset) {
  return xmajor ? Point{p.x, p.y + offset} : Point{p.x + offset, p.y};
}

class Painter {
 public:
  explicit Painter(Scene& s) : scene_(s) {}

  // Sets p in every target; returns whether p was in bounds.
  bool paint(Point p, std::initializer_list<BinaryImage*> targets) {
    if (!scene_.image.contains(p.x, p.y)) return false;
    for (BinaryImage* t : targets) t->set(p.x, p.y);
    return true;
  }

 private:
  Scene& scene_;
};

void require_positive(int v, const char* what) {
  if (v < 1) throw std::invalid_argument(std::string("scene: ") + what + " must be at least 1");
}

}  // namespace

std::vector<Point> raster_line(Point a, Point b) {
  const long dx = b.x - a.x;
  const long dy = b.y - a.y;
  const long steps = std::max(std::abs(dx), std::abs(dy));
  std::vector<Point> pts;
  if (steps == 0) return {a};
  pts.reserve(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) {
    pts.push_back({a.x + lerp_round(i, dx, steps), a.y + lerp_round(i, dy, steps)});
  }
  return pts;
}

Scene synth(const SceneSpec& spec) {
  require_positive(spec.width, "width");
  require_positive(spec.height, "height");
  const BinaryImage blank(spec.width, spec.height);
  Scene s{blank, blank, blank, blank, blank, blank, {}};
  Painter painter(s);

  for (std::size_t index = 0; index < spec.elements.size(); ++index) {
    bool any = false;
    const Element& el = spec.elements[index];
    std::string kind;

    if (const auto* line = std::get_if<SolidLine>(&el)) {
      kind = "solid_line";
      require_positive(line->thickness, "thickness");
      const bool xm = x_major(line->start, line->end);
      for (Point p : raster_line(line->start, line->end)) {
        for (int o : thickness_offsets(line->thickness)) {
          any |= painter.paint(across(p, xm, o), {&s.image, &s.solid});
        }
      }
    } else if (const auto* st = std::get_if<StippleLine>(&el)) {
      kind = "stipple_line";
      require_positive(st->thickness, "thickness");
      require_positive(st->dash, "dash");
      if (st->gap < 0) throw std::invalid_argument("scene: gap must be non-negative");
      const bool xm = x_major(st->start, st->end);
      const auto pts = raster_line(st->start, st->end);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool ink = static_cast<int>(i % static_cast<std::size_t>(st->dash + st->gap)) < st->dash;
        for (int o : thickness_offsets(st->thickness)) {
          const Point q = across(pts[i], xm, o);
          any |= painter.paint(q, {&s.stippled, &s.path});
          if (ink) painter.paint(q, {&s.image});
        }
      }
    } else if (const auto* tr = std::get_if<Track>(&el)) {
      kind = "track";
      require_positive(tr->separation, "separation");
      require_positive(tr->dash, "dash");
      if (tr->gap < 0) throw std::invalid_argument("scene: gap must be non-negative");
      const bool xm = x_major(tr->start, tr->end);
      const auto pts = raster_line(tr->start, tr->end);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        any |= painter.paint(pts[i], {&s.image, &s.solid});
        const Point q = across(pts[i], xm, tr->separation);
        const bool ink = static_cast<int>(i % static_cast<std::size_t>(tr->dash + tr->gap)) < tr->dash;
        any |= painter.paint(q, {&s.stippled});
        if (ink) painter.paint(q, {&s.image});
        for (int o = 1; o < tr->separation; ++o) painter.paint(across(pts[i], xm, o), {&s.track});
      }
    } else if (const auto* bl = std::get_if<Blob>(&el)) {
      kind = "blob";
      require_positive(bl->w, "blob width");
      require_positive(bl->h, "blob height");
      const int x0 = bl->center.x - (bl->w - 1) / 2;
      const int y0 = bl->center.y - (bl->h - 1) / 2;
      for (int y = y0; y < y0 + bl->h; ++y) {
        for (int x = x0; x < x0 + bl->w; ++x) any |= painter.paint({x, y}, {&s.image, &s.blob});
      }
    } else if (const auto* nz = std::get_if<Noise>(&el)) {
      kind = "noise";
      if (nz->density < 0 || nz->density > 1) {
        throw std::invalid_argument("scene: noise density must lie in [0, 1]");
      }
      std::mt19937_64 rng(nz->seed);
      for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
          // 53-bit uniform in [0, 1), independent of the library's distributions.
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          if (u < nz->density) painter.paint({x, y}, {&s.image});
        }
      }
      any = true;
    }

    if (!any) {
      s.warnings.push_back("element " + std::to_string(index) + " (" + kind +
                           ") lies entirely outside the image");
    }
  }
  return s;
}

namespace {

// Portable bounded draw; std distributions differ between standard libraries.
int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

SceneSpec random_lines(int width, int height, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SceneSpec spec{width, height, {}};
  for (int i = 0; i < count; ++i) {
    const Point a{draw(rng, 0, width - 1), draw(rng, 0, height - 1)};
    const Point b{draw(rng, 0, width - 1), draw(rng, 0, height - 1)};
    spec.elements.push_back(SolidLine{a, b, 1});
  }
  return spec;
}

SceneSpec random_scene(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SceneSpec spec{width, height, {}};
  auto point = [&] { return Point{draw(rng, 0, width - 1), draw(rng, 0, height - 1)}; };
  const int lines = draw(rng, 1, 4);
  for (int i = 0; i < lines; ++i) {
    switch (draw(rng, 0, 2)) {
      case 0:
        spec.elements.push_back(SolidLine{point(), point(), draw(rng, 1, 3)});
        break;
      case 1:
        spec.elements.push_back(StippleLine{point(), point(), draw(rng, 3, 8), draw(rng, 1, 5), 1});
        break;
      default:
        spec.elements.push_back(Track{point(), point(), draw(rng, 2, 5), draw(rng, 4, 8), draw(rng, 1, 4)});
        break;
    }
  }
  const int blobs = draw(rng, 0, 3);
  for (int i = 0; i < blobs; ++i) spec.elements.push_back(Blob{point(), draw(rng, 2, 5), draw(rng, 2, 5)});
  if (draw(rng, 0, 3) == 0) spec.elements.push_back(Noise{0.01, rng()});
  return spec;
}

}  // namespace maplines::scene
