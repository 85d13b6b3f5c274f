#include "maplines/oracle.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace maplines::oracle {

namespace {

// Direction code -> (dx, dy); 0 = east, counterclockwise, y down.
constexpr int kStep[8][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, -1},
                             {-1, 0}, {-1, 1}, {0, 1}, {1, 1}};

int wrap(int d) { return ((d % 8) + 8) % 8; }

// f[d] at (x, y): the neighbor of (x, y) toward d.
bool look(const Grid& f, int x, int y, int d) {
  d = wrap(d);
  return f.at(x + kStep[d][0], y + kStep[d][1]);
}

template <class Pred>
Grid per_pixel(int w, int h, Pred pred) {
  Grid out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.put(x, y, pred(x, y));
  }
  return out;
}

// Shift codes i such that D f = f ∪ ⋃ f[i].
std::vector<int> dilation_shifts(Selector s) {
  const int d = s.dir.code();
  switch (s.kind) {
    case Selector::Kind::n4: return {0, 2, 4, 6};
    case Selector::Kind::n8: return {0, 1, 2, 3, 4, 5, 6, 7};
    case Selector::Kind::single: return {d + 4};
    case Selector::Kind::fan: return {d + 3, d + 4, d + 5};
    case Selector::Kind::orth_single: return {d - 2 + 4, d + 2 + 4};
    case Selector::Kind::orth_fan:
      return {d - 2 + 3, d - 2 + 4, d - 2 + 5, d + 2 + 3, d + 2 + 4, d + 2 + 5};
  }
  return {};
}

bool eroded_at(const Grid& f, int x, int y, Selector s, FanErosion v) {
  if (!f.at(x, y)) return false;
  const int d = s.dir.code();
  auto fan_ok = [&](int c) {
    const bool a = look(f, x, y, c - 1);
    const bool b = look(f, x, y, c);
    const bool e = look(f, x, y, c + 1);
    return v == FanErosion::union_of_shifts ? (a || b || e) : (a && b && e);
  };
  switch (s.kind) {
    case Selector::Kind::n4:
      return look(f, x, y, 0) && look(f, x, y, 2) && look(f, x, y, 4) && look(f, x, y, 6);
    case Selector::Kind::n8:
      for (int i = 0; i < 8; ++i) {
        if (!look(f, x, y, i)) return false;
      }
      return true;
    case Selector::Kind::single: return look(f, x, y, d);
    case Selector::Kind::fan: return fan_ok(d);
    case Selector::Kind::orth_single: return look(f, x, y, d - 2) && look(f, x, y, d + 2);
    case Selector::Kind::orth_fan: return fan_ok(d - 2) && fan_ok(d + 2);
  }
  return false;
}

Grid dilate_k(Grid f, Selector s, int k) {
  for (int i = 0; i < k; ++i) f = dilate(f, s);
  return f;
}

Grid erode_k(Grid f, Selector s, int k, FanErosion v) {
  for (int i = 0; i < k; ++i) f = erode(f, s, v);
  return f;
}

Grid open_self(const Grid& f, int d, int k, const PipelineConfig& cfg) {
  return open_close(MorphOp::open, f, Selector::orth_fan(Direction(d)), k, MorphMask::Kind::self,
                    nullptr, cfg.fan_variant, cfg.open_semantics);
}

}  // namespace

Grid from_image(const BinaryImage& img) {
  return per_pixel(img.width(), img.height(), [&](int x, int y) { return img.get(x, y); });
}

BinaryImage to_image(const Grid& g) {
  BinaryImage img(g.w, g.h);
  for (int y = 0; y < g.h; ++y) {
    for (int x = 0; x < g.w; ++x) {
      if (g.at(x, y)) img.set(x, y);
    }
  }
  return img;
}

Grid neighbor(const Grid& f, int d) {
  return per_pixel(f.w, f.h, [&](int x, int y) { return look(f, x, y, d); });
}

Grid complement(const Grid& f) {
  return per_pixel(f.w, f.h, [&](int x, int y) { return !f.at(x, y); });
}

namespace {
void same_size(const Grid& f, const Grid& g) {
  if (f.w != g.w || f.h != g.h) throw std::invalid_argument("oracle: dimension mismatch");
}
}  // namespace

Grid unite(const Grid& f, const Grid& g) {
  same_size(f, g);
  return per_pixel(f.w, f.h, [&](int x, int y) { return f.at(x, y) || g.at(x, y); });
}

Grid intersect(const Grid& f, const Grid& g) {
  same_size(f, g);
  return per_pixel(f.w, f.h, [&](int x, int y) { return f.at(x, y) && g.at(x, y); });
}

Grid difference(const Grid& f, const Grid& g) {
  same_size(f, g);
  return per_pixel(f.w, f.h, [&](int x, int y) { return f.at(x, y) && !g.at(x, y); });
}

std::vector<Grid> decompose(const Grid& b) {
  std::vector<Grid> planes;
  for (int d = 0; d < 8; ++d) {
    planes.push_back(
        per_pixel(b.w, b.h, [&](int x, int y) { return b.at(x, y) && !look(b, x, y, d + 4); }));
  }
  return planes;
}

Grid merge(const std::vector<Grid>& planes) {
  const Grid& p0 = planes.at(0);
  return per_pixel(p0.w, p0.h, [&](int x, int y) {
    for (const Grid& p : planes) {
      if (p.at(x, y)) return true;
    }
    return false;
  });
}

Grid interior8(const Grid& f) {
  return per_pixel(f.w, f.h, [&](int x, int y) {
    if (!f.at(x, y)) return false;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (!f.at(x + dx, y + dy)) return false;
      }
    }
    return true;
  });
}

Grid dilate(const Grid& f, Selector s) {
  const std::vector<int> shifts = dilation_shifts(s);
  return per_pixel(f.w, f.h, [&](int x, int y) {
    if (f.at(x, y)) return true;
    for (int i : shifts) {
      if (look(f, x, y, i)) return true;
    }
    return false;
  });
}

Grid erode(const Grid& f, Selector s, FanErosion v) {
  return per_pixel(f.w, f.h, [&](int x, int y) { return eroded_at(f, x, y, s, v); });
}

Grid masked_dilate(const Grid& f, const Grid& g, Selector s, int k) {
  same_size(f, g);
  Grid out = f;
  for (int i = 0; i < k; ++i) out = intersect(g, dilate(out, s));
  return out;
}

Grid masked_erode(const Grid& f, const Grid& g, Selector s, FanErosion v) {
  same_size(f, g);
  return erode(unite(f, g), s, v);
}

Grid open_close(MorphOp which, const Grid& f, Selector s, int k, MorphMask::Kind mask_kind,
                const Grid* mask, FanErosion v, OpenSemantics sem) {
  if (k < 1) throw std::invalid_argument("oracle open_close: k must be at least 1");
  auto once = [&](const Grid& in, int steps) {
    const Grid* m = mask_kind == MorphMask::Kind::self    ? &in
                    : mask_kind == MorphMask::Kind::image ? mask
                                                          : nullptr;
    auto grow = [&](const Grid& x) { return m ? masked_dilate(x, *m, s, steps) : dilate_k(x, s, steps); };
    if (which == MorphOp::open) return grow(erode_k(in, s, steps, v));
    return erode_k(grow(in), s, steps, v);
  };
  if (sem == OpenSemantics::ek_dk) return once(f, k);
  Grid out = f;
  for (int i = 0; i < k; ++i) out = once(out, 1);
  return out;
}

Grid end_points(const Grid& f, int d, FanErosion v) {
  return difference(f, erode(f, Selector::fan(Direction(d)), v));
}

Grid edge(const Grid& plane, int d, const PipelineConfig& cfg) {
  return per_pixel(plane.w, plane.h, [&](int x, int y) {
    if (!plane.at(x, y)) return false;
    const bool a = look(plane, x, y, d - 2);
    const bool b = look(plane, x, y, d + 2);
    return cfg.edge_connective == EdgeConnective::union_of_neighbors ? (a || b) : (a && b);
  });
}

Grid short_segments(const Grid& edge_img, const Grid& plane, int d, const PipelineConfig& cfg) {
  const Grid& mask = cfg.short_mask == ShortMask::plane ? plane : edge_img;
  Grid inner = edge_img;
  for (int side : {d - 2, d + 2}) {
    const Grid ends = end_points(edge_img, side, cfg.fan_variant);
    inner = unite(inner, masked_dilate(ends, mask, Selector::fan(Direction(side)), cfg.short_growth));
  }
  const Grid body = unite(edge_img, erode_k(inner, Selector::orth_fan(Direction(d)),
                                            cfg.short_growth, cfg.fan_variant));
  return open_self(body, d, 1, cfg);
}

Grid middle_segments(const Grid& short_img, const Grid& b, int d, const PipelineConfig& cfg) {
  Grid inner = short_img;
  for (int side : {d - 2, d + 2}) {
    const Grid ends = end_points(short_img, side, cfg.fan_variant);
    const Grid fan = masked_dilate(ends, b, Selector::fan(Direction(side)), 1);
    inner = unite(inner, masked_dilate(fan, b, Selector::single(Direction(side)),
                                       cfg.middle_growth - 1));
  }
  const Grid body = unite(short_img, erode_k(inner, Selector::orth_fan(Direction(d)),
                                             cfg.middle_growth, cfg.fan_variant));
  return open_self(body, d, 1, cfg);
}

Grid long_solid(const Grid& middle_img, int d, const PipelineConfig& cfg) {
  return open_self(middle_img, d, cfg.long_len, cfg);
}

Grid long_stippled(const Grid& middle_img, int d, const PipelineConfig& cfg) {
  Grid inner = middle_img;
  for (int side : {d - 2, d + 2}) {
    const Grid ends = end_points(middle_img, side, cfg.fan_variant);
    const Grid fan = dilate(ends, Selector::fan(Direction(side)));
    inner = unite(inner, dilate_k(fan, Selector::single(Direction(side)), cfg.stipple_reach_dilate));
  }
  const Grid body = unite(middle_img, erode_k(inner, Selector::orth_fan(Direction(d)),
                                              cfg.stipple_reach_erode, cfg.fan_variant));
  return open_self(body, d, cfg.long_len, cfg);
}

Extracted extract(const Grid& b, const PipelineConfig& cfg) {
  cfg.validate();
  const std::vector<Grid> planes = decompose(b);
  std::vector<Grid> solids;
  std::vector<Grid> stipples;
  for (int d = 0; d < 8; ++d) {
    const Grid e = edge(planes[d], d, cfg);
    const Grid s = short_segments(e, planes[d], d, cfg);
    const Grid m = middle_segments(s, b, d, cfg);
    solids.push_back(long_solid(m, d, cfg));
    stipples.push_back(long_stippled(m, d, cfg));
  }
  return {merge(solids), merge(stipples)};
}

namespace {
Grid close_n8(const Grid& f, int k) {
  return open_close(MorphOp::close, f, Selector::n8(), k, MorphMask::Kind::none, nullptr,
                    FanErosion::union_of_shifts, OpenSemantics::ek_dk);
}
}  // namespace

Grid stippled_lines(const Grid& longw, const RecognitionConfig& cfg) {
  return close_n8(longw, cfg.stipple_close);
}

Grid track_lines(const Grid& solid, const Grid& stippled, const RecognitionConfig& cfg) {
  const Grid total = unite(solid, stippled);
  const Grid closed = close_n8(total, cfg.track_close);
  return masked_dilate(difference(closed, total), closed, Selector::n8(), cfg.track_dilate);
}

Grid path_lines(const Grid& stippled, const Grid& track, const RecognitionConfig& cfg) {
  return difference(stippled, dilate_k(track, Selector::n8(), cfg.path_guard_dilate));
}

Recognized recognize(const Grid& b, const PipelineConfig& pcfg, const RecognitionConfig& rcfg) {
  rcfg.validate();
  Extracted ex = extract(b, pcfg);
  const Grid source = rcfg.stipple_source == StippleSource::long_stippled
                          ? ex.stippled_segments
                          : difference(ex.stippled_segments, ex.solid);
  Grid stippled = stippled_lines(source, rcfg);
  Grid track = track_lines(ex.solid, stippled, rcfg);
  Grid path = path_lines(stippled, track, rcfg);
  return {std::move(ex.solid), std::move(stippled), std::move(track), std::move(path)};
}

// ---------------------------------------------------------------------------
// Registry

namespace {

using Eval = std::function<std::vector<BinaryImage>(const OpInputs&)>;

const BinaryImage& operand(const OpInputs& in, std::size_t i, std::string_view op) {
  if (in.images.size() <= i) {
    throw std::invalid_argument(std::string(op) + ": expected at least " + std::to_string(i + 1) +
                                " input image(s)");
  }
  return in.images[i];
}

std::vector<BinaryImage> one(const Grid& g) { return {to_image(g)}; }

std::vector<BinaryImage> many(const std::vector<Grid>& gs) {
  std::vector<BinaryImage> out;
  for (const Grid& g : gs) out.push_back(to_image(g));
  return out;
}

std::vector<BinaryImage> many(const DirectionalPlanes& planes) {
  std::vector<BinaryImage> out;
  for (Direction d : Direction::all()) out.push_back(planes[d]);
  return out;
}

struct Entry {
  Eval oracle;
  Eval packed;
};

const std::map<std::string, Entry, std::less<>>& registry() {
  static const std::map<std::string, Entry, std::less<>> table = [] {
    std::map<std::string, Entry, std::less<>> t;
    auto g = [](const OpInputs& in, std::size_t i, const char* op) {
      return from_image(operand(in, i, op));
    };
    auto img = [](const OpInputs& in, std::size_t i, const char* op) -> const BinaryImage& {
      return operand(in, i, op);
    };
    t["neighbor"] = {
        [=](const OpInputs& in) { return one(neighbor(g(in, 0, "neighbor"), in.direction.code())); },
        [=](const OpInputs& in) {
          return std::vector{maplines::neighbor(img(in, 0, "neighbor"), in.direction)};
        }};
    t["complement"] = {
        [=](const OpInputs& in) { return one(complement(g(in, 0, "complement"))); },
        [=](const OpInputs& in) {
          return std::vector{maplines::complement(img(in, 0, "complement"))};
        }};
    t["union"] = {
        [=](const OpInputs& in) { return one(unite(g(in, 0, "union"), g(in, 1, "union"))); },
        [=](const OpInputs& in) {
          return std::vector{maplines::unite(img(in, 0, "union"), img(in, 1, "union"))};
        }};
    t["intersection"] = {
        [=](const OpInputs& in) {
          return one(intersect(g(in, 0, "intersection"), g(in, 1, "intersection")));
        },
        [=](const OpInputs& in) {
          return std::vector{
              maplines::intersect(img(in, 0, "intersection"), img(in, 1, "intersection"))};
        }};
    t["difference"] = {
        [=](const OpInputs& in) {
          return one(difference(g(in, 0, "difference"), g(in, 1, "difference")));
        },
        [=](const OpInputs& in) {
          return std::vector{
              maplines::difference(img(in, 0, "difference"), img(in, 1, "difference"))};
        }};
    t["decompose"] = {
        [=](const OpInputs& in) { return many(decompose(g(in, 0, "decompose"))); },
        [=](const OpInputs& in) { return many(maplines::decompose(img(in, 0, "decompose"))); }};
    t["interior8"] = {
        [=](const OpInputs& in) { return one(interior8(g(in, 0, "interior8"))); },
        [=](const OpInputs& in) {
          return std::vector{maplines::interior8(img(in, 0, "interior8"))};
        }};
    t["dilate"] = {
        [=](const OpInputs& in) { return one(dilate_k(g(in, 0, "dilate"), in.selector, in.k)); },
        [=](const OpInputs& in) {
          return std::vector{maplines::dilate(img(in, 0, "dilate"), in.selector, in.k)};
        }};
    t["erode"] = {
        [=](const OpInputs& in) {
          return one(erode_k(g(in, 0, "erode"), in.selector, in.k, in.variant));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::erode(img(in, 0, "erode"), in.selector, in.k, in.variant)};
        }};
    t["masked_dilate"] = {
        [=](const OpInputs& in) {
          return one(masked_dilate(g(in, 0, "masked_dilate"), g(in, 1, "masked_dilate"),
                                   in.selector, in.k));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::masked_dilate(
              img(in, 0, "masked_dilate"), img(in, 1, "masked_dilate"), in.selector, in.k)};
        }};
    t["masked_erode"] = {
        [=](const OpInputs& in) {
          return one(masked_erode(g(in, 0, "masked_erode"), g(in, 1, "masked_erode"),
                                  in.selector, in.variant));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::masked_erode(
              img(in, 0, "masked_erode"), img(in, 1, "masked_erode"), in.selector, in.variant)};
        }};
    t["open_close"] = {
        [=](const OpInputs& in) {
          const Grid f = g(in, 0, "open_close");
          std::optional<Grid> m;
          if (in.mask == MorphMask::Kind::image) m = g(in, 1, "open_close");
          return one(open_close(in.which, f, in.selector, in.k, in.mask, m ? &*m : nullptr,
                                in.variant, in.semantics));
        },
        [=](const OpInputs& in) {
          OpenCloseParams p;
          p.selector = in.selector;
          p.k = in.k;
          p.variant = in.variant;
          p.semantics = in.semantics;
          p.mask = in.mask == MorphMask::Kind::self    ? MorphMask::self()
                   : in.mask == MorphMask::Kind::image ? MorphMask::image(img(in, 1, "open_close"))
                                                       : MorphMask::none();
          return std::vector{maplines::open_close(in.which, img(in, 0, "open_close"), p)};
        }};
    t["end_points"] = {
        [=](const OpInputs& in) {
          return one(end_points(g(in, 0, "end_points"), in.direction.code(), in.variant));
        },
        [=](const OpInputs& in) {
          return std::vector{
              maplines::end_points(img(in, 0, "end_points"), in.direction, in.variant)};
        }};
    t["edge"] = {
        [=](const OpInputs& in) {
          return one(edge(g(in, 0, "edge"), in.direction.code(), in.pipeline));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::edge(img(in, 0, "edge"), in.direction, in.pipeline)};
        }};
    t["short"] = {
        [=](const OpInputs& in) {
          return one(short_segments(g(in, 0, "short"), g(in, 1, "short"), in.direction.code(),
                                    in.pipeline));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::short_segments(img(in, 0, "short"), img(in, 1, "short"),
                                                      in.direction, in.pipeline)};
        }};
    t["middle"] = {
        [=](const OpInputs& in) {
          return one(middle_segments(g(in, 0, "middle"), g(in, 1, "middle"), in.direction.code(),
                                     in.pipeline));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::middle_segments(img(in, 0, "middle"), img(in, 1, "middle"),
                                                       in.direction, in.pipeline)};
        }};
    t["long_solid"] = {
        [=](const OpInputs& in) {
          return one(long_solid(g(in, 0, "long_solid"), in.direction.code(), in.pipeline));
        },
        [=](const OpInputs& in) {
          return std::vector{
              maplines::long_solid(img(in, 0, "long_solid"), in.direction, in.pipeline)};
        }};
    t["long_stippled"] = {
        [=](const OpInputs& in) {
          return one(long_stippled(g(in, 0, "long_stippled"), in.direction.code(), in.pipeline));
        },
        [=](const OpInputs& in) {
          return std::vector{
              maplines::long_stippled(img(in, 0, "long_stippled"), in.direction, in.pipeline)};
        }};
    t["extract"] = {
        [=](const OpInputs& in) {
          Extracted ex = extract(g(in, 0, "extract"), in.pipeline);
          return many(std::vector<Grid>{ex.solid, ex.stippled_segments});
        },
        [=](const OpInputs& in) {
          ExtractOptions opts;
          opts.parallel = false;
          ExtractionResult ex = maplines::extract(img(in, 0, "extract"), in.pipeline, opts);
          return std::vector{ex.solid, ex.stippled_segments};
        }};
    t["stippled_lines"] = {
        [=](const OpInputs& in) {
          return one(stippled_lines(g(in, 0, "stippled_lines"), in.recognition));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::stippled_lines(img(in, 0, "stippled_lines"), in.recognition)};
        }};
    t["track_lines"] = {
        [=](const OpInputs& in) {
          return one(track_lines(g(in, 0, "track_lines"), g(in, 1, "track_lines"), in.recognition));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::track_lines(img(in, 0, "track_lines"),
                                                   img(in, 1, "track_lines"), in.recognition)};
        }};
    t["path_lines"] = {
        [=](const OpInputs& in) {
          return one(path_lines(g(in, 0, "path_lines"), g(in, 1, "path_lines"), in.recognition));
        },
        [=](const OpInputs& in) {
          return std::vector{maplines::path_lines(img(in, 0, "path_lines"),
                                                  img(in, 1, "path_lines"), in.recognition)};
        }};
    t["recognize"] = {
        [=](const OpInputs& in) {
          Recognized r = recognize(g(in, 0, "recognize"), in.pipeline, in.recognition);
          return many(std::vector<Grid>{r.solid, r.stippled, r.track, r.path});
        },
        [=](const OpInputs& in) {
          ExtractOptions opts;
          opts.parallel = false;
          RecognitionResult r =
              maplines::recognize(img(in, 0, "recognize"), in.pipeline, in.recognition, opts);
          return std::vector{r.solid, r.stippled, r.track, r.path};
        }};
    return t;
  }();
  return table;
}

const Entry& lookup(std::string_view op_id) {
  const auto& table = registry();
  auto it = table.find(op_id);
  if (it == table.end()) {
    throw std::invalid_argument("unknown operation id '" + std::string(op_id) + "'");
  }
  return it->second;
}

}  // namespace

const std::vector<std::string>& registered_ops() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, entry] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

std::vector<BinaryImage> oracle_eval(std::string_view op_id, const OpInputs& in) {
  return lookup(op_id).oracle(in);
}

std::vector<BinaryImage> packed_eval(std::string_view op_id, const OpInputs& in) {
  return lookup(op_id).packed(in);
}

}  // namespace maplines::oracle
