#include "maplines/extraction.hpp"

#include <functional>
#include <future>
#include <stdexcept>
#include <string>

namespace maplines {

std::string_view to_string(ShortMask v) { return v == ShortMask::plane ? "plane" : "edge"; }

std::string_view to_string(EdgeConnective v) {
  return v == EdgeConnective::union_of_neighbors ? "union" : "intersection";
}

void PipelineConfig::validate() const {
  const std::pair<const char*, int> counts[] = {
      {"short_growth", short_growth},
      {"middle_growth", middle_growth},
      {"long_len", long_len},
      {"stipple_reach_erode", stipple_reach_erode},
      {"stipple_reach_dilate", stipple_reach_dilate},
  };
  for (const auto& [name, value] : counts) {
    if (value < 1) {
      throw std::invalid_argument(std::string("PipelineConfig: ") + name +
                                  " must be at least 1, got " + std::to_string(value));
    }
  }
}

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::plane: return "plane";
    case Stage::edge: return "edge";
    case Stage::short_segments: return "short";
    case Stage::middle: return "middle";
    case Stage::long_solid: return "longb";
    case Stage::long_stippled: return "longw";
  }
  return "unknown";
}

StagePlanes::StagePlanes(int width, int height)
    : stages_(kAllStages.size(), DirectionalPlanes(width, height)) {}

namespace {

using Grow = std::function<BinaryImage(const BinaryImage& ends, Direction toward)>;

// Open_{>*d;self}^k
BinaryImage gate(const BinaryImage& f, Direction d, int k, const PipelineConfig& cfg) {
  OpenCloseParams p;
  p.selector = Selector::orth_fan(d);
  p.k = k;
  p.mask = MorphMask::self();
  p.variant = cfg.fan_variant;
  p.semantics = cfg.open_semantics;
  return open(f, p);
}

// Open^gate_k { base ∪ E^erode_steps_{>*d}( base ∪ grow(End_{d-2} base) ∪ grow(End_{d+2} base) ) }
BinaryImage rejoin(const BinaryImage& base, Direction d, const Grow& grow, int erode_steps,
                   int gate_k, const PipelineConfig& cfg) {
  BinaryImage grown = base;
  for (Direction side : {d - 2, d + 2}) {
    grown |= grow(end_points(base, side, cfg.fan_variant), side);
  }
  BinaryImage joined = erode(grown, Selector::orth_fan(d), erode_steps, cfg.fan_variant);
  joined |= base;
  return gate(joined, d, gate_k, cfg);
}

struct Chain {
  BinaryImage plane, edge, short_img, middle, longb, longw;
};

Chain run_chain(const BinaryImage& b, const BinaryImage& plane, Direction d,
                const PipelineConfig& cfg) {
  BinaryImage e = edge(plane, d, cfg);
  BinaryImage s = short_segments(e, plane, d, cfg);
  BinaryImage m = middle_segments(s, b, d, cfg);
  BinaryImage lb = long_solid(m, d, cfg);
  BinaryImage lw = long_stippled(m, d, cfg);
  return {plane, std::move(e), std::move(s), std::move(m), std::move(lb), std::move(lw)};
}

}  // namespace

BinaryImage edge(const BinaryImage& plane, Direction d, const PipelineConfig& cfg) {
  if (cfg.edge_connective == EdgeConnective::intersection_of_neighbors) {
    BinaryImage out = plane;
    kernel::and_neighbor(out, plane, d - 2);
    kernel::and_neighbor(out, plane, d + 2);
    return out;
  }
  BinaryImage support(plane.width(), plane.height());
  kernel::or_neighbor(support, plane, d - 2);
  kernel::or_neighbor(support, plane, d + 2);
  support &= plane;
  return support;
}

BinaryImage short_segments(const BinaryImage& edge_img, const BinaryImage& plane, Direction d,
                           const PipelineConfig& cfg) {
  require_same_size(edge_img, plane, "short_segments");
  const BinaryImage& mask = cfg.short_mask == ShortMask::plane ? plane : edge_img;
  Grow grow = [&](const BinaryImage& ends, Direction toward) {
    return masked_dilate(ends, mask, Selector::fan(toward), cfg.short_growth);
  };
  return rejoin(edge_img, d, grow, cfg.short_growth, 1, cfg);
}

BinaryImage middle_segments(const BinaryImage& short_img, const BinaryImage& b, Direction d,
                            const PipelineConfig& cfg) {
  require_same_size(short_img, b, "middle_segments");
  Grow grow = [&](const BinaryImage& ends, Direction toward) {
    BinaryImage g = masked_dilate(ends, b, Selector::fan(toward), 1);
    return masked_dilate(g, b, Selector::single(toward), cfg.middle_growth - 1);
  };
  return rejoin(short_img, d, grow, cfg.middle_growth, 1, cfg);
}

BinaryImage long_solid(const BinaryImage& middle_img, Direction d, const PipelineConfig& cfg) {
  return gate(middle_img, d, cfg.long_len, cfg);
}

BinaryImage long_stippled(const BinaryImage& middle_img, Direction d, const PipelineConfig& cfg) {
  Grow grow = [&](const BinaryImage& ends, Direction toward) {
    return dilate(dilate(ends, Selector::fan(toward)), Selector::single(toward),
                  cfg.stipple_reach_dilate);
  };
  return rejoin(middle_img, d, grow, cfg.stipple_reach_erode, cfg.long_len, cfg);
}

ExtractionResult extract(const BinaryImage& b, const PipelineConfig& cfg,
                         const ExtractOptions& opts) {
  cfg.validate();
  const DirectionalPlanes planes = decompose(b);

  std::vector<Chain> chains;
  chains.reserve(8);
  if (opts.parallel) {
    std::vector<std::future<Chain>> pending;
    for (Direction d : Direction::all()) {
      pending.push_back(std::async(std::launch::async, [&b, &planes, &cfg, d] {
        return run_chain(b, planes[d], d, cfg);
      }));
    }
    for (auto& f : pending) chains.push_back(f.get());
  } else {
    for (Direction d : Direction::all()) chains.push_back(run_chain(b, planes[d], d, cfg));
  }

  ExtractionResult result{BinaryImage(b.width(), b.height()),
                          BinaryImage(b.width(), b.height()), std::nullopt};
  for (const Chain& c : chains) {
    result.solid |= c.longb;
    result.stippled_segments |= c.longw;
  }

  if (opts.keep_stages || opts.trace) {
    StagePlanes stages(b.width(), b.height());
    for (Direction d : Direction::all()) {
      Chain& c = chains[d.code()];
      stages[Stage::plane].assign(d, std::move(c.plane));
      stages[Stage::edge].assign(d, std::move(c.edge));
      stages[Stage::short_segments].assign(d, std::move(c.short_img));
      stages[Stage::middle].assign(d, std::move(c.middle));
      stages[Stage::long_solid].assign(d, std::move(c.longb));
      stages[Stage::long_stippled].assign(d, std::move(c.longw));
    }
    if (opts.trace) {
      for (Stage s : kAllStages) {
        for (Direction d : Direction::all()) opts.trace(stage_name(s), d, stages[s][d]);
      }
    }
    if (opts.keep_stages) result.stages = std::move(stages);
  }
  return result;
}

}  // namespace maplines
