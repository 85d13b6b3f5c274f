#include "maplines/equivalence.hpp"

#include <random>

#include "maplines/scene.hpp"

namespace maplines::oracle {

namespace {

constexpr std::size_t kMaxExamples = 10;

std::string describe(const Selector& s) {
  static const char* names[] = {"n4", "n8", "single", "fan", "orth_single", "orth_fan"};
  std::string out = names[static_cast<int>(s.kind)];
  if (s.kind != Selector::Kind::n4 && s.kind != Selector::Kind::n8) {
    out += "(" + std::to_string(s.dir.code()) + ")";
  }
  return out;
}

std::vector<Selector> all_selectors() {
  std::vector<Selector> v = {Selector::n4(), Selector::n8()};
  for (Direction d : Direction::all()) {
    v.push_back(Selector::single(d));
    v.push_back(Selector::fan(d));
    v.push_back(Selector::orth_single(d));
    v.push_back(Selector::orth_fan(d));
  }
  return v;
}

BinaryImage image_from_bits(int w, int h, std::uint32_t bits) {
  BinaryImage img(w, h);
  for (int i = 0; i < w * h; ++i) {
    if ((bits >> i) & 1u) img.set(i % w, i / w);
  }
  return img;
}

std::string bits_label(int w, int h, std::uint32_t bits) {
  return std::to_string(w) + "x" + std::to_string(h) + "#" + std::to_string(bits);
}

}  // namespace

void SweepReport::record(bool equal, const std::string& what) {
  ++cases;
  if (equal) return;
  ++mismatches;
  if (examples.size() < kMaxExamples) examples.push_back(what);
}

void compare(SweepReport& report, const std::string& op_id, const OpInputs& in,
             const std::string& label) {
  const auto expected = oracle_eval(op_id, in);
  const auto actual = packed_eval(op_id, in);
  report.record(expected == actual, op_id + " " + label);
}

SweepReport exhaustive_primitive_sweep(int max_size) {
  SweepReport report;
  const auto selectors = all_selectors();
  const FanErosion variants[] = {FanErosion::union_of_shifts, FanErosion::intersection_of_shifts};

  for (int h = 1; h <= max_size; ++h) {
    for (int w = 1; w <= max_size; ++w) {
      const std::uint32_t count = 1u << (w * h);
      const std::uint32_t all = count - 1;
      for (std::uint32_t bits = 0; bits < count; ++bits) {
        const BinaryImage f = image_from_bits(w, h, bits);
        const std::string base = bits_label(w, h, bits);
        // Second operands: empty, full, complement, and a rotating pattern.
        const std::uint32_t mask_bits[] = {0u, all, all & ~bits, (bits * 2654435761u) & all};

        OpInputs in;
        in.images = {f};
        for (Direction d : Direction::all()) {
          in.direction = d;
          compare(report, "neighbor", in, base + " d" + std::to_string(d.code()));
          for (FanErosion v : variants) {
            in.variant = v;
            compare(report, "end_points", in,
                    base + " d" + std::to_string(d.code()) + " " + std::string(to_string(v)));
          }
        }
        compare(report, "decompose", in, base);
        compare(report, "interior8", in, base);
        compare(report, "complement", in, base);

        for (const Selector& s : selectors) {
          in.selector = s;
          in.k = 1;
          compare(report, "dilate", in, base + " " + describe(s));
          for (FanErosion v : variants) {
            in.variant = v;
            compare(report, "erode", in, base + " " + describe(s) + " " + std::string(to_string(v)));
          }
        }

        for (std::uint32_t mb : mask_bits) {
          const BinaryImage g = image_from_bits(w, h, mb);
          const std::string label = base + " g=" + std::to_string(mb);
          OpInputs pair;
          pair.images = {f, g};
          compare(report, "union", pair, label);
          compare(report, "intersection", pair, label);
          compare(report, "difference", pair, label);
          for (const Selector& s : selectors) {
            pair.selector = s;
            pair.k = 2;
            compare(report, "masked_dilate", pair, label + " " + describe(s));
            for (FanErosion v : variants) {
              pair.variant = v;
              compare(report, "masked_erode", pair,
                      label + " " + describe(s) + " " + std::string(to_string(v)));
            }
          }
          // Open/close with an image mask, orthogonal fan only, both variants.
          pair.mask = MorphMask::Kind::image;
          for (MorphOp which : {MorphOp::open, MorphOp::close}) {
            pair.which = which;
            pair.selector = Selector::orth_fan(Direction(static_cast<int>(mb % 8)));
            for (FanErosion v : variants) {
              pair.variant = v;
              compare(report, "open_close", pair, label + " image-mask");
            }
          }
        }

        for (const Selector& s : selectors) {
          in.selector = s;
          for (MorphOp which : {MorphOp::open, MorphOp::close}) {
            in.which = which;
            for (MorphMask::Kind mk : {MorphMask::Kind::none, MorphMask::Kind::self}) {
              in.mask = mk;
              for (OpenSemantics sem : {OpenSemantics::ek_dk, OpenSemantics::repeated}) {
                in.semantics = sem;
                in.k = 2;
                in.variant = FanErosion::union_of_shifts;
                compare(report, "open_close", in, base + " " + describe(s));
              }
            }
          }
        }
        in.mask = MorphMask::Kind::none;
      }
    }
  }
  return report;
}

BinaryImage random_image(int width, int height, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BinaryImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) img.set(x, y);
    }
  }
  return img;
}

namespace {

void compare_pipeline(SweepReport& report, const BinaryImage& img, const PipelineConfig& pcfg,
                      const RecognitionConfig& rcfg, const std::string& label) {
  OpInputs in;
  in.images = {img};
  in.pipeline = pcfg;
  in.recognition = rcfg;
  compare(report, "extract", in, label);
  compare(report, "recognize", in, label);
}

}  // namespace

SweepReport random_pipeline_sweep(int count, int width, int height, std::uint64_t seed,
                                  const PipelineConfig& pcfg, const RecognitionConfig& rcfg) {
  SweepReport report;
  std::mt19937_64 rng(seed);
  // Densities spanning sparse specks to near-solid fill.
  const double densities[] = {0.05, 0.15, 0.3, 0.5, 0.7, 0.9};
  for (int i = 0; i < count; ++i) {
    const double density = densities[i % std::size(densities)];
    const std::uint64_t s = rng();
    compare_pipeline(report, random_image(width, height, density, s), pcfg, rcfg,
                     "random#" + std::to_string(i) + " seed=" + std::to_string(s));
  }
  return report;
}

SweepReport scene_pipeline_sweep(int count, int width, int height, std::uint64_t seed,
                                 const PipelineConfig& pcfg, const RecognitionConfig& rcfg) {
  SweepReport report;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = rng();
    const scene::Scene sc = scene::synth(scene::random_scene(width, height, s));
    compare_pipeline(report, sc.image, pcfg, rcfg,
                     "scene#" + std::to_string(i) + " seed=" + std::to_string(s));
  }
  return report;
}

}  // namespace maplines::oracle
