#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "maplines/binary_image.hpp"
#include "maplines/morphology.hpp"
#include "maplines/planes.hpp"

namespace maplines {

/// Which image bounds the end growth inside the Short stage.
enum class ShortMask { plane, edge };
/// How Edge combines the two perpendicular neighbors.
enum class EdgeConnective { union_of_neighbors, intersection_of_neighbors };

std::string_view to_string(ShortMask v);
std::string_view to_string(EdgeConnective v);

/// Iteration counts and formula variants of the per-plane pipeline. The
/// defaults are the published coefficients.
struct PipelineConfig {
  int short_growth = 2;          ///< fan growth steps and erosion steps in Short
  int middle_growth = 2;         ///< erosion steps in Middle; end growth is 1 fan + (n-1) single steps
  int long_len = 12;             ///< exponent of the length-gating open
  int stipple_reach_erode = 4;   ///< erosion steps after free expansion
  int stipple_reach_dilate = 3;  ///< single-direction steps after one fan step
  FanErosion fan_variant = FanErosion::union_of_shifts;
  ShortMask short_mask = ShortMask::plane;
  EdgeConnective edge_connective = EdgeConnective::union_of_neighbors;
  OpenSemantics open_semantics = OpenSemantics::ek_dk;

  /// Throws std::invalid_argument if any count is below 1.
  void validate() const;

  bool operator==(const PipelineConfig&) const = default;
};

enum class Stage { plane, edge, short_segments, middle, long_solid, long_stippled };
inline constexpr std::array<Stage, 6> kAllStages = {Stage::plane,  Stage::edge,
                                                    Stage::short_segments, Stage::middle,
                                                    Stage::long_solid, Stage::long_stippled};
/// File-name stem of a stage: plane, edge, short, middle, longb, longw.
std::string_view stage_name(Stage s);

/// Per-stage directional planes retained by extract().
class StagePlanes {
 public:
  StagePlanes(int width, int height);
  DirectionalPlanes& operator[](Stage s) { return stages_[static_cast<int>(s)]; }
  const DirectionalPlanes& operator[](Stage s) const { return stages_[static_cast<int>(s)]; }

 private:
  std::vector<DirectionalPlanes> stages_;
};

struct ExtractionResult {
  BinaryImage solid;              ///< long-solid segments merged over directions
  BinaryImage stippled_segments;  ///< long-stippled segments merged over directions
  std::optional<StagePlanes> stages;
};

struct ExtractOptions {
  bool keep_stages = false;
  bool parallel = true;  ///< run the 8 direction chains concurrently
  /// Called once per (stage, direction) after all chains finish, in stage
  /// then direction order.
  TraceHook trace;
};

/// Cores of straight segments: pixels of the plane with a same-plane
/// neighbor along the perpendicular axis (d-2 / d+2).
BinaryImage edge(const BinaryImage& plane, Direction d, const PipelineConfig& cfg);

/// Re-joins edge segments broken by contour noise, growing their ends
/// within the plane (or within the edge image, per cfg.short_mask).
BinaryImage short_segments(const BinaryImage& edge_img, const BinaryImage& plane, Direction d,
                           const PipelineConfig& cfg);

/// Closes interruptions caused by direction changes or crossings, growing
/// ends within the source image b.
BinaryImage middle_segments(const BinaryImage& short_img, const BinaryImage& b, Direction d,
                            const PipelineConfig& cfg);

/// Self-masked orthogonal-fan open of length cfg.long_len.
BinaryImage long_solid(const BinaryImage& middle_img, Direction d, const PipelineConfig& cfg);

/// Unmasked end expansion joining dashes, followed by the same length gate.
BinaryImage long_stippled(const BinaryImage& middle_img, Direction d, const PipelineConfig& cfg);

ExtractionResult extract(const BinaryImage& b, const PipelineConfig& cfg,
                         const ExtractOptions& opts = {});

}  // namespace maplines
