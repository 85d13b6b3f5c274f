// Every registered operation, packed against the reference, on 10,000
// random 32x32 images with randomly drawn parameters.

#include "doctest.h"
#include "maplines/oracle.hpp"
#include "support.hpp"

using namespace maplines;
using namespace maplines::testing;

namespace {

oracle::OpInputs random_inputs(Rng& rng) {
  oracle::OpInputs in;
  const double density = rng.real(0.05, 0.9);
  in.images = {random_image(rng, 32, 32, density), random_image(rng, 32, 32, rng.real(0.05, 0.9))};
  in.selector = random_selector(rng);
  in.direction = rng.direction();
  in.k = rng.uniform(1, 3);
  in.variant = rng.chance(0.5) ? FanErosion::union_of_shifts : FanErosion::intersection_of_shifts;
  in.which = rng.chance(0.5) ? MorphOp::open : MorphOp::close;
  in.mask = static_cast<MorphMask::Kind>(rng.uniform(0, 2));
  in.semantics = rng.chance(0.5) ? OpenSemantics::ek_dk : OpenSemantics::repeated;
  in.pipeline.fan_variant = in.variant;
  in.pipeline.short_mask = rng.chance(0.8) ? ShortMask::plane : ShortMask::edge;
  in.pipeline.edge_connective = rng.chance(0.8) ? EdgeConnective::union_of_neighbors
                                                : EdgeConnective::intersection_of_neighbors;
  in.recognition.stipple_source = rng.chance(0.8) ? StippleSource::long_stippled_minus_solid
                                                  : StippleSource::long_stippled;
  return in;
}

}  // namespace

TEST_CASE("every registered op matches the oracle on 10,000 random 32x32 images") {
  Rng rng(20240601);
  std::size_t cases = 0, mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const oracle::OpInputs in = random_inputs(rng);
    for (const std::string& op : oracle::registered_ops()) {
      ++cases;
      if (oracle::packed_eval(op, in) != oracle::oracle_eval(op, in)) {
        ++mismatches;
        if (mismatches <= 5) MESSAGE("mismatch: op " << op << " image " << i);
      }
    }
  }
  MESSAGE(cases << " cases");
  CHECK(cases == 10000 * oracle::registered_ops().size());
  CHECK(mismatches == 0);
}
