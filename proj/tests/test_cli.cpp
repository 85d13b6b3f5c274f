#include <filesystem>
#include <random>
#include <sstream>

#include "bench.hpp"
#include "cli.hpp"
#include "config_file.hpp"
#include "doctest.h"
#include "json.hpp"
#include "maplines/imageio.hpp"
#include "support.hpp"

using namespace maplines;
using namespace maplines::testing;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path kConfigs = fs::path(MAPLINES_SOURCE_DIR) / "configs";

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("maplines_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json read_json(const std::string& path) { return json::parse(io::read_file(path)); }

}  // namespace

TEST_CASE("config parsing") {
  const cli::RunConfig c = cli::parse_config(R"(
    # every field
    short_growth = 3
    middle_growth = 1
    long_len = 10          # trailing comment
    stipple_reach_erode = 5
    stipple_reach_dilate = 2
    fan_variant = intersection
    short_mask = edge
    edge_connective = intersection
    open_semantics = repeated
    stipple_source = longw
    stipple_close = 3
    track_close = 4
    track_dilate = 1
    path_guard_dilate = 5
    gray_threshold = 100
    seed = 42

    [color ink]
    intensity = 0 0.3
    [color blue]
    hue = 180 260
    saturation_min = 0.2

    [scene]
    width = 64
    height = 32
    solid_line = 1 2 30 2
    solid_line = 1 5 30 5 2
    stipple_line = 0 10 60 10 6 3
    track = 0 20 60 20 3 6 3
    blob = 10 10 3 2
    noise = 0.01
    noise = 0.02 9
  )");
  CHECK(c.pipeline.short_growth == 3);
  CHECK(c.pipeline.middle_growth == 1);
  CHECK(c.pipeline.long_len == 10);
  CHECK(c.pipeline.stipple_reach_erode == 5);
  CHECK(c.pipeline.stipple_reach_dilate == 2);
  CHECK(c.pipeline.fan_variant == FanErosion::intersection_of_shifts);
  CHECK(c.pipeline.short_mask == ShortMask::edge);
  CHECK(c.pipeline.edge_connective == EdgeConnective::intersection_of_neighbors);
  CHECK(c.pipeline.open_semantics == OpenSemantics::repeated);
  CHECK(c.recognition.stipple_source == StippleSource::long_stippled);
  CHECK(c.recognition.stipple_close == 3);
  CHECK(c.recognition.track_close == 4);
  CHECK(c.recognition.track_dilate == 1);
  CHECK(c.recognition.path_guard_dilate == 5);
  CHECK(c.gray_threshold == 100);
  CHECK(c.seed == 42);
  REQUIRE(c.colors.size() == 2);
  CHECK(c.colors[0].name == "ink");
  CHECK(c.colors[0].intensity_range == std::pair{0.0, 0.3});
  CHECK(c.colors[1].hue_range == std::pair{180.0, 260.0});
  REQUIRE(c.scene.has_value());
  CHECK(c.scene->width == 64);
  CHECK(c.scene->elements.size() == 7);
  CHECK(std::get<scene::SolidLine>(c.scene->elements[1]).thickness == 2);
  CHECK(c.unseeded_noise == std::vector<std::size_t>{5});
  const scene::SceneSpec resolved = c.resolved_scene();
  CHECK(std::get<scene::Noise>(resolved.elements[5]).seed == 47);
  CHECK(std::get<scene::Noise>(resolved.elements[6]).seed == 9);

  SUBCASE("canonical text round trips") {
    const cli::RunConfig back = cli::parse_config(cli::to_config_text(c));
    CHECK(back.pipeline == c.pipeline);
    CHECK(back.recognition == c.recognition);
    CHECK(back.gray_threshold == c.gray_threshold);
    CHECK(back.seed == c.seed);
    CHECK(back.colors.size() == 2);
    CHECK(back.colors[1].hue_range == c.colors[1].hue_range);
    CHECK(back.colors[1].saturation_min == c.colors[1].saturation_min);
    CHECK(back.unseeded_noise == c.unseeded_noise);
    CHECK(scene::synth(back.resolved_scene()).image == scene::synth(c.resolved_scene()).image);
  }
}

TEST_CASE("config errors name the line") {
  auto error_of = [](std::string_view text) -> std::string {
    try {
      cli::parse_config(text, "t.conf");
    } catch (const cli::ConfigError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(error_of("long_len = 12\nbogus = 1\n").starts_with("t.conf:2: unknown key 'bogus'"));
  CHECK(error_of("long_len = twelve").find("invalid number 'twelve'") != std::string::npos);
  CHECK(error_of("long_len = 0").find("at least 1") != std::string::npos);
  CHECK(error_of("long_len").find("expected 'key = value'") != std::string::npos);
  CHECK(error_of("long_len =").find("missing value") != std::string::npos);
  CHECK(error_of("fan_variant = both").find("union") != std::string::npos);
  CHECK(error_of("[scene\n").find("unterminated") != std::string::npos);
  CHECK(error_of("[colour x]").find("unknown section") != std::string::npos);
  CHECK(error_of("[color a]\n[color a]").find("duplicate") != std::string::npos);
  CHECK(error_of("[color a]\nsaturation_min = 3").find("saturation_min") != std::string::npos);
  CHECK(error_of("[scene]\nsolid_line = 1 2 3").find("expects 4-5 values") != std::string::npos);
  CHECK(error_of("[scene]\nnoise = 2").find("density") != std::string::npos);
  CHECK(error_of("gray_threshold = 300").find("gray_threshold") != std::string::npos);
  CHECK_THROWS_AS(cli::parse_config("seed = 1").resolved_scene(), cli::ConfigError);
  CHECK_THROWS_AS(cli::load_config("/nonexistent/maplines.conf"), cli::ConfigError);
}

TEST_CASE("shipped configs parse") {
  const cli::RunConfig d = cli::load_config((kConfigs / "default.conf").string());
  CHECK(d.pipeline == PipelineConfig{});
  CHECK(d.recognition == RecognitionConfig{});
  CHECK(d.colors.size() == 3);
  const cli::RunConfig s = cli::load_config((kConfigs / "scene.conf").string());
  REQUIRE(s.scene.has_value());
  CHECK(s.scene->elements.size() == 9);
}

TEST_CASE("sha256 and median helpers") {
  CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(cli::median({3, 1, 2}) == 2);
  CHECK(cli::median({4, 1, 3, 2}) == 2.5);
  CHECK_THROWS_AS(cli::median({}), std::invalid_argument);
  int calls = 0;
  CHECK(cli::time_runs([&] { ++calls; }, 5, 1).size() == 5);
  CHECK(calls == 6);
}

TEST_CASE("check subcommand") {
  const Run r = run({"check", "--max-size", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("exhaustive primitives up to 3x3: 570834 cases, 0 mismatches") != std::string::npos);
  CHECK(r.out.find("check passed") != std::string::npos);

  const Run p = run({"check", "--max-size", "0", "--random", "2", "--scenes", "2", "--size", "24"});
  CHECK(p.code == 0);
  CHECK(p.out.find("random images 24x24: 4 cases, 0 mismatches") != std::string::npos);
  CHECK(p.out.find("random scenes 24x24: 4 cases, 0 mismatches") != std::string::npos);
}

TEST_CASE("decompose writes eight planes") {
  TempDir dir;
  io::write_binary(BinaryImage(20, 10), dir / "empty.pbm");
  const Run r = run({"decompose", dir / "empty.pbm", "--out", dir / "out"});
  REQUIRE(r.code == 0);
  for (int d = 0; d < 8; ++d) {
    CHECK(io::read_binary(dir / ("out/plane_d" + std::to_string(d) + ".pbm")).none());
  }
  const std::string bin = io::read_file(dir / "out/planes.bin");
  CHECK(bin == cli::planes_header(20, 10) + std::string(200, '\0'));

  const BinaryImage b = from_rows({"......", ".###..", "......"});
  io::write_binary(b, dir / "run.pbm");
  REQUIRE(run({"decompose", dir / "run.pbm", "--out", dir / "run"}).code == 0);
  CHECK(io::read_binary(dir / "run/plane_d0.pbm") == with_pixels(6, 3, {{1, 1}}));
  const std::string rb = io::read_file(dir / "run/planes.bin").substr(cli::planes_header(6, 3).size());
  CHECK(static_cast<unsigned char>(rb[6 + 1]) == 0xEF);  // west end: every plane but 4
}

TEST_CASE("synth, extract and recognize round trip") {
  TempDir dir;
  const std::string scene_conf = (kConfigs / "scene.conf").string();
  const Run s = run({"synth", "--config", scene_conf, "--out", dir / "scene"});
  REQUIRE(s.code == 0);
  for (const char* f : {"scene.pbm", "truth_solid.pbm", "truth_stippled.pbm", "truth_path.pbm",
                        "truth_track.pbm", "truth_blob.pbm", "manifest.json"}) {
    CHECK(fs::exists(dir / ("scene/" + std::string(f))));
  }
  const std::string img = dir / "scene/scene.pbm";

  const Run rec = run({"recognize", img, "--out", dir / "rec"});
  REQUIRE(rec.code == 0);
  CHECK(rec.out.find("track: 870") != std::string::npos);
  CHECK(io::read_binary(dir / "rec/path.pbm").popcount() == 501);
  CHECK(io::read_color(dir / "rec/overlay.ppm").width == 256);

  SUBCASE("manifest contents") {
    const json m = read_json(dir / "rec/manifest.json");
    CHECK(m["command"] == "recognize");
    CHECK(m["inputs"][0]["sha256"] == cli::sha256_hex(io::read_file(img)));
    CHECK(m["outputs"].size() == 6);  // five images and the manifest
    CHECK(m["timings_ms"].contains("extract"));
    const json& cfg = m["config"];
    for (const char* k : {"short_growth", "middle_growth", "long_len", "stipple_reach_erode",
                          "stipple_reach_dilate", "fan_variant", "short_mask", "edge_connective",
                          "open_semantics"}) {
      CHECK(cfg["pipeline"].contains(k));
    }
    for (const char* k : {"stipple_source", "stipple_close", "track_close", "track_dilate",
                          "path_guard_dilate"}) {
      CHECK(cfg["recognition"].contains(k));
    }
    CHECK(cfg.contains("gray_threshold"));
  }

  SUBCASE("outputs are byte-identical across runs") {
    REQUIRE(run({"recognize", img, "--out", dir / "rec2"}).code == 0);
    for (const char* f : {"solid.pbm", "stippled.pbm", "track.pbm", "path.pbm", "overlay.ppm"}) {
      CHECK(io::read_file(dir / ("rec/" + std::string(f))) ==
            io::read_file(dir / ("rec2/" + std::string(f))));
    }
    REQUIRE(run({"synth", "--config", scene_conf, "--out", dir / "scene2"}).code == 0);
    CHECK(io::read_file(dir / "scene/scene.pbm") == io::read_file(dir / "scene2/scene.pbm"));
  }

  SUBCASE("a manifest replays the run") {
    REQUIRE(run({"extract", img, "--out", dir / "e1", "--fan-variant", "intersection", "--seed", "5"}).code == 0);
    const json m1 = read_json(dir / "e1/manifest.json");
    CHECK(m1["config"]["pipeline"]["fan_variant"] == "intersection");
    CHECK(m1["config"]["seed"] == 5);
    REQUIRE(run({"extract", img, "--out", dir / "e2", "--config", dir / "e1/manifest.json"}).code == 0);
    const json m2 = read_json(dir / "e2/manifest.json");
    CHECK(m2["config"] == m1["config"]);
    CHECK(io::read_file(dir / "e1/solid.pbm") == io::read_file(dir / "e2/solid.pbm"));
    CHECK(io::read_file(dir / "e1/stippled_segments.pbm") ==
          io::read_file(dir / "e2/stippled_segments.pbm"));
  }

  SUBCASE("stage dumps") {
    REQUIRE(run({"extract", img, "--out", dir / "stages", "--dump-stages"}).code == 0);
    for (const char* stage : {"plane", "edge", "short", "middle", "longb", "longw"}) {
      for (int d = 0; d < 8; ++d) {
        CHECK(fs::exists(dir / ("stages/" + std::string(stage) + "_d" + std::to_string(d) + ".pbm")));
      }
    }
    CHECK(read_json(dir / "stages/manifest.json")["outputs"].size() == 2 + 48 + 1);
  }
}

TEST_CASE("color layer input") {
  TempDir dir;
  // A blue horizontal line on white, plus a black dot.
  io::ColorImage img{60, 9, std::vector<std::uint8_t>(60 * 9 * 3, 255)};
  auto put = [&](int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    auto* p = &img.rgb[3 * (y * 60 + x)];
    p[0] = r, p[1] = g, p[2] = b;
  };
  for (int x = 5; x < 55; ++x) put(x, 4, 30, 60, 200);
  put(2, 2, 0, 0, 0);
  io::write_ppm(img, dir / "map.ppm");

  const std::string conf = (kConfigs / "default.conf").string();
  REQUIRE(run({"decompose", dir / "map.ppm", "--out", dir / "blue", "--config", conf, "--layer", "blue"}).code == 0);
  CHECK(io::read_binary(dir / "blue/plane_d2.pbm") == straight_run(60, 9, 5, 4, Direction(0), 50));
  REQUIRE(run({"decompose", dir / "map.ppm", "--out", dir / "black", "--config", conf, "--layer", "black"}).code == 0);
  CHECK(io::read_binary(dir / "black/plane_d2.pbm") == with_pixels(60, 9, {{2, 2}}));

  const Run missing = run({"decompose", dir / "map.ppm", "--out", dir / "x", "--config", conf, "--layer", "green"});
  CHECK(missing.code != 0);
  CHECK(missing.err.find("no color class named 'green'") != std::string::npos);
  const Run no_classes = run({"decompose", dir / "map.ppm", "--out", dir / "x", "--layer", "blue"});
  CHECK(no_classes.code != 0);
  CHECK(no_classes.err.find("[color") != std::string::npos);
}

TEST_CASE("bench subcommand") {
  TempDir dir;
  const Run r = run({"bench", "--sizes", "64", "--lines", "2,20", "--runs", "5", "--oracle", "--out", dir / "b"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("size 64: max/min median ratio") != std::string::npos);
  const json m = read_json(dir / "b/manifest.json");
  REQUIRE(m["bench"].size() == 2);
  CHECK(m["bench"][0]["runs_ms"].size() == 5);
  CHECK(m["bench"][1]["lines"] == 20);
  CHECK(m["bench"][0].contains("oracle_ms"));

  const cli::BenchSample s = cli::bench_extract(48, 3, PipelineConfig{}, cli::BenchOptions{});
  CHECK(s.runs_ms.size() == 5);
  CHECK(s.median_ms > 0);
  CHECK_FALSE(s.oracle_ms.has_value());
}

TEST_CASE("errors give a nonzero exit and a message") {
  TempDir dir;
  io::write_file(dir / "bad.pbm", "P4\n8 8\n");
  io::write_file(dir / "bad.conf", "long_len = 0\n");
  io::write_binary(BinaryImage(8, 8), dir / "ok.pbm");

  const Run none = run({});
  CHECK(none.code != 0);
  const Run unknown = run({"frobnicate"});
  CHECK(unknown.code != 0);
  CHECK_FALSE(unknown.err.empty());
  const Run flag = run({"extract", dir / "ok.pbm", "--out", dir / "o", "--no-such-flag"});
  CHECK(flag.code != 0);
  CHECK_FALSE(flag.err.empty());
  const Run variant = run({"extract", dir / "ok.pbm", "--out", dir / "o", "--fan-variant", "both"});
  CHECK(variant.code != 0);
  const Run missing = run({"extract", dir / "nope.pbm", "--out", dir / "o"});
  CHECK(missing.code != 0);
  CHECK(missing.err.find("nope.pbm") != std::string::npos);
  const Run truncated = run({"extract", dir / "bad.pbm", "--out", dir / "o"});
  CHECK(truncated.code != 0);
  CHECK(truncated.err.find("truncated") != std::string::npos);
  const Run config = run({"extract", dir / "ok.pbm", "--out", dir / "o", "--config", dir / "bad.conf"});
  CHECK(config.code != 0);
  CHECK(config.err.find("bad.conf:1") != std::string::npos);
  const Run no_out = run({"extract", dir / "ok.pbm"});
  CHECK(no_out.code != 0);
  const Run synth = run({"synth", "--out", dir / "s"});
  CHECK(synth.code != 0);
  CHECK(synth.err.find("[scene]") != std::string::npos);
  CHECK(run({"--version"}).code == 0);
}
