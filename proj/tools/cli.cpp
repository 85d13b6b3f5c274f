#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "config_file.hpp"
#include "json.hpp"
#include "maplines/equivalence.hpp"
#include "maplines/extraction.hpp"
#include "maplines/imageio.hpp"
#include "maplines/planes.hpp"
#include "maplines/recognition.hpp"
#include "maplines/scene.hpp"

namespace maplines::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::string_view kVersion = "1.0.0";

/// Failure that should end the command with exit code 1 and a message.
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::string fan_variant;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string layer;
};

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

json config_json(const RunConfig& c) {
  const PipelineConfig& p = c.pipeline;
  const RecognitionConfig& r = c.recognition;
  return {
      {"pipeline",
       {{"short_growth", p.short_growth},
        {"middle_growth", p.middle_growth},
        {"long_len", p.long_len},
        {"stipple_reach_erode", p.stipple_reach_erode},
        {"stipple_reach_dilate", p.stipple_reach_dilate},
        {"fan_variant", to_string(p.fan_variant)},
        {"short_mask", to_string(p.short_mask)},
        {"edge_connective", to_string(p.edge_connective)},
        {"open_semantics", to_string(p.open_semantics)}}},
      {"recognition",
       {{"stipple_source", to_string(r.stipple_source)},
        {"stipple_close", r.stipple_close},
        {"track_close", r.track_close},
        {"track_dilate", r.track_dilate},
        {"path_guard_dilate", r.path_guard_dilate}}},
      {"gray_threshold", c.gray_threshold},
      {"seed", c.seed},
  };
}

class Manifest {
 public:
  Manifest(std::string_view command, const std::vector<std::string>& args, const RunConfig& cfg) {
    j_["tool"] = "maplines";
    j_["version"] = kVersion;
    j_["command"] = command;
    j_["args"] = args;
    j_["config"] = config_json(cfg);
    j_["config_text"] = to_config_text(cfg);
    j_["inputs"] = json::array();
    j_["outputs"] = json::array();
    j_["timings_ms"] = json::object();
  }

  void input(const std::string& path, std::string_view role) {
    std::string bytes;
    try {
      bytes = io::read_file(path);
    } catch (const io::ImageIoError& e) {
      throw CommandError(e.what());
    }
    j_["inputs"].push_back({{"role", role}, {"path", path}, {"sha256", sha256_hex(bytes)}});
  }
  void output(const std::string& name) { j_["outputs"].push_back(name); }
  void timing(const std::string& phase, double ms) { j_["timings_ms"][phase] = ms; }
  json& extra() { return j_; }

  void write(const fs::path& dir) {
    output("manifest.json");
    io::write_file(dir / "manifest.json", j_.dump(2) + "\n");
  }

 private:
  json j_;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_out, bool with_input_flags) {
  cmd->add_option("--config", o.config_path, "Config file or a previous manifest.json")
      ->check(CLI::ExistingFile);
  if (with_out) cmd->add_option("--out", o.out_dir, "Output directory")->required();
  cmd->add_option("--fan-variant", o.fan_variant, "Fan erosion: union or intersection")
      ->check(CLI::IsMember({"union", "intersection"}));
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&o](const std::uint64_t& s) { o.seed = s, o.seed_given = true; },
      "Random seed (overrides the config)");
  if (with_input_flags) {
    cmd->add_option("--layer", o.layer, "Color class of a color input to process");
  }
}

RunConfig resolve_config(const CommonOptions& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) cfg = load_config(o.config_path);
  if (!o.fan_variant.empty()) cfg.pipeline.fan_variant = parse_fan_variant(o.fan_variant);
  if (o.seed_given) cfg.seed = o.seed;
  try {
    cfg.pipeline.validate();
    cfg.recognition.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

BinaryImage load_input(const std::string& path, const CommonOptions& o, const RunConfig& cfg) {
  if (o.layer.empty()) {
    io::ReadOptions ro;
    ro.gray_threshold = cfg.gray_threshold;
    return io::read_binary(path, ro);
  }
  if (cfg.colors.empty()) {
    throw CommandError("--layer needs [color <name>] sections in the config");
  }
  auto layers = io::color_separate(io::read_color(path), cfg.colors);
  auto it = layers.find(o.layer);
  if (it == layers.end()) throw CommandError("no color class named '" + o.layer + "'");
  return std::move(it->second);
}

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CommandError("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

void write_pbm(const fs::path& dir, const std::string& name, const BinaryImage& img,
               Manifest& manifest) {
  io::write_binary(img, dir / name);
  manifest.output(name);
}

void dump_stages(const fs::path& dir, const StagePlanes& stages, Manifest& manifest) {
  for (Stage s : kAllStages) {
    for (Direction d : Direction::all()) {
      write_pbm(dir, std::string(stage_name(s)) + "_d" + std::to_string(d.code()) + ".pbm",
                stages[s][d], manifest);
    }
  }
}

// --- subcommands -----------------------------------------------------------

struct ImageCommand {
  CommonOptions common;
  std::string input;
  bool dump = false;
};

int cmd_decompose(const ImageCommand& c, const std::vector<std::string>& args, std::ostream& out) {
  Stopwatch sw;
  const RunConfig cfg = resolve_config(c.common);
  Manifest manifest("decompose", args, cfg);
  manifest.input(c.input, "image");
  if (!c.common.config_path.empty()) manifest.input(c.common.config_path, "config");
  const BinaryImage b = load_input(c.input, c.common, cfg);
  manifest.timing("read", sw.lap_ms());

  const DirectionalPlanes planes = decompose(b);
  manifest.timing("decompose", sw.lap_ms());

  const fs::path dir = prepare_out(c.common.out_dir);
  for (Direction d : Direction::all()) {
    write_pbm(dir, "plane_d" + std::to_string(d.code()) + ".pbm", planes[d], manifest);
  }
  const auto bytes = to_direction_bytes(planes);
  io::write_file(dir / "planes.bin",
                 planes_header(b.width(), b.height()) +
                     std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  manifest.output("planes.bin");
  manifest.timing("write", sw.lap_ms());
  manifest.write(dir);

  out << "decompose " << b.width() << "x" << b.height() << ", " << b.popcount()
      << " foreground pixels\n";
  for (Direction d : Direction::all()) {
    out << "  plane " << d.code() << ": " << planes[d].popcount() << "\n";
  }
  return 0;
}

int cmd_extract(const ImageCommand& c, bool full, const std::vector<std::string>& args,
                std::ostream& out) {
  Stopwatch sw;
  const RunConfig cfg = resolve_config(c.common);
  Manifest manifest(full ? "recognize" : "extract", args, cfg);
  manifest.input(c.input, "image");
  if (!c.common.config_path.empty()) manifest.input(c.common.config_path, "config");
  const BinaryImage b = load_input(c.input, c.common, cfg);
  manifest.timing("read", sw.lap_ms());

  ExtractOptions eo;
  eo.keep_stages = c.dump;
  const ExtractionResult ex = extract(b, cfg.pipeline, eo);
  manifest.timing("extract", sw.lap_ms());

  const fs::path dir = prepare_out(c.common.out_dir);
  if (!full) {
    write_pbm(dir, "solid.pbm", ex.solid, manifest);
    write_pbm(dir, "stippled_segments.pbm", ex.stippled_segments, manifest);
  }
  if (c.dump) dump_stages(dir, *ex.stages, manifest);
  manifest.timing("write", sw.lap_ms());

  json counts = {{"foreground", b.popcount()},
                 {"solid", ex.solid.popcount()},
                 {"stippled_segments", ex.stippled_segments.popcount()}};

  if (full) {
    const RecognitionResult r = classify(ex, cfg.recognition);
    manifest.timing("recognize", sw.lap_ms());
    write_pbm(dir, "solid.pbm", r.solid, manifest);
    write_pbm(dir, "stippled.pbm", r.stippled, manifest);
    write_pbm(dir, "track.pbm", r.track, manifest);
    write_pbm(dir, "path.pbm", r.path, manifest);
    io::write_ppm(io::render_overlay(b, r), dir / "overlay.ppm");
    manifest.output("overlay.ppm");
    manifest.timing("write_classes", sw.lap_ms());
    counts["stippled"] = r.stippled.popcount();
    counts["track"] = r.track.popcount();
    counts["path"] = r.path.popcount();
  }
  manifest.extra()["image"] = {{"width", b.width()}, {"height", b.height()}};
  manifest.extra()["pixel_counts"] = counts;
  manifest.write(dir);

  out << (full ? "recognize " : "extract ") << b.width() << "x" << b.height() << "\n";
  for (const auto& [k, v] : counts.items()) out << "  " << k << ": " << v << "\n";
  return 0;
}

int cmd_synth(const CommonOptions& o, const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  Stopwatch sw;
  if (o.config_path.empty()) throw CommandError("synth needs --config with a [scene] section");
  const RunConfig cfg = resolve_config(o);
  Manifest manifest("synth", args, cfg);
  manifest.input(o.config_path, "config");

  const scene::Scene s = [&] {
    try {
      return scene::synth(cfg.resolved_scene());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  manifest.timing("synth", sw.lap_ms());
  for (const auto& w : s.warnings) err << "warning: " << w << "\n";
  manifest.extra()["warnings"] = s.warnings;

  const fs::path dir = prepare_out(o.out_dir);
  write_pbm(dir, "scene.pbm", s.image, manifest);
  write_pbm(dir, "truth_solid.pbm", s.solid, manifest);
  write_pbm(dir, "truth_stippled.pbm", s.stippled, manifest);
  write_pbm(dir, "truth_path.pbm", s.path, manifest);
  write_pbm(dir, "truth_track.pbm", s.track, manifest);
  write_pbm(dir, "truth_blob.pbm", s.blob, manifest);
  manifest.timing("write", sw.lap_ms());
  manifest.write(dir);

  out << "synth " << s.image.width() << "x" << s.image.height() << ", "
      << cfg.scene->elements.size() << " elements, " << s.image.popcount()
      << " foreground pixels\n";
  return 0;
}

struct CheckOptions {
  CommonOptions common;
  int max_size = 3;
  int random = 0;
  int size = 64;
  int scenes = 0;
};

int cmd_check(const CheckOptions& c, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(c.common);
  bool ok = true;
  auto report = [&](const std::string& label, const oracle::SweepReport& r, double ms) {
    out << label << ": " << r.cases << " cases, " << r.mismatches << " mismatches ("
        << std::fixed << std::setprecision(2) << ms / 1000 << " s)\n";
    out.unsetf(std::ios::floatfield);
    for (const auto& ex : r.examples) err << "  mismatch: " << ex << "\n";
    ok = ok && r.ok();
  };

  Stopwatch sw;
  if (c.max_size > 0) {
    const auto r = oracle::exhaustive_primitive_sweep(c.max_size);
    report("exhaustive primitives up to " + std::to_string(c.max_size) + "x" +
               std::to_string(c.max_size),
           r, sw.lap_ms());
  }
  if (c.random > 0) {
    const auto r = oracle::random_pipeline_sweep(c.random, c.size, c.size, cfg.seed, cfg.pipeline,
                                                 cfg.recognition);
    report("random images " + std::to_string(c.size) + "x" + std::to_string(c.size), r,
           sw.lap_ms());
  }
  if (c.scenes > 0) {
    const auto r = oracle::scene_pipeline_sweep(c.scenes, c.size, c.size, cfg.seed, cfg.pipeline,
                                                cfg.recognition);
    report("random scenes " + std::to_string(c.size) + "x" + std::to_string(c.size), r,
           sw.lap_ms());
  }
  out << (ok ? "check passed\n" : "check FAILED\n");
  return ok ? 0 : 1;
}

struct BenchCommand {
  CommonOptions common;
  std::vector<int> sizes{256, 1024};
  std::vector<int> lines{10, 200};
  int runs = 5;
  bool oracle = false;
  bool parallel = false;
};

int cmd_bench(const BenchCommand& c, const std::vector<std::string>& args, std::ostream& out) {
  const RunConfig cfg = resolve_config(c.common);
  BenchOptions bo;
  bo.runs = c.runs;
  bo.parallel = c.parallel;
  bo.with_oracle = c.oracle;
  bo.seed = cfg.seed;

  json rows = json::array();
  out << "size   lines  ink       median_ms";
  if (c.oracle) out << "   oracle_ms  speedup";
  out << "\n";
  for (int size : c.sizes) {
    std::vector<double> medians;
    for (int lines : c.lines) {
      const BenchSample s = bench_extract(size, lines, cfg.pipeline, bo);
      medians.push_back(s.median_ms);
      out << std::left << std::setw(7) << size << std::setw(7) << lines << std::setw(10) << s.ink
          << std::right << std::fixed << std::setprecision(2) << std::setw(9) << s.median_ms;
      json row = {{"size", size}, {"lines", lines}, {"ink", s.ink},
                  {"runs_ms", s.runs_ms}, {"median_ms", s.median_ms}};
      if (s.oracle_ms) {
        out << std::setw(12) << *s.oracle_ms << std::setw(9) << *s.oracle_ms / s.median_ms;
        row["oracle_ms"] = *s.oracle_ms;
      }
      out << "\n";
      out.unsetf(std::ios::floatfield);
      rows.push_back(row);
    }
    const auto [lo, hi] = std::minmax_element(medians.begin(), medians.end());
    out << "  size " << size << ": max/min median ratio " << std::setprecision(3)
        << *hi / *lo << "\n";
    out << std::setprecision(6);
  }

  if (!c.common.out_dir.empty()) {
    Manifest manifest("bench", args, cfg);
    if (!c.common.config_path.empty()) manifest.input(c.common.config_path, "config");
    manifest.extra()["bench"] = rows;
    manifest.write(prepare_out(c.common.out_dir));
  }
  return 0;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

std::string planes_header(int width, int height) {
  return "maplines-planes 1 " + std::to_string(width) + " " + std::to_string(height) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Line extraction and classification for scanned map layers", "maplines"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ImageCommand dec, ext, rec;
  CommonOptions syn;
  CheckOptions chk;
  BenchCommand bch;

  auto* c_dec = app.add_subcommand("decompose", "Split an image into its 8 directional planes");
  c_dec->add_option("input", dec.input, "PBM or PNG image")->required()->check(CLI::ExistingFile);
  add_common(c_dec, dec.common, true, true);

  auto* c_ext = app.add_subcommand("extract", "Extract long solid and long stippled segments");
  c_ext->add_option("input", ext.input, "PBM or PNG image")->required()->check(CLI::ExistingFile);
  add_common(c_ext, ext.common, true, true);
  c_ext->add_flag("--dump-stages", ext.dump, "Write every intermediate plane");

  auto* c_rec = app.add_subcommand("recognize", "Classify solid, stippled, track and path lines");
  c_rec->add_option("input", rec.input, "PBM or PNG image")->required()->check(CLI::ExistingFile);
  add_common(c_rec, rec.common, true, true);
  c_rec->add_flag("--dump-stages", rec.dump, "Write every intermediate plane");

  auto* c_syn = app.add_subcommand("synth", "Render a synthetic scene and its ground truth");
  add_common(c_syn, syn, true, false);

  auto* c_chk = app.add_subcommand("check", "Compare the packed operators with the reference");
  add_common(c_chk, chk.common, false, false);
  c_chk->add_option("--max-size", chk.max_size, "Exhaustive sweep bound (0 skips)")
      ->check(CLI::Range(0, 4));
  c_chk->add_option("--random", chk.random, "Random images for the pipeline sweep")
      ->check(CLI::NonNegativeNumber);
  c_chk->add_option("--scenes", chk.scenes, "Random scenes for the pipeline sweep")
      ->check(CLI::NonNegativeNumber);
  c_chk->add_option("--size", chk.size, "Side of random images and scenes")
      ->check(CLI::Range(1, 4096));

  auto* c_bch = app.add_subcommand("bench", "Time extraction on random line images");
  add_common(c_bch, bch.common, false, false);
  c_bch->add_option("--out", bch.common.out_dir, "Directory for a manifest of the timings");
  c_bch->add_option("--sizes", bch.sizes, "Image sides")->delimiter(',')->check(CLI::Range(1, 8192));
  c_bch->add_option("--lines", bch.lines, "Line counts")->delimiter(',')->check(CLI::Range(0, 100000));
  c_bch->add_option("--runs", bch.runs, "Timed runs per case")->check(CLI::Range(1, 1000));
  c_bch->add_flag("--oracle", bch.oracle, "Also time one run of the reference implementation");
  c_bch->add_flag("--parallel", bch.parallel, "Run the 8 direction chains concurrently");

  std::vector<const char*> argv{"maplines"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (c_dec->parsed()) return cmd_decompose(dec, args, out);
    if (c_ext->parsed()) return cmd_extract(ext, false, args, out);
    if (c_rec->parsed()) return cmd_extract(rec, true, args, out);
    if (c_syn->parsed()) return cmd_synth(syn, args, out, err);
    if (c_chk->parsed()) return cmd_check(chk, out, err);
    if (c_bch->parsed()) return cmd_bench(bch, args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const io::ImageIoError& e) {
    err << "io error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace maplines::cli
