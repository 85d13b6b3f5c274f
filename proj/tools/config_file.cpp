#include "config_file.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace maplines::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

class LineContext {
 public:
  LineContext(std::string_view origin, int line) : origin_(origin), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(std::string(origin_) + ":" + std::to_string(line_) + ": " + msg);
  }

  template <class T>
  T number(std::string_view token, std::string_view key) const {
    T value{};
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      fail("invalid number '" + std::string(token) + "' for " + std::string(key));
    }
    return value;
  }

  int count(std::string_view token, std::string_view key) const {
    const int v = number<int>(token, key);
    if (v < 1) fail(std::string(key) + " must be at least 1");
    return v;
  }

  std::vector<std::string_view> fields(std::string_view value, std::size_t min, std::size_t max,
                                       std::string_view key) const {
    auto f = split_ws(value);
    if (f.size() < min || f.size() > max) {
      fail(std::string(key) + " expects " + std::to_string(min) +
           (min == max ? "" : "-" + std::to_string(max)) + " values, got " +
           std::to_string(f.size()));
    }
    return f;
  }

 private:
  std::string_view origin_;
  int line_;
};

void set_global(RunConfig& c, std::string_view key, std::string_view value, const LineContext& ctx) {
  PipelineConfig& p = c.pipeline;
  RecognitionConfig& r = c.recognition;
  const std::map<std::string_view, int*> counts = {
      {"short_growth", &p.short_growth},
      {"middle_growth", &p.middle_growth},
      {"long_len", &p.long_len},
      {"stipple_reach_erode", &p.stipple_reach_erode},
      {"stipple_reach_dilate", &p.stipple_reach_dilate},
      {"stipple_close", &r.stipple_close},
      {"track_close", &r.track_close},
      {"track_dilate", &r.track_dilate},
      {"path_guard_dilate", &r.path_guard_dilate},
  };
  if (auto it = counts.find(key); it != counts.end()) {
    *it->second = ctx.count(value, key);
  } else if (key == "fan_variant") {
    try {
      p.fan_variant = parse_fan_variant(value);
    } catch (const ConfigError& e) {
      ctx.fail(e.what());
    }
  } else if (key == "short_mask") {
    if (value == "plane") p.short_mask = ShortMask::plane;
    else if (value == "edge") p.short_mask = ShortMask::edge;
    else ctx.fail("short_mask must be 'plane' or 'edge'");
  } else if (key == "edge_connective") {
    if (value == "union") p.edge_connective = EdgeConnective::union_of_neighbors;
    else if (value == "intersection") p.edge_connective = EdgeConnective::intersection_of_neighbors;
    else ctx.fail("edge_connective must be 'union' or 'intersection'");
  } else if (key == "open_semantics") {
    if (value == "ek_dk") p.open_semantics = OpenSemantics::ek_dk;
    else if (value == "repeated") p.open_semantics = OpenSemantics::repeated;
    else ctx.fail("open_semantics must be 'ek_dk' or 'repeated'");
  } else if (key == "stipple_source") {
    if (value == "longw_minus_longb") r.stipple_source = StippleSource::long_stippled_minus_solid;
    else if (value == "longw") r.stipple_source = StippleSource::long_stippled;
    else ctx.fail("stipple_source must be 'longw_minus_longb' or 'longw'");
  } else if (key == "gray_threshold") {
    c.gray_threshold = ctx.number<int>(value, key);
    if (c.gray_threshold < 0 || c.gray_threshold > 256) ctx.fail("gray_threshold must lie in [0, 256]");
  } else if (key == "seed") {
    c.seed = ctx.number<std::uint64_t>(value, key);
  } else {
    ctx.fail("unknown key '" + std::string(key) + "'");
  }
}

void set_scene(RunConfig& c, std::string_view key, std::string_view value, const LineContext& ctx) {
  scene::SceneSpec& s = *c.scene;
  auto num = [&](std::string_view t) { return ctx.number<int>(t, key); };
  if (key == "width") {
    s.width = ctx.count(value, key);
  } else if (key == "height") {
    s.height = ctx.count(value, key);
  } else if (key == "solid_line") {
    auto f = ctx.fields(value, 4, 5, key);
    s.elements.push_back(scene::SolidLine{{num(f[0]), num(f[1])}, {num(f[2]), num(f[3])},
                                          f.size() > 4 ? ctx.count(f[4], "thickness") : 1});
  } else if (key == "stipple_line") {
    auto f = ctx.fields(value, 6, 7, key);
    s.elements.push_back(scene::StippleLine{{num(f[0]), num(f[1])}, {num(f[2]), num(f[3])},
                                            ctx.count(f[4], "dash"), num(f[5]),
                                            f.size() > 6 ? ctx.count(f[6], "thickness") : 1});
  } else if (key == "track") {
    auto f = ctx.fields(value, 7, 7, key);
    s.elements.push_back(scene::Track{{num(f[0]), num(f[1])}, {num(f[2]), num(f[3])},
                                      ctx.count(f[4], "separation"), ctx.count(f[5], "dash"),
                                      num(f[6])});
  } else if (key == "blob") {
    auto f = ctx.fields(value, 4, 4, key);
    s.elements.push_back(
        scene::Blob{{num(f[0]), num(f[1])}, ctx.count(f[2], "w"), ctx.count(f[3], "h")});
  } else if (key == "noise") {
    auto f = ctx.fields(value, 1, 2, key);
    const double density = ctx.number<double>(f[0], key);
    if (density < 0 || density > 1) ctx.fail("noise density must lie in [0, 1]");
    if (f.size() == 1) c.unseeded_noise.push_back(s.elements.size());
    s.elements.push_back(
        scene::Noise{density, f.size() > 1 ? ctx.number<std::uint64_t>(f[1], key) : 0});
  } else {
    ctx.fail("unknown scene key '" + std::string(key) + "'");
  }
}

void set_color(io::ColorClassSpec& cls, std::string_view key, std::string_view value,
               const LineContext& ctx) {
  if (key == "hue") {
    auto f = ctx.fields(value, 2, 2, key);
    cls.hue_range = std::pair{ctx.number<double>(f[0], key), ctx.number<double>(f[1], key)};
  } else if (key == "saturation_min") {
    cls.saturation_min = ctx.number<double>(value, key);
  } else if (key == "intensity") {
    auto f = ctx.fields(value, 2, 2, key);
    cls.intensity_range = {ctx.number<double>(f[0], key), ctx.number<double>(f[1], key)};
  } else {
    ctx.fail("unknown color key '" + std::string(key) + "'");
  }
  try {
    cls.validate();
  } catch (const std::invalid_argument& e) {
    ctx.fail(e.what());
  }
}

std::string fmt_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

}  // namespace

FanErosion parse_fan_variant(std::string_view s) {
  if (s == "union") return FanErosion::union_of_shifts;
  if (s == "intersection") return FanErosion::intersection_of_shifts;
  throw ConfigError("fan variant must be 'union' or 'intersection', got '" + std::string(s) + "'");
}

scene::SceneSpec RunConfig::resolved_scene() const {
  if (!scene) throw ConfigError("config has no [scene] section");
  scene::SceneSpec s = *scene;
  for (std::size_t i : unseeded_noise) {
    std::get<scene::Noise>(s.elements.at(i)).seed = seed + i;
  }
  return s;
}

RunConfig parse_config(std::string_view text, std::string_view origin) {
  RunConfig c;
  enum class Section { global, scene, color } section = Section::global;
  io::ColorClassSpec* color = nullptr;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const LineContext ctx(origin, line_no);

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') ctx.fail("unterminated section header");
      const auto words = split_ws(line.substr(1, line.size() - 2));
      if (words.size() == 1 && words[0] == "scene") {
        section = Section::scene;
        if (!c.scene) c.scene = scene::SceneSpec{256, 256, {}};
      } else if (words.size() == 2 && words[0] == "color") {
        section = Section::color;
        for (const auto& existing : c.colors) {
          if (existing.name == words[1]) ctx.fail("duplicate color class '" + std::string(words[1]) + "'");
        }
        c.colors.push_back(io::ColorClassSpec{std::string(words[1]), std::nullopt, 0.0, {0.0, 1.0}});
        color = &c.colors.back();
      } else {
        ctx.fail("unknown section '" + std::string(line) + "'");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) ctx.fail("expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) ctx.fail("missing key");
    if (value.empty()) ctx.fail("missing value for '" + std::string(key) + "'");

    switch (section) {
      case Section::global: set_global(c, key, value, ctx); break;
      case Section::scene: set_scene(c, key, value, ctx); break;
      case Section::color: set_color(*color, key, value, ctx); break;
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const io::ImageIoError& e) {
    throw ConfigError(e.what());
  }
  if (trim(text).starts_with("{")) {
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("config_text") || !j["config_text"].is_string()) {
      throw ConfigError(path + ": JSON config must be a run manifest with a config_text member");
    }
    return parse_config(j["config_text"].get<std::string>(), path);
  }
  return parse_config(text, path);
}

std::string to_config_text(const RunConfig& c) {
  const PipelineConfig& p = c.pipeline;
  const RecognitionConfig& r = c.recognition;
  std::ostringstream out;
  out << "short_growth = " << p.short_growth << "\n"
      << "middle_growth = " << p.middle_growth << "\n"
      << "long_len = " << p.long_len << "\n"
      << "stipple_reach_erode = " << p.stipple_reach_erode << "\n"
      << "stipple_reach_dilate = " << p.stipple_reach_dilate << "\n"
      << "fan_variant = " << to_string(p.fan_variant) << "\n"
      << "short_mask = " << to_string(p.short_mask) << "\n"
      << "edge_connective = " << to_string(p.edge_connective) << "\n"
      << "open_semantics = " << to_string(p.open_semantics) << "\n"
      << "stipple_source = " << to_string(r.stipple_source) << "\n"
      << "stipple_close = " << r.stipple_close << "\n"
      << "track_close = " << r.track_close << "\n"
      << "track_dilate = " << r.track_dilate << "\n"
      << "path_guard_dilate = " << r.path_guard_dilate << "\n"
      << "gray_threshold = " << c.gray_threshold << "\n"
      << "seed = " << c.seed << "\n";

  for (const auto& cls : c.colors) {
    out << "\n[color " << cls.name << "]\n";
    if (cls.hue_range) {
      out << "hue = " << fmt_double(cls.hue_range->first) << " " << fmt_double(cls.hue_range->second) << "\n";
    }
    out << "saturation_min = " << fmt_double(cls.saturation_min) << "\n"
        << "intensity = " << fmt_double(cls.intensity_range.first) << " "
        << fmt_double(cls.intensity_range.second) << "\n";
  }

  if (c.scene) {
    const scene::SceneSpec& s = *c.scene;
    out << "\n[scene]\nwidth = " << s.width << "\nheight = " << s.height << "\n";
    for (std::size_t i = 0; i < s.elements.size(); ++i) {
      const scene::Element& el = s.elements[i];
      if (const auto* e = std::get_if<scene::SolidLine>(&el)) {
        out << "solid_line = " << e->start.x << " " << e->start.y << " " << e->end.x << " "
            << e->end.y << " " << e->thickness << "\n";
      } else if (const auto* e = std::get_if<scene::StippleLine>(&el)) {
        out << "stipple_line = " << e->start.x << " " << e->start.y << " " << e->end.x << " "
            << e->end.y << " " << e->dash << " " << e->gap << " " << e->thickness << "\n";
      } else if (const auto* e = std::get_if<scene::Track>(&el)) {
        out << "track = " << e->start.x << " " << e->start.y << " " << e->end.x << " " << e->end.y
            << " " << e->separation << " " << e->dash << " " << e->gap << "\n";
      } else if (const auto* e = std::get_if<scene::Blob>(&el)) {
        out << "blob = " << e->center.x << " " << e->center.y << " " << e->w << " " << e->h << "\n";
      } else if (const auto* e = std::get_if<scene::Noise>(&el)) {
        const bool unseeded =
            std::find(c.unseeded_noise.begin(), c.unseeded_noise.end(), i) != c.unseeded_noise.end();
        out << "noise = " << fmt_double(e->density);
        if (!unseeded) out << " " << e->seed;
        out << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace maplines::cli
