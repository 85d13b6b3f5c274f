#include <png.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include "doctest.h"
#include "maplines/imageio.hpp"
#include "support.hpp"

using namespace maplines;
using namespace maplines::testing;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("maplines_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_png(const fs::path& path, int w, int h, png_uint_32 format,
               const std::vector<png_byte>& pixels) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = w;
  image.height = h;
  image.format = format;
  REQUIRE(png_image_write_to_file(&image, path.string().c_str(), 0, pixels.data(), 0, nullptr));
}

io::ColorClassSpec cls(std::string name, std::optional<std::pair<double, double>> hue,
                       double sat_min, std::pair<double, double> intensity) {
  return {std::move(name), hue, sat_min, intensity};
}

}  // namespace

TEST_CASE("PBM decoding") {
  const BinaryImage p1 = io::decode_pbm("P1\n# comment\n2 2\n1 0\n0 1\n");
  CHECK(p1 == with_pixels(2, 2, {{0, 0}, {1, 1}}));
  // Plain PBM pixels need no separators.
  CHECK(io::decode_pbm("P1 3 1 101") == with_pixels(3, 1, {{0, 0}, {2, 0}}));

  const std::string p4 = std::string("P4\n10 2\n") + '\xC0' + '\x40' + '\x01' + '\x80';
  CHECK(io::decode_pbm(p4) == with_pixels(10, 2, {{0, 0}, {1, 0}, {9, 0}, {7, 1}, {8, 1}}));
}

TEST_CASE("PBM errors") {
  CHECK_THROWS_AS(io::decode_pbm(""), io::ImageIoError);
  CHECK_THROWS_AS(io::decode_pbm("P3\n1 1\n255\n0 0 0"), io::ImageIoError);
  CHECK_THROWS_AS(io::decode_pbm("P1\nx 2\n"), io::ImageIoError);
  CHECK_THROWS_AS(io::decode_pbm("P1\n0 2\n"), io::ImageIoError);
  CHECK_THROWS_AS(io::decode_pbm("P1\n2 2\n1 0 1\n"), io::ImageIoError);
  CHECK_THROWS_AS(io::decode_pbm("P1\n1 1\n7\n"), io::ImageIoError);
  CHECK_THROWS_AS(io::decode_pbm(std::string("P4\n16 2\n") + "\xFF\xFF\xFF"), io::ImageIoError);
  try {
    io::decode_pbm(std::string("P4\n16 2\n") + "\xFF\xFF\xFF");
  } catch (const io::ImageIoError& e) {
    CHECK(std::string(e.what()).find("truncated") != std::string::npos);
  }
}

TEST_CASE("PBM round trips") {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const BinaryImage f = random_image(rng);
    CHECK(io::decode_pbm(io::encode_pbm(f)) == f);
    CHECK(io::decode_pbm(io::encode_pbm(f, io::BinaryFormat::pbm_plain)) == f);
  }
  const std::string empty = io::encode_pbm(BinaryImage(9, 3));
  CHECK(empty == std::string("P4\n9 3\n") + std::string(6, '\0'));

  // A 256x256 raster is 8192 payload bytes.
  const std::string header = "P4\n256 256\n";
  const std::string big = io::encode_pbm(BinaryImage::filled(256, 256));
  CHECK(big.size() - header.size() == 256 * 256 / 8);
  CHECK(big.substr(0, header.size()) == header);
}

TEST_CASE("binary files") {
  TempDir dir;
  Rng rng(9);
  const BinaryImage f = random_image(rng, 77, 13, 0.4);
  io::write_binary(f, dir / "a.pbm");
  CHECK(io::read_binary(dir / "a.pbm") == f);
  io::write_binary(f, dir / "b.pbm", io::BinaryFormat::pbm_plain);
  CHECK(io::read_binary(dir / "b.pbm") == f);

  io::ReadOptions forced;
  forced.format = io::BinaryFormat::pbm_plain;
  CHECK_THROWS_AS(io::read_binary(dir / "a.pbm", forced), io::ImageIoError);
  CHECK_THROWS_AS(io::read_binary(dir / "missing.pbm"), io::ImageIoError);
  CHECK_THROWS_AS(io::write_binary(f, dir / "a.png", io::BinaryFormat::png), io::ImageIoError);
  CHECK_THROWS_AS(io::write_binary(f, dir / "no" / "such" / "dir.pbm"), io::ImageIoError);
}

TEST_CASE("gray PNG thresholding") {
  TempDir dir;
  write_png(dir / "g.png", 4, 1, PNG_FORMAT_GRAY, {0, 127, 128, 255});
  CHECK(io::read_binary(dir / "g.png") == with_pixels(4, 1, {{0, 0}, {1, 0}}));
  io::ReadOptions lenient;
  lenient.gray_threshold = 129;
  CHECK(io::read_binary(dir / "g.png", lenient) == with_pixels(4, 1, {{0, 0}, {1, 0}, {2, 0}}));

  write_png(dir / "c.png", 2, 1, PNG_FORMAT_RGB, {0, 0, 0, 255, 255, 255});
  CHECK(io::read_binary(dir / "c.png") == with_pixels(2, 1, {{0, 0}}));

  io::write_file(dir / "bad.png", "\x89PNG\r\n\x1a\nnot really");
  CHECK_THROWS_AS(io::read_binary(dir / "bad.png"), io::ImageIoError);
}

TEST_CASE("color files") {
  TempDir dir;
  io::ColorImage img{2, 2, {255, 0, 0, 0, 255, 0, 0, 0, 255, 10, 20, 30}};
  io::write_ppm(img, dir / "c.ppm");
  const io::ColorImage back = io::read_color(dir / "c.ppm");
  CHECK(back.width == 2);
  CHECK(back.rgb == img.rgb);
  CHECK(back.g(1, 0) == 255);
  CHECK(back.b(1, 1) == 30);

  write_png(dir / "c.png", 2, 2, PNG_FORMAT_RGB, img.rgb);
  CHECK(io::read_color(dir / "c.png").rgb == img.rgb);

  CHECK_THROWS_AS(io::decode_ppm("P6\n2 2\n65535\n"), io::ImageIoError);
  CHECK_THROWS_AS(io::decode_ppm("P6\n2 2\n255\nabc"), io::ImageIoError);
  CHECK_THROWS_AS(io::decode_ppm("P5\n2 2\n255\n"), io::ImageIoError);
}

TEST_CASE("HSI conversion") {
  const io::Hsi black = io::rgb_to_hsi(0, 0, 0);
  CHECK(black.intensity == 0);
  CHECK(black.saturation == 0);
  CHECK_FALSE(black.hue.has_value());

  const io::Hsi white = io::rgb_to_hsi(255, 255, 255);
  CHECK(white.intensity == doctest::Approx(1.0));
  CHECK(white.saturation == doctest::Approx(0.0));
  CHECK_FALSE(white.hue.has_value());

  const io::Hsi red = io::rgb_to_hsi(255, 0, 0);
  CHECK(red.intensity == doctest::Approx(1.0 / 3));
  CHECK(red.saturation == doctest::Approx(1.0));
  CHECK(*red.hue == doctest::Approx(0.0));
  CHECK(*io::rgb_to_hsi(0, 255, 0).hue == doctest::Approx(120.0));
  CHECK(*io::rgb_to_hsi(0, 0, 255).hue == doctest::Approx(240.0));
  // Orange-brown: r=160 g=82 b=45, theta from the arccos form.
  const io::Hsi sienna = io::rgb_to_hsi(160, 82, 45);
  const double r = 160 / 255.0, g = 82 / 255.0, b = 45 / 255.0;
  const double theta = std::acos(0.5 * ((r - g) + (r - b)) /
                                 std::sqrt((r - g) * (r - g) + (r - b) * (g - b))) * 180 / std::numbers::pi;
  CHECK(*sienna.hue == doctest::Approx(theta));
  CHECK(*sienna.hue == doctest::Approx(18.37).epsilon(0.001));
}

TEST_CASE("color separation") {
  const std::vector<io::ColorClassSpec> classes = {
      cls("black", std::nullopt, 0.0, {0.0, 0.2}),
      cls("red", std::pair{340.0, 20.0}, 0.5, {0.0, 1.0}),
  };
  io::ColorImage img{3, 1, {0, 0, 0, 255, 255, 255, 255, 0, 0}};
  auto planes = io::color_separate(img, classes);
  CHECK(planes.at("black") == with_pixels(3, 1, {{0, 0}}));
  CHECK(planes.at("red") == with_pixels(3, 1, {{2, 0}}));

  SUBCASE("first match wins") {
    const std::vector<io::ColorClassSpec> overlapping = {
        cls("any", std::nullopt, 0.0, {0.0, 1.0}),
        cls("black", std::nullopt, 0.0, {0.0, 0.2}),
    };
    auto p = io::color_separate(img, overlapping);
    CHECK(p.at("any").popcount() == 3);
    CHECK(p.at("black").none());
  }
  SUBCASE("gray pixels only match hue-free classes") {
    const std::vector<io::ColorClassSpec> hued = {cls("all_hues", std::pair{0.0, 360.0}, 0.0, {0.0, 1.0})};
    CHECK(io::color_separate(io::ColorImage{1, 1, {128, 128, 128}}, hued).at("all_hues").none());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(io::color_separate(io::ColorImage{}, classes), std::invalid_argument);
    CHECK_THROWS_AS(io::color_separate(img, {}), std::invalid_argument);
    CHECK_THROWS_AS(io::color_separate(img, {classes[0], classes[0]}), std::invalid_argument);
    CHECK_THROWS_AS(io::color_separate(img, {cls("x", std::nullopt, 2.0, {0, 1})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::color_separate(img, {cls("x", std::nullopt, 0.0, {0.8, 0.2})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::color_separate(img, {cls("x", std::pair{-5.0, 20.0}, 0.0, {0, 1})}),
                    std::invalid_argument);
  }
}

TEST_CASE("property: class planes are pairwise disjoint") {
  Rng rng(12);
  io::ColorImage img{40, 30, {}};
  for (int i = 0; i < 40 * 30 * 3; ++i) img.rgb.push_back(static_cast<std::uint8_t>(rng.uniform(0, 255)));
  std::vector<io::ColorClassSpec> classes;
  for (int i = 0; i < 5; ++i) {
    const double lo = rng.real(0, 360), hi = rng.real(0, 360);
    const double ilo = rng.real(0, 0.5);
    classes.push_back(cls("c" + std::to_string(i), rng.chance(0.7) ? std::optional{std::pair{lo, hi}} : std::nullopt,
                          rng.real(0, 0.5), {ilo, rng.real(ilo, 1.0)}));
  }
  const auto planes = io::color_separate(img, classes);
  for (const auto& [a, pa] : planes) {
    for (const auto& [b, pb] : planes) {
      if (a < b) CHECK(intersect(pa, pb).none());
    }
  }
}

TEST_CASE("overlay rendering") {
  const BinaryImage src = with_pixels(4, 1, {{0, 0}, {1, 0}, {2, 0}});
  RecognitionResult r{with_pixels(4, 1, {{1, 0}}), with_pixels(4, 1, {{2, 0}}),
                      BinaryImage(4, 1), BinaryImage(4, 1)};
  const io::ColorImage o = io::render_overlay(src, r);
  CHECK(o.r(0, 0) == 200);
  CHECK(o.r(1, 0) == 0);
  CHECK(o.b(2, 0) == 220);
  CHECK(o.r(3, 0) == 255);
  r.track = BinaryImage(3, 1);
  CHECK_THROWS_AS(io::render_overlay(src, r), std::invalid_argument);
}
