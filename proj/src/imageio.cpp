#include "maplines/imageio.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

namespace maplines::io {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

bool is_png(std::string_view bytes) {
  return bytes.size() >= 8 &&
         std::equal(std::begin(kPngSignature), std::end(kPngSignature), bytes.begin(),
                    [](std::uint8_t a, char b) { return a == static_cast<std::uint8_t>(b); });
}

// Netpbm header tokenizer: whitespace-separated, '#' comments to end of line.
class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  int next_int(const char* what) {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) {
      throw ImageIoError(std::string("malformed header: expected ") + what);
    }
    const std::string digits(bytes_.substr(start, pos_ - start));
    if (digits.size() > 9) throw ImageIoError(std::string("malformed header: ") + what + " too large");
    return std::stoi(digits);
  }

  // Exactly one whitespace byte separates the header from raster data.
  void end_header() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw ImageIoError("malformed header: missing whitespace before raster data");
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 2;
};

void check_dimensions(int w, int h) {
  if (w < 1 || h < 1) {
    throw ImageIoError("unsupported image size " + std::to_string(w) + "x" + std::to_string(h));
  }
}

BinaryImage read_png_binary(const std::filesystem::path& path, int threshold) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw ImageIoError("PNG read failed for " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError("PNG decode failed for " + path.string() + ": " + msg);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  check_dimensions(w, h);
  BinaryImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (buf[static_cast<std::size_t>(y) * w + x] < threshold) img.set(x, y);
    }
  }
  return img;
}

ColorImage read_png_color(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw ImageIoError("PNG read failed for " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  ColorImage out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.rgb.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.rgb.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError("PNG decode failed for " + path.string() + ": " + msg);
  }
  check_dimensions(out.width, out.height);
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ImageIoError("read error on " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ImageIoError("cannot create " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageIoError("write error on " + path.string());
}

BinaryImage decode_pbm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4')) {
    throw ImageIoError("not a PBM file (expected P1 or P4 magic)");
  }
  const bool raw = bytes[1] == '4';
  HeaderReader header(bytes);
  const int w = header.next_int("width");
  const int h = header.next_int("height");
  check_dimensions(w, h);
  BinaryImage img(w, h);

  if (raw) {
    header.end_header();
    const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
    const std::size_t need = row_bytes * h;
    if (bytes.size() - header.pos() < need) {
      throw ImageIoError("truncated P4 data: expected " + std::to_string(need) + " bytes, got " +
                         std::to_string(bytes.size() - header.pos()));
    }
    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + header.pos());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const unsigned char byte = data[y * row_bytes + x / 8];
        if ((byte >> (7 - x % 8)) & 1u) img.set(x, y);
      }
    }
    return img;
  }

  std::size_t p = header.pos();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      header.seek(p);
      header.skip_space_and_comments();
      p = header.pos();
      if (p >= bytes.size()) throw ImageIoError("truncated P1 data");
      const char c = bytes[p++];
      if (c == '1') {
        img.set(x, y);
      } else if (c != '0') {
        throw ImageIoError(std::string("invalid P1 pixel character '") + c + "'");
      }
    }
  }
  return img;
}

std::string encode_pbm(const BinaryImage& img, BinaryFormat format) {
  const int w = img.width();
  const int h = img.height();
  std::string out;
  if (format == BinaryFormat::pbm_plain) {
    out = "P1\n" + std::to_string(w) + " " + std::to_string(h) + "\n";
    for (int y = 0; y < h; ++y) {
      int col = 0;
      for (int x = 0; x < w; ++x) {
        out += img.get(x, y) ? '1' : '0';
        // Plain PBM lines should stay under 70 characters.
        if (++col == 64 && x + 1 < w) {
          out += '\n';
          col = 0;
        } else if (x + 1 < w) {
          out += ' ';
          ++col;
        }
      }
      out += '\n';
    }
    return out;
  }
  if (format != BinaryFormat::pbm_raw) throw ImageIoError("encode_pbm: PNG output is not supported");
  out = "P4\n" + std::to_string(w) + " " + std::to_string(h) + "\n";
  const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
  const std::size_t header = out.size();
  out.resize(header + row_bytes * h, '\0');
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (img.get(x, y)) {
        auto& byte = out[header + y * row_bytes + x / 8];
        byte = static_cast<char>(static_cast<unsigned char>(byte) | (0x80u >> (x % 8)));
      }
    }
  }
  return out;
}

BinaryImage read_binary(const std::filesystem::path& path, const ReadOptions& opts) {
  if (opts.format == BinaryFormat::png) return read_png_binary(path, opts.gray_threshold);
  std::string bytes = read_file(path);
  if (!opts.format && is_png(bytes)) return read_png_binary(path, opts.gray_threshold);
  try {
    BinaryImage img = decode_pbm(bytes);
    if (opts.format) {
      const bool raw = bytes[1] == '4';
      if (raw != (*opts.format == BinaryFormat::pbm_raw)) {
        throw ImageIoError("format mismatch: file is " + std::string(raw ? "P4" : "P1"));
      }
    }
    return img;
  } catch (const ImageIoError& e) {
    throw ImageIoError(path.string() + ": " + e.what());
  }
}

void write_binary(const BinaryImage& img, const std::filesystem::path& path, BinaryFormat format) {
  write_file(path, encode_pbm(img, format));
}

ColorImage decode_ppm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw ImageIoError("not a PPM file (expected P6 magic)");
  }
  HeaderReader header(bytes);
  ColorImage img;
  img.width = header.next_int("width");
  img.height = header.next_int("height");
  check_dimensions(img.width, img.height);
  const int maxval = header.next_int("maxval");
  if (maxval != 255) throw ImageIoError("unsupported PPM maxval " + std::to_string(maxval));
  header.end_header();
  const std::size_t need = 3 * static_cast<std::size_t>(img.width) * img.height;
  if (bytes.size() - header.pos() < need) throw ImageIoError("truncated P6 data");
  img.rgb.assign(bytes.begin() + static_cast<std::ptrdiff_t>(header.pos()),
                 bytes.begin() + static_cast<std::ptrdiff_t>(header.pos() + need));
  return img;
}

std::string encode_ppm(const ColorImage& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(img.rgb.begin(), img.rgb.end());
  return out;
}

void write_ppm(const ColorImage& img, const std::filesystem::path& path) {
  write_file(path, encode_ppm(img));
}

ColorImage read_color(const std::filesystem::path& path) {
  std::string bytes = read_file(path);
  if (is_png(bytes)) return read_png_color(path);
  try {
    return decode_ppm(bytes);
  } catch (const ImageIoError& e) {
    throw ImageIoError(path.string() + ": " + e.what());
  }
}

Hsi rgb_to_hsi(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  const double r = r8 / 255.0;
  const double g = g8 / 255.0;
  const double b = b8 / 255.0;
  Hsi out;
  out.intensity = (r + g + b) / 3.0;
  if (out.intensity > 0) out.saturation = 1.0 - std::min({r, g, b}) / out.intensity;
  const double num = 0.5 * ((r - g) + (r - b));
  const double den = std::sqrt((r - g) * (r - g) + (r - b) * (g - b));
  if (den > 0) {
    const double theta = std::acos(std::clamp(num / den, -1.0, 1.0)) * 180.0 / std::numbers::pi;
    double h = b <= g ? theta : 360.0 - theta;
    if (h >= 360.0) h -= 360.0;
    out.hue = h;
  }
  return out;
}

void ColorClassSpec::validate() const {
  auto bad = [&](const std::string& msg) {
    throw std::invalid_argument("color class '" + name + "': " + msg);
  };
  if (hue_range) {
    const auto [lo, hi] = *hue_range;
    if (lo < 0 || lo > 360 || hi < 0 || hi > 360) bad("hue bounds must lie in [0, 360]");
  }
  if (saturation_min < 0 || saturation_min > 1) bad("saturation_min must lie in [0, 1]");
  const auto [ilo, ihi] = intensity_range;
  if (ilo < 0 || ihi > 1 || ilo > ihi) bad("intensity range must satisfy 0 <= low <= high <= 1");
}

bool ColorClassSpec::matches(const Hsi& c) const {
  if (c.intensity < intensity_range.first || c.intensity > intensity_range.second) return false;
  if (c.saturation < saturation_min) return false;
  if (!hue_range) return true;
  if (!c.hue) return false;
  double lo = std::fmod(hue_range->first, 360.0);
  double hi = std::fmod(hue_range->second, 360.0);
  if (hue_range->second == 360.0) hi = 360.0;
  const double h = *c.hue;
  if (lo <= hi) return h >= lo && h < hi;
  return h >= lo || h < hi;
}

std::map<std::string, BinaryImage> color_separate(const ColorImage& img,
                                                  const std::vector<ColorClassSpec>& classes) {
  if (img.width < 1 || img.height < 1) throw std::invalid_argument("color_separate: empty image");
  if (classes.empty()) throw std::invalid_argument("color_separate: no color classes");
  std::map<std::string, BinaryImage> planes;
  for (const ColorClassSpec& c : classes) {
    c.validate();
    if (planes.contains(c.name)) {
      throw std::invalid_argument("color_separate: duplicate class name '" + c.name + "'");
    }
    planes.emplace(c.name, BinaryImage(img.width, img.height));
  }
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const Hsi hsi = rgb_to_hsi(img.r(x, y), img.g(x, y), img.b(x, y));
      for (const ColorClassSpec& c : classes) {
        if (c.matches(hsi)) {
          planes.at(c.name).set(x, y);
          break;
        }
      }
    }
  }
  return planes;
}

ColorImage render_overlay(const BinaryImage& source, const RecognitionResult& result) {
  ColorImage out;
  out.width = source.width();
  out.height = source.height();
  out.rgb.assign(3 * static_cast<std::size_t>(out.width) * out.height, 255);
  auto paint = [&](const BinaryImage& layer, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    require_same_size(source, layer, "render_overlay");
    for (int y = 0; y < out.height; ++y) {
      for (int x = 0; x < out.width; ++x) {
        if (!layer.get(x, y)) continue;
        auto* px = &out.rgb[3 * (static_cast<std::size_t>(y) * out.width + x)];
        px[0] = r;
        px[1] = g;
        px[2] = b;
      }
    }
  };
  paint(source, 200, 200, 200);
  paint(result.solid, 0, 0, 0);
  paint(result.stippled, 0, 90, 220);
  paint(result.path, 0, 170, 0);
  paint(result.track, 220, 40, 40);
  return out;
}

}  // namespace maplines::io
