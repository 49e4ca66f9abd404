#include "hwgen/raster.hpp"

#include <nlohmann/json.hpp>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace hwgen {

using nlohmann::json;

void validate(const RenderConfig& cfg) {
  if (!(cfg.stroke_width_px > 0.0) || !std::isfinite(cfg.stroke_width_px)) {
    throw std::invalid_argument("render: stroke_width_px must be positive");
  }
}

RenderConfig render_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("render: expected a JSON object");
  RenderConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "stroke_width_px") cfg.stroke_width_px = value.get<double>();
    else if (key == "antialias") cfg.antialias = value.get<bool>();
    else if (key == "background_gray") cfg.background_gray = value.get<std::uint8_t>();
    else if (key == "ruled_line_gray") {
      if (value.is_null()) cfg.ruled_line_gray.reset();
      else cfg.ruled_line_gray = value.get<std::uint8_t>();
    } else {
      throw std::invalid_argument("render: unknown key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

namespace {

void stamp_segment(std::vector<float>& coverage, int width, int height, const Point2d& a,
                   const Point2d& b, double radius, bool antialias) {
  const double reach = radius + (antialias ? 0.5 : 0.0);
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x(), b.x()) - reach)));
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(std::max(a.x(), b.x()) + reach)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y(), b.y()) - reach)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(std::max(a.y(), b.y()) + reach)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Point2d centre(x + 0.5, y + 0.5);
      const double d = detail::distance_to_segment(centre, a, b);
      float c;
      if (antialias) {
        c = static_cast<float>(std::clamp(radius + 0.5 - d, 0.0, 1.0));
      } else {
        c = d <= radius ? 1.0f : 0.0f;
      }
      float& slot = coverage[static_cast<std::size_t>(y) * width + x];
      slot = std::max(slot, c);
    }
  }
}

}  // namespace

GrayscaleImage render_page(const PageGeometry& geom, const PageSpec& spec,
                           const RenderConfig& cfg) {
  validate(spec);
  validate(cfg);
  GrayscaleImage image(spec.width_px, spec.height_px, cfg.background_gray);
  if (spec.has_ruled_lines && cfg.ruled_line_gray) {
    for (double baseline : geom.baselines_px) {
      const int row = static_cast<int>(std::floor(baseline));
      if (row < 0 || row >= image.height) continue;
      for (int x = 0; x < image.width; ++x) image.at(x, row) = *cfg.ruled_line_gray;
    }
  }

  std::vector<float> coverage(image.pixels.size(), 0.0f);
  const double radius = cfg.stroke_width_px / 2.0;
  for (const auto& line : geom.strokes) {
    if (!line.pen_down) continue;
    for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
      stamp_segment(coverage, image.width, image.height, line.points[i], line.points[i + 1],
                    radius, cfg.antialias);
    }
    if (line.points.size() == 1) {
      stamp_segment(coverage, image.width, image.height, line.points[0], line.points[0], radius,
                    cfg.antialias);
    }
  }
  for (std::size_t i = 0; i < coverage.size(); ++i) {
    if (coverage[i] <= 0.0f) continue;
    const double base = image.pixels[i];
    image.pixels[i] = static_cast<std::uint8_t>(std::lround(base * (1.0 - coverage[i])));
  }
  return image;
}

namespace {

void png_append(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

struct ReadCursor {
  const std::vector<std::uint8_t>* bytes;
  std::size_t offset;
};

void png_consume(png_structp png, png_bytep data, png_size_t length) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->offset + length > cur->bytes->size()) png_error(png, "truncated PNG data");
  std::memcpy(data, cur->bytes->data() + cur->offset, length);
  cur->offset += length;
}

thread_local char png_message[256];

void png_fail(png_structp png, png_const_charp message) {
  std::snprintf(png_message, sizeof png_message, "%s", message);
  png_longjmp(png, 1);
}

void png_warn(png_structp, png_const_charp) {}

// No objects with destructors may live in these two frames: libpng reports
// errors by longjmp back to the setjmp point.
bool write_rows(png_structp png, png_infop info, const GrayscaleImage& image,
                std::vector<std::uint8_t>* out) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_write_fn(png, out, png_append, png_flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  for (int y = 0; y < image.height; ++y) {
    png_write_row(png, image.pixels.data() + static_cast<std::size_t>(y) * image.width);
  }
  png_write_end(png, nullptr);
  return true;
}

enum class ReadStatus { Ok, Failed, NotGray8 };

ReadStatus read_header(png_structp png, png_infop info, ReadCursor* cursor,
                       png_uint_32* width, png_uint_32* height) {
  if (setjmp(png_jmpbuf(png))) return ReadStatus::Failed;
  png_set_read_fn(png, cursor, png_consume);
  png_read_info(png, info);
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY || png_get_bit_depth(png, info) != 8) {
    return ReadStatus::NotGray8;
  }
  *width = png_get_image_width(png, info);
  *height = png_get_image_height(png, info);
  return ReadStatus::Ok;
}

bool read_rows(png_structp png, std::uint8_t* pixels, png_uint_32 width, png_uint_32 height) {
  if (setjmp(png_jmpbuf(png))) return false;
  for (png_uint_32 y = 0; y < height; ++y) {
    png_read_row(png, pixels + static_cast<std::size_t>(y) * width, nullptr);
  }
  return true;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const GrayscaleImage& image) {
  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  if (!png) throw std::runtime_error("png: cannot create write struct");
  png_infop info = png_create_info_struct(png);
  const bool ok = info && write_rows(png, info, image, &out);
  png_destroy_write_struct(&png, &info);
  if (!ok) throw std::runtime_error(std::string("png: ") + png_message);
  return out;
}

GrayscaleImage decode_png(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw std::runtime_error("png: not a PNG stream");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  if (!png) throw std::runtime_error("png: cannot create read struct");
  png_infop info = png_create_info_struct(png);
  ReadCursor cursor{&bytes, 0};
  png_uint_32 width = 0, height = 0;
  const ReadStatus status =
      info ? read_header(png, info, &cursor, &width, &height) : ReadStatus::Failed;
  GrayscaleImage image;
  bool ok = status == ReadStatus::Ok;
  if (ok) {
    image = GrayscaleImage(static_cast<int>(width), static_cast<int>(height), 0);
    ok = read_rows(png, image.pixels.data(), width, height);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (status == ReadStatus::NotGray8) throw std::runtime_error("png: expected 8-bit grayscale");
  if (!ok) throw std::runtime_error(std::string("png: ") + png_message);
  return image;
}

void write_png_file(const std::string& path, const GrayscaleImage& image) {
  const auto bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

GrayscaleImage read_png_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_png(bytes);
}

}  // namespace hwgen
