#pragma once

#include "hwgen/layout.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hwgen {

/// Row-major 8-bit grayscale; 0 is ink, 255 is paper.
struct GrayscaleImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayscaleImage() = default;
  GrayscaleImage(int w, int h, std::uint8_t fill)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  bool operator==(const GrayscaleImage&) const = default;
};

struct RenderConfig {
  double stroke_width_px = 2.2;
  bool antialias = true;
  std::optional<std::uint8_t> ruled_line_gray = std::uint8_t{200};
  std::uint8_t background_gray = 255;

  bool operator==(const RenderConfig&) const = default;
};

void validate(const RenderConfig& cfg);
RenderConfig render_config_from_json(const nlohmann::json& j);

/// Draws every pen-down polyline as a round-capped, round-joined stroke.
///
/// Pixel (i, j) covers [i, i+1) x [j, j+1); coverage is sampled at its
/// centre. With antialiasing, coverage falls off linearly over one pixel
/// around the stroke edge; without it a pixel is inked iff its centre lies
/// within half the stroke width of the path. Overlapping strokes take the
/// maximum coverage, so crossings do not darken twice.
GrayscaleImage render_page(const PageGeometry& geom, const PageSpec& spec,
                           const RenderConfig& cfg);

/// 8-bit grayscale PNG, no alpha, no timestamps.
std::vector<std::uint8_t> encode_png(const GrayscaleImage& image);
GrayscaleImage decode_png(const std::vector<std::uint8_t>& bytes);

void write_png_file(const std::string& path, const GrayscaleImage& image);
GrayscaleImage read_png_file(const std::string& path);

}  // namespace hwgen
