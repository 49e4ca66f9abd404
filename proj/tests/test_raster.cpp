#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hwgen/raster.hpp"
#include "oracles.hpp"

#include <cstdlib>
#include <filesystem>
#include <set>

using namespace hwgen;

namespace {

PageSpec small_spec(int w = 64, int h = 32) {
  PageSpec s;
  s.width_px = w;
  s.height_px = h;
  s.margin_px = 2;
  return s;
}

PageGeometry one_line(std::vector<Point2d> pts, bool pen_down = true) {
  PageGeometry g;
  Polylined line;
  line.points = std::move(pts);
  line.pen_down = pen_down;
  g.strokes.push_back(line);
  g.spans.push_back({0, 0});
  return g;
}

RenderConfig plain(double width, bool aa) {
  RenderConfig c;
  c.stroke_width_px = width;
  c.antialias = aa;
  c.ruled_line_gray.reset();
  return c;
}

std::set<std::pair<int, int>> inked(const GrayscaleImage& img) {
  std::set<std::pair<int, int>> out;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.at(x, y) < 255) out.emplace(x, y);
    }
  }
  return out;
}

// Golden files are regenerated only on request.
void compare_with_golden(const GrayscaleImage& image, const std::string& name) {
  const std::string path = "tests/golden/" + name;
  if (std::getenv("HWGEN_UPDATE_GOLDEN")) write_png_file(path, image);
  REQUIRE(std::filesystem::exists(path));
  const GrayscaleImage golden = read_png_file(path);
  CHECK(golden.width == image.width);
  CHECK(golden.height == image.height);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < image.pixels.size() && i < golden.pixels.size(); ++i) {
    if (image.pixels[i] != golden.pixels[i]) ++differing;
  }
  CHECK(differing == 0);
}

const TemplateDB& example_db() {
  static const TemplateDB db = load_template_db_file("data/templates/example_cyrillic.json");
  return db;
}

GrayscaleImage render_text(const std::string& text, const StyleConfig& cfg, std::uint64_t seed) {
  PageSpec spec;
  spec.width_px = 420;
  spec.height_px = 150;
  spec.margin_px = 20;
  spec.has_ruled_lines = true;
  const StyleParams p = sample_page_style(cfg, example_db(), seed, 0);
  const PageGeometry g = layout_text(text, example_db(), p, spec, layout_rng(seed, 0));
  return render_page(g, spec, RenderConfig{});
}

}  // namespace

TEST_CASE("non-antialiased horizontal stroke matches the capsule oracle") {
  for (double width : {1.0, 2.2, 3.0, 5.5}) {
    for (double y : {10.5, 11.0, 11.3}) {
      const auto g = one_line({{8.25, y}, {50.75, y}});
      const auto img = render_page(g, small_spec(), plain(width, false));
      const auto expected = oracle::horizontal_capsule(8.25, 50.75, y, width / 2, 64, 32);
      const std::set<std::pair<int, int>> want(expected.begin(), expected.end());
      CHECK(inked(img) == want);
      for (const auto& [x, yy] : want) CHECK(img.at(x, yy) == 0);
    }
  }
}

TEST_CASE("antialiased coverage ramps over one pixel at the edge") {
  const double y = 16.0, r = 1.5;
  const auto g = one_line({{10.0, y}, {54.0, y}});
  const auto img = render_page(g, small_spec(), plain(2 * r, true));
  for (int j = 0; j < 32; ++j) {
    const double d = std::abs(j + 0.5 - y);
    const int px = img.at(30, j);
    if (d <= r - 0.5) CHECK(px == 0);
    else if (d >= r + 0.5) CHECK(px == 255);
    else CHECK(px == std::lround(255.0 * (1.0 - (r + 0.5 - d))));
  }
}

TEST_CASE("crossing strokes take the maximum coverage") {
  PageGeometry g = one_line({{5, 16}, {60, 16}});
  Polylined v;
  v.points = {{32, 2}, {32, 30}};
  g.strokes.push_back(v);
  const auto img = render_page(g, small_spec(), plain(4.0, true));
  const auto single = render_page(one_line({{5, 16}, {60, 16}}), small_spec(), plain(4.0, true));
  CHECK(img.at(10, 15) == single.at(10, 15));
  CHECK(img.at(32, 16) == 0);
}

TEST_CASE("pen-up moves leave no ink") {
  const auto img = render_page(one_line({{5, 5}, {60, 25}}, false), small_spec(), plain(3, true));
  CHECK(inked(img).empty());
}

TEST_CASE("single-point strokes draw a dot") {
  const auto img = render_page(one_line({{20.5, 10.5}}), small_spec(), plain(3, false));
  CHECK(img.at(20, 10) == 0);
  CHECK(inked(img).size() == 9);
}

TEST_CASE("strokes outside the page are clipped") {
  const auto img = render_page(one_line({{-50, -50}, {200, 200}}), small_spec(), plain(3, true));
  CHECK(!inked(img).empty());
}

TEST_CASE("ruled lines sit on the baselines under the ink") {
  PageGeometry g = one_line({{5, 20}, {60, 20}});
  g.baselines_px = {20.7, 8.2};
  PageSpec spec = small_spec();
  spec.has_ruled_lines = true;
  RenderConfig cfg;
  cfg.stroke_width_px = 1.0;
  cfg.antialias = false;
  const auto img = render_page(g, spec, cfg);
  CHECK(img.at(1, 20) == 200);
  CHECK(img.at(1, 8) == 200);
  CHECK(img.at(1, 9) == 255);
  CHECK(img.at(30, 20) == 0);
  spec.has_ruled_lines = false;
  CHECK(render_page(g, spec, cfg).at(1, 20) == 255);
}

TEST_CASE("render config validation") {
  RenderConfig c;
  c.stroke_width_px = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("png round trip") {
  GrayscaleImage img(37, 11, 255);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) img.at(x, y) = static_cast<std::uint8_t>((x * 7 + y * 13) % 256);
  }
  const auto bytes = encode_png(img);
  REQUIRE(bytes.size() > 33);
  CHECK(bytes[24] == 8);  // bit depth
  CHECK(bytes[25] == 0);  // grayscale
  CHECK(decode_png(bytes) == img);
  CHECK(encode_png(img) == bytes);
}

TEST_CASE("png decoding rejects garbage") {
  CHECK_THROWS(decode_png({1, 2, 3}));
  GrayscaleImage img(4, 4, 0);
  auto bytes = encode_png(img);
  bytes.resize(bytes.size() / 2);
  CHECK_THROWS(decode_png(bytes));
}

TEST_CASE("golden render at zero noise") {
  compare_with_golden(render_text("мама мыла раму", StyleConfig::zero_noise(), 3), "zero_noise.png");
}

TEST_CASE("golden render with the default augmentation") {
  compare_with_golden(render_text("Ёжик шёл, пел!", StyleConfig{}, 11), "default_style.png");
}
