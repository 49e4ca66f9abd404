#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hwgen/errors.hpp"
#include "hwgen/layout.hpp"
#include "hwgen/unicode.hpp"

#include <cmath>

using namespace hwgen;

namespace {

const TemplateDB& example_db() {
  static const TemplateDB db = load_template_db_file("data/templates/example_cyrillic.json");
  return db;
}

StyleParams zero_params(const TemplateDB& db, std::uint64_t seed = 1) {
  return sample_page_style(StyleConfig::zero_noise(), db, seed, 0);
}

StyleParams noisy_params(const TemplateDB& db, std::uint64_t seed = 1) {
  return sample_page_style(StyleConfig{}, db, seed, 0);
}

PageGeometry lay(std::string_view text, const StyleParams& params, const PageSpec& spec = {}) {
  return layout_text(text, example_db(), params, spec, layout_rng(params.seed, 0));
}

// Glyph strokes relative to the glyph origin.
std::vector<Point2d> relative_points(const PlacedGlyph& g) {
  std::vector<Point2d> out;
  for (const auto& s : g.strokes) {
    for (const auto& n : s) out.push_back(n.p - g.origin);
  }
  return out;
}

}  // namespace

TEST_CASE("drift stays at zero when disabled") {
  StyleParams p;
  p.y_delta_max = 0.0;
  p.y_delta_speed = 0.5;
  Rng rng(1);
  DriftState s;
  for (int i = 0; i < 1000; ++i) {
    s = drift_step(s, p, rng);
    CHECK(s.current_drift == 0.0);
  }
}

TEST_CASE("drift soft-clips through tanh") {
  StyleParams p;
  p.y_delta_max = 8.0;
  p.y_delta_speed = 0.0;
  Rng rng(2);
  const DriftState s = drift_step({8.0}, p, rng);
  CHECK(std::abs(s.current_drift - 8.0 * std::tanh(1.0)) <= 1e-9);
  CHECK(std::abs(s.current_drift - 6.0927) < 1e-4);
}

TEST_CASE("drift never reaches the limit") {
  for (double speed : {0.04, 1.0, 50.0}) {
    StyleParams p;
    p.y_delta_max = 0.25;
    p.y_delta_speed = speed;
    Rng rng(3);
    DriftState s;
    double worst = 0.0;
    for (int i = 0; i < 1000000; ++i) {
      s = drift_step(s, p, rng);
      worst = std::max(worst, std::abs(s.current_drift));
    }
    CHECK(worst < p.y_delta_max);
  }
}

TEST_CASE("negative overlap guard clamps only from below") {
  const double cd = 0.12;
  CHECK(negative_overlap_guard(cd, 0.0) == 0.0);
  CHECK(negative_overlap_guard(cd, -10 * cd) == doctest::Approx(-0.3 * cd));
  CHECK(negative_overlap_guard(cd, 0.5 * cd) == 0.5 * cd);
  CHECK(negative_overlap_guard(cd, -0.1 * cd) == -0.1 * cd);
}

TEST_CASE("whitespace normalization") {
  CHECK(normalize_whitespace("  а \t б\n\nв  ") == "а б в");
  CHECK(normalize_whitespace("") == "");
}

TEST_CASE("repeated letters are congruent at zero noise") {
  const StyleParams p = zero_params(example_db());
  const PageGeometry g = lay("ото", p);
  REQUIRE(g.glyphs.size() == 3);
  const auto a = relative_points(g.glyphs[0]);
  const auto b = relative_points(g.glyphs[2]);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() < 1e-9);
  CHECK(g.glyphs[0].origin.y() == g.glyphs[2].origin.y());
  const double ppu = PageSpec{}.px_per_unit;
  const double adv_o = example_db().glyphs.at(U'о')[0].advance_width;
  const double adv_t = pick_variant(example_db(), U'т', p.variant_assignment).advance_width;
  const double expected = (adv_o + adv_t + 2 * p.char_distance) * ppu;
  CHECK(g.glyphs[2].origin.x() - g.glyphs[0].origin.x() == doctest::Approx(expected));
}

TEST_CASE("cutoff drops the exit node only inside a word") {
  const StyleParams p = zero_params(example_db());
  const PageGeometry medial = lay("ла", p);
  const PageGeometry final_ = lay("ал", p);
  const PlacedGlyph& m = medial.glyphs[0];
  const PlacedGlyph& f = final_.glyphs[1];
  CHECK(m.cutoff_applied);
  CHECK_FALSE(f.cutoff_applied);
  REQUIRE(f.strokes.back().size() == m.strokes.back().size() + 1);
  const auto a = relative_points(m);
  const auto b = relative_points(f);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() < 1e-9);
  CHECK(f.strokes.back().back().flags.cutoff_if_medial);
  CHECK_FALSE(lay("л", p).glyphs[0].cutoff_applied);
}

TEST_CASE("connected letters share one pen-down stroke") {
  const StyleParams p = zero_params(example_db());
  const PageGeometry g = lay("ото", p);
  bool spans_two = false;
  for (std::size_t i = 0; i < g.strokes.size(); ++i) {
    if (g.strokes[i].pen_down && g.spans[i].first_glyph != g.spans[i].last_glyph) spans_two = true;
  }
  CHECK(spans_two);
  CHECK(g.glyphs[1].joined_to_previous);
}

TEST_CASE("forced disconnection leaves no pen-down stroke across letters") {
  StyleParams p = zero_params(example_db());
  p.symbol_disconnect_prob = 1.0;
  const PageGeometry g = lay("мама мыла раму", p);
  REQUIRE(g.strokes.size() == g.spans.size());
  for (std::size_t i = 0; i < g.strokes.size(); ++i) {
    if (g.strokes[i].pen_down) CHECK(g.spans[i].first_glyph == g.spans[i].last_glyph);
  }
  for (const auto& gl : g.glyphs) CHECK_FALSE(gl.joined_to_previous);
  // The disconnection gap widens the word.
  const PageGeometry joined = lay("мама мыла раму", zero_params(example_db()));
  CHECK(g.words[0].box.w > joined.words[0].box.w);
}

TEST_CASE("an interrupt ends the stroke so the next letter does not join") {
  const StyleParams p = zero_params(example_db());
  const PageGeometry g = lay("оба", p);
  REQUIRE(g.glyphs.size() == 3);
  CHECK(g.glyphs[1].joined_to_previous);
  CHECK_FALSE(g.glyphs[2].joined_to_previous);
  const auto& b = example_db().glyphs.at(U'б')[0];
  CHECK(b.strokes[0].back().flags.interrupt_after);
}

TEST_CASE("punctuation never joins") {
  const StyleParams p = zero_params(example_db());
  const PageGeometry g = lay("да, да", p);
  REQUIRE(g.glyphs.size() == 5);
  CHECK(g.glyphs[1].joined_to_previous);
  CHECK_FALSE(g.glyphs[2].joined_to_previous);
}

TEST_CASE("unknown characters are an error") {
  const StyleParams p = zero_params(example_db());
  try {
    lay("мир ß", p);
    FAIL("expected CharNotInDb");
  } catch (const CharNotInDb& e) {
    CHECK(e.character() == U'ß');
  }
  CHECK_THROWS_AS(lay("abc", p), CharNotInDb);
}

TEST_CASE("overflow is reported, not truncated") {
  const StyleParams p = zero_params(example_db());
  PageSpec narrow;
  narrow.width_px = 200;
  CHECK_THROWS_AS(lay("достопримечательность", p, narrow), PageOverflow);
  PageSpec small;
  small.height_px = 300;
  std::string text;
  for (int i = 0; i < 60; ++i) text += "слово ";
  CHECK_THROWS_AS(lay(text, p, small), PageOverflow);
}

TEST_CASE("ground truth is the whitespace-normalized input") {
  const StyleParams p = noisy_params(example_db());
  const std::string text = "  Утро было тихим.\nМы вышли   рано!  ";
  const PageGeometry g = lay(text, p);
  CHECK(g.ground_truth == normalize_whitespace(text));
  CHECK(g.baselines_px.size() == 2);  // the newline forces a break
}

TEST_CASE("word boxes contain their strokes and lines wrap inside the margins") {
  const StyleParams p = noisy_params(example_db(), 4);
  std::string text;
  for (int i = 0; i < 8; ++i) text += "мы вышли из дома рано, чтобы успеть на первый поезд. ";
  const PageSpec spec;
  const PageGeometry g = lay(text, p, spec);
  CHECK(g.baselines_px.size() > 3);
  REQUIRE(g.words.size() == 80);
  for (const auto& gl : g.glyphs) {
    const auto& box = g.words[gl.word_index].box;
    for (const auto& s : gl.strokes) {
      for (const auto& n : s) {
        CHECK_UNARY(n.p.x() >= box.x - 1e-9);
        CHECK_UNARY(n.p.x() <= box.x + box.w + 1e-9);
        CHECK_UNARY(n.p.y() >= box.y - 1e-9);
        CHECK_UNARY(n.p.y() <= box.y + box.h + 1e-9);
      }
    }
    CHECK_UNARY(gl.origin.x() >= spec.margin_px - 1e-9);
    CHECK_UNARY(gl.origin.x() <= spec.width_px - spec.margin_px);
  }
}

TEST_CASE("drift keeps glyphs within y_delta_max of the baseline") {
  const StyleParams p = noisy_params(example_db(), 5);
  std::string text;
  for (int i = 0; i < 10; ++i) text += "здесь всё идёт медленно и спокойно ";
  const PageGeometry g = lay(text, p);
  const double limit = p.y_delta_max * PageSpec{}.px_per_unit;
  double worst = 0.0;
  for (const auto& gl : g.glyphs) worst = std::max(worst, std::abs(gl.origin.y() - gl.baseline_px));
  CHECK(worst > 0.0);
  CHECK(worst < limit);
}

TEST_CASE("one variant per character on a page") {
  TemplateDB db = example_db();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const StyleParams p = noisy_params(db, seed);
    const PageGeometry g = lay("тот тут, тот там. ТТ", p);
    std::set<std::string> used;
    for (const auto& gl : g.glyphs) {
      if (gl.character == U'т') used.insert(gl.variant_id);
    }
    CHECK(used.size() == 1);
  }
}

TEST_CASE("layout is a pure function of its inputs") {
  const StyleParams p = noisy_params(example_db(), 6);
  const PageGeometry a = lay("Передай привет всем нашим.", p);
  const PageGeometry b = lay("Передай привет всем нашим.", p);
  REQUIRE(a.strokes.size() == b.strokes.size());
  for (std::size_t i = 0; i < a.strokes.size(); ++i) CHECK(a.strokes[i].points == b.strokes[i].points);
  const PageGeometry c = layout_text("Передай привет всем нашим.", example_db(), p, PageSpec{},
                                     layout_rng(p.seed, 1));
  CHECK(c.strokes[0].points != a.strokes[0].points);
}

TEST_CASE("zero noise gives identical geometry on two pages") {
  const StyleConfig cfg = StyleConfig::zero_noise();
  const StyleParams p0 = sample_page_style(cfg, example_db(), 9, 0);
  StyleParams p1 = sample_page_style(cfg, example_db(), 9, 1);
  p1.variant_assignment = p0.variant_assignment;
  p1.page_index = p0.page_index;
  const auto a = layout_text("мама мыла раму", example_db(), p0, {}, layout_rng(9, 0));
  const auto b = layout_text("мама мыла раму", example_db(), p1, {}, layout_rng(9, 1));
  REQUIRE(a.strokes.size() == b.strokes.size());
  for (std::size_t i = 0; i < a.strokes.size(); ++i) CHECK(a.strokes[i].points == b.strokes[i].points);
}

TEST_CASE("uppercase falls back to the lowercase template at the db scale") {
  const StyleParams p = zero_params(example_db());
  const PageGeometry g = lay("Оо", p);
  const auto big = relative_points(g.glyphs[0]);
  const auto small = relative_points(g.glyphs[1]);
  REQUIRE(big.size() == small.size());
  for (std::size_t i = 0; i < big.size(); ++i) {
    CHECK((big[i] - example_db().uppercase_scale * small[i]).norm() < 1e-9);
  }
}

TEST_CASE("skew shears about the baseline") {
  StyleParams p = zero_params(example_db());
  p.skew_angle = 0.3;
  const PageGeometry g = lay("и", p);
  const PageGeometry flat = lay("и", zero_params(example_db()));
  const auto a = relative_points(g.glyphs[0]);
  const auto b = relative_points(flat.glyphs[0]);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].y() == doctest::Approx(b[i].y()));
    CHECK(a[i].x() == doctest::Approx(b[i].x() - std::tan(0.3) * b[i].y()));
  }
}

TEST_CASE("pen-up moves connect consecutive strokes") {
  const PageGeometry g = lay("жук", noisy_params(example_db(), 8));
  for (std::size_t i = 0; i < g.strokes.size(); ++i) {
    if (g.strokes[i].pen_down) continue;
    REQUIRE(i > 0);
    REQUIRE(i + 1 < g.strokes.size());
    CHECK(g.strokes[i].points.front() == g.strokes[i - 1].points.back());
    CHECK(g.strokes[i].points.back() == g.strokes[i + 1].points.front());
  }
}

TEST_CASE("page spec validation") {
  PageSpec s;
  s.margin_px = 500;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s = {};
  s.px_per_unit = 0;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
}
