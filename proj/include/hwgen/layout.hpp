#pragma once

#include "hwgen/geometry.hpp"
#include "hwgen/rng.hpp"
#include "hwgen/style.hpp"
#include "hwgen/templates.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hwgen {

struct PageSpec {
  int width_px = 1000;
  int height_px = 1400;
  int margin_px = 60;
  double line_height = 2.6;   // glyph units
  double px_per_unit = 24.0;  // pixels per x-height
  bool has_ruled_lines = false;

  bool operator==(const PageSpec&) const = default;
};

void validate(const PageSpec& spec);
PageSpec page_spec_from_json(const nlohmann::json& j);

/// Axis-aligned box in page pixels.
struct Box {
  double x = 0, y = 0, w = 0, h = 0;
};

struct WordBox {
  std::string text;
  Box box;
};

/// One glyph instance as placed on the page, for inspection and tests.
struct PlacedGlyph {
  char32_t character = 0;
  std::string variant_id;
  std::size_t word_index = 0;
  Point2d origin;            // pen position on the drifted baseline, px
  double baseline_px = 0.0;  // undrifted line baseline, px
  std::vector<Stroke> strokes;      // perturbed, transformed main strokes, px
  std::vector<Stroke> aux_strokes;  // same for diacritics
  bool cutoff_applied = false;
  bool joined_to_previous = false;
};

/// Which glyphs a polyline draws: the inclusive index range into `glyphs`.
/// For a pen-up move it names the glyphs it travels between.
struct StrokeSpan {
  std::size_t first_glyph = 0;
  std::size_t last_glyph = 0;
};

struct PageGeometry {
  std::vector<Polylined> strokes;  // page pixels
  std::vector<StrokeSpan> spans;   // parallel to strokes
  std::vector<WordBox> words;
  std::vector<PlacedGlyph> glyphs;
  std::vector<double> baselines_px;  // one per line, for ruled paper
  std::string ground_truth;
};

struct DriftState {
  double current_drift = 0.0;  // glyph units
};

/// Random walk on the writing line, soft-clipped by tanh to stay strictly
/// inside (-y_delta_max, y_delta_max).
DriftState drift_step(DriftState state, const StyleParams& params, Rng& rng);

/// Clamps a sampled spacing delta from below at -overlap_fraction * |mean|.
/// Positive deltas pass unchanged.
double negative_overlap_guard(double mean_distance, double sampled_delta,
                              double overlap_fraction = 0.3);

struct LayoutOptions {
  double flatten_tolerance_px = 0.15;
  // Extra pen advance when a letter is randomly disconnected, glyph units.
  double disconnect_gap = 0.15;
  double overlap_fraction = 0.3;
};

/// Whitespace runs collapse to one space; leading/trailing space is trimmed.
std::string normalize_whitespace(std::string_view text);

/// Lays out `text` on one page with greedy word wrap. Throws CharNotInDb for
/// unsupported characters and PageOverflow when a word is wider than a line
/// or the text needs more lines than the page holds. Newlines force a break.
PageGeometry layout_text(std::string_view text, const TemplateDB& db, const StyleParams& params,
                         const PageSpec& spec, Rng rng, const LayoutOptions& options = {});

/// The page's layout stream: every random draw in layout_text comes from it.
Rng layout_rng(std::uint64_t seed, std::uint64_t page_index);

}  // namespace hwgen
