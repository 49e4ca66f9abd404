#include "hwgen/layout.hpp"

#include "hwgen/errors.hpp"
#include "hwgen/unicode.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace hwgen {

using nlohmann::json;

void validate(const PageSpec& spec) {
  if (spec.width_px <= 0 || spec.height_px <= 0) {
    throw std::invalid_argument("page: dimensions must be positive");
  }
  if (spec.margin_px < 0 || 2 * spec.margin_px >= spec.width_px ||
      2 * spec.margin_px >= spec.height_px) {
    throw std::invalid_argument("page: margin must be non-negative and < half of each dimension");
  }
  if (!(spec.line_height > 0.0) || !(spec.px_per_unit > 0.0)) {
    throw std::invalid_argument("page: line_height and px_per_unit must be positive");
  }
}

PageSpec page_spec_from_json(const json& j) {
  PageSpec spec;
  if (!j.is_object()) throw std::invalid_argument("page: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "width_px") spec.width_px = value.get<int>();
    else if (key == "height_px") spec.height_px = value.get<int>();
    else if (key == "margin_px") spec.margin_px = value.get<int>();
    else if (key == "line_height") spec.line_height = value.get<double>();
    else if (key == "px_per_unit") spec.px_per_unit = value.get<double>();
    else if (key == "has_ruled_lines") spec.has_ruled_lines = value.get<bool>();
    else throw std::invalid_argument("page: unknown key '" + key + "'");
  }
  validate(spec);
  return spec;
}

DriftState drift_step(DriftState state, const StyleParams& params, Rng& rng) {
  if (params.y_delta_max < 0.0) throw std::invalid_argument("drift_step: y_delta_max < 0");
  const double raw = state.current_drift + rng.normal(0.0, params.y_delta_speed);
  if (params.y_delta_max == 0.0) return {0.0};
  const double limit = params.y_delta_max;
  double drift = limit * std::tanh(raw / limit);
  // tanh saturates to exactly 1 in floating point for large arguments.
  if (std::abs(drift) >= limit) drift = std::copysign(std::nextafter(limit, 0.0), drift);
  return {drift};
}

double negative_overlap_guard(double mean_distance, double sampled_delta,
                              double overlap_fraction) {
  return std::max(sampled_delta, -overlap_fraction * std::abs(mean_distance));
}

std::string normalize_whitespace(std::string_view text) {
  const std::u32string s = unicode::decode(text);
  std::u32string out;
  bool pending_space = false;
  for (char32_t ch : s) {
    if (unicode::is_space(ch)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(ch);
  }
  return unicode::encode(out);
}

Rng layout_rng(std::uint64_t seed, std::uint64_t page_index) {
  return Rng(seed).derive(page_index).derive(streams::kLayout);
}

namespace {

struct Word {
  std::u32string text;
  bool break_before = false;
};

std::vector<Word> split_words(const std::u32string& text) {
  std::vector<Word> words;
  Word current;
  bool newline_seen = false;
  for (char32_t ch : text) {
    if (unicode::is_space(ch)) {
      if (!current.text.empty()) {
        words.push_back(current);
        current = {};
      }
      if (ch == U'\n') newline_seen = true;
      continue;
    }
    if (current.text.empty()) {
      current.break_before = newline_seen && !words.empty();
      newline_seen = false;
    }
    current.text.push_back(ch);
  }
  if (!current.text.empty()) words.push_back(current);
  return words;
}

/// Truncates at the first interrupt flag; returns whether one was found.
bool truncate_at_interrupt(Stroke& stroke) {
  for (std::size_t i = 0; i < stroke.size(); ++i) {
    if (stroke[i].flags.interrupt_after) {
      stroke.resize(i + 1);
      return true;
    }
  }
  return false;
}

/// Main strokes after the medial cutoff, with the interrupt truncation.
struct EffectiveStrokes {
  std::vector<Stroke> strokes;
  std::vector<bool> closed;  // stroke ended at an interrupt flag
  bool cutoff_applied = false;
};

EffectiveStrokes effective_strokes(const GlyphTemplate& g, bool medial) {
  EffectiveStrokes e;
  e.strokes = g.strokes;
  if (medial && e.strokes.back().back().flags.cutoff_if_medial) {
    e.strokes.back().pop_back();
    e.cutoff_applied = true;
  }
  for (auto& s : e.strokes) e.closed.push_back(truncate_at_interrupt(s));
  return e;
}

struct GlyphPlan {
  ResolvedGlyph resolved;
  EffectiveStrokes effective;
  GlyphJitter jitter;
  Rng rng;
  double drift = 0.0;
  double x = 0.0;  // pen offset from the word start, glyph units
  bool connect = false;
};

struct OpenStroke {
  Stroke nodes;
  StrokeSpan span;
  std::size_t word;
};

class PageBuilder {
 public:
  PageBuilder(const PageSpec& spec, const StyleParams& params, const LayoutOptions& options)
      : spec_(spec), params_(params), options_(options) {}

  void emit(Stroke nodes, StrokeSpan span, std::size_t word) {
    if (nodes.size() < 2) return;  // an interrupt on a stroke's first node
    const double ppu = spec_.px_per_unit;
    for (auto& n : nodes) {
      n.p *= ppu;
      n.v *= ppu;
    }
    Polylined line = flatten_nodes(nodes, options_.flatten_tolerance_px * params_.writing_speed);
    if (line.points.size() < 2) return;
    if (!geom.strokes.empty()) {
      Polylined travel;
      travel.pen_down = false;
      travel.points = {geom.strokes.back().points.back(), line.points.front()};
      geom.strokes.push_back(std::move(travel));
      geom.spans.push_back({geom.spans.back().last_glyph, span.first_glyph});
      stroke_words_.push_back(std::nullopt);
    }
    geom.strokes.push_back(std::move(line));
    geom.spans.push_back(span);
    stroke_words_.push_back(word);
  }

  void finish_word_boxes() {
    for (auto& w : geom.words) w.box = {};
    std::vector<Eigen::AlignedBox2d> boxes(geom.words.size());
    for (std::size_t i = 0; i < geom.strokes.size(); ++i) {
      if (!stroke_words_[i]) continue;
      for (const auto& q : geom.strokes[i].points) boxes[*stroke_words_[i]].extend(q);
    }
    for (std::size_t w = 0; w < boxes.size(); ++w) {
      if (boxes[w].isEmpty()) continue;
      const auto& b = boxes[w];
      geom.words[w].box = {b.min().x(), b.min().y(), b.sizes().x(), b.sizes().y()};
    }
  }

  PageGeometry geom;

 private:
  const PageSpec& spec_;
  const StyleParams& params_;
  const LayoutOptions& options_;
  std::vector<std::optional<std::size_t>> stroke_words_;
};

}  // namespace

PageGeometry layout_text(std::string_view text, const TemplateDB& db, const StyleParams& params,
                         const PageSpec& spec, Rng rng, const LayoutOptions& options) {
  validate(spec);
  const std::u32string decoded = unicode::decode(text);
  const std::vector<Word> words = split_words(decoded);

  const double ppu = spec.px_per_unit;
  const double left = spec.margin_px / ppu;
  const double right = (spec.width_px - spec.margin_px) / ppu;
  const double usable_height = (spec.height_px - 2.0 * spec.margin_px) / ppu;
  const auto max_lines = static_cast<std::size_t>(std::floor(usable_height / spec.line_height));
  auto baseline_of = [&](std::size_t line) {
    return spec.margin_px / ppu + (static_cast<double>(line) + 0.7) * spec.line_height;
  };

  PageBuilder builder(spec, params, options);
  PageGeometry& geom = builder.geom;
  Rng drift_rng = rng.derive(streams::kDrift);
  DriftState drift;
  std::uint64_t glyph_counter = 0;
  std::size_t line = 0;
  double pen_x = left;
  bool line_empty = true;

  if (max_lines == 0 && !words.empty()) throw PageOverflow("page holds no text lines");

  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const Word& word = words[wi];

    // Pass 1: draw every per-glyph value and measure the word.
    std::vector<GlyphPlan> plan;
    plan.reserve(word.text.size());
    double x = 0.0;
    for (std::size_t k = 0; k < word.text.size(); ++k) {
      const bool medial = k + 1 < word.text.size();
      GlyphPlan p{resolve_glyph(db, word.text[k], params.variant_assignment), {}, {},
                  rng.derive(glyph_counter++)};
      p.effective = effective_strokes(*p.resolved.glyph, medial);
      p.jitter = sample_glyph_jitter(params, p.rng);
      drift = drift_step(drift, params, drift_rng);
      p.drift = drift.current_drift;
      if (k > 0) {
        const GlyphPlan& prev = plan.back();
        const bool joinable = prev.resolved.glyph->joins && p.resolved.glyph->joins &&
                              !prev.effective.closed.back();
        p.connect = joinable && !p.jitter.disconnect;
        if (joinable && p.jitter.disconnect) x += options.disconnect_gap;
      }
      p.x = x;
      const double width = std::max(p.jitter.width_scale, 0.05);
      x += p.resolved.glyph->advance_width * p.resolved.scale * width;
      if (medial) {
        x += params.char_distance + negative_overlap_guard(params.char_distance,
                                                           p.jitter.spacing_delta,
                                                           options.overlap_fraction);
      }
      plan.push_back(std::move(p));
    }
    const double word_width = x;

    if (word_width > right - left) {
      throw PageOverflow("word '" + unicode::encode(word.text) + "' is wider than a line");
    }
    if (!line_empty && (word.break_before || pen_x + word_width > right)) {
      ++line;
      pen_x = left;
      line_empty = true;
    }
    if (line >= max_lines) throw PageOverflow("text needs more lines than the page holds");
    if (geom.baselines_px.size() <= line) geom.baselines_px.push_back(baseline_of(line) * ppu);

    // Pass 2: geometry.
    const double baseline = baseline_of(line);
    geom.words.push_back({unicode::encode(word.text), {}});
    std::optional<OpenStroke> open;
    auto flush = [&] {
      if (open) builder.emit(std::move(open->nodes), open->span, wi);
      open.reset();
    };
    for (auto& p : plan) {
      const GlyphTemplate& g = *p.resolved.glyph;
      const std::size_t gi = geom.glyphs.size();
      const double s = p.resolved.scale;
      const double width = std::max(p.jitter.width_scale, 0.05);
      Eigen::Matrix2d linear;
      linear << s * width, -s * std::tan(p.jitter.skew_angle), 0.0, s;
      const Vector2d origin(pen_x + p.x, baseline + p.drift);

      auto place = [&](const Stroke& stroke) {
        Stroke out;
        out.reserve(stroke.size());
        for (const auto& n : stroke) {
          ControlNode m = n;
          m.p = linear * n.p + origin;
          m.v = linear * n.v;
          out.push_back(m);
        }
        return out;
      };

      PlacedGlyph placed;
      placed.character = g.character;
      placed.variant_id = g.variant_id;
      placed.word_index = wi;
      placed.origin = origin * ppu;
      placed.baseline_px = baseline * ppu;
      placed.cutoff_applied = p.effective.cutoff_applied;
      placed.joined_to_previous = p.connect;

      for (std::size_t si = 0; si < p.effective.strokes.size(); ++si) {
        Stroke nodes = place(perturb_stroke(p.effective.strokes[si], params, p.rng));
        placed.strokes.push_back(nodes);
        if (si == 0 && p.connect && open) {
          open->nodes.insert(open->nodes.end(), nodes.begin(), nodes.end());
          open->span.last_glyph = gi;
        } else {
          flush();
          open = OpenStroke{std::move(nodes), {gi, gi}, wi};
        }
        if (p.effective.closed[si]) flush();
      }
      if (!g.joins) flush();

      for (const auto& aux : g.aux_strokes) {
        Stroke nodes = perturb_stroke(aux, params, p.rng);
        Vector2d centroid = Vector2d::Zero();
        for (const auto& n : nodes) centroid += n.p;
        centroid /= static_cast<double>(nodes.size());
        for (auto& n : nodes) {
          n.p = centroid + p.jitter.point_size * (n.p - centroid);
          n.v *= p.jitter.point_size;
        }
        nodes = place(nodes);
        placed.aux_strokes.push_back(nodes);
        builder.emit(std::move(nodes), {gi, gi}, wi);
      }
      for (auto* set : {&placed.strokes, &placed.aux_strokes}) {
        for (auto& stroke : *set) {
          for (auto& n : stroke) {
            n.p *= ppu;
            n.v *= ppu;
          }
        }
      }
      geom.glyphs.push_back(std::move(placed));
    }
    flush();

    pen_x += word_width;
    line_empty = false;
    // Inter-word space, drawn from its own glyph stream.
    Rng space_rng = rng.derive(glyph_counter++);
    drift = drift_step(drift, params, drift_rng);
    const double delta = space_rng.normal(0.0, params.space_distance_std);
    pen_x += params.space_distance +
             negative_overlap_guard(params.space_distance, delta, options.overlap_fraction);
  }

  builder.finish_word_boxes();
  std::string truth;
  for (std::size_t i = 0; i < geom.words.size(); ++i) {
    if (i) truth += ' ';
    truth += geom.words[i].text;
  }
  geom.ground_truth = std::move(truth);
  return std::move(builder.geom);
}

}  // namespace hwgen
