#pragma once

#include "hwgen/rng.hpp"
#include "hwgen/templates.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>

namespace hwgen {

/// A page-level value drawn uniformly from [mean - spread, mean + spread].
struct Range {
  double mean = 0.0;
  double spread = 0.0;

  double lo() const { return mean - spread; }
  double hi() const { return mean + spread; }
  bool operator==(const Range&) const = default;
};

/// Augmentation configuration. Defaults give a legible medium augmentation;
/// they are this project's choice, not measured values.
struct StyleConfig {
  Range width_scale{1.0, 0.1};
  Range char_distance{0.12, 0.04};
  Range space_distance{0.55, 0.1};
  Range skew_angle{0.15, 0.12};  // radians, positive leans right
  Range point_size_scale{1.0, 0.2};
  Range y_delta_max{0.25, 0.1};
  Range y_delta_speed{0.04, 0.02};
  Range symbol_disconnect_prob{0.1, 0.1};
  Range point_noise_std{0.02, 0.01};
  Range vector_rotation_noise_std{0.08, 0.04};
  Range vector_length_noise_std{0.08, 0.04};
  Range char_distance_std{0.03, 0.01};
  Range space_distance_std{0.06, 0.02};
  Range point_size_std{0.15, 0.05};
  // Experimental: scales the flattening tolerance and stroke-width jitter.
  Range writing_speed{1.0, 0.2};
  Range width_std{0.03, 0.01};
  Range skew_std{0.02, 0.01};

  bool operator==(const StyleConfig&) const = default;

  /// Every range collapsed to zero width and every noise/probability at 0.
  static StyleConfig zero_noise();
};

/// Throws std::invalid_argument naming the first offending parameter.
void validate(const StyleConfig& cfg);

/// Keys absent from `j` keep their defaults. A value is either a number
/// (zero spread) or {"mean": m, "spread": s}. The keys "page" and "render"
/// are reserved for other sections of the same file and skipped.
StyleConfig style_config_from_json(const nlohmann::json& j, const StyleConfig& base = {});
StyleConfig load_style_config_file(const std::string& path);
nlohmann::json style_config_to_json(const StyleConfig& cfg);

/// Concrete stage-1 values for one page.
struct StyleParams {
  double width_scale = 1.0;
  double char_distance = 0.0;
  double space_distance = 0.0;
  double skew_angle = 0.0;
  double point_size_scale = 1.0;
  double y_delta_max = 0.0;
  double y_delta_speed = 0.0;
  double symbol_disconnect_prob = 0.0;
  double point_noise_std = 0.0;
  double vector_rotation_noise_std = 0.0;
  double vector_length_noise_std = 0.0;
  double char_distance_std = 0.0;
  double space_distance_std = 0.0;
  double point_size_std = 0.0;
  double writing_speed = 1.0;
  double width_std = 0.0;
  double skew_std = 0.0;

  VariantAssignment variant_assignment;
  std::uint64_t seed = 0;
  std::uint64_t page_index = 0;

  bool operator==(const StyleParams&) const = default;
};

/// Stage 1: one draw per parameter in declaration order, then one variant
/// per charset character in code-point order, all from the page's style
/// stream.
StyleParams sample_page_style(const StyleConfig& cfg, const TemplateDB& db,
                              std::uint64_t seed, std::uint64_t page_index);

/// Stage 2 on a single node: Gaussian point offset, handle rotation and
/// relative handle length change. Flags pass through.
ControlNode perturb_node(const ControlNode& node, const StyleParams& params, Rng& rng);

Stroke perturb_stroke(const Stroke& stroke, const StyleParams& params, Rng& rng);

/// Stage-2 values for one glyph instance, drawn around the page values.
struct GlyphJitter {
  double width_scale;
  double skew_angle;
  double spacing_delta;  // before the overlap guard
  double point_size;     // aux-stroke size factor
  bool disconnect;
};

GlyphJitter sample_glyph_jitter(const StyleParams& params, Rng& rng);

}  // namespace hwgen
