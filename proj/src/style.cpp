#include "hwgen/style.hpp"

#include <Eigen/Geometry>
#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace hwgen {

using nlohmann::json;

namespace {

enum class Kind { Free, Positive, NonNegative, Probability };

struct Field {
  const char* name;
  Range StyleConfig::*range;
  double StyleParams::*value;
  Kind kind;
};

// Declaration order is the stage-1 draw order; changing it changes output.
constexpr std::array kFields = {
    Field{"width_scale", &StyleConfig::width_scale, &StyleParams::width_scale, Kind::Positive},
    Field{"char_distance", &StyleConfig::char_distance, &StyleParams::char_distance, Kind::Free},
    Field{"space_distance", &StyleConfig::space_distance, &StyleParams::space_distance,
          Kind::Free},
    Field{"skew_angle", &StyleConfig::skew_angle, &StyleParams::skew_angle, Kind::Free},
    Field{"point_size_scale", &StyleConfig::point_size_scale, &StyleParams::point_size_scale,
          Kind::Positive},
    Field{"y_delta_max", &StyleConfig::y_delta_max, &StyleParams::y_delta_max,
          Kind::NonNegative},
    Field{"y_delta_speed", &StyleConfig::y_delta_speed, &StyleParams::y_delta_speed,
          Kind::NonNegative},
    Field{"symbol_disconnect_prob", &StyleConfig::symbol_disconnect_prob,
          &StyleParams::symbol_disconnect_prob, Kind::Probability},
    Field{"point_noise_std", &StyleConfig::point_noise_std, &StyleParams::point_noise_std,
          Kind::NonNegative},
    Field{"vector_rotation_noise_std", &StyleConfig::vector_rotation_noise_std,
          &StyleParams::vector_rotation_noise_std, Kind::NonNegative},
    Field{"vector_length_noise_std", &StyleConfig::vector_length_noise_std,
          &StyleParams::vector_length_noise_std, Kind::NonNegative},
    Field{"char_distance_std", &StyleConfig::char_distance_std, &StyleParams::char_distance_std,
          Kind::NonNegative},
    Field{"space_distance_std", &StyleConfig::space_distance_std,
          &StyleParams::space_distance_std, Kind::NonNegative},
    Field{"point_size_std", &StyleConfig::point_size_std, &StyleParams::point_size_std,
          Kind::NonNegative},
    Field{"writing_speed", &StyleConfig::writing_speed, &StyleParams::writing_speed,
          Kind::Positive},
    Field{"width_std", &StyleConfig::width_std, &StyleParams::width_std, Kind::NonNegative},
    Field{"skew_std", &StyleConfig::skew_std, &StyleParams::skew_std, Kind::NonNegative},
};

[[noreturn]] void bad(const char* name, const std::string& why) {
  throw std::invalid_argument(std::string("style config '") + name + "': " + why);
}

}  // namespace

StyleConfig StyleConfig::zero_noise() {
  StyleConfig cfg;
  for (const auto& f : kFields) (cfg.*f.range).spread = 0.0;
  cfg.symbol_disconnect_prob.mean = 0.0;
  cfg.point_noise_std.mean = 0.0;
  cfg.vector_rotation_noise_std.mean = 0.0;
  cfg.vector_length_noise_std.mean = 0.0;
  cfg.char_distance_std.mean = 0.0;
  cfg.space_distance_std.mean = 0.0;
  cfg.point_size_std.mean = 0.0;
  cfg.width_std.mean = 0.0;
  cfg.skew_std.mean = 0.0;
  cfg.y_delta_max.mean = 0.0;
  cfg.y_delta_speed.mean = 0.0;
  cfg.skew_angle.mean = 0.0;
  return cfg;
}

void validate(const StyleConfig& cfg) {
  for (const auto& f : kFields) {
    const Range& r = cfg.*f.range;
    if (!std::isfinite(r.mean) || !std::isfinite(r.spread)) bad(f.name, "must be finite");
    if (r.spread < 0.0) bad(f.name, "spread must be >= 0");
    switch (f.kind) {
      case Kind::Free: break;
      case Kind::Positive:
        if (!(r.lo() > 0.0)) bad(f.name, "range must stay > 0");
        break;
      case Kind::NonNegative:
        if (r.lo() < 0.0) bad(f.name, "range must stay >= 0");
        break;
      case Kind::Probability:
        if (r.lo() < 0.0 || r.hi() > 1.0) bad(f.name, "range must stay within [0, 1]");
        break;
    }
  }
}

StyleConfig style_config_from_json(const json& j, const StyleConfig& base) {
  if (!j.is_object()) throw std::invalid_argument("style config: expected a JSON object");
  StyleConfig cfg = base;
  for (const auto& [key, value] : j.items()) {
    if (key == "page" || key == "render") continue;
    const Field* field = nullptr;
    for (const auto& f : kFields) {
      if (key == f.name) field = &f;
    }
    if (!field) throw std::invalid_argument("style config: unknown parameter '" + key + "'");
    Range& r = cfg.*field->range;
    if (value.is_number()) {
      r = {value.get<double>(), 0.0};
    } else if (value.is_object()) {
      for (const auto& [k, v] : value.items()) {
        if (!v.is_number()) bad(field->name, "'" + k + "' must be a number");
        if (k == "mean") r.mean = v.get<double>();
        else if (k == "spread") r.spread = v.get<double>();
        else bad(field->name, "unknown key '" + k + "'");
      }
    } else {
      bad(field->name, "expected a number or {mean, spread}");
    }
  }
  validate(cfg);
  return cfg;
}

StyleConfig load_style_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open style config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("style config '" + path + "': " + e.what());
  }
  return style_config_from_json(j);
}

json style_config_to_json(const StyleConfig& cfg) {
  json j = json::object();
  for (const auto& f : kFields) {
    const Range& r = cfg.*f.range;
    j[f.name] = {{"mean", r.mean}, {"spread", r.spread}};
  }
  return j;
}

StyleParams sample_page_style(const StyleConfig& cfg, const TemplateDB& db,
                              std::uint64_t seed, std::uint64_t page_index) {
  validate(cfg);
  Rng rng = Rng(seed).derive(page_index).derive(streams::kStyle);
  StyleParams params;
  for (const auto& f : kFields) {
    const Range& r = cfg.*f.range;
    params.*f.value = rng.uniform(r.lo(), r.hi());
  }
  for (char32_t ch : db.charset) {
    const auto& variants = db.glyphs.at(ch);
    params.variant_assignment[ch] = variants[rng.below(variants.size())].variant_id;
  }
  params.seed = seed;
  params.page_index = page_index;
  return params;
}

ControlNode perturb_node(const ControlNode& node, const StyleParams& params, Rng& rng) {
  ControlNode out = node;
  const double dx = rng.normal(0.0, params.point_noise_std);
  const double dy = rng.normal(0.0, params.point_noise_std);
  const double angle = rng.normal(0.0, params.vector_rotation_noise_std);
  const double length = 1.0 + rng.normal(0.0, params.vector_length_noise_std);
  out.p += Vector2d(dx, dy);
  out.v = length * (Eigen::Rotation2D<double>(angle) * node.v);
  return out;
}

Stroke perturb_stroke(const Stroke& stroke, const StyleParams& params, Rng& rng) {
  Stroke out;
  out.reserve(stroke.size());
  for (const auto& n : stroke) out.push_back(perturb_node(n, params, rng));
  return out;
}

GlyphJitter sample_glyph_jitter(const StyleParams& params, Rng& rng) {
  GlyphJitter j{};
  j.width_scale = rng.normal(params.width_scale, params.width_std);
  j.skew_angle = rng.normal(params.skew_angle, params.skew_std);
  j.spacing_delta = rng.normal(0.0, params.char_distance_std);
  j.point_size = params.point_size_scale * (1.0 + rng.normal(0.0, params.point_size_std));
  j.disconnect = rng.bernoulli(params.symbol_disconnect_prob);
  return j;
}

}  // namespace hwgen
