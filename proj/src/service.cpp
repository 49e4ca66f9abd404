#include "hwgen/service.hpp"

#include "hwgen/errors.hpp"
#include "hwgen/layout.hpp"
#include "hwgen/raster.hpp"
#include "hwgen/style.hpp"
#include "hwgen/unicode.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <fstream>

namespace hwgen {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

ApiResponse json_response(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

ApiResponse error(int status, const std::string& code, const std::string& message) {
  return json_response(status, {{"code", code}, {"message", message}});
}

std::optional<char32_t> single_char(std::string_view text) {
  try {
    const auto s = unicode::decode(text);
    if (s.size() == 1) return s[0];
  } catch (const Utf8Error&) {
  }
  return std::nullopt;
}

std::optional<json> parse_body(std::string_view body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

json violations_to_json(const std::vector<Violation>& violations) {
  json out = json::array();
  for (const auto& v : violations) out.push_back({{"code", to_string(v.code)}, {"message", v.message}});
  return out;
}

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

struct PreviewRequest {
  StyleConfig style;
  std::uint64_t seed = 0;
};

// Reads "style" and "seed"; returns an error response on bad input.
std::optional<ApiResponse> read_preview_options(const json& j, PreviewRequest& req) {
  try {
    if (j.contains("style")) req.style = style_config_from_json(j.at("style"), req.style);
  } catch (const std::exception& e) {
    return error(400, "BAD_STYLE", e.what());
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) {
      return error(400, "SCHEMA_ERROR", "'seed' must be a non-negative integer");
    }
    req.seed = j.at("seed").get<std::uint64_t>();
  }
  return std::nullopt;
}

ApiResponse render_preview(const TemplateDB& db, const std::string& text,
                           const PreviewRequest& req, const PageSpec& spec) {
  const StyleParams params = sample_page_style(req.style, db, req.seed, 0);
  RenderConfig rcfg;
  rcfg.ruled_line_gray.reset();
  rcfg.stroke_width_px = spec.px_per_unit / 16.0;
  try {
    const PageGeometry geom = layout_text(text, db, params, spec, layout_rng(req.seed, 0));
    const auto png = encode_png(render_page(geom, spec, rcfg));
    return {200, "image/png", std::string(png.begin(), png.end())};
  } catch (const CharNotInDb& e) {
    return error(422, "CHAR_NOT_IN_DB", e.what());
  } catch (const PageOverflow& e) {
    return error(422, "PAGE_OVERFLOW", e.what());
  }
}

}  // namespace

EditorService::EditorService(fs::path db_path)
    : path_(std::move(db_path)), db_(load_template_db_file(path_.string())) {}

TemplateDB EditorService::snapshot() const {
  std::lock_guard lock(mutex_);
  return db_;
}

ApiResponse EditorService::health() const {
  std::lock_guard lock(mutex_);
  return json_response(200, {{"status", "ok"}, {"glyphs", db_.glyphs.size()}});
}

ApiResponse EditorService::list_glyphs() const {
  std::lock_guard lock(mutex_);
  std::u32string charset(db_.charset.begin(), db_.charset.end());
  json glyphs = json::object();
  for (const auto& [ch, variants] : db_.glyphs) {
    json ids = json::array();
    for (const auto& g : variants) ids.push_back(g.variant_id);
    glyphs[unicode::encode(ch)] = ids;
  }
  return json_response(200, {{"charset", unicode::encode(charset)}, {"glyphs", glyphs}});
}

ApiResponse EditorService::get_glyph(std::string_view character) const {
  const auto ch = single_char(character);
  if (!ch) return error(400, "SCHEMA_ERROR", "path must name exactly one character");
  std::lock_guard lock(mutex_);
  const auto it = db_.glyphs.find(*ch);
  if (it == db_.glyphs.end()) {
    return error(404, "CHAR_NOT_IN_DB", "no glyph for '" + std::string(character) + "'");
  }
  json variants = json::array();
  for (const auto& g : it->second) variants.push_back(glyph_to_json(g));
  return json_response(200, {{"char", std::string(character)}, {"variants", variants}});
}

ApiResponse EditorService::put_glyph(std::string_view character, std::string_view variant,
                                     std::string_view body) {
  const auto j = parse_body(body);
  if (!j) return error(400, "MALFORMED_JSON", "body is not a JSON object");
  GlyphTemplate glyph;
  try {
    glyph = glyph_from_json(*j);
  } catch (const ParseError& e) {
    return error(400, "SCHEMA_ERROR", e.what());
  }
  const auto ch = single_char(character);
  if (!ch || *ch != glyph.character || variant != glyph.variant_id) {
    return error(400, "PATH_MISMATCH", "path does not match the glyph's char and variant");
  }
  if (const auto violations = validate_glyph(glyph); !violations.empty()) {
    json out = {{"code", "VALIDATION_FAILED"},
                {"message", "glyph failed validation"},
                {"violations", violations_to_json(violations)}};
    return json_response(422, out);
  }

  std::lock_guard lock(mutex_);
  TemplateDB next = db_;
  auto& variants = next.glyphs[glyph.character];
  bool replaced = false;
  for (auto& g : variants) {
    if (g.variant_id == glyph.variant_id) {
      g = glyph;
      replaced = true;
    }
  }
  if (!replaced) variants.push_back(glyph);
  next.charset.insert(glyph.character);
  try {
    validate_template_db(next);
  } catch (const ValidationError& e) {
    return error(422, "VALIDATION_FAILED", e.what());
  }
  try {
    write_atomically(path_, serialize_template_db(next));
  } catch (const std::exception& e) {
    return error(500, "WRITE_FAILED", e.what());
  }
  db_ = std::move(next);
  return json_response(replaced ? 200 : 201, glyph_to_json(glyph));
}

ApiResponse EditorService::preview(std::string_view body) const {
  const auto j = parse_body(body);
  if (!j) return error(400, "MALFORMED_JSON", "body is not a JSON object");
  if (!j->contains("glyph")) return error(400, "SCHEMA_ERROR", "missing field 'glyph'");
  GlyphTemplate glyph;
  try {
    glyph = glyph_from_json(j->at("glyph"));
  } catch (const ParseError& e) {
    return error(400, "SCHEMA_ERROR", e.what());
  }
  if (const auto violations = validate_glyph(glyph); !violations.empty()) {
    json out = {{"code", "VALIDATION_FAILED"},
                {"message", "glyph failed validation"},
                {"violations", violations_to_json(violations)}};
    return json_response(422, out);
  }
  PreviewRequest req{StyleConfig::zero_noise()};
  if (auto bad = read_preview_options(*j, req)) return *bad;

  TemplateDB db;
  db.glyphs[glyph.character].push_back(glyph);
  db.charset.insert(glyph.character);
  const PageSpec spec{256, 256, 16, 2.8, 80.0, false};
  return render_preview(db, unicode::encode(glyph.character), req, spec);
}

ApiResponse EditorService::preview_text(std::string_view body) const {
  const auto j = parse_body(body);
  if (!j) return error(400, "MALFORMED_JSON", "body is not a JSON object");
  if (!j->contains("text") || !j->at("text").is_string()) {
    return error(400, "SCHEMA_ERROR", "missing string field 'text'");
  }
  PreviewRequest req;
  if (auto bad = read_preview_options(*j, req)) return *bad;
  const TemplateDB db = snapshot();
  const PageSpec spec{1200, 320, 24, 2.6, 48.0, false};
  try {
    return render_preview(db, j->at("text").get<std::string>(), req, spec);
  } catch (const Utf8Error& e) {
    return error(400, "SCHEMA_ERROR", e.what());
  }
}

void mount_routes(httplib::Server& server, EditorService& service) {
  auto send = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get("/api/health", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.health());
  });
  server.Get("/api/glyphs", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.list_glyphs());
  });
  server.Get(R"(/api/glyphs/([^/]+))",
             [&service, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.get_glyph(req.matches[1].str()));
             });
  server.Put(R"(/api/glyphs/([^/]+)/([^/]+))",
             [&service, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.put_glyph(req.matches[1].str(), req.matches[2].str(), req.body));
             });
  server.Post("/api/preview", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.preview(req.body));
  });
  server.Post("/api/preview-text",
              [&service, send](const httplib::Request& req, httplib::Response& res) {
                send(res, service.preview_text(req.body));
              });
}

}  // namespace hwgen
