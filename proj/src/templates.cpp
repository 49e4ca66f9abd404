#include "hwgen/templates.hpp"

#include "hwgen/errors.hpp"
#include "hwgen/unicode.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace hwgen {

using nlohmann::json;

const char* to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::EmptyStrokes: return "EMPTY_STROKES";
    case ViolationCode::StrokeTooShort: return "STROKE_TOO_SHORT";
    case ViolationCode::ZeroHandleInterior: return "ZERO_HANDLE_INTERIOR";
    case ViolationCode::CutoffNotOnExit: return "CUTOFF_NOT_ON_EXIT";
    case ViolationCode::CutoffStrokeTooShort: return "CUTOFF_STROKE_TOO_SHORT";
    case ViolationCode::NonFinite: return "NON_FINITE";
    case ViolationCode::EmptyVariantId: return "EMPTY_VARIANT_ID";
  }
  return "UNKNOWN";
}

namespace {

std::string glyph_label(const GlyphTemplate& g) {
  return unicode::encode(g.character) + "/" + g.variant_id;
}

void check_strokes(const std::vector<Stroke>& strokes, const char* kind, bool main,
                   std::vector<Violation>& out) {
  for (std::size_t s = 0; s < strokes.size(); ++s) {
    const auto& stroke = strokes[s];
    const std::string where = std::string(kind) + " stroke " + std::to_string(s);
    if (stroke.size() < 2) {
      out.push_back({ViolationCode::StrokeTooShort,
                     where + " has " + std::to_string(stroke.size()) + " node(s), needs >= 2"});
    }
    for (std::size_t i = 0; i < stroke.size(); ++i) {
      const auto& n = stroke[i];
      const std::string node = where + " node " + std::to_string(i);
      if (!is_finite(n.p) || !is_finite(n.v)) {
        out.push_back({ViolationCode::NonFinite, node + " has a non-finite coordinate"});
      }
      const bool terminus = i == 0 || i + 1 == stroke.size();
      if (!terminus && n.v.squaredNorm() == 0.0) {
        out.push_back({ViolationCode::ZeroHandleInterior, node + " has a zero-length handle"});
      }
      const bool is_exit = main && s + 1 == strokes.size() && i + 1 == stroke.size();
      if (n.flags.cutoff_if_medial && !is_exit) {
        out.push_back({ViolationCode::CutoffNotOnExit,
                       node + " carries cutoff_if_medial but is not the exit node"});
      }
    }
  }
}

Point2d point_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(path + ": expected [x, y] number pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ControlNode node_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected node object");
  ControlNode n;
  if (!j.contains("p")) throw ParseError(path + ": missing field 'p'");
  n.p = point_from_json(j.at("p"), path + "/p");
  if (!j.contains("v")) throw ParseError(path + ": missing field 'v'");
  n.v = point_from_json(j.at("v"), path + "/v");
  if (j.contains("flags")) {
    const auto& flags = j.at("flags");
    if (!flags.is_array()) throw ParseError(path + "/flags: expected array");
    for (const auto& f : flags) {
      const std::string name = f.is_string() ? f.get<std::string>() : std::string();
      if (name == "direction_change") n.flags.direction_change = true;
      else if (name == "interrupt_after") n.flags.interrupt_after = true;
      else if (name == "cutoff_if_medial") n.flags.cutoff_if_medial = true;
      else throw ParseError(path + "/flags: unknown flag '" + f.dump() + "'");
    }
  }
  return n;
}

std::vector<Stroke> strokes_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected array of strokes");
  std::vector<Stroke> out;
  for (std::size_t s = 0; s < j.size(); ++s) {
    const auto& stroke = j[s];
    const std::string sp = path + "/" + std::to_string(s);
    if (!stroke.is_array()) throw ParseError(sp + ": expected array of nodes");
    Stroke nodes;
    for (std::size_t i = 0; i < stroke.size(); ++i) {
      nodes.push_back(node_from_json(stroke[i], sp + "/" + std::to_string(i)));
    }
    out.push_back(std::move(nodes));
  }
  return out;
}

json node_to_json(const ControlNode& n) {
  json flags = json::array();
  if (n.flags.direction_change) flags.push_back("direction_change");
  if (n.flags.interrupt_after) flags.push_back("interrupt_after");
  if (n.flags.cutoff_if_medial) flags.push_back("cutoff_if_medial");
  json j = {{"p", {n.p.x(), n.p.y()}}, {"v", {n.v.x(), n.v.y()}}};
  if (!flags.empty()) j["flags"] = flags;
  return j;
}

json strokes_to_json(const std::vector<Stroke>& strokes) {
  json out = json::array();
  for (const auto& stroke : strokes) {
    json s = json::array();
    for (const auto& n : stroke) s.push_back(node_to_json(n));
    out.push_back(s);
  }
  return out;
}

char32_t single_char(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected string");
  std::u32string s;
  try {
    s = unicode::decode(j.get<std::string>());
  } catch (const Utf8Error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (s.size() != 1) throw ParseError(path + ": expected exactly one character");
  return s[0];
}

}  // namespace

std::vector<Violation> validate_glyph(const GlyphTemplate& glyph) {
  std::vector<Violation> out;
  if (glyph.variant_id.empty()) {
    out.push_back({ViolationCode::EmptyVariantId, "variant id is empty"});
  }
  if (!std::isfinite(glyph.advance_width)) {
    out.push_back({ViolationCode::NonFinite, "advance width is not finite"});
  }
  if (glyph.strokes.empty()) {
    out.push_back({ViolationCode::EmptyStrokes, "glyph has no main strokes"});
  }
  check_strokes(glyph.strokes, "main", true, out);
  check_strokes(glyph.aux_strokes, "aux", false, out);
  // A medial cutoff drops the exit node, so the last stroke must keep two.
  if (!glyph.strokes.empty() && !glyph.strokes.back().empty() &&
      glyph.strokes.back().back().flags.cutoff_if_medial) {
    if (glyph.strokes.back().size() < 3) {
      out.push_back({ViolationCode::CutoffStrokeTooShort,
                     "cutoff_if_medial on a stroke with fewer than 3 nodes"});
    }
  }
  return out;
}

GlyphTemplate glyph_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("glyph: expected object");
  GlyphTemplate g;
  if (!j.contains("char")) throw ParseError("glyph: missing field 'char'");
  g.character = single_char(j.at("char"), "glyph/char");
  const std::string path = "glyph '" + unicode::encode(g.character) + "'";
  if (!j.contains("variant") || !j.at("variant").is_string()) {
    throw ParseError(path + ": missing string field 'variant'");
  }
  g.variant_id = j.at("variant").get<std::string>();
  if (j.contains("advance")) {
    if (!j.at("advance").is_number()) throw ParseError(path + "/advance: expected number");
    g.advance_width = j.at("advance").get<double>();
  }
  if (j.contains("joins")) {
    if (!j.at("joins").is_boolean()) throw ParseError(path + "/joins: expected boolean");
    g.joins = j.at("joins").get<bool>();
  }
  if (!j.contains("strokes")) throw ParseError(path + ": missing field 'strokes'");
  g.strokes = strokes_from_json(j.at("strokes"), path + "/strokes");
  if (j.contains("aux")) g.aux_strokes = strokes_from_json(j.at("aux"), path + "/aux");
  return g;
}

json glyph_to_json(const GlyphTemplate& g) {
  json j = {{"char", unicode::encode(g.character)},
            {"variant", g.variant_id},
            {"advance", g.advance_width},
            {"strokes", strokes_to_json(g.strokes)}};
  if (!g.aux_strokes.empty()) j["aux"] = strokes_to_json(g.aux_strokes);
  if (!g.joins) j["joins"] = false;
  return j;
}

std::vector<DbViolation> template_db_violations(const TemplateDB& db) {
  std::vector<DbViolation> out;
  if (db.glyphs.empty()) out.push_back({"", "EMPTY_DATABASE", "empty database"});
  for (const auto& [ch, variants] : db.glyphs) {
    const std::string c = unicode::encode(ch);
    if (!db.charset.contains(ch)) {
      out.push_back({c, "GLYPH_NOT_IN_CHARSET", "glyph '" + c + "' is not listed in charset"});
    }
    std::set<std::string> ids;
    for (const auto& g : variants) {
      if (!ids.insert(g.variant_id).second) {
        out.push_back({glyph_label(g), "DUPLICATE_VARIANT", "duplicate variant id"});
      }
      for (const auto& v : validate_glyph(g)) {
        out.push_back({glyph_label(g), to_string(v.code), v.message});
      }
    }
  }
  for (char32_t ch : db.charset) {
    const auto it = db.glyphs.find(ch);
    if (it == db.glyphs.end() || it->second.empty()) {
      const std::string c = unicode::encode(ch);
      out.push_back({c, "CHARSET_WITHOUT_GLYPH", "charset member '" + c + "' has no variant"});
    }
  }
  if (!(db.uppercase_scale > 0.0) || !std::isfinite(db.uppercase_scale)) {
    out.push_back({"", "BAD_UPPERCASE_SCALE", "uppercase_scale must be positive"});
  }
  return out;
}

void validate_template_db(const TemplateDB& db) {
  const auto violations = template_db_violations(db);
  if (violations.empty()) return;
  const auto& v = violations.front();
  const std::string what =
      v.glyph.empty() ? v.message : v.glyph + ": " + v.rule + ": " + v.message;
  throw ValidationError(what, v.glyph, v.rule);
}

TemplateDB parse_template_db(const std::string& text, bool check) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("template database: ") + e.what(), e.byte);
  }
  if (!root.is_object()) throw ParseError("template database: top level must be an object");
  if (!root.contains("version") || !root.at("version").is_number_integer()) {
    throw ParseError("template database: missing integer field 'version'");
  }
  if (root.at("version").get<int>() != kTemplateFormatVersion) {
    throw ParseError("template database: unsupported version " + root.at("version").dump());
  }
  TemplateDB db;
  if (root.contains("charset")) {
    const auto& cs = root.at("charset");
    if (!cs.is_string()) throw ParseError("template database: 'charset' must be a string");
    try {
      for (char32_t ch : unicode::decode(cs.get<std::string>())) db.charset.insert(ch);
    } catch (const Utf8Error& e) {
      throw ParseError(std::string("template database: charset: ") + e.what());
    }
  }
  if (root.contains("uppercase_scale")) {
    if (!root.at("uppercase_scale").is_number()) {
      throw ParseError("template database: 'uppercase_scale' must be a number");
    }
    db.uppercase_scale = root.at("uppercase_scale").get<double>();
  }
  if (!root.contains("glyphs") || !root.at("glyphs").is_array()) {
    throw ParseError("template database: missing array field 'glyphs'");
  }
  for (const auto& entry : root.at("glyphs")) {
    GlyphTemplate g = glyph_from_json(entry);
    db.glyphs[g.character].push_back(std::move(g));
  }
  if (check) validate_template_db(db);
  return db;
}

TemplateDB load_template_db(std::istream& source) {
  std::ostringstream buf;
  buf << source.rdbuf();
  return parse_template_db(buf.str());
}

TemplateDB load_template_db_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open template database '" + path + "'");
  return load_template_db(in);
}

std::string serialize_template_db(const TemplateDB& db) {
  std::u32string charset(db.charset.begin(), db.charset.end());
  json glyphs = json::array();
  for (const auto& [ch, variants] : db.glyphs) {
    for (const auto& g : variants) glyphs.push_back(glyph_to_json(g));
  }
  json root = {{"version", kTemplateFormatVersion},
               {"charset", unicode::encode(charset)},
               {"uppercase_scale", db.uppercase_scale},
               {"glyphs", glyphs}};
  return root.dump(1) + "\n";
}

const GlyphTemplate& pick_variant(const TemplateDB& db, char32_t ch,
                                  const VariantAssignment& assignment) {
  const auto it = db.glyphs.find(ch);
  if (it == db.glyphs.end() || !db.charset.contains(ch)) throw CharNotInDb(ch);
  const auto a = assignment.find(ch);
  if (a == assignment.end()) {
    throw std::invalid_argument("pick_variant: no variant assigned for '" + unicode::encode(ch) +
                                "'");
  }
  for (const auto& g : it->second) {
    if (g.variant_id == a->second) return g;
  }
  throw std::invalid_argument("pick_variant: unknown variant '" + a->second + "' for '" +
                              unicode::encode(ch) + "'");
}

ResolvedGlyph resolve_glyph(const TemplateDB& db, char32_t ch,
                            const VariantAssignment& assignment) {
  if (db.charset.contains(ch)) return {&pick_variant(db, ch, assignment), 1.0};
  const char32_t lower = unicode::to_lower(ch);
  if (lower != ch && db.charset.contains(lower)) {
    return {&pick_variant(db, lower, assignment), db.uppercase_scale};
  }
  throw CharNotInDb(ch);
}

std::set<char32_t> renderable_charset(const TemplateDB& db) {
  std::set<char32_t> out = db.charset;
  for (char32_t ch : db.charset) {
    const char32_t upper = unicode::to_upper(ch);
    if (upper != ch && unicode::to_lower(upper) == ch) out.insert(upper);
  }
  return out;
}

}  // namespace hwgen
