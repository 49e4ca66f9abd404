#pragma once

#include "hwgen/geometry.hpp"

#include <nlohmann/json_fwd.hpp>

#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hwgen {

using Stroke = std::vector<ControlNode>;

/// One drawn variant of a character.
///
/// The entry node is the first node of the first stroke and the exit node is
/// the last node of the last main stroke; both are derived, not stored.
/// Aux strokes (diacritics) are positioned in the same glyph frame but are
/// never joined to neighbouring letters.
struct GlyphTemplate {
  char32_t character = 0;
  std::string variant_id;
  std::vector<Stroke> strokes;
  std::vector<Stroke> aux_strokes;
  double advance_width = 1.0;
  // Punctuation and similar marks opt out of cursive joining.
  bool joins = true;

  const ControlNode& entry() const { return strokes.front().front(); }
  const ControlNode& exit() const { return strokes.back().back(); }

  bool operator==(const GlyphTemplate&) const = default;
};

enum class ViolationCode {
  EmptyStrokes,
  StrokeTooShort,
  ZeroHandleInterior,
  CutoffNotOnExit,
  CutoffStrokeTooShort,
  NonFinite,
  EmptyVariantId,
};

const char* to_string(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string message;
};

/// Structural rules for one glyph; an empty result means it can be laid out.
std::vector<Violation> validate_glyph(const GlyphTemplate& glyph);

struct TemplateDB {
  std::map<char32_t, std::vector<GlyphTemplate>> glyphs;
  std::set<char32_t> charset;
  // Size multiplier applied when an uppercase letter falls back to its
  // lowercase template.
  double uppercase_scale = 1.6;

  bool operator==(const TemplateDB&) const = default;
};

inline constexpr int kTemplateFormatVersion = 1;

TemplateDB load_template_db(std::istream& source);
TemplateDB load_template_db_file(const std::string& path);
/// Parses and, unless `check` is false, validates.
TemplateDB parse_template_db(const std::string& text, bool check = true);

struct DbViolation {
  std::string glyph;  // "char/variant", the character alone, or empty
  std::string rule;
  std::string message;
};

/// Every glyph-level and database-level rule violation, in glyph order.
std::vector<DbViolation> template_db_violations(const TemplateDB& db);

/// Throws ValidationError for the first violation, if any.
void validate_template_db(const TemplateDB& db);

std::string serialize_template_db(const TemplateDB& db);

nlohmann::json glyph_to_json(const GlyphTemplate& glyph);
/// Throws ParseError naming the offending JSON path on schema mismatch.
GlyphTemplate glyph_from_json(const nlohmann::json& j);

using VariantAssignment = std::map<char32_t, std::string>;

/// The assigned variant of `ch`. Never samples.
const GlyphTemplate& pick_variant(const TemplateDB& db, char32_t ch,
                                  const VariantAssignment& assignment);

/// A renderable glyph: the template plus the size factor from case fallback.
struct ResolvedGlyph {
  const GlyphTemplate* glyph;
  double scale;
};

/// Resolves `ch` directly, or through the lowercase fallback for uppercase
/// letters without their own template.
ResolvedGlyph resolve_glyph(const TemplateDB& db, char32_t ch,
                            const VariantAssignment& assignment);

/// Characters the layout can draw: the charset plus uppercase fallbacks.
std::set<char32_t> renderable_charset(const TemplateDB& db);

}  // namespace hwgen
