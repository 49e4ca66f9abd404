#pragma once

#include "hwgen/templates.hpp"

#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace hwgen {

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Request handlers behind the template editor. The database file is the
/// source of truth; every successful PUT rewrites it atomically.
///
/// Errors come back as {"code": ..., "message": ...}. Codes: MALFORMED_JSON,
/// SCHEMA_ERROR, PATH_MISMATCH, CHAR_NOT_IN_DB, VALIDATION_FAILED (with a
/// "violations" list), PAGE_OVERFLOW, BAD_STYLE, WRITE_FAILED.
class EditorService {
 public:
  /// Loads and validates the database; throws like load_template_db_file.
  explicit EditorService(std::filesystem::path db_path);

  ApiResponse health() const;
  ApiResponse list_glyphs() const;
  ApiResponse get_glyph(std::string_view character) const;
  ApiResponse put_glyph(std::string_view character, std::string_view variant,
                        std::string_view body);
  /// Body: {"glyph": <glyph document>, "style"?: {...}, "seed"?: n}.
  /// The style starts from zero noise, so an empty override shows the
  /// template exactly.
  ApiResponse preview(std::string_view body) const;
  /// Body: {"text": "...", "style"?: {...}, "seed"?: n}, drawn with the
  /// stored database. The style starts from the defaults.
  ApiResponse preview_text(std::string_view body) const;

  TemplateDB snapshot() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  TemplateDB db_;
};

/// Registers the /api routes on `server`.
void mount_routes(httplib::Server& server, EditorService& service);

}  // namespace hwgen
