#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hwgen {

enum class NormalizationMode { Raw, Lowercase, AlphaOnly };

const char* to_string(NormalizationMode mode);
/// Accepts "raw", "lowercase", "alpha" / "alpha_only".
NormalizationMode parse_mode(std::string_view name);
/// Row label used in the text report.
const char* display_name(NormalizationMode mode);

/// raw: identity. lowercase: per-scalar Unicode lowercase. alpha_only:
/// lowercase, every non-letter scalar becomes a space, whitespace runs
/// collapse to one space, ends trimmed. Digits count as non-letters.
std::string normalize(std::string_view text, NormalizationMode mode);

/// Whitespace-separated tokens.
std::vector<std::u32string> tokenize(std::u32string_view text);

/// Token-level Levenshtein distance over reference word count. Throws
/// UndefinedRate when the reference has no words.
double word_error_rate(std::string_view reference, std::string_view hypothesis);
/// Scalar-level distance over reference scalar count (spaces included).
double char_error_rate(std::string_view reference, std::string_view hypothesis);

struct ModeReport {
  NormalizationMode mode;
  std::size_t word_edits = 0;
  std::size_t word_count = 0;
  std::size_t char_edits = 0;
  std::size_t char_count = 0;
  // Empty when every reference is empty under this mode.
  std::optional<double> war_percent;
  std::optional<double> car_percent;
};

/// Accuracy is max(0, 1 - pooled error rate) * 100, pooled over the corpus:
/// total edits over total reference words (or scalars).
struct MetricsReport {
  std::vector<ModeReport> modes;
};

/// Per-pair counts for one mode, before pooling.
struct PairCounts {
  std::size_t word_edits, word_count, char_edits, char_count;
};
PairCounts count_errors(std::string_view reference, std::string_view hypothesis,
                        NormalizationMode mode);

MetricsReport evaluate(const std::vector<std::pair<std::string, std::string>>& pairs,
                       const std::vector<NormalizationMode>& modes);

/// Aligned plain-text table: one row per mode, WAR and CAR columns.
std::string format_report(const MetricsReport& report);
nlohmann::json report_to_json(const MetricsReport& report);

}  // namespace hwgen
