#include "hwgen/metrics.hpp"

#include "hwgen/errorpairs.hpp"
#include "hwgen/errors.hpp"
#include "hwgen/unicode.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <span>
#include <stdexcept>

namespace hwgen {

const char* to_string(NormalizationMode mode) {
  switch (mode) {
    case NormalizationMode::Raw: return "raw";
    case NormalizationMode::Lowercase: return "lowercase";
    case NormalizationMode::AlphaOnly: return "alpha_only";
  }
  return "?";
}

const char* display_name(NormalizationMode mode) {
  switch (mode) {
    case NormalizationMode::Raw: return "Raw text";
    case NormalizationMode::Lowercase: return "Lowercase only";
    case NormalizationMode::AlphaOnly: return "Only alphabetical";
  }
  return "?";
}

NormalizationMode parse_mode(std::string_view name) {
  if (name == "raw") return NormalizationMode::Raw;
  if (name == "lowercase" || name == "lower") return NormalizationMode::Lowercase;
  if (name == "alpha" || name == "alpha_only") return NormalizationMode::AlphaOnly;
  throw std::invalid_argument("unknown normalization mode '" + std::string(name) + "'");
}

namespace {

std::u32string normalize32(std::u32string_view text, NormalizationMode mode) {
  switch (mode) {
    case NormalizationMode::Raw: return std::u32string(text);
    case NormalizationMode::Lowercase: return unicode::to_lower(text);
    case NormalizationMode::AlphaOnly: break;
  }
  std::u32string out;
  bool gap = false;
  for (char32_t ch : text) {
    if (!unicode::is_letter(ch)) {
      gap = !out.empty();
      continue;
    }
    if (gap) out.push_back(U' ');
    gap = false;
    out.push_back(unicode::to_lower(ch));
  }
  return out;
}

template <typename T>
std::size_t distance(const std::vector<T>& a, const std::vector<T>& b) {
  return edit_distance(std::span<const T>(a), std::span<const T>(b));
}

std::size_t char_distance(const std::u32string& a, const std::u32string& b) {
  return edit_distance(std::span<const char32_t>(a.data(), a.size()),
                       std::span<const char32_t>(b.data(), b.size()));
}

}  // namespace

std::string normalize(std::string_view text, NormalizationMode mode) {
  if (mode == NormalizationMode::Raw) return std::string(text);
  return unicode::encode(normalize32(unicode::decode(text), mode));
}

std::vector<std::u32string> tokenize(std::u32string_view text) {
  std::vector<std::u32string> out;
  std::u32string cur;
  for (char32_t ch : text) {
    if (unicode::is_space(ch)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double word_error_rate(std::string_view reference, std::string_view hypothesis) {
  const auto ref = tokenize(unicode::decode(reference));
  const auto hyp = tokenize(unicode::decode(hypothesis));
  if (ref.empty()) throw UndefinedRate("word error rate: reference has no words");
  return static_cast<double>(distance(ref, hyp)) / static_cast<double>(ref.size());
}

double char_error_rate(std::string_view reference, std::string_view hypothesis) {
  const auto ref = unicode::decode(reference);
  const auto hyp = unicode::decode(hypothesis);
  if (ref.empty()) throw UndefinedRate("character error rate: reference is empty");
  return static_cast<double>(char_distance(ref, hyp)) / static_cast<double>(ref.size());
}

PairCounts count_errors(std::string_view reference, std::string_view hypothesis,
                        NormalizationMode mode) {
  const auto ref = normalize32(unicode::decode(reference), mode);
  const auto hyp = normalize32(unicode::decode(hypothesis), mode);
  const auto ref_words = tokenize(ref);
  const auto hyp_words = tokenize(hyp);
  return {distance(ref_words, hyp_words), ref_words.size(), char_distance(ref, hyp), ref.size()};
}

MetricsReport evaluate(const std::vector<std::pair<std::string, std::string>>& pairs,
                       const std::vector<NormalizationMode>& modes) {
  if (pairs.empty()) throw std::invalid_argument("evaluate: no pairs");
  MetricsReport report;
  for (const auto mode : modes) {
    ModeReport m;
    m.mode = mode;
    for (const auto& [ref, hyp] : pairs) {
      const PairCounts c = count_errors(ref, hyp, mode);
      m.word_edits += c.word_edits;
      m.word_count += c.word_count;
      m.char_edits += c.char_edits;
      m.char_count += c.char_count;
    }
    auto accuracy = [](std::size_t edits, std::size_t count) -> std::optional<double> {
      if (count == 0) return std::nullopt;
      const double rate = static_cast<double>(edits) / static_cast<double>(count);
      return std::max(0.0, 1.0 - rate) * 100.0;
    };
    m.war_percent = accuracy(m.word_edits, m.word_count);
    m.car_percent = accuracy(m.char_edits, m.char_count);
    report.modes.push_back(m);
  }
  return report;
}

std::string format_report(const MetricsReport& report) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-20s %10s %10s\n", "", "WAR, %", "CAR, %");
  out += line;
  auto cell = [](const std::optional<double>& v) {
    char buf[32];
    if (v) std::snprintf(buf, sizeof buf, "%.3f", *v);
    else std::snprintf(buf, sizeof buf, "n/a");
    return std::string(buf);
  };
  for (const auto& m : report.modes) {
    std::snprintf(line, sizeof line, "%-20s %10s %10s\n", display_name(m.mode),
                  cell(m.war_percent).c_str(), cell(m.car_percent).c_str());
    out += line;
  }
  return out;
}

nlohmann::json report_to_json(const MetricsReport& report) {
  nlohmann::json modes = nlohmann::json::object();
  for (const auto& m : report.modes) {
    nlohmann::json j = {{"word_edits", m.word_edits},
                        {"word_count", m.word_count},
                        {"char_edits", m.char_edits},
                        {"char_count", m.char_count}};
    j["war_percent"] = m.war_percent ? nlohmann::json(*m.war_percent) : nlohmann::json(nullptr);
    j["car_percent"] = m.car_percent ? nlohmann::json(*m.car_percent) : nlohmann::json(nullptr);
    modes[to_string(m.mode)] = j;
  }
  return {{"modes", modes}};
}

}  // namespace hwgen
