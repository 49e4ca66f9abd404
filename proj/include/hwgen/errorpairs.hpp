#pragma once

#include "hwgen/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hwgen {

enum class EditKind : std::uint8_t { Match, Substitute, Insert, Delete };

const char* to_string(EditKind kind);

/// Insert means the hypothesis has an extra symbol; Delete means the
/// hypothesis lost a reference symbol.
struct EditOp {
  EditKind kind;
  std::optional<char32_t> ref_char;
  std::optional<char32_t> hyp_char;

  bool operator==(const EditOp&) const = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  std::size_t distance = 0;
};

namespace detail {

enum class Step : std::uint8_t { Diagonal, Up, Left };

/// Optimal edit script over arbitrary sequences as a list of steps.
/// Two cost rows are live at a time; the traceback keeps one byte per cell.
/// Ties prefer the diagonal (match or substitute), then Up (delete), then
/// Left (insert).
template <typename T>
std::vector<Step> edit_script(std::span<const T> ref, std::span<const T> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  std::vector<Step> trace((n + 1) * (m + 1));
  for (std::size_t j = 0; j <= m; ++j) {
    prev[j] = j;
    trace[j] = Step::Left;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    trace[i * (m + 1)] = Step::Up;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::size_t up = prev[j] + 1;
      const std::size_t left = cur[j - 1] + 1;
      std::size_t best = diag;
      Step step = Step::Diagonal;
      if (up < best) {
        best = up;
        step = Step::Up;
      }
      if (left < best) {
        best = left;
        step = Step::Left;
      }
      cur[j] = best;
      trace[i * (m + 1) + j] = step;
    }
    std::swap(prev, cur);
  }
  std::vector<Step> steps;
  steps.reserve(n + m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const Step s = trace[i * (m + 1) + j];
    steps.push_back(s);
    if (s == Step::Diagonal) {
      --i;
      --j;
    } else if (s == Step::Up) {
      --i;
    } else {
      --j;
    }
  }
  return {steps.rbegin(), steps.rend()};
}

}  // namespace detail

/// Levenshtein distance with two rolling rows.
template <typename T>
std::size_t edit_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Aligns UTF-8 strings at the Unicode scalar level.
Alignment align(std::string_view reference, std::string_view hypothesis);
Alignment align(std::u32string_view reference, std::u32string_view hypothesis);

/// Applies the ops to the hypothesis; yields the reference for a sound
/// alignment. Throws std::invalid_argument if the ops do not fit.
std::u32string replay(const Alignment& alignment, std::u32string_view hypothesis);

struct TrainingPair {
  std::string pair_id;
  std::string noisy;
  std::string clean;
  std::size_t n_errors = 0;
};

struct PairOptions {
  std::size_t window = 90;  // max hypothesis symbols per pair
  double keep_clean_ratio = 0.1;
  // Hypothesis symbols repeated at the start of the next window.
  std::size_t overlap = 0;
  // Prefer cutting right after a sentence terminator inside the window.
  bool respect_sentence_boundaries = false;
  std::uint64_t seed = 0;
};

/// A window over one alignment: ops [begin, end).
struct Window {
  std::size_t begin;
  std::size_t end;
};

/// Splits an alignment into windows of at most `window` hypothesis symbols.
/// A cut never lands between two non-match ops; it moves left until the op
/// before it is a match, unless that would empty the window.
std::vector<Window> cut_windows(const Alignment& alignment, const PairOptions& options);

/// Aligns each (ref, hyp) record and mints windows. Clean windows survive
/// with probability keep_clean_ratio, decided per window from the seed.
std::vector<TrainingPair> make_pairs(const std::vector<std::string>& refs,
                                     const std::vector<std::string>& hyps,
                                     const PairOptions& options = {},
                                     const std::vector<std::string>& ids = {});

struct NoiseChannelConfig {
  double sub_rate = 0.0;
  double ins_rate = 0.0;
  double del_rate = 0.0;
  // Weighted substitution candidates per source character.
  std::map<char32_t, std::vector<std::pair<char32_t, double>>> confusion_pairs;
  // Fallback substitution / insertion alphabet.
  std::u32string alphabet = U"абвгдеёжзийклмнопрстуфхцчшщъыьэюя";
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument unless every rate is in [0, 1], sub + del
/// is at most 1 and the alphabet has two distinct characters.
void validate(const NoiseChannelConfig& cfg);

/// Stand-in for a recognizer: per source character one uniform draw picks
/// delete / substitute / keep, and an insertion may follow every character.
std::string noise_channel(std::string_view text, const NoiseChannelConfig& cfg, Rng& rng);

/// The stream used for record `index` under `cfg.seed`.
Rng noise_rng(const NoiseChannelConfig& cfg, std::uint64_t index);

}  // namespace hwgen
