#include "hwgen/errorpairs.hpp"

#include "hwgen/unicode.hpp"

#include <set>
#include <stdexcept>

namespace hwgen {

const char* to_string(EditKind kind) {
  switch (kind) {
    case EditKind::Match: return "match";
    case EditKind::Substitute: return "substitute";
    case EditKind::Insert: return "insert";
    case EditKind::Delete: return "delete";
  }
  return "?";
}

Alignment align(std::u32string_view reference, std::u32string_view hypothesis) {
  const std::span<const char32_t> ref(reference.data(), reference.size());
  const std::span<const char32_t> hyp(hypothesis.data(), hypothesis.size());
  Alignment out;
  out.ops.reserve(std::max(ref.size(), hyp.size()));
  std::size_t i = 0, j = 0;
  for (const auto step : detail::edit_script(ref, hyp)) {
    switch (step) {
      case detail::Step::Diagonal: {
        const bool same = ref[i] == hyp[j];
        out.ops.push_back({same ? EditKind::Match : EditKind::Substitute, ref[i], hyp[j]});
        if (!same) ++out.distance;
        ++i;
        ++j;
        break;
      }
      case detail::Step::Up:
        out.ops.push_back({EditKind::Delete, ref[i], std::nullopt});
        ++out.distance;
        ++i;
        break;
      case detail::Step::Left:
        out.ops.push_back({EditKind::Insert, std::nullopt, hyp[j]});
        ++out.distance;
        ++j;
        break;
    }
  }
  return out;
}

Alignment align(std::string_view reference, std::string_view hypothesis) {
  return align(std::u32string_view(unicode::decode(reference)),
               std::u32string_view(unicode::decode(hypothesis)));
}

std::u32string replay(const Alignment& alignment, std::u32string_view hypothesis) {
  std::u32string out;
  std::size_t j = 0;
  auto take = [&](const EditOp& op) {
    if (j >= hypothesis.size() || !op.hyp_char || hypothesis[j] != *op.hyp_char) {
      throw std::invalid_argument("replay: alignment does not fit the hypothesis");
    }
    ++j;
  };
  for (const auto& op : alignment.ops) {
    switch (op.kind) {
      case EditKind::Match:
      case EditKind::Substitute:
        take(op);
        out.push_back(*op.ref_char);
        break;
      case EditKind::Insert:
        take(op);
        break;
      case EditKind::Delete:
        out.push_back(*op.ref_char);
        break;
    }
  }
  if (j != hypothesis.size()) throw std::invalid_argument("replay: hypothesis not consumed");
  return out;
}

namespace {

std::size_t hyp_symbols(const EditOp& op) {
  return op.kind == EditKind::Delete ? 0 : 1;
}

bool is_error(const EditOp& op) { return op.kind != EditKind::Match; }

bool is_terminator(char32_t ch) {
  return ch == U'.' || ch == U'!' || ch == U'?' || ch == U'…';
}

}  // namespace

std::vector<Window> cut_windows(const Alignment& alignment, const PairOptions& options) {
  if (options.window < 1) throw std::invalid_argument("cut_windows: window must be >= 1");
  const auto& ops = alignment.ops;
  const std::size_t n = ops.size();
  std::vector<Window> windows;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    std::size_t count = 0;
    while (end < n && count + hyp_symbols(ops[end]) <= options.window) {
      count += hyp_symbols(ops[end]);
      ++end;
    }
    if (end < n) {
      std::size_t cut = end;
      while (cut > start && is_error(ops[cut - 1]) && is_error(ops[cut])) --cut;
      if (cut == start) cut = end;
      if (options.respect_sentence_boundaries) {
        for (std::size_t k = cut; k > start + 1; --k) {
          const EditOp& op = ops[k - 1];
          if (op.kind == EditKind::Match && is_terminator(*op.ref_char)) {
            cut = k;
            break;
          }
        }
      }
      end = cut;
    }
    windows.push_back({start, end});
    if (end >= n) break;
    std::size_t next = end;
    std::size_t repeated = 0;
    while (options.overlap > 0 && next > start + 1 && repeated < options.overlap) {
      --next;
      repeated += hyp_symbols(ops[next]);
    }
    start = next;
  }
  return windows;
}

std::vector<TrainingPair> make_pairs(const std::vector<std::string>& refs,
                                     const std::vector<std::string>& hyps,
                                     const PairOptions& options,
                                     const std::vector<std::string>& ids) {
  if (refs.size() != hyps.size()) {
    throw std::invalid_argument("make_pairs: refs and hyps differ in length");
  }
  if (!ids.empty() && ids.size() != refs.size()) {
    throw std::invalid_argument("make_pairs: ids and refs differ in length");
  }
  if (options.window < 1) throw std::invalid_argument("make_pairs: window must be >= 1");
  const Rng keep_root = Rng(options.seed).derive(streams::kPairs);
  std::vector<TrainingPair> pairs;
  for (std::size_t r = 0; r < refs.size(); ++r) {
    const Alignment a = align(refs[r], hyps[r]);
    const auto windows = cut_windows(a, options);
    const std::string base = ids.empty() ? std::to_string(r) : ids[r];
    for (std::size_t w = 0; w < windows.size(); ++w) {
      std::u32string noisy, clean;
      std::size_t errors = 0;
      for (std::size_t k = windows[w].begin; k < windows[w].end; ++k) {
        const EditOp& op = a.ops[k];
        if (op.hyp_char) noisy.push_back(*op.hyp_char);
        if (op.ref_char) clean.push_back(*op.ref_char);
        if (is_error(op)) ++errors;
      }
      if (errors == 0) {
        Rng keep = keep_root.derive(r).derive(w);
        if (!(keep.uniform() < options.keep_clean_ratio)) continue;
      }
      pairs.push_back({base + ":" + std::to_string(w), unicode::encode(noisy),
                       unicode::encode(clean), errors});
    }
  }
  return pairs;
}

void validate(const NoiseChannelConfig& cfg) {
  for (double rate : {cfg.sub_rate, cfg.ins_rate, cfg.del_rate}) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw std::invalid_argument("noise channel: rates must lie in [0, 1]");
    }
  }
  if (cfg.sub_rate + cfg.del_rate > 1.0) {
    throw std::invalid_argument("noise channel: sub_rate + del_rate must not exceed 1");
  }
  if (std::set<char32_t>(cfg.alphabet.begin(), cfg.alphabet.end()).size() < 2) {
    throw std::invalid_argument("noise channel: alphabet needs at least 2 distinct characters");
  }
}

Rng noise_rng(const NoiseChannelConfig& cfg, std::uint64_t index) {
  return Rng(cfg.seed).derive(streams::kNoise).derive(index);
}

namespace {

char32_t substitute(char32_t ch, const NoiseChannelConfig& cfg, Rng& rng) {
  const auto it = cfg.confusion_pairs.find(ch);
  if (it != cfg.confusion_pairs.end() && !it->second.empty()) {
    double total = 0.0;
    for (const auto& [_, w] : it->second) total += w;
    double u = rng.uniform() * total;
    for (const auto& [candidate, w] : it->second) {
      if (u < w && candidate != ch) return candidate;
      u -= w;
    }
    for (const auto& [candidate, _] : it->second) {
      if (candidate != ch) return candidate;
    }
  }
  const char32_t lower = unicode::to_lower(ch);
  const bool upper = lower != ch;
  for (;;) {
    char32_t candidate = cfg.alphabet[rng.below(cfg.alphabet.size())];
    if (upper) candidate = unicode::to_upper(candidate);
    if (candidate != ch) return candidate;
  }
}

}  // namespace

std::string noise_channel(std::string_view text, const NoiseChannelConfig& cfg, Rng& rng) {
  validate(cfg);
  const std::u32string in = unicode::decode(text);
  std::u32string out;
  out.reserve(in.size());
  for (char32_t ch : in) {
    const double u = rng.uniform();
    if (u < cfg.del_rate) {
      // dropped
    } else if (u < cfg.del_rate + cfg.sub_rate) {
      out.push_back(substitute(ch, cfg, rng));
    } else {
      out.push_back(ch);
    }
    if (rng.bernoulli(cfg.ins_rate)) out.push_back(cfg.alphabet[rng.below(cfg.alphabet.size())]);
  }
  return unicode::encode(out);
}

}  // namespace hwgen
