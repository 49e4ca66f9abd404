#include "hwgen/corpus.hpp"

#include "hwgen/errors.hpp"
#include "hwgen/unicode.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace hwgen {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

bool is_terminator(char32_t ch) { return ch == U'.' || ch == U'!' || ch == U'?' || ch == U'…'; }

bool is_closer(char32_t ch) {
  return ch == U'»' || ch == U'"' || ch == U')' || ch == U'”' || ch == U'’' || ch == U'\'';
}

bool is_lowercase_letter(char32_t ch) {
  return unicode::is_letter(ch) && unicode::to_lower(ch) == ch && unicode::to_upper(ch) != ch;
}

const std::set<std::u32string>& abbreviations() {
  static const std::set<std::u32string> kAbbrev = {
      U"т",   U"д",    U"п",   U"др",  U"пр",  U"г",   U"гг",   U"см",  U"стр", U"им",
      U"ул",  U"руб",  U"коп", U"тыс", U"млн", U"млрд", U"вв",  U"т.е", U"т.д", U"т.п",
      U"т.к", U"и.о",  U"e.g", U"i.e", U"etc", U"mr",  U"mrs",  U"dr",  U"vs",  U"no"};
  return kAbbrev;
}

/// The token ending right before position `dot` (exclusive).
std::u32string token_before(std::u32string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !unicode::is_space(text[begin - 1])) --begin;
  std::u32string token(text.substr(begin, dot - begin));
  while (!token.empty() && !unicode::is_letter(token.front())) token.erase(token.begin());
  return token;
}

bool is_abbreviation(std::u32string_view text, std::size_t dot) {
  const std::u32string token = token_before(text, dot);
  if (token.empty()) return false;
  if (token.size() == 1 && unicode::is_letter(token[0]) && !is_lowercase_letter(token[0])) {
    return true;  // initial, e.g. "А. С. Пушкин"
  }
  return abbreviations().contains(unicode::to_lower(token));
}

std::u32string collapse(std::u32string_view text) {
  std::u32string out;
  bool gap = false;
  for (char32_t ch : text) {
    if (unicode::is_space(ch)) {
      gap = !out.empty();
      continue;
    }
    if (gap) out.push_back(U' ');
    gap = false;
    out.push_back(ch);
  }
  return out;
}

}  // namespace

std::vector<std::u32string> split_sentences(std::u32string_view text) {
  std::vector<std::u32string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  auto push = [&](std::size_t end) {
    std::u32string s = collapse(text.substr(start, end - start));
    if (!s.empty()) out.push_back(std::move(s));
    start = end;
  };
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    const std::size_t first = i;
    while (i < text.size() && is_terminator(text[i])) ++i;
    while (i < text.size() && is_closer(text[i])) ++i;
    std::size_t next = i;
    while (next < text.size() && unicode::is_space(text[next])) ++next;
    if (next < text.size() && is_lowercase_letter(text[next])) continue;
    if (i - first == 1 && text[first] == U'.' && is_abbreviation(text, first)) continue;
    push(i);
  }
  push(text.size());
  return out;
}

IngestResult ingest(const std::vector<SourceText>& sources, const std::set<char32_t>& charset,
                    const IngestOptions& options) {
  IngestResult result;
  for (const auto& source : sources) {
    std::u32string text;
    try {
      text = unicode::decode(source.bytes);
    } catch (const Utf8Error& e) {
      throw Utf8Error("source '" + source.id + "': " + e.what(), e.offset());
    }
    for (auto& s : split_sentences(text)) {
      ++result.report.ingested;
      const auto bad = std::find_if(s.begin(), s.end(), [&](char32_t ch) {
        return ch != U' ' && !charset.contains(ch) && !options.punctuation.contains(ch);
      });
      if (bad != s.end()) {
        ++result.report.rejected;
        ++result.report.offending_chars[*bad];
        continue;
      }
      ++result.report.accepted;
      result.sentences.push_back({unicode::encode(s), source.id, s.size()});
    }
  }
  return result;
}

std::vector<SourceText> read_corpus_dir(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SourceText> out;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + f.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    out.push_back({f.filename().string(), buf.str()});
  }
  return out;
}

json manifest_entry_to_json(const ManifestEntry& e) {
  json boxes = json::array();
  for (const auto& w : e.word_boxes) {
    boxes.push_back({{"text", w.text},
                     {"box", {std::lround(w.box.x), std::lround(w.box.y), std::lround(w.box.w),
                              std::lround(w.box.h)}}});
  }
  return {{"id", e.id},
          {"image_path", e.image_path},
          {"ground_truth", e.ground_truth},
          {"style_seed", e.style_seed},
          {"page_index", e.page_index},
          {"width", e.width},
          {"height", e.height},
          {"word_boxes", boxes},
          {"variants", e.variants}};
}

ManifestEntry manifest_entry_from_json(const json& j) {
  ManifestEntry e;
  for (const char* key : {"id", "image_path", "ground_truth"}) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      throw ParseError(std::string("manifest entry: missing string field '") + key + "'");
    }
  }
  e.id = j.at("id").get<std::string>();
  e.image_path = j.at("image_path").get<std::string>();
  e.ground_truth = j.at("ground_truth").get<std::string>();
  e.style_seed = j.value("style_seed", std::uint64_t{0});
  e.page_index = j.value("page_index", std::uint64_t{0});
  e.width = j.value("width", 0);
  e.height = j.value("height", 0);
  if (j.contains("word_boxes")) {
    for (const auto& w : j.at("word_boxes")) {
      const auto& b = w.at("box");
      e.word_boxes.push_back({w.at("text").get<std::string>(),
                              {b.at(0).get<double>(), b.at(1).get<double>(),
                               b.at(2).get<double>(), b.at(3).get<double>()}});
    }
  }
  if (j.contains("variants")) e.variants = j.at("variants").get<std::map<std::string, std::string>>();
  return e;
}

std::string manifest_to_jsonl(const DatasetManifest& manifest) {
  std::string out;
  for (const auto& e : manifest.entries) out += manifest_entry_to_json(e).dump() + "\n";
  return out;
}

DatasetManifest read_manifest_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read manifest '" + path.string() + "'");
  DatasetManifest m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      m.entries.push_back(manifest_entry_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return m;
}

namespace {

struct PagePlan {
  std::size_t page_index;
  StyleParams params;
  PageGeometry geometry;
};

Box pixel_box(const Box& b, double pad, const PageSpec& spec) {
  const double x0 = std::max(0.0, std::floor(b.x - pad));
  const double y0 = std::max(0.0, std::floor(b.y - pad));
  const double x1 = std::min<double>(spec.width_px, std::ceil(b.x + b.w + pad));
  const double y1 = std::min<double>(spec.height_px, std::ceil(b.y + b.h + pad));
  return {x0, y0, std::max(0.0, x1 - x0), std::max(0.0, y1 - y0)};
}

std::string page_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", index);
  return buf;
}

}  // namespace

DatasetManifest generate_dataset(const std::vector<Sentence>& sentences, const TemplateDB& db,
                                 const StyleConfig& cfg, const PageSpec& spec,
                                 const RenderConfig& rcfg, std::uint64_t seed,
                                 std::size_t n_pages, const DatasetOptions& options,
                                 DatasetSummary* summary) {
  if (n_pages == 0) throw std::invalid_argument("generate_dataset: n_pages must be > 0");
  if (sentences.empty()) throw std::invalid_argument("generate_dataset: no sentences");
  validate(cfg);
  validate(spec);
  validate(rcfg);

  const fs::path run_dir = options.out_dir / options.run_id;
  fs::create_directories(run_dir);
  const fs::path marker = options.out_dir / ".incomplete";
  std::ofstream(marker) << "generation in progress\n";

  DatasetSummary stats;
  std::vector<PagePlan> plans;
  std::size_t next = 0;
  try {
    for (std::size_t page = 0; page < n_pages && next < sentences.size(); ++page) {
      StyleParams params = sample_page_style(cfg, db, seed, page);
      const Rng rng = layout_rng(seed, page);
      std::string text;
      std::optional<PageGeometry> geometry;
      while (next < sentences.size()) {
        const std::string candidate =
            text.empty() ? sentences[next].text : text + " " + sentences[next].text;
        try {
          geometry = layout_text(candidate, db, params, spec, rng, options.layout);
          text = candidate;
          ++next;
          ++stats.sentences_used;
        } catch (const PageOverflow&) {
          if (!text.empty()) break;
          ++next;
          ++stats.sentences_skipped;
        }
      }
      if (!geometry) break;
      plans.push_back({page, std::move(params), std::move(*geometry)});
    }
  } catch (const CharNotInDb& e) {
    throw std::logic_error(std::string("sentence passed ingestion but is not renderable: ") +
                           e.what());
  }

  DatasetManifest manifest;
  manifest.entries.resize(plans.size());
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= plans.size()) return;
      try {
        const PagePlan& plan = plans[i];
        const GrayscaleImage image = render_page(plan.geometry, spec, rcfg);
        const std::string rel = options.run_id + "/" + page_name(plan.page_index) + ".png";
        write_png_file((options.out_dir / rel).string(), image);
        ManifestEntry& e = manifest.entries[i];
        e.id = options.run_id + "/" + page_name(plan.page_index);
        e.image_path = rel;
        e.ground_truth = plan.geometry.ground_truth;
        e.style_seed = seed;
        e.page_index = plan.page_index;
        e.width = image.width;
        e.height = image.height;
        for (const auto& w : plan.geometry.words) {
          e.word_boxes.push_back({w.text, pixel_box(w.box, rcfg.stroke_width_px / 2.0, spec)});
        }
        for (const auto& g : plan.geometry.glyphs) {
          e.variants[unicode::encode(g.character)] = g.variant_id;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cursor = plans.size();
      }
    }
  };
  const unsigned n_threads = std::max(1u, options.threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  {
    std::ofstream out(options.out_dir / "manifest.jsonl", std::ios::binary);
    out << manifest_to_jsonl(manifest);
    if (!out) throw std::runtime_error("cannot write manifest");
  }
  fs::remove(marker);

  stats.pages = plans.size();
  for (const auto& e : manifest.entries) stats.characters += unicode::length(e.ground_truth);
  if (summary) *summary = stats;
  return manifest;
}

}  // namespace hwgen
