#pragma once

#include "hwgen/layout.hpp"
#include "hwgen/raster.hpp"
#include "hwgen/style.hpp"
#include "hwgen/templates.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hwgen {

struct Sentence {
  std::string text;
  std::string source_id;
  std::size_t char_count = 0;  // Unicode scalars

  bool operator==(const Sentence&) const = default;
};

struct SourceText {
  std::string id;
  std::string bytes;
};

struct IngestOptions {
  // Characters accepted in addition to the charset and the space.
  std::set<char32_t> punctuation = {U'.', U',', U'!', U'?', U';', U':', U'-'};
};

struct RejectionReport {
  std::size_t ingested = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  // First offending character of each rejected sentence.
  std::map<char32_t, std::size_t> offending_chars;
};

struct IngestResult {
  std::vector<Sentence> sentences;
  RejectionReport report;
};

/// Splits each source into sentences, normalizes whitespace and drops any
/// sentence with a character outside charset ∪ punctuation ∪ {space}.
///
/// A sentence ends at a run of '.', '!', '?' or '…' (plus any closing
/// quotes or brackets), except when the next non-space character is a
/// lowercase letter, or the terminator is a '.' after a known abbreviation
/// or a single-letter initial. Throws Utf8Error on invalid input.
IngestResult ingest(const std::vector<SourceText>& sources, const std::set<char32_t>& charset,
                    const IngestOptions& options = {});

/// Sentence splitting alone, no filtering. Exposed for tests.
std::vector<std::u32string> split_sentences(std::u32string_view text);

/// Reads every regular *.txt file of a directory in file-name order.
std::vector<SourceText> read_corpus_dir(const std::filesystem::path& dir);

struct ManifestEntry {
  std::string id;
  std::string image_path;  // relative to the dataset directory
  std::string ground_truth;
  std::uint64_t style_seed = 0;
  std::uint64_t page_index = 0;
  int width = 0;
  int height = 0;
  std::vector<WordBox> word_boxes;  // integer pixel boxes
  std::map<std::string, std::string> variants;  // character -> variant used
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

nlohmann::json manifest_entry_to_json(const ManifestEntry& e);
ManifestEntry manifest_entry_from_json(const nlohmann::json& j);
std::string manifest_to_jsonl(const DatasetManifest& manifest);
DatasetManifest read_manifest_jsonl(const std::filesystem::path& path);

struct DatasetOptions {
  std::filesystem::path out_dir;
  std::string run_id = "run";
  unsigned threads = 1;
  LayoutOptions layout;
};

struct DatasetSummary {
  std::size_t pages = 0;
  std::size_t sentences_used = 0;
  std::size_t sentences_skipped = 0;  // too long for an empty page
  std::size_t characters = 0;
};

/// Packs sentences greedily onto pages (page k uses the style and layout
/// streams of (seed, k)), then renders pages on `threads` workers. Writes
/// `{out_dir}/{run_id}/{page:06}.png` and `{out_dir}/manifest.jsonl`; a
/// `.incomplete` marker sits in out_dir until everything is written.
/// Stops early when sentences run out.
DatasetManifest generate_dataset(const std::vector<Sentence>& sentences, const TemplateDB& db,
                                 const StyleConfig& cfg, const PageSpec& spec,
                                 const RenderConfig& rcfg, std::uint64_t seed,
                                 std::size_t n_pages, const DatasetOptions& options,
                                 DatasetSummary* summary = nullptr);

}  // namespace hwgen
