#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hwgen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int cmd_validate(const std::filesystem::path& db_path, std::ostream& out, std::ostream& err);

struct GenerateArgs {
  std::filesystem::path corpus_dir;
  std::filesystem::path db_path;
  std::optional<std::filesystem::path> style_path;  // may carry "page"/"render" sections
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  std::size_t pages = 1;
  unsigned threads = 1;
  std::string run_id = "run";
};

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err);

/// SHA-256 over manifest.jsonl followed by every image in manifest order.
std::string dataset_digest(const std::filesystem::path& out_dir);

struct PairsArgs {
  std::filesystem::path manifest;
  std::filesystem::path hyps;
  std::filesystem::path out;
  std::size_t window = 90;
  double keep_clean = 0.1;
  std::size_t overlap = 0;
  bool sentence_boundaries = false;
  std::uint64_t seed = 0;
};

int cmd_pairs(const PairsArgs& args, std::ostream& out, std::ostream& err);

struct EvaluateArgs {
  std::filesystem::path refs;
  std::filesystem::path hyps;
  std::vector<std::string> modes = {"raw", "lowercase", "alpha"};
  std::optional<std::filesystem::path> json_out;
};

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);

struct NoiseArgs {
  std::filesystem::path refs;
  std::filesystem::path out;
  double sub = 0.0;
  double ins = 0.0;
  double del = 0.0;
  std::uint64_t seed = 0;
};

int cmd_noise(const NoiseArgs& args, std::ostream& out, std::ostream& err);

/// Blocks until the server stops. Exit 2 when the port cannot be bound.
int cmd_serve(const std::filesystem::path& db_path, const std::string& host, int port,
              std::ostream& out, std::ostream& err);

/// Filesystem-safe run ids: [A-Za-z0-9._-]+, not "." or "..".
bool is_safe_run_id(const std::string& id);

}  // namespace hwgen::cli
