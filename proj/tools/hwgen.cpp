// hwgen command-line entry point.
//
// Option values resolve as: command-line flag, then the JSON file named by
// --config (or HWGEN_CONFIG), then HWGEN_<OPTION> environment variables,
// then built-in defaults. In the config file a section named after the
// subcommand overrides top-level keys.

#include "hwgen/commands.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nlohmann::json;
using namespace hwgen::cli;

class Resolver {
 public:
  void load(const std::string& path, const std::string& section) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw std::runtime_error("config '" + path + "' is not a JSON object");
    }
    for (const auto& [k, v] : j.items()) {
      if (!v.is_object()) config_[k] = v;
    }
    if (j.contains(section) && j.at(section).is_object()) {
      for (const auto& [k, v] : j.at(section).items()) config_[k] = v;
    }
  }

  // `name` is the long option name; "--run-id" reads key "run_id" and
  // variable HWGEN_RUN_ID.
  template <typename T>
  void resolve(const CLI::Option* opt, T& value, const std::string& name) const {
    if (opt->count() > 0) return;
    std::string key = name, env = "HWGEN_";
    for (char& c : key) {
      if (c == '-') c = '_';
    }
    for (char c : key) env.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    std::optional<json> found;
    if (config_.contains(key)) {
      found = config_.at(key);
    } else if (const char* v = std::getenv(env.c_str())) {
      json parsed = json::parse(v, nullptr, false);
      found = parsed.is_discarded() ? json(v) : parsed;
      if constexpr (std::is_same_v<T, std::string>) found = json(v);
    }
    if (!found) return;
    try {
      value = found->get<T>();
    } catch (const json::exception&) {
      throw std::runtime_error("bad value for '" + key + "': " + found->dump());
    }
  }

 private:
  json config_ = json::object();
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic handwriting generator and evaluation toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option values");

  std::string db_path;
  auto* validate = app.add_subcommand("validate", "Check a glyph template database");
  validate->add_option("db", db_path, "template database")->required();

  GenerateArgs gen;
  std::string corpus_dir, style_path, out_dir;
  auto* generate = app.add_subcommand("generate", "Render a dataset from a text corpus");
  generate->add_option("corpus_dir", corpus_dir, "directory of *.txt files")->required();
  generate->add_option("db", db_path, "template database")->required();
  generate->add_option("style", style_path, "style config JSON")->required();
  generate->add_option("out_dir", out_dir, "output directory")->required();
  auto* gen_seed = generate->add_option("--seed", gen.seed, "master seed");
  auto* gen_pages = generate->add_option("--pages", gen.pages, "number of pages");
  auto* gen_threads = generate->add_option("--threads", gen.threads, "render workers");
  auto* gen_run = generate->add_option("--run-id", gen.run_id, "image subdirectory name");

  PairsArgs pairs;
  std::string manifest, hyps, out_path;
  auto* pairs_cmd = app.add_subcommand("pairs", "Build correction-training pairs");
  pairs_cmd->add_option("manifest", manifest, "manifest.jsonl")->required();
  pairs_cmd->add_option("hyps", hyps, "hypotheses JSONL with id and text")->required();
  pairs_cmd->add_option("out", out_path, "output JSONL")->required();
  auto* pairs_window = pairs_cmd->add_option("--window", pairs.window, "symbols per pair");
  auto* pairs_keep = pairs_cmd->add_option("--keep-clean", pairs.keep_clean,
                                           "share of error-free windows kept");
  auto* pairs_overlap = pairs_cmd->add_option("--overlap", pairs.overlap, "window overlap");
  auto* pairs_sent = pairs_cmd->add_flag("--sentence-boundaries", pairs.sentence_boundaries,
                                         "prefer cuts after sentence ends");
  auto* pairs_seed = pairs_cmd->add_option("--seed", pairs.seed, "seed for clean-window sampling");

  EvaluateArgs eval;
  std::string refs, json_out, modes = "raw,lowercase,alpha";
  auto* evaluate = app.add_subcommand("evaluate", "Word and character accuracy report");
  evaluate->add_option("refs", refs, "references JSONL")->required();
  evaluate->add_option("hyps", hyps, "hypotheses JSONL")->required();
  auto* eval_modes = evaluate->add_option("--modes", modes, "comma-separated modes");
  auto* eval_json = evaluate->add_option("--json", json_out, "write the JSON report here");

  NoiseArgs noise;
  auto* noise_cmd = app.add_subcommand("noise", "Corrupt texts with a random channel");
  noise_cmd->add_option("refs", refs, "input JSONL with id and text")->required();
  noise_cmd->add_option("out", out_path, "output JSONL")->required();
  auto* noise_sub = noise_cmd->add_option("--sub", noise.sub, "substitution rate");
  auto* noise_ins = noise_cmd->add_option("--ins", noise.ins, "insertion rate");
  auto* noise_del = noise_cmd->add_option("--del", noise.del, "deletion rate");
  auto* noise_seed = noise_cmd->add_option("--seed", noise.seed, "seed");

  int port = 8765;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Serve the template editor API");
  serve->add_option("db", db_path, "template database")->required();
  auto* serve_port = serve->add_option("--port", port, "TCP port");
  auto* serve_host = serve->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    Resolver r;
    if (config_path.empty()) {
      if (const char* env = std::getenv("HWGEN_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) r.load(config_path, sub->get_name());
    if (sub == generate) {
      r.resolve(gen_seed, gen.seed, "seed");
      r.resolve(gen_pages, gen.pages, "pages");
      r.resolve(gen_threads, gen.threads, "threads");
      r.resolve(gen_run, gen.run_id, "run-id");
    } else if (sub == pairs_cmd) {
      r.resolve(pairs_window, pairs.window, "window");
      r.resolve(pairs_keep, pairs.keep_clean, "keep-clean");
      r.resolve(pairs_overlap, pairs.overlap, "overlap");
      r.resolve(pairs_sent, pairs.sentence_boundaries, "sentence-boundaries");
      r.resolve(pairs_seed, pairs.seed, "seed");
    } else if (sub == evaluate) {
      r.resolve(eval_modes, modes, "modes");
      r.resolve(eval_json, json_out, "json");
    } else if (sub == noise_cmd) {
      r.resolve(noise_sub, noise.sub, "sub");
      r.resolve(noise_ins, noise.ins, "ins");
      r.resolve(noise_del, noise.del, "del");
      r.resolve(noise_seed, noise.seed, "seed");
    } else if (sub == serve) {
      r.resolve(serve_port, port, "port");
      r.resolve(serve_host, host, "host");
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (sub == validate) return cmd_validate(db_path, std::cout, std::cerr);
  if (sub == generate) {
    gen.corpus_dir = corpus_dir;
    gen.db_path = db_path;
    gen.style_path = style_path;
    gen.out_dir = out_dir;
    return cmd_generate(gen, std::cout, std::cerr);
  }
  if (sub == pairs_cmd) {
    pairs.manifest = manifest;
    pairs.hyps = hyps;
    pairs.out = out_path;
    return cmd_pairs(pairs, std::cout, std::cerr);
  }
  if (sub == evaluate) {
    eval.refs = refs;
    eval.hyps = hyps;
    eval.modes = CLI::detail::split(modes, ',');
    if (!json_out.empty()) eval.json_out = json_out;
    return cmd_evaluate(eval, std::cout, std::cerr);
  }
  if (sub == noise_cmd) {
    noise.refs = refs;
    noise.out = out_path;
    return cmd_noise(noise, std::cout, std::cerr);
  }
  return cmd_serve(db_path, host, port, std::cout, std::cerr);
}
