#include "hwgen/commands.hpp"

#include "hwgen/corpus.hpp"
#include "hwgen/errorpairs.hpp"
#include "hwgen/errors.hpp"
#include "hwgen/metrics.hpp"
#include "hwgen/service.hpp"
#include "hwgen/unicode.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

namespace hwgen::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Input problems that are the caller's fault rather than the data's.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::vector<json> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw SchemaError(path.string() + ":" + std::to_string(number) + ": not a JSON object");
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::string string_field(const json& j, std::initializer_list<const char*> names,
                         const fs::path& path, std::size_t record) {
  for (const char* name : names) {
    if (j.contains(name) && j.at(name).is_string()) return j.at(name).get<std::string>();
  }
  std::string wanted;
  for (const char* name : names) wanted += std::string(wanted.empty() ? "" : " or ") + "'" + name + "'";
  throw SchemaError(path.string() + ": record " + std::to_string(record) + " lacks string field " +
                    wanted);
}

struct TextRecord {
  std::string id;
  std::string text;
};

std::vector<TextRecord> read_text_records(const fs::path& path) {
  std::vector<TextRecord> out;
  const auto rows = read_jsonl(path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.push_back({string_field(rows[i], {"id"}, path, i + 1),
                   string_field(rows[i], {"text", "ground_truth"}, path, i + 1)});
  }
  return out;
}

void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

bool is_safe_run_id(const std::string& id) {
  if (id.empty() || id == "." || id == "..") return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

int cmd_validate(const fs::path& db_path, std::ostream& out, std::ostream& err) {
  TemplateDB db;
  try {
    db = parse_template_db(read_file(db_path), false);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const auto violations = template_db_violations(db);
  for (const auto& v : violations) {
    out << (v.glyph.empty() ? "<database>" : v.glyph) << ": " << v.rule << ": " << v.message
        << "\n";
  }
  if (!violations.empty()) return kExitFailure;
  std::size_t variants = 0;
  for (const auto& [ch, list] : db.glyphs) variants += list.size();
  out << "ok: " << db.glyphs.size() << " characters, " << variants << " variants\n";
  return kExitOk;
}

std::string dataset_digest(const fs::path& out_dir) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 unavailable");
  }
  auto feed = [&](const fs::path& p) {
    const std::string bytes = read_file(p);
    EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size());
  };
  const fs::path manifest = out_dir / "manifest.jsonl";
  feed(manifest);
  for (const auto& e : read_manifest_jsonl(manifest).entries) feed(out_dir / e.image_path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.pages == 0) throw UsageError("--pages must be at least 1");
    if (args.threads == 0) throw UsageError("--threads must be at least 1");
    if (!is_safe_run_id(args.run_id)) throw UsageError("--run-id must match [A-Za-z0-9._-]+");
    if (!fs::is_directory(args.corpus_dir)) {
      throw UsageError("corpus directory '" + args.corpus_dir.string() + "' does not exist");
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  TemplateDB db;
  StyleConfig style;
  PageSpec page;
  RenderConfig render;
  try {
    db = load_template_db_file(args.db_path.string());
    if (args.style_path) {
      const json j = json::parse(read_file(*args.style_path));
      style = style_config_from_json(j);
      if (j.contains("page")) page = page_spec_from_json(j.at("page"));
      if (j.contains("render")) render = render_config_from_json(j.at("render"));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    IngestOptions ingest_options;
    ingest_options.punctuation.clear();  // only what the database can draw
    const auto ingested =
        ingest(read_corpus_dir(args.corpus_dir), renderable_charset(db), ingest_options);
    const auto& report = ingested.report;
    out << "sentences: " << report.ingested << " ingested, " << report.accepted << " accepted, "
        << report.rejected << " rejected\n";
    for (const auto& [ch, count] : report.offending_chars) {
      out << "  rejected for '" << unicode::encode(ch) << "': " << count << "\n";
    }
    if (ingested.sentences.empty()) {
      err << "error: no usable sentences in '" << args.corpus_dir.string() << "'\n";
      return kExitFailure;
    }
    DatasetOptions options;
    options.out_dir = args.out_dir;
    options.run_id = args.run_id;
    options.threads = args.threads;
    DatasetSummary summary;
    generate_dataset(ingested.sentences, db, style, page, render, args.seed, args.pages, options,
                     &summary);
    out << "pages: " << summary.pages << "\n"
        << "sentences used: " << summary.sentences_used << ", skipped: "
        << summary.sentences_skipped << "\n"
        << "characters: " << summary.characters << "\n"
        << "digest: " << dataset_digest(args.out_dir) << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_pairs(const PairsArgs& args, std::ostream& out, std::ostream& err) {
  if (args.window == 0 || args.overlap >= args.window || !(args.keep_clean >= 0.0) ||
      args.keep_clean > 1.0) {
    err << "usage error: need window > overlap >= 0 and keep-clean in [0, 1]\n";
    return kExitUsage;
  }
  try {
    const DatasetManifest manifest = read_manifest_jsonl(args.manifest);
    std::map<std::string, std::string> hyp_by_id;
    const auto hyps = read_text_records(args.hyps);
    for (const auto& h : hyps) hyp_by_id[h.id] = h.text;

    std::vector<std::string> refs, texts, ids;
    std::set<std::string> manifest_ids;
    std::size_t missing_hyp = 0;
    for (const auto& e : manifest.entries) {
      manifest_ids.insert(e.id);
      const auto it = hyp_by_id.find(e.id);
      if (it == hyp_by_id.end()) {
        ++missing_hyp;
        continue;
      }
      refs.push_back(e.ground_truth);
      texts.push_back(it->second);
      ids.push_back(e.id);
    }
    std::size_t unknown_hyp = 0;
    for (const auto& h : hyps) {
      if (!manifest_ids.contains(h.id)) {
        ++unknown_hyp;
        err << "unmatched hypothesis id '" << h.id << "'\n";
      }
    }
    out << "matched: " << ids.size() << ", manifest without hypothesis: " << missing_hyp
        << ", unmatched hypotheses: " << unknown_hyp << "\n";
    if (ids.empty()) {
      err << "error: no hypothesis matched a manifest id\n";
      return kExitFailure;
    }

    PairOptions options;
    options.window = args.window;
    options.keep_clean_ratio = args.keep_clean;
    options.overlap = args.overlap;
    options.respect_sentence_boundaries = args.sentence_boundaries;
    options.seed = args.seed;
    const auto pairs = make_pairs(refs, texts, options, ids);

    std::string jsonl;
    std::size_t with_errors = 0, total_errors = 0;
    for (const auto& p : pairs) {
      jsonl += json{{"pair_id", p.pair_id},
                    {"noisy", p.noisy},
                    {"clean", p.clean},
                    {"n_errors", p.n_errors}}
                   .dump() +
               "\n";
      if (p.n_errors > 0) ++with_errors;
      total_errors += p.n_errors;
    }
    write_text(args.out, jsonl);
    out << "pairs: " << pairs.size() << ", with errors: " << with_errors
        << ", clean: " << pairs.size() - with_errors << ", edit operations: " << total_errors
        << "\n";
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<NormalizationMode> modes;
  try {
    for (const auto& m : args.modes) modes.push_back(parse_mode(m));
    if (modes.empty()) throw std::invalid_argument("no modes given");
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    const auto refs = read_text_records(args.refs);
    if (refs.empty()) {
      err << "error: reference file '" << args.refs.string() << "' has no records\n";
      return kExitUsage;
    }
    std::map<std::string, std::string> hyp_by_id;
    for (const auto& h : read_text_records(args.hyps)) hyp_by_id[h.id] = h.text;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t missing = 0;
    for (const auto& r : refs) {
      const auto it = hyp_by_id.find(r.id);
      if (it == hyp_by_id.end()) {
        ++missing;
        err << "no hypothesis for id '" << r.id << "'; scored as empty\n";
        pairs.emplace_back(r.text, "");
      } else {
        pairs.emplace_back(r.text, it->second);
      }
    }
    const MetricsReport report = evaluate(pairs, modes);
    out << format_report(report);
    json j = report_to_json(report);
    j["records"] = refs.size();
    j["missing_hypotheses"] = missing;
    if (args.json_out) {
      write_text(*args.json_out, j.dump(2) + "\n");
    } else {
      out << j.dump(2) << "\n";
    }
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_noise(const NoiseArgs& args, std::ostream& out, std::ostream& err) {
  NoiseChannelConfig cfg;
  cfg.sub_rate = args.sub;
  cfg.ins_rate = args.ins;
  cfg.del_rate = args.del;
  cfg.seed = args.seed;
  try {
    validate(cfg);
    if (args.sub + args.ins + args.del >= 1.0) {
      throw std::invalid_argument("--sub + --ins + --del must be below 1");
    }
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    const auto records = read_text_records(args.refs);
    std::string jsonl;
    for (std::size_t i = 0; i < records.size(); ++i) {
      Rng rng = noise_rng(cfg, i);
      jsonl += json{{"id", records[i].id}, {"text", noise_channel(records[i].text, cfg, rng)}}
                   .dump() +
               "\n";
    }
    write_text(args.out, jsonl);
    out << "records: " << records.size() << "\n";
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_serve(const fs::path& db_path, const std::string& host, int port, std::ostream& out,
              std::ostream& err) {
  std::unique_ptr<EditorService> service;
  try {
    service = std::make_unique<EditorService>(db_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  httplib::Server server;
  // httplib's default also sets SO_REUSEPORT, which would let a second
  // server share a busy port silently.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  mount_routes(server, *service);
  if (!server.bind_to_port(host, port)) {
    err << "error: cannot bind " << host << ":" << port << " (port busy?)\n";
    return kExitUsage;
  }
  out << "serving " << db_path.string() << " on http://" << host << ":" << port << "\n"
      << std::flush;
  return server.listen_after_bind() ? kExitOk : kExitFailure;
}

}  // namespace hwgen::cli
