#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hwgen/errorpairs.hpp"
#include "hwgen/unicode.hpp"
#include "oracles.hpp"

#include <random>

using namespace hwgen;

namespace {

std::size_t dist(const std::u32string& a, const std::u32string& b) {
  return edit_distance(std::span<const char32_t>(a.data(), a.size()),
                       std::span<const char32_t>(b.data(), b.size()));
}

std::u32string random_unicode(std::mt19937_64& gen, std::size_t max_len) {
  // A small pool makes matches common; the rest covers the code space.
  static const std::u32string pool = U"аабвгё ьЯqZ.,😀́";
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<char32_t> any(1, 0x10FFFF);
  std::u32string s;
  const std::size_t n = len(gen);
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(gen) != 0) {
      s.push_back(pool[gen() % pool.size()]);
    } else {
      char32_t c = any(gen);
      if (c >= 0xD800 && c <= 0xDFFF) c = 0x4E00;
      s.push_back(c);
    }
  }
  return s;
}


}  // namespace

TEST_CASE("worked alignments") {
  const auto a = align(std::string_view("чаю"), std::string_view("чсю"));
  CHECK(a.distance == 1);
  REQUIRE(a.ops.size() == 3);
  CHECK(a.ops[0].kind == EditKind::Match);
  CHECK(a.ops[1] == EditOp{EditKind::Substitute, U'а', U'с'});
  CHECK(a.ops[2].kind == EditKind::Match);

  const auto b = align(std::string_view("abc"), std::string_view(""));
  CHECK(b.distance == 3);
  for (const auto& op : b.ops) CHECK(op.kind == EditKind::Delete);

  const auto c = align(std::string_view(""), std::string_view("xy"));
  CHECK(c.distance == 2);
  for (const auto& op : c.ops) CHECK(op.kind == EditKind::Insert);
}

TEST_CASE("ties prefer substitution, then deletion") {
  // "ab" vs "ba": two substitutions and delete+insert both cost 2.
  const auto a = align(std::u32string_view(U"ab"), std::u32string_view(U"ba"));
  CHECK(a.distance == 2);
  CHECK(a.ops.size() == 2);
  CHECK(a.ops[0].kind == EditKind::Substitute);
  const auto b = align(std::u32string_view(U"аб"), std::u32string_view(U"б"));
  REQUIRE(b.ops.size() == 2);
  CHECK(b.ops[0].kind == EditKind::Delete);
  CHECK(b.ops[1].kind == EditKind::Match);
}

TEST_CASE("distance equals the full-matrix DP on every small pair") {
  std::size_t pairs = 0;
  const std::size_t bad = oracle::exhaustive_levenshtein_mismatches(
      U"абвг", 10, [](const std::u32string& a, const std::u32string& b) { return dist(a, b); },
      pairs, std::max(1u, std::thread::hardware_concurrency()));
  CHECK(bad == 0);
  CHECK(pairs == 14913081);  // sum over n <= 10 of (n + 1) 4^n
}

TEST_CASE("alignment distance agrees with the oracle on longer random pairs") {
  std::mt19937_64 gen(7);
  for (int k = 0; k < 10000; ++k) {
    const auto a = random_unicode(gen, 40);
    const auto b = random_unicode(gen, 40);
    const auto al = align(std::u32string_view(a), std::u32string_view(b));
    REQUIRE(al.distance == oracle::levenshtein(a, b));
    REQUIRE(dist(a, b) == al.distance);
  }
}

TEST_CASE("replay reconstructs the reference") {
  std::mt19937_64 gen(11);
  for (int k = 0; k < 10000; ++k) {
    const auto ref = random_unicode(gen, 30);
    const auto hyp = random_unicode(gen, 30);
    const auto al = align(std::u32string_view(ref), std::u32string_view(hyp));
    REQUIRE(replay(al, hyp) == ref);
    std::size_t errors = 0;
    for (const auto& op : al.ops) errors += op.kind != EditKind::Match;
    REQUIRE(errors == al.distance);
  }
}

TEST_CASE("replay rejects an alignment for another hypothesis") {
  const auto al = align(std::u32string_view(U"кот"), std::u32string_view(U"кит"));
  CHECK_THROWS_AS(replay(al, U"кот"), std::invalid_argument);
  CHECK_THROWS_AS(replay(al, U"кит!"), std::invalid_argument);
}

TEST_CASE("metric properties") {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 3000; ++k) {
    const auto a = random_unicode(gen, 15);
    const auto b = random_unicode(gen, 15);
    const auto c = random_unicode(gen, 15);
    REQUIRE(dist(a, b) == dist(b, a));
    REQUIRE(dist(a, c) <= dist(a, b) + dist(b, c));
    REQUIRE((dist(a, b) == 0) == (a == b));
  }
}

TEST_CASE("UTF-8 alignment works on scalars") {
  const auto a = align(std::string_view("ёж"), std::string_view("еж"));
  CHECK(a.distance == 1);
  CHECK(a.ops.size() == 2);
}

TEST_CASE("windowing arithmetic") {
  const std::string s(200, 'x');
  PairOptions opt;
  opt.keep_clean_ratio = 1.0;
  const auto pairs = make_pairs({s}, {s}, opt);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].noisy.size() == 90);
  CHECK(pairs[1].noisy.size() == 90);
  CHECK(pairs[2].noisy.size() == 20);
  for (const auto& p : pairs) {
    CHECK(p.noisy == p.clean);
    CHECK(p.n_errors == 0);
  }
  CHECK(pairs[2].pair_id == "0:2");

  opt.window = 1;
  const auto tiny = make_pairs({"ab"}, {"ab"}, opt);
  REQUIRE(tiny.size() == 2);
  CHECK(tiny[0].clean == "a");
  CHECK(tiny[1].clean == "b");
}

TEST_CASE("a single error lands in the window that holds it") {
  std::string ref(200, 'x');
  std::string hyp = ref;
  hyp[100] = 'y';
  PairOptions opt;
  opt.keep_clean_ratio = 0.0;
  const auto pairs = make_pairs({ref}, {hyp}, opt);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].pair_id == "0:1");
  CHECK(pairs[0].n_errors == 1);
  CHECK(pairs[0].noisy[100 - 90] == 'y');
  CHECK(pairs[0].clean == std::string(90, 'x'));
}

TEST_CASE("cuts never fall inside an error run") {
  std::mt19937_64 gen(5);
  PairOptions opt;
  opt.window = 12;
  for (int k = 0; k < 2000; ++k) {
    const auto ref = random_unicode(gen, 80);
    const auto hyp = random_unicode(gen, 80);
    const auto al = align(std::u32string_view(ref), std::u32string_view(hyp));
    const auto windows = cut_windows(al, opt);
    std::size_t expect = 0;
    std::u32string clean;
    for (const auto& w : windows) {
      REQUIRE(w.begin == expect);
      REQUIRE(w.end > w.begin);
      std::size_t symbols = 0;
      for (std::size_t i = w.begin; i < w.end; ++i) {
        symbols += al.ops[i].kind != EditKind::Delete;
        if (al.ops[i].ref_char) clean.push_back(*al.ops[i].ref_char);
      }
      REQUIRE(symbols <= opt.window);
      if (w.end < al.ops.size()) {
        const bool left_error = al.ops[w.end - 1].kind != EditKind::Match;
        const bool right_error = al.ops[w.end].kind != EditKind::Match;
        // A cut between errors only happens when the whole window is one run.
        if (left_error && right_error) {
          for (std::size_t i = w.begin; i < w.end; ++i) {
            REQUIRE(al.ops[i].kind != EditKind::Match);
          }
        }
      }
      expect = w.end;
    }
    REQUIRE(expect == al.ops.size());
    REQUIRE(clean == ref);
  }
}

TEST_CASE("overlap repeats hypothesis symbols") {
  PairOptions opt;
  opt.window = 10;
  opt.overlap = 3;
  opt.keep_clean_ratio = 1.0;
  const std::string s = "abcdefghijklmnopqrstuvwxyz";
  const auto pairs = make_pairs({s}, {s}, opt);
  REQUIRE(pairs.size() >= 3);
  CHECK(pairs[0].clean == "abcdefghij");
  CHECK(pairs[1].clean.substr(0, 3) == "hij");
  CHECK(pairs.back().clean.back() == 'z');
}

TEST_CASE("sentence boundaries pull the cut back") {
  PairOptions opt;
  opt.window = 12;
  opt.respect_sentence_boundaries = true;
  opt.keep_clean_ratio = 1.0;
  const std::string s = "Да. Нет, ну и что же";
  const auto pairs = make_pairs({s}, {s}, opt);
  REQUIRE(pairs.size() >= 2);
  CHECK(pairs[0].clean == "Да.");
}

TEST_CASE("keep-clean ratio") {
  std::vector<std::string> refs(2000, "чистая строка");
  PairOptions opt;
  opt.keep_clean_ratio = 0.0;
  CHECK(make_pairs(refs, refs, opt).empty());
  opt.keep_clean_ratio = 1.0;
  CHECK(make_pairs(refs, refs, opt).size() == 2000);
  opt.keep_clean_ratio = 0.1;
  opt.seed = 17;
  const auto kept = make_pairs(refs, refs, opt);
  CHECK(kept.size() > 140);
  CHECK(kept.size() < 260);
  CHECK(make_pairs(refs, refs, opt).size() == kept.size());
}

TEST_CASE("make_pairs contract") {
  CHECK_THROWS_AS(make_pairs({"a"}, {}), std::invalid_argument);
  PairOptions opt;
  opt.window = 0;
  CHECK_THROWS_AS(make_pairs({"a"}, {"a"}, opt), std::invalid_argument);
  CHECK_THROWS_AS(make_pairs({"a"}, {"a"}, {}, {"x", "y"}), std::invalid_argument);
}

TEST_CASE("noise channel edge rates") {
  NoiseChannelConfig cfg;
  Rng rng(1);
  CHECK(noise_channel("Привет, мир!", cfg, rng) == "Привет, мир!");
  cfg.del_rate = 1.0;
  CHECK(noise_channel("Привет, мир!", cfg, rng).empty());
  cfg.del_rate = 0.0;
  cfg.sub_rate = 1.0;
  const auto all = unicode::decode(noise_channel("абвгд", cfg, rng));
  REQUIRE(all.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(all[i] != U"абвгд"[i]);
}

TEST_CASE("noise channel substitution rate") {
  NoiseChannelConfig cfg;
  cfg.sub_rate = 0.1;
  cfg.seed = 2;
  std::string text;
  for (int i = 0; i < 100000 / 4; ++i) text += "мама";
  Rng rng = noise_rng(cfg, 0);
  const auto noisy = unicode::decode(noise_channel(text, cfg, rng));
  const auto clean = unicode::decode(text);
  REQUIRE(noisy.size() == clean.size());
  std::size_t changed = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) changed += noisy[i] != clean[i];
  const double rate = static_cast<double>(changed) / clean.size();
  CHECK(rate >= 0.09);
  CHECK(rate <= 0.11);
}

TEST_CASE("noise channel keeps case and honours the confusion table") {
  NoiseChannelConfig cfg;
  cfg.sub_rate = 1.0;
  cfg.confusion_pairs[U'о'] = {{U'а', 1.0}};
  Rng rng(4);
  CHECK(noise_channel("ооо", cfg, rng) == "ааа");
  const auto upper = unicode::decode(noise_channel("МИР", cfg, rng));
  for (char32_t ch : upper) CHECK(unicode::to_upper(ch) == ch);
}

TEST_CASE("noise channel is deterministic per record") {
  NoiseChannelConfig cfg;
  cfg.sub_rate = 0.2;
  cfg.ins_rate = 0.1;
  cfg.del_rate = 0.1;
  cfg.seed = 9;
  Rng a = noise_rng(cfg, 3), b = noise_rng(cfg, 3), c = noise_rng(cfg, 4);
  const std::string text = "съешь же ещё этих мягких французских булок";
  const auto x = noise_channel(text, cfg, a);
  CHECK(x == noise_channel(text, cfg, b));
  CHECK(x != noise_channel(text, cfg, c));
}

TEST_CASE("noise channel validation") {
  NoiseChannelConfig cfg;
  cfg.sub_rate = 1.5;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.sub_rate = 0.6;
  cfg.del_rate = 0.6;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.del_rate = 0.0;
  cfg.alphabet = U"аа";
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("zero-noise text yields only clean pairs") {
  NoiseChannelConfig cfg;
  std::vector<std::string> refs = {"Мама мыла раму.", "Ёжик шёл домой, пел песню."};
  std::vector<std::string> hyps;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    Rng rng = noise_rng(cfg, i);
    hyps.push_back(noise_channel(refs[i], cfg, rng));
  }
  PairOptions opt;
  opt.keep_clean_ratio = 1.0;
  for (const auto& p : make_pairs(refs, hyps, opt)) CHECK(p.n_errors == 0);
}
