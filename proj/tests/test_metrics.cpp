#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hwgen/errorpairs.hpp"
#include "hwgen/errors.hpp"
#include "hwgen/metrics.hpp"
#include "hwgen/unicode.hpp"

#include <nlohmann/json.hpp>

#include <random>

using namespace hwgen;

namespace {

const std::vector<NormalizationMode> kAll = {NormalizationMode::Raw, NormalizationMode::Lowercase,
                                             NormalizationMode::AlphaOnly};

std::vector<std::string> sample_corpus() {
  return {"Мама мыла раму.",       "Ёжик шёл, пел!",         "Кот на окне — спит.",
          "В 1999 году шёл снег.", "«Да», — сказал он. Нет?", "съешь же ещё этих булок",
          "ПРИВЕТ,мир",            "а  б\tв"};
}

std::vector<std::string> noisy(const std::vector<std::string>& refs, double rate, std::uint64_t seed) {
  NoiseChannelConfig cfg;
  cfg.sub_rate = rate / 2;
  cfg.del_rate = rate / 2;
  cfg.ins_rate = rate;
  cfg.seed = seed;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    Rng rng = noise_rng(cfg, i);
    out.push_back(noise_channel(refs[i], cfg, rng));
  }
  return out;
}

}  // namespace

TEST_CASE("normalization modes") {
  CHECK(normalize("Привет, Мир!", NormalizationMode::Raw) == "Привет, Мир!");
  CHECK(normalize("Привет, Мир!", NormalizationMode::Lowercase) == "привет, мир!");
  CHECK(normalize("Привет, Мир!", NormalizationMode::AlphaOnly) == "привет мир");
  CHECK(normalize("ПРИВЕТ,мир", NormalizationMode::AlphaOnly) == "привет мир");
  CHECK(normalize(" 12 -- ёЖ 3", NormalizationMode::AlphaOnly) == "ёж");
  CHECK(normalize("...", NormalizationMode::AlphaOnly).empty());
}

TEST_CASE("alpha_only never has more scalars than lowercase") {
  for (const auto& s : sample_corpus()) {
    CHECK(unicode::length(normalize(s, NormalizationMode::AlphaOnly)) <=
          unicode::length(normalize(s, NormalizationMode::Lowercase)));
  }
}

TEST_CASE("word and character error rates") {
  CHECK(word_error_rate("кот на окне", "кот на окне") == 0.0);
  CHECK(word_error_rate("кот на окне", "кот не окно") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(word_error_rate("кот", "") == 1.0);
  CHECK(word_error_rate("кот", "кот кот кот") == 2.0);
  CHECK(char_error_rate("кот", "кит") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(word_error_rate("", "кот"), UndefinedRate);
  CHECK_THROWS_AS(word_error_rate(" \t", "кот"), UndefinedRate);
  CHECK_THROWS_AS(char_error_rate("", "кот"), UndefinedRate);
}

TEST_CASE("single alpha_only pair counts") {
  const auto r = evaluate({{"аб", "аб"}}, {NormalizationMode::AlphaOnly});
  REQUIRE(r.modes.size() == 1);
  CHECK(r.modes[0].char_count == 2);
  CHECK(r.modes[0].char_edits == 0);
}

TEST_CASE("identical text scores 100 in every mode") {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& s : sample_corpus()) pairs.emplace_back(s, s);
  const auto r = evaluate(pairs, kAll);
  REQUIRE(r.modes.size() == 3);
  for (const auto& m : r.modes) {
    CHECK(*m.war_percent == 100.0);
    CHECK(*m.car_percent == 100.0);
  }
}

TEST_CASE("pooled WER equals the word-count weighted mean of per-pair WER") {
  const auto refs = sample_corpus();
  const auto hyps = noisy(refs, 0.2, 5);
  for (const auto mode : kAll) {
    std::size_t edits = 0, words = 0;
    double weighted = 0.0;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const auto c = count_errors(refs[i], hyps[i], mode);
      if (c.word_count == 0) continue;
      const double wer = word_error_rate(normalize(refs[i], mode), normalize(hyps[i], mode));
      CHECK(wer * c.word_count == doctest::Approx(static_cast<double>(c.word_edits)).epsilon(1e-15));
      weighted += wer * c.word_count;
      edits += c.word_edits;
      words += c.word_count;
      pairs.emplace_back(refs[i], hyps[i]);
    }
    const auto r = evaluate(pairs, {mode});
    CHECK(r.modes[0].word_edits == edits);
    CHECK(r.modes[0].word_count == words);
    CHECK(std::llround(weighted) == static_cast<long long>(edits));
    const double pooled = static_cast<double>(edits) / words;
    CHECK(*r.modes[0].war_percent == std::max(0.0, 1.0 - pooled) * 100.0);
  }
}

TEST_CASE("accuracies stay in [0, 100] under heavy noise") {
  const auto refs = sample_corpus();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto hyps = noisy(refs, 0.9, seed);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < refs.size(); ++i) pairs.emplace_back(refs[i], hyps[i]);
    for (const auto& m : evaluate(pairs, kAll).modes) {
      REQUIRE(m.war_percent);
      CHECK(*m.war_percent >= 0.0);
      CHECK(*m.war_percent <= 100.0);
      CHECK(*m.car_percent >= 0.0);
      CHECK(*m.car_percent <= 100.0);
    }
  }
  const auto r = evaluate({{"а", "ббб ввв ггг"}}, kAll);
  CHECK(*r.modes[0].war_percent == 0.0);
  CHECK(*r.modes[0].car_percent == 0.0);
}

TEST_CASE("rates are recomputable from the counts") {
  const auto refs = sample_corpus();
  const auto hyps = noisy(refs, 0.3, 1);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < refs.size(); ++i) pairs.emplace_back(refs[i], hyps[i]);
  for (const auto& m : evaluate(pairs, kAll).modes) {
    CHECK(*m.car_percent ==
          std::max(0.0, 1.0 - static_cast<double>(m.char_edits) / m.char_count) * 100.0);
  }
}

TEST_CASE("a mode with no reference text is undefined, not an error") {
  const auto r = evaluate({{"123 ...", "123"}}, kAll);
  CHECK(r.modes[0].war_percent.has_value());
  CHECK_FALSE(r.modes[2].war_percent.has_value());
  CHECK_FALSE(r.modes[2].car_percent.has_value());
  const auto j = report_to_json(r);
  CHECK(j["modes"]["alpha_only"]["war_percent"].is_null());
  CHECK(format_report(r).find("n/a") != std::string::npos);
  CHECK_THROWS_AS(evaluate({}, kAll), std::invalid_argument);
}

TEST_CASE("report layout") {
  const auto text = format_report(evaluate({{"кот", "кот"}}, kAll));
  CHECK(text.find("WAR, %") != std::string::npos);
  CHECK(text.find("Raw text") != std::string::npos);
  CHECK(text.find("Lowercase only") != std::string::npos);
  CHECK(text.find("Only alphabetical") != std::string::npos);
  CHECK(text.find("100.000") != std::string::npos);
  CHECK(parse_mode("alpha") == NormalizationMode::AlphaOnly);
  CHECK_THROWS_AS(parse_mode("upper"), std::invalid_argument);
}
