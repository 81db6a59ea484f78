#include "doctest.h"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ietlab/cli.hpp"
#include "ietlab/version.hpp"

using namespace ietlab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("ietlab_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  Json unused;  // keep serialize.hpp include honest
  (void)unused;
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExperimentConfig configure(Json doc) { return make_config(doc); }

}  // namespace

TEST_CASE("the default subject is the golden rotation") {
  Iet g = golden_rotation();
  Scalar a = (Scalar::sqrt(5) - Scalar(1)) / Scalar(2);
  CHECK(g.perm() == Permutation({2, 1}));
  CHECK(g.lengths()[1] == Scalar(1) - a);
  CHECK(g.lengths()[2] == a);
  CHECK(g.evaluate(Scalar(0)) == a);
}

TEST_CASE("task names cover every dispatch target") {
  const std::vector<std::string>& names = task_names();
  CHECK(names.size() == 14);
  for (const char* t : {"rauzy-orbit", "classes", "tower", "candidates",
                        "itinerary", "cylinders", "condition-b", "gordon-scan",
                        "gordon-tower", "spectrum", "eigenbox", "lyapunov",
                        "hull-check", "fibonacci-check"}) {
    CHECK(std::find(names.begin(), names.end(), t) != names.end());
  }
}

TEST_CASE("config validation fills defaults and rejects junk") {
  ExperimentConfig cfg = configure(Json{{"task", "condition-b"}});
  CHECK(cfg.task == "condition-b");
  CHECK(cfg.mode == "exact");
  CHECK(cfg.seed == 0);
  CHECK(cfg.threads == 1);
  CHECK(cfg.out_dir == ".");
  CHECK(cfg.document.at("params").is_object());
  CHECK(config_iet(cfg) == golden_rotation());

  CHECK_THROWS_AS(configure(Json::array()), UsageError);
  CHECK_THROWS_AS(configure(Json::object()), UsageError);  // no task
  CHECK_THROWS_AS(configure(Json{{"task", "no-such-task"}}), UsageError);
  CHECK_THROWS_AS(configure(Json{{"task", 3}}), UsageError);
  CHECK_THROWS_AS(configure(Json{{"task", "spectrum"}, {"mode", "sloppy"}}),
                  UsageError);
  CHECK_THROWS_AS(configure(Json{{"task", "spectrum"}, {"seed", -1}}),
                  UsageError);
  CHECK_THROWS_AS(configure(Json{{"task", "spectrum"}, {"threads", 0}}),
                  UsageError);
  CHECK_THROWS_AS(configure(Json{{"task", "spectrum"}, {"out", ""}}),
                  UsageError);
  CHECK_THROWS_AS(configure(Json{{"task", "spectrum"}, {"params", 7}}),
                  UsageError);
  CHECK_THROWS_AS(configure(Json{{"task", "spectrum"}, {"extra", 1}}),
                  UsageError);
  CHECK_THROWS_AS(
      configure(Json{{"task", "spectrum"}, {"iet", Json{{"n", 2}}}}),
      UsageError);  // malformed exchange surfaces as usage

  // Explicit exchange descriptions round trip through the config.
  Json iet = iet_to_json(Iet(Permutation({3, 1, 2}),
                             ExchangeLengths({Scalar(Rational(1, 2)),
                                              Scalar(Rational(1, 4)),
                                              Scalar(Rational(1, 4))})));
  ExperimentConfig with = configure(Json{{"task", "cylinders"}, {"iet", iet}});
  CHECK(config_iet(with).perm() == Permutation({3, 1, 2}));
}

TEST_CASE("the config hash tracks content, not placement") {
  Json base{{"task", "condition-b"},
            {"params", Json{{"depth", 40}}},
            {"out", "/tmp/a"},
            {"threads", 2}};
  Json moved = base;
  moved["out"] = "/somewhere/else";
  moved["threads"] = 8;
  Json deeper = base;
  deeper["params"]["depth"] = 41;

  auto hash_of = [](const Json& doc) {
    ExperimentConfig cfg = make_config(doc);
    Json view = cfg.document;
    view.erase("out");
    view.erase("threads");
    return config_hash(view);
  };
  std::string h1 = hash_of(base);
  CHECK(h1.size() == 16);
  for (char c : h1) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
  CHECK(hash_of(moved) == h1);
  CHECK(hash_of(deeper) != h1);
}

TEST_CASE("condition b run produces payload, table and metadata") {
  fs::path dir = fresh_dir("condb");
  ExperimentConfig cfg = configure(Json{{"task", "condition-b"},
                                        {"params", Json{{"depth", 40}}},
                                        {"out", dir.string()}});
  CHECK(run(cfg) == 0);

  Json payload = read_json_file((dir / "condition-b.json").string());
  CHECK(payload.at("meta").at("tool") == kToolName);
  CHECK(payload.at("meta").at("version") == kVersion);
  CHECK(payload.at("meta").at("task") == "condition-b");
  CHECK(payload.at("meta").at("mode") == "exact");
  CHECK(payload.at("meta").at("config_hash").get<std::string>().size() == 16);
  CHECK(payload.at("data").at("depth") == 40);
  CHECK(payload.at("data").at("passes") == true);

  std::string csv = slurp(dir / "condition-b.csv");
  CHECK(csv.rfind("# tool ietlab 0.1.0\n# task condition-b mode exact config ",
                  0) == 0);
  CHECK(csv.find("\nn,count,eta,eta_decimal,score,score_decimal,tail_max_"
                 "decimal\n") != std::string::npos);

  Json meta = read_json_file((dir / "metadata.json").string());
  CHECK(meta.at("threads") == 1);
  CHECK(meta.at("outputs") ==
        Json::array({"condition-b.json", "condition-b.csv"}));
  CHECK(meta.contains("timestamp"));
  fs::remove_all(dir);
}

TEST_CASE("spectrum run on the two letter word") {
  fs::path dir = fresh_dir("spectrum");
  ExperimentConfig cfg = configure(Json{{"task", "spectrum"},
                                        {"params", Json{{"word", "12"}}},
                                        {"out", dir.string()}});
  CHECK(run(cfg) == 0);
  Json payload = read_json_file((dir / "spectrum.json").string());
  CHECK(payload.at("data").at("bands").size() == 2);
  CHECK(payload.at("data").at("mode") == "exact");
  CHECK(fs::exists(dir / "spectrum.csv"));
  fs::remove_all(dir);
}

TEST_CASE("a math error becomes error json with exit one") {
  fs::path dir = fresh_dir("scanerr");
  ExperimentConfig cfg = configure(
      Json{{"task", "gordon-scan"},
           {"params", Json{{"max_k", 100}, {"window_lo", -50}}},
           {"out", dir.string()}});
  CHECK(run(cfg) == 1);
  Json err = read_json_file((dir / "error.json").string());
  CHECK(err.at("error").at("code") == "insufficient-window");
  CHECK(err.at("meta").at("task") == "gordon-scan");
  Json meta = read_json_file((dir / "metadata.json").string());
  Json outs = meta.at("outputs");
  CHECK(std::find(outs.begin(), outs.end(), Json("error.json")) != outs.end());
  fs::remove_all(dir);
}

TEST_CASE("partial progress survives a failing orbit walk") {
  fs::path dir = fresh_dir("orbiterr");
  Json iet = iet_to_json(Iet(Permutation({2, 1}),
                             ExchangeLengths({Scalar(Rational(1, 3)),
                                              Scalar(Rational(2, 3))})));
  ExperimentConfig cfg = configure(Json{{"task", "rauzy-orbit"},
                                        {"iet", iet},
                                        {"params", Json{{"steps", 5}}},
                                        {"out", dir.string()}});
  CHECK(run(cfg) == 1);
  Json err = read_json_file((dir / "error.json").string());
  CHECK(err.at("error").at("code") == "undefined-step");
  CHECK(err.at("partial") == "rauzy-orbit.json");
  Json partial = read_json_file((dir / "rauzy-orbit.json").string());
  CHECK(partial.at("data").at("steps").size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("eigenbox run lists the box eigenvalues") {
  fs::path dir = fresh_dir("eigenbox");
  ExperimentConfig cfg = configure(
      Json{{"task", "eigenbox"},
           {"params", Json{{"word", "1"}, {"q", 5}}},
           {"out", dir.string()}});
  CHECK(run(cfg) == 0);
  Json payload = read_json_file((dir / "eigenbox.json").string());
  CHECK(payload.at("data").at("q") == 5);
  CHECK(payload.at("data").at("count") == 5);
  Json evs = payload.at("data").at("energies");
  REQUIRE(evs.size() == 5);
  for (size_t i = 0; i + 1 < evs.size(); ++i) {
    CHECK(evs[i].get<double>() < evs[i + 1].get<double>());
  }
  CHECK(fs::exists(dir / "eigenbox.csv"));
  fs::remove_all(dir);
}

TEST_CASE("seeded hull sampling is reproducible") {
  auto run_once = [](const std::string& tag, std::uint64_t seed) {
    fs::path dir = fresh_dir("hull_" + tag);
    ExperimentConfig cfg = configure(
        Json{{"task", "hull-check"},
             {"seed", seed},
             {"params", Json{{"random_words", 12}, {"max_length", 9}}},
             {"out", dir.string()}});
    REQUIRE(run(cfg) == 0);
    Json payload = read_json_file((dir / "hull-check.json").string());
    fs::remove_all(dir);
    return payload;
  };
  Json a = run_once("a", 7);
  Json b = run_once("b", 7);
  Json c = run_once("c", 8);
  CHECK(a.at("data") == b.at("data"));
  CHECK(a.at("data").at("all_ok") == true);
  CHECK(a.at("data").at("words").size() == 12);
  CHECK(c.at("data").at("all_ok") == true);
  CHECK(a.at("data") != c.at("data"));  // different words sampled
  CHECK(a.at("meta").at("config_hash") != c.at("meta").at("config_hash"));
}

TEST_CASE("fibonacci check reports every structural invariant") {
  fs::path dir = fresh_dir("fib");
  ExperimentConfig cfg = configure(Json{{"task", "fibonacci-check"},
                                        {"params", Json{{"order", 8}}},
                                        {"out", dir.string()}});
  CHECK(run(cfg) == 0);
  Json data = read_json_file((dir / "fibonacci-check.json").string()).at("data");
  CHECK(data.at("order") == 8);
  CHECK(data.at("word_length") == 34);
  CHECK(data.at("lengths_ok") == true);
  CHECK(data.at("prefix_ok") == true);
  CHECK(data.at("recursion_ok") == true);
  CHECK(data.at("invariant_ok") == true);
  CHECK(data.at("invariant_value") == "4");
  CHECK(data.at("all_ok") == true);
  CHECK(data.contains("spectrum"));  // with_spectrum defaults on at order 8
  fs::remove_all(dir);
}

TEST_CASE("payload bytes do not depend on the output directory") {
  auto payload_bytes = [](const std::string& tag) {
    fs::path dir = fresh_dir("det_" + tag);
    ExperimentConfig cfg = configure(Json{{"task", "cylinders"},
                                          {"params", Json{{"depth", 8}}},
                                          {"out", dir.string()}});
    REQUIRE(run(cfg) == 0);
    std::string bytes = slurp(dir / "cylinders.json");
    fs::remove_all(dir);
    return bytes;
  };
  CHECK(payload_bytes("one") == payload_bytes("two"));
}

TEST_CASE("unusable output directories are usage errors") {
  ExperimentConfig cfg = configure(Json{
      {"task", "condition-b"},
      {"params", Json{{"depth", 5}}},
      {"out", "/proc/self/cmdline/nested"}});
  CHECK_THROWS_AS(run(cfg), UsageError);
}

TEST_CASE("the verification suite passes on the shipped instances") {
  std::ostringstream log;
  VerifyReport rep = verify_suite(log);
  CHECK(rep.results.size() == 7);
  CHECK(rep.all_pass());
  std::string text = log.str();
  long lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == 7);
  for (const VerifyResult& r : rep.results) {
    CHECK(r.pass);
    CHECK_FALSE(r.property.empty());
    CHECK(text.find(r.property) != std::string::npos);
  }
}
