// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "synthetic.hpp"
#include "wxgen/ensemble.hpp"
#include "wxgen/text.hpp"

using namespace wxgen;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

class Workspace {
 public:
  explicit Workspace(const std::string& name) : dir_(fs::temp_directory_path() / ("wxgen_cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { write_file(path(name), text); }

  Result run(const std::string& args) const {
    const std::string cmd = std::string(WXGEN_CLI_PATH) + " " + args + " >" + path("stdout.txt") + " 2>" +
                            path("stderr.txt");
    const int raw = std::system(cmd.c_str());
    Result r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read_file(path("stdout.txt"));
    r.err = read_file(path("stderr.txt"));
    return r;
  }

 private:
  fs::path dir_;
};

const char* kToyArchitecture =
    "[architecture]\n"
    "l = 3\nm = 3\nhorizon = 14\nchannels = 4, 8, 8, 8, 8, 8, 4, 2\n";

std::string small_config(const std::string& extra = "") {
  return std::string(
             "[paths]\n"
             "data = weather.csv\ncheckpoint = model/net.ckpt\nout = out\n") +
         kToyArchitecture +
         "[training]\nepochs = 2\nbatch_size = 16\nlr = 0.003\nseed = 3\nsplit_date = 2000-12-31\n"
         "[generation]\nn_samples = 4\nmaster_seed = 5\nstart_date = 2007-06-01\nwrite_met = true\n"
         "[baseline]\nyears_back = 5\nn_samples = 4\nmaster_seed = 6\n"
         "[evaluation]\nperiods = day, week, month\n" +
         extra;
}

void seed_data(const Workspace& w) {
  testing::SyntheticConfig cfg;
  cfg.days = 3000;
  w.write("weather.csv", format_weather_csv(testing::synthetic_series(cfg)));
}

}  // namespace

TEST_CASE("inspect prints the planned architecture") {
  Workspace w("inspect");
  w.write("s2.ini",
          "[architecture]\nl = 5\nm = 5\nhorizon = 1095\nchannels = 8, 8, 16, 32, 64, 64, 32, 16, 8, 2\n");
  Result r = w.run("inspect --config " + w.path("s2.ini"));
  CHECK(r.status == 0);
  CHECK(r.out.find("receptive_field=3125 T=3126 t0=2031") != std::string::npos);
  CHECK(r.out.find("params=37442") != std::string::npos);

  w.write("s1.ini", "[architecture]\nl = 7\nm = 4\nhorizon = 365\n");
  r = w.run("inspect --config " + w.path("s1.ini"));
  CHECK(r.status == 0);
  CHECK(r.out.find("T=2402 t0=2037 horizon=365 padding=364 params=50682") != std::string::npos);

  w.write("bad.ini", "[architecture]\nl = 3\nm = 3\nhorizon = 30\nchannels = 4, 8, 8, 8, 2\n");
  r = w.run("inspect --config " + w.path("bad.ini"));
  CHECK(r.status != 0);
  CHECK(r.err.find("wxgen inspect: error:") != std::string::npos);

  w.write("typo.ini", "[architecture]\nlength = 3\n");
  r = w.run("inspect --config " + w.path("typo.ini"));
  CHECK(r.status != 0);
  CHECK(r.err.find("architecture.length") != std::string::npos);
}

TEST_CASE("train, generate, baseline and evaluate end to end") {
  Workspace w("e2e");
  seed_data(w);
  w.write("run.ini", small_config());

  Result r = w.run("train --config " + w.path("run.ini"));
  REQUIRE_MESSAGE(r.status == 0, r.err);
  CHECK(r.out.find("plan T=28 t0=14 params=") != std::string::npos);
  CHECK(r.out.find("epoch 2 loss ") != std::string::npos);
  REQUIRE(fs::exists(w.path("model/net.ckpt")));
  CHECK(read_file(w.path("out/history.csv")).rfind("epoch,loss,best\n", 0) == 0);
  const std::string first = read_file(w.path("model/net.ckpt"));

  // Same seed, same bytes.
  r = w.run("train --config " + w.path("run.ini"));
  REQUIRE(r.status == 0);
  CHECK(read_file(w.path("model/net.ckpt")) == first);

  r = w.run("generate --config " + w.path("run.ini"));
  REQUIRE_MESSAGE(r.status == 0, r.err);
  const Ensemble gen = read_ensemble(w.path("out/generated.csv"));
  CHECK(gen.size() == 4);
  CHECK(gen.horizon == 14);
  CHECK(format_date(gen.start) == "2007-06-01");
  CHECK(gen.provenance.method == "network");
  CHECK(gen.provenance.checkpoint_id.size() == 16);
  CHECK(fs::exists(w.path("out/generated_0.met")));
  CHECK(fs::exists(w.path("out/generated_3.met")));

  r = w.run("baseline --config " + w.path("run.ini"));
  REQUIRE_MESSAGE(r.status == 0, r.err);
  CHECK(r.out.find("start years 2002-2006") != std::string::npos);
  const Ensemble base = read_ensemble(w.path("out/baseline.csv"));
  CHECK(base.provenance.method == "conventional");
  CHECK(base.provenance.member_sources.size() == 4);

  r = w.run("evaluate --config " + w.path("run.ini"));
  REQUIRE_MESSAGE(r.status == 0, r.err);
  for (const char* method : {"network", "conventional"}) {
    for (const char* period : {"day", "week", "month"}) {
      const std::string name = w.path(std::string("out/errors_") + method + "_" + period + ".csv");
      REQUIRE(fs::exists(name));
      const std::string text = read_file(name);
      const auto lines = split_lines(text);
      CHECK(lines.front() == "period,radn,mint,maxt,rain");
      CHECK(lines.back().substr(0, 8) == "Average,");
    }
  }
  CHECK(r.out.find("weather averages: network wins ") != std::string::npos);

  // Seed override changes the ensemble; --out redirects it.
  r = w.run("generate --config " + w.path("run.ini") + " --seed 99 --out " + w.path("alt"));
  REQUIRE(r.status == 0);
  CHECK(read_ensemble(w.path("alt/generated.csv")).members != gen.members);
}

TEST_CASE("generate refuses a checkpoint built for another horizon") {
  Workspace w("repurpose");
  seed_data(w);
  w.write("run.ini", small_config());
  REQUIRE(w.run("train --config " + w.path("run.ini") + " --epochs 1").status == 0);

  std::string other = small_config();
  other.replace(other.find("horizon = 14"), 12, "horizon = 13");
  w.write("other.ini", other);
  const Result r = w.run("generate --config " + w.path("other.ini"));
  CHECK(r.status != 0);
  CHECK(r.err.find("wxgen generate: error:") != std::string::npos);
  CHECK(r.err.find("14-day horizon") != std::string::npos);
  CHECK_FALSE(fs::exists(w.path("out/generated.csv")));

  std::string single = small_config();
  single.replace(single.find("n_samples = 4\nmaster_seed = 5"), 13, "n_samples = 1");
  w.write("single.ini", single);
  REQUIRE(w.run("generate --config " + w.path("single.ini")).status == 0);
  CHECK(read_ensemble(w.path("out/generated.csv")).size() == 1);
}

TEST_CASE("evaluate compares yields and reports missing inputs together") {
  Workspace w("yields");
  seed_data(w);
  w.write("network.csv", "member,crop,slot,yield_kg_ha\n0,wheat,2007,4100\n1,wheat,2007,3900\n0,barley,2007,3000\n");
  w.write("conventional.csv",
          "member,crop,slot,yield_kg_ha\n0,wheat,2007,3000\n1,wheat,2007,5200\n0,barley,2007,2500\n");
  w.write("true.csv", "crop,slot,yield_kg_ha\nwheat,2007,4000\nbarley,2007,3100\n");
  w.write("run.ini", small_config("yields = network=network.csv, conventional=conventional.csv\n"
                                  "true_yields = true.csv\n"));
  Result r = w.run("evaluate --config " + w.path("run.ini"));
  REQUIRE_MESSAGE(r.status == 0, r.err);
  CHECK(read_file(w.path("out/comparison.txt")) == "network wins 3/4 (conventional 0, ties 1)\n");
  const std::string table = read_file(w.path("out/yield_errors.csv"));
  CHECK(table.find("wheat,2007,network,100.0,0.0") != std::string::npos);
  CHECK(table.find("wheat,2007,conventional,1100.0,100.0") != std::string::npos);

  w.write("missing.ini", small_config("yields = network=nope.csv, conventional=conventional.csv\n"
                                      "true_yields = gone.csv\n"));
  r = w.run("evaluate --config " + w.path("missing.ini"));
  CHECK(r.status != 0);
  CHECK(r.err.find("nope.csv") != std::string::npos);
  CHECK(r.err.find("gone.csv") != std::string::npos);
}
