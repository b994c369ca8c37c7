// Copyright 2026 The mvrbm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Drives the mvrbm binary end to end through the shell.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mvrbm/atomic_file.hpp"
#include "mvrbm/dataset.hpp"
#include "mvrbm/detector.hpp"
#include "mvrbm/kv_config.hpp"
#include "mvrbm/model_io.hpp"
#include "mvrbm/schema.hpp"
#include "mvrbm/seeds.hpp"
#include "mvrbm/trainer.hpp"

using namespace mvrbm;
namespace fs = std::filesystem;

namespace {

class Workdir {
 public:
  explicit Workdir(const std::string& name) : path_(fs::temp_directory_path() / ("mvrbm_cli_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~Workdir() { fs::remove_all(path_); }
  std::string operator/(const std::string& file) const { return (path_ / file).string(); }

  // Runs `mvrbm <args>` inside the directory; returns the exit status.
  int run(const std::string& args) const {
    const std::string cmd = "cd '" + path_.string() + "' && '" MVRBM_CLI "' " + args + " >out.log 2>err.log";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string read(const std::string& file) const { return read_file(*this / file); }
  bool exists(const std::string& file) const { return fs::exists(path_ / file); }

 private:
  fs::path path_;
};

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

double metric(const std::string& csv, std::size_t column) {
  std::istringstream in(csv.substr(csv.find('\n') + 1));
  std::string field;
  for (std::size_t c = 0; c <= column; ++c) std::getline(in, field, ',');
  return std::stod(field);
}

const char* kSynth = "synth --data d.csv --schema s.txt --labels l.csv --seed 7";

}  // namespace

TEST_CASE("version lists format versions") {
  Workdir w("version");
  CHECK(w.run("--version") == 0);
  const auto out = w.read("out.log");
  CHECK(out.find("model format 1") != std::string::npos);
  CHECK(out.find("manifest format 1") != std::string::npos);
}

TEST_CASE("synth writes the default benchmark deterministically") {
  Workdir w("synth");
  REQUIRE(w.run(kSynth) == 0);
  CHECK(count_lines(w.read("d.csv")) == 3001);
  CHECK(count_of(w.read("l.csv"), ",1\n") == 150);
  CHECK(parse_schema(w.read("s.txt")).size() == 9);
  CHECK(w.read("d.csv.manifest").rfind("# mvrbm-manifest 1\n", 0) == 0);
  const auto first = w.read("d.csv");
  REQUIRE(w.run("synth --data e.csv --schema t.txt --labels m.csv --seed 7") == 0);
  CHECK(w.read("e.csv") == first);
  CHECK(w.read("m.csv") == w.read("l.csv"));
  REQUIRE(w.run("synth --data f.csv --schema u.txt --labels n.csv --seed 8") == 0);
  CHECK(w.read("f.csv") != first);
}

TEST_CASE("synth rejects zero samples and writes nothing") {
  Workdir w("synth_bad");
  CHECK(w.run("synth --data d.csv --schema s.txt --labels l.csv --samples 0") != 0);
  CHECK_FALSE(w.exists("d.csv"));
  CHECK_FALSE(w.exists("s.txt"));
  CHECK_FALSE(w.exists("l.csv"));
  CHECK(w.read("err.log").find("error") != std::string::npos);
  CHECK(w.run("synth --data d.csv") != 0);
  CHECK(w.run("frobnicate") != 0);
}

TEST_CASE("train with zero epochs saves the initialization") {
  Workdir w("train0");
  REQUIRE(w.run(kSynth) == 0);
  REQUIRE(w.run("train --data d.csv --schema s.txt --model m.txt --epochs 0 --hidden 4 --seed 3") == 0);
  std::ifstream in(w / "m.txt");
  const Model m = load_model(in);
  TrainingConfig c = TrainingConfig::small_data_defaults();
  c.hidden = 4;
  c.seed = derive_seed(3, Stage::train);
  CHECK(m.params() == init_model(m.schema(), c).params());
  CHECK(m.standardization().columns.size() == 3);
}

TEST_CASE("train reruns and manifest replays are byte-identical") {
  Workdir w("train");
  REQUIRE(w.run(kSynth) == 0);
  const std::string args =
      "train --data d.csv --schema s.txt --model m.txt --curve c.csv --preset synthetic --hidden 20 --seed 5";
  REQUIRE(w.run(args) == 0);
  const auto model = w.read("m.txt"), curve = w.read("c.csv");
  CHECK(count_lines(curve) == 11);
  REQUIRE(w.run(args) == 0);
  CHECK(w.read("m.txt") == model);
  fs::rename(w / "m.txt.manifest", w / "saved.manifest");
  fs::remove(w / "m.txt");
  fs::remove(w / "c.csv");
  REQUIRE(w.run("train --config saved.manifest") == 0);
  CHECK(w.read("m.txt") == model);
  CHECK(w.read("c.csv") == curve);

  // Flags after --config override it.
  REQUIRE(w.run("train --config saved.manifest --model other.txt --seed 6") == 0);
  CHECK(w.read("other.txt") != model);
}

TEST_CASE("train accepts a training config file") {
  Workdir w("train_cfg");
  REQUIRE(w.run(kSynth) == 0);
  TrainingConfig c = TrainingConfig::large_data_defaults();
  c.epochs = 2;
  std::ofstream(w / "t.cfg") << c.to_config_text();
  REQUIRE(w.run("train --data d.csv --schema s.txt --model a.txt --config t.cfg") == 0);
  REQUIRE(w.run("train --data d.csv --schema s.txt --model b.txt --preset large --epochs 2") == 0);
  // The file's seed key (0) matches the default master seed.
  CHECK(w.read("a.txt") == w.read("b.txt"));
  CHECK(w.run("train --data d.csv --schema s.txt --model c.txt --config missing.cfg") != 0);
}

TEST_CASE("divergent training leaves no model behind") {
  Workdir w("diverge");
  std::ofstream(w / "s.txt") << "n:count\n";
  {
    std::ofstream d(w / "d.csv");
    d << "n\n";
    for (int i = 0; i < 20; ++i) d << i * 40 << '\n';
  }
  const int rc = w.run("train --data d.csv --schema s.txt --model m.txt --optimizer sgd --lr 5 --epochs 20");
  CHECK(rc != 0);
  CHECK(w.read("err.log").find("epoch") != std::string::npos);
  CHECK_FALSE(w.exists("m.txt"));
  CHECK_FALSE(w.exists("m.txt.tmp"));
}

TEST_CASE("score, detect and eval") {
  Workdir w("detect");
  REQUIRE(w.run(kSynth) == 0);
  REQUIRE(w.run("train --data d.csv --schema s.txt --model m.txt --preset synthetic --hidden 10") == 0);
  REQUIRE(w.run("score --model m.txt --data d.csv --output sc.csv") == 0);
  CHECK(w.read("sc.csv").rfind("row_index,free_energy\n", 0) == 0);
  CHECK(count_lines(w.read("sc.csv")) == 3001);

  REQUIRE(w.run("detect --model m.txt --data d.csv --beta +inf --output none.csv") == 0);
  CHECK(count_of(w.read("none.csv"), ",outlier") == 0);
  REQUIRE(w.run("detect --model m.txt --data d.csv --beta=-inf --output all.csv") == 0);
  CHECK(count_of(w.read("all.csv"), ",outlier") == 3000);
  REQUIRE(w.run("detect --model m.txt --data d.csv --percentile 5 --train-scores sc.csv --output p.csv") == 0);
  CHECK(count_of(w.read("p.csv"), ",outlier") == 150);

  CHECK(w.run("detect --model m.txt --data d.csv --output x.csv") != 0);
  CHECK(w.run("detect --model m.txt --data d.csv --percentile 5 --output x.csv") != 0);
  CHECK_FALSE(w.exists("x.csv"));

  // Labels equal to the verdicts: a perfect detector.
  {
    std::istringstream in(w.read("p.csv"));
    std::string line;
    std::getline(in, line);
    std::ofstream labels(w / "perfect.csv");
    labels << "row_index,is_outlier\n";
    for (std::size_t r = 0; std::getline(in, line); ++r) labels << r << ',' << (line.ends_with(",outlier") ? 1 : 0) << '\n';
  }
  REQUIRE(w.run("eval --model m.txt --data d.csv --percentile 5 --train-scores sc.csv --labels perfect.csv "
                "--metrics perfect_metrics.csv") == 0);
  CHECK(metric(w.read("perfect_metrics.csv"), 2) == 1.0);
  CHECK(metric(w.read("perfect_metrics.csv"), 3) == 1.0);

  REQUIRE(w.run("eval --model m.txt --data d.csv --percentile 5 --train-scores sc.csv --labels l.csv "
                "--metrics met.csv --output rep.csv") == 0);
  CHECK(w.read("rep.csv") == w.read("p.csv"));
  const auto met = w.read("met.csv");
  REQUIRE(w.run("eval --config met.csv.manifest --metrics met2.csv") == 0);
  CHECK(w.read("met2.csv") == met);

  CHECK(w.run("eval --model m.txt --data d.csv --beta 0 --metrics z.csv") != 0);
  CHECK(w.run("eval --model m.txt --data d.csv --beta 0 --labels nothere.csv --metrics z.csv") != 0);
  CHECK_FALSE(w.exists("z.csv"));
}

TEST_CASE("schema mismatch is rejected") {
  Workdir w("mismatch");
  REQUIRE(w.run(kSynth) == 0);
  REQUIRE(w.run("train --data d.csv --schema s.txt --model m.txt --epochs 1") == 0);
  std::ofstream(w / "other.txt") << "x:binary\n";
  CHECK(w.run("score --model m.txt --data d.csv --schema other.txt --output o.csv") != 0);
  std::ofstream(w / "bad.csv") << "x\n1\n";
  CHECK(w.run("score --model m.txt --data bad.csv --output o.csv") != 0);
  CHECK(w.read("err.log").find("row 1") != std::string::npos);
  CHECK_FALSE(w.exists("o.csv"));
}

TEST_CASE("contaminate plants labelled outliers") {
  Workdir w("contaminate");
  REQUIRE(w.run(kSynth) == 0);
  REQUIRE(w.run("contaminate --data d.csv --schema s.txt --output c.csv --labels cl.csv --seed 2") == 0);
  CHECK(count_of(w.read("cl.csv"), ",1\n") == 300);
  const auto first = w.read("c.csv");
  REQUIRE(w.run("contaminate --config c.csv.manifest --output c2.csv") == 0);
  CHECK(w.read("c2.csv") == first);
  CHECK(w.run("contaminate --data d.csv --schema s.txt --output c3.csv --labels x.csv --shift-low 4") != 0);
}

TEST_CASE("scripted synthetic pipeline reaches the reported band") {
  Workdir w("pipeline");
  double f = 0.0;
  for (int seed = 0; seed < 3; ++seed) {
    const std::string dir = "run" + std::to_string(seed);
    std::ofstream(w / (dir + ".spec")) << "source = synthetic\nseed = " << seed << "\noutput_dir = " << dir << '\n';
    REQUIRE(w.run("experiment --spec " + dir + ".spec") == 0);
    f += metric(w.read(dir + "/metrics.csv"), 2);
    const auto model = w.read(dir + "/model.txt");
    REQUIRE(w.run("experiment --spec " + dir + "/experiment.manifest --output-dir again") == 0);
    CHECK(w.read("again/model.txt") == model);
    CHECK(w.read("again/scores_test.csv") == w.read(dir + "/scores_test.csv"));
  }
  CHECK(f / 3.0 >= 0.45);
}
