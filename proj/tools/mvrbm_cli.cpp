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


// mvrbm command-line driver.
//
// Every subcommand that writes artifacts also writes `<primary>.manifest`,
// a config file listing every option value. `mvrbm <cmd> --config <manifest>`
// replays the run.
//
// `--config FILE` is expanded in place into `--key=value` arguments before
// parsing, so options given after it on the command line take precedence.
// Underscores in keys read as dashes.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mvrbm/atomic_file.hpp"
#include "mvrbm/contamination.hpp"
#include "mvrbm/dataset.hpp"
#include "mvrbm/detector.hpp"
#include "mvrbm/energy.hpp"
#include "mvrbm/error.hpp"
#include "mvrbm/experiment.hpp"
#include "mvrbm/kdd99.hpp"
#include "mvrbm/kernels.hpp"
#include "mvrbm/kv_config.hpp"
#include "mvrbm/metrics.hpp"
#include "mvrbm/model_io.hpp"
#include "mvrbm/schema.hpp"
#include "mvrbm/seeds.hpp"
#include "mvrbm/synthgen.hpp"
#include "mvrbm/trainer.hpp"

namespace {

using namespace mvrbm;

constexpr const char* kToolVersion = "0.1.0";
constexpr int kManifestFormatVersion = 1;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

Schema read_schema(const std::string& path) { return parse_schema(read_file(path)); }

Dataset read_dataset(const std::string& path, const Schema& schema) {
  auto in = open_input(path);
  return load_csv(in, schema);
}

Model read_model(const std::string& path) {
  auto in = open_input(path);
  return load_model(in);
}

void write_manifest(const CLI::App& sub, const std::string& primary_output) {
  // Unset optional values come out as `key=""`; leave them to the defaults.
  std::string body;
  std::istringstream all(sub.config_to_str(true, false));
  for (std::string line; std::getline(all, line);)
    if (!line.ends_with("=\"\"")) body += line + '\n';
  write_file_atomically(primary_output + ".manifest", [&](std::ostream& out) {
    out << "# mvrbm-manifest " << kManifestFormatVersion << '\n'
        << "# replay: mvrbm " << sub.get_name() << " --config " << primary_output << ".manifest\n"
        << body;
  });
}

void add_config(CLI::App* sub) {
  // Consumed by expand_config(); declared here for --help.
  sub->add_option("--config", "Read option values from a `key = value` file")->configurable(false);
}

std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 0; i < argc; ++i) {
    std::string arg = argv[i];
    std::string path;
    if (arg == "--config") {
      if (i + 1 >= argc) throw Error("--config needs a file name");
      path = argv[++i];
    } else if (arg.starts_with("--config=")) {
      path = arg.substr(9);
    } else {
      out.push_back(std::move(arg));
      continue;
    }
    const KeyValueConfig cfg = KeyValueConfig::parse(read_file(path));
    for (const auto& [key, value] : cfg.values()) {
      if (value.empty()) continue;
      std::string name = key;
      std::replace(name.begin(), name.end(), '_', '-');
      out.push_back("--" + name + "=" + value);
    }
  }
  return out;
}

// --- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string data, schema, labels;
  std::uint64_t seed = 0;
  SynthConfig config;
  std::string covariance = "random";
};

void run_synth(const CLI::App& sub, SynthArgs a) {
  a.config.seed = derive_seed(a.seed, Stage::synth);
  a.config.covariance = a.covariance == "identity" ? CovarianceRecipe::identity : CovarianceRecipe::random;
  a.config.validate();
  const SyntheticData s = generate_synthetic(a.config);
  write_file_atomically(a.schema, [&](std::ostream& o) { o << format_schema(s.data.schema()); });
  write_file_atomically(a.labels, [&](std::ostream& o) { write_labels(o, *s.data.labels()); });
  write_file_atomically(a.data, [&](std::ostream& o) { write_csv(o, s.data); });
  write_manifest(sub, a.data);
}

// --- contaminate -----------------------------------------------------------

struct ContaminateArgs {
  std::string data, schema, output, labels;
  std::uint64_t seed = 0;
  ContaminationConfig config;
};

void run_contaminate(const CLI::App& sub, ContaminateArgs a) {
  const Dataset clean = read_dataset(a.data, read_schema(a.schema));
  a.config.seed = derive_seed(a.seed, Stage::contaminate);
  const Dataset dirty = contaminate(clean, a.config);
  write_file_atomically(a.labels, [&](std::ostream& o) { write_labels(o, *dirty.labels()); });
  write_file_atomically(a.output, [&](std::ostream& o) { write_csv(o, dirty); });
  write_manifest(sub, a.output);
}

// --- train -----------------------------------------------------------------

struct TrainArgs {
  std::string data, schema, model, curve, validation;
  std::string preset = "small";
  std::uint64_t seed = 0;
  std::optional<std::size_t> hidden, cd_steps, epochs;
  std::optional<std::string> optimizer, batch_size;
  std::optional<double> learning_rate, momentum, beta1, beta2, epsilon, init_scale, rate_cap;
};

TrainingConfig training_config(const TrainArgs& a) {
  TrainingConfig base;
  if (a.preset == "small")
    base = TrainingConfig::small_data_defaults();
  else if (a.preset == "large")
    base = TrainingConfig::large_data_defaults();
  else
    base = TrainingConfig::synthetic_defaults();

  KeyValueConfig kv;
  const auto put = [&](const char* key, const auto& v) {
    if (v) {
      std::ostringstream s;
      s.precision(17);
      s << *v;
      kv.set(key, s.str());
    }
  };
  put("hidden", a.hidden);
  put("cd_steps", a.cd_steps);
  put("epochs", a.epochs);
  put("optimizer", a.optimizer);
  put("batch_size", a.batch_size);
  put("learning_rate", a.learning_rate);
  put("momentum", a.momentum);
  put("adam_beta1", a.beta1);
  put("adam_beta2", a.beta2);
  put("adam_epsilon", a.epsilon);
  put("init_scale", a.init_scale);
  put("poisson_rate_cap", a.rate_cap);
  TrainingConfig tc = TrainingConfig::from_config(kv, base);
  tc.seed = derive_seed(a.seed, Stage::train);
  tc.validate();
  return tc;
}

void run_train(const CLI::App& sub, const TrainArgs& a) {
  const Schema schema = read_schema(a.schema);
  const Dataset raw = read_dataset(a.data, schema);
  const TrainingConfig tc = training_config(a);

  const StandardizationStats stats = fit_standardization(raw);
  const Dataset data = apply_standardization(raw, stats);
  std::optional<Dataset> validation;
  if (!a.validation.empty()) validation = apply_standardization(read_dataset(a.validation, schema), stats);

  TrainingResult result = train(data, tc, validation ? &*validation : nullptr);
  result.model.set_standardization(stats);

  if (!a.curve.empty())
    write_file_atomically(a.curve, [&](std::ostream& o) { write_training_curve(o, result.report); });
  write_file_atomically(a.model, [&](std::ostream& o) { save_model(result.model, o); });
  write_manifest(sub, a.model);
}

// --- score / detect / eval -------------------------------------------------

struct ScoreArgs {
  std::string model, data, schema, output;
  std::optional<double> beta, percentile;
  std::string train_scores;
  std::string labels, metrics;
};

// Loads model and data; the data is standardized with the model's stats.
std::pair<Model, Dataset> load_for_scoring(const ScoreArgs& a) {
  Model model = read_model(a.model);
  if (!a.schema.empty() && !(read_schema(a.schema) == model.schema()))
    throw ShapeError("schema '" + a.schema + "' does not match the model");
  Dataset data = read_dataset(a.data, model.schema());
  if (!model.standardization().columns.empty()) data = apply_standardization(data, model.standardization());
  return {std::move(model), std::move(data)};
}

double resolve_threshold(const ScoreArgs& a) {
  if (a.beta && a.percentile) throw DomainError("give either --beta or --percentile, not both");
  if (a.beta) {
    if (std::isnan(*a.beta)) throw DomainError("--beta must not be NaN");
    return *a.beta;
  }
  if (!a.percentile) throw DomainError("need --beta, or --percentile with --train-scores");
  if (a.train_scores.empty()) throw DomainError("--percentile needs --train-scores");
  auto in = open_input(a.train_scores);
  return threshold_from_percentile(load_scores(in), *a.percentile);
}

void run_score(const CLI::App& sub, const ScoreArgs& a) {
  const auto [model, data] = load_for_scoring(a);
  const auto scores = free_energy_batch(model, data);
  write_file_atomically(a.output, [&](std::ostream& o) {
    o << "row_index,free_energy\n";
    char buf[64];
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), scores[i]);
      o << i << ',' << std::string_view(buf, static_cast<std::size_t>(end - buf)) << '\n';
    }
  });
  write_manifest(sub, a.output);
}

void run_detect(const CLI::App& sub, const ScoreArgs& a) {
  const double beta = resolve_threshold(a);
  const auto [model, data] = load_for_scoring(a);
  const ScoreReport report = detect(model, data, beta);
  write_file_atomically(a.output, [&](std::ostream& o) { write_score_report(o, report); });
  write_manifest(sub, a.output);
}

void run_eval(const CLI::App& sub, const ScoreArgs& a) {
  const double beta = resolve_threshold(a);
  auto lin = open_input(a.labels);
  const std::vector<Label> labels = load_labels(lin);
  const auto [model, data] = load_for_scoring(a);
  if (labels.size() != data.rows())
    throw ShapeError("labels file has " + std::to_string(labels.size()) + " rows, data has " +
                     std::to_string(data.rows()));
  const ScoreReport report = detect(model, data, beta);
  MetricsReport m = f_score(labels, report.verdicts);
  const auto outliers = std::count(labels.begin(), labels.end(), Label::outlier);
  if (outliers > 0 && static_cast<std::size_t>(outliers) < labels.size()) m.auc = roc_auc(labels, report.scores);
  if (!a.output.empty())
    write_file_atomically(a.output, [&](std::ostream& o) { write_score_report(o, report); });
  write_file_atomically(a.metrics, [&](std::ostream& o) { write_metrics(o, m); });
  write_manifest(sub, a.metrics);
}

// --- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string spec, output_dir;
};

void run_experiment_cmd(const ExperimentArgs& a) {
  const KeyValueConfig cfg = KeyValueConfig::parse(read_file(a.spec));
  ExperimentSpec spec = ExperimentSpec::from_config(cfg);
  if (!a.output_dir.empty()) spec.output_dir = a.output_dir;
  const Dataset data = load_experiment_data(spec);
  const ExperimentResult result = run_experiment(data, spec.experiment);
  write_experiment_outputs(result, spec.output_dir);
  const auto manifest = (std::filesystem::path(spec.output_dir) / "experiment.manifest").string();
  write_file_atomically(manifest, [&](std::ostream& o) {
    o << "# mvrbm-manifest " << kManifestFormatVersion << '\n'
      << "# replay: mvrbm experiment --spec " << manifest << '\n';
    for (const auto& [k, v] : cfg.values())
      if (k != "output_dir") o << k << " = " << v << '\n';
    o << "output_dir = " << spec.output_dir << '\n';
  });
  const auto& m = result.test_metrics;
  std::cout << "test precision " << m.precision << " recall " << m.recall << " f_score " << m.f_score << " auc "
            << m.auc << '\n';
}

// --- prepare-kdd -----------------------------------------------------------

struct KddArgs {
  std::string raw, data, schema, labels, categories;
  std::uint64_t seed = 0;
};

void run_prepare_kdd(const CLI::App& sub, const KddArgs& a) {
  auto in = open_input(a.raw);
  const Kdd99Data k = prepare_kdd99(in, a.seed);
  write_file_atomically(a.schema, [&](std::ostream& o) { o << format_schema(k.data.schema()); });
  write_file_atomically(a.labels, [&](std::ostream& o) { write_labels(o, *k.data.labels()); });
  if (!a.categories.empty())
    write_file_atomically(a.categories, [&](std::ostream& o) { write_category_maps(o, k.categories); });
  write_file_atomically(a.data, [&](std::ostream& o) { write_csv(o, k.data); });
  write_manifest(sub, a.data);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-variate RBM outlier detector", "mvrbm"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", [] {
    return std::string("mvrbm ") + kToolVersion + "\nmodel format " + std::to_string(kModelFormatVersion) +
           "\nmanifest format " + std::to_string(kManifestFormatVersion) + "\nkernels " +
           std::string(to_string(kernels::active().isa));
  });

  // synth
  SynthArgs synth;
  auto* cs = app.add_subcommand("synth", "Generate the synthetic mixed-type benchmark");
  add_config(cs);
  cs->add_option("--data", synth.data, "Output data CSV")->required();
  cs->add_option("--schema", synth.schema, "Output schema file")->required();
  cs->add_option("--labels", synth.labels, "Output labels CSV")->required();
  cs->add_option("--seed", synth.seed, "Master seed");
  cs->add_option("--components", synth.config.components, "Mixture components");
  cs->add_option("--samples", synth.config.samples_per_component, "Rows per component");
  cs->add_option("--latent-dim", synth.config.latent_dim, "Latent dimension");
  cs->add_option("--outlier-fraction", synth.config.outlier_fraction, "Fraction of rows given noise");
  cs->add_option("--noise-scale", synth.config.noise_scale, "Outlier noise is Uniform(0, scale)");
  cs->add_option("--gaussian-dims", synth.config.gaussian_dims, "Latent dims kept gaussian");
  cs->add_option("--binary-dims", synth.config.binary_dims, "Latent dims thresholded to binary");
  cs->add_option("--nominal-dims", synth.config.nominal_dims, "Latent dims grouped into nominals");
  cs->add_option("--nominal-group", synth.config.nominal_group, "Latent dims per nominal column");
  cs->add_option("--covariance", synth.covariance, "random or identity")
      ->check(CLI::IsMember({"random", "identity"}));

  // contaminate
  ContaminateArgs cont;
  auto* cc = app.add_subcommand("contaminate", "Plant outliers in clean data");
  add_config(cc);
  cc->add_option("--data", cont.data, "Input data CSV")->required();
  cc->add_option("--schema", cont.schema, "Schema file")->required();
  cc->add_option("--output", cont.output, "Output data CSV")->required();
  cc->add_option("--labels", cont.labels, "Output labels CSV")->required();
  cc->add_option("--seed", cont.seed, "Master seed");
  cc->add_option("--fraction", cont.config.fraction, "Fraction of rows to contaminate");
  cc->add_option("--shift-low", cont.config.shift_low, "Smallest shift in standard deviations");
  cc->add_option("--shift-high", cont.config.shift_high, "Largest shift in standard deviations");

  // train
  TrainArgs tr;
  auto* ct = app.add_subcommand("train", "Fit a model with contrastive divergence");
  add_config(ct);
  ct->add_option("--data", tr.data, "Training data CSV")->required();
  ct->add_option("--schema", tr.schema, "Schema file")->required();
  ct->add_option("--model", tr.model, "Output model file")->required();
  ct->add_option("--curve", tr.curve, "Output training-curve CSV");
  ct->add_option("--validation", tr.validation, "Held-out data CSV tracked in the curve");
  ct->add_option("--seed", tr.seed, "Master seed");
  ct->add_option("--preset", tr.preset, "Default settings: small, large or synthetic")
      ->check(CLI::IsMember({"small", "large", "synthetic"}));
  ct->add_option("--hidden", tr.hidden, "Hidden units");
  ct->add_option("--cd-steps", tr.cd_steps, "Gibbs steps per CD update");
  ct->add_option("--epochs", tr.epochs, "Training epochs");
  ct->add_option("--batch-size", tr.batch_size, "Mini-batch size or 'full'");
  ct->add_option("--optimizer", tr.optimizer, "sgd, momentum or adam");
  ct->add_option("--lr,--learning-rate", tr.learning_rate, "Learning rate");
  ct->add_option("--momentum", tr.momentum, "Momentum coefficient");
  ct->add_option("--adam-beta1", tr.beta1, "Adam first-moment decay");
  ct->add_option("--adam-beta2", tr.beta2, "Adam second-moment decay");
  ct->add_option("--adam-epsilon", tr.epsilon, "Adam epsilon");
  ct->add_option("--init-scale", tr.init_scale, "Std of initial weights");
  ct->add_option("--poisson-rate-cap", tr.rate_cap, "Largest Poisson rate before divergence");

  // score / detect / eval
  ScoreArgs sc, de, ev;
  const auto scoring_inputs = [](CLI::App* c, ScoreArgs& a) {
    add_config(c);
    c->add_option("--model", a.model, "Model file")->required();
    c->add_option("--data", a.data, "Data CSV")->required();
    c->add_option("--schema", a.schema, "Schema file, checked against the model");
  };
  const auto threshold_inputs = [](CLI::App* c, ScoreArgs& a) {
    c->add_option("--beta", a.beta, "Free-energy threshold (inf allowed)");
    c->add_option("--percentile", a.percentile, "Threshold percentile of --train-scores");
    c->add_option("--train-scores", a.train_scores, "Score CSV of the training data");
  };
  auto* cso = app.add_subcommand("score", "Write the free energy of every row");
  scoring_inputs(cso, sc);
  cso->add_option("--output", sc.output, "Output score CSV")->required();

  auto* cd = app.add_subcommand("detect", "Flag rows whose free energy reaches the threshold");
  scoring_inputs(cd, de);
  threshold_inputs(cd, de);
  cd->add_option("--output", de.output, "Output report CSV")->required();

  auto* ce = app.add_subcommand("eval", "Detect and compare verdicts with labels");
  scoring_inputs(ce, ev);
  threshold_inputs(ce, ev);
  ce->add_option("--labels", ev.labels, "Ground-truth labels CSV")->required();
  ce->add_option("--metrics", ev.metrics, "Output metrics CSV")->required();
  ce->add_option("--output", ev.output, "Output report CSV");

  // experiment
  ExperimentArgs ex;
  auto* cx = app.add_subcommand("experiment", "Run contaminate, split, train, detect and evaluate");
  cx->add_option("--spec", ex.spec, "Experiment spec file")->required();
  cx->add_option("--output-dir", ex.output_dir, "Overrides output_dir in the spec");

  // prepare-kdd
  KddArgs kd;
  auto* ck = app.add_subcommand("prepare-kdd", "Convert raw KDD Cup 1999 records to the mvrbm layout");
  add_config(ck);
  ck->add_option("--raw", kd.raw, "Raw comma-separated KDD file")->required();
  ck->add_option("--data", kd.data, "Output data CSV")->required();
  ck->add_option("--schema", kd.schema, "Output schema file")->required();
  ck->add_option("--labels", kd.labels, "Output labels CSV")->required();
  ck->add_option("--categories", kd.categories, "Output category code table");
  ck->add_option("--seed", kd.seed, "Master seed for attack sampling");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "mvrbm: error: " << e.what() << '\n';
    return 1;
  }
  try {
    // CLI11 wants the arguments reversed and without the program name.
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*cs) run_synth(*cs, synth);
    else if (*cc) run_contaminate(*cc, cont);
    else if (*ct) run_train(*ct, tr);
    else if (*cso) run_score(*cso, sc);
    else if (*cd) run_detect(*cd, de);
    else if (*ce) run_eval(*ce, ev);
    else if (*cx) run_experiment_cmd(ex);
    else if (*ck) run_prepare_kdd(*ck, kd);
  } catch (const std::exception& e) {
    std::cerr << "mvrbm: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
