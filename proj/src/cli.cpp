// src/cli.cpp

// Copyright 2026  The mdnn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mdnn/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "mdnn/baselines.hpp"
#include "mdnn/checkpoint.hpp"
#include "mdnn/dataset.hpp"
#include "mdnn/error.hpp"
#include "mdnn/gradcheck.hpp"
#include "mdnn/io.hpp"
#include "mdnn/runner.hpp"

namespace mdnn {

namespace {

namespace fs = std::filesystem;

fs::path OutputDir() {
  const char *env = std::getenv("MDNN_OUTPUT_DIR");
  return env && *env ? fs::path(env) : fs::current_path();
}

fs::path ResolveOutput(const std::string &given, const std::string &fallback_name) {
  if (!given.empty()) return given;
  const fs::path dir = OutputDir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  return dir / fallback_name;
}

PairedDataset MarkAllLabeled(PairedDataset data) {
  for (Eigen::Index i = 0; i < data.size(); ++i)
    data.labeled[i] = data.split[i] == Split::kTrain && data.labels[i] != kUnknownLabel;
  return data;
}

PairedDataset ApplyLabels(PairedDataset data, int labels, std::uint64_t seed) {
  return labels >= 0 ? SelectLabeled(data, labels, seed) : data;
}

struct LabelFlags {
  int labels = -1;
  std::uint64_t seed = 0;

  void Add(CLI::App *app, const std::string &what) {
    app->add_option("--labels", labels, "Number of labeled train samples " + what)->check(CLI::NonNegativeNumber);
    app->add_option("--label-seed", seed, "Seed of the class-proportional label selection");
  }
};

struct TrainFlags {
  std::string config;
  std::string mode = "mdnn";
  double lambda = 0, alpha = 0, r = 0, lr = 0;
  int epochs = 0, batch = 0, repr_dim = 0;
  std::uint64_t seed = 0;
  std::vector<int> hidden;
  bool single_repr_dim = true;

  void Add(CLI::App *app, bool with_repr_dim) {
    single_repr_dim = with_repr_dim;
    app->add_option("--config", config, "JSON file with training settings (flags override it)")->check(CLI::ExistingFile);
    app->add_option("--mode", mode, "mdnn, dcca (lambda = 0) or dlda (view 1 only)");
    app->add_option("--lambda", lambda, "Weight of the discriminative term");
    app->add_option("--alpha", alpha, "Weight decay");
    app->add_option("--r", r, "Covariance and scatter regularization");
    app->add_option("--lr", lr, "Adam learning rate");
    app->add_option("--epochs", epochs, "Training epochs");
    app->add_option("--batch", batch, "Mini-batch size");
    app->add_option("--hidden", hidden, "Hidden layer widths")->delimiter(',');
    if (single_repr_dim) app->add_option("--repr-dim", repr_dim, "Representation dimension");
    app->add_option("--seed", seed, "Seed for initialization and batching");
  }

  TrainConfig Resolve(const CLI::App &app) const {
    TrainConfig c;
    if (!config.empty()) c = LoadConfigFile(config, c);
    if (app.count("--mode")) c.mode = ParseTrainMode(mode);
    if (app.count("--lambda")) c.lambda = lambda;
    if (app.count("--alpha")) c.alpha = alpha;
    if (app.count("--r")) c.r = r;
    if (app.count("--lr")) c.learning_rate = lr;
    if (app.count("--epochs")) c.epochs = epochs;
    if (app.count("--batch")) c.batch_size = batch;
    if (app.count("--hidden")) c.hidden_layers = hidden;
    if (single_repr_dim && app.count("--repr-dim")) c.repr_dim = repr_dim;
    if (app.count("--seed")) c.seed = seed;
    return c;
  }
};

void CheckDims(const Checkpoint &ckpt, const PairedDataset &data) {
  if (ckpt.input_dim1 != data.x1.rows() || (ckpt.input_dim2 > 0 && ckpt.input_dim2 != data.x2.rows())) {
    std::ostringstream os;
    os << "checkpoint expects view dimensions (" << ckpt.input_dim1 << ", " << ckpt.input_dim2
       << ") but dataset '" << data.name << "' has (" << data.x1.rows() << ", " << data.x2.rows() << ")";
    Fail(ErrorKind::kShape, os.str());
  }
}

void PrintEpoch(std::ostream &out, const EpochMetrics &m) {
  out << "epoch " << std::setw(4) << m.epoch << "  objective " << std::setprecision(6) << m.objective;
  if (m.corr) out << "  C " << *m.corr;
  if (m.g1) out << "  G1 " << *m.g1;
  if (m.g2) out << "  G2 " << *m.g2;
  out << '\n';
}

// ---- generate ----

void SetupGenerate(CLI::App &root, std::ostream &out, std::function<void()> *action) {
  CLI::App *gen = root.add_subcommand("generate", "Create a two-view dataset container");
  gen->require_subcommand(1);

  struct Common {
    std::string out_path;
    LabelFlags labels;
  };
  auto common = std::make_shared<Common>();
  auto finish = [common, &out](PairedDataset data) {
    data = common->labels.labels >= 0 ? SelectLabeled(data, common->labels.labels, common->labels.seed)
                                      : MarkAllLabeled(std::move(data));
    const fs::path path = ResolveOutput(common->out_path, data.name + ".mdnn");
    SaveDataset(data, path);
    out << "wrote " << path.string() << '\n' << ManifestSummary(MakeManifest(data)) << '\n';
  };
  auto add_common = [common](CLI::App *app) {
    app->add_option("--out", common->out_path, "Output dataset file");
    common->labels.Add(app, "(default: all)");
  };

  struct Mnist {
    std::string dir;
    std::uint64_t seed = 0;
    int train_limit = -1, test_limit = -1;
  };
  auto mnist = std::make_shared<Mnist>();
  CLI::App *nm = gen->add_subcommand("noisy-mnist", "Rotated / noisy two-view MNIST from IDX files");
  nm->add_option("--mnist-dir", mnist->dir, "Directory with the four MNIST IDX files")->required();
  nm->add_option("--seed", mnist->seed, "Generation seed");
  nm->add_option("--train-limit", mnist->train_limit, "Use only the first n training images");
  nm->add_option("--test-limit", mnist->test_limit, "Use only the first n test images");
  add_common(nm);
  nm->callback([=, action = action] {
    *action = [=] {
      PairedDataset data = LoadNoisyMnist(mnist->dir, mnist->seed, mnist->train_limit, mnist->test_limit);
      finish(std::move(data));
    };
  });

  auto synth = std::make_shared<SynthOptions>();
  CLI::App *sy = gen->add_subcommand("synth", "Synthetic Gaussian two-view classification task");
  sy->add_option("--classes", synth->class_count, "Number of classes");
  sy->add_option("--d1", synth->d1, "View-1 dimension");
  sy->add_option("--d2", synth->d2, "View-2 dimension");
  sy->add_option("--n-train", synth->n_train, "Training samples");
  sy->add_option("--n-test", synth->n_test, "Test samples");
  sy->add_option("--separation", synth->separation, "Class-mean separation");
  sy->add_option("--shared-dim", synth->shared_dim, "Dimension of the shared nuisance latent");
  sy->add_option("--shared-scale", synth->shared_scale, "Standard deviation of the nuisance latent");
  sy->add_option("--noise", synth->noise, "Per-view noise standard deviation");
  sy->add_option("--seed", synth->seed, "Generation seed");
  add_common(sy);
  sy->callback([=] { *action = [=] { finish(GenSynthGaussian(*synth)); }; });

  struct Csv {
    std::string view1, view2, labels, split, name = "csv";
  };
  auto csv = std::make_shared<Csv>();
  CLI::App *cs = gen->add_subcommand("csv", "Import two aligned CSV views");
  cs->add_option("--view1", csv->view1, "View-1 CSV, one sample per row")->required();
  cs->add_option("--view2", csv->view2, "View-2 CSV, one sample per row")->required();
  cs->add_option("--class-labels", csv->labels, "One integer label per line")->required();
  cs->add_option("--split", csv->split, "One of train/test per line (default: all train)");
  cs->add_option("--name", csv->name, "Dataset name");
  add_common(cs);
  cs->callback([=] {
    *action = [=] { finish(ImportCsv(csv->view1, csv->view2, csv->labels, csv->split, csv->name)); };
  });
}

// ---- train ----

void SetupTrain(CLI::App &root, std::ostream &out, std::function<void()> *action) {
  CLI::App *app = root.add_subcommand("train", "Train coupled networks (mdnn, dcca or dlda mode)");
  struct Args {
    std::string data, out_path, record_path;
    TrainFlags train;
    LabelFlags labels;
    bool quiet = false;
  };
  auto a = std::make_shared<Args>();
  app->add_option("--data", a->data, "Dataset container")->required();
  app->add_option("--out", a->out_path, "Checkpoint path");
  app->add_option("--record", a->record_path, "Run record path (default: <checkpoint>.record.json)");
  app->add_flag("--quiet", a->quiet, "Do not print per-epoch metrics");
  a->train.Add(app, true);
  a->labels.Add(app, "(default: the dataset's mask)");
  app->callback([=, &out] {
    const TrainConfig config = a->train.Resolve(*app);
    ValidateConfig(config);
    *action = [=, &out] {
      const auto start = std::chrono::steady_clock::now();
      const PairedDataset data = ApplyLabels(LoadDataset(a->data), a->labels.labels, a->labels.seed);
      TrainResult result = Train(config, data, [&](const EpochMetrics &m) {
        if (!a->quiet) PrintEpoch(out, m);
      });

      Checkpoint ckpt;
      ckpt.kind = CheckpointKind::kNetwork;
      ckpt.network = result.model;
      ckpt.input_dim1 = static_cast<int>(data.x1.rows());
      ckpt.input_dim2 = result.model.view2 ? static_cast<int>(data.x2.rows()) : 0;
      ckpt.dataset = data.name;
      ckpt.labels = a->labels.labels;
      ckpt.label_seed = a->labels.seed;
      const fs::path path = ResolveOutput(
          a->out_path, data.name + "_" + TrainModeName(config.mode) + "_s" + std::to_string(config.seed) + ".ckpt.json");
      SaveCheckpoint(ckpt, path);

      RunRecord record;
      record.dataset = data.name;
      record.labeled = static_cast<int>(data.LabeledIndices(Split::kTrain).size());
      EchoConfig(config, &record);
      record.history = std::move(result.history);
      record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      const fs::path record_path = a->record_path.empty() ? fs::path(path.string() + ".record.json") : fs::path(a->record_path);
      WriteFileAtomic(record_path, RecordToJson(record).dump(2));
      out << "wrote " << path.string() << " and " << record_path.string() << '\n';
    };
  });
}

// ---- fit-baseline ----

void SetupFitBaseline(CLI::App &root, std::ostream &out, std::function<void()> *action) {
  CLI::App *app = root.add_subcommand("fit-baseline", "Fit a closed-form baseline (cca, lda, kcca, identity)");
  struct Args {
    std::string method, data, out_path;
    int k = 0;
    double r = 1e-4, bandwidth = 0.0;
    int n_features = 2000;
    std::uint64_t seed = 0;
    LabelFlags labels;
  };
  auto a = std::make_shared<Args>();
  app->add_option("method", a->method, "cca, lda, kcca or identity")->required();
  app->add_option("--data", a->data, "Dataset container")->required();
  app->add_option("--out", a->out_path, "Checkpoint path");
  app->add_option("--k", a->k, "Projection dimension (default: number of classes, |C| - 1 for lda)");
  app->add_option("--r", a->r, "Regularization added to covariances / within-class scatter");
  app->add_option("--n-features", a->n_features, "Random features per view (kcca)");
  app->add_option("--bandwidth", a->bandwidth, "Gaussian kernel bandwidth (kcca; default median heuristic)");
  app->add_option("--seed", a->seed, "Random feature seed (kcca)");
  a->labels.Add(app, "(lda; default: the dataset's mask)");
  app->callback([=, &out] {
    *action = [=, &out] {
      const PairedDataset data = ApplyLabels(LoadDataset(a->data), a->labels.labels, a->labels.seed);
      Checkpoint ckpt;
      ckpt.input_dim1 = static_cast<int>(data.x1.rows());
      ckpt.input_dim2 = static_cast<int>(data.x2.rows());
      ckpt.dataset = data.name;
      ckpt.labels = a->labels.labels;
      ckpt.label_seed = a->labels.seed;
      if (a->method == "identity") {
        ckpt.kind = CheckpointKind::kIdentity;
      } else {
        const ProjectionMethod method = ParseProjectionMethod(a->method);
        ckpt.kind = CheckpointKind::kLinear;
        const PairedDataset train = data.Subset(method == ProjectionMethod::kLda ? data.LabeledIndices(Split::kTrain)
                                                                                 : data.Indices(Split::kTrain));
        int k = a->k;
        if (k <= 0) k = method == ProjectionMethod::kLda ? std::max(1, data.class_count - 1) : data.class_count;
        if (method == ProjectionMethod::kLinearCca) {
          ckpt.linear = LinearCcaFit(train.x1, train.x2, k, a->r);
        } else if (method == ProjectionMethod::kLda) {
          ckpt.linear = LdaFit(train.x1, train.labels, k, a->r);
        } else {
          RffOptions rff;
          rff.n_features = a->n_features;
          rff.bandwidth = a->bandwidth;
          rff.r = a->r;
          rff.seed = a->seed;
          ckpt.linear = RffKccaFit(train.x1, train.x2, k, rff);
        }
        out << ProjectionMethodName(method) << " values:";
        for (Eigen::Index i = 0; i < ckpt.linear->values.size(); ++i) out << ' ' << ckpt.linear->values(i);
        out << '\n';
      }
      const fs::path path = ResolveOutput(a->out_path, data.name + "_" + a->method + ".ckpt.json");
      SaveCheckpoint(ckpt, path);
      out << "wrote " << path.string() << '\n';
    };
  });
}

// ---- eval ----

void SetupEval(CLI::App &root, std::ostream &out, std::function<void()> *action) {
  CLI::App *app = root.add_subcommand("eval", "Cross-view SVM evaluation of a checkpoint");
  struct Args {
    std::string checkpoint, data, results;
    std::vector<double> grid = kDefaultSvmGrid;
    int folds = 5, threads = 1;
    std::uint64_t seed = 0;
  };
  auto a = std::make_shared<Args>();
  app->add_option("--checkpoint", a->checkpoint, "Checkpoint from train or fit-baseline")->required();
  app->add_option("--data", a->data, "Dataset container")->required();
  app->add_option("--results", a->results, "Results CSV to append to (default: $MDNN_OUTPUT_DIR/results.csv)");
  app->add_option("--svm-c", a->grid, "SVM C grid")->delimiter(',');
  app->add_option("--folds", a->folds, "Cross-validation folds for C");
  app->add_option("--threads", a->threads, "Worker threads for the C grid");
  app->add_option("--seed", a->seed, "SVM seed (default: the checkpoint's training seed)");
  app->callback([=, &out] {
    *action = [=, &out] {
      const auto start = std::chrono::steady_clock::now();
      const Checkpoint ckpt = LoadCheckpoint(a->checkpoint);
      const PairedDataset data = ApplyLabels(LoadDataset(a->data), ckpt.labels, ckpt.label_seed);
      CheckDims(ckpt, data);
      EvalOptions eval;
      eval.c_grid = a->grid;
      eval.folds = a->folds;
      eval.threads = a->threads;
      eval.seed = app->count("--seed") ? a->seed : (ckpt.network ? ckpt.network->config.seed : 0);
      const EvalResult result = CrossViewEval(MakeProjector(ckpt, 1), data, eval);

      RunRecord record;
      if (ckpt.network) EchoConfig(ckpt.network->config, &record);
      record.dataset = data.name;
      record.model = ckpt.ModelName();
      record.labeled = result.n_train;
      record.repr_dim = ckpt.repr_dim();
      record.seed = eval.seed;
      record.svm_c = result.chosen_c;
      record.accuracy = result.accuracy;
      record.validation_accuracy = result.validation_accuracy;
      record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      CsvWriter writer(ResolveOutput(a->results, "results.csv"));
      writer.Append(record);
      out << "accuracy " << FormatNumber(result.accuracy) << " (C = " << FormatNumber(result.chosen_c)
          << ", " << result.n_train << " labeled train, " << result.n_test << " test) -> "
          << writer.path().string() << '\n';
    };
  });
}

// ---- gradcheck ----

void SetupGradcheck(CLI::App &root, std::ostream &out, std::function<void()> *action, int *exit_code) {
  CLI::App *app = root.add_subcommand("gradcheck", "Finite-difference checks of all analytic gradients");
  auto opts = std::make_shared<GradcheckOptions>();
  app->add_option("--seed", opts->seed, "Seed of the random instances");
  app->add_option("--corrupt-gradient", opts->corrupt, "Scale analytic gradients by (1 + x); for testing the checker")
      ->group("");
  app->callback([=, &out] {
    *action = [=, &out] {
      bool ok = true;
      for (const GradcheckSuite &s : RunGradcheck(*opts)) {
        out << std::left << std::setw(16) << s.name << " max relative error " << std::scientific
            << std::setprecision(3) << s.max_error << "  threshold " << s.threshold << "  instances "
            << s.instances << "  " << (s.pass() ? "PASS" : "FAIL") << std::defaultfloat << '\n';
        if (!s.pass()) {
          out << "  failing instance seed " << s.worst_seed << '\n';
          ok = false;
        }
      }
      *exit_code = ok ? kExitOk : kExitCheckFailed;
    };
  });
}

// ---- grid ----

void SetupGrid(CLI::App &root, std::ostream &out, std::function<void()> *action) {
  CLI::App *app = root.add_subcommand("grid", "Train and evaluate over lambda x alpha x repr_dim x seed");
  struct Args {
    std::string data, results;
    TrainFlags train;
    LabelFlags labels;
    GridOptions grid;
    std::vector<int> repr_dims;
    bool select = false;
  };
  auto a = std::make_shared<Args>();
  app->add_option("--data", a->data, "Dataset container")->required();
  app->add_option("--results", a->results, "Results CSV to append to (default: $MDNN_OUTPUT_DIR/results.csv)");
  a->train.Add(app, false);
  a->labels.Add(app, "(default: the dataset's mask)");
  app->add_option("--lambdas", a->grid.lambdas, "Lambda grid")->delimiter(',');
  app->add_option("--alphas", a->grid.alphas, "Alpha grid")->delimiter(',');
  app->add_option("--repr-dim", a->repr_dims, "Representation dimensions to sweep")->delimiter(',');
  app->add_option("--seeds", a->grid.seeds, "Training seeds")->delimiter(',');
  app->add_option("--svm-c", a->grid.eval.c_grid, "SVM C grid")->delimiter(',');
  app->add_option("--folds", a->grid.eval.folds, "Cross-validation folds for C");
  app->add_option("--parallel", a->grid.parallel, "Concurrent grid points");
  app->add_flag("--select", a->select, "Print the configuration with the best validation accuracy");
  app->callback([=, &out] {
    GridOptions grid = a->grid;
    grid.base = a->train.Resolve(*app);
    grid.repr_dims = a->repr_dims;
    ValidateConfig(grid.base);
    *action = [=, &out] {
      const PairedDataset data = ApplyLabels(LoadDataset(a->data), a->labels.labels, a->labels.seed);
      CsvWriter writer(ResolveOutput(a->results, "results.csv"));
      const std::vector<RunRecord> records = RunGrid(data, grid, &writer);
      int failed = 0;
      for (const auto &r : records) failed += !r.error.empty();
      out << records.size() << " grid points (" << failed << " failed) -> " << writer.path().string() << '\n';
      if (a->select) {
        const auto best = SelectBest(records);
        if (!best) Fail(ErrorKind::kConfig, "no grid point finished successfully");
        out << "best: lambda " << FormatNumber(*best->lambda) << " alpha " << FormatNumber(*best->alpha)
            << " repr_dim " << best->repr_dim << " seed " << best->seed << " validation accuracy "
            << FormatNumber(*best->validation_accuracy) << " test accuracy " << FormatNumber(*best->accuracy)
            << '\n';
      }
    };
  });
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Multi-view discriminative network training and evaluation", "mdnn"};
  app.require_subcommand(1);
  std::function<void()> action;
  int exit_code = kExitOk;
  SetupGenerate(app, out, &action);
  SetupTrain(app, out, &action);
  SetupFitBaseline(app, out, &action);
  SetupEval(app, out, &action);
  SetupGradcheck(app, out, &action, &exit_code);
  SetupGrid(app, out, &action);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (action) action();
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}

}  // namespace mdnn
