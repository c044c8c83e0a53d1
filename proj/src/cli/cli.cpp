#include "jfs/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jfs/dataio/dataset.hpp"
#include "jfs/dataio/png.hpp"
#include "jfs/dataio/report.hpp"
#include "jfs/error.hpp"
#include "jfs/eval/evaluate.hpp"
#include "jfs/fss/echo.hpp"
#include "jfs/fss/external.hpp"
#include "jfs/fss/prototype.hpp"
#include "jfs/judge/judge.hpp"
#include "jfs/refine/refine.hpp"
#include "jfs/synth/benchmark.hpp"

namespace fs = std::filesystem;

namespace jfs::cli {
namespace {

enum class Level { kError = 0, kInfo = 1, kDebug = 2 };

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {
    const char* env = std::getenv("JFS_LOG");
    const std::string v = env ? env : "";
    if (v == "error") level_ = Level::kError;
    else if (v == "debug") level_ = Level::kDebug;
  }
  void error(const std::string& m) const { emit(Level::kError, "error", m); }
  void warn(const std::string& m) const { emit(Level::kInfo, "warning", m); }
  void info(const std::string& m) const { emit(Level::kInfo, "info", m); }
  void debug(const std::string& m) const { emit(Level::kDebug, "debug", m); }

 private:
  void emit(Level at, const char* tag, const std::string& m) const {
    if (at <= level_) err_ << "jfs: " << tag << ": " << m << '\n';
  }
  std::ostream& err_;
  Level level_ = Level::kInfo;
};

// Usage problems detected after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendFlags {
  std::string spec = "builtin:prototype";
  double lambda = 0.0;
};

void add_backend_flags(CLI::App& cmd, BackendFlags& f) {
  cmd.add_option("--backend", f.spec, "builtin:prototype | builtin:echo | external:<argv,comma,separated>")
      ->capture_default_str();
  cmd.add_option("--lambda", f.lambda, "Spatial weight of the prototype backend")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

std::unique_ptr<fss::FssBackend> make_backend(const BackendFlags& f, const Log& log) {
  if (f.spec == "builtin:prototype") return std::make_unique<fss::PrototypeBackend>(fss::PrototypeConfig{f.lambda});
  if (f.spec == "builtin:echo") return std::make_unique<fss::EchoBackend>();
  const std::string prefix = "external:";
  if (f.spec.rfind(prefix, 0) == 0) {
    auto argv = fss::split_argv(f.spec.substr(prefix.size()));
    if (argv.empty() || argv[0].empty()) throw UsageError("external backend needs a command");
    auto backend = std::make_unique<fss::ExternalBackend>(std::move(argv));
    log.debug("adapter " + backend->adapter_name() + " started, pid " + std::to_string(backend->pid()));
    return backend;
  }
  throw UsageError("unknown backend '" + f.spec + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << text;
  if (!os.flush()) throw IoError("write failed: " + path.string());
}

// "<image_id>_<class>.png"; the id may itself contain underscores.
std::optional<std::pair<std::string, int>> split_class_mask_name(const fs::path& p) {
  if (p.extension() != ".png") return std::nullopt;
  const std::string stem = p.stem().string();
  const auto cut = stem.rfind('_');
  if (cut == std::string::npos || cut == 0 || cut + 1 == stem.size()) return std::nullopt;
  const std::string digits = stem.substr(cut + 1);
  if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3) return std::nullopt;
  const int cls = std::stoi(digits);
  if (cls > 255) return std::nullopt;
  return std::pair{stem.substr(0, cut), cls};
}

struct SynthArgs {
  std::uint64_t seed = 0;
  int n = 0;
  double corrupt_fraction = 0.5;
  fs::path out;
  int jobs = 1;
  int val_per_class = synth::BenchmarkOptions{}.val_per_class;
};

int cmd_synth(const SynthArgs& a, std::ostream& out, const Log& log) {
  synth::BenchmarkOptions options;
  options.jobs = a.jobs;
  options.val_per_class = a.val_per_class;
  log.info("generating " + std::to_string(a.n) + " samples into " + a.out.string());
  synth::generate_benchmark(a.seed, a.n, synth::default_scene_config(), synth::default_improve_config(),
                            synth::default_corrupt_config(), a.corrupt_fraction, a.out, options);
  out << (a.out / dataio::layout::kManifest).string() << '\n';
  return kExitOk;
}

struct RefineArgs {
  fs::path coarse_dir;
  fs::path candidates_dir;
  fs::path out_dir;
  double min_overlap = 0.0;
};

int cmd_refine(const RefineArgs& a, std::ostream& out, const Log& log) {
  if (!fs::is_directory(a.coarse_dir)) throw IoError("not a directory: " + a.coarse_dir.string());
  std::map<std::string, std::map<int, fs::path>> by_image;
  for (const auto& e : fs::directory_iterator(a.coarse_dir)) {
    if (!e.is_regular_file()) continue;
    const auto parsed = split_class_mask_name(e.path().filename());
    if (!parsed) {
      log.debug("skipping " + e.path().string());
      continue;
    }
    by_image[parsed->first][parsed->second] = e.path();
  }
  fs::create_directories(a.out_dir);
  const refine::RefineConfig config{a.min_overlap};
  std::size_t written = 0;
  for (const auto& [image_id, files] : by_image) {
    refine::ClassMaskMap coarse;
    std::optional<Dims> dims;
    for (const auto& [cls, path] : files) {
      auto m = dataio::load_mask(path);
      if (dims && m.dims() != *dims) throw DimensionError(path.string() + ": size differs from other masks of " + image_id);
      dims = m.dims();
      coarse.emplace(static_cast<std::uint8_t>(cls), std::move(m));
    }
    const auto bank = dataio::load_candidate_bank(a.candidates_dir, image_id, dims);
    const auto refined = refine::refine(coarse, bank, config);
    for (const auto& [cls, mask] : refined) {
      const fs::path dst = a.out_dir / dataio::layout::class_mask_name(image_id, cls);
      dataio::write_file(dst, dataio::encode_mask_png(mask));
      out << dst.string() << '\n';
      ++written;
    }
    log.debug(image_id + ": " + std::to_string(bank.candidates.size()) + " candidates");
  }
  log.info("wrote " + std::to_string(written) + " refined masks");
  return kExitOk;
}

struct JudgeArgs {
  BackendFlags backend;
  fs::path query_image;
  fs::path coarse;
  fs::path refined;
  std::vector<fs::path> support_images;
  std::vector<fs::path> support_masks;
};

int cmd_judge(const JudgeArgs& a, std::ostream& out, const Log& log) {
  if (a.support_images.size() != a.support_masks.size())
    throw UsageError("--support-image and --support-mask must be given the same number of times");
  judge::JudgeCase c;
  c.query = dataio::load_rgb(a.query_image);
  c.coarse = dataio::load_mask(a.coarse);
  c.refined = dataio::load_mask(a.refined);
  for (std::size_t i = 0; i < a.support_images.size(); ++i)
    c.supports.push_back({dataio::load_rgb(a.support_images[i]), dataio::load_mask(a.support_masks[i])});
  auto backend = make_backend(a.backend, log);
  const auto r = judge::judge(*backend, c);
  nlohmann::ordered_json j;
  j["e_coarse"] = r.e_coarse;
  j["e_refined"] = r.e_refined;
  j["verdict"] = std::string(judge::verdict_name(r.verdict));
  auto per = nlohmann::json::array();
  for (const auto& [ec, er] : r.per_support_scores) per.push_back({ec, er});
  j["per_support"] = per;
  out << j.dump() << '\n';
  return kExitOk;
}

struct EvalArgs {
  BackendFlags backend;
  fs::path dataset;
  std::string groups = "top:20,bottom:20,random:20";
  int shots = 1;
  std::uint64_t seed = 0;
  fs::path out_dir;
  int jobs = 1;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, const Log& log) {
  std::vector<eval::GroupSpec> groups;
  try {
    groups = eval::parse_groups(a.groups);
  } catch (const GroupError& e) {
    throw UsageError(e.what());
  }
  auto backend = make_backend(a.backend, log);
  eval::EvalOptions options;
  options.shots = a.shots;
  options.seed = a.seed;
  options.jobs = a.jobs;
  if (a.jobs > 1 && !backend->concurrency_safe()) {
    log.warn(backend->name() + " is not concurrency safe; running with --jobs 1");
    options.jobs = 1;
  }
  const auto result = eval::evaluate(a.dataset, *backend, groups, options);
  fs::create_directories(a.out_dir);
  dataio::write_report(result.report, a.out_dir / "report.csv", dataio::ReportFormat::kCsv);
  dataio::write_report(result.report, a.out_dir / "report.json", dataio::ReportFormat::kJson);
  write_text(a.out_dir / "details.csv", eval::format_details(result.details));
  out << dataio::format_report(result.report, dataio::ReportFormat::kCsv);
  log.info("judged " + std::to_string(result.details.size()) + " samples with " + backend->name());
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const Log log(err);
  CLI::App app{"Judge segmentation refinements with a few-shot segmentation oracle", "jfs"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic benchmark");
  synth->add_option("--seed", synth_args.seed, "Generator seed")->required();
  synth->add_option("--n", synth_args.n, "Number of query samples")->required()->check(CLI::PositiveNumber);
  synth->add_option("--corrupt-fraction", synth_args.corrupt_fraction, "Share of samples whose refinement hurts")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--out", synth_args.out, "Output dataset root")->required();
  synth->add_option("--val-per-class", synth_args.val_per_class, "Support images per class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--jobs", synth_args.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  RefineArgs refine_args;
  auto* refine = app.add_subcommand("refine", "Refine coarse masks with candidate banks");
  refine->add_option("--coarse-dir", refine_args.coarse_dir, "Directory of <id>_<class>.png coarse masks")->required();
  refine->add_option("--candidates-dir", refine_args.candidates_dir, "Directory of <id>_<k>.png candidates")
      ->required();
  refine->add_option("--out-dir", refine_args.out_dir, "Where refined masks are written")->required();
  refine->add_option("--min-overlap", refine_args.min_overlap, "Minimum overlap fraction for a candidate to merge")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  JudgeArgs judge_args;
  auto* judge = app.add_subcommand("judge", "Judge one coarse/refined pair");
  add_backend_flags(*judge, judge_args.backend);
  judge->add_option("--query-image", judge_args.query_image, "Query RGB PNG")->required();
  judge->add_option("--coarse", judge_args.coarse, "Coarse mask PNG")->required();
  judge->add_option("--refined", judge_args.refined, "Refined mask PNG")->required();
  judge->add_option("--support-image", judge_args.support_images, "Support RGB PNG (repeatable)")->required();
  judge->add_option("--support-mask", judge_args.support_masks, "Support mask PNG (repeatable)")->required();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a dataset and write report and details files");
  add_backend_flags(*eval, eval_args.backend);
  eval->add_option("--dataset", eval_args.dataset, "Dataset root")->required();
  eval->add_option("--groups", eval_args.groups, "Comma-separated group specs")->capture_default_str();
  eval->add_option("--shots", eval_args.shots, "Support images per judgement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--seed", eval_args.seed, "Pairing and group sampling seed")->required();
  eval->add_option("--out-dir", eval_args.out_dir, "Where report.csv, report.json and details.csv go")->required();
  eval->add_option("--jobs", eval_args.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(synth_args, out, log);
    if (*refine) return cmd_refine(refine_args, out, log);
    if (*judge) return cmd_judge(judge_args, out, log);
    if (*eval) return cmd_eval(eval_args, out, log);
  } catch (const UsageError& e) {
    log.error(e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    log.error(e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace jfs::cli
