// Command-line front end: parse/build/sample/segment/validate/metrics over
// single models, dataset-scale ingest/run/stats, random corpus generation and
// the upstream importer.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "excad/dataset.hpp"
#include "excad/mesh.hpp"
#include "excad/metrics.hpp"
#include "excad/pipeline.hpp"
#include "excad/point_cloud.hpp"
#include "excad/rng.hpp"
#include "excad/sampling.hpp"
#include "excad/sequence_io.hpp"
#include "excad/solid.hpp"
#include "excad/validity.hpp"

namespace {

using namespace excad;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int dense_n = kDefaultDenseCount;
  double radius = kDefaultFilterRadius;
  int points = kDefaultCloudSize;
  int workers = 1;
};

int cmd_parse(const std::vector<std::string>& files, bool lenient, const std::string& out) {
  int failures = 0;
  for (const std::string& file : files) {
    try {
      const CadSequence seq = read_sequence_file(
          file, lenient ? GrammarPolicy::Lenient : GrammarPolicy::Strict);
      std::printf("%s: ok id=%s commands=%zu extrusions=%d class=%s\n", file.c_str(),
                  seq.id.c_str(), seq.size(), seq.extrusion_count(),
                  classify(seq) == ModelClass::Simple ? "simple" : "complex");
      if (!out.empty() && files.size() == 1) {
        write_sequence_file(out, seq);
      }
    } catch (const Error& e) {
      std::fprintf(stderr, "%s: %s\n", file.c_str(), e.what());
      ++failures;
    }
  }
  return failures == static_cast<int>(files.size()) && !files.empty() ? 1 : 0;
}

int cmd_build(const std::string& file, const std::string& out_dir, const std::string& format) {
  const CadSequence seq = read_sequence_file(file);
  const CsgModel model = build_model(seq);
  std::filesystem::create_directories(out_dir);
  for (std::size_t i = 0; i < model.solids.size(); ++i) {
    const TriangleMesh mesh = solid_mesh(model.solids[i]);
    char name[48];
    std::snprintf(name, sizeof(name), "%s_prim%zu", seq.id.c_str(), i);
    if (format == "obj" || format == "both") {
      write_obj(std::filesystem::path(out_dir) / (std::string(name) + ".obj"), mesh);
    }
    if (format == "ply" || format == "both") {
      write_mesh_ply(std::filesystem::path(out_dir) / (std::string(name) + ".ply"), mesh);
    }
  }
  std::printf("%s: wrote %zu primitive meshes to %s\n", seq.id.c_str(),
              model.solids.size(), out_dir.c_str());
  return 0;
}

int cmd_sample(const std::string& file, const std::string& out, const GlobalOptions& opt) {
  const CadSequence seq = read_sequence_file(file);
  const CsgModel model = build_model(seq);
  const PointCloud cloud =
      sample_surface(model, opt.points, mix_seed(opt.seed, fnv1a64(seq.id)));
  write_cloud(out, cloud);
  std::printf("%s: sampled %zu points -> %s\n", seq.id.c_str(), cloud.size(), out.c_str());
  return 0;
}

int cmd_segment(const std::string& file, const std::string& out_dir,
                const GlobalOptions& opt) {
  const CadSequence seq = read_sequence_file(file);
  const SegmentationConfig config{opt.dense_n, opt.radius, opt.points};
  const SegmentationResult result =
      segment_model(seq, config, mix_seed(opt.seed, fnv1a64(seq.id)));

  const std::filesystem::path dir = std::filesystem::path(out_dir) / seq.id;
  std::filesystem::create_directories(dir);
  std::ofstream manifest(std::filesystem::path(out_dir) / "segment_manifest.csv",
                         std::ios::binary | std::ios::app);
  for (const PrimitiveSample& sample : result.samples) {
    char name[32];
    std::snprintf(name, sizeof(name), "prim_%d", sample.index);
    write_sequence_file(dir / (std::string(name) + ".json"), sample.sequence);
    write_ply(dir / (std::string(name) + ".ply"), sample.cloud);
    char row[256];
    std::snprintf(row, sizeof(row), "%s,%d,%.6f\n", seq.id.c_str(), sample.index,
                  sample.retained_fraction);
    manifest << row;
  }
  nlohmann::ordered_json skips = nlohmann::ordered_json::array();
  for (const SkipRecord& skip : result.skips) {
    skips.push_back({{"index", skip.index},
                     {"sequence", nlohmann::ordered_json::parse(
                                      serialize_sequence(skip.sequence))}});
  }
  std::ofstream skips_out(dir / "skips.json", std::ios::binary);
  skips_out << skips.dump(2) << "\n";
  std::printf("%s: %zu primitives, %zu skips -> %s\n", seq.id.c_str(),
              result.samples.size(), result.skips.size(), dir.string().c_str());
  return 0;
}

int cmd_validate(const std::vector<std::string>& files, bool as_json) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const std::string& file : files) {
    try {
      const CadSequence seq = read_sequence_file(file, GrammarPolicy::Lenient);
      const ValidityReport report = validate_model(seq);
      if (as_json) {
        doc.push_back({{"id", seq.id}, {"valid", report.valid()},
                       {"flags", report.summary()}});
      } else {
        std::printf("%s: %s\n", seq.id.c_str(),
                    report.valid() ? "valid" : report.summary().c_str());
      }
    } catch (const Error& e) {
      if (as_json) {
        doc.push_back({{"id", file}, {"valid", false}, {"flags", e.what()}});
      } else {
        std::printf("%s: parse failure: %s\n", file.c_str(), e.what());
      }
    }
  }
  if (as_json) std::printf("%s\n", doc.dump(2).c_str());
  return 0;
}

int cmd_metrics(const std::string& gt_dir, const std::string& pred_dir,
                const std::string& out_dir, const GlobalOptions& opt) {
  std::vector<std::filesystem::path> gt_files;
  for (const auto& entry : std::filesystem::directory_iterator(gt_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      gt_files.push_back(entry.path());
    }
  }
  std::sort(gt_files.begin(), gt_files.end());
  if (gt_files.empty()) throw IoError("no ground-truth sequences in " + gt_dir);

  std::vector<MetricsReport> reports;
  for (const auto& gt_file : gt_files) {
    const CadSequence gt = read_sequence_file(gt_file);
    const std::uint64_t seed = mix_seed(opt.seed, fnv1a64(gt.id));

    // Ground-truth cloud: use the provided one if present, else resample.
    PointCloud gt_cloud;
    const std::filesystem::path cloud_path =
        std::filesystem::path(gt_dir) / (gt_file.stem().string() + ".ply");
    if (std::filesystem::exists(cloud_path)) {
      gt_cloud = read_ply(cloud_path);
    } else {
      gt_cloud = sample_surface(build_model(gt), opt.points, mix_seed(seed, 0x67u));
    }

    const std::filesystem::path pred_path =
        std::filesystem::path(pred_dir) / gt_file.filename();
    CadSequence pred;
    bool parse_failed = false;
    std::string parse_error;
    if (std::filesystem::exists(pred_path)) {
      try {
        pred = read_sequence_file(pred_path, GrammarPolicy::Lenient);
      } catch (const Error& e) {
        parse_failed = true;
        parse_error = e.what();
      }
    } else {
      parse_failed = true;
      parse_error = "missing prediction";
    }
    MetricsReport report = evaluate_pair(gt, gt_cloud, pred, seed);
    report.id = gt.id;
    if (parse_failed) {
      report.valid = false;
      report.chamfer.reset();
      report.flags.push_back("ParseError: " + parse_error);
    }
    reports.push_back(std::move(report));
  }

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream csv(std::filesystem::path(out_dir) / "reports.csv", std::ios::binary);
    csv << reports_to_csv(reports);
  }
  const AggregateReport agg = aggregate(reports);
  {
    std::ofstream js(std::filesystem::path(out_dir) / "aggregate.json", std::ios::binary);
    js << aggregate_to_json(agg);
  }
  std::printf("evaluated %d pairs: acc_cmd=%.4f acc_param=%.4f ir=%.4f", agg.total,
              agg.acc_cmd, agg.acc_param, agg.invalid_ratio);
  if (agg.median_cd_x1000) std::printf(" median_cd_x1000=%.4f", *agg.median_cd_x1000);
  std::printf("\n");
  return 0;
}

int cmd_dataset_ingest(const std::string& dir, const std::string& out,
                       const std::string& json_out, const std::string& split_file) {
  DatasetManifest manifest = ingest(dir);
  // Manifest paths are stored relative to the manifest location.
  const std::filesystem::path out_path(out);
  const std::filesystem::path base =
      out_path.has_parent_path() ? out_path.parent_path() : std::filesystem::path(".");
  for (ManifestEntry& entry : manifest.entries) {
    entry.path = std::filesystem::relative(manifest.base_dir / entry.path, base).string();
  }
  manifest.base_dir = base;
  if (!split_file.empty()) apply_split_file(manifest, split_file);
  write_manifest_csv(out_path, manifest);
  if (!json_out.empty()) write_manifest_json(json_out, manifest);
  std::printf("ingested %zu models (%zu failures) -> %s\n", manifest.entries.size(),
              manifest.failures.size(), out.c_str());
  for (const ParseFailure& f : manifest.failures) {
    std::fprintf(stderr, "  skipped %s: %s\n", f.path.c_str(), f.message.c_str());
  }
  return 0;
}

int cmd_dataset_run(const std::string& manifest_path, const std::string& mode_name,
                    const std::string& out_dir, const GlobalOptions& opt) {
  const DatasetManifest manifest = read_manifest_csv(manifest_path);
  const PipelineMode mode =
      mode_name == "baseline" ? PipelineMode::Baseline : PipelineMode::Segmented;
  PipelineConfig config;
  config.dense_n = opt.dense_n;
  config.radius = opt.radius;
  config.cloud_size = opt.points;
  config.seed = opt.seed;
  config.workers = opt.workers;
  const PipelineResult result = run_pipeline(manifest, mode, config, out_dir);
  std::printf("%s pipeline: %lld samples, %lld skips, %zu failures -> %s\n",
              mode_name.c_str(), static_cast<long long>(result.stats.n_primitive),
              static_cast<long long>(result.stats.n_skips), result.failures.size(),
              out_dir.c_str());
  for (const ParseFailure& f : result.failures) {
    std::fprintf(stderr, "  failed %s: %s\n", f.path.c_str(), f.message.c_str());
  }
  return 0;
}

int cmd_dataset_stats(const std::string& manifest_path, const std::string& segmented_dir,
                      const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  CorpusStats stats;
  if (!manifest_path.empty()) {
    stats = corpus_stats(read_manifest_csv(manifest_path));
  } else {
    // Recompute from a segmented output tree: one row per primitive in the
    // pipeline manifest, skips from the per-model skip files.
    const std::filesystem::path dir(segmented_dir);
    std::ifstream man(dir / "segment_manifest.csv");
    if (!man) throw IoError("no segment_manifest.csv in " + segmented_dir);
    std::string line;
    std::getline(man, line);
    std::map<std::string, bool> parents;
    while (std::getline(man, line)) {
      if (line.empty()) continue;
      std::stringstream ls(line);
      std::string id, index, split, cls, json_rel;
      std::getline(ls, id, ',');
      std::getline(ls, index, ',');
      std::getline(ls, split, ',');
      std::getline(ls, cls, ',');
      std::getline(ls, json_rel, ',');
      const CadSequence seq = read_sequence_file(dir / json_rel);
      const int len = std::clamp<int>(static_cast<int>(seq.size()), 0, kMaxCommands);
      ++stats.length_hist[static_cast<std::size_t>(len)];
      ++stats.extrusion_hist[static_cast<std::size_t>(
          std::clamp(seq.extrusion_count(), 0, kMaxExtrusions))];
      ++stats.n_primitive;
      if (!parents.count(id)) {
        parents[id] = true;
        ++(cls == "simple" ? stats.n_simple : stats.n_complex);
      }
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (!entry.is_directory()) continue;
      const auto skips_path = entry.path() / "skips.json";
      if (!std::filesystem::exists(skips_path)) continue;
      std::ifstream in(skips_path);
      nlohmann::json doc = nlohmann::json::parse(in);
      stats.n_skips += static_cast<std::int64_t>(doc.size());
    }
  }
  write_stats_csv(out_dir, stats);
  write_stats_json(std::filesystem::path(out_dir) / "stats.json", stats);
  std::printf("stats: %lld models (%lld simple, %lld complex), %lld primitives, %lld skips\n",
              static_cast<long long>(stats.total_models()),
              static_cast<long long>(stats.n_simple),
              static_cast<long long>(stats.n_complex),
              static_cast<long long>(stats.n_primitive),
              static_cast<long long>(stats.n_skips));
  return 0;
}

int cmd_gen(const std::string& out_dir, int count, int max_ext, const GlobalOptions& opt) {
  std::filesystem::create_directories(out_dir);
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "gen_%06d", i);
    try {
      const CadSequence seq =
          gen_random_sequence(mix_seed(opt.seed, static_cast<std::uint64_t>(i)), max_ext, id);
      write_sequence_file(std::filesystem::path(out_dir) / (std::string(id) + ".json"), seq);
    } catch (const GenerationError& e) {
      std::fprintf(stderr, "%s: %s\n", id, e.what());
      ++failures;
    }
  }
  std::printf("generated %d models (%d failures) -> %s\n", count - failures, failures,
              out_dir.c_str());
  return failures == count && count > 0 ? 1 : 0;
}

int cmd_import(const std::string& in_dir, const std::string& out_dir) {
  const ImportResult result = import_upstream(in_dir, out_dir);
  std::printf("imported %d models, skipped %zu -> %s\n", result.converted,
              result.skipped.size(), out_dir.c_str());
  for (const ParseFailure& f : result.skipped) {
    std::fprintf(stderr, "  skipped %s: %s\n", f.path.c_str(), f.message.c_str());
  }
  return result.converted == 0 && !result.skipped.empty() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"sketch-and-extrude CAD sequence toolkit"};
  app.require_subcommand(1);
  // Let global flags appear after the subcommand name.
  app.fallthrough();
  app.set_config("--config")->description("key=value defaults file");

  GlobalOptions opt;
  app.add_option("--seed", opt.seed, "global random seed")->capture_default_str();
  app.add_option("--dense-n", opt.dense_n, "dense sample size")->capture_default_str();
  app.add_option("--radius", opt.radius, "neighbor filter radius")->capture_default_str();
  app.add_option("--points", opt.points, "points per output cloud")->capture_default_str();
  app.add_option("--workers", opt.workers, "worker threads")->capture_default_str();

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "parse and check sequence files");
  std::vector<std::string> parse_files;
  bool parse_lenient = false;
  std::string parse_out;
  parse_cmd->add_option("files", parse_files, "sequence files")->required();
  parse_cmd->add_flag("--lenient", parse_lenient, "tolerate grammar violations");
  parse_cmd->add_option("-o,--out", parse_out, "re-serialize canonically (single input)");

  // build
  auto* build_cmd = app.add_subcommand("build", "export per-primitive meshes");
  std::string build_file, build_out, build_format = "obj";
  build_cmd->add_option("file", build_file, "sequence file")->required();
  build_cmd->add_option("-o,--out", build_out, "output directory")->required();
  build_cmd->add_option("--format", build_format, "obj|ply|both")
      ->check(CLI::IsMember({"obj", "ply", "both"}));

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "sample a surface point cloud");
  std::string sample_file, sample_out;
  sample_cmd->add_option("file", sample_file, "sequence file")->required();
  sample_cmd->add_option("-o,--out", sample_out, "output cloud (.ply or .xyz)")->required();

  // segment
  auto* segment_cmd = app.add_subcommand("segment", "emit primitive training pairs");
  std::string segment_file, segment_out;
  segment_cmd->add_option("file", segment_file, "sequence file")->required();
  segment_cmd->add_option("-o,--out", segment_out, "output directory")->required();

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "geometric validity reports");
  std::vector<std::string> validate_files;
  bool validate_json = false;
  validate_cmd->add_option("files", validate_files, "sequence files")->required();
  validate_cmd->add_flag("--json", validate_json, "emit a JSON array");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "evaluate predictions against gt");
  std::string metrics_gt, metrics_pred, metrics_out;
  metrics_cmd->add_option("--gt", metrics_gt, "ground-truth directory")->required();
  metrics_cmd->add_option("--pred", metrics_pred, "prediction directory")->required();
  metrics_cmd->add_option("-o,--out", metrics_out, "report directory")->required();

  // dataset
  auto* dataset_cmd = app.add_subcommand("dataset", "corpus-scale operations");
  dataset_cmd->require_subcommand(1);
  auto* ingest_cmd = dataset_cmd->add_subcommand("ingest", "scan a corpus directory");
  std::string ingest_dir, ingest_out, ingest_json, ingest_split;
  ingest_cmd->add_option("dir", ingest_dir, "corpus directory")->required();
  ingest_cmd->add_option("-o,--out", ingest_out, "manifest CSV")->required();
  ingest_cmd->add_option("--json", ingest_json, "also write a JSON manifest");
  ingest_cmd->add_option("--split-file", ingest_split, "explicit id,split overrides");

  auto* run_cmd = dataset_cmd->add_subcommand("run", "run the batch pipeline");
  std::string run_manifest, run_mode, run_out;
  run_cmd->add_option("--manifest", run_manifest, "manifest CSV")->required();
  run_cmd->add_option("--mode", run_mode, "baseline|segmented")
      ->required()
      ->check(CLI::IsMember({"baseline", "segmented"}));
  run_cmd->add_option("-o,--out", run_out, "output directory")->required();

  auto* stats_cmd = dataset_cmd->add_subcommand("stats", "corpus statistics");
  std::string stats_manifest, stats_segmented, stats_out;
  stats_cmd->add_option("--manifest", stats_manifest, "manifest CSV");
  stats_cmd->add_option("--segmented", stats_segmented, "segmented output directory");
  stats_cmd->add_option("-o,--out", stats_out, "output directory")->required();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a random test corpus");
  std::string gen_out;
  int gen_count = 100;
  int gen_max_ext = kMaxExtrusions;
  gen_cmd->add_option("-o,--out", gen_out, "output directory")->required();
  gen_cmd->add_option("--count", gen_count, "number of models")->capture_default_str();
  gen_cmd->add_option("--max-ext", gen_max_ext, "max extrusions per model")
      ->check(CLI::Range(1, kMaxExtrusions))
      ->capture_default_str();

  // import-upstream
  auto* import_cmd =
      app.add_subcommand("import-upstream", "translate upstream raw JSON (best effort)");
  std::string import_in, import_out;
  import_cmd->add_option("dir", import_in, "upstream directory")->required();
  import_cmd->add_option("-o,--out", import_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(parse_files, parse_lenient, parse_out);
    if (build_cmd->parsed()) return cmd_build(build_file, build_out, build_format);
    if (sample_cmd->parsed()) return cmd_sample(sample_file, sample_out, opt);
    if (segment_cmd->parsed()) return cmd_segment(segment_file, segment_out, opt);
    if (validate_cmd->parsed()) return cmd_validate(validate_files, validate_json);
    if (metrics_cmd->parsed()) return cmd_metrics(metrics_gt, metrics_pred, metrics_out, opt);
    if (dataset_cmd->parsed()) {
      if (ingest_cmd->parsed()) {
        return cmd_dataset_ingest(ingest_dir, ingest_out, ingest_json, ingest_split);
      }
      if (run_cmd->parsed()) return cmd_dataset_run(run_manifest, run_mode, run_out, opt);
      if (stats_cmd->parsed()) {
        if (stats_manifest.empty() == stats_segmented.empty()) {
          std::fprintf(stderr, "stats: give exactly one of --manifest or --segmented\n");
          return 2;
        }
        return cmd_dataset_stats(stats_manifest, stats_segmented, stats_out);
      }
    }
    if (gen_cmd->parsed()) return cmd_gen(gen_out, gen_count, gen_max_ext, opt);
    if (import_cmd->parsed()) return cmd_import(import_in, import_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
  return 0;
}
