#include "excad/pipeline.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "excad/rng.hpp"
#include "excad/sampling.hpp"
#include "excad/sequence_io.hpp"
#include "excad/solid.hpp"

namespace excad {

namespace {

struct SampleOutcome {
  bool failed = false;
  std::string error;
  // One row per emitted primitive: index, relative json path, relative ply
  // path, retained fraction.
  struct Row {
    int index;
    std::string json_path;
    std::string ply_path;
    double retained;
  };
  std::vector<Row> rows;
  int skips = 0;
};

void write_skips_json(const std::filesystem::path& path, const std::vector<SkipRecord>& skips) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const SkipRecord& s : skips) {
    nlohmann::ordered_json rec;
    rec["index"] = s.index;
    rec["sequence"] = nlohmann::ordered_json::parse(serialize_sequence(s.sequence));
    doc.push_back(std::move(rec));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

SampleOutcome process_baseline(const DatasetManifest& manifest, const ManifestEntry& entry,
                               const PipelineConfig& config,
                               const std::filesystem::path& out_dir) {
  SampleOutcome outcome;
  try {
    const CadSequence seq = read_sequence_file(manifest.resolve(entry));
    const CsgModel model = build_model(seq);
    const std::uint64_t seed = mix_seed(config.seed, fnv1a64(entry.id));
    const PointCloud cloud = sample_surface(model, config.cloud_size, seed);
    const std::string rel = "clouds/" + entry.id + ".ply";
    write_ply(out_dir / rel, cloud);
    outcome.rows.push_back({0, entry.path, rel, 1.0});
  } catch (const Error& e) {
    outcome.failed = true;
    outcome.error = e.what();
  }
  return outcome;
}

SampleOutcome process_segmented(const DatasetManifest& manifest, const ManifestEntry& entry,
                                const PipelineConfig& config,
                                const std::filesystem::path& out_dir) {
  SampleOutcome outcome;
  try {
    const CadSequence seq = read_sequence_file(manifest.resolve(entry));
    const std::uint64_t seed = mix_seed(config.seed, fnv1a64(entry.id));
    const std::filesystem::path model_dir = out_dir / entry.id;
    std::filesystem::create_directories(model_dir);

    if (classify(seq) == ModelClass::Simple) {
      // A simple model is already a single extrusion: pair it with a plain
      // fixed-size cloud, no filtering involved.
      const CsgModel model = build_model(seq);
      const PointCloud cloud = sample_surface(model, config.cloud_size, seed);
      write_sequence_file(model_dir / "prim_0.json", seq);
      write_ply(model_dir / "prim_0.ply", cloud);
      write_skips_json(model_dir / "skips.json", {});
      outcome.rows.push_back({0, entry.id + "/prim_0.json", entry.id + "/prim_0.ply", 1.0});
      return outcome;
    }

    const SegmentationConfig seg_config{config.dense_n, config.radius, config.cloud_size};
    const SegmentationResult result = segment_model(seq, seg_config, seed);
    for (const PrimitiveSample& sample : result.samples) {
      char name[32];
      std::snprintf(name, sizeof(name), "prim_%d", sample.index);
      const std::string json_rel = entry.id + "/" + name + ".json";
      const std::string ply_rel = entry.id + "/" + name + ".ply";
      write_sequence_file(out_dir / json_rel, sample.sequence);
      write_ply(out_dir / ply_rel, sample.cloud);
      outcome.rows.push_back({sample.index, json_rel, ply_rel, sample.retained_fraction});
    }
    write_skips_json(model_dir / "skips.json", result.skips);
    outcome.skips = static_cast<int>(result.skips.size());
  } catch (const Error& e) {
    outcome.failed = true;
    outcome.error = e.what();
  }
  return outcome;
}

} // namespace

PipelineResult run_pipeline(const DatasetManifest& manifest, PipelineMode mode,
                            const PipelineConfig& config,
                            const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  if (mode == PipelineMode::Baseline) {
    std::filesystem::create_directories(out_dir / "clouds");
  }

  const std::size_t n = manifest.entries.size();
  std::vector<SampleOutcome> outcomes(n);
  std::atomic<std::size_t> cursor{0};
  const int workers = std::max(1, config.workers);

  auto work = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= n) break;
      const ManifestEntry& entry = manifest.entries[i];
      outcomes[i] = mode == PipelineMode::Baseline
                        ? process_baseline(manifest, entry, config, out_dir)
                        : process_segmented(manifest, entry, config, out_dir);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  // Aggregate files are assembled in manifest order, independent of which
  // worker finished first.
  PipelineResult result;
  const char* manifest_name =
      mode == PipelineMode::Baseline ? "baseline_manifest.csv" : "segment_manifest.csv";
  std::ofstream man(out_dir / manifest_name, std::ios::binary);
  if (!man) throw IoError("cannot write pipeline manifest");
  man << "parent_id,index,split,class,json,ply,retained_fraction\n";

  char buf[64];
  for (std::size_t i = 0; i < n; ++i) {
    const ManifestEntry& entry = manifest.entries[i];
    const SampleOutcome& outcome = outcomes[i];
    if (outcome.failed) {
      result.failures.push_back({entry.id, outcome.error});
      continue;
    }
    ++(entry.model_class == ModelClass::Simple ? result.stats.n_simple
                                               : result.stats.n_complex);
    const int len = std::clamp(entry.n_commands, 0, kMaxCommands);
    const int ext = std::clamp(entry.n_extrusions, 0, kMaxExtrusions);
    ++result.stats.length_hist[static_cast<std::size_t>(len)];
    ++result.stats.extrusion_hist[static_cast<std::size_t>(ext)];
    result.stats.n_primitive += static_cast<std::int64_t>(outcome.rows.size());
    result.stats.n_skips += outcome.skips;
    for (const SampleOutcome::Row& row : outcome.rows) {
      std::snprintf(buf, sizeof(buf), "%.6f", row.retained);
      man << entry.id << "," << row.index << "," << split_name(entry.split) << ","
          << (entry.model_class == ModelClass::Simple ? "simple" : "complex") << ","
          << row.json_path << "," << row.ply_path << "," << buf << "\n";
    }
  }
  man.close();

  write_stats_csv(out_dir, result.stats);
  write_stats_json(out_dir / "stats.json", result.stats);
  return result;
}

} // namespace excad
