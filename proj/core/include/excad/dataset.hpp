#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "excad/cad_lang.hpp"

namespace excad {

enum class Split : std::uint8_t { Train, Val, Test };

const char* split_name(Split split);

/// Deterministic 90/5/5 split assignment, a pure function of the id.
Split split_of_id(const std::string& id);

struct ManifestEntry {
  std::string id;
  std::string path; ///< relative to the manifest base directory
  Split split = Split::Train;
  ModelClass model_class = ModelClass::Simple;
  int n_commands = 0;
  int n_extrusions = 0;
};

struct ParseFailure {
  std::string path;
  std::string message;
};

struct DatasetManifest {
  std::filesystem::path base_dir;
  std::vector<ManifestEntry> entries;
  std::vector<ParseFailure> failures;

  std::filesystem::path resolve(const ManifestEntry& entry) const {
    return base_dir / entry.path;
  }
};

/// Parses every .json sequence file in a directory (sorted by filename),
/// classifies it and assigns its split. Per-file parse failures are
/// collected, not fatal; an IoError is raised only when nothing parses.
DatasetManifest ingest(const std::filesystem::path& dir);

void write_manifest_csv(const std::filesystem::path& path, const DatasetManifest& manifest);
void write_manifest_json(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest read_manifest_csv(const std::filesystem::path& path);

/// Replaces split assignments with an explicit "id,split" listing, for exact
/// replication of an externally defined split.
void apply_split_file(DatasetManifest& manifest, const std::filesystem::path& path);

struct CorpusStats {
  std::array<std::int64_t, kMaxCommands + 1> length_hist{};
  std::array<std::int64_t, kMaxExtrusions + 1> extrusion_hist{};
  std::int64_t n_simple = 0;
  std::int64_t n_complex = 0;
  std::int64_t n_primitive = 0;
  std::int64_t n_skips = 0;

  std::int64_t total_models() const { return n_simple + n_complex; }
};

CorpusStats corpus_stats(const DatasetManifest& manifest);

/// stats_lengths.csv and stats_extrusions.csv under `dir`.
void write_stats_csv(const std::filesystem::path& dir, const CorpusStats& stats);
void write_stats_json(const std::filesystem::path& path, const CorpusStats& stats);

/// Deterministic random sequence generator for test corpora: grammar-valid
/// by construction, resampled (up to 100 attempts) until the model passes
/// the geometric validity checks and exposes a nonempty surface. Throws
/// GenerationError when the attempt budget is exhausted.
CadSequence gen_random_sequence(std::uint64_t seed, int max_ext);
CadSequence gen_random_sequence(std::uint64_t seed, int max_ext, const std::string& id);

struct ImportResult {
  int converted = 0;
  std::vector<ParseFailure> skipped;
};

/// Best-effort translation of upstream raw construction-history JSON into
/// the native format. Only the sketch-and-extrude subset is handled;
/// unsupported constructs are logged and skipped.
ImportResult import_upstream(const std::filesystem::path& in_dir,
                             const std::filesystem::path& out_dir);

} // namespace excad
