#include "excad/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "excad/errors.hpp"
#include "excad/rng.hpp"
#include "excad/sequence_io.hpp"

namespace excad {

const char* split_name(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "?";
}

namespace {

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  throw IoError("unknown split name '" + name + "'");
}

// Salt folded into the id hash before the unit-interval mapping.
constexpr std::uint64_t kSplitSalt = 0x5EED5A17ull;

const char* class_name(ModelClass cls) {
  return cls == ModelClass::Simple ? "simple" : "complex";
}

ModelClass class_from_name(const std::string& name) {
  if (name == "simple") return ModelClass::Simple;
  if (name == "complex") return ModelClass::Complex;
  throw IoError("unknown class name '" + name + "'");
}

} // namespace

Split split_of_id(const std::string& id) {
  const std::uint64_t h = splitmix64(fnv1a64(id) ^ kSplitSalt);
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  if (u < 0.90) return Split::Train;
  if (u < 0.95) return Split::Val;
  return Split::Test;
}

DatasetManifest ingest(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError(dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  DatasetManifest manifest;
  manifest.base_dir = dir;
  for (const auto& file : files) {
    try {
      const CadSequence seq = read_sequence_file(file);
      ManifestEntry entry;
      entry.id = seq.id;
      entry.path = file.filename().string();
      entry.split = split_of_id(entry.id);
      entry.model_class = classify(seq);
      entry.n_commands = static_cast<int>(seq.size());
      entry.n_extrusions = seq.extrusion_count();
      manifest.entries.push_back(std::move(entry));
    } catch (const Error& e) {
      manifest.failures.push_back({file.filename().string(), e.what()});
    }
  }
  if (manifest.entries.empty()) {
    throw IoError("no sequence files parsed in " + dir.string());
  }
  return manifest;
}

void write_manifest_csv(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "id,path,split,class,n_commands,n_extrusions\n";
  for (const ManifestEntry& e : manifest.entries) {
    out << e.id << "," << e.path << "," << split_name(e.split) << ","
        << class_name(e.model_class) << "," << e.n_commands << "," << e.n_extrusions
        << "\n";
  }
}

void write_manifest_json(const std::filesystem::path& path, const DatasetManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["base_dir"] = manifest.base_dir.string();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const ManifestEntry& e : manifest.entries) {
    entries.push_back({{"id", e.id},
                       {"path", e.path},
                       {"split", split_name(e.split)},
                       {"class", class_name(e.model_class)},
                       {"n_commands", e.n_commands},
                       {"n_extrusions", e.n_extrusions}});
  }
  doc["entries"] = std::move(entries);
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const ParseFailure& f : manifest.failures) {
    failures.push_back({{"path", f.path}, {"message", f.message}});
  }
  doc["failures"] = std::move(failures);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

DatasetManifest read_manifest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  DatasetManifest manifest;
  manifest.base_dir = path.parent_path();
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty manifest");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols.size() != 6) throw IoError(path.string() + ": malformed row '" + line + "'");
    ManifestEntry e;
    e.id = cols[0];
    e.path = cols[1];
    e.split = split_from_name(cols[2]);
    e.model_class = class_from_name(cols[3]);
    e.n_commands = std::stoi(cols[4]);
    e.n_extrusions = std::stoi(cols[5]);
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

void apply_split_file(DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::unordered_map<std::string, Split> overrides;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError(path.string() + ": expected 'id,split'");
    overrides[line.substr(0, comma)] = split_from_name(line.substr(comma + 1));
  }
  for (ManifestEntry& e : manifest.entries) {
    const auto it = overrides.find(e.id);
    if (it != overrides.end()) e.split = it->second;
  }
}

CorpusStats corpus_stats(const DatasetManifest& manifest) {
  CorpusStats stats;
  for (const ManifestEntry& e : manifest.entries) {
    const int len = std::clamp(e.n_commands, 0, kMaxCommands);
    const int ext = std::clamp(e.n_extrusions, 0, kMaxExtrusions);
    ++stats.length_hist[static_cast<std::size_t>(len)];
    ++stats.extrusion_hist[static_cast<std::size_t>(ext)];
    if (e.model_class == ModelClass::Simple) {
      ++stats.n_simple;
    } else {
      ++stats.n_complex;
    }
  }
  return stats;
}

void write_stats_csv(const std::filesystem::path& dir, const CorpusStats& stats) {
  {
    std::ofstream out(dir / "stats_lengths.csv", std::ios::binary);
    if (!out) throw IoError("cannot write stats_lengths.csv");
    out << "length,count\n";
    for (int len = 1; len <= kMaxCommands; ++len) {
      out << len << "," << stats.length_hist[static_cast<std::size_t>(len)] << "\n";
    }
  }
  {
    std::ofstream out(dir / "stats_extrusions.csv", std::ios::binary);
    if (!out) throw IoError("cannot write stats_extrusions.csv");
    out << "extrusions,count\n";
    for (int ext = 1; ext <= kMaxExtrusions; ++ext) {
      out << ext << "," << stats.extrusion_hist[static_cast<std::size_t>(ext)] << "\n";
    }
  }
}

void write_stats_json(const std::filesystem::path& path, const CorpusStats& stats) {
  nlohmann::ordered_json doc;
  doc["models"] = stats.total_models();
  doc["simple"] = stats.n_simple;
  doc["complex"] = stats.n_complex;
  doc["primitive_samples"] = stats.n_primitive;
  doc["skips"] = stats.n_skips;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

} // namespace excad
