#include "excad/segmentation.hpp"

#include <map>

#include "excad/rng.hpp"
#include "excad/sampling.hpp"
#include "excad/solid.hpp"

namespace excad {

namespace {

CadSequence force_new_body(const CadSequence& seq) {
  CadSequence out = seq;
  for (Command& c : out.commands) {
    if (auto* ext = std::get_if<ExtrudeCmd>(&c)) ext->op = BoolOp::New;
  }
  return out;
}

} // namespace

SegmentationResult segment_model(const CadSequence& seq, const SegmentationConfig& config,
                                 std::uint64_t seed) {
  SegmentationResult result;

  const CsgModel full = build_model(seq);
  const PointCloud dense_full =
      sample_surface(full, config.dense_n, mix_seed(seed, 0xF011u));

  const std::vector<CadSequence> primitives = split_extrusions(seq);
  for (std::size_t i = 0; i < primitives.size(); ++i) {
    const CadSequence& prim = primitives[i];
    const std::uint64_t prim_seed = mix_seed(seed, 0x9B1Du + i);

    // Cut extrusions are modeled as positive solids for sampling; the
    // emitted sequence keeps the original boolean op.
    const CsgModel prim_model = build_model(force_new_body(prim));
    const PointCloud dense_prim =
        sample_surface(prim_model, config.dense_n, mix_seed(prim_seed, 1));
    const PointCloud filtered = radius_filter(dense_prim, dense_full, config.radius);

    if (filtered.empty()) {
      result.skips.push_back({seq.id, static_cast<int>(i), prim});
      continue;
    }
    PrimitiveSample sample;
    sample.parent_id = seq.id;
    sample.index = static_cast<int>(i);
    sample.sequence = prim;
    sample.cloud = fps_downsample(filtered, config.cloud_size, mix_seed(prim_seed, 2));
    sample.retained_fraction =
        static_cast<double>(filtered.size()) / static_cast<double>(dense_prim.size());
    result.samples.push_back(std::move(sample));
  }
  return result;
}

StatsTable primitive_cloud_stats(const std::vector<PrimitiveSample>& samples) {
  StatsTable table;
  std::map<std::string, int> per_parent;
  double sum = 0.0;
  for (const PrimitiveSample& s : samples) {
    table.rows.push_back({s.parent_id, s.index, s.retained_fraction});
    ++per_parent[s.parent_id];
    sum += s.retained_fraction;
  }
  for (const auto& [id, count] : per_parent) table.per_parent_counts.push_back(count);
  if (!samples.empty()) table.mean_retained = sum / static_cast<double>(samples.size());
  return table;
}

} // namespace excad
