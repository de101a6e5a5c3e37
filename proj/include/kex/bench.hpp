#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kex/assembly.hpp"
#include "kex/instance.hpp"

namespace kex {

// Sensitization-band instance generator. Each recipient draws a sensitization
// level that scales its per-donor compatibility probability; arcs are sampled
// independently. Fully determined by the seed.
struct GenConfig {
    int rdp_count = 0;
    double ndd_fraction = 0.0;  // donors = round(fraction * pairs)
    double density = 0.5;       // base arc probability
    bool use_bands = false;     // scale density by recipient sensitization
    bool weighted = false;      // weights uniform on {1..91}, else 1
    std::uint64_t seed = 0;
};

Instance generate_instance(const GenConfig& cfg);

inline constexpr int kCsvSchemaVersion = 1;

// One line of benchmark output; `to_csv_row` follows the fixed column order
// given by `csv_header()`.
struct BenchRecord {
    std::string instance_id;
    CycleModel cycle = CycleModel::None;
    ChainModel chain = ChainModel::None;
    bool rcvf = false;
    TauMode tau = TauMode::Implicit;
    PositionMethod ps = PositionMethod::Bfs;
    std::string status;
    double objective = 0.0;
    double best_bound = 0.0;
    double lp_value = 0.0;
    double time_s = 0.0;
    int vars = 0;
    int constraints = 0;  // generated rows counted only once added
    int lazy_cuts = 0;
    std::string flags;  // cross-method consistency audit results
};

std::string csv_header();
std::string to_csv_row(const BenchRecord& r);

// Runs instances x methods from a JSON manifest, validates every extracted
// solution, and cross-checks objectives and bounds between methods on the
// same instance. Per-job failures become ERROR rows; the batch never aborts.
std::string run_benchmark(const std::string& manifest_json);

// Aggregates a benchmark CSV into per-metric matrices (cycle model rows,
// chain model columns) with marginal means, serialized as JSON.
std::string emit_heatmap(const std::string& csv_text);

}  // namespace kex
