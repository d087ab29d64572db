#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "contactforge/common.hpp"

namespace cf {

// Summary of the grid a report was computed on (kept in the report so the
// result is reproducible from the report alone).
struct GridInfo {
    int shells = 0;
    double r_min = 0, r_max = 0;
    int sphere_points = 0;
    int time_samples = 0;
    int s_samples = 0;
    std::uint64_t seed = 0;
    int n = 0;
    nlohmann::json to_json() const;
};

// Result of a sampled bound verification. Grid minima are evidence, not
// proof; every serialized report carries the "sampled lower bound" label.
struct BoundReport {
    std::string quantity;  // what was minimized
    std::string anchor;    // stable claim id for cross-referencing
    double min_value = 0;
    RVec witness;          // real coordinates of the argmin point
    double witness_t = 0;
    double witness_s = 0;
    GridInfo grid;
    double tolerance = 0;
    bool pass = false;
    long evaluated = 0;
    long skipped = 0;

    nlohmann::json to_json() const;
};

struct MuEstimate {
    double mu_hat = 0;  // -(grid min of F_s/(pi|z|^2)); grid minima under-estimate suprema
    RVec witness;
    double witness_t = 0;
    double witness_s = 0;
    GridInfo grid;
    std::vector<std::pair<std::string, double>> stage_minima;  // per-stage min of F/(pi|z|^2)
    nlohmann::json to_json() const;
};

}  // namespace cf
