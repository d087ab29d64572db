#include "contactforge/report.hpp"

namespace cf {

using nlohmann::json;

json GridInfo::to_json() const {
    json j;
    j["shells"] = shells;
    j["r_min"] = r_min;
    j["r_max"] = r_max;
    j["sphere_points"] = sphere_points;
    j["time_samples"] = time_samples;
    j["s_samples"] = s_samples;
    j["seed"] = seed;
    j["n"] = n;
    return j;
}

static json vec_to_json(const RVec& v) {
    json a = json::array();
    for (long i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json BoundReport::to_json() const {
    json j;
    j["quantity"] = quantity;
    j["anchor"] = anchor;
    j["kind"] = "sampled lower bound";  // evidence, not proof
    j["min_value"] = min_value;
    j["witness"] = vec_to_json(witness);
    j["witness_t"] = witness_t;
    j["witness_s"] = witness_s;
    j["grid"] = grid.to_json();
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["evaluated"] = evaluated;
    j["skipped"] = skipped;
    return j;
}

json MuEstimate::to_json() const {
    json j;
    j["mu_hat"] = mu_hat;
    j["note"] = "grid minima under-estimate suprema: mu_hat <= mu(Delta)";
    j["witness"] = vec_to_json(witness);
    j["witness_t"] = witness_t;
    j["witness_s"] = witness_s;
    j["grid"] = grid.to_json();
    json stages;
    for (const auto& [name, v] : stage_minima) stages[name] = v;
    j["stage_minima"] = stages;
    return j;
}

}  // namespace cf
