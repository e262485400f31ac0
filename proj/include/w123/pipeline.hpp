#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "w123/graph.hpp"
#include "w123/profile.hpp"
#include "w123/weighting.hpp"

namespace w123 {

struct RunOptions {
    bool keep_trace = false;      // u-stage trace lines in the outcome
    bool record_wall_time = false;  // off by default so outcomes compare byte for byte
};

struct PipelineOutcome {
    bool success = false;
    std::string stage;   // failing stage ("precheck", "partition", "w-stage", "u-stage", "verify")
    std::string code;    // error code of the failure
    std::string reason;
    EdgeWeighting weighting;  // set only on success
    std::size_t attempts = 0;
    std::size_t resamples_partition = 0;
    std::size_t resamples_wstage = 0;
    std::size_t conflicts = 0;
    double wall_ms = 0;
    nlohmann::json details;  // per-stage stats, audits and diagnostics
    std::vector<nlohmann::json> trace;

    std::string status() const { return success ? "success" : "stage-failure"; }
};

void to_json(nlohmann::json& j, const PipelineOutcome& o);

// Graphs with a component that is a single edge have no vertex-colouring
// weighting at all; returns such an edge.
std::optional<EdgeId> find_isolated_edge(const Graph& g);

// Partition, W-stage, U-stage and final verification. A stage failure
// triggers up to budgets.pipeline_restarts whole restarts with derived seeds.
// A success outcome always carries a weighting that passed final_verify.
PipelineOutcome run(const Graph& g, const ProfileConstants& p, std::uint64_t seed,
                    const Budgets& budgets = {}, const RunOptions& opts = {});

}  // namespace w123
