#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "w123/graph.hpp"
#include "w123/partition.hpp"
#include "w123/profile.hpp"
#include "w123/weighting.hpp"

namespace w123 {

// owned[u]: the edges of E(U) at u that only u may alter, ascending ids.
// Empty for vertices outside U.
struct EStar {
    std::vector<std::vector<EdgeId>> owned;
};

// Joins an auxiliary vertex to every odd-degree vertex of G[U], walks an
// Euler circuit of each component (from its lowest-id real vertex) and gives
// every real edge to the vertex it leaves.
EStar build_estar(const Graph& g, const VertexSet& u_set);

struct EStarAudit {
    std::vector<EdgeId> shared;     // owned by two vertices
    std::vector<EdgeId> stray;      // owned but not in E(U), or not at its owner
    std::vector<EdgeId> unowned;    // in E(U) but owned by nobody
    std::vector<Vertex> too_small;  // |owned(u)| < d_U(u)/2 - 1

    bool ok() const { return shared.empty() && stray.empty() && unowned.empty() && too_small.empty(); }
};

EStarAudit audit_estar(const Graph& g, const VertexSet& u_set, const EStar& es);

// Bases b of the admissible pairs {b, b+1}: residue r with r and r+1 both
// reserved. With the reserved residues {0, 1} these are the multiples of M.
std::vector<int> pair_residues(const ProfileConstants& p);

struct UStageResult {
    EdgeWeighting w3;
    std::vector<Sum> s3;
    std::vector<Sum> pair_base;  // -1 outside U
    std::vector<Vertex> order;
    std::size_t flips = 0;
    std::vector<nlohmann::json> trace;  // one object per processed vertex
};

// U in order of ascending degree (ties by id).
std::vector<Vertex> u_order(const Graph& g, const Partition& part);

// Processes U in u_order. For each u: the owned edges towards processed
// neighbours may only move in the direction that keeps that neighbour inside
// its pair, the others move freely by one; the smallest admissible pair
// meeting the reachable range and not used by a processed member of
// N^U_<=(u) is chosen and reached, forced edges first. Throws NoValidPair.
UStageResult finalize_u(const Graph& g, const Partition& part, const EdgeWeighting& w2,
                        const EStar& es, const ProfileConstants& p, bool keep_trace = false);

struct VerifyReport {
    std::vector<EdgeId> conflicts;
    std::vector<EdgeId> bad_weights;    // outside [1, 3]
    std::vector<Vertex> u_residue;      // U sum off the reserved residues
    std::vector<Vertex> w_residue;      // W sum on a reserved residue
    std::vector<Vertex> w_moved;        // s3 != s2 on W
    std::vector<Vertex> range;          // U sum outside [d, 2d] or outside J(u)
    bool range_strict = false;          // range failures count only when strict

    bool ok() const {
        return conflicts.empty() && bad_weights.empty() && u_residue.empty() && w_residue.empty() &&
               w_moved.empty() && (!range_strict || range.empty());
    }
};

// `s2` is compared on W only. The range check is strict for the profile
// named "paper" and reported as a warning otherwise.
VerifyReport final_verify(const Graph& g, const Partition& part, const EdgeWeighting& w3,
                          const std::vector<Sum>& s2, const ProfileConstants& p);
void to_json(nlohmann::json& j, const VerifyReport& r);

}  // namespace w123
