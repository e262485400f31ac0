#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "w123/graph.hpp"
#include "w123/partition.hpp"
#include "w123/profile.hpp"
#include "w123/weighting.hpp"

namespace w123 {

// X_v on W (in [1.1, 2.9]) and X_e on edges inside W (in [0, 1]). Entries
// outside those domains hold NaN.
struct XAssignment {
    std::vector<double> x_vertex;
    std::vector<double> x_edge;
};

// Draws X_v = x_from_uniform(u) and X_e = u from the per-entity streams at
// the given epochs (all zero when `vertex_epoch` / `edge_epoch` are empty).
XAssignment draw_x(const Graph& g, const Partition& part, std::uint64_t seed,
                   const std::vector<std::uint64_t>& vertex_epoch = {},
                   const std::vector<std::uint64_t>& edge_epoch = {});

bool is_inner(const Partition& part, const Edge& e);

// Sets the {1, 3} weights of the edges inside W and leaves the rest alone.
void weigh_inner_edges(const Graph& g, const Partition& part, const XAssignment& x, EdgeWeighting& w);

// s_1 for every vertex. For v in W the direct sum is cross-checked against
// d_U + d_FU + d_W + 2 d'_3; a mismatch throws InternalInconsistency.
std::vector<Sum> initial_sums(const Graph& g, const Partition& part, const EdgeWeighting& w1);

// d_U(v) + d_FU(v) + X_v d_W(v)
double near_center(const Partition& part, Vertex v, double x_v);

bool check_near_location(Vertex v, Sum s1, const XAssignment& x, const Partition& part,
                         const ProfileConstants& p);

// Grid interval of one vertex: length l = 2^floor(log2(eps_len d_W)),
// I = [i0, i1) with i0 a multiple of l and s0 in I.
struct IntervalEntry {
    std::int64_t l = 0;
    std::int64_t i0 = 0;
    std::int64_t i1 = 0;
    double s0 = 0;

    bool holds(double s) const { return static_cast<double>(i0) <= s && s < static_cast<double>(i1); }
    bool meets(const IntervalEntry& o) const { return i0 < o.i1 && o.i0 < i1; }
};

struct IntervalData {
    std::vector<IntervalEntry> entries;  // meaningful on W only
};

// Largest power of two not above eps_len * d_W; DegenerateLength below 1.
std::int64_t grid_length(Vertex v, std::int64_t d_w, const ProfileConstants& p);

IntervalEntry compute_interval(Vertex v, const XAssignment& x, const Partition& part,
                               const ProfileConstants& p);

// Aligned dyadic grids: a shorter interval that meets a longer one lies in it.
bool nested(const IntervalEntry& shorter, const IntervalEntry& longer);

// |{u in N^W_<=(v) : s0(u) in I(v)}|
std::size_t occupancy(const Graph& g, const Partition& part, const IntervalData& iv, Vertex v);

bool check_occupancy(Vertex v, const IntervalData& iv, const Graph& g, const Partition& part,
                     const ProfileConstants& p);

struct WStageState {
    XAssignment x;
    EdgeWeighting w1;
    std::vector<Sum> s1;
    IntervalData intervals;
    std::size_t resamples = 0;
};

// Draws X, weighs the inner edges on top of `outer` (the weights outside
// W), and resamples X_v together with the X_e at v for every vertex that
// fails the near-location or the occupancy check, until none does.
// Throws RetryExhausted (stage "w-stage") after `limit` resamples.
WStageState resample_w_stage(const Graph& g, const Partition& part, const EdgeWeighting& outer,
                             const ProfileConstants& p, std::uint64_t seed, std::size_t limit);

// Full recomputation of the state: weights from X, sums, intervals and both
// checks. Lists vertices / edges that disagree or fail.
struct WStageAudit {
    std::vector<EdgeId> weight_mismatch;
    std::vector<Vertex> sum_mismatch;
    std::vector<Vertex> interval_mismatch;
    std::vector<Vertex> near_location;
    std::vector<Vertex> occupancy;

    bool ok() const {
        return weight_mismatch.empty() && sum_mismatch.empty() && interval_mismatch.empty() &&
               near_location.empty() && occupancy.empty();
    }
};

WStageAudit audit_w_stage(const Graph& g, const Partition& part, const WStageState& st,
                          const ProfileConstants& p);
void to_json(nlohmann::json& j, const WStageAudit& a);

struct SumAdditions {
    std::vector<std::int64_t> a;  // 0 on U
};

// W in order of ascending d_W (ties by id).
std::vector<Vertex> w_order(const Partition& part);

// For each v in w_order, the smallest a(v) >= 0 with s1 + a in I(v), off the
// reserved residues, and different from s1(u) + a(u) for the already
// processed u in N^W_<=(v). Throws NoValidAddition.
SumAdditions choose_sum_additions(const Graph& g, const Partition& part, const std::vector<Sum>& s1,
                                  const IntervalData& iv, const ProfileConstants& p);

// Raises a(v) F_W edges at each v in W from 1 to 2, lowest edge ids first.
// Throws InsufficientFW when d_FW(v) < a(v).
EdgeWeighting apply_additions(const Graph& g, const Partition& part, const EdgeWeighting& w1,
                              const SumAdditions& add);

// Per-vertex (X_v, s1, s0, l, I, a, s2) for W, as a JSON array.
nlohmann::json w_stage_dump(const Graph& g, const Partition& part, const WStageState& st,
                            const SumAdditions* add);

}  // namespace w123
