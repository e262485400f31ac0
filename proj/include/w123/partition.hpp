#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "w123/graph.hpp"
#include "w123/profile.hpp"
#include "w123/weighting.hpp"

namespace w123 {

// U, W = V \ U, F = E(U, W), F_W within F, F' = F \ F_W, F_U within F', and
// a level i_u in {0..m-1} for every u in U. The per-vertex counters are a
// cache filled by recount(); everything else is the ground truth.
struct Partition {
    VertexSet u_set;
    VertexSet w_set;
    EdgeSet f;
    EdgeSet f_w;
    EdgeSet f_prime;
    EdgeSet f_u;
    std::vector<int> levels;  // -1 on W

    std::vector<std::int64_t> d_u;
    std::vector<std::int64_t> d_w;
    std::vector<std::int64_t> d_fw;
    std::vector<std::int64_t> d_fprime;
    std::vector<std::int64_t> d_fu;

    bool in_u(Vertex v) const { return u_set.contains(v); }
    bool in_w(Vertex v) const { return w_set.contains(v); }

    void recount(const Graph& g);

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.u_set == b.u_set && a.f_w == b.f_w && a.f_u == b.f_u && a.levels == b.levels;
    }
};

// Derives W, F, F' and the counters from the three chosen sets. Throws
// InvalidArgument when F_W is not inside F, F_U is not inside F', or a level
// is out of range.
Partition make_partition(const Graph& g, const VertexSet& u_set, const EdgeSet& f_w,
                         const EdgeSet& f_u, std::vector<int> levels, int m_levels);

struct PartitionStats {
    std::size_t resamples_u = 0;
    std::size_t resamples_fw = 0;
    std::size_t resamples_fu = 0;
    std::size_t attempts = 0;

    std::size_t total() const { return resamples_u + resamples_fw + resamples_fu; }
};

void to_json(nlohmann::json& j, const PartitionStats& s);

// Single-vertex constraint predicates. Arguments are raw counts.
namespace constraint {
bool u_degree(double d, double d_u, const ProfileConstants& p);
bool fw_in_w(double d_u, double d_fw, const ProfileConstants& p);
bool fw_in_u(double d_w, double d_fw, const ProfileConstants& p);
bool fu_in_u(double d, double d_fprime, double d_fu, int level, const ProfileConstants& p);
bool fu_in_w(double d_fprime, double d_fu, const ProfileConstants& p);
bool nu_leq(double n_u_leq, double d_u, const ProfileConstants& p);
}  // namespace constraint

// Rejects profiles whose tolerances are below one unit at the minimum degree
// (no integer count could satisfy them in expectation) and graphs with
// delta < min_delta_ratio * ln(Delta). Throws InfeasibleProfile.
void check_feasibility(const Graph& g, const ProfileConstants& p);

// The three sampling stages, each a local-resampling loop over its own
// variables. They throw RetryExhausted when their local budget runs out.
VertexSet sample_u_set(const Graph& g, const ProfileConstants& p, std::uint64_t seed,
                       std::size_t limit, std::size_t* resamples = nullptr);
EdgeSet sample_fw(const Graph& g, const VertexSet& u_set, const ProfileConstants& p,
                  std::uint64_t seed, std::size_t limit, std::size_t* resamples = nullptr);
void sample_levels_fu(const Graph& g, Partition& part, const ProfileConstants& p,
                      std::uint64_t seed, std::size_t limit, std::size_t* resamples = nullptr);

// All stages in order with whole-partition redraws after a stage failure.
Partition sample_partition(const Graph& g, const ProfileConstants& p, std::uint64_t seed,
                           const Budgets& budgets = {}, PartitionStats* stats = nullptr);

struct JInterval {
    double lo;
    double hi;

    double width() const { return hi - lo; }
    bool intersects(const JInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

JInterval j_interval_from(double d, double d_fprime, double d_fw, double d_u, int level,
                          const ProfileConstants& p);
JInterval j_interval(const Graph& g, const Partition& part, Vertex u, const ProfileConstants& p);

// {u' in N_U(u) : d(u)/2 <= d(u') <= d(u) and J(u') meets J(u)}
VertexSet n_u_leq(const Graph& g, const Partition& part, Vertex u, const ProfileConstants& p);
std::size_t n_u_leq_count(const Graph& g, const Partition& part, Vertex u,
                          const ProfileConstants& p);

// Independent recomputation of every structural relation and constraint
// family from the raw sets (the cached counters are not consulted).
struct PartitionAudit {
    std::vector<std::string> structural;
    std::vector<Vertex> u_degree;
    std::vector<Vertex> fw_in_w;
    std::vector<Vertex> fw_in_u;
    std::vector<Vertex> fu_in_u;
    std::vector<Vertex> fu_in_w;
    std::vector<Vertex> nu_leq;

    bool ok() const {
        return structural.empty() && u_degree.empty() && fw_in_w.empty() && fw_in_u.empty() &&
               fu_in_u.empty() && fu_in_w.empty() && nu_leq.empty();
    }
};

PartitionAudit audit_partition(const Graph& g, const Partition& part, const ProfileConstants& p);
void to_json(nlohmann::json& j, const PartitionAudit& a);

// Weight 2 on E(U) and F_U, 1 on F \ F_U, 0 (unassigned) inside W.
EdgeWeighting initial_outer_weights(const Graph& g, const Partition& part);

// Labeled vertex and edge lines:
//   V <id> U <level>  |  V <id> W
//   E <u> <v> <UU|WW|FW|FU|F>
void write_partition(std::ostream& os, const Graph& g, const Partition& part);

}  // namespace w123
