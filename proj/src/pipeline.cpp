#include "w123/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "w123/errors.hpp"
#include "w123/partition.hpp"
#include "w123/rng.hpp"
#include "w123/u_stage.hpp"
#include "w123/w_stage.hpp"

namespace w123 {

namespace {

nlohmann::json audit_summary(const PartitionAudit& a) {
    return {{"ok", a.ok()},
            {"structural", a.structural.size()},
            {"u_degree", a.u_degree.size()},
            {"fw_in_w", a.fw_in_w.size()},
            {"fw_in_u", a.fw_in_u.size()},
            {"fu_in_u", a.fu_in_u.size()},
            {"fu_in_w", a.fu_in_w.size()},
            {"nu_leq", a.nu_leq.size()}};
}

std::string verify_summary(const VerifyReport& r) {
    std::ostringstream msg;
    msg << "final verification failed: " << r.conflicts.size() << " conflicts, " << r.bad_weights.size()
        << " bad weights, " << r.u_residue.size() << " U residues, " << r.w_residue.size()
        << " W residues, " << r.w_moved.size() << " moved W sums";
    if (r.range_strict) msg << ", " << r.range.size() << " U sums out of range";
    return msg.str();
}

}  // namespace

void to_json(nlohmann::json& j, const PipelineOutcome& o) {
    j = nlohmann::json{{"status", o.status()},
                       {"stage", o.stage},
                       {"code", o.code},
                       {"reason", o.reason},
                       {"attempts", o.attempts},
                       {"resamples_partition", o.resamples_partition},
                       {"resamples_wstage", o.resamples_wstage},
                       {"conflicts", o.conflicts},
                       {"details", o.details}};
    if (o.wall_ms > 0) j["wall_ms"] = o.wall_ms;
    if (!o.trace.empty()) j["trace"] = o.trace;
}

std::optional<EdgeId> find_isolated_edge(const Graph& g) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (g.degree(ed.u) == 1 && g.degree(ed.v) == 1) return e;
    }
    return std::nullopt;
}

PipelineOutcome run(const Graph& g, const ProfileConstants& p, std::uint64_t seed,
                    const Budgets& budgets, const RunOptions& opts) {
    const auto started = std::chrono::steady_clock::now();
    PipelineOutcome out;
    out.details = {{"seed", seed}, {"profile", p}, {"budgets", budgets}, {"attempts", nlohmann::json::array()}};
    auto stop_clock = [&] {
        if (opts.record_wall_time) {
            out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        }
        return out;
    };

    out.stage = "precheck";
    if (auto e = find_isolated_edge(g)) {
        out.code = "IsolatedEdge";
        out.reason = "edge " + std::to_string(*e) + " forms a component of its own";
        return stop_clock();
    }
    try {
        check_feasibility(g, p);
    } catch (const Error& e) {
        out.code = e.code();
        out.reason = e.what();
        return stop_clock();
    }

    for (std::size_t attempt = 0; attempt <= budgets.pipeline_restarts; ++attempt) {
        const std::uint64_t s = derive_seed(seed, attempt);
        out.attempts = attempt + 1;
        out.conflicts = 0;
        nlohmann::json log = {{"seed", s}};
        std::string stage = "partition";
        PartitionStats ps;
        try {
            Partition part = sample_partition(g, p, s, budgets, &ps);
            out.resamples_partition += ps.total();
            log["partition"] = ps;
            const PartitionAudit pa = audit_partition(g, part, p);
            log["partition_audit"] = audit_summary(pa);
            if (!pa.ok()) throw InternalInconsistency("sampled partition fails its audit");
            const EdgeWeighting outer = initial_outer_weights(g, part);

            stage = "w-stage";
            const std::size_t w_limit = budgets.local_limit(part.w_set.size());
            WStageState st;
            SumAdditions add;
            for (std::size_t round = 0;; ++round) {
                const std::uint64_t ws = stream_word(s, Stream::Restart, round, 2);
                try {
                    st = resample_w_stage(g, part, outer, p, ws, w_limit);
                } catch (const RetryExhausted&) {
                    out.resamples_wstage += w_limit;
                    throw;
                }
                out.resamples_wstage += st.resamples;
                const WStageAudit wa = audit_w_stage(g, part, st, p);
                if (!wa.ok()) {
                    log["w_stage_audit"] = wa;
                    throw InternalInconsistency("w-stage state fails its audit");
                }
                try {
                    add = choose_sum_additions(g, part, st.s1, st.intervals, p);
                    log["w_stage"] = {{"resamples", st.resamples}, {"rounds", round + 1}};
                    break;
                } catch (const NoValidAddition&) {
                    if (round >= budgets.wstage_reruns) {
                        log["w_stage_dump"] = w_stage_dump(g, part, st, nullptr);
                        throw;
                    }
                }
            }
            EdgeWeighting w2;
            try {
                w2 = apply_additions(g, part, st.w1, add);
            } catch (const InsufficientFW&) {
                log["w_stage_dump"] = w_stage_dump(g, part, st, &add);
                throw;
            }
            const std::vector<Sum> s2 = weighted_degrees(g, w2).sums;
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                if (part.in_w(v) && s2[v] != st.s1[v] + add.a[v])
                    throw InternalInconsistency("s2 differs from s1 + a at vertex " + std::to_string(v));
            }
            for (EdgeId e : conflicts(g, weighted_degrees(g, w2))) {
                if (is_inner(part, g.edge(e)))
                    throw InternalInconsistency("W neighbours share s2 at edge " + std::to_string(e));
            }

            stage = "u-stage";
            const EStar es = build_estar(g, part.u_set);
            const EStarAudit ea = audit_estar(g, part.u_set, es);
            if (!ea.ok()) throw InternalInconsistency("E* fails its audit");
            UStageResult ur = finalize_u(g, part, w2, es, p, opts.keep_trace);
            log["u_stage"] = {{"flips", ur.flips}};

            stage = "verify";
            const VerifyReport vr = final_verify(g, part, ur.w3, s2, p);
            log["verify"] = vr;
            out.conflicts = vr.conflicts.size();
            if (!vr.ok()) throw Error("VerificationFailed", verify_summary(vr));

            out.details["attempts"].push_back(std::move(log));
            out.success = true;
            out.stage.clear();
            out.code.clear();
            out.reason.clear();
            out.weighting = std::move(ur.w3);
            out.trace = std::move(ur.trace);
            return stop_clock();
        } catch (const Error& e) {
            if (stage == "partition" && !log.contains("partition")) {
                out.resamples_partition += ps.total();
                log["partition"] = ps;
            }
            out.stage = stage;
            out.code = e.code();
            out.reason = e.what();
            log["failure"] = {{"stage", stage}, {"code", e.code()}, {"reason", e.what()}};
            if (const auto* re = dynamic_cast<const RetryExhausted*>(&e)) {
                log["failure"]["violators"] = re->violators();
            }
            out.details["attempts"].push_back(std::move(log));
        }
    }
    return stop_clock();
}

}  // namespace w123
