// Command-line front end: graph generation, the weighting pipeline, the
// verifier, the exact oracle, the analytic constants and seed sweeps.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "w123/analytic.hpp"
#include "w123/errors.hpp"
#include "w123/generators.hpp"
#include "w123/graph.hpp"
#include "w123/oracle.hpp"
#include "w123/pipeline.hpp"
#include "w123/profile.hpp"
#include "w123/weighting.hpp"

namespace {

using nlohmann::json;
using namespace w123;

// Exit codes: 1 for bad input or internal errors, 2 when the requested
// computation ran but its result is negative (stage failure, rejected
// weighting, counterexamples found).
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

struct GraphSource {
    std::string file;
    std::string gen;
    std::uint64_t graph_seed = 0;
};

Graph generate(const std::string& desc, std::uint64_t seed) {
    const auto colon = desc.find(':');
    if (colon == std::string::npos) throw InvalidArgument("generator must be gnp:n,p or reg:n,d");
    const std::string kind = desc.substr(0, colon);
    const std::string args = desc.substr(colon + 1);
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw InvalidArgument("generator needs two parameters");
    try {
        std::size_t used = 0;
        const std::string a = args.substr(0, comma), b = args.substr(comma + 1);
        const unsigned long n = std::stoul(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        if (kind == "gnp") {
            const double p = std::stod(b, &used);
            if (used != b.size()) throw std::invalid_argument(b);
            return gen_gnp(n, p, seed);
        }
        if (kind == "reg") {
            const unsigned long d = std::stoul(b, &used);
            if (used != b.size()) throw std::invalid_argument(b);
            return gen_random_regular(n, d, seed);
        }
    } catch (const std::logic_error&) {
        throw InvalidArgument("cannot parse generator '" + desc + "'");
    }
    throw InvalidArgument("unknown generator '" + kind + "'");
}

Graph load_graph(const GraphSource& src) {
    if (!src.file.empty() && !src.gen.empty()) throw InvalidArgument("use either --graph or --gen, not both");
    if (!src.file.empty()) return read_edge_list_file(src.file);
    if (!src.gen.empty()) return generate(src.gen, src.graph_seed);
    throw InvalidArgument("a graph is required (--graph FILE or --gen KIND:ARGS)");
}

void add_graph_options(CLI::App* app, GraphSource& src) {
    app->add_option("--graph", src.file, "Edge-list file");
    app->add_option("--gen", src.gen, "Generator: gnp:n,p or reg:n,d");
    app->add_option("--graph-seed", src.graph_seed, "Seed of the generator");
}

struct ProfileSource {
    std::string file;
    std::vector<std::string> params;
};

void add_profile_options(CLI::App* app, ProfileSource& src) {
    app->add_option("--profile", src.file, "Profile JSON file, or the built-in name desk / paper");
    app->add_option("--param", src.params, "Override one profile field: key=value (JSON value)");
}

// Built-in desk profile, then the file, then --param overrides.
ProfileConstants load_profile(const ProfileSource& src) {
    ProfileConstants p = ProfileConstants::desk();
    if (!src.file.empty()) {
        if (std::filesystem::exists(src.file)) p = load_profile_file(src.file);
        else if (src.file == "paper") p = ProfileConstants::paper();
        else if (src.file != "desk") throw InvalidArgument("profile file '" + src.file + "' not found");
    }
    if (!src.params.empty()) {
        json patch = json::object();
        for (const std::string& kv : src.params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidArgument("--param expects key=value, got '" + kv + "'");
            const std::string key = kv.substr(0, eq);
            const std::string value = kv.substr(eq + 1);
            json parsed = json::parse(value, nullptr, false);
            patch[key] = parsed.is_discarded() ? json(value) : parsed;
        }
        try {
            from_json(patch, p);
        } catch (const json::exception& e) {
            throw InvalidArgument(std::string("bad --param value: ") + e.what());
        }
    }
    p.validate();
    return p;
}

// Writes to the file, or to stdout when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    write(out);
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            const auto dash = item.find('-', 1);
            if (dash == std::string::npos) {
                seeds.push_back(std::stoull(item));
            } else {
                const std::uint64_t a = std::stoull(item.substr(0, dash));
                const std::uint64_t b = std::stoull(item.substr(dash + 1));
                if (b < a) throw InvalidArgument("empty seed range '" + item + "'");
                for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
            }
        } catch (const std::logic_error&) {
            throw InvalidArgument("cannot parse seed list '" + text + "'");
        }
    }
    std::vector<std::uint64_t> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidArgument("seeds must be distinct");
    if (seeds.empty()) throw InvalidArgument("no seeds given");
    return seeds;
}

int cmd_gen(const GraphSource& src, const std::string& out) {
    const Graph g = load_graph(src);
    emit(out, [&](std::ostream& os) { write_edge_list(os, g); });
    return 0;
}

struct WeightArgs {
    GraphSource graph;
    ProfileSource profile;
    std::uint64_t seed = 1;
    std::string out;
    std::string outcome;
    std::string trace;
    bool timing = false;
};

int cmd_weight(const WeightArgs& a) {
    const Graph g = load_graph(a.graph);
    const ProfileConstants p = load_profile(a.profile);
    RunOptions opts;
    opts.keep_trace = !a.trace.empty();
    opts.record_wall_time = a.timing;
    const PipelineOutcome o = run(g, p, a.seed, Budgets{}, opts);
    json j = o;
    j.erase("trace");
    emit(a.outcome, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    if (!a.trace.empty()) {
        emit(a.trace, [&](std::ostream& os) {
            for (const json& line : o.trace) os << line.dump() << '\n';
        });
    }
    if (!o.success) {
        std::cerr << json{{"error", o.code}, {"stage", o.stage}, {"message", o.reason}}.dump() << '\n';
        return kExitNegative;
    }
    if (!a.out.empty()) emit(a.out, [&](std::ostream& os) { write_weighting(os, g, o.weighting); });
    return 0;
}

int cmd_verify(const GraphSource& src, const std::string& weighting_file, int k_max) {
    const Graph g = load_graph(src);
    if (weighting_file.empty()) throw InvalidArgument("--weighting is required");
    const EdgeWeighting w = read_weighting_file(g, weighting_file);
    std::vector<EdgeId> heavy;
    for (EdgeId e = 0; e < w.size(); ++e)
        if (w[e] < 1 || w[e] > k_max) heavy.push_back(e);
    const std::vector<EdgeId> c = conflicts(g, w);
    const bool irregular = blow_up_is_locally_irregular(g, w);
    const bool ok = c.empty() && heavy.empty();
    json report{{"ok", ok},
                {"vertices", g.vertex_count()},
                {"edges", g.edge_count()},
                {"k_max", k_max},
                {"conflicts", c},
                {"weights_out_of_range", heavy},
                {"locally_irregular_blow_up", irregular}};
    std::cout << report.dump(2) << '\n';
    return ok ? 0 : kExitNegative;
}

int cmd_oracle(const GraphSource& src, int k_max, std::size_t n_max, unsigned jobs, const std::string& out) {
    if (n_max > 0) {
        const SweepReport r = sweep_small_graphs(n_max, k_max, jobs);
        emit(out, [&](std::ostream& os) { write_sweep_csv(os, r); });
        std::cerr << json{{"n_max", n_max},
                          {"k", k_max},
                          {"connected_graphs", r.checked()},
                          {"counterexamples", r.counterexamples.size()}}
                         .dump()
                  << '\n';
        return r.counterexamples.empty() ? 0 : kExitNegative;
    }
    const Graph g = load_graph(src);
    const OracleResult r = min_k_weighting(g, k_max);
    json j{{"k_max", k_max}, {"nodes_explored", r.nodes_explored}};
    j["min_k"] = r.min_k ? json(*r.min_k) : json(nullptr);
    if (r.min_k) {
        json witness = json::array();
        for (EdgeId e = 0; e < g.edge_count(); ++e) witness.push_back({g.edge(e).u, g.edge(e).v, r.witness[e]});
        j["witness"] = witness;
    }
    emit(out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    return r.min_k ? 0 : kExitNegative;
}

int cmd_constants(const ProfileSource& ps, std::size_t grid) {
    namespace an = analytic;
    const auto bp = an::breakpoints();
    json table = json::array();
    const std::size_t steps = std::max<std::size_t>(grid, 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double x = 1.1 + 0.8 * static_cast<double>(i) / static_cast<double>(steps);
        table.push_back({std::min(x, 1.9), an::r_value(std::min(x, 1.9))});
    }
    json j{{"beta_lo", an::DomainConstants::beta_lo},
           {"beta_mid", an::DomainConstants::beta_mid},
           {"beta_hi", an::DomainConstants::beta_hi},
           {"log_ratio", an::log_ratio()},
           {"a1", bp.a1},
           {"a2", bp.a2},
           {"dbar", an::dbar_closed_form().value},
           {"dbar_quadrature", an::dbar_quadrature(10000)},
           {"r_table", table},
           {"profile", load_profile(ps)}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

struct ExperimentArgs {
    GraphSource graph;
    ProfileSource profile;
    std::string seeds = "1-10";
    unsigned jobs = 1;
    std::string out;
};

int cmd_experiment(const ExperimentArgs& a) {
    const Graph g = load_graph(a.graph);
    const ProfileConstants p = load_profile(a.profile);
    const std::vector<std::uint64_t> seeds = parse_seeds(a.seeds);
    std::vector<PipelineOutcome> results(seeds.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            try {
                RunOptions opts;
                opts.record_wall_time = true;
                results[i] = run(g, p, seeds[i], Budgets{}, opts);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(seeds.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::size_t ok = 0;
    emit(a.out, [&](std::ostream& os) {
        os << "seed,status,stage,resamples_partition,resamples_wstage,conflicts,wall_ms\n";
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const PipelineOutcome& o = results[i];
            ok += o.success ? 1 : 0;
            os << seeds[i] << ',' << o.status() << ',' << o.stage << ',' << o.resamples_partition << ','
               << o.resamples_wstage << ',' << o.conflicts << ',' << o.wall_ms << '\n';
        }
    });
    std::cerr << json{{"runs", seeds.size()},
                      {"successes", ok},
                      {"success_rate", static_cast<double>(ok) / static_cast<double>(seeds.size())}}
                     .dump()
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertex-colouring 3-weightings for graphs of large minimum degree"};
    app.require_subcommand(1);

    GraphSource gen_src;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a graph and write it as an edge list");
    add_graph_options(gen, gen_src);
    gen->add_option("--seed", gen_src.graph_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output file (default stdout)");

    WeightArgs wa;
    auto* weight = app.add_subcommand("weight", "Run the construction and write the weighting");
    add_graph_options(weight, wa.graph);
    add_profile_options(weight, wa.profile);
    weight->add_option("--seed", wa.seed, "Pipeline seed");
    weight->add_option("--out", wa.out, "Weighting file (written on success)");
    weight->add_option("--outcome", wa.outcome, "Outcome JSON file (default stdout)");
    weight->add_option("--trace", wa.trace, "U-stage trace file (JSON lines)");
    weight->add_flag("--timing", wa.timing, "Record wall time in the outcome");

    GraphSource ver_src;
    std::string ver_weighting;
    int ver_k = 3;
    auto* verify = app.add_subcommand("verify", "Check a weighting for sum conflicts");
    add_graph_options(verify, ver_src);
    verify->add_option("--weighting", ver_weighting, "Weighting file (u v w lines)");
    verify->add_option("--k-max", ver_k, "Largest allowed weight");

    GraphSource or_src;
    int or_k = 3;
    std::size_t or_n = 0;
    unsigned or_jobs = 1;
    std::string or_out;
    auto* oracle = app.add_subcommand("oracle", "Exact minimum k, or a sweep over all small graphs");
    add_graph_options(oracle, or_src);
    oracle->add_option("--k-max", or_k, "Largest k tried (sweep: the k to test)");
    oracle->add_option("--n-max", or_n, "Sweep all connected graphs up to this order (<= 8)");
    oracle->add_option("--jobs", or_jobs, "Worker threads for the sweep");
    oracle->add_option("--out", or_out, "Output file (default stdout)");

    ProfileSource c_prof;
    std::size_t c_grid = 16;
    auto* constants = app.add_subcommand("constants", "Print the analytic constants as JSON");
    add_profile_options(constants, c_prof);
    constants->add_option("--grid", c_grid, "Number of steps in the r table");

    ExperimentArgs ea;
    auto* experiment = app.add_subcommand("experiment", "Run the construction over many seeds, CSV out");
    add_graph_options(experiment, ea.graph);
    add_profile_options(experiment, ea.profile);
    experiment->add_option("--seeds", ea.seeds, "Seed list, e.g. 1-10 or 3,7,11");
    experiment->add_option("--jobs", ea.jobs, "Worker threads");
    experiment->add_option("--out", ea.out, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
        return kExitError;
    }

    try {
        if (*gen) return cmd_gen(gen_src, gen_out);
        if (*weight) return cmd_weight(wa);
        if (*verify) return cmd_verify(ver_src, ver_weighting, ver_k);
        if (*oracle) return cmd_oracle(or_src, or_k, or_n, or_jobs, or_out);
        if (*constants) return cmd_constants(c_prof, c_grid);
        if (*experiment) return cmd_experiment(ea);
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Exception"}, {"message", e.what()}}.dump() << '\n';
        return kExitError;
    }
    return kExitError;
}
