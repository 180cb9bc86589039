// privcon: build privacy-preserving augmented consensus networks, audit them,
// and simulate the dynamics.
//
// exit codes: 0 ok/private, 2 precondition violated, 3 I/O trouble,
//             4 audit found a recoverable target, 5 simulation not converged

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "privcon/augment.hpp"
#include "privcon/catalog.hpp"
#include "privcon/exactla.hpp"
#include "privcon/netgraph.hpp"
#include "privcon/privacy.hpp"
#include "privcon/serialize.hpp"
#include "privcon/simulate.hpp"

using namespace privcon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitIo = 3;
constexpr int kExitNotPrivate = 4;
constexpr int kExitNotConverged = 5;

std::uint64_t seed_or_env(std::int64_t cli_seed, bool seed_given) {
    if (seed_given) return static_cast<std::uint64_t>(cli_seed);
    if (const char* env = std::getenv("PRIVCON_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

// "1/2,1/3,0.25" -> rationals; plain floats are rationalized (den <= 1e6)
// and reported
RationalVector parse_x0(const std::string& text, bool& rationalized) {
    std::vector<Rational> vals;
    std::stringstream ss(text);
    std::string tok;
    rationalized = false;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        Rational r = Rational::parse(tok);
        if (tok.find('.') != std::string::npos) {
            rationalized = true;
            r = r.limit_denominator(1000000UL);
        }
        vals.push_back(r);
    }
    RationalVector v(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) v(static_cast<Index>(i)) = vals[i];
    return v;
}

// "1,2,3;4,5,6" -> per-agent split parts
SplitChoice parse_split(const std::string& text) {
    if (text.empty() || text == "default") return SplitChoice::defaults();
    SplitChoice s;
    std::stringstream agents(text);
    std::string group;
    while (std::getline(agents, group, ';')) {
        std::vector<Rational> parts;
        std::stringstream ss(group);
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(Rational::parse(tok));
        s.parts.push_back(std::move(parts));
    }
    return s;
}

// random connected bidirected graph with a reversible row-stochastic matrix
RationalMatrix random_reversible_matrix(int n, std::mt19937_64& rng) {
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, Rational(0)));
    auto connect = [&](int i, int j) {
        Rational v(static_cast<long long>(rng() % 20) + 1, static_cast<long long>(rng() % 8) + 1);
        w[i][j] = v;
        w[j][i] = v;
    };
    for (int i = 1; i < n; ++i) connect(static_cast<int>(rng() % i), i);
    int extra = n / 2 + 1;
    for (int e = 0; e < extra; ++e) {
        int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
        if (i != j && w[i][j].is_zero()) connect(i, j);
    }
    RationalMatrix a = RationalMatrix::Constant(n, n, Rational(0));
    for (int i = 0; i < n; ++i) {
        Rational row_sum(0);
        for (int j = 0; j < n; ++j) row_sum += w[i][j];
        for (int j = 0; j < n; ++j)
            if (!w[i][j].is_zero()) a(i, j) = w[i][j] / row_sum;
    }
    return a;
}

int cmd_augment(const std::string& input, const std::string& alg, const std::string& x0_text,
                const std::string& split_text, std::uint64_t seed, bool normalize,
                std::string out_path) {
    WeightedDigraph g = load_graph(input);

    AugmentedSystem sys;
    if (alg == "alg1") {
        sys = build_alg1(g, seed, normalize);
    } else {
        if (x0_text.empty()) throw precondition_error(alg + " requires --x0");
        bool rationalized = false;
        RationalVector x0 = parse_x0(x0_text, rationalized);
        if (rationalized)
            std::cerr << "note: decimal x0 entries were converted to exact rationals\n";
        SplitChoice split = parse_split(split_text);
        if (alg == "alg2")
            sys = build_alg2(g, x0, split);
        else if (alg == "p1d")
            sys = solve_p1d(to_matrix(g), x0, split);
        else
            throw precondition_error("unknown algorithm: " + alg);
    }

    if (out_path.empty()) {
        auto slash = input.find_last_of('/');
        std::string stem = slash == std::string::npos ? input : input.substr(slash + 1);
        auto dot = stem.find_last_of('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        out_path = stem + "_" + alg + ".json";
    }
    write_file(out_path, system_to_json(sys).dump(2) + "\n");
    std::cout << "wrote " << out_path << " (kind " << kind_name(sys.kind) << ", " << sys.dim()
              << " states)\n";
    return kExitOk;
}

int cmd_audit(const std::string& system_path, int observer, const std::string& coalition_text,
              const std::string& mode_text, const std::string& out_path) {
    AugmentedSystem sys = load_system(system_path);
    std::vector<int> coalition;
    std::stringstream ss(coalition_text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) coalition.push_back(std::stoi(tok));
    ObserverMode mode =
        mode_text == "minimal" ? ObserverMode::Minimal : ObserverMode::ProofStrength;

    PrivacyAuditReport report = audit(sys, observer, coalition, mode);
    if (!out_path.empty()) write_file(out_path, report_to_json(report).dump(2) + "\n");

    std::cout << "observer " << observer;
    if (!coalition.empty()) {
        std::cout << " with coalition {";
        for (size_t i = 0; i < coalition.size(); ++i)
            std::cout << (i ? "," : "") << coalition[i];
        std::cout << "}";
    }
    std::cout << ": verdict " << (report.private_verdict ? "private" : "not-private") << "\n";
    for (const auto& t : report.targets) {
        int recoverable = static_cast<int>(
            std::count(t.gadget_recoverable.begin(), t.gadget_recoverable.end(), true));
        std::cout << "  agent " << t.agent << ": " << recoverable << "/"
                  << t.gadget_recoverable.size() << " gadget states recoverable, sum "
                  << (t.plain_sum_recoverable ? "recoverable" : "hidden");
        if (t.weighted_recoverable.has_value())
            std::cout << ", weighted " << (*t.weighted_recoverable ? "recoverable" : "hidden");
        std::cout << "\n";
    }
    return report.private_verdict ? kExitOk : kExitNotPrivate;
}

int cmd_simulate(const std::string& system_path, double tol, int max_rounds,
                 const std::string& trace_path, const std::string& json_path,
                 const std::string& mode, bool full) {
    AugmentedSystem sys = load_system(system_path);
    if (sys.x_tilde0.size() != sys.dim())
        throw precondition_error("system has no encoded initial state to simulate");

    SimulationTrace trace;
    double cross_dev = 0.0;
    if (mode == "agents") {
        trace = run_agents(sys, tol, max_rounds);
    } else {
        trace = run_matrix(sys.ap, to_double(sys.x_tilde0), tol, max_rounds);
        if (mode == "both") {
            SimulationTrace agents = run_agents(sys, tol, max_rounds);
            Index rows = std::min(trace.states.rows(), agents.states.rows());
            for (Index r = 0; r < rows; ++r)
                cross_dev = std::max(
                    cross_dev,
                    (trace.states.row(r) - agents.states.row(r)).array().abs().maxCoeff());
        }
    }

    int stride = 1;
    if (!full && trace.states.rows() > 10000)
        stride = static_cast<int>((trace.states.rows() + 9999) / 10000);
    if (!trace_path.empty()) write_trace_csv(trace, trace_path, stride);
    if (!json_path.empty())
        write_file(json_path, trace_to_json(trace, stride).dump(2) + "\n");

    std::cout << "rounds " << trace.rounds << ", final spread " << trace.final_spread;
    if (trace.consensus_value.has_value())
        std::cout << ", consensus " << *trace.consensus_value;
    if (mode == "both") std::cout << ", cross-mode deviation " << cross_dev;
    std::cout << (trace.converged ? ", converged" : ", NOT converged") << "\n";
    if (!trace.converged && looks_period2(trace, tol))
        std::cout << "period-2 oscillation suspected\n";
    return trace.converged ? kExitOk : kExitNotConverged;
}

int cmd_catalog(const std::string& kind, int trials, std::uint64_t seed,
                const std::string& out_path) {
    std::vector<GadgetCandidate> entries;
    if (kind == "3aug")
        entries = enumerate_3aug(trials, seed);
    else if (kind == "4aug")
        entries = enumerate_4aug_bidirected(trials, seed);
    else
        throw precondition_error("unknown catalog kind: " + kind);
    ordered_json j = catalog_to_json(entries);
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    std::cout << kind << " catalog: " << entries.size() << " admissible classes\n";
    if (out_path.empty()) std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_bench(const std::string& sizes_text, std::uint64_t seed) {
    std::vector<int> sizes;
    std::stringstream ss(sizes_text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) sizes.push_back(std::stoi(tok));
    if (sizes.empty()) throw precondition_error("no sizes given");
    for (int n : sizes)
        if (n < 3) throw precondition_error("A2: at least three agents");

    std::mt19937_64 rng(seed);
    std::vector<double> log_n, log_t;
    std::printf("%8s %12s\n", "N", "build_s");
    for (int n : sizes) {
        RationalMatrix a = random_reversible_matrix(n, rng);
        RationalVector x0(n);
        for (int i = 0; i < n; ++i)
            x0(i) = Rational(static_cast<long long>(rng() % 100) + 1, 100);
        auto t0 = std::chrono::steady_clock::now();
        AugmentedSystem sys = solve_p1d(a, x0);
        auto t1 = std::chrono::steady_clock::now();
        double dt = std::chrono::duration<double>(t1 - t0).count();
        std::printf("%8d %12.6f\n", n, dt);
        (void)sys;
        log_n.push_back(std::log(static_cast<double>(n)));
        log_t.push_back(std::log(std::max(dt, 1e-9)));
    }
    if (sizes.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        size_t m = log_n.size();
        for (size_t i = 0; i < m; ++i) {
            sx += log_n[i];
            sy += log_t[i];
            sxx += log_n[i] * log_n[i];
            sxy += log_n[i] * log_t[i];
        }
        double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        std::printf("fitted log-log slope: %.3f\n", slope);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"privacy-preserving average consensus toolkit"};
    app.require_subcommand(1);

    std::string input, x0_text, split_text = "default", out_path;
    std::int64_t seed = 0;
    bool seed_given = false, normalize = false;

    auto* aug = app.add_subcommand("augment", "build an augmented system from a graph");
    std::string alg = "p1d";
    aug->add_option("input", input, "graph file (JSON or edge list)")->required();
    aug->add_option("--alg", alg, "alg1 | alg2 | p1d")->required();
    aug->add_option("--x0", x0_text, "comma-separated initial states (rationals)");
    aug->add_option("--split", split_text, "per-agent split, e.g. 1,2,3;1,1,1 (default taper)");
    aug->add_option("--seed", seed, "rng seed (alg1)")->each([&](const std::string&) {
        seed_given = true;
    });
    aug->add_flag("--normalize", normalize, "row-normalize the alg1 output");
    aug->add_option("--out", out_path, "output system JSON path");

    auto* aud = app.add_subcommand("audit", "observability-based privacy audit");
    std::string system_path, coalition_text, mode_text = "proof";
    int observer = 0;
    aud->add_option("system", system_path, "system JSON")->required();
    aud->add_option("--observer", observer, "observing agent")->required();
    aud->add_option("--coalition", coalition_text, "comma-separated coalition agents");
    aud->add_option("--mode", mode_text, "proof | minimal");
    aud->add_option("--out", out_path, "report JSON path");

    auto* sim = app.add_subcommand("simulate", "run the consensus dynamics");
    double tol = 1e-9;
    int max_rounds = 10000;
    std::string trace_path, json_path, sim_mode = "matrix";
    bool full = false;
    sim->add_option("system", system_path, "system JSON")->required();
    sim->add_option("--tol", tol, "convergence tolerance on the spread");
    sim->add_option("--max-rounds", max_rounds, "round limit");
    sim->add_option("--trace", trace_path, "trace CSV path");
    sim->add_option("--json", json_path, "trace JSON path");
    sim->add_option("--mode", sim_mode, "matrix | agents | both");
    sim->add_flag("--full", full, "write every round (no striding)");

    auto* cat = app.add_subcommand("catalog", "enumerate admissible gadget networks");
    std::string kind = "3aug";
    int trials = 20;
    cat->add_option("--kind", kind, "3aug | 4aug")->required();
    cat->add_option("--trials", trials, "random parameterizations per filter");
    cat->add_option("--seed", seed, "rng seed")->each([&](const std::string&) {
        seed_given = true;
    });
    cat->add_option("--out", out_path, "catalog JSON path");

    auto* ben = app.add_subcommand("bench", "time solve_p1d across sizes");
    std::string sizes_text = "16,32,64,128,256,512";
    ben->add_option("--sizes", sizes_text, "comma-separated agent counts");
    ben->add_option("--seed", seed, "rng seed")->each([&](const std::string&) {
        seed_given = true;
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (aug->parsed()) {
            if (alg == "alg1" && !seed_given && !std::getenv("PRIVCON_SEED"))
                throw precondition_error("alg1 requires --seed (or PRIVCON_SEED)");
            return cmd_augment(input, alg, x0_text, split_text, seed_or_env(seed, seed_given),
                               normalize, out_path);
        }
        if (aud->parsed())
            return cmd_audit(system_path, observer, coalition_text, mode_text, out_path);
        if (sim->parsed())
            return cmd_simulate(system_path, tol, max_rounds, trace_path, json_path, sim_mode,
                                full);
        if (cat->parsed())
            return cmd_catalog(kind, trials, seed_or_env(seed, seed_given), out_path);
        if (ben->parsed()) return cmd_bench(sizes_text, seed_or_env(seed, seed_given));
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
