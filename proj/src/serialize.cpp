#include "privcon/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace privcon {

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot write " + path);
    f << content;
    if (!f) throw io_error("write failed: " + path);
}

namespace {

ordered_json rational_vector_to_json(const RationalVector& v) {
    ordered_json arr = ordered_json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i).str());
    return arr;
}

RationalVector rational_vector_from_json(const ordered_json& arr) {
    RationalVector v(arr.size());
    for (size_t i = 0; i < arr.size(); ++i)
        v(static_cast<Index>(i)) = Rational::parse(arr[i].get<std::string>());
    return v;
}

ordered_json matrix_to_json(const RationalMatrix& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json entries = ordered_json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index c = 0; c < m.cols(); ++c) entries.push_back(m(i, c).str());
    j["entries"] = entries;
    return j;
}

RationalMatrix matrix_from_json(const ordered_json& j) {
    Index rows = j.at("rows").get<Index>();
    Index cols = j.at("cols").get<Index>();
    const auto& entries = j.at("entries");
    if (static_cast<Index>(entries.size()) != rows * cols)
        throw std::invalid_argument("matrix entry count mismatch");
    RationalMatrix m(rows, cols);
    size_t k = 0;
    for (Index i = 0; i < rows; ++i)
        for (Index c = 0; c < cols; ++c) m(i, c) = Rational::parse(entries[k++].get<std::string>());
    return m;
}

}  // namespace

ordered_json graph_to_json(const WeightedDigraph& g) {
    ordered_json j;
    j["nodes"] = g.node_count();
    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges()) {
        ordered_json je;
        je["src"] = e.src;
        je["dst"] = e.dst;
        je["w"] = e.w.str();
        edges.push_back(je);
    }
    j["edges"] = edges;
    return j;
}

WeightedDigraph graph_from_json(const ordered_json& j) {
    int nodes = j.at("nodes").get<int>();
    std::vector<WeightedEdge> edges;
    for (const auto& je : j.at("edges"))
        edges.push_back({je.at("src").get<int>(), je.at("dst").get<int>(),
                         Rational::parse(je.at("w").get<std::string>())});
    return WeightedDigraph(nodes, std::move(edges));
}

WeightedDigraph graph_from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::vector<WeightedEdge> edges;
    int max_node = -1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int src, dst;
        std::string w;
        if (!(ls >> src >> dst >> w)) {
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) throw std::invalid_argument("malformed edge line: " + line);
            continue;  // blank line
        }
        edges.push_back({src, dst, Rational::parse(w)});
        max_node = std::max({max_node, src, dst});
    }
    return WeightedDigraph(max_node + 1, std::move(edges));
}

WeightedDigraph load_graph(const std::string& path) {
    std::string text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return graph_from_json(ordered_json::parse(text));
    return graph_from_edge_list(text);
}

ordered_json system_to_json(const AugmentedSystem& sys) {
    ordered_json j;
    j["kind"] = kind_name(sys.kind);
    j["n"] = sys.n_original;
    j["original"] = graph_to_json(sys.original);
    j["index_map"] = sys.index_map;
    j["ap"] = matrix_to_json(sys.ap);
    j["v_left"] = rational_vector_to_json(sys.v_left);
    j["x_tilde0"] = rational_vector_to_json(sys.x_tilde0);
    return j;
}

AugmentedSystem system_from_json(const ordered_json& j) {
    AugmentedSystem sys;
    sys.kind = kind_from_name(j.at("kind").get<std::string>());
    sys.n_original = j.at("n").get<int>();
    sys.original = graph_from_json(j.at("original"));
    sys.index_map = j.at("index_map").get<std::vector<std::vector<int>>>();
    sys.ap = matrix_from_json(j.at("ap"));
    sys.v_left = rational_vector_from_json(j.at("v_left"));
    sys.x_tilde0 = rational_vector_from_json(j.at("x_tilde0"));
    if (sys.ap.rows() != sys.ap.cols()) throw std::invalid_argument("system matrix not square");
    if (static_cast<int>(sys.index_map.size()) != sys.n_original)
        throw std::invalid_argument("index_map size mismatch");
    return sys;
}

AugmentedSystem load_system(const std::string& path) {
    return system_from_json(ordered_json::parse(read_file(path)));
}

ordered_json report_to_json(const PrivacyAuditReport& report) {
    ordered_json j;
    j["observer"] = report.observer.observer;
    j["coalition"] = report.observer.coalition;
    j["mode"] = report.observer.mode == ObserverMode::ProofStrength ? "proof" : "minimal";
    j["observed"] = std::vector<int>(report.observer.observed.begin(),
                                     report.observer.observed.end());
    ordered_json targets = ordered_json::array();
    for (const auto& t : report.targets) {
        ordered_json jt;
        jt["agent"] = t.agent;
        jt["gadget_recoverable"] = t.gadget_recoverable;
        jt["plain_sum_recoverable"] = t.plain_sum_recoverable;
        if (t.weighted_recoverable.has_value())
            jt["weighted_recoverable"] = *t.weighted_recoverable;
        else
            jt["weighted_recoverable"] = nullptr;
        targets.push_back(jt);
    }
    j["targets"] = targets;
    j["verdict"] = report.private_verdict ? "private" : "not-private";
    return j;
}

ordered_json catalog_to_json(const std::vector<GadgetCandidate>& entries) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : entries) {
        ordered_json j;
        j["nodes"] = c.node_count;
        ordered_json edges = ordered_json::array();
        for (auto [i, k] : c.edges) edges.push_back(ordered_json::array({i, k}));
        j["edges"] = edges;
        j["canonical_form"] = c.canonical_form;
        j["filters"] = {{"strongly_connected", c.filters.strongly_connected},
                        {"aperiodic", c.filters.aperiodic},
                        {"unobservable_from_node0", c.filters.unobservable_from_node0},
                        {"privacy_parameterizable", c.filters.privacy_parameterizable}};
        arr.push_back(j);
    }
    return arr;
}

void write_trace_csv(const SimulationTrace& trace, const std::string& path, int stride) {
    if (stride < 1) stride = 1;
    std::ofstream f(path);
    if (!f) throw io_error("cannot write " + path);
    f << "round";
    for (Index c = 0; c < trace.states.cols(); ++c) f << ",state_" << c;
    f << "\n";
    f.precision(17);
    for (Index r = 0; r < trace.states.rows(); ++r) {
        if (r % stride != 0 && r != trace.states.rows() - 1) continue;
        f << r;
        for (Index c = 0; c < trace.states.cols(); ++c) f << "," << trace.states(r, c);
        f << "\n";
    }
    if (!f) throw io_error("write failed: " + path);
}

ordered_json trace_to_json(const SimulationTrace& trace, int stride) {
    if (stride < 1) stride = 1;
    ordered_json j;
    j["rounds"] = trace.rounds;
    j["converged"] = trace.converged;
    j["final_spread"] = trace.final_spread;
    if (trace.consensus_value.has_value())
        j["consensus_value"] = *trace.consensus_value;
    else
        j["consensus_value"] = nullptr;
    j["stride"] = stride;
    ordered_json states = ordered_json::array();
    for (Index r = 0; r < trace.states.rows(); ++r) {
        if (r % stride != 0 && r != trace.states.rows() - 1) continue;
        ordered_json row = ordered_json::array();
        row.push_back(r);
        for (Index c = 0; c < trace.states.cols(); ++c) row.push_back(trace.states(r, c));
        states.push_back(row);
    }
    j["states"] = states;
    return j;
}

}  // namespace privcon
