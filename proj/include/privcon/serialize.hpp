#pragma once

#include <json.hpp>

#include <string>

#include "privcon/augment.hpp"
#include "privcon/catalog.hpp"
#include "privcon/netgraph.hpp"
#include "privcon/privacy.hpp"
#include "privcon/simulate.hpp"

namespace privcon {

using ordered_json = nlohmann::ordered_json;

// filesystem trouble (CLI exit 3)
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json graph_to_json(const WeightedDigraph& g);
WeightedDigraph graph_from_json(const ordered_json& j);
// whitespace-separated "src dst p/q" lines; node count inferred
WeightedDigraph graph_from_edge_list(const std::string& text);
// dispatch on extension/content
WeightedDigraph load_graph(const std::string& path);

ordered_json system_to_json(const AugmentedSystem& sys);
AugmentedSystem system_from_json(const ordered_json& j);
AugmentedSystem load_system(const std::string& path);

ordered_json report_to_json(const PrivacyAuditReport& report);

ordered_json catalog_to_json(const std::vector<GadgetCandidate>& entries);

void write_trace_csv(const SimulationTrace& trace, const std::string& path, int stride = 1);
ordered_json trace_to_json(const SimulationTrace& trace, int stride = 1);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace privcon
