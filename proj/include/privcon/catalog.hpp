#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "privcon/types.hpp"

namespace privcon {

struct FilterResults {
    bool strongly_connected = false;
    bool aperiodic = false;
    bool unobservable_from_node0 = false;
    bool privacy_parameterizable = false;

    bool all() const {
        return strongly_connected && aperiodic && unobservable_from_node0 &&
               privacy_parameterizable;
    }
};

// One admissible local network: node 0 is the original agent (fixed under
// relabeling), the remaining nodes are its augmented states.
struct GadgetCandidate {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;  // directed arcs
    std::uint32_t canonical_form = 0;
    FilterResults filters;
};

// Minimal adjacency bitmask over all permutations that keep node 0 in place.
std::uint32_t canonical_form_digraph(int n, const std::vector<std::pair<int, int>>& edges);

// Evaluates the admissibility filters on one candidate with `trials` fresh
// random weight assignments.
FilterResults verify_catalog_entry(const GadgetCandidate& c, int trials, std::uint64_t seed);

// All 4-node digraph gadgets (3 augmented states) passing the filters, one
// representative per node-0-fixing isomorphism class, ordered by canonical
// form.
std::vector<GadgetCandidate> enumerate_3aug(int trials = 20, std::uint64_t seed = 1);

// All 5-node bidirected gadgets (4 augmented states), same treatment.
std::vector<GadgetCandidate> enumerate_4aug_bidirected(int trials = 20, std::uint64_t seed = 1);

}  // namespace privcon
