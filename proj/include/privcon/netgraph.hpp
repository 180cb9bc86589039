#pragma once

#include <optional>
#include <set>
#include <vector>

#include "privcon/types.hpp"

namespace privcon {

struct WeightedEdge {
    int src = 0;
    int dst = 0;
    Rational w;
};

// Directed network of agents. Edge (i,j) means i transmits to j; the induced
// dynamics matrix follows A[j][i] = w(i,j), i.e. row j collects what j
// receives. Off-diagonal weights must be positive; self-loops may carry any
// nonzero weight.
class WeightedDigraph {
public:
    WeightedDigraph() = default;
    WeightedDigraph(int node_count, std::vector<WeightedEdge> edges);

    int node_count() const { return node_count_; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }

    // out-neighbors j of i, i.e. targets of edges (i, j), ascending
    const std::vector<int>& out(int i) const { return out_[i]; }
    // in-neighbors j of i, i.e. sources of edges (j, i), ascending
    const std::vector<int>& in(int i) const { return in_[i]; }

    bool has_edge(int src, int dst) const;

private:
    int node_count_ = 0;
    std::vector<WeightedEdge> edges_;
    std::vector<std::vector<int>> out_, in_;
};

// N_i = {i} union {j : (i,j) in E}
std::set<int> neighbor_set(const WeightedDigraph& g, int agent);

RationalMatrix to_matrix(const WeightedDigraph& g);
// inverse of to_matrix: one edge per nonzero entry
WeightedDigraph from_matrix(const RationalMatrix& a);

bool is_strongly_connected(const WeightedDigraph& g);

// gcd of directed cycle lengths, via BFS level differences; requires strong
// connectivity
int period(const WeightedDigraph& g);

bool is_bidirected(const WeightedDigraph& g);

bool is_row_stochastic(const RationalMatrix& a);

// Detailed-balance vector s with sum 1 and s_i A_ij = s_j A_ji for all i,j,
// obtained by propagating s along a BFS tree from node 0 (lowest-index
// frontier first) and checking every edge. nullopt when the structure is
// bidirected but no such s exists.
std::optional<RationalVector> reversibility_vector(const RationalMatrix& a);

}  // namespace privcon
