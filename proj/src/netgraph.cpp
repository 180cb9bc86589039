#include "privcon/netgraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace privcon {

WeightedDigraph::WeightedDigraph(int node_count, std::vector<WeightedEdge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
    if (node_count_ < 0) throw std::invalid_argument("negative node count");
    out_.assign(node_count_, {});
    in_.assign(node_count_, {});
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges_) {
        if (e.src < 0 || e.src >= node_count_ || e.dst < 0 || e.dst >= node_count_)
            throw std::invalid_argument("edge endpoint out of range");
        if (!seen.insert({e.src, e.dst}).second)
            throw std::invalid_argument("duplicate edge");
        if (e.src != e.dst && e.w.sign() <= 0)
            throw std::invalid_argument("off-diagonal edge weight must be positive");
        if (e.src == e.dst && e.w.is_zero())
            throw std::invalid_argument("self-loop weight must be nonzero");
        out_[e.src].push_back(e.dst);
        in_[e.dst].push_back(e.src);
    }
    for (auto& v : out_) std::sort(v.begin(), v.end());
    for (auto& v : in_) std::sort(v.begin(), v.end());
}

bool WeightedDigraph::has_edge(int src, int dst) const {
    const auto& o = out_[src];
    return std::binary_search(o.begin(), o.end(), dst);
}

std::set<int> neighbor_set(const WeightedDigraph& g, int agent) {
    if (agent < 0 || agent >= g.node_count())
        throw std::invalid_argument("agent out of range");
    std::set<int> n(g.out(agent).begin(), g.out(agent).end());
    n.insert(agent);
    return n;
}

RationalMatrix to_matrix(const WeightedDigraph& g) {
    const Index n = g.node_count();
    RationalMatrix a = RationalMatrix::Constant(n, n, Rational(0));
    for (const auto& e : g.edges()) a(e.dst, e.src) = e.w;
    return a;
}

WeightedDigraph from_matrix(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("from_matrix: matrix not square");
    std::vector<WeightedEdge> edges;
    for (Index j = 0; j < a.rows(); ++j)
        for (Index i = 0; i < a.cols(); ++i)
            if (!a(j, i).is_zero())
                edges.push_back({static_cast<int>(i), static_cast<int>(j), a(j, i)});
    return WeightedDigraph(static_cast<int>(a.rows()), std::move(edges));
}

namespace {

// BFS reach over out- or in-edges
std::vector<int> bfs_levels(const WeightedDigraph& g, int start, bool reverse) {
    std::vector<int> level(g.node_count(), -1);
    std::deque<int> q{start};
    level[start] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : (reverse ? g.in(u) : g.out(u))) {
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                q.push_back(v);
            }
        }
    }
    return level;
}

}  // namespace

bool is_strongly_connected(const WeightedDigraph& g) {
    if (g.node_count() == 0) return false;
    if (g.node_count() == 1) return true;
    auto fwd = bfs_levels(g, 0, false);
    auto bwd = bfs_levels(g, 0, true);
    for (int i = 0; i < g.node_count(); ++i)
        if (fwd[i] < 0 || bwd[i] < 0) return false;
    return true;
}

int period(const WeightedDigraph& g) {
    if (!is_strongly_connected(g)) throw precondition_error("not strongly connected");
    auto level = bfs_levels(g, 0, false);
    long long d = 0;
    for (const auto& e : g.edges()) {
        long long diff = std::llabs(level[e.src] + 1 - level[e.dst]);
        d = std::gcd(d, diff);
    }
    // d = 0 can only happen for a single node with no edges
    return d == 0 ? 1 : static_cast<int>(d);
}

bool is_bidirected(const WeightedDigraph& g) {
    for (const auto& e : g.edges())
        if (e.src != e.dst && !g.has_edge(e.dst, e.src)) return false;
    return true;
}

bool is_row_stochastic(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("is_row_stochastic: matrix not square");
    for (Index i = 0; i < a.rows(); ++i) {
        Rational sum(0);
        for (Index j = 0; j < a.cols(); ++j) {
            if (a(i, j).sign() < 0) return false;
            sum += a(i, j);
        }
        if (sum != Rational(1)) return false;
    }
    return true;
}

std::optional<RationalVector> reversibility_vector(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("reversibility_vector: matrix not square");
    const Index n = a.rows();
    if (n == 0) throw std::invalid_argument("reversibility_vector: empty matrix");

    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (a(i, j).is_zero() != a(j, i).is_zero())
                throw precondition_error("structure not bidirected");

    WeightedDigraph structure = from_matrix(a);
    if (!is_strongly_connected(structure)) throw precondition_error("not strongly connected");

    // propagate s along the BFS tree, lowest-index frontier first
    RationalVector s = RationalVector::Constant(n, Rational(0));
    std::vector<bool> set_flag(n, false);
    s(0) = Rational(1);
    set_flag[0] = true;
    std::set<Index> frontier{0};
    while (!frontier.empty()) {
        Index i = *frontier.begin();
        frontier.erase(frontier.begin());
        for (Index j = 0; j < n; ++j) {
            if (set_flag[j] || a(i, j).is_zero()) continue;
            s(j) = s(i) * a(i, j) / a(j, i);
            set_flag[j] = true;
            frontier.insert(j);
        }
    }

    // detailed balance must hold on every edge, not just tree edges
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (!a(i, j).is_zero() && s(i) * a(i, j) != s(j) * a(j, i))
                return std::nullopt;

    Rational z(0);
    for (Index i = 0; i < n; ++i) z += s(i);
    Rational inv_z = inverse(z);
    for (Index i = 0; i < n; ++i) s(i) *= inv_z;
    return s;
}

}  // namespace privcon
