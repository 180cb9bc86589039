#pragma once

#include <random>

#include "privcon/augment.hpp"
#include "privcon/netgraph.hpp"
#include "privcon/types.hpp"

namespace testsup {

using namespace privcon;

inline bool mat_eq(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

inline bool vec_eq(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) return false;
    for (Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

inline Rational rand_rational(std::mt19937_64& rng, int num_range = 20, int den_range = 8) {
    return Rational(static_cast<long long>(rng() % num_range) + 1,
                    static_cast<long long>(rng() % den_range) + 1);
}

inline RationalMatrix rand_matrix(std::mt19937_64& rng, Index rows, Index cols,
                                  int zero_percent = 30) {
    RationalMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            if (rng() % 100 < static_cast<unsigned>(zero_percent))
                m(i, j) = Rational(0);
            else {
                m(i, j) = rand_rational(rng);
                if (rng() % 2) m(i, j) = -m(i, j);
            }
        }
    return m;
}

// connected bidirected graph plus a reversible row-stochastic matrix on it:
// symmetric positive weights row-normalized (detailed balance with s
// proportional to the row sums)
inline RationalMatrix rand_reversible_stochastic(std::mt19937_64& rng, int n) {
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, Rational(0)));
    auto connect = [&](int i, int j) {
        Rational v = rand_rational(rng);
        w[i][j] = v;
        w[j][i] = v;
    };
    for (int i = 1; i < n; ++i) connect(static_cast<int>(rng() % i), i);
    for (int e = 0; e < n / 2 + 1; ++e) {
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

// random strongly connected digraph with positive weights
inline WeightedDigraph rand_strongly_connected(std::mt19937_64& rng, int n) {
    std::vector<WeightedEdge> edges;
    std::set<std::pair<int, int>> seen;
    auto add = [&](int i, int j) {
        if (i == j || !seen.insert({i, j}).second) return;
        edges.push_back({i, j, rand_rational(rng)});
    };
    for (int i = 0; i < n; ++i) add(i, (i + 1) % n);  // covering cycle
    for (int e = 0; e < n; ++e) add(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    return WeightedDigraph(n, std::move(edges));
}

}  // namespace testsup
