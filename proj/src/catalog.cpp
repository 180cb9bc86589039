#include "privcon/catalog.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "privcon/exactla.hpp"
#include "privcon/netgraph.hpp"
#include "privcon/privacy.hpp"

// The two catalogs enumerate candidate local networks (one agent, node 0,
// plus its augmented states) and keep those admissible for private average
// consensus:
//   - strongly connected and aperiodic, so the candidate never blocks
//     consensus on any host network;
//   - unobservable when sensing only the agent node, and hiding at least one
//     augmented basis direction ("allows a privacy parameterization").
// Candidate classes are deduplicated up to relabeling of ALL nodes; the
// observability filters existentially pick the agent position. For directed
// candidates the filters must hold for generic (sampled) weights; for
// bidirected candidates a single admissible parameterization suffices, so the
// uniform all-ones weights join the sampled pool (symmetric structures are
// unobservable precisely under such symmetric parameterizations).
// The class representative fixes node 0 where the agent is most strongly
// attached: max out-degree, then in-degree, then neighborhood degree sum.

namespace privcon {

namespace {

inline int pair_bit(int n, int i, int j) { return i * n + j; }

std::uint32_t edges_to_mask(int n, const std::vector<std::pair<int, int>>& edges) {
    std::uint32_t m = 0;
    for (auto [i, j] : edges) m |= 1u << pair_bit(n, i, j);
    return m;
}

std::vector<std::pair<int, int>> mask_to_edges(int n, std::uint32_t mask) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (mask & (1u << pair_bit(n, i, j)))) edges.push_back({i, j});
    return edges;
}

std::uint32_t apply_perm(int n, std::uint32_t mask, const std::vector<int>& perm) {
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (mask & (1u << pair_bit(n, i, j))))
                out |= 1u << pair_bit(n, perm[i], perm[j]);
    return out;
}

std::uint32_t full_canonical(int n, std::uint32_t mask) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::uint32_t best = ~0u;
    do {
        best = std::min(best, apply_perm(n, mask, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool mask_bidirected(int n, std::uint32_t mask) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && ((mask >> pair_bit(n, i, j)) & 1u) != ((mask >> pair_bit(n, j, i)) & 1u))
                return false;
    return true;
}

WeightedDigraph structure_graph(int n, std::uint32_t mask) {
    std::vector<WeightedEdge> we;
    for (auto [i, j] : mask_to_edges(n, mask)) we.push_back({i, j, Rational(1)});
    return WeightedDigraph(n, std::move(we));
}

// agent-attachment score deciding which node of a class acts as node 0
struct PlacementScore {
    int out0 = -1, in0 = -1, nbsum = -1;
    std::uint32_t canon = ~0u;
    bool operator<(const PlacementScore& o) const {
        if (out0 != o.out0) return out0 < o.out0;
        if (in0 != o.in0) return in0 < o.in0;
        if (nbsum != o.nbsum) return nbsum < o.nbsum;
        return canon > o.canon;
    }
};

PlacementScore placement_score(int n, std::uint32_t mask) {
    PlacementScore s;
    std::set<int> out0, in0, nb0;
    std::vector<std::set<int>> und(n);
    for (auto [i, j] : mask_to_edges(n, mask)) {
        if (i == 0) out0.insert(j);
        if (j == 0) in0.insert(i);
        und[i].insert(j);
        und[j].insert(i);
    }
    s.out0 = static_cast<int>(out0.size());
    s.in0 = static_cast<int>(in0.size());
    nb0 = out0;
    nb0.insert(in0.begin(), in0.end());
    s.nbsum = 0;
    for (int v : nb0) s.nbsum += static_cast<int>(und[v].size());
    s.canon = mask;
    return s;
}

Rational random_weight(std::mt19937_64& rng) {
    return Rational(static_cast<long long>(rng() % 1000000) + 1,
                    static_cast<long long>(rng() % 100) + 1);
}

// observability filters for one node-0 placement
struct ObsFlags {
    bool unobservable = false;
    bool hidden = false;
};

ObsFlags placement_obs_flags(int n, std::uint32_t mask, int trials, std::uint64_t seed,
                             bool existential) {
    std::mt19937_64 rng(seed);
    RationalMatrix c = RationalMatrix::Constant(1, n, Rational(0));
    c(0, 0) = Rational(1);
    auto edges = mask_to_edges(n, mask);

    bool unobs_all = true, unobs_some = false, hidden_some = false;
    for (int t = 0; t <= trials; ++t) {
        RationalMatrix a = RationalMatrix::Constant(n, n, Rational(0));
        if (t == 0) {
            if (!existential) continue;  // uniform trial only for the existential pool
            for (auto [i, j] : edges) a(j, i) = Rational(1);
        } else {
            for (auto [i, j] : edges) a(j, i) = random_weight(rng);
        }
        RrefResult basis = observable_subspace_basis(a, c);
        if (basis.rank == n) {
            unobs_all = false;
            continue;
        }
        unobs_some = true;
        for (Index k = 1; k < n && !hidden_some; ++k)
            if (!rowspace_contains_reduced(basis, unit_vector(n, k))) hidden_some = true;
    }
    ObsFlags f;
    f.unobservable = existential ? unobs_some : unobs_all;
    f.hidden = hidden_some;
    return f;
}

FilterResults class_filters(int n, std::uint32_t any_mask, int trials, std::uint64_t seed,
                            bool existential) {
    FilterResults res;
    WeightedDigraph g = structure_graph(n, any_mask);
    res.strongly_connected = is_strongly_connected(g);
    if (!res.strongly_connected) return res;
    res.aperiodic = period(g) == 1;
    if (!res.aperiodic) return res;

    // distinct node-0 placements of the class
    std::set<std::uint32_t> placements;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        placements.insert(canonical_form_digraph(n, mask_to_edges(n, apply_perm(n, any_mask, perm))));
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (std::uint32_t p : placements) {
        ObsFlags f = placement_obs_flags(n, p, trials, seed ^ p, existential);
        res.unobservable_from_node0 = res.unobservable_from_node0 || f.unobservable;
        res.privacy_parameterizable = res.privacy_parameterizable || (f.unobservable && f.hidden);
    }
    return res;
}

std::vector<GadgetCandidate> enumerate_catalog(int n, const std::vector<std::uint32_t>& masks,
                                               int trials, std::uint64_t seed, bool existential) {
    // group all structures by full-isomorphism class
    std::map<std::uint32_t, std::uint32_t> cls;  // full canonical -> some mask
    for (std::uint32_t m : masks) cls.emplace(full_canonical(n, m), m);

    std::map<std::uint32_t, GadgetCandidate> out;  // keyed by representative canon
    for (auto& [full, any_mask] : cls) {
        FilterResults f = class_filters(n, any_mask, trials, seed ^ full, existential);
        if (!f.all()) continue;

        // representative: the placement where the agent is most attached
        PlacementScore best;
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        do {
            std::uint32_t placed = canonical_form_digraph(n, mask_to_edges(n, apply_perm(n, any_mask, perm)));
            PlacementScore sc = placement_score(n, placed);
            if (best < sc) best = sc;
        } while (std::next_permutation(perm.begin(), perm.end()));

        GadgetCandidate cand;
        cand.node_count = n;
        cand.canonical_form = best.canon;
        cand.edges = mask_to_edges(n, best.canon);
        cand.filters = f;
        out.emplace(cand.canonical_form, std::move(cand));
    }

    std::vector<GadgetCandidate> list;
    for (auto& [canon, cand] : out) list.push_back(std::move(cand));
    return list;
}

}  // namespace

std::uint32_t canonical_form_digraph(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::uint32_t mask = edges_to_mask(n, edges);
    std::uint32_t best = ~0u;
    do {
        best = std::min(best, apply_perm(n, mask, perm));
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
}

FilterResults verify_catalog_entry(const GadgetCandidate& c, int trials, std::uint64_t seed) {
    std::uint32_t mask = edges_to_mask(c.node_count, c.edges);
    // 4-node candidates belong to the directed catalog (generic reading);
    // 5-node bidirected candidates to the reversible one (existential reading)
    bool existential = c.node_count == 5 && mask_bidirected(c.node_count, mask);
    return class_filters(c.node_count, mask, trials, seed, existential);
}

std::vector<GadgetCandidate> enumerate_3aug(int trials, std::uint64_t seed) {
    const int n = 4;
    std::vector<int> arc_bits;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) arc_bits.push_back(pair_bit(n, i, j));

    std::vector<std::uint32_t> masks;
    masks.reserve(1u << arc_bits.size());
    for (std::uint32_t sel = 0; sel < (1u << arc_bits.size()); ++sel) {
        std::uint32_t mask = 0;
        for (size_t b = 0; b < arc_bits.size(); ++b)
            if (sel & (1u << b)) mask |= 1u << arc_bits[b];
        masks.push_back(mask);
    }
    return enumerate_catalog(n, masks, trials, seed, /*existential=*/false);
}

std::vector<GadgetCandidate> enumerate_4aug_bidirected(int trials, std::uint64_t seed) {
    const int n = 5;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});

    std::vector<std::uint32_t> masks;
    masks.reserve(1u << pairs.size());
    for (std::uint32_t sel = 0; sel < (1u << pairs.size()); ++sel) {
        std::uint32_t mask = 0;
        for (size_t b = 0; b < pairs.size(); ++b) {
            if (sel & (1u << b)) {
                mask |= 1u << pair_bit(n, pairs[b].first, pairs[b].second);
                mask |= 1u << pair_bit(n, pairs[b].second, pairs[b].first);
            }
        }
        masks.push_back(mask);
    }
    return enumerate_catalog(n, masks, trials, seed, /*existential=*/true);
}

}  // namespace privcon
