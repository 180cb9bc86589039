#pragma once

#include <cstdint>
#include <vector>

#include "privcon/netgraph.hpp"
#include "privcon/types.hpp"

namespace privcon {

enum class AugmentKind { Raw, Alg1_3N, Alg2_4N, Alg3_5N };

const char* kind_name(AugmentKind k);
AugmentKind kind_from_name(const std::string& name);

// Bundle of one augmented network: the original graph, the augmented dynamics
// matrix, where each agent's extra states live, the unit left eigenvector
// (when the construction defines one) and the encoded initial state.
struct AugmentedSystem {
    WeightedDigraph original;
    AugmentKind kind = AugmentKind::Raw;
    RationalMatrix ap;
    std::vector<std::vector<int>> index_map;  // per agent: its augmented-state indices
    RationalVector v_left;                    // empty when not defined
    RationalVector x_tilde0;                  // empty when not encoded
    int n_original = 0;

    Index dim() const { return ap.rows(); }
};

// Per-agent partition of the initial value across augmented states. Empty
// parts mean "use the default", which is proportional to (1,2,3[,4]).
struct SplitChoice {
    std::vector<std::vector<Rational>> parts;

    bool is_default() const { return parts.empty(); }
    static SplitChoice defaults() { return {}; }
};

// Two extra states per agent, bidirectionally attached; random distinct
// nonzero gadget weights (numerators from {1..97} over 101). Privacy-only
// construction: no left eigenvector, no encoded state.
AugmentedSystem build_alg1(const WeightedDigraph& g, std::uint64_t seed,
                           bool row_normalize = false);

// Three extra states per agent wired as the asymmetric 4-node gadget, rows
// normalized to stochastic; encodes x0 through the agents' split and the
// left-eigenvector rescaling.
AugmentedSystem build_alg2(const WeightedDigraph& g, const RationalVector& x0,
                           const SplitChoice& split = {});

// Four extra states per agent with the fixed reversible constants; input must
// be row-stochastic, time-reversible and structurally bidirected.
RationalMatrix build_alg3(const RationalMatrix& a);

// Full distributed-design pipeline: build_alg3, propagate the detailed-balance
// vector, normalize it, and encode x0 so the consensus value is the exact
// average of the original initial states.
AugmentedSystem solve_p1d(const RationalMatrix& a, const RationalVector& x0,
                          const SplitChoice& split = {});

// Inverts the initial-state encoding: recovers each agent's split from a
// printed (floating-point) encoded state, rationalized with denominator
// <= 10^7. Entries must come out strictly positive.
SplitChoice recover_split(const AugmentedSystem& system,
                          const Eigen::VectorXd& printed_xtilde);

// Wraps an unaugmented network so it can flow through audit/simulate.
AugmentedSystem wrap_raw(const WeightedDigraph& g, const RationalVector& x0 = {});

}  // namespace privcon
