#pragma once

#include <optional>
#include <vector>

#include "privcon/augment.hpp"
#include "privcon/types.hpp"

namespace privcon {

struct SimulationTrace {
    Eigen::MatrixXd states;  // one row per round, row 0 = initial state
    bool converged = false;
    int rounds = 0;
    double final_spread = 0.0;
    std::optional<double> consensus_value;
};

// One agent of the synchronous message-passing simulator. It owns the
// original coordinate plus its gadget coordinates and may read only those and
// the broadcasts of its in-neighbors; the constructor rejects any dynamics
// row that would require more.
struct AgentMachine {
    int id = 0;
    std::vector<int> own;  // own[0] is the broadcast coordinate
    // per own coordinate: the (column, weight) terms of its update row
    std::vector<std::vector<std::pair<int, double>>> terms;
};

// Centralized iteration x[k+1] = A x[k] in doubles until the spread
// max_i x_i - min_i x_i falls to tol or max_rounds is reached.
SimulationTrace run_matrix(const Eigen::MatrixXd& a, const Eigen::VectorXd& x0, double tol,
                           int max_rounds);
SimulationTrace run_matrix(const RationalMatrix& a, const Eigen::VectorXd& x0, double tol,
                           int max_rounds);

// Same dynamics executed agent by agent: one scalar broadcast per agent per
// round, local rows only, double-buffered snapshot reads.
SimulationTrace run_agents(const AugmentedSystem& sys, double tol, int max_rounds);

// Exact-arithmetic iteration for conservation checks; returns x[0..rounds].
std::vector<RationalVector> run_matrix_exact(const RationalMatrix& a, const RationalVector& x0,
                                             int rounds);

// The detailed-balance vector computed the way the agents would: flood s along
// tree edges (lowest-id parent wins), verify every cross edge, convergecast
// the normalizer up the tree and broadcast it back down.
RationalVector run_distributed_s(const RationalMatrix& ap);

struct ConvergenceStats {
    std::optional<int> rounds_to_1e3;
    std::optional<int> rounds_to_1e6;
    std::optional<int> rounds_to_1e9;
    double max_abs_error = 0.0;  // at the final recorded round
};

ConvergenceStats convergence_stats(const SimulationTrace& trace, double target);

// Heuristic for the classic augmentation failure: spread stays bounded away
// from zero while states repeat with period two.
bool looks_period2(const SimulationTrace& trace, double tol);

}  // namespace privcon
