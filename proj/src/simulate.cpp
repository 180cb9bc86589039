#include "privcon/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "privcon/netgraph.hpp"

namespace privcon {

namespace {

double spread(const Eigen::VectorXd& x) { return x.maxCoeff() - x.minCoeff(); }

SimulationTrace finish_trace(std::vector<Eigen::VectorXd> rows, bool converged, double tol) {
    SimulationTrace t;
    t.states.resize(static_cast<Index>(rows.size()), rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i) t.states.row(static_cast<Index>(i)) = rows[i];
    t.rounds = static_cast<int>(rows.size()) - 1;
    t.final_spread = spread(rows.back());
    t.converged = converged && t.final_spread <= tol;
    if (t.converged) t.consensus_value = rows.back().mean();
    return t;
}

}  // namespace

SimulationTrace run_matrix(const Eigen::MatrixXd& a, const Eigen::VectorXd& x0, double tol,
                           int max_rounds) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (a.rows() != a.cols() || a.cols() != x0.size())
        throw std::invalid_argument("run_matrix: dimension mismatch");

    std::vector<Eigen::VectorXd> rows{x0};
    Eigen::VectorXd x = x0;
    bool converged = spread(x) <= tol;
    for (int k = 0; k < max_rounds && !converged; ++k) {
        x = a * x;
        rows.push_back(x);
        converged = spread(x) <= tol;
    }
    return finish_trace(std::move(rows), converged, tol);
}

SimulationTrace run_matrix(const RationalMatrix& a, const Eigen::VectorXd& x0, double tol,
                           int max_rounds) {
    return run_matrix(to_double(a), x0, tol, max_rounds);
}

SimulationTrace run_agents(const AugmentedSystem& sys, double tol, int max_rounds) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (sys.x_tilde0.size() != sys.dim())
        throw std::invalid_argument("run_agents requires an encoded initial state");

    const int n = sys.n_original;
    const Index dim = sys.dim();

    // build the machines, rejecting any dependence outside the local view
    std::vector<AgentMachine> agents(n);
    for (int i = 0; i < n; ++i) {
        AgentMachine& m = agents[i];
        m.id = i;
        m.own.push_back(i);
        for (int z : sys.index_map[i]) m.own.push_back(z);

        std::set<int> allowed(m.own.begin(), m.own.end());
        for (int j : sys.original.in(i)) allowed.insert(j);

        for (int row : m.own) {
            std::vector<std::pair<int, double>> row_terms;
            for (Index col = 0; col < dim; ++col) {
                if (sys.ap(row, col).is_zero()) continue;
                if (!allowed.count(static_cast<int>(col)))
                    throw std::logic_error("locality violation: agent " + std::to_string(i) +
                                           " row " + std::to_string(row) + " reads state " +
                                           std::to_string(col));
                row_terms.emplace_back(static_cast<int>(col), sys.ap(row, col).to_double());
            }
            m.terms.push_back(std::move(row_terms));
        }
    }

    Eigen::VectorXd x = to_double(sys.x_tilde0);
    std::vector<Eigen::VectorXd> rows{x};
    bool converged = spread(x) <= tol;
    Eigen::VectorXd next(dim);
    for (int k = 0; k < max_rounds && !converged; ++k) {
        // all broadcasts happen against the round-k snapshot in x
        for (const AgentMachine& m : agents) {
            for (size_t r = 0; r < m.own.size(); ++r) {
                double acc = 0.0;
                for (const auto& [col, w] : m.terms[r]) acc += w * x(col);
                next(m.own[r]) = acc;
            }
        }
        x = next;
        rows.push_back(x);
        converged = spread(x) <= tol;
    }
    return finish_trace(std::move(rows), converged, tol);
}

std::vector<RationalVector> run_matrix_exact(const RationalMatrix& a, const RationalVector& x0,
                                             int rounds) {
    if (a.rows() != a.cols() || a.cols() != x0.size())
        throw std::invalid_argument("run_matrix_exact: dimension mismatch");
    std::vector<RationalVector> out{x0};
    RationalVector x = x0;
    for (int k = 0; k < rounds; ++k) {
        x = a * x;
        out.push_back(x);
    }
    return out;
}

RationalVector run_distributed_s(const RationalMatrix& ap) {
    if (ap.rows() != ap.cols()) throw std::invalid_argument("run_distributed_s: matrix not square");
    const Index n = ap.rows();

    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (ap(i, j).is_zero() != ap(j, i).is_zero())
                throw precondition_error("structure not bidirected");

    RationalVector s = RationalVector::Constant(n, Rational(0));
    std::vector<int> parent(n, -1);
    std::vector<bool> known(n, false);
    s(0) = Rational(1);
    known[0] = true;

    // synchronous flooding; an unset node adopts the lowest-id set neighbor
    for (Index round = 0; round < n; ++round) {
        bool progress = false, incomplete = false;
        std::vector<std::pair<Index, Index>> adoptions;  // (child, parent)
        for (Index j = 0; j < n; ++j) {
            if (known[j]) continue;
            Index src = -1;
            for (Index i = 0; i < n; ++i) {
                if (known[i] && !ap(i, j).is_zero()) { src = i; break; }
            }
            if (src >= 0)
                adoptions.emplace_back(j, src);
            else
                incomplete = true;
        }
        for (auto [j, i] : adoptions) {
            s(j) = s(i) * ap(i, j) / ap(j, i);
            parent[j] = static_cast<int>(i);
            known[j] = true;
            progress = true;
        }
        if (!progress) {
            if (incomplete) throw precondition_error("not strongly connected");
            break;
        }
    }

    // every agent checks detailed balance on its cross edges
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (!ap(i, j).is_zero() && s(i) * ap(i, j) != s(j) * ap(j, i))
                throw std::domain_error("detailed balance violated");

    // convergecast the normalizer up the flooding tree, then broadcast down
    std::vector<std::vector<Index>> children(n);
    for (Index j = 1; j < n; ++j) children[parent[j]].push_back(j);
    std::vector<Rational> subtotal(n);
    std::vector<Index> order;  // leaves last
    order.push_back(0);
    for (size_t q = 0; q < order.size(); ++q)
        for (Index c : children[order[q]]) order.push_back(c);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        subtotal[*it] = s(*it);
        for (Index c : children[*it]) subtotal[*it] += subtotal[c];
    }
    Rational inv_z = inverse(subtotal[0]);
    for (Index i = 0; i < n; ++i) s(i) *= inv_z;
    return s;
}

ConvergenceStats convergence_stats(const SimulationTrace& trace, double target) {
    if (trace.states.rows() == 0) throw std::invalid_argument("empty trace");
    ConvergenceStats st;
    const Index rounds = trace.states.rows();

    Eigen::VectorXd err(rounds);
    for (Index k = 0; k < rounds; ++k)
        err(k) = (trace.states.row(k).array() - target).abs().maxCoeff();
    st.max_abs_error = err(rounds - 1);

    auto first_settled = [&](double eps) -> std::optional<int> {
        Index k = rounds;
        while (k > 0 && err(k - 1) <= eps) --k;
        if (k == rounds) return std::nullopt;
        return static_cast<int>(k);
    };
    st.rounds_to_1e3 = first_settled(1e-3);
    st.rounds_to_1e6 = first_settled(1e-6);
    st.rounds_to_1e9 = first_settled(1e-9);
    return st;
}

bool looks_period2(const SimulationTrace& trace, double tol) {
    if (trace.converged || trace.states.rows() < 3) return false;
    const Index last = trace.states.rows() - 1;
    double parity_delta =
        (trace.states.row(last) - trace.states.row(last - 2)).array().abs().maxCoeff();
    return parity_delta <= std::max(tol, 1e-9) && trace.final_spread > 10 * tol;
}

}  // namespace privcon
