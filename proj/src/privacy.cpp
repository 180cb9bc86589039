#include "privcon/privacy.hpp"

#include <algorithm>
#include <stdexcept>

#include "privcon/exactla.hpp"

namespace privcon {

ObserverSpec make_observer(const AugmentedSystem& sys, int observer,
                           const std::vector<int>& coalition, ObserverMode mode) {
    if (observer < 0 || observer >= sys.n_original)
        throw std::invalid_argument("observer out of range");
    for (int c : coalition)
        if (c < 0 || c >= sys.n_original) throw std::invalid_argument("coalition member out of range");

    ObserverSpec spec;
    spec.observer = observer;
    spec.coalition = coalition;
    std::sort(spec.coalition.begin(), spec.coalition.end());
    spec.coalition.erase(std::unique(spec.coalition.begin(), spec.coalition.end()),
                         spec.coalition.end());
    spec.mode = mode;

    std::vector<int> group = spec.coalition;
    group.push_back(observer);

    if (mode == ObserverMode::ProofStrength) {
        for (int j = 0; j < sys.n_original; ++j) spec.observed.insert(j);
    } else {
        for (int member : group) {
            spec.observed.insert(member);
            for (int j : neighbor_set(sys.original, member)) spec.observed.insert(j);
        }
    }
    for (int member : group)
        for (int z : sys.index_map[member]) spec.observed.insert(z);
    return spec;
}

RationalMatrix output_matrix(const ObserverSpec& spec, Index dim) {
    RationalMatrix c = RationalMatrix::Constant(static_cast<Index>(spec.observed.size()), dim,
                                                Rational(0));
    Index r = 0;
    for (int k : spec.observed) {
        if (k < 0 || k >= dim) throw std::invalid_argument("observed state out of range");
        c(r++, k) = Rational(1);
    }
    return c;
}

RationalMatrix pbh_matrix(const RationalMatrix& a, const RationalMatrix& c, const Rational& lam) {
    if (a.rows() != a.cols() || c.cols() != a.rows())
        throw std::invalid_argument("pbh_matrix: dimension mismatch");
    const Index n = a.rows();
    RationalMatrix p(c.rows() + n, n);
    p.topRows(c.rows()) = c;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) p(c.rows() + i, j) = (i == j ? lam : Rational(0)) - a(i, j);
    return p;
}

RrefResult observable_subspace_basis(const RationalMatrix& a, const RationalMatrix& c) {
    if (a.rows() != a.cols() || c.cols() != a.rows())
        throw std::invalid_argument("observable_subspace_basis: dimension mismatch");
    const Index n = a.rows();

    RrefResult basis = rref(c);
    // grow with one extra power of A per pass; the rank is monotone and
    // bounded by n, so this terminates in at most n passes
    for (Index pass = 0; pass < n; ++pass) {
        RationalMatrix active = basis.reduced.topRows(basis.rank);
        RationalMatrix stacked(2 * basis.rank, n);
        stacked.topRows(basis.rank) = active;
        stacked.bottomRows(basis.rank) = active * a;
        RrefResult next = rref(stacked);
        if (next.rank == basis.rank) return next;
        basis = std::move(next);
    }
    return basis;
}

bool is_observable(const RationalMatrix& a, const RationalMatrix& c) {
    return observable_subspace_basis(a, c).rank == a.rows();
}

bool can_recover(const RationalMatrix& a, const RationalMatrix& c, const RationalVector& target) {
    return rowspace_contains_reduced(observable_subspace_basis(a, c), target);
}

bool can_recover_at(const RationalMatrix& a, const RationalMatrix& c, const RationalVector& target,
                    const Rational& lam) {
    return rowspace_contains(pbh_matrix(a, c, lam), target);
}

PrivacyAuditReport audit(const AugmentedSystem& sys, int observer,
                         const std::vector<int>& coalition, ObserverMode mode) {
    PrivacyAuditReport report;
    report.observer = make_observer(sys, observer, coalition, mode);
    RationalMatrix c = output_matrix(report.observer, sys.dim());
    RrefResult basis = observable_subspace_basis(sys.ap, c);

    std::set<int> group(report.observer.coalition.begin(), report.observer.coalition.end());
    group.insert(observer);

    bool all_private = true;
    bool has_vl = sys.v_left.size() == sys.dim();
    for (int j = 0; j < sys.n_original; ++j) {
        if (group.count(j)) continue;
        TargetReport tr;
        tr.agent = j;

        // per-state flags are informational: a construction may expose single
        // augmented states (the reversible design always does) without
        // exposing the distributed initial value
        for (int z : sys.index_map[j])
            tr.gadget_recoverable.push_back(
                rowspace_contains_reduced(basis, unit_vector(sys.dim(), z)));

        RationalVector plain = unit_vector(sys.dim(), j);
        for (int z : sys.index_map[j]) plain(z) = Rational(1);
        tr.plain_sum_recoverable = rowspace_contains_reduced(basis, plain);

        // the verdict gates on the design conditions for the hidden value:
        // the plain-sum and eigenvector-weighted combinations must both stay
        // outside the recoverable space
        bool target_hidden = !tr.plain_sum_recoverable;

        if (has_vl) {
            RationalVector weighted = RationalVector::Constant(sys.dim(), Rational(0));
            bool defined = !sys.v_left(j).is_zero();
            for (int z : sys.index_map[j]) defined = defined && !sys.v_left(z).is_zero();
            if (defined) {
                weighted(j) = inverse(sys.v_left(j));
                for (int z : sys.index_map[j]) weighted(z) = inverse(sys.v_left(z));
                bool rec = rowspace_contains_reduced(basis, weighted);
                tr.weighted_recoverable = rec;
                target_hidden = target_hidden && !rec;
            }
        }

        all_private = all_private && target_hidden;
        report.targets.push_back(std::move(tr));
    }
    report.private_verdict = all_private;
    return report;
}

}  // namespace privcon
