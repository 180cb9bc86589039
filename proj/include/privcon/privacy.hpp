#pragma once

#include <optional>
#include <set>
#include <vector>

#include "privcon/augment.hpp"
#include "privcon/exactla.hpp"
#include "privcon/types.hpp"

namespace privcon {

enum class ObserverMode {
    Minimal,        // observer's own states plus neighbors' broadcast coordinates
    ProofStrength,  // every original state plus the observing agents' own gadgets
};

struct ObserverSpec {
    int observer = 0;
    std::vector<int> coalition;  // further agents pooling their outputs
    ObserverMode mode = ObserverMode::ProofStrength;
    std::set<int> observed;      // augmented-state indices visible to the group
};

ObserverSpec make_observer(const AugmentedSystem& sys, int observer,
                           const std::vector<int>& coalition = {},
                           ObserverMode mode = ObserverMode::ProofStrength);

// C with one canonical row per observed state index, ascending.
RationalMatrix output_matrix(const ObserverSpec& spec, Index dim);

// [C; lambda*I - A]
RationalMatrix pbh_matrix(const RationalMatrix& a, const RationalMatrix& c, const Rational& lam);

// Reduced basis of the Kalman observability row space [C; CA; ...; CA^{n-1}],
// grown iteratively until the rank stops increasing.
RrefResult observable_subspace_basis(const RationalMatrix& a, const RationalMatrix& c);

bool is_observable(const RationalMatrix& a, const RationalMatrix& c);

// target^T x[0] computable from the output stream?
bool can_recover(const RationalMatrix& a, const RationalMatrix& c, const RationalVector& target);

// same question restricted to the PBH matrix at one eigenvalue
bool can_recover_at(const RationalMatrix& a, const RationalMatrix& c, const RationalVector& target,
                    const Rational& lam);

struct TargetReport {
    int agent = 0;
    std::vector<bool> gadget_recoverable;     // one flag per augmented state
    bool plain_sum_recoverable = false;        // e_j + sum of gadget vectors
    std::optional<bool> weighted_recoverable;  // 1/vL-weighted combination; absent without v_left
};

struct PrivacyAuditReport {
    ObserverSpec observer;
    std::vector<TargetReport> targets;
    bool private_verdict = false;
};

// Runs every recoverability check of the design conditions against each agent
// outside the observing group; the verdict is "private" only when all of them
// fail for every such agent.
PrivacyAuditReport audit(const AugmentedSystem& sys, int observer,
                         const std::vector<int>& coalition = {},
                         ObserverMode mode = ObserverMode::ProofStrength);

}  // namespace privcon
