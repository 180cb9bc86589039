#pragma once

#include <vector>

#include "privcon/types.hpp"

namespace privcon {

struct RrefResult {
    RationalMatrix reduced;
    Index rank = 0;
    std::vector<Index> pivot_cols;
};

// Unique reduced row-echelon form, exact arithmetic. Pivot selection is the
// lowest-index row with a nonzero entry in the leftmost unfinished column, so
// the output is deterministic.
RrefResult rref(const RationalMatrix& m);

// Membership of v in the row space of m: rank([m; v]) == rank(m).
bool rowspace_contains(const RationalMatrix& m, const RationalVector& v);

// Cheap membership test against an already-reduced basis.
bool rowspace_contains_reduced(const RrefResult& basis, const RationalVector& v);

// Exact left eigenvector of a for eigenvalue 1, normalized so the entries sum
// to one. Requires the unit left-eigenspace to be one-dimensional.
RationalVector left_eigenvector_unit(const RationalMatrix& a);

// Floating-point eigenvalue magnitudes, descending. Diagnostics only; never
// feeds a privacy decision.
std::vector<double> eigen_magnitudes(const RationalMatrix& a);

}  // namespace privcon
