#include "privcon/exactla.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace privcon {

RrefResult rref(const RationalMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw std::invalid_argument("rref of empty matrix");

    RrefResult res;
    res.reduced = m;
    RationalMatrix& a = res.reduced;
    const Index rows = a.rows(), cols = a.cols();

    Index pivot_row = 0;
    for (Index col = 0; col < cols && pivot_row < rows; ++col) {
        Index sel = -1;
        for (Index r = pivot_row; r < rows; ++r) {
            if (!a(r, col).is_zero()) { sel = r; break; }
        }
        if (sel < 0) continue;
        if (sel != pivot_row) a.row(sel).swap(a.row(pivot_row));

        Rational inv_p = inverse(a(pivot_row, col));
        for (Index j = col; j < cols; ++j) a(pivot_row, j) *= inv_p;

        for (Index r = 0; r < rows; ++r) {
            if (r == pivot_row || a(r, col).is_zero()) continue;
            Rational f = a(r, col);
            for (Index j = col; j < cols; ++j) a(r, j) -= f * a(pivot_row, j);
        }
        res.pivot_cols.push_back(col);
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

bool rowspace_contains_reduced(const RrefResult& basis, const RationalVector& v) {
    if (v.size() != basis.reduced.cols())
        throw std::invalid_argument("rowspace_contains: dimension mismatch");
    RationalVector resid = v;
    for (Index p = 0; p < basis.rank; ++p) {
        Index c = basis.pivot_cols[p];
        if (resid(c).is_zero()) continue;
        Rational f = resid(c);
        for (Index j = c; j < resid.size(); ++j) resid(j) -= f * basis.reduced(p, j);
    }
    for (Index j = 0; j < resid.size(); ++j)
        if (!resid(j).is_zero()) return false;
    return true;
}

bool rowspace_contains(const RationalMatrix& m, const RationalVector& v) {
    return rowspace_contains_reduced(rref(m), v);
}

RationalVector left_eigenvector_unit(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("left_eigenvector_unit: matrix not square");
    const Index n = a.rows();

    // nullspace of (a^T - I)
    RationalMatrix t = a.transpose();
    for (Index i = 0; i < n; ++i) t(i, i) -= Rational(1);
    RrefResult r = rref(t);

    Index nullity = n - r.rank;
    if (nullity == 0) throw std::domain_error("no unit eigenvalue");
    if (nullity > 1) throw std::domain_error("eigenvalue 1 not simple for left eigenspace");

    // single free column -> one basis vector
    std::vector<bool> is_pivot(n, false);
    for (Index c : r.pivot_cols) is_pivot[c] = true;
    Index free_col = -1;
    for (Index c = 0; c < n; ++c)
        if (!is_pivot[c]) { free_col = c; break; }

    RationalVector v = RationalVector::Constant(n, Rational(0));
    v(free_col) = Rational(1);
    for (Index p = 0; p < r.rank; ++p) v(r.pivot_cols[p]) = -r.reduced(p, free_col);

    Rational sum(0);
    for (Index i = 0; i < n; ++i) sum += v(i);
    if (sum.is_zero()) throw std::domain_error("unit left eigenvector has zero coordinate sum");
    Rational inv_sum = inverse(sum);
    for (Index i = 0; i < n; ++i) v(i) *= inv_sum;
    return v;
}

std::vector<double> eigen_magnitudes(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigen_magnitudes: matrix not square");
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_double(a), /*computeEigenvectors=*/false);
    std::vector<double> mags(a.rows());
    for (Index i = 0; i < a.rows(); ++i) mags[i] = std::abs(es.eigenvalues()(i));
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    return mags;
}

}  // namespace privcon
