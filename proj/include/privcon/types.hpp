#pragma once

#include <Eigen/Core>
#include <stdexcept>

#include "privcon/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<privcon::Rational> {
    using Real = privcon::Rational;
    using NonInteger = privcon::Rational;
    using Nested = privcon::Rational;
    using Literal = int;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 40,
    };
    static inline Real epsilon() { return privcon::Rational(0); }
    static inline Real dummy_precision() { return privcon::Rational(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace privcon {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

// thrown when a documented algorithm precondition is violated (CLI exit 2)
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Eigen::MatrixXd to_double(const RationalMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
    return out;
}

inline Eigen::VectorXd to_double(const RationalVector& v) {
    Eigen::VectorXd out(v.size());
    for (Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
    return out;
}

inline RationalMatrix rational_identity(Index n) {
    RationalMatrix m = RationalMatrix::Constant(n, n, Rational(0));
    for (Index i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

inline RationalVector unit_vector(Index dim, Index k) {
    RationalVector v = RationalVector::Constant(dim, Rational(0));
    v(k) = Rational(1);
    return v;
}

}  // namespace privcon
