#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "paper_fixtures.hpp"
#include "privcon/augment.hpp"
#include "privcon/exactla.hpp"
#include "privcon/privacy.hpp"
#include "test_support.hpp"

using namespace privcon;
using testsup::mat_eq;

namespace {

// C = [ I6 | 0 ], what agent 0 of the 12-state system measures
RationalMatrix c_first(Index observed, Index dim) {
    RationalMatrix c = RationalMatrix::Constant(observed, dim, Rational(0));
    for (Index i = 0; i < observed; ++i) c(i, i) = Rational(1);
    return c;
}

}  // namespace

TEST_CASE("pbh matrix layout") {
    RationalMatrix a = RationalMatrix::Constant(2, 2, Rational(0));
    RationalMatrix p = pbh_matrix(a, rational_identity(2), Rational(0));
    REQUIRE(p.rows() == 4);
    CHECK(mat_eq(p.topRows(2), rational_identity(2)));
    for (Index i = 2; i < 4; ++i)
        for (Index j = 0; j < 2; ++j) CHECK(p(i, j).is_zero());

    // the 6x3 stack for the cycle: identity over -1/2 off-diagonals and
    // lambda on the diagonal
    Rational lam(7, 3);
    RationalMatrix pc = pbh_matrix(fixtures::cycle3_matrix(), rational_identity(3), lam);
    REQUIRE(pc.rows() == 6);
    CHECK(pc(3, 0) == lam);
    CHECK(pc(3, 1) == Rational(-1, 2));
    CHECK(pc(5, 2) == lam);
    CHECK_THROWS(pbh_matrix(a, rational_identity(3), lam));
}

TEST_CASE("alg1 systems have full PBH row space away from zero") {
    auto sys = build_alg1(fixtures::cycle3_graph(), 5);
    // observer 0 with proof-strength outputs: all originals + own gadget
    auto spec = make_observer(sys, 0);
    RationalMatrix c = output_matrix(spec, sys.dim());
    for (const Rational& lam : {Rational(1), Rational(-2, 3)}) {
        auto r = rref(pbh_matrix(sys.ap, c, lam));
        CHECK(r.rank == sys.dim());
    }
    // and rank deficiency exactly at zero
    auto r0 = rref(pbh_matrix(sys.ap, c, Rational(0)));
    CHECK(r0.rank < sys.dim());
}

TEST_CASE("observability of the reference systems") {
    // any agent of the raw cycle observes everything
    auto raw = wrap_raw(fixtures::cycle3_graph(), fixtures::cycle3_x0());
    for (int obs = 0; obs < 3; ++obs) {
        auto spec = make_observer(raw, obs, {}, ObserverMode::Minimal);
        CHECK(is_observable(raw.ap, output_matrix(spec, raw.dim())));
    }

    CHECK_FALSE(is_observable(fixtures::printed_ap12(), c_first(6, 12)));
    CHECK_FALSE(is_observable(fixtures::printed_ap15(), c_first(7, 15)));
}

TEST_CASE("kalman and per-eigenvalue PBH agree on the known spectra") {
    // eigenvalues 1 and 0 are known for these fixtures
    auto check_consistency = [](const RationalMatrix& a, const RationalMatrix& c) {
        bool kalman = is_observable(a, c);
        bool pbh_all = true;
        for (const Rational& lam : {Rational(0), Rational(1)})
            pbh_all = pbh_all && rref(pbh_matrix(a, c, lam)).rank == a.rows();
        if (kalman) CHECK(pbh_all);  // Kalman-observable forces full PBH rank everywhere
        if (!pbh_all) CHECK_FALSE(kalman);
    };
    check_consistency(fixtures::printed_ap12(), c_first(6, 12));
    check_consistency(fixtures::printed_ap15(), c_first(7, 15));
    check_consistency(to_matrix(fixtures::cycle3_graph()), rational_identity(3));
}

TEST_CASE("recoverability fixtures of the 12-state system") {
    RationalMatrix ap = fixtures::printed_ap12();
    RationalMatrix c = c_first(6, 12);

    // single hidden coordinates of agents 2 and 3 (0-indexed states 9, 11)
    CHECK_FALSE(can_recover_at(ap, c, unit_vector(12, 9), Rational(0)));
    CHECK_FALSE(can_recover_at(ap, c, unit_vector(12, 11), Rational(0)));
    CHECK_FALSE(can_recover(ap, c, unit_vector(12, 9)));
    CHECK_FALSE(can_recover(ap, c, unit_vector(12, 11)));

    // e7 + e8 + 1/2 e9 (1-indexed) is recoverable
    RationalVector combo = RationalVector::Constant(12, Rational(0));
    combo(6) = Rational(1);
    combo(7) = Rational(1);
    combo(8) = Rational(1, 2);
    CHECK(can_recover_at(ap, c, combo, Rational(0)));
    CHECK(can_recover(ap, c, combo));

    // plain sums of both hidden gadgets stay hidden
    for (int agent = 1; agent <= 2; ++agent) {
        RationalVector sum = unit_vector(12, agent);
        for (int k = 0; k < 3; ++k) sum(3 + 3 * agent + k) = Rational(1);
        CHECK_FALSE(can_recover(ap, c, sum));
    }

    // anything is recoverable in an observable pair
    CHECK(can_recover(to_matrix(fixtures::cycle3_graph()), rational_identity(3),
                      fixtures::vector_from({"3", "-7/2", "1/5"})));
}

TEST_CASE("monotonicity: widening the output never hides a vector") {
    auto sys = build_alg2(fixtures::cycle3_graph(), fixtures::cycle3_x0());
    std::mt19937_64 rng(51);
    for (int t = 0; t < 40; ++t) {
        RationalVector target(12);
        for (Index i = 0; i < 12; ++i)
            target(i) = Rational(static_cast<long long>(rng() % 7) - 3);
        RationalMatrix small = c_first(6, 12);
        RationalMatrix big = c_first(9, 12);
        if (can_recover(sys.ap, small, target)) CHECK(can_recover(sys.ap, big, target));
    }
}

TEST_CASE("no single gadget state of an alg1 system is recoverable") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto sys = build_alg1(fixtures::cycle3_graph(), seed);
        auto spec = make_observer(sys, 0);
        RationalMatrix c = output_matrix(spec, sys.dim());
        RrefResult basis = observable_subspace_basis(sys.ap, c);
        for (int j = 1; j < 3; ++j)
            for (int z : sys.index_map[j])
                CHECK_FALSE(rowspace_contains_reduced(basis, unit_vector(sys.dim(), z)));
    }
}

TEST_CASE("the reduced block of the reversible construction matches the reference") {
    // rows of the zero-eigenvalue PBH matrix supported on one hidden gadget,
    // reduced, equal the nonzero rows of the reference block D
    RationalMatrix ap = fixtures::printed_ap15();
    RationalMatrix p0 = pbh_matrix(ap, c_first(7, 15), Rational(0));
    auto reduced = rref(p0);

    // extract the basis rows living entirely on agent 2's gadget (cols 7..10)
    std::vector<RationalVector> block_rows;
    for (Index r = 0; r < reduced.rank; ++r) {
        bool outside = false, inside = false;
        for (Index ccol = 0; ccol < 15; ++ccol) {
            if (reduced.reduced(r, ccol).is_zero()) continue;
            if (ccol >= 7 && ccol <= 10)
                inside = true;
            else
                outside = true;
        }
        if (inside && !outside) {
            RationalVector v(4);
            for (int k = 0; k < 4; ++k) v(k) = reduced.reduced(r, 7 + k);
            block_rows.push_back(v);
        }
    }
    REQUIRE(block_rows.size() == 3);
    RationalMatrix block(3, 4);
    for (int r = 0; r < 3; ++r) block.row(r) = block_rows[r].transpose();

    RationalMatrix d_rows = fixtures::matrix_from_rows(
        {{"1", "0", "0", "0"}, {"0", "1", "0", "22/3"}, {"0", "0", "1", "-7/2"}});
    // same row space both ways
    for (int r = 0; r < 3; ++r) {
        CHECK(rowspace_contains(block, RationalVector(d_rows.row(r).transpose())));
        CHECK(rowspace_contains(d_rows, RationalVector(block.row(r).transpose())));
    }
}

TEST_CASE("audit verdicts for the reference systems") {
    auto sys = solve_p1d(fixtures::cycle3_matrix(), fixtures::cycle3_x0());
    for (int obs = 0; obs < 3; ++obs) {
        auto report = audit(sys, obs);
        CHECK(report.private_verdict);
        for (const auto& t : report.targets) {
            CHECK_FALSE(t.plain_sum_recoverable);
            REQUIRE(t.weighted_recoverable.has_value());
            CHECK_FALSE(*t.weighted_recoverable);
        }
    }

    auto raw = wrap_raw(fixtures::cycle3_graph(), fixtures::cycle3_x0());
    auto report = audit(raw, 0);
    CHECK_FALSE(report.private_verdict);
    for (const auto& t : report.targets) CHECK(t.plain_sum_recoverable);

    CHECK_THROWS(audit(sys, 99));
}

TEST_CASE("coalitions do not break the remaining agent") {
    auto sys = solve_p1d(fixtures::cycle3_matrix(), fixtures::cycle3_x0());
    auto report = audit(sys, 0, {1});
    REQUIRE(report.targets.size() == 1);
    CHECK(report.targets[0].agent == 2);
    CHECK(report.private_verdict);
}

TEST_CASE("alg2 system audits private as well") {
    auto sys = build_alg2(fixtures::cycle3_graph(), fixtures::cycle3_x0());
    auto report = audit(sys, 0);
    CHECK(report.private_verdict);
}
