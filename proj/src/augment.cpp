#include "privcon/augment.hpp"

#include <random>
#include <stdexcept>

#include "privcon/exactla.hpp"

namespace privcon {

const char* kind_name(AugmentKind k) {
    switch (k) {
        case AugmentKind::Raw: return "raw";
        case AugmentKind::Alg1_3N: return "alg1";
        case AugmentKind::Alg2_4N: return "alg2";
        case AugmentKind::Alg3_5N: return "p1d";
    }
    return "raw";
}

AugmentKind kind_from_name(const std::string& name) {
    if (name == "raw") return AugmentKind::Raw;
    if (name == "alg1") return AugmentKind::Alg1_3N;
    if (name == "alg2") return AugmentKind::Alg2_4N;
    if (name == "p1d" || name == "alg3") return AugmentKind::Alg3_5N;
    throw std::invalid_argument("unknown augmentation kind: " + name);
}

namespace {

void require_a2(const WeightedDigraph& g) {
    if (g.node_count() < 3) throw precondition_error("A2: at least three agents");
    if (!is_strongly_connected(g)) throw precondition_error("A2: strongly connected");
}

void normalize_rows(RationalMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i) {
        Rational sum(0);
        for (Index j = 0; j < m.cols(); ++j) sum += m(i, j);
        if (sum.is_zero()) throw std::domain_error("cannot normalize a zero row");
        Rational inv = inverse(sum);
        for (Index j = 0; j < m.cols(); ++j) m(i, j) *= inv;
    }
}

// per-agent split parts, validated; falls back to 1,2,...,count
std::vector<Rational> split_parts(const SplitChoice& split, int agent, int count) {
    if (split.is_default()) {
        std::vector<Rational> p(count);
        for (int k = 0; k < count; ++k) p[k] = Rational(k + 1);
        return p;
    }
    if (static_cast<int>(split.parts.size()) <= agent)
        throw std::invalid_argument("split missing entries for agent " + std::to_string(agent));
    const auto& p = split.parts[agent];
    if (static_cast<int>(p.size()) != count)
        throw std::invalid_argument("split for agent " + std::to_string(agent) + " must have " +
                                    std::to_string(count) + " entries");
    for (const auto& v : p)
        if (v.sign() <= 0) throw std::invalid_argument("split not positive");
    return p;
}

}  // namespace

AugmentedSystem build_alg1(const WeightedDigraph& g, std::uint64_t seed, bool row_normalize) {
    require_a2(g);
    const int n = g.node_count();
    const Index dim = 3 * static_cast<Index>(n);

    std::mt19937_64 rng(seed);
    auto draw = [&rng]() { return Rational(static_cast<long long>(rng() % 97 + 1), 101); };

    AugmentedSystem sys;
    sys.original = g;
    sys.kind = AugmentKind::Alg1_3N;
    sys.n_original = n;
    sys.ap = RationalMatrix::Constant(dim, dim, Rational(0));
    sys.ap.block(0, 0, n, n) = to_matrix(g);

    for (int i = 0; i < n; ++i) {
        Index z1 = n + 2 * i, z2 = n + 2 * i + 1;
        Rational r1 = draw(), r2 = draw();
        int retries = 0;
        while (r1 == r2) {
            if (++retries > 16) throw std::runtime_error("duplicate gadget weights");
            r2 = draw();
        }
        sys.ap(i, z1) = r1;
        sys.ap(i, z2) = r2;
        sys.ap(z1, i) = draw();
        sys.ap(z2, i) = draw();
        sys.index_map.push_back({static_cast<int>(z1), static_cast<int>(z2)});
    }
    if (row_normalize) normalize_rows(sys.ap);
    return sys;
}

AugmentedSystem build_alg2(const WeightedDigraph& g, const RationalVector& x0,
                           const SplitChoice& split) {
    require_a2(g);
    const int n = g.node_count();
    if (x0.size() != n) throw std::invalid_argument("x0 length must match agent count");
    const Index dim = 4 * static_cast<Index>(n);

    AugmentedSystem sys;
    sys.original = g;
    sys.kind = AugmentKind::Alg2_4N;
    sys.n_original = n;
    sys.ap = RationalMatrix::Constant(dim, dim, Rational(0));

    // the construction re-weights from scratch: only the structure of g is kept
    for (const auto& e : g.edges()) sys.ap(e.dst, e.src) = Rational(1);

    for (int i = 0; i < n; ++i) {
        Index z1 = n + 3 * i, z2 = n + 3 * i + 1, z3 = n + 3 * i + 2;
        sys.ap(i, z1) = Rational(2);
        sys.ap(i, z3) = Rational(1);
        sys.ap(z1, i) = Rational(1);
        sys.ap(z2, i) = Rational(1);
        sys.ap(z3, z2) = Rational(1);
        sys.index_map.push_back({static_cast<int>(z1), static_cast<int>(z2), static_cast<int>(z3)});
    }
    normalize_rows(sys.ap);

    sys.v_left = left_eigenvector_unit(sys.ap);

    sys.x_tilde0 = RationalVector::Constant(dim, Rational(0));
    Rational four_n(4LL * n);
    for (int i = 0; i < n; ++i) {
        auto parts = split_parts(split, i, 3);
        Rational part_sum = parts[0] + parts[1] + parts[2];
        if (part_sum.is_zero()) throw std::invalid_argument("zero split sum");
        Rational scale = Rational(4) * x0(i) / part_sum;
        for (int k = 0; k < 3; ++k) {
            Index idx = sys.index_map[i][k];
            if (sys.v_left(idx).is_zero())
                throw std::domain_error("left eigenvector vanishes on an augmented state");
            // step-9 distribution followed by the eigenvector rescaling
            sys.x_tilde0(idx) = scale * parts[k] / (four_n * sys.v_left(idx));
        }
    }
    return sys;
}

RationalMatrix build_alg3(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("build_alg3: matrix not square");
    const Index n = a.rows();
    if (!is_row_stochastic(a)) throw precondition_error("input not row-stochastic");
    // reversibility_vector also rejects non-bidirected structures and
    // disconnected inputs
    if (!reversibility_vector(a).has_value()) throw precondition_error("input not reversible");

    const Index dim = 5 * n;
    RationalMatrix ap = RationalMatrix::Constant(dim, dim, Rational(0));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) ap(i, j) = a(i, j) / Rational(2);

    for (Index i = 0; i < n; ++i) {
        Index z1 = n + 4 * i, z2 = z1 + 1, z3 = z1 + 2, z4 = z1 + 3;
        ap(i, z1) = Rational(1, 12);
        ap(i, z2) = Rational(1, 8);
        ap(i, z3) = Rational(1, 4);
        ap(i, z4) = Rational(1, 24);
        ap(z2, z1) = Rational(1, 2);
        ap(z1, z2) = Rational(3, 22);
        ap(z3, z1) = Rational(1, 4);
        ap(z1, z3) = Rational(1, 11);
        ap(z4, z1) = Rational(15, 16);
        ap(z1, z4) = Rational(15, 22);
        ap(z1, i) = Rational(1, 11);
        ap(z2, i) = Rational(1, 2);
        ap(z3, i) = Rational(3, 4);
        ap(z4, i) = Rational(1, 16);
    }

    if (!is_row_stochastic(ap)) throw std::logic_error("build_alg3 output not row-stochastic");
    return ap;
}

AugmentedSystem solve_p1d(const RationalMatrix& a, const RationalVector& x0,
                          const SplitChoice& split) {
    const Index n = a.rows();
    if (n < 3) throw precondition_error("A2: at least three agents");
    if (x0.size() != n) throw std::invalid_argument("x0 length must match agent count");

    AugmentedSystem sys;
    sys.kind = AugmentKind::Alg3_5N;
    sys.n_original = static_cast<int>(n);
    sys.ap = build_alg3(a);
    sys.original = from_matrix(a);

    // detailed-balance vector over the original agents, propagated from agent 0
    RationalVector s = RationalVector::Constant(5 * n, Rational(0));
    std::vector<bool> known(n, false);
    s(0) = Rational(1);
    known[0] = true;
    std::set<Index> frontier{0};
    while (!frontier.empty()) {
        Index i = *frontier.begin();
        frontier.erase(frontier.begin());
        for (Index j = 0; j < n; ++j) {
            if (known[j] || a(i, j).is_zero()) continue;
            s(j) = s(i) * a(i, j) / a(j, i);
            known[j] = true;
            frontier.insert(j);
        }
    }

    // gadget entries are fixed multiples of the agent's value
    const Rational gadget_ratio[4] = {Rational(11, 12), Rational(1, 4), Rational(1, 3),
                                      Rational(2, 3)};
    for (Index i = 0; i < n; ++i) {
        sys.index_map.push_back({});
        for (int k = 0; k < 4; ++k) {
            Index z = n + 4 * i + k;
            s(z) = gadget_ratio[k] * s(i);
            sys.index_map.back().push_back(static_cast<int>(z));
        }
    }

    Rational z_sum(0);
    for (Index i = 0; i < 5 * n; ++i) z_sum += s(i);
    Rational inv_z = inverse(z_sum);
    sys.v_left = s;
    for (Index i = 0; i < 5 * n; ++i) sys.v_left(i) *= inv_z;

    // encode: per agent the alphas sum to x_i[0]/N, the gadget state k holds
    // alpha_k / v_left_k, and the original coordinate starts at zero
    sys.x_tilde0 = RationalVector::Constant(5 * n, Rational(0));
    Rational inv_n = Rational(1, static_cast<long long>(n));
    for (Index i = 0; i < n; ++i) {
        auto parts = split_parts(split, static_cast<int>(i), 4);
        Rational part_sum = parts[0] + parts[1] + parts[2] + parts[3];
        Rational target = x0(i) * inv_n;
        for (int k = 0; k < 4; ++k) {
            Index z = sys.index_map[i][k];
            Rational alpha = parts[k] * target / part_sum;
            sys.x_tilde0(z) = alpha / sys.v_left(z);
        }
    }
    return sys;
}

SplitChoice recover_split(const AugmentedSystem& system, const Eigen::VectorXd& printed_xtilde) {
    if (system.v_left.size() != system.dim())
        throw std::invalid_argument("recover_split requires a system with v_left set");
    if (printed_xtilde.size() != system.dim())
        throw std::invalid_argument("printed state length mismatch");

    SplitChoice out;
    for (int i = 0; i < system.n_original; ++i) {
        std::vector<Rational> parts;
        for (int z : system.index_map[i]) {
            Rational xt = Rational::from_double(printed_xtilde(z), 10000000UL);
            Rational alpha = system.v_left(z) * xt;
            if (alpha.sign() <= 0) throw std::domain_error("recovered split entry not positive");
            parts.push_back(alpha);
        }
        out.parts.push_back(std::move(parts));
    }
    return out;
}

AugmentedSystem wrap_raw(const WeightedDigraph& g, const RationalVector& x0) {
    AugmentedSystem sys;
    sys.original = g;
    sys.kind = AugmentKind::Raw;
    sys.n_original = g.node_count();
    sys.ap = to_matrix(g);
    sys.index_map.assign(g.node_count(), {});
    if (x0.size() != 0) {
        if (x0.size() != g.node_count()) throw std::invalid_argument("x0 length mismatch");
        sys.x_tilde0 = x0;
    }
    try {
        sys.v_left = left_eigenvector_unit(sys.ap);
    } catch (const std::domain_error&) {
        // no unit eigenvalue, or not simple: leave v_left empty
    }
    return sys;
}

}  // namespace privcon
