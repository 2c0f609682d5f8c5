#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracles/fd_curvature.hpp"
#include "spacetime/classifier.hpp"
#include "spacetime/manifold.hpp"

namespace fixtures {

using namespace spacetime;

inline const std::vector<std::string>& coords4() {
    static const std::vector<std::string> c{"x1", "x2", "x3", "x4"};
    return c;
}

// diag(1, 2x1^2, 3x2^2, -4) with x1, x2 > 0
inline Metric example_10_1() {
    return Metric::diagonal(coords4(), {Expr(1), parse_expr("2*x1^2"), parse_expr("3*x2^2"), Expr(-4)},
                            {{"x1", true, Rational(0)}, {"x2", true, Rational(0)}});
}

// Scalars and one-forms printed alongside the worked example (eps = +1 for both).
inline MQEStructure example_10_1_structure() {
    MQEStructure s;
    s.alpha = Expr(0);
    s.beta = parse_expr("-sqrt(3)/(2*x1^2*x2)");
    s.A = one_form({Expr(0), parse_expr("sqrt(2)*x1"), Expr(0), Expr(0)});
    s.B = one_form({parse_expr("sqrt(2/3)"), Expr(0), parse_expr("x2"), Expr(0)});
    return s;
}

// A structure that does satisfy S = alpha g + beta D on the worked example.
inline MQEStructure example_10_1_valid_structure() {
    MQEStructure s;
    s.alpha = Expr(0);
    s.beta = parse_expr("-sqrt(2)/(2*x1^2*x2)");
    s.A = one_form({Expr(0), parse_expr("sqrt(2)*x1"), Expr(0), Expr(0)});
    s.B = one_form({Expr(1), Expr(0), Expr(0), Expr(0)});
    return s;
}

inline Metric minkowski() { return Metric::diagonal(coords4(), {Expr(-1), Expr(1), Expr(1), Expr(1)}); }

// One quadratic monomial c*x_a*x_b (a or b may be -1 for "absent").
struct Term {
    Rational coef;
    int a = -1, b = -1;
};

// Minkowski plus sparse polynomial perturbations of degree <= 2, kept
// small enough that the signature survives on [1,2]^4. Carries its own
// numeric evaluator so oracles never see the parsed form.
struct PolyMetric {
    std::vector<std::vector<std::vector<Term>>> entries;  // [i][j] terms, symmetric

    std::string text(int i, int j) const {
        std::string s = (i == j) ? (i == 0 ? "-1" : "1") : "0";
        for (const auto& t : entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
            s += " + (" + t.coef.get_str() + ")";
            if (t.a >= 0) s += "*x" + std::to_string(t.a + 1);
            if (t.b >= 0) s += "*x" + std::to_string(t.b + 1);
        }
        return s;
    }

    Metric metric() const {
        std::vector<std::vector<Expr>> g(4, std::vector<Expr>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = parse_expr(text(i, j));
        return Metric(coords4(), g);
    }

    oracle::Mat eval(const oracle::Vec& x) const {
        oracle::Mat g(4, oracle::Vec(4, Real(0)));
        for (std::size_t i = 0; i < 4; ++i) {
            g[i][i] = i == 0 ? -1 : 1;
            for (std::size_t j = 0; j < 4; ++j)
                for (const auto& t : entries[i][j]) {
                    Real v = Real(t.coef.get_mpq_t());
                    if (t.a >= 0) v *= x[static_cast<std::size_t>(t.a)];
                    if (t.b >= 0) v *= x[static_cast<std::size_t>(t.b)];
                    g[i][j] += v;
                }
        }
        return g;
    }
};

inline PolyMetric random_poly_metric(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    PolyMetric m;
    m.entries.assign(4, std::vector<std::vector<Term>>(4));
    auto coef = [&] {
        Rational q(pick(3) + 1, 16);
        q.canonicalize();
        return pick(2) ? q : Rational(-q);
    };
    for (int i = 0; i < 4; ++i) {
        Term t{coef(), pick(4), pick(3) == 0 ? -1 : pick(4)};
        m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)].push_back(t);
    }
    int i = pick(4), j = pick(3);
    if (j >= i) ++j;
    Term t{coef(), pick(4), -1};
    m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(t);
    m.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].push_back(t);
    return m;
}

inline oracle::Vec to_vec(const Point& p, const std::vector<std::string>& coords) {
    oracle::Vec v;
    for (const auto& c : coords) v.push_back(Real(p.at(c).get_mpq_t()));
    return v;
}

}  // namespace fixtures
