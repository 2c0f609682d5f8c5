#include <doctest.h>

#include "fixtures.hpp"
#include "oracles/fd_curvature.hpp"
#include "spacetime/error.hpp"
#include "spacetime/manifold.hpp"

using namespace spacetime;
using fixtures::coords4;

namespace {

Expr P(const char* s) { return parse_expr(s); }

Real real_abs(const Real& x) { return boost::multiprecision::abs(x); }

// All nonzero components, each paired with its index.
std::vector<std::pair<Index, Expr>> nonzero(const Tensor& t) {
    std::vector<std::pair<Index, Expr>> out;
    for (std::size_t f = 0; f < t.size(); ++f)
        if (!t[f].is_zero()) out.emplace_back(t.unflatten(f), t[f]);
    return out;
}

}  // namespace

TEST_SUITE("manifold") {
    TEST_CASE("metric validation") {
        std::vector<std::vector<Expr>> asym{{Expr(1), P("x1")}, {Expr(0), Expr(1)}};
        try {
            Metric({"x1", "x2"}, asym);
            FAIL("expected MetricError");
        } catch (const MetricError& e) {
            CHECK(std::string(e.what()) == "metric not symmetric");
        }
        std::vector<std::vector<Expr>> degenerate{{Expr(1), Expr(1)}, {Expr(1), Expr(1)}};
        CHECK_THROWS_AS(Metric({"x1", "x2"}, degenerate), MetricError);
        // det = 1 - x1^2 vanishes nowhere on [1,2] except the boundary point x1 = 1
        std::vector<std::vector<Expr>> m{{Expr(1), P("x1")}, {P("x1"), Expr(1)}};
        CHECK_NOTHROW(Metric({"x1", "x2"}, m));
        CHECK_THROWS_AS(Metric::diagonal({"x1"}, {P("y")}), MetricError);
    }

    TEST_CASE("sample box respects constraints") {
        Metric g = Metric::diagonal({"x", "y"}, {Expr(1), Expr(1)}, {{"x", false, Rational(-3)}, {"y", true, Rational(5)}});
        Box b = g.sample_box();
        CHECK(b["x"].lo == -5);
        CHECK(b["x"].hi == -4);
        CHECK(b["y"].lo == 6);
        CHECK(b["y"].hi == 7);
    }

    TEST_CASE("inverse metric") {
        Tensor inv = inverse_metric(fixtures::example_10_1());
        CHECK(inv(0, 0) == Expr(1));
        CHECK(inv(1, 1) == P("1/(2*x1^2)"));
        CHECK(inv(2, 2) == P("1/(3*x2^2)"));
        CHECK(inv(3, 3) == P("-1/4"));
        CHECK(nonzero(inv).size() == 4);

        Tensor mi = inverse_metric(fixtures::minkowski());
        for (int i = 0; i < 4; ++i) CHECK(mi(i, i) == fixtures::minkowski()(i, i));

        Metric m({"x1", "x2"}, {{Expr(1), P("x1")}, {P("x1"), Expr(1)}});
        Tensor i2 = inverse_metric(m);
        CHECK(i2(0, 0) == P("1/(1 - x1^2)"));
        CHECK(i2(0, 1) == P("-x1/(1 - x1^2)"));
        // product with g is the identity
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Expr s = i2(a, 0) * m(0, b) + i2(a, 1) * m(1, b);
                CHECK(s == Expr(a == b ? 1 : 0));
            }
    }

    TEST_CASE("inverse of random metrics matches Gauss-Jordan") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto pm = fixtures::random_poly_metric(seed);
            Metric g = pm.metric();
            Tensor inv = inverse_metric(g);
            PrecisionScope scope(50);
            for (const auto& p : sample_points(g.sample_box(), 4)) {
                auto ref = oracle::gauss_jordan_inverse(pm.eval(fixtures::to_vec(p, coords4())));
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        CHECK(real_abs(evaluate(inv(i, j), p) - ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) <
                              Real("1e-40"));
            }
        }
    }

    TEST_CASE("Christoffel symbols of the worked example") {
        Tensor G = christoffel(fixtures::example_10_1());
        CHECK(G(0, 1, 1) == P("-2*x1"));
        CHECK(G(1, 0, 1) == P("1/x1"));
        CHECK(G(1, 1, 0) == P("1/x1"));
        CHECK(G(1, 2, 2) == P("-3*x2/(2*x1^2)"));
        CHECK(G(2, 1, 2) == P("1/x2"));
        CHECK(G(2, 2, 1) == P("1/x2"));
        CHECK(nonzero(G).size() == 6);  // four symbols, two with a symmetric image
        CHECK(christoffel(fixtures::minkowski()).is_zero());
    }

    TEST_CASE("Christoffel symbols of polar coordinates") {
        Metric polar = Metric::diagonal({"x1", "x2"}, {Expr(1), P("x1^2")});
        Tensor G = christoffel(polar);
        CHECK(G(0, 1, 1) == P("-x1"));
        CHECK(G(1, 0, 1) == P("1/x1"));
        CHECK(nonzero(G).size() == 3);
        oracle::FdCurvature fd([](const oracle::Vec& x) { return oracle::Mat{{1, 0}, {0, x[0] * x[0]}}; }, 2);
        PrecisionScope scope(80);
        for (const auto& p : sample_points(polar.sample_box(), 8)) {
            auto ref = fd.gamma(fixtures::to_vec(p, {"x1", "x2"}));
            for (int k = 0; k < 2; ++k)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        CHECK(real_abs(evaluate(G(k, i, j), p, 80) - ref[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                                                                        [static_cast<std::size_t>(j)]) < Real("1e-30"));
        }
        CHECK(riemann(polar).down.is_zero());
    }

    TEST_CASE("Riemann and Ricci of the worked example") {
        Geometry geo(fixtures::example_10_1());
        const Tensor& R = geo.riemann().down;
        Expr r1332 = P("-3*x2/x1");
        CHECK(R(0, 2, 2, 1) == r1332);
        CHECK(R(2, 0, 2, 1) == -r1332);
        CHECK(R(0, 2, 1, 2) == -r1332);
        CHECK(R(2, 1, 0, 2) == r1332);
        CHECK(nonzero(R).size() == 8);
        for (const auto& [idx, v] : nonzero(R)) CHECK((v == r1332 || v == -r1332));

        const Tensor& S = geo.ricci();
        CHECK(S(0, 1) == P("-1/(x1*x2)"));
        CHECK(S(1, 0) == P("-1/(x1*x2)"));
        CHECK(nonzero(S).size() == 2);
        CHECK(geo.scalar().is_zero());

        Geometry flat(fixtures::minkowski());
        CHECK(flat.riemann().up.is_zero());
        CHECK(flat.ricci().is_zero());
        CHECK(flat.scalar().is_zero());
    }

    TEST_CASE("Ricci of a product metric matches the finite-difference oracle") {
        Metric g = Metric::diagonal(coords4(), {Expr(1), Expr(1), P("x1^2 + 1"), Expr(1)});
        Tensor S = ricci(g);
        CHECK(S(0, 0) == P("1/(x1^2 + 1)^2"));  // slice curvature K = -1/(x1^2+1)^2
        oracle::FdCurvature fd(
            [](const oracle::Vec& x) {
                oracle::Mat m(4, oracle::Vec(4, Real(0)));
                m[0][0] = m[1][1] = m[3][3] = 1;
                m[2][2] = x[0] * x[0] + 1;
                return m;
            },
            4);
        PrecisionScope scope(80);
        for (const auto& p : sample_points(g.sample_box(), 8)) {
            auto ref = fd.ricci(fixtures::to_vec(p, coords4()));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    CHECK(real_abs(evaluate(S(i, j), p, 80) - ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) <
                          Real("1e-9"));
        }
    }

    TEST_CASE("space form: R = -K G and Ricci = -(n-1) K g") {
        // stereographic unit 3-sphere, K = 1
        std::vector<std::string> c{"x1", "x2", "x3"};
        Expr f = P("4/(1 + x1^2 + x2^2 + x3^2)^2");
        Metric g = Metric::diagonal(c, {f, f, f});
        Geometry geo(g);
        const Tensor& R = geo.riemann().down;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        Expr G = g(i, l) * g(j, k) - g(i, k) * g(j, l);
                        CHECK(R(i, j, k, l) == -G);
                    }
        for (int i = 0; i < 3; ++i) CHECK(geo.ricci()(i, i) == Expr(-2) * f);
        CHECK(geo.scalar() == Expr(-6));
    }

    TEST_CASE("Riemann matches the finite-difference oracle on random metrics") {
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            auto pm = fixtures::random_poly_metric(seed);
            Geometry geo(pm.metric());
            oracle::FdCurvature fd([&](const oracle::Vec& x) { return pm.eval(x); }, 4);
            PrecisionScope scope(80);
            for (const auto& p : sample_points(geo.metric().sample_box(), 2)) {
                auto ref = fd.riemann_down(fixtures::to_vec(p, coords4()));
                const Tensor& R = geo.riemann().down;
                for (std::size_t f = 0; f < R.size(); ++f) {
                    Index ix = R.unflatten(f);
                    Real want = ref[static_cast<std::size_t>(ix[0])][static_cast<std::size_t>(ix[1])][static_cast<std::size_t>(ix[2])]
                                   [static_cast<std::size_t>(ix[3])];
                    CHECK(real_abs(evaluate(R[f], p, 80) - want) < Real("1e-9"));
                }
            }
        }
    }

    TEST_CASE("Lie derivative of the metric") {
        Metric mink = fixtures::minkowski();
        CHECK(lie_derivative_metric(mink, VectorField({Expr(1), Expr(0), Expr(0), Expr(0)})).is_zero());
        CHECK(lie_derivative_metric(fixtures::example_10_1(), VectorField({Expr(0), Expr(0), Expr(0), Expr(1)})).is_zero());
        Tensor L = lie_derivative_metric(mink, VectorField({P("x1"), Expr(0), Expr(0), Expr(0)}));
        CHECK(L(0, 0) == Expr(-2));  // g_11 = -1 here
        CHECK(nonzero(L).size() == 1);
        Metric eucl = Metric::diagonal(coords4(), {Expr(1), Expr(1), Expr(1), Expr(1)});
        CHECK(lie_derivative_metric(eucl, VectorField({P("x1"), Expr(0), Expr(0), Expr(0)}))(0, 0) == Expr(2));
        // coordinate field: components differentiate
        Metric ex = fixtures::example_10_1();
        Tensor L1 = lie_derivative_metric(ex, VectorField({Expr(1), Expr(0), Expr(0), Expr(0)}));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(L1(i, j) == ex(i, j).diff(intern_symbol("x1")));
        CHECK_THROWS_AS(lie_derivative_metric(ex, VectorField({Expr(1)})), DimensionError);
    }

    TEST_CASE("raise, lower and inner products") {
        Metric ex = fixtures::example_10_1();
        Tensor A = one_form({Expr(0), P("sqrt(2)*x1"), Expr(0), Expr(0)});
        Tensor B = one_form({Expr(1), Expr(0), Expr(0), Expr(0)});
        CHECK(inner_product(A, A, ex) == Expr(1));
        CHECK(inner_product(B, B, ex) == Expr(1));
        CHECK(inner_product(A, B, ex).is_zero());
        CHECK_THROWS_AS(inner_product(A, VectorField({Expr(1), Expr(0), Expr(0), Expr(0)}).as_tensor(), ex), DimensionError);

        Tensor inv = inverse_metric(ex);
        Tensor v = VectorField({P("x2"), Expr(3), P("1/x1"), Expr(-1)}).as_tensor();
        Tensor lowered = lower_index(v, 0, ex);
        CHECK(lowered.valence() == Valence{0, 1});
        CHECK(raise_index(lowered, 0, inv) == v);
        CHECK(inner_product(v, v, ex) == inner_product(lowered, lowered, ex));
        CHECK_THROWS_AS(raise_index(v, 0, inv), DimensionError);

        // raising the last slot of Riemann gives back the (1,3) form reordered
        Geometry geo(ex);
        Tensor up = raise_index(geo.riemann().down, 3, inv);  // [l][i][j][k]
        CHECK(up == geo.riemann().up);
    }
}

TEST_SUITE("manifold properties") {
    TEST_CASE("Riemann symmetries, first Bianchi and Ricci symmetry on random metrics") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            Geometry geo(fixtures::random_poly_metric(seed).metric());
            const Tensor& R = geo.riemann().down;
            int bad = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l) {
                            if (!(R(i, j, k, l) + R(j, i, k, l)).is_zero()) ++bad;
                            if (!(R(i, j, k, l) + R(i, j, l, k)).is_zero()) ++bad;
                            if (R(i, j, k, l) != R(k, l, i, j)) ++bad;
                            if (!sum_of({R(i, j, k, l), R(i, k, l, j), R(i, l, j, k)}).is_zero()) ++bad;
                        }
            CHECK(bad == 0);
            const Tensor& S = geo.ricci();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) CHECK(S(i, j) == S(j, i));
            CHECK(geo.scalar() == scalar_curvature_from(inverse_metric(geo.metric()), ricci_from(riemann(geo.metric()))));
        }
    }
}
