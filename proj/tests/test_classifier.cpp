#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "spacetime/classifier.hpp"
#include "spacetime/error.hpp"

using namespace spacetime;
using fixtures::coords4;

namespace {

Expr P(const char* s) { return parse_expr(s); }

using Kind = PseudosymmetryOutcome::Kind;

// R from the semiconformally flat shape: (m r/(l(n-1)) + 2a/(n-2)) G + b/(n-2) psi(D)
Curvatures semiflat_instance(const Metric& g, const MQEStructure& s, const SemiconformalParams& p) {
    int n = g.dim();
    Tensor D = s.D();
    Tensor S = g.tensor().scaled(s.alpha) + D.scaled(s.beta);
    Expr r = Expr(n) * s.alpha;
    Expr a = p.m * r / (p.l * Expr(n - 1)) + Expr(2) * s.alpha / Expr(n - 2);
    Tensor R = gwedge(g).scaled(a) + metric_pattern(g, D).scaled(s.beta / Expr(n - 2));
    return Curvatures(g, R, S, r);
}

// (X wedge_g Y) as an operator [m][x][y][z] = g(y,z) delta^m_x - g(x,z) delta^m_y
Tensor wedge_operator(const Metric& g) {
    int n = g.dim();
    Tensor op(n, Valence{1, 3});
    for (int m = 0; m < n; ++m)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    Expr v;
                    if (m == x) v += g(y, z);
                    if (m == y) v -= g(x, z);
                    op(m, x, y, z) = v;
                }
    return op;
}

}  // namespace

TEST_SUITE("classifier") {
    TEST_CASE("Einstein condition") {
        CHECK(verify_einstein(fixtures::minkowski(), fixtures::minkowski().tensor().scaled(Expr(0))).holds());
        Metric ex = fixtures::example_10_1();
        Curvatures c(ex);
        CheckResult r = verify_einstein(ex, c.ricci());
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.witness == "(1,2)");
        CHECK(verify_einstein(ex, ex.tensor().scaled(Expr(5))).holds());
    }

    TEST_CASE("quasi-Einstein") {
        Metric e = Metric::diagonal(coords4(), {Expr(1), Expr(1), Expr(1), Expr(1)});
        Tensor A = one_form({Expr(1), Expr(0), Expr(0), Expr(0)});
        Tensor S = e.tensor() + outer(A, A);
        CHECK(verify_qe(e, S, Expr(1), Expr(1), A).holds());
        CHECK_THROWS_AS(verify_qe(e, S, Expr(1), Expr(0), A), StructureError);
        // the worked example's A cannot produce the off-diagonal Ricci entry
        Metric ex = fixtures::example_10_1();
        Curvatures c(ex);
        auto s = fixtures::example_10_1_structure();
        for (const char* beta : {"1", "-1/(x1*x2)", "x1"}) {
            CheckResult r = verify_qe(ex, c.ricci(), Expr(0), P(beta), s.A);
            CHECK(r.verdict == Verdict::Fails);
        }
    }

    TEST_CASE("nearly quasi-Einstein") {
        Metric ex = fixtures::example_10_1();
        Curvatures c(ex);
        CHECK(verify_nqe(ex, c.ricci(), Expr(0), fixtures::example_10_1_valid_structure().beta,
                         fixtures::example_10_1_valid_structure().D())
                  .holds());
        CHECK(verify_nqe(ex, ex.tensor(), Expr(0), Expr(1), ex.tensor()).holds());
        Tensor asym(4, Valence{0, 2});
        asym(0, 1) = Expr(1);
        CHECK_THROWS_AS(verify_nqe(ex, ex.tensor(), Expr(0), Expr(1), asym), StructureError);
        CHECK_THROWS_AS(verify_nqe(ex, ex.tensor(), Expr(0), Expr(1), Tensor(4, Valence{0, 2})), StructureError);
        CHECK_THROWS_AS(verify_nqe(ex, ex.tensor(), Expr(0), Expr(0), ex.tensor()), StructureError);
    }

    TEST_CASE("mixed quasi-Einstein on the worked example") {
        Metric ex = fixtures::example_10_1();
        Curvatures c(ex);
        auto printed = fixtures::example_10_1_structure();
        CheckResult r = verify_mqe(ex, c.ricci(), printed);
        // normalizations hold, but beta*D at (2,3) has no Ricci counterpart
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.witness == "(2,3)");
        CHECK(r.name == "M(QE)_4");
        // the (1,2) entry itself matches
        CHECK(c.ricci()(0, 1) == printed.beta * printed.D()(0, 1));
        CHECK(inner_product(printed.A, printed.A, ex) == Expr(1));
        CHECK(inner_product(printed.B, printed.B, ex) == Expr(1));
        CHECK(inner_product(printed.A, printed.B, ex).is_zero());

        auto valid = fixtures::example_10_1_valid_structure();
        CHECK(verify_mqe(ex, c.ricci(), valid).holds());
        CHECK(verify_trace(ex, c.scalar(), valid.alpha).holds());
        CHECK(verify_trace(ex, c.scalar(), valid.alpha).name == "r = 4α");

        auto doubled = valid;
        doubled.beta = Expr(2) * valid.beta;
        r = verify_mqe(ex, c.ricci(), doubled);
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.witness == "(1,2)");

        auto lorentz = valid;
        lorentz.eps1 = -1;
        r = verify_mqe(ex, c.ricci(), lorentz);
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.witness == "g(A,A) = -1");

        auto degenerate = valid;
        degenerate.beta = Expr(0);
        CHECK_THROWS_AS(verify_mqe(ex, c.ricci(), degenerate), StructureError);
    }

    TEST_CASE("restricted structure recovery") {
        Curvatures c(fixtures::example_10_1());
        auto rec = recover_mqe_structure(c);
        REQUIRE(rec.structure);
        auto want = fixtures::example_10_1_valid_structure();
        CHECK(rec.structure->alpha.is_zero());
        CHECK(rec.structure->beta == want.beta);
        CHECK(rec.structure->A == want.A);
        CHECK(rec.structure->B == want.B);
        CHECK(verify_mqe(c.metric(), c.ricci(), *rec.structure).holds());

        CHECK_FALSE(recover_mqe_structure(Curvatures(fixtures::minkowski())).structure);
        Metric offdiag(coords4(), {{Expr(1), P("x1"), Expr(0), Expr(0)},
                                   {P("x1"), Expr(4), Expr(0), Expr(0)},
                                   {Expr(0), Expr(0), Expr(1), Expr(0)},
                                   {Expr(0), Expr(0), Expr(0), Expr(-1)}});
        auto bad = recover_mqe_structure(Curvatures(offdiag));
        CHECK_FALSE(bad.structure);
        CHECK(bad.reason == "metric is not diagonal");
    }

    TEST_CASE("curvature form checks") {
        Metric ex = fixtures::example_10_1();
        Tensor G = gwedge(ex);
        CheckResult r = verify_nqc(ex, G.scaled(Expr(2)), Expr(2), Expr(0), ex.tensor());
        CHECK(r.holds());
        CHECK(r.notes.size() == 1);
        auto s = fixtures::example_10_1_structure();
        Tensor R = G.scaled(P("x1")) + metric_pattern(ex, s.D()).scaled(P("x2"));
        CHECK(verify_mqc(ex, R, P("x1"), P("x2"), s.A, s.B).holds());
        CHECK(verify_nqc(ex, R, P("x1"), P("x2"), s.D()).holds());
        Tensor bumped = R;
        bumped(0, 2, 2, 1) += Expr(1);
        r = verify_mqc(ex, bumped, P("x1"), P("x2"), s.A, s.B);
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.witness == "(1,3,3,2)");
        CHECK_THROWS_AS(verify_nqc(ex, R, Expr(1), Expr(1), Tensor(4, Valence{0, 2})), StructureError);
        CHECK_THROWS_AS(verify_mqc(ex, R, Expr(1), Expr(1), s.A, Tensor(4, Valence{0, 1})), StructureError);
    }

    TEST_CASE("flatness") {
        CHECK(is_flat(Curvatures(fixtures::minkowski()).w2(), "w2").holds());
        Curvatures c(fixtures::example_10_1());
        CheckResult r = is_flat(c.conharmonic(), "conharmonic");
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.name == "conharmonic-flat");
        CHECK(is_flat(Tensor(4, Valence{0, 4}), "zero").holds());
    }

    TEST_CASE("J.S and the Tachibana tensor") {
        Metric ex = fixtures::example_10_1();
        Curvatures c(ex);
        const Tensor& op = c.operator_form(CurvatureKind::Riemann);
        Tensor d1 = curvature_dot_ricci(op, c.ricci());
        for (int z = 0; z < 4; ++z)
            for (int w = 0; w < 4; ++w)
                for (int x = 0; x < 4; ++x)
                    for (int y = 0; y < 4; ++y) CHECK((d1(z, w, x, y) + d1(z, w, y, x)).is_zero());
        CHECK(curvature_dot_ricci(op, ex.tensor()).is_zero());

        // Q(g,S) is the wedge operator acting on S
        Tensor Q = tachibana(ex, c.ricci());
        CHECK(Q == curvature_dot_ricci(wedge_operator(ex), c.ricci()));
        CHECK_FALSE(Q.is_zero());
        // direct expansion at one component: Z=1, W=3, X=2, Y=3 (1-based)
        // -[g_33 S_21 - g_23 S_33 + g_33 S_12 ... ] reduces to -g(Y,W) S(Z,X)
        CHECK(Q(0, 2, 1, 2) == -(ex(2, 2) * c.ricci()(0, 1)));

        CHECK(tachibana(fixtures::minkowski(), Tensor(4, Valence{0, 2})).is_zero());
        for (int n = 2; n <= 4; ++n) {
            std::vector<std::string> coords(coords4().begin(), coords4().begin() + n);
            std::vector<Expr> diag{P("x1^2+1"), P("x1"), P("x2+x1"), Expr(-1)};
            diag.resize(static_cast<std::size_t>(n));
            Metric g = Metric::diagonal(coords, diag, {{"x1", true, Rational(0)}});
            CHECK(tachibana(g, g.tensor()).is_zero());
        }
    }

    TEST_CASE("Ricci pseudosymmetry") {
        Curvatures mink(fixtures::minkowski());
        for (auto k : all_curvature_kinds())
            CHECK(ricci_pseudosymmetry_test(mink, k).kind == Kind::BothZero);

        // J = 3G acts as three times the wedge operator
        Metric ex = fixtures::example_10_1();
        Curvatures real(ex);
        Curvatures synth(ex, gwedge(ex).scaled(Expr(3)), real.ricci(), real.scalar());
        auto o = ricci_pseudosymmetry_test(synth, CurvatureKind::Riemann);
        CHECK(o.kind == Kind::Proportional);
        CHECK(o.ratio == Expr(3));
        CHECK(outcome_name(o) == "proportional(3)");

        // ratio survives S -> c S
        Tensor S5 = real.ricci().scaled(Expr(5));
        Curvatures scaled(ex, gwedge(ex).scaled(Expr(3)), S5, real.scalar() * Expr(5));
        CHECK(ricci_pseudosymmetry_test(scaled, CurvatureKind::Riemann).ratio == Expr(3));

        // the worked example itself
        auto h = ricci_pseudosymmetry_test(real, CurvatureKind::Conharmonic);
        CHECK(h.kind == Kind::Independent);

        Tensor d2 = tachibana(ex, real.ricci());
        Tensor d1 = d2;
        d1[d1.first_nonzero() ? d1.flat(*d1.first_nonzero()) : 0] += Expr(1);
        CHECK(ricci_pseudosymmetry_test(d1, d2).kind == Kind::Independent);
        CHECK(ricci_pseudosymmetry_test(d2, Tensor(4, Valence{0, 4})).kind == Kind::Independent);
    }

    TEST_CASE("k-nullity") {
        Curvatures mink(fixtures::minkowski());
        CHECK(k_nullity_check(mink, VectorField({P("x2"), Expr(1), Expr(0), P("x1")}), Expr(0)).holds());
        // unit 3-sphere: R = -G here, so k = -1
        Expr f = P("4/(1+x1^2+x2^2+x3^2)^2");
        Curvatures sphere(Metric::diagonal({"x1", "x2", "x3"}, {f, f, f}));
        VectorField xi({Expr(1), P("x1"), Expr(0)});
        CHECK(k_nullity_check(sphere, xi, Expr(-1)).holds());
        CheckResult other = k_nullity_check(sphere, xi, Expr(1));
        CHECK(other.verdict == Verdict::Fails);
        CHECK(other.witness.has_value());

        Curvatures ex(fixtures::example_10_1());
        auto s = fixtures::example_10_1_structure();
        // xi_1 = g^{-1} A
        VectorField xi1({Expr(0), P("sqrt(2)*x1") / P("2*x1^2"), Expr(0), Expr(0)});
        CheckResult r = k_nullity_check(ex, xi1, s.alpha / Expr(3));
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.witness == "(3,1,3)");
        CHECK_THROWS_AS(k_nullity_check(ex, VectorField({Expr(1)}), Expr(0)), DimensionError);
    }

    TEST_CASE("theorem suite") {
        Curvatures ex(fixtures::example_10_1());
        ClassificationReport rep = theorem_suite(ex, fixtures::example_10_1_valid_structure());
        CHECK(rep.checks().size() == 6);
        for (const auto& c : rep.checks()) CHECK(c.verdict == Verdict::Inapplicable);

        Metric g = fixtures::example_10_1();
        auto valid = fixtures::example_10_1_valid_structure();
        Curvatures inst = semiflat_instance(g, valid, {});
        CHECK(inst.semiconformal({}).is_zero());
        rep = theorem_suite(inst, valid);
        CHECK(rep.find("semiconformally flat M(QE) => M(QC)")->holds());
        CHECK(rep.find("semiconformally flat N(QE) => N(QC)")->holds());
        // r = 0 here so the conharmonic tensor vanishes as well
        CHECK(rep.find("conharmonically flat M(QE) => M(QC)")->holds());
        CHECK(rep.find("W2-flat N(QE) curvature form")->verdict == Verdict::Inapplicable);
        CHECK_FALSE(rep.any_failed());

        auto printed = fixtures::example_10_1_structure();
        printed.alpha = Expr(1);
        SemiconformalParams p{Expr(2), Expr(-1)};
        Curvatures inst2 = semiflat_instance(g, printed, p);
        rep = theorem_suite(inst2, printed, p);
        CHECK(rep.find("semiconformally flat M(QE) => M(QC)")->holds());
        CHECK(rep.find("conharmonically flat M(QE) => M(QC)")->verdict == Verdict::Inapplicable);

        // W2-flat by construction
        Tensor D = printed.D();
        Tensor S = g.tensor().scaled(printed.alpha) + D.scaled(printed.beta);
        Tensor R(4, Valence{0, 4});
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l)
                        R(i, j, k, l) = (g(j, k) * S(i, l) - g(i, k) * S(j, l)) / Expr(3);
        rep = theorem_suite(Curvatures(g, R, S, Expr(4)), printed);
        CHECK(rep.find("W2-flat N(QE) curvature form")->holds());

        auto degenerate = valid;
        degenerate.beta = Expr(0);
        CHECK_THROWS_AS(theorem_suite(Curvatures(fixtures::minkowski()), degenerate), StructureError);
    }

    TEST_CASE("single perturbations break a holding verdict") {
        Metric ex = fixtures::example_10_1();
        auto valid = fixtures::example_10_1_valid_structure();
        std::mt19937_64 rng(20261015);
        std::uniform_int_distribution<int> pick(0, 11), shift(1, 5);
        int flipped = 0, tried = 0;
        while (tried < 10) {
            int which = pick(rng);
            Expr c(shift(rng));
            Metric g = ex;
            MQEStructure s = valid;
            if (which < 4) {
                // g_44 is constant and invisible to the structure; skip it
                if (which == 3) continue;
                auto m = std::vector<std::vector<Expr>>(4, std::vector<Expr>(4));
                for (int i = 0; i < 4; ++i) m[i][i] = ex(i, i);
                m[which][which] += c;
                g = Metric(coords4(), m, ex.constraints());
            } else if (which < 8) {
                std::vector<Expr> a{valid.A(0), valid.A(1), valid.A(2), valid.A(3)};
                a[static_cast<std::size_t>(which - 4)] += c;
                s.A = one_form(a);
            } else if (which < 10) {
                std::vector<Expr> b{valid.B(0), valid.B(1), valid.B(2), valid.B(3)};
                b[static_cast<std::size_t>(which - 8) * 2] += c;
                s.B = one_form(b);
            } else if (which == 10) {
                s.alpha += c;
            } else {
                s.beta += c;
            }
            ++tried;
            Curvatures cur(g);
            if (!verify_mqe(g, cur.ricci(), s).holds()) ++flipped;
        }
        CHECK(flipped == tried);
    }

    TEST_CASE("report bookkeeping") {
        ClassificationReport rep;
        CheckResult a;
        a.name = "x";
        rep.add(a);
        CHECK_THROWS_AS(rep.add(a), std::logic_error);
        CHECK(rep.find("x"));
        CHECK_FALSE(rep.find("y"));
        CHECK(verdict_name(Verdict::Inapplicable) == "inapplicable");
    }
}
