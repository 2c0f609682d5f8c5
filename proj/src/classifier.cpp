#include "spacetime/classifier.hpp"

#include <stdexcept>

#include "spacetime/error.hpp"
#include "spacetime/numeric.hpp"

namespace spacetime {

namespace {

Expr frac(long a, long b) {
    Rational q(a, b);
    q.canonicalize();
    return Expr(q);
}

std::optional<Index> first_mismatch(const Tensor& a, const Tensor& b) {
    for (std::size_t f = 0; f < a.size(); ++f)
        if (a[f] != b[f]) return a.unflatten(f);
    return std::nullopt;
}

void require_one_form(const Tensor& t, int n, const char* what) {
    if (t.dim() != n || !(t.valence() == Valence{0, 1}))
        throw DimensionError(std::string(what) + " must be a one-form of dimension " + std::to_string(n));
}

void require_02(const Tensor& t, int n, const char* what) {
    if (t.dim() != n || !(t.valence() == Valence{0, 2}))
        throw DimensionError(std::string(what) + " must be a (0,2) tensor of dimension " + std::to_string(n));
}

bool symmetric(const Tensor& t) {
    for (int i = 0; i < t.dim(); ++i)
        for (int j = i + 1; j < t.dim(); ++j)
            if (t(i, j) != t(j, i)) return false;
    return true;
}

// c1*t1 + c2*t2 componentwise
Tensor lin(const Expr& c1, const Tensor& t1, const Expr& c2, const Tensor& t2) {
    Tensor out(t1.dim(), t1.valence());
    for (std::size_t f = 0; f < out.size(); ++f) {
        std::vector<Expr> s;
        if (!c1.is_zero() && !t1[f].is_zero()) s.push_back(c1 * t1[f]);
        if (!c2.is_zero() && !t2[f].is_zero()) s.push_back(c2 * t2[f]);
        out[f] = sum_of(s);
    }
    return out;
}

CheckResult compare(std::string name, const Tensor& have, const Tensor& want) {
    CheckResult r;
    r.name = std::move(name);
    auto m = first_mismatch(have, want);
    r.verdict = m ? Verdict::Fails : Verdict::Holds;
    if (m) r.witness = index_label(*m);
    return r;
}

std::string suffixed(const char* base, int n) { return std::string(base) + "_" + std::to_string(n); }

// sqrt of c * monomial / monomial with even exponents, sign chosen positive on the sample box.
std::optional<Expr> monomial_sqrt(const Expr& e, const Metric& g) {
    if (e.has_surds() || e.is_zero()) return std::nullopt;
    const Poly& num = e.numerator().rational_part();
    const Poly& den = e.denominator();
    if (!num.is_monomial() || !den.is_monomial()) return std::nullopt;
    Rational c = num.leading().coef / den.leading().coef;
    if (c <= 0) return std::nullopt;
    Expr out = Expr::sqrt(c);
    for (auto [v, k] : num.leading().mono.factors()) {
        if (k % 2) return std::nullopt;
        out *= Expr::symbol(v).pow(k / 2);
    }
    for (auto [v, k] : den.leading().mono.factors()) {
        if (k % 2) return std::nullopt;
        out /= Expr::symbol(v).pow(k / 2);
    }
    auto p = sample_points(g.sample_box(), 1)[0];
    if (evaluate(out, p) < 0) out = -out;
    return out;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Inapplicable: return "inapplicable";
    }
    return "?";
}

void ClassificationReport::add(CheckResult r) {
    if (find(r.name)) throw std::logic_error("duplicate check: " + r.name);
    checks_.push_back(std::move(r));
}

const CheckResult* ClassificationReport::find(const std::string& name) const {
    for (const auto& c : checks_)
        if (c.name == name) return &c;
    return nullptr;
}

bool ClassificationReport::any_failed() const {
    for (const auto& c : checks_)
        if (c.verdict == Verdict::Fails) return true;
    return false;
}

Tensor outer(const Tensor& a, const Tensor& b) {
    int n = a.dim();
    Tensor t(n, Valence{0, 2});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!a(i).is_zero() && !b(j).is_zero()) t(i, j) = a(i) * b(j);
    return t;
}

Tensor symmetric_product(const Tensor& a, const Tensor& b) { return outer(a, b) + outer(b, a); }

Tensor MQEStructure::D() const { return symmetric_product(A, B); }

Expr trace(const Tensor& t, const Tensor& inverse) {
    std::vector<Expr> s;
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j)
            if (!inverse(i, j).is_zero() && !t(i, j).is_zero()) s.push_back(inverse(i, j) * t(i, j));
    return sum_of(s);
}

CheckResult verify_einstein(const Metric& g, const Tensor& S) {
    int n = g.dim();
    require_02(S, n, "Ricci tensor");
    Expr r = trace(S, inverse_metric(g));
    CheckResult res = compare("Einstein", S, g.tensor().scaled(r * frac(1, n)));
    res.scalars.emplace_back("r", r);
    return res;
}

CheckResult verify_qe(const Metric& g, const Tensor& S, const Expr& alpha, const Expr& beta, const Tensor& A,
                      int eps) {
    int n = g.dim();
    if (beta.is_zero()) throw StructureError("beta must be nonzero");
    require_one_form(A, n, "A");
    require_02(S, n, "Ricci tensor");
    CheckResult res;
    res.name = suffixed("QE", n);
    res.scalars = {{"alpha", alpha}, {"beta", beta}};
    if (inner_product(A, A, g) != Expr(eps)) {
        res.verdict = Verdict::Fails;
        res.witness = "g(A,A) = " + std::to_string(eps);
        return res;
    }
    auto m = first_mismatch(S, lin(alpha, g.tensor(), beta, outer(A, A)));
    res.verdict = m ? Verdict::Fails : Verdict::Holds;
    if (m) res.witness = index_label(*m);
    return res;
}

CheckResult verify_nqe(const Metric& g, const Tensor& S, const Expr& alpha, const Expr& beta, const Tensor& D) {
    int n = g.dim();
    if (beta.is_zero()) throw StructureError("beta must be nonzero");
    require_02(D, n, "D");
    require_02(S, n, "Ricci tensor");
    if (D.is_zero()) throw StructureError("D must be nonzero");
    if (!symmetric(D)) throw StructureError("D must be symmetric");
    CheckResult res = compare(suffixed("N(QE)", n), S, lin(alpha, g.tensor(), beta, D));
    res.scalars = {{"alpha", alpha}, {"beta", beta}};
    return res;
}

CheckResult verify_mqe(const Metric& g, const Tensor& S, const MQEStructure& s) {
    int n = g.dim();
    require_one_form(s.A, n, "A");
    require_one_form(s.B, n, "B");
    require_02(S, n, "Ricci tensor");
    Tensor D = s.D();
    if (s.beta.is_zero() || D.is_zero()) throw StructureError("beta-term vanishes: structure degenerate");
    CheckResult res;
    res.name = suffixed("M(QE)", n);
    res.scalars = {{"alpha", s.alpha}, {"beta", s.beta}};
    Tensor inv = inverse_metric(g);
    struct Cond {
        const Tensor &a, &b;
        int want;
        const char* label;
    };
    for (const Cond& c : {Cond{s.A, s.A, s.eps1, "g(A,A)"}, Cond{s.B, s.B, s.eps2, "g(B,B)"}, Cond{s.A, s.B, 0, "g(A,B)"}}) {
        Expr v = inner_product(c.a, c.b, g, inv);
        res.scalars.emplace_back(c.label, v);
        if (v != Expr(c.want) && !res.witness) res.witness = std::string(c.label) + " = " + std::to_string(c.want);
    }
    if (res.witness) {
        res.verdict = Verdict::Fails;
        return res;
    }
    auto m = first_mismatch(S, lin(s.alpha, g.tensor(), s.beta, D));
    res.verdict = m ? Verdict::Fails : Verdict::Holds;
    if (m) res.witness = index_label(*m);
    return res;
}

CheckResult verify_trace(const Metric& g, const Expr& r, const Expr& alpha) {
    int n = g.dim();
    CheckResult res;
    res.name = "r = " + std::to_string(n) + "α";
    Expr diff = r - Expr(n) * alpha;
    res.verdict = diff.is_zero() ? Verdict::Holds : Verdict::Fails;
    res.scalars = {{"r", r}, {"alpha", alpha}};
    if (!diff.is_zero()) res.witness = "r - " + std::to_string(n) + "α = " + diff.str();
    return res;
}

CheckResult verify_nqc(const Metric& g, const Tensor& R, const Expr& a, const Expr& b, const Tensor& E) {
    int n = g.dim();
    require_02(E, n, "E");
    if (E.is_zero()) throw StructureError("E must be nonzero");
    if (!symmetric(E)) throw StructureError("E must be symmetric");
    CheckResult res = compare(suffixed("N(QC)", n), R, lin(a, gwedge(g), b, metric_pattern(g, E)));
    res.scalars = {{"a", a}, {"b", b}};
    if (b.is_zero()) res.notes.push_back("b = 0: reduces to constant curvature");
    return res;
}

CheckResult verify_mqc(const Metric& g, const Tensor& R, const Expr& a, const Expr& b, const Tensor& A,
                       const Tensor& B) {
    int n = g.dim();
    require_one_form(A, n, "A");
    require_one_form(B, n, "B");
    if (A.is_zero() || B.is_zero()) throw StructureError("A and B must be nonzero");
    CheckResult res =
        compare(suffixed("M(QC)", n), R, lin(a, gwedge(g), b, metric_pattern(g, symmetric_product(A, B))));
    res.scalars = {{"a", a}, {"b", b}};
    if (b.is_zero()) res.notes.push_back("b = 0: reduces to constant curvature");
    return res;
}

CheckResult is_flat(const Tensor& J, const std::string& name) {
    CheckResult res;
    res.name = name + "-flat";
    auto f = J.first_nonzero();
    res.verdict = f ? Verdict::Fails : Verdict::Holds;
    if (f) res.witness = index_label(*f);
    return res;
}

Tensor curvature_dot_ricci(const Tensor& op, const Tensor& S) {
    int n = S.dim();
    Tensor out(n, Valence{0, 4});
    for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    std::vector<Expr> s;
                    for (int m = 0; m < n; ++m) {
                        if (!op(m, x, y, z).is_zero() && !S(m, w).is_zero()) s.push_back(-(op(m, x, y, z) * S(m, w)));
                        if (!op(m, x, y, w).is_zero() && !S(z, m).is_zero()) s.push_back(-(op(m, x, y, w) * S(z, m)));
                    }
                    out(z, w, x, y) = sum_of(s);
                }
    return out;
}

Tensor tachibana(const Metric& g, const Tensor& S) {
    int n = g.dim();
    Tensor out(n, Valence{0, 4});
    for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    std::vector<Expr> s;
                    auto add = [&](const Expr& a, const Expr& b, bool neg) {
                        if (a.is_zero() || b.is_zero()) return;
                        s.push_back(neg ? a * b : -(a * b));
                    };
                    add(g(y, z), S(x, w), false);
                    add(g(x, z), S(y, w), true);
                    add(g(y, w), S(z, x), false);
                    add(g(x, w), S(z, y), true);
                    out(z, w, x, y) = sum_of(s);
                }
    return out;
}

std::string outcome_name(const PseudosymmetryOutcome& o) {
    switch (o.kind) {
        case PseudosymmetryOutcome::Kind::BothZero: return "both_zero";
        case PseudosymmetryOutcome::Kind::Proportional: return "proportional(" + o.ratio.str() + ")";
        case PseudosymmetryOutcome::Kind::Independent: return "independent";
    }
    return "?";
}

PseudosymmetryOutcome ricci_pseudosymmetry_test(const Tensor& d1, const Tensor& d2) {
    using K = PseudosymmetryOutcome::Kind;
    PseudosymmetryOutcome o;
    auto f = d2.first_nonzero();
    if (!f) {
        o.witness = d1.first_nonzero();
        o.kind = o.witness ? K::Independent : K::BothZero;
        return o;
    }
    o.ratio = d1.at(*f) / d2.at(*f);
    for (std::size_t i = 0; i < d1.size(); ++i) {
        if (d1[i].is_zero() && d2[i].is_zero()) continue;
        if (!(d1[i] - o.ratio * d2[i]).is_zero()) {
            o.kind = K::Independent;
            o.witness = d1.unflatten(i);
            o.ratio = Expr();
            return o;
        }
    }
    o.kind = K::Proportional;
    return o;
}

PseudosymmetryOutcome ricci_pseudosymmetry_test(const Curvatures& c, CurvatureKind kind, const SemiconformalParams& p) {
    return ricci_pseudosymmetry_test(curvature_dot_ricci(c.operator_form(kind, p), c.ricci()),
                                     tachibana(c.metric(), c.ricci()));
}

CheckResult k_nullity_check(const Curvatures& c, const VectorField& xi, const Expr& k) {
    int n = c.dim();
    if (xi.dim() != n) throw DimensionError("vector field dimension mismatch");
    const Metric& g = c.metric();
    const Tensor& R = c.operator_form(CurvatureKind::Riemann);  // [l][i][j][m]
    std::vector<Expr> gxi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> s;
        for (int m = 0; m < n; ++m)
            if (!g(i, m).is_zero() && !xi[m].is_zero()) s.push_back(g(i, m) * xi[m]);
        gxi[static_cast<std::size_t>(i)] = sum_of(s);
    }
    CheckResult res;
    res.name = "k-nullity";
    res.scalars = {{"k", k}};
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<Expr> s;
                for (int m = 0; m < n; ++m)
                    if (!R(l, i, j, m).is_zero() && !xi[m].is_zero()) s.push_back(R(l, i, j, m) * xi[m]);
                if (l == i) s.push_back(-(k * gxi[static_cast<std::size_t>(j)]));
                if (l == j) s.push_back(k * gxi[static_cast<std::size_t>(i)]);
                if (!sum_of(s).is_zero()) {
                    res.verdict = Verdict::Fails;
                    res.witness = index_label({l, i, j});
                    return res;
                }
            }
    res.verdict = Verdict::Holds;
    return res;
}

ClassificationReport theorem_suite(const Curvatures& c, const MQEStructure& s, const SemiconformalParams& p) {
    p.validate();
    const Metric& g = c.metric();
    int n = c.dim();
    const Tensor& S = c.ricci();
    const Tensor& R = c.riemann();
    Tensor D = s.D();
    CheckResult mqe = verify_mqe(g, S, s);
    CheckResult nqe = verify_nqe(g, S, s.alpha, s.beta, D);

    enum class Shape { NQC, MQC, W2Form, ProjectiveForm };
    struct Item {
        const char* name;
        CurvatureKind kind;
        bool mixed;
        Shape shape;
    };
    const Item items[] = {
        {"semiconformally flat N(QE) => N(QC)", CurvatureKind::Semiconformal, false, Shape::NQC},
        {"semiconformally flat M(QE) => M(QC)", CurvatureKind::Semiconformal, true, Shape::MQC},
        {"conharmonically flat N(QE) => N(QC)", CurvatureKind::Conharmonic, false, Shape::NQC},
        {"conharmonically flat M(QE) => M(QC)", CurvatureKind::Conharmonic, true, Shape::MQC},
        {"W2-flat N(QE) curvature form", CurvatureKind::W2, false, Shape::W2Form},
        {"projectively flat N(QE) curvature form", CurvatureKind::Projective, false, Shape::ProjectiveForm},
    };

    ClassificationReport report;
    for (const Item& it : items) {
        CheckResult res;
        res.name = it.name;
        const CheckResult& structure = it.mixed ? mqe : nqe;
        if (!structure.holds()) res.notes.push_back(structure.name + " premise fails");
        try {
            CheckResult flat = is_flat(c.get(it.kind, p), kind_name(it.kind));
            if (!flat.holds()) res.notes.push_back(kind_name(it.kind) + " tensor nonzero at " + *flat.witness);
        } catch (const DimensionError& e) {
            res.notes.push_back(e.what());
        }
        if (!res.notes.empty()) {
            res.verdict = Verdict::Inapplicable;
            report.add(std::move(res));
            continue;
        }
        bool semi = it.kind == CurvatureKind::Semiconformal;
        Expr a2 = Expr(2) * s.alpha * frac(1, n - 2);
        Expr b = s.beta * frac(1, n - 2);
        Expr a = semi ? p.m * c.scalar() / (p.l * Expr(n - 1)) + a2 : a2;
        CheckResult concl;
        switch (it.shape) {
            case Shape::NQC: concl = verify_nqc(g, R, a, b, D); break;
            case Shape::MQC: concl = verify_mqc(g, R, a, b, s.A, s.B); break;
            case Shape::W2Form:
            case Shape::ProjectiveForm: {
                a = s.alpha * frac(1, n - 1);
                b = s.beta * frac(1, n - 1);
                Tensor half(n, Valence{0, 4});  // one-sided D pattern
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        for (int k = 0; k < n; ++k)
                            for (int l = 0; l < n; ++l)
                                half(i, j, k, l) = it.shape == Shape::W2Form
                                                       ? g(j, k) * D(i, l) - g(i, k) * D(j, l)
                                                       : D(j, k) * g(i, l) - D(i, k) * g(j, l);
                concl = compare(it.name, R, lin(a, gwedge(g), b, half));
                concl.scalars = {{"a", a}, {"b", b}};
                break;
            }
        }
        res.verdict = concl.verdict;
        res.witness = concl.witness;
        res.scalars = concl.scalars;
        res.notes = concl.notes;
        report.add(std::move(res));
    }
    return report;
}

StructureRecovery recover_mqe_structure(const Curvatures& c) {
    StructureRecovery out;
    const Metric& g = c.metric();
    int n = c.dim();
    const Tensor& S = c.ricci();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !g(i, j).is_zero()) {
                out.reason = "metric is not diagonal";
                return out;
            }
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!S(i, j).is_zero()) pairs.emplace_back(i, j);
    if (pairs.size() != 1) {
        out.reason = "Ricci tensor has " + std::to_string(pairs.size()) + " off-diagonal pairs, need exactly one";
        return out;
    }
    auto [i, j] = pairs[0];
    Expr alpha = c.scalar() * frac(1, n);
    for (int k = 0; k < n; ++k)
        if (S(k, k) != alpha * g(k, k)) {
            out.reason = "diagonal Ricci entry " + index_label({k, k}) + " is not (r/n) g";
            return out;
        }
    auto p = sample_points(g.sample_box(), 1)[0];
    int si = evaluate(g(i, i), p) > 0 ? 1 : -1;
    int sj = evaluate(g(j, j), p) > 0 ? 1 : -1;
    auto bi = monomial_sqrt(Expr(si) * g(i, i), g);
    auto aj = monomial_sqrt(Expr(sj) * g(j, j), g);
    if (!bi || !aj) {
        out.reason = "metric entries are not perfect squares of monomials";
        return out;
    }
    MQEStructure s;
    s.alpha = alpha;
    std::vector<Expr> A(static_cast<std::size_t>(n)), B(static_cast<std::size_t>(n));
    A[static_cast<std::size_t>(j)] = *aj;
    B[static_cast<std::size_t>(i)] = *bi;
    s.A = one_form(A);
    s.B = one_form(B);
    s.eps1 = sj;
    s.eps2 = si;
    s.beta = S(i, j) / (*aj * *bi);
    out.structure = s;
    return out;
}

}  // namespace spacetime
