#include "spacetime/physics.hpp"

#include "spacetime/error.hpp"

namespace spacetime {

namespace {

Tensor combine(const Expr& c1, const Tensor& t1, const Expr& c2, const Tensor& t2) {
    Tensor out(t1.dim(), t1.valence());
    for (std::size_t f = 0; f < out.size(); ++f) {
        std::vector<Expr> s;
        if (!c1.is_zero() && !t1[f].is_zero()) s.push_back(c1 * t1[f]);
        if (!c2.is_zero() && !t2[f].is_zero()) s.push_back(c2 * t2[f]);
        out[f] = sum_of(s);
    }
    return out;
}

CheckResult equality(std::string name, const Expr& lhs, const Expr& rhs) {
    CheckResult r;
    r.name = std::move(name);
    Expr d = lhs - rhs;
    r.verdict = d.is_zero() ? Verdict::Holds : Verdict::Fails;
    if (!d.is_zero()) r.witness = "difference " + d.str();
    return r;
}

}  // namespace

void FluidParams::validate() const {
    if (k.is_zero()) throw StructureError("gravitational constant k must be nonzero");
}

Tensor perfect_fluid_T(const Metric& g, const Tensor& A, const FluidParams& f) {
    if (A.dim() != g.dim() || !(A.valence() == Valence{0, 1}))
        throw DimensionError("velocity must be a one-form of the metric's dimension");
    return combine(f.sigma + f.p, outer(A, A), f.p, g.tensor());
}

Tensor efe_residual(const Metric& g, const Tensor& S, const Expr& r, const Tensor& T, const Expr& k) {
    Tensor lhs = combine(Expr(1), S, -(r / Expr(2)), g.tensor());
    return combine(Expr(1), lhs, -k, T);
}

Tensor fluid_ricci(const Metric& g, const Tensor& A, const FluidParams& f, std::optional<Expr> r) {
    f.validate();
    Expr rr = r ? *r : Expr(4) * f.k * f.sigma;
    return combine(f.k * (f.sigma + f.p), outer(A, A), f.p * f.k + rr / Expr(2), g.tensor());
}

ClassificationReport fluid_scalar_identities(const Expr& alpha, const Expr& r, const FluidParams& f) {
    ClassificationReport rep;
    CheckResult a = equality("α = kσ", alpha, f.k * f.sigma);
    a.scalars = {{"alpha", alpha}, {"k sigma", f.k * f.sigma}};
    CheckResult b = equality("r = 4kσ", r, Expr(4) * f.k * f.sigma);
    b.scalars = {{"r", r}, {"4 k sigma", Expr(4) * f.k * f.sigma}};
    rep.add(std::move(a));
    rep.add(std::move(b));
    return rep;
}

Expr ricci_operator_norm_sq(const Tensor& S, const Tensor& inv) {
    int n = S.dim();
    // Q^i_j = g^{ia} S_aj
    std::vector<std::vector<Expr>> Q(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Expr> s;
            for (int a = 0; a < n; ++a)
                if (!inv(i, a).is_zero() && !S(a, j).is_zero()) s.push_back(inv(i, a) * S(a, j));
            Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sum_of(s);
        }
    std::vector<Expr> s;
    for (std::size_t i = 0; i < Q.size(); ++i)
        for (std::size_t j = 0; j < Q.size(); ++j)
            if (!Q[i][j].is_zero() && !Q[j][i].is_zero()) s.push_back(Q[i][j] * Q[j][i]);
    return sum_of(s);
}

Expr ricci_operator_norm_sq(const Metric& g, const Tensor& S) { return ricci_operator_norm_sq(S, inverse_metric(g)); }

CheckResult vacuum_check(const Expr& r, const FluidParams& f) {
    f.validate();
    CheckResult res;
    res.name = "vacuum";
    res.scalars = {{"r", r}, {"sigma", f.sigma}, {"p", f.p}};
    if (!r.is_zero()) {
        res.verdict = Verdict::Inapplicable;
        res.notes.push_back("r is not zero: spacetime not flat");
        return res;
    }
    if (!f.sigma.is_zero()) {
        res.verdict = Verdict::Fails;
        res.witness = "sigma = " + f.sigma.str() + " contradicts r = 4kσ";
        return res;
    }
    if (!(f.sigma + f.p).is_zero()) {
        res.verdict = Verdict::Inapplicable;
        res.notes.push_back("premise σ + p = 0 not satisfied");
        return res;
    }
    res.verdict = Verdict::Holds;
    return res;
}

CheckResult KillingReport::as_check() const {
    CheckResult r;
    r.name = "Killing equivalence";
    r.verdict = biconditional() ? Verdict::Holds : Verdict::Fails;
    r.notes = notes;
    r.notes.push_back(std::string("L_xi g ") + (g_vanishes ? "vanishes" : "does not vanish"));
    r.notes.push_back(std::string("L_xi T ") + (T_vanishes ? "vanishes" : "does not vanish"));
    if (!g_vanishes) r.witness = "L_xi g at " + index_label(*lie_g.first_nonzero());
    else if (!T_vanishes) r.witness = "L_xi T at " + index_label(*lie_T.first_nonzero());
    return r;
}

KillingReport killing_equivalence_check(const Metric& g, const VectorField& xi, const Tensor& T, const Expr& alpha,
                                        const Expr& beta) {
    KillingReport rep;
    if (!alpha.is_constant()) rep.notes.push_back("hypothesis violated: α is not constant");
    if (!beta.is_constant()) rep.notes.push_back("hypothesis violated: β is not constant");
    if (alpha.is_zero()) rep.notes.push_back("hypothesis violated: α = 0");
    rep.lie_g = lie_derivative_metric(g, xi);
    rep.lie_T = lie_derivative(g, xi, T);
    rep.g_vanishes = rep.lie_g.is_zero();
    rep.T_vanishes = rep.lie_T.is_zero();
    return rep;
}

std::string soliton_class_name(SolitonClass c) {
    switch (c) {
        case SolitonClass::Shrinking: return "shrinking";
        case SolitonClass::Steady: return "steady";
        case SolitonClass::Expanding: return "expanding";
        case SolitonClass::Indeterminate: return "indeterminate";
    }
    return "?";
}

SolitonReport soliton_classify(const FluidParams& f) {
    SolitonReport rep;
    rep.lambda = f.k * f.p;
    rep.premises = {"semiconformally flat", "σ constant", "α(3l+4m) ≠ 0"};
    if (auto q = rep.lambda.as_rational()) {
        int s = sgn(*q);
        rep.cls = s < 0 ? SolitonClass::Shrinking : s == 0 ? SolitonClass::Steady : SolitonClass::Expanding;
    }
    return rep;
}

}  // namespace spacetime
