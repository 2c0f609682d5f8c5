#include "spacetime/curvature_zoo.hpp"

#include "spacetime/error.hpp"

namespace spacetime {

namespace {

template <class F>
Tensor build4(int n, F&& f) {
    Tensor t(n, Valence{0, 4});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) t(i, j, k, l) = f(i, j, k, l);
    return t;
}

void require_dim(int n, int min, const char* what) {
    if (n < min)
        throw DimensionError(std::string(what) + " requires n >= " + std::to_string(min) + ", got n = " +
                             std::to_string(n));
}

// a*x + b*y + ... skipping zero coefficients and zero tensors entries.
Expr combo(std::initializer_list<std::pair<const Expr*, const Expr*>> parts) {
    std::vector<Expr> terms;
    for (const auto& [c, v] : parts)
        if (!c->is_zero() && !v->is_zero()) terms.push_back(c->is_one() ? *v : *c * *v);
    return sum_of(terms);
}

Expr frac(long a, long b) {
    Rational q(a, b);
    q.canonicalize();
    return Expr(q);
}

}  // namespace

const std::vector<CurvatureKind>& all_curvature_kinds() {
    static const std::vector<CurvatureKind> kinds{CurvatureKind::Riemann,   CurvatureKind::W2,
                                                  CurvatureKind::Projective, CurvatureKind::Conformal,
                                                  CurvatureKind::Conharmonic, CurvatureKind::Semiconformal};
    return kinds;
}

std::string kind_name(CurvatureKind k) {
    switch (k) {
        case CurvatureKind::Riemann: return "riemann";
        case CurvatureKind::W2: return "w2";
        case CurvatureKind::Projective: return "projective";
        case CurvatureKind::Conformal: return "conformal";
        case CurvatureKind::Conharmonic: return "conharmonic";
        case CurvatureKind::Semiconformal: return "semiconformal";
    }
    return "?";
}

std::optional<CurvatureKind> parse_kind(const std::string& name) {
    for (auto k : all_curvature_kinds())
        if (kind_name(k) == name) return k;
    return std::nullopt;
}

void SemiconformalParams::validate() const {
    if (l.is_zero()) throw StructureError("semiconformal parameter l must be nonzero");
    if (m.is_zero()) throw StructureError("semiconformal parameter m must be nonzero");
}

std::string SemiconformalParams::key() const { return l.str() + ";" + m.str(); }

Tensor gwedge(const Metric& g) {
    return build4(g.dim(), [&](int i, int j, int k, int l) {
        const Expr &a = g(j, k), &b = g(i, l), &c = g(i, k), &d = g(j, l);
        Expr p = (a.is_zero() || b.is_zero()) ? Expr() : a * b;
        Expr q = (c.is_zero() || d.is_zero()) ? Expr() : c * d;
        return p - q;
    });
}

Tensor metric_pattern(const Metric& g, const Tensor& e) {
    return build4(g.dim(), [&](int i, int j, int k, int l) {
        std::vector<Expr> t;
        auto add = [&](const Expr& a, const Expr& b, bool neg) {
            if (a.is_zero() || b.is_zero()) return;
            t.push_back(neg ? -(a * b) : a * b);
        };
        add(g(i, l), e(j, k), false);
        add(g(i, k), e(j, l), true);
        add(g(j, k), e(i, l), false);
        add(g(j, l), e(i, k), true);
        return sum_of(t);
    });
}

Tensor w2(const Metric& g, const Tensor& R, const Tensor& S) {
    int n = g.dim();
    require_dim(n, 4, "W2 curvature");
    Expr c = frac(-1, n - 1);
    return build4(n, [&](int i, int j, int k, int l) {
        Expr corr = sum_of({g(j, k) * S(i, l), -(g(i, k) * S(j, l))});
        return R(i, j, k, l) + c * corr;
    });
}

Tensor projective(const Metric& g, const Tensor& R, const Tensor& S) {
    int n = g.dim();
    require_dim(n, 3, "projective curvature");
    Expr c = frac(-1, n - 1);
    return build4(n, [&](int i, int j, int k, int l) {
        Expr corr = sum_of({S(j, k) * g(i, l), -(S(i, k) * g(j, l))});
        return R(i, j, k, l) + c * corr;
    });
}

Tensor conformal(const Metric& g, const Tensor& R, const Tensor& S, const Expr& r) {
    int n = g.dim();
    require_dim(n, 4, "conformal curvature");
    Tensor psi = metric_pattern(g, S);
    Tensor G = gwedge(g);
    Expr a = frac(-1, n - 2);
    Expr b = r * frac(1, (n - 1) * (n - 2));
    Expr one(1);
    Tensor out(n, Valence{0, 4});
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = combo({{&one, &R[f]}, {&a, &psi[f]}, {&b, &G[f]}});
    return out;
}

Tensor conharmonic(const Metric& g, const Tensor& R, const Tensor& S) {
    int n = g.dim();
    require_dim(n, 3, "conharmonic curvature");
    Tensor psi = metric_pattern(g, S);
    Expr a = frac(-1, n - 2);
    Expr one(1);
    Tensor out(n, Valence{0, 4});
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = combo({{&one, &R[f]}, {&a, &psi[f]}});
    return out;
}

Tensor semiconformal_from_parts(int n, const Tensor& C, const Tensor& H, const SemiconformalParams& p) {
    p.validate();
    Expr nm = Expr(n - 2) * p.m;
    Expr cc = -nm;
    Expr ch = p.l + nm;
    Tensor out(n, Valence{0, 4});
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = combo({{&cc, &C[f]}, {&ch, &H[f]}});
    return out;
}

Tensor semiconformal(const Metric& g, const Tensor& R, const Tensor& S, const Expr& r, const SemiconformalParams& p) {
    int n = g.dim();
    require_dim(n, 4, "semiconformal curvature");
    p.validate();
    Tensor psi = metric_pattern(g, S);
    Tensor G = gwedge(g);
    Expr a = -(p.l * frac(1, n - 2));
    Expr b = -(p.m * r * frac(1, n - 1));
    Tensor out(n, Valence{0, 4});
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = combo({{&p.l, &R[f]}, {&a, &psi[f]}, {&b, &G[f]}});
    Tensor other = semiconformal_from_parts(n, conformal(g, R, S, r), conharmonic(g, R, S), p);
    for (std::size_t f = 0; f < out.size(); ++f)
        if (!(out[f] - other[f]).is_zero())
            throw StructureError("semiconformal two-path mismatch at " + index_label(out.unflatten(f)));
    return out;
}

Curvatures::Curvatures(Metric g) : g_(g), geo_(std::make_shared<Geometry>(std::move(g))) {}

Curvatures::Curvatures(Metric g, Tensor riemann_down, Tensor ricci, Expr scalar)
    : g_(std::move(g)), riemann_(std::move(riemann_down)), ricci_(std::move(ricci)), scalar_(std::move(scalar)) {
    int n = g_.dim();
    if (riemann_->dim() != n || !(riemann_->valence() == Valence{0, 4}))
        throw DimensionError("curvature tensor must be (0,4) of the metric's dimension");
    if (ricci_->dim() != n || !(ricci_->valence() == Valence{0, 2}))
        throw DimensionError("Ricci tensor must be (0,2) of the metric's dimension");
}

const Tensor& Curvatures::inverse() const {
    if (geo_) return geo_->inverse();
    std::lock_guard lock(mutex_);
    if (!inverse_) inverse_ = inverse_metric(g_);
    return *inverse_;
}

const Tensor& Curvatures::christoffel() const {
    if (!geo_) throw StructureError("no connection for supplied curvature data");
    return geo_->christoffel();
}

const Tensor& Curvatures::riemann() const { return geo_ ? geo_->riemann().down : *riemann_; }
const Tensor& Curvatures::ricci() const { return geo_ ? geo_->ricci() : *ricci_; }
const Expr& Curvatures::scalar() const { return geo_ ? geo_->scalar() : *scalar_; }

const Tensor& Curvatures::w2() const { return get(CurvatureKind::W2); }
const Tensor& Curvatures::projective() const { return get(CurvatureKind::Projective); }
const Tensor& Curvatures::conformal() const { return get(CurvatureKind::Conformal); }
const Tensor& Curvatures::conharmonic() const { return get(CurvatureKind::Conharmonic); }
const Tensor& Curvatures::semiconformal(const SemiconformalParams& p) const {
    return get(CurvatureKind::Semiconformal, p);
}

const Tensor& Curvatures::get(CurvatureKind k, const SemiconformalParams& p) const {
    if (k == CurvatureKind::Riemann) return riemann();
    std::lock_guard lock(mutex_);
    std::string key = kind_name(k);
    if (k == CurvatureKind::Semiconformal) key += ":" + p.key();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Tensor t;
    switch (k) {
        case CurvatureKind::W2: t = spacetime::w2(g_, riemann(), ricci()); break;
        case CurvatureKind::Projective: t = spacetime::projective(g_, riemann(), ricci()); break;
        case CurvatureKind::Conformal: t = spacetime::conformal(g_, riemann(), ricci(), scalar()); break;
        case CurvatureKind::Conharmonic: t = spacetime::conharmonic(g_, riemann(), ricci()); break;
        case CurvatureKind::Semiconformal:
            t = spacetime::semiconformal(g_, riemann(), ricci(), scalar(), p);
            break;
        case CurvatureKind::Riemann: break;
    }
    return cache_.emplace(key, std::move(t)).first->second;
}

const Tensor& Curvatures::operator_form(CurvatureKind k, const SemiconformalParams& p) const {
    const Tensor& J = get(k, p);
    std::lock_guard lock(mutex_);
    std::string key = "op:" + kind_name(k);
    if (k == CurvatureKind::Semiconformal) key += ":" + p.key();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (k == CurvatureKind::Riemann && geo_) return cache_.emplace(key, geo_->riemann().up).first->second;
    return cache_.emplace(key, raise_index(J, 3, inverse())).first->second;
}

}  // namespace spacetime
