#include "spacetime/manifold.hpp"

#include <algorithm>

#include "spacetime/error.hpp"

namespace spacetime {

namespace {

// Determinant of the rows [row0, n) restricted to the column set `cols`
// by Laplace expansion along the first row, memoized over subsets.
Expr subset_det(const std::vector<std::vector<Expr>>& m, const std::vector<int>& rows, unsigned cols,
                std::vector<std::optional<Expr>>& memo) {
    if (memo[cols]) return *memo[cols];
    int k = __builtin_popcount(cols);
    std::size_t row = rows[rows.size() - static_cast<std::size_t>(k)];
    if (k == 1) {
        int c = __builtin_ctz(cols);
        return *(memo[cols] = m[row][static_cast<std::size_t>(c)]);
    }
    std::vector<Expr> terms;
    int sign = 1;
    for (int c = 0; c < 32; ++c) {
        if (!(cols & (1u << c))) continue;
        const Expr& a = m[row][static_cast<std::size_t>(c)];
        if (!a.is_zero()) {
            Expr minor = subset_det(m, rows, cols & ~(1u << c), memo);
            if (!minor.is_zero()) terms.push_back(sign > 0 ? a * minor : -(a * minor));
        }
        sign = -sign;
    }
    return *(memo[cols] = sum_of(terms));
}

Expr det_of(const std::vector<std::vector<Expr>>& m, const std::vector<int>& rows, unsigned cols) {
    if (rows.empty()) return Expr(1);
    std::vector<std::optional<Expr>> memo(std::size_t(1) << m.size());
    return subset_det(m, rows, cols, memo);
}

}  // namespace

Expr determinant(const std::vector<std::vector<Expr>>& m) {
    std::size_t n = m.size();
    if (n == 0) return Expr(1);
    if (n > 16) throw DimensionError("dimension too large");
    std::vector<int> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<int>(i);
    return det_of(m, rows, (1u << n) - 1);
}

Metric::Metric(std::vector<std::string> coords, std::vector<std::vector<Expr>> g,
               std::vector<DomainConstraint> constraints)
    : coords_(std::move(coords)), constraints_(std::move(constraints)) {
    int n = static_cast<int>(coords_.size());
    if (n == 0) throw MetricError("metric has no coordinates");
    if (static_cast<int>(g.size()) != n) throw MetricError("metric size does not match coordinate count");
    for (const auto& row : g)
        if (static_cast<int>(row.size()) != n) throw MetricError("metric is not square");
    for (const auto& c : coords_) ids_.push_back(intern_symbol(c));
    g_ = Tensor(n, Valence{0, 2});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw MetricError("metric not symmetric");
            g_(i, j) = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (SymbolId s : g_(i, j).symbols())
                if (std::find(ids_.begin(), ids_.end(), s) == ids_.end())
                    throw MetricError("metric component uses unknown symbol '" + symbol_name(s) + "'");
    det_ = spacetime::determinant(g);
    if (det_.is_zero()) throw MetricError("metric degenerate: determinant is identically zero");
    for (const auto& p : sample_points(sample_box(), kZeroTestPoints)) {
        SurdValue v;
        try {
            v = evaluate_exact(det_, p);
        } catch (const SingularPointError&) {
            throw MetricError("metric singular on the sample domain");
        }
        if (v.is_zero()) throw MetricError("metric degenerate at a sample point");
    }
}

Metric Metric::diagonal(std::vector<std::string> coords, const std::vector<Expr>& diag,
                        std::vector<DomainConstraint> constraints) {
    std::size_t n = diag.size();
    std::vector<std::vector<Expr>> g(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = diag[i];
    return Metric(std::move(coords), std::move(g), std::move(constraints));
}

Box Metric::sample_box() const {
    Box box = default_box(coords_);
    for (const auto& name : coords_) {
        std::optional<Rational> lo, hi;
        for (const auto& c : constraints_) {
            if (c.coord != name) continue;
            if (c.greater) {
                if (!lo || c.bound > *lo) lo = c.bound;
            } else {
                if (!hi || c.bound < *hi) hi = c.bound;
            }
        }
        Interval& iv = box[name];
        if (lo && hi) {
            if (*hi <= *lo) throw MetricError("empty domain for coordinate '" + name + "'");
            Rational w = (*hi - *lo) / 3;
            iv = Interval{*lo + w, *lo + 2 * w};
        } else if (lo) {
            if (!(*lo < iv.lo)) iv = Interval{*lo + 1, *lo + 2};
        } else if (hi) {
            if (!(iv.hi < *hi)) iv = Interval{*hi - 2, *hi - 1};
        }
    }
    return box;
}

Tensor inverse_metric(const Metric& g) {
    int n = g.dim();
    std::vector<std::vector<Expr>> m(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
    bool diagonal = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g(i, j);
            if (i != j && !g(i, j).is_zero()) diagonal = false;
        }
    Tensor inv(n, Valence{2, 0});
    if (diagonal) {
        for (int i = 0; i < n; ++i) inv(i, i) = g(i, i).inverse();
        return inv;
    }
    const Expr& det = g.determinant();
    // Cofactor expansion: (g^-1)^{ij} = (-1)^{i+j} M_ji / det.
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::vector<int> rows;
            for (int r = 0; r < n; ++r)
                if (r != j) rows.push_back(r);
            unsigned cols = ((1u << n) - 1) & ~(1u << i);
            std::vector<std::optional<Expr>> memo(std::size_t(1) << n);
            Expr minor = rows.empty() ? Expr(1) : subset_det(m, rows, cols, memo);
            Expr v = minor / det;
            if ((i + j) % 2 == 1) v = -v;
            inv(i, j) = v;
            inv(j, i) = v;
        }
    }
    return inv;
}

Tensor christoffel(const Metric& g) { return christoffel(g, inverse_metric(g)); }

Tensor christoffel(const Metric& g, const Tensor& inverse) {
    int n = g.dim();
    // dg[l][i][j] = d_l g_ij
    Tensor dg(n, Valence{0, 3});
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Expr d = g(i, j).diff(g.coord_id(l));
                dg(l, i, j) = d;
                dg(l, j, i) = d;
            }
    // First kind: G_lij = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    Tensor first(n, Valence{0, 3});
    Expr half(Rational(1, 2));
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Expr v = sum_of({dg(i, j, l), dg(j, i, l), -dg(l, i, j)}) * half;
                first(l, i, j) = v;
                first(l, j, i) = v;
            }
    Tensor gamma(n, Valence{1, 2});
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                std::vector<Expr> terms;
                for (int l = 0; l < n; ++l)
                    if (!inverse(k, l).is_zero() && !first(l, i, j).is_zero())
                        terms.push_back(inverse(k, l) * first(l, i, j));
                Expr v = sum_of(terms);
                gamma(k, i, j) = v;
                gamma(k, j, i) = v;
            }
    return gamma;
}

Riemann riemann(const Metric& g) { return riemann(g, christoffel(g)); }

Riemann riemann(const Metric& g, const Tensor& gamma) {
    int n = g.dim();
    // dgamma[i][l][j][k] = d_i Gamma^l_jk
    Tensor dgamma(n, Valence{0, 4});
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j)
                for (int k = j; k < n; ++k) {
                    Expr d = gamma(l, j, k).diff(g.coord_id(i));
                    dgamma(i, l, j, k) = d;
                    dgamma(i, l, k, j) = d;
                }
    Riemann out{Tensor(n, Valence{1, 3}), Tensor(n, Valence{0, 4})};
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    std::vector<Expr> terms;
                    terms.push_back(-dgamma(i, l, j, k));
                    terms.push_back(dgamma(j, l, i, k));
                    for (int m = 0; m < n; ++m) {
                        const Expr& a = gamma(l, i, m);
                        const Expr& b = gamma(m, j, k);
                        if (!a.is_zero() && !b.is_zero()) terms.push_back(-(a * b));
                        const Expr& c = gamma(l, j, m);
                        const Expr& d = gamma(m, i, k);
                        if (!c.is_zero() && !d.is_zero()) terms.push_back(c * d);
                    }
                    Expr v = sum_of(terms);
                    out.up(l, i, j, k) = v;
                    out.up(l, j, i, k) = -v;
                }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    std::vector<Expr> terms;
                    for (int m = 0; m < n; ++m)
                        if (!g(l, m).is_zero() && !out.up(m, i, j, k).is_zero())
                            terms.push_back(g(l, m) * out.up(m, i, j, k));
                    out.down(i, j, k, l) = sum_of(terms);
                }
    return out;
}

Tensor ricci_from(const Riemann& r) {
    int n = r.up.dim();
    Tensor s(n, Valence{0, 2});
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            std::vector<Expr> terms;
            for (int i = 0; i < n; ++i) terms.push_back(r.up(i, i, j, k));
            s(j, k) = sum_of(terms);
        }
    return s;
}

Tensor ricci(const Metric& g) { return ricci_from(riemann(g)); }

Expr scalar_curvature_from(const Tensor& inverse, const Tensor& ricci) {
    int n = ricci.dim();
    std::vector<Expr> terms;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (!inverse(j, k).is_zero() && !ricci(j, k).is_zero()) terms.push_back(inverse(j, k) * ricci(j, k));
    return sum_of(terms);
}

Expr scalar_curvature(const Metric& g) { return scalar_curvature_from(inverse_metric(g), ricci(g)); }

Tensor lie_derivative(const Metric& g, const VectorField& v, const Tensor& t) {
    int n = g.dim();
    if (v.dim() != n) throw DimensionError("vector field has " + std::to_string(v.dim()) + " components, expected " +
                                           std::to_string(n));
    if (!(t.valence() == Valence{0, 2}) || t.dim() != n) throw DimensionError("Lie derivative expects a (0,2) tensor");
    // dv[i][k] = d_i v^k
    std::vector<std::vector<Expr>> dv(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) dv[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = v[k].diff(g.coord_id(i));
    Tensor out(n, Valence{0, 2});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Expr> terms;
            for (int k = 0; k < n; ++k) {
                if (!v[k].is_zero()) terms.push_back(v[k] * t(i, j).diff(g.coord_id(k)));
                const Expr& di = dv[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                if (!di.is_zero()) terms.push_back(t(k, j) * di);
                const Expr& dj = dv[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                if (!dj.is_zero()) terms.push_back(t(i, k) * dj);
            }
            out(i, j) = sum_of(terms);
        }
    return out;
}

Tensor lie_derivative_metric(const Metric& g, const VectorField& v) { return lie_derivative(g, v, g.tensor()); }

Tensor raise_index(const Tensor& t, int slot, const Tensor& inverse) {
    Valence v = t.valence();
    if (slot < 0 || slot >= v.down) throw DimensionError("valence mismatch: no covariant slot " + std::to_string(slot));
    int n = t.dim();
    Tensor out(n, Valence{v.up + 1, v.down - 1});
    int src = v.up + slot;
    for (std::size_t f = 0; f < out.size(); ++f) {
        Index idx = out.unflatten(f);
        int a = idx[static_cast<std::size_t>(v.up)];
        Index from;
        for (int p = 0; p < v.up; ++p) from.push_back(idx[static_cast<std::size_t>(p)]);
        for (int p = v.up + 1; p < out.rank(); ++p) from.push_back(idx[static_cast<std::size_t>(p)]);
        from.insert(from.begin() + src, 0);
        std::vector<Expr> terms;
        for (int b = 0; b < n; ++b) {
            if (inverse(a, b).is_zero()) continue;
            from[static_cast<std::size_t>(src)] = b;
            const Expr& c = t.at(from);
            if (!c.is_zero()) terms.push_back(inverse(a, b) * c);
        }
        out[f] = sum_of(terms);
    }
    return out;
}

Tensor lower_index(const Tensor& t, int slot, const Metric& g) {
    Valence v = t.valence();
    if (slot < 0 || slot >= v.up) throw DimensionError("valence mismatch: no contravariant slot " + std::to_string(slot));
    int n = t.dim();
    Tensor out(n, Valence{v.up - 1, v.down + 1});
    for (std::size_t f = 0; f < out.size(); ++f) {
        Index idx = out.unflatten(f);
        int a = idx[static_cast<std::size_t>(v.up - 1)];
        Index from;
        for (int p = 0; p < v.up - 1; ++p) from.push_back(idx[static_cast<std::size_t>(p)]);
        for (int p = v.up; p < out.rank(); ++p) from.push_back(idx[static_cast<std::size_t>(p)]);
        from.insert(from.begin() + slot, 0);
        std::vector<Expr> terms;
        for (int b = 0; b < n; ++b) {
            if (g(a, b).is_zero()) continue;
            from[static_cast<std::size_t>(slot)] = b;
            const Expr& c = t.at(from);
            if (!c.is_zero()) terms.push_back(g(a, b) * c);
        }
        out[f] = sum_of(terms);
    }
    return out;
}

Expr inner_product(const Tensor& a, const Tensor& b, const Metric& g) {
    if (a.valence() == Valence{0, 1}) return inner_product(a, b, g, inverse_metric(g));
    return inner_product(a, b, g, Tensor());
}

Expr inner_product(const Tensor& a, const Tensor& b, const Metric& g, const Tensor& inverse) {
    if (!(a.valence() == b.valence()) || a.rank() != 1) throw DimensionError("valence mismatch");
    int n = g.dim();
    if (a.dim() != n || b.dim() != n) throw DimensionError("dimension mismatch");
    bool covector = a.valence() == Valence{0, 1};
    std::vector<Expr> terms;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Expr& w = covector ? inverse(i, j) : g(i, j);
            if (w.is_zero() || a(i).is_zero() || b(j).is_zero()) continue;
            terms.push_back(w * a(i) * b(j));
        }
    return sum_of(terms);
}

Geometry::Geometry(Metric g) : g_(std::move(g)) {}

const Tensor& Geometry::inverse() const {
    std::lock_guard lock(mutex_);
    if (!inverse_) inverse_ = inverse_metric(g_);
    return *inverse_;
}

const Tensor& Geometry::christoffel() const {
    std::lock_guard lock(mutex_);
    if (!gamma_) gamma_ = spacetime::christoffel(g_, inverse());
    return *gamma_;
}

const Riemann& Geometry::riemann() const {
    std::lock_guard lock(mutex_);
    if (!riemann_) riemann_ = spacetime::riemann(g_, christoffel());
    return *riemann_;
}

const Tensor& Geometry::ricci() const {
    std::lock_guard lock(mutex_);
    if (!ricci_) ricci_ = ricci_from(riemann());
    return *ricci_;
}

const Expr& Geometry::scalar() const {
    std::lock_guard lock(mutex_);
    if (!scalar_) scalar_ = scalar_curvature_from(inverse(), ricci());
    return *scalar_;
}

}  // namespace spacetime
