#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "spacetime/numeric.hpp"
#include "spacetime/tensor.hpp"

namespace spacetime {

// coord > bound (greater) or coord < bound; marks where the chart is valid.
struct DomainConstraint {
    std::string coord;
    bool greater = true;
    Rational bound;
};

class Metric {
public:
    // Validates symmetry and nondegeneracy; throws MetricError.
    Metric(std::vector<std::string> coords, std::vector<std::vector<Expr>> g,
           std::vector<DomainConstraint> constraints = {});

    static Metric diagonal(std::vector<std::string> coords, const std::vector<Expr>& diag,
                           std::vector<DomainConstraint> constraints = {});

    int dim() const { return static_cast<int>(coords_.size()); }
    const std::vector<std::string>& coords() const { return coords_; }
    SymbolId coord_id(int i) const { return ids_[static_cast<std::size_t>(i)]; }
    const Expr& operator()(int i, int j) const { return g_(i, j); }
    const Tensor& tensor() const { return g_; }
    const std::vector<DomainConstraint>& constraints() const { return constraints_; }
    const Expr& determinant() const { return det_; }
    // Sampling box: [1,2] per coordinate unless a constraint forces it elsewhere.
    Box sample_box() const;

private:
    std::vector<std::string> coords_;
    std::vector<SymbolId> ids_;
    Tensor g_;
    std::vector<DomainConstraint> constraints_;
    Expr det_;
};

Expr determinant(const std::vector<std::vector<Expr>>& m);

Tensor inverse_metric(const Metric& g);                                // (2,0)
Tensor christoffel(const Metric& g);                                   // (1,2), [k][i][j] = Gamma^k_ij
Tensor christoffel(const Metric& g, const Tensor& inverse);

struct Riemann {
    Tensor up;    // (1,3), [l][i][j][k] = R^l_ijk
    Tensor down;  // (0,4), [i][j][k][l] = R_ijkl = g_lm R^m_ijk
};

// R^l_ijk = -(d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik).
Riemann riemann(const Metric& g);
Riemann riemann(const Metric& g, const Tensor& gamma);
Tensor ricci(const Metric& g);                 // (0,2), S_jk = R^i_ijk
Tensor ricci_from(const Riemann& r);
Expr scalar_curvature(const Metric& g);
Expr scalar_curvature_from(const Tensor& inverse, const Tensor& ricci);

// (L_v T)_ij = v^k d_k T_ij + T_kj d_i v^k + T_ik d_j v^k
Tensor lie_derivative(const Metric& g, const VectorField& v, const Tensor& t02);
Tensor lie_derivative_metric(const Metric& g, const VectorField& v);

// Raising a covariant slot appends it as the last contravariant index; lowering
// a contravariant slot makes it the first covariant index. Slots are counted
// within their own group.
Tensor raise_index(const Tensor& t, int covariant_slot, const Tensor& inverse);
Tensor lower_index(const Tensor& t, int contravariant_slot, const Metric& g);
// Full contraction of two rank-1 tensors of equal valence through g or g^{-1}.
Expr inner_product(const Tensor& a, const Tensor& b, const Metric& g);
Expr inner_product(const Tensor& a, const Tensor& b, const Metric& g, const Tensor& inverse);

// Lazily computed, thread-safe connection and curvature of one metric.
class Geometry {
public:
    explicit Geometry(Metric g);
    const Metric& metric() const { return g_; }
    int dim() const { return g_.dim(); }
    const Tensor& inverse() const;
    const Tensor& christoffel() const;
    const Riemann& riemann() const;
    const Tensor& ricci() const;
    const Expr& scalar() const;

private:
    Metric g_;
    mutable std::recursive_mutex mutex_;
    mutable std::optional<Tensor> inverse_;
    mutable std::optional<Tensor> gamma_;
    mutable std::optional<Riemann> riemann_;
    mutable std::optional<Tensor> ricci_;
    mutable std::optional<Expr> scalar_;
};

}  // namespace spacetime
