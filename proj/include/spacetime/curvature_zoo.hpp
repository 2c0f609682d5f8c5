#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "spacetime/manifold.hpp"

namespace spacetime {

enum class CurvatureKind { Riemann, W2, Projective, Conformal, Conharmonic, Semiconformal };

const std::vector<CurvatureKind>& all_curvature_kinds();
std::string kind_name(CurvatureKind k);  // "riemann", "w2", ...
std::optional<CurvatureKind> parse_kind(const std::string& name);

struct SemiconformalParams {
    Expr l = Expr(1);
    Expr m = Expr(1);
    void validate() const;  // throws StructureError when l or m is zero
    std::string key() const;
};

// G(X,Y,Z,W) = g(Y,Z)g(X,W) - g(X,Z)g(Y,W)
Tensor gwedge(const Metric& g);
// g(X,W)E(Y,Z) - g(X,Z)E(Y,W) + g(Y,Z)E(X,W) - g(Y,W)E(X,Z), E symmetric (0,2)
Tensor metric_pattern(const Metric& g, const Tensor& e);

Tensor w2(const Metric& g, const Tensor& R, const Tensor& S);
Tensor projective(const Metric& g, const Tensor& R, const Tensor& S);
Tensor conformal(const Metric& g, const Tensor& R, const Tensor& S, const Expr& r);
Tensor conharmonic(const Metric& g, const Tensor& R, const Tensor& S);
// Closed form in (l, m); throws StructureError if the two-path check disagrees.
Tensor semiconformal(const Metric& g, const Tensor& R, const Tensor& S, const Expr& r, const SemiconformalParams& p);
// The same tensor assembled as -(n-2)m C + [l + (n-2)m] H.
Tensor semiconformal_from_parts(int n, const Tensor& C, const Tensor& H, const SemiconformalParams& p);

// Curvature data of one manifold plus lazily built zoo tensors. Built either
// from a metric or from supplied tensors (for construct-then-verify checks).
class Curvatures {
public:
    explicit Curvatures(Metric g);
    Curvatures(Metric g, Tensor riemann_down, Tensor ricci, Expr scalar);

    const Metric& metric() const { return g_; }
    int dim() const { return g_.dim(); }
    const Tensor& inverse() const;
    const Tensor& christoffel() const;  // only for metric-built instances
    const Tensor& riemann() const;      // (0,4)
    const Tensor& ricci() const;
    const Expr& scalar() const;
    bool synthetic() const { return !geo_; }

    const Tensor& w2() const;
    const Tensor& projective() const;
    const Tensor& conformal() const;
    const Tensor& conharmonic() const;
    const Tensor& semiconformal(const SemiconformalParams& p) const;
    const Tensor& get(CurvatureKind k, const SemiconformalParams& p = {}) const;
    // J(X,Y)Z as a (1,3) tensor [m][i][j][k], last slot raised with g.
    const Tensor& operator_form(CurvatureKind k, const SemiconformalParams& p = {}) const;

private:
    Metric g_;
    std::shared_ptr<Geometry> geo_;
    mutable std::recursive_mutex mutex_;
    mutable std::optional<Tensor> inverse_, riemann_, ricci_;
    mutable std::optional<Expr> scalar_;
    mutable std::map<std::string, Tensor> cache_;
};

}  // namespace spacetime
