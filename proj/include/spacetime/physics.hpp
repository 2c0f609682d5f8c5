#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spacetime/classifier.hpp"

namespace spacetime {

struct FluidParams {
    Expr k = Expr(1);  // gravitational constant
    Expr sigma;        // energy density
    Expr p;            // isotropic pressure
    void validate() const;  // throws StructureError when k is zero
};

// T = (sigma + p) A(x)A + p g, A the velocity one-form with A(xi1) = -1.
Tensor perfect_fluid_T(const Metric& g, const Tensor& A, const FluidParams& f);
// S - (r/2) g - k T
Tensor efe_residual(const Metric& g, const Tensor& S, const Expr& r, const Tensor& T, const Expr& k);
// S = k(sigma + p) A(x)A + (pk + r/2) g; r defaults to 4 k sigma.
Tensor fluid_ricci(const Metric& g, const Tensor& A, const FluidParams& f, std::optional<Expr> r = std::nullopt);

// "α = kσ" and "r = 4kσ"
ClassificationReport fluid_scalar_identities(const Expr& alpha, const Expr& r, const FluidParams& f);

// S_ij S^ij
Expr ricci_operator_norm_sq(const Metric& g, const Tensor& S);
Expr ricci_operator_norm_sq(const Tensor& S, const Tensor& inverse);

// Flat (r = 0) fluid with sigma + p = 0 must be a vacuum.
CheckResult vacuum_check(const Expr& r, const FluidParams& f);

struct KillingReport {
    Tensor lie_g;
    Tensor lie_T;
    bool g_vanishes = false;
    bool T_vanishes = false;
    std::vector<std::string> notes;  // hypothesis violations
    bool biconditional() const { return g_vanishes == T_vanishes; }
    CheckResult as_check() const;
};
KillingReport killing_equivalence_check(const Metric& g, const VectorField& xi, const Tensor& T, const Expr& alpha,
                                        const Expr& beta);

enum class SolitonClass { Shrinking, Steady, Expanding, Indeterminate };
std::string soliton_class_name(SolitonClass c);

struct SolitonReport {
    Expr lambda;
    SolitonClass cls = SolitonClass::Indeterminate;
    std::vector<std::string> premises;  // asserted upstream, not derived here
};
SolitonReport soliton_classify(const FluidParams& f);

}  // namespace spacetime
