#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spacetime/curvature_zoo.hpp"

namespace spacetime {

enum class Verdict { Holds, Fails, Inapplicable };
std::string verdict_name(Verdict v);  // "holds", "fails", "inapplicable"

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::Inapplicable;
    std::optional<std::string> witness;  // index label, sample point or failed condition
    std::vector<std::pair<std::string, Expr>> scalars;
    std::vector<std::string> notes;
    std::optional<std::string> outcome;  // e.g. "proportional(3)", "steady"
    bool asserted = false;                // counts toward a failing exit status

    bool holds() const { return verdict == Verdict::Holds; }
};

class ClassificationReport {
public:
    // Throws std::logic_error if a check of the same name is already present.
    void add(CheckResult r);
    const std::vector<CheckResult>& checks() const { return checks_; }
    const CheckResult* find(const std::string& name) const;
    bool any_failed() const;

private:
    std::vector<CheckResult> checks_;
};

// Ricci tensor S = alpha g + beta [A(x)B + B(x)A] with normalized A, B.
struct MQEStructure {
    Expr alpha;
    Expr beta;
    Tensor A;  // one-forms
    Tensor B;
    int eps1 = 1;  // declared g(xi1, xi1)
    int eps2 = 1;

    Tensor D() const;  // A(x)B + B(x)A
};

Tensor outer(const Tensor& a, const Tensor& b);      // one-forms -> (0,2)
Tensor symmetric_product(const Tensor& a, const Tensor& b);  // a(x)b + b(x)a
Expr trace(const Tensor& t02, const Tensor& inverse);

CheckResult verify_einstein(const Metric& g, const Tensor& S);
CheckResult verify_qe(const Metric& g, const Tensor& S, const Expr& alpha, const Expr& beta, const Tensor& A,
                      int eps = 1);
CheckResult verify_nqe(const Metric& g, const Tensor& S, const Expr& alpha, const Expr& beta, const Tensor& D);
CheckResult verify_mqe(const Metric& g, const Tensor& S, const MQEStructure& s);
// r = n alpha; named "r = 4α" in dimension four.
CheckResult verify_trace(const Metric& g, const Expr& r, const Expr& alpha);

// R = a G + b psi(E), and the same with E = A(x)B + B(x)A.
CheckResult verify_nqc(const Metric& g, const Tensor& R, const Expr& a, const Expr& b, const Tensor& E);
CheckResult verify_mqc(const Metric& g, const Tensor& R, const Expr& a, const Expr& b, const Tensor& A,
                       const Tensor& B);
CheckResult is_flat(const Tensor& J, const std::string& name);

// Results are stored [Z][W][X][Y]. `op` is J in operator form [m][X][Y][Z].
Tensor curvature_dot_ricci(const Tensor& op, const Tensor& S);
Tensor tachibana(const Metric& g, const Tensor& S);

struct PseudosymmetryOutcome {
    enum class Kind { BothZero, Proportional, Independent } kind = Kind::BothZero;
    Expr ratio;                     // F_S when proportional
    std::optional<Index> witness;   // where proportionality breaks
};
std::string outcome_name(const PseudosymmetryOutcome& o);

PseudosymmetryOutcome ricci_pseudosymmetry_test(const Tensor& d1, const Tensor& d2);
PseudosymmetryOutcome ricci_pseudosymmetry_test(const Curvatures& c, CurvatureKind kind,
                                                const SemiconformalParams& p = {});

// R(X,Y)xi = k[g(Y,xi)X - g(X,xi)Y] over coordinate X, Y.
CheckResult k_nullity_check(const Curvatures& c, const VectorField& xi, const Expr& k);

// One record per flatness theorem; premises that fail give inapplicable.
ClassificationReport theorem_suite(const Curvatures& c, const MQEStructure& s, const SemiconformalParams& p = {});

// Only for a diagonal metric whose Ricci tensor has a single off-diagonal
// pair (i,j) and diagonal alpha g: A along x_j, B along x_i, unit length.
struct StructureRecovery {
    std::optional<MQEStructure> structure;
    std::string reason;  // why recovery gave up
};
StructureRecovery recover_mqe_structure(const Curvatures& c);

}  // namespace spacetime
