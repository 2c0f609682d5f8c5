#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <map>
#include <string>
#include <vector>

#include "spacetime/expr.hpp"

namespace spacetime {

using Real = boost::multiprecision::mpfr_float;

// Assignment of exact rational values to coordinate names.
using Point = std::map<std::string, Rational>;

struct Interval {
    Rational lo;
    Rational hi;
};
using Box = std::map<std::string, Interval>;

// Exact value sum_r c_r*sqrt(r) of a constant or fully evaluated Expr.
class SurdValue {
public:
    SurdValue() = default;
    void add(const Integer& radicand, const Rational& coef);
    bool is_zero() const { return parts_.empty(); }
    bool is_rational() const;
    Rational rational_part() const;
    const std::map<Integer, Rational>& parts() const { return parts_; }
    Real to_real(unsigned digits) const;

private:
    std::map<Integer, Rational> parts_;
};

// Sets the working precision for the current thread and restores it on exit.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// Throws SingularPointError when the denominator vanishes at p.
SurdValue evaluate_exact(const Expr& e, const Point& p);
Real evaluate(const Expr& e, const Point& p, unsigned digits = 50);
std::string format_real(const Real& x, int significant = 12);

// Default sampling box [1,2] for each name, narrowed by nothing.
Box default_box(const std::vector<std::string>& coords);
// Deterministic pseudo-random points with rational coordinates inside the box.
std::vector<Point> sample_points(const Box& box, std::size_t count, std::uint64_t seed = 0x5eed);

constexpr std::size_t kZeroTestPoints = 8;
constexpr double kZeroTestTolerance = 1e-9;
constexpr unsigned kZeroTestDigits = 50;

// |e| below tolerance at every sample point.
bool numerically_zero(const Expr& e, const Box& box, std::size_t points = kZeroTestPoints,
                      double tolerance = kZeroTestTolerance);
// Canonical test first; the numeric fallback only applies outside the
// rational-with-surds class, which parsed expressions never leave.
bool is_zero(const Expr& e, const Box& box);
bool is_zero(const Expr& e);

}  // namespace spacetime
