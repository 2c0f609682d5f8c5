#include "spacetime/numeric.hpp"

#include <random>
#include <sstream>

#include "spacetime/error.hpp"

namespace spacetime {

void SurdValue::add(const Integer& radicand, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = parts_.emplace(radicand, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) parts_.erase(it);
    }
}

bool SurdValue::is_rational() const { return parts_.empty() || (parts_.size() == 1 && parts_.begin()->first == 1); }

Rational SurdValue::rational_part() const {
    auto it = parts_.find(Integer(1));
    return it == parts_.end() ? Rational(0) : it->second;
}

Real SurdValue::to_real(unsigned digits) const {
    PrecisionScope scope(digits + 10);
    Real sum = 0;
    for (const auto& [r, c] : parts_) {
        Real term = Real(c.get_mpq_t());
        if (r != 1) term *= boost::multiprecision::sqrt(Real(r.get_mpz_t()));
        sum += term;
    }
    return sum;
}

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

namespace {

std::vector<const Rational*> bind_point(const Expr& e, const Point& p) {
    std::vector<const Rational*> values;
    for (SymbolId v : e.symbols()) {
        auto it = p.find(symbol_name(v));
        if (it == p.end()) throw DomainError("no value assigned to '" + symbol_name(v) + "'");
        if (values.size() <= v) values.resize(v + 1, nullptr);
        values[v] = &it->second;
    }
    return values;
}

}  // namespace

SurdValue evaluate_exact(const Expr& e, const Point& p) {
    auto values = bind_point(e, p);
    Rational den = e.denominator().evaluate(values);
    if (den == 0) throw SingularPointError("division by zero at evaluation point");
    SurdValue out;
    for (const auto& [r, poly] : e.numerator().components()) out.add(r, poly.evaluate(values) / den);
    return out;
}

Real evaluate(const Expr& e, const Point& p, unsigned digits) {
    SurdValue v = evaluate_exact(e, p);
    Real x = v.to_real(digits);
    return x;
}

std::string format_real(const Real& x, int significant) {
    std::ostringstream os;
    os.precision(significant);
    Real y = x;
    if (boost::multiprecision::abs(y) < Real("1e-40")) y = 0;  // avoid printing -0 or 1e-55 noise
    os << y;
    return os.str();
}

Box default_box(const std::vector<std::string>& coords) {
    Box box;
    for (const auto& c : coords) box[c] = Interval{Rational(1), Rational(2)};
    return box;
}

std::vector<Point> sample_points(const Box& box, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(1, (1L << 20) - 1);
    std::vector<Point> out;
    for (std::size_t i = 0; i < count; ++i) {
        Point p;
        for (const auto& [name, iv] : box) {
            Rational t(dist(rng), 1L << 20);
            t.canonicalize();
            p[name] = iv.lo + (iv.hi - iv.lo) * t;
        }
        out.push_back(std::move(p));
    }
    return out;
}

bool numerically_zero(const Expr& e, const Box& box, std::size_t points, double tolerance) {
    PrecisionScope scope(kZeroTestDigits);
    Real tol(tolerance);
    for (const auto& p : sample_points(box, points)) {
        Real v = evaluate(e, p, kZeroTestDigits);
        if (boost::multiprecision::abs(v) > tol) return false;
    }
    return true;
}

bool is_zero(const Expr& e) { return e.is_zero(); }

bool is_zero(const Expr& e, const Box& box) {
    // Every Expr is held in canonical rational-with-surds form, so the
    // canonical test decides; the box only matters for the numeric fallback.
    (void)box;
    return e.is_zero();
}

}  // namespace spacetime
