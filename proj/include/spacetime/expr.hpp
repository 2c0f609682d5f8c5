#pragma once

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "spacetime/polynomial.hpp"
#include "spacetime/surd.hpp"

namespace spacetime {

// Symbolic scalar held in canonical form num/den: num is a polynomial with
// surd coefficients, den a rational polynomial coprime to every component of
// num, integer-primitive, with positive leading coefficient in name order.
// Two Exprs are equal as functions iff their canonical forms are identical.
class Expr {
public:
    Expr();
    Expr(const Rational& c);  // NOLINT
    Expr(long c);             // NOLINT
    Expr(int c) : Expr(static_cast<long>(c)) {}  // NOLINT

    static Expr symbol(SymbolId id);
    static Expr symbol(std::string_view name);
    static Expr sqrt(const Rational& q);
    static Expr from_parts(SurdPoly num, Poly den);

    bool is_zero() const;
    bool is_one() const;
    bool is_constant() const;  // no symbols
    bool is_rational() const;  // constant without surds
    bool has_surds() const;
    std::optional<Rational> as_rational() const;
    const SurdPoly& numerator() const;
    const Poly& denominator() const;
    std::vector<SymbolId> symbols() const;
    std::size_t complexity() const;  // total term count, for heuristics

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr& operator+=(const Expr& b) { return *this = *this + b; }
    Expr& operator-=(const Expr& b) { return *this = *this - b; }
    Expr& operator*=(const Expr& b) { return *this = *this * b; }
    Expr& operator/=(const Expr& b) { return *this = *this / b; }
    Expr inverse() const;
    Expr pow(long exponent) const;
    Expr diff(SymbolId v) const;
    Expr diff(std::string_view name) const { return diff(intern_symbol(name)); }
    Expr substitute(const std::map<SymbolId, Expr>& values) const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

    std::string str() const;

    struct Data;
    friend Expr sum_of(const std::vector<Expr>& terms);

private:
    // num and den already coprime; only the sign and content of den are fixed up.
    static Expr normalized(SurdPoly num, Poly den);
    explicit Expr(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

// Sum of many terms; numerators over identical denominators are added first.
Expr sum_of(const std::vector<Expr>& terms);

// Parses the expression grammar. When `symbols` is given, identifiers outside
// it are rejected. Error columns are offset by `column_offset`.
Expr parse_expr(std::string_view text, const std::vector<std::string>* symbols = nullptr, int line = 0,
                int column_offset = 0);

}  // namespace spacetime
