#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spacetime/symbol.hpp"

namespace spacetime {

using Rational = mpq_class;
using Integer = mpz_class;

// Power product of symbols; exponents indexed by SymbolId, trailing zeros trimmed.
class Monomial {
public:
    Monomial() = default;
    static Monomial variable(SymbolId v, unsigned exponent = 1);

    unsigned degree(SymbolId v) const { return v < e_.size() ? e_[v] : 0; }
    unsigned total_degree() const;
    bool is_one() const { return e_.empty(); }
    std::size_t span() const { return e_.size(); }

    void set(SymbolId v, unsigned exponent);
    Monomial without(SymbolId v) const;
    std::vector<std::pair<SymbolId, unsigned>> factors() const;

    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    Monomial operator/(const Monomial& other) const;  // requires divides
    static Monomial gcd(const Monomial& a, const Monomial& b);

    // Lexicographic with lower ids more significant.
    static int compare(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
    void trim();
    boost::container::small_vector<unsigned, 6> e_;
};

struct Term {
    Monomial mono;
    Rational coef;
};

// Sparse multivariate polynomial over Q, terms kept in strictly descending order.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);  // NOLINT: implicit by design
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT
    static Poly variable(SymbolId v);
    static Poly monomial(const Monomial& m, const Rational& c);
    static Poly from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1; }
    bool is_monomial() const { return terms_.size() == 1; }
    Rational constant_value() const;  // requires is_constant

    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const { return terms_.front(); }
    std::size_t size() const { return terms_.size(); }

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    Poly scaled(const Rational& c) const;
    Poly times(const Monomial& m, const Rational& c) const;
    Poly pow(unsigned e) const;
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly diff(SymbolId v) const;
    unsigned degree(SymbolId v) const;
    unsigned total_degree() const;
    std::vector<SymbolId> variables() const;
    bool contains(SymbolId v) const { return degree(v) > 0; }

    // values[id] must be non-null for every symbol that occurs.
    Rational evaluate(const std::vector<const Rational*>& values) const;

    // Positive rational c with (*this / c) having coprime integer coefficients.
    Rational integer_content() const;
    // Integer-primitive with positive leading coefficient; zero stays zero.
    Poly primitive() const;
    Monomial monomial_content() const;
    Poly divide_monomial(const Monomial& m) const;  // requires m to divide every term

    // Coefficients as polynomials in the other symbols, keyed by degree in v.
    std::map<unsigned, Poly> coefficients(SymbolId v) const;

private:
    std::vector<Term> terms_;
};

std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
Poly pseudo_remainder(const Poly& a, const Poly& b, SymbolId v);
// Normalized as Poly::primitive(); gcd(0, 0) is 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace spacetime
