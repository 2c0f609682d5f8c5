#pragma once

#include <utility>
#include <vector>

#include "spacetime/polynomial.hpp"

namespace spacetime {

// sqrt(q) == outside * sqrt(radicand), radicand a squarefree positive integer.
struct SqrtSplit {
    Rational outside;
    Integer radicand;
};

SqrtSplit split_sqrt(const Rational& q);  // q > 0
std::vector<Integer> prime_factors(const Integer& squarefree);

// sum_r sqrt(r) * P_r over distinct squarefree radicands r, ascending, no zero P_r.
class SurdPoly {
public:
    using Component = std::pair<Integer, Poly>;

    SurdPoly() = default;
    SurdPoly(Poly p);  // NOLINT: rational polynomial embeds directly
    static SurdPoly surd(const Integer& radicand, Poly coefficient);

    bool is_zero() const { return comps_.empty(); }
    bool is_rational() const { return comps_.empty() || (comps_.size() == 1 && comps_[0].first == 1); }
    const std::vector<Component>& components() const { return comps_; }
    const Poly& rational_part() const;  // the radicand-1 component, or zero

    SurdPoly operator-() const;
    friend SurdPoly operator+(const SurdPoly& a, const SurdPoly& b);
    friend SurdPoly operator-(const SurdPoly& a, const SurdPoly& b);
    friend SurdPoly operator*(const SurdPoly& a, const SurdPoly& b);
    SurdPoly times(const Poly& p) const;
    SurdPoly scaled(const Rational& c) const;
    SurdPoly divide_exact(const Poly& p) const;  // requires p to divide every component
    SurdPoly diff(SymbolId v) const;
    friend bool operator==(const SurdPoly& a, const SurdPoly& b);

    // Galois conjugate flipping sqrt(p) -> -sqrt(p) for the prime p.
    SurdPoly conjugate(const Integer& prime) const;
    std::vector<Integer> primes() const;

private:
    void insert(const Integer& radicand, Poly p);
    std::vector<Component> comps_;
};

}  // namespace spacetime
