#include "spacetime/surd.hpp"

#include <algorithm>

#include "spacetime/error.hpp"

namespace spacetime {

namespace {

constexpr unsigned long kTrialBound = 200000;

// Strips square factors; whatever is left over must be provably squarefree.
Integer squarefree_part(Integer n, Integer& root) {
    root = 1;
    Integer out = 1;
    for (unsigned long p = 2; p <= kTrialBound; p = p == 2 ? 3 : p + 2) {
        Integer pp = p;
        if (pp * pp > n) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) root *= p;
        if (e % 2 == 1) out *= p;
    }
    if (n > 1) {
        Integer bound = Integer(kTrialBound) * kTrialBound;
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            Integer s;
            mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
            root *= s;
        } else if (n <= bound) {
            out *= n;  // no factor below the trial bound, so n is prime
        } else {
            throw DomainError("sqrt argument too large to factor");
        }
    }
    return out;
}

}  // namespace

SqrtSplit split_sqrt(const Rational& q) {
    if (q <= 0) throw DomainError("sqrt of a non-positive rational");
    // sqrt(a/b) = sqrt(a*b)/b
    Integer ab = q.get_num() * q.get_den();
    Integer root;
    Integer r = squarefree_part(ab, root);
    Rational outside(root, q.get_den());
    outside.canonicalize();
    return {outside, r};
}

std::vector<Integer> prime_factors(const Integer& squarefree) {
    std::vector<Integer> out;
    Integer n = squarefree;
    for (unsigned long p = 2; p <= kTrialBound && n > 1; p = p == 2 ? 3 : p + 2) {
        Integer pp = p;
        if (pp * pp > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.emplace_back(p);
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

SurdPoly::SurdPoly(Poly p) {
    if (!p.is_zero()) comps_.emplace_back(Integer(1), std::move(p));
}

SurdPoly SurdPoly::surd(const Integer& radicand, Poly coefficient) {
    SurdPoly s;
    s.insert(radicand, std::move(coefficient));
    return s;
}

const Poly& SurdPoly::rational_part() const {
    static const Poly zero;
    return !comps_.empty() && comps_[0].first == 1 ? comps_[0].second : zero;
}

void SurdPoly::insert(const Integer& radicand, Poly p) {
    if (p.is_zero()) return;
    auto it = std::lower_bound(comps_.begin(), comps_.end(), radicand,
                               [](const Component& c, const Integer& r) { return c.first < r; });
    if (it != comps_.end() && it->first == radicand) {
        it->second += p;
        if (it->second.is_zero()) comps_.erase(it);
    } else {
        comps_.insert(it, Component(radicand, std::move(p)));
    }
}

SurdPoly SurdPoly::operator-() const {
    SurdPoly s = *this;
    for (auto& c : s.comps_) c.second = -c.second;
    return s;
}

SurdPoly operator+(const SurdPoly& a, const SurdPoly& b) {
    SurdPoly s = a;
    for (const auto& c : b.comps_) s.insert(c.first, c.second);
    return s;
}

SurdPoly operator-(const SurdPoly& a, const SurdPoly& b) { return a + (-b); }

SurdPoly operator*(const SurdPoly& a, const SurdPoly& b) {
    if (a.is_rational() && b.is_rational()) return SurdPoly(a.rational_part() * b.rational_part());
    SurdPoly s;
    for (const auto& [ra, pa] : a.comps_) {
        for (const auto& [rb, pb] : b.comps_) {
            // sqrt(ra)*sqrt(rb) = g*sqrt(ra*rb/g^2) for squarefree ra, rb with g = gcd
            Integer g;
            mpz_gcd(g.get_mpz_t(), ra.get_mpz_t(), rb.get_mpz_t());
            Integer r = (ra / g) * (rb / g);
            s.insert(r, (pa * pb).scaled(Rational(g)));
        }
    }
    return s;
}

SurdPoly SurdPoly::times(const Poly& p) const {
    if (p.is_zero()) return SurdPoly();
    SurdPoly s = *this;
    for (auto& c : s.comps_) c.second = c.second * p;
    return s;
}

SurdPoly SurdPoly::scaled(const Rational& c) const {
    if (c == 0) return SurdPoly();
    SurdPoly s = *this;
    for (auto& comp : s.comps_) comp.second = comp.second.scaled(c);
    return s;
}

SurdPoly SurdPoly::divide_exact(const Poly& p) const {
    SurdPoly s = *this;
    for (auto& c : s.comps_) c.second = spacetime::divide_exact(c.second, p).value();
    return s;
}

SurdPoly SurdPoly::diff(SymbolId v) const {
    SurdPoly s;
    for (const auto& [r, p] : comps_) s.insert(r, p.diff(v));
    return s;
}

bool operator==(const SurdPoly& a, const SurdPoly& b) { return a.comps_ == b.comps_; }

SurdPoly SurdPoly::conjugate(const Integer& prime) const {
    SurdPoly s = *this;
    for (auto& [r, p] : s.comps_)
        if (mpz_divisible_p(r.get_mpz_t(), prime.get_mpz_t())) p = -p;
    return s;
}

std::vector<Integer> SurdPoly::primes() const {
    std::vector<Integer> out;
    for (const auto& [r, p] : comps_)
        for (auto& f : prime_factors(r)) out.push_back(f);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace spacetime
