#include "spacetime/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "spacetime/error.hpp"

namespace spacetime {

// ---- Monomial ----

Monomial Monomial::variable(SymbolId v, unsigned exponent) {
    Monomial m;
    m.set(v, exponent);
    return m;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (unsigned e : e_) d += e;
    return d;
}

void Monomial::trim() {
    while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

void Monomial::set(SymbolId v, unsigned exponent) {
    if (v >= e_.size()) {
        if (exponent == 0) return;
        e_.resize(v + 1, 0);
    }
    e_[v] = exponent;
    trim();
}

Monomial Monomial::without(SymbolId v) const {
    Monomial m = *this;
    m.set(v, 0);
    return m;
}

std::vector<std::pair<SymbolId, unsigned>> Monomial::factors() const {
    std::vector<std::pair<SymbolId, unsigned>> out;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != 0) out.emplace_back(static_cast<SymbolId>(i), e_[i]);
    return out;
}

bool Monomial::divides(const Monomial& other) const {
    if (e_.size() > other.e_.size()) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > other.e_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial m;
    const auto& a = e_.size() >= other.e_.size() ? e_ : other.e_;
    const auto& b = e_.size() >= other.e_.size() ? other.e_ : e_;
    m.e_ = a;
    for (std::size_t i = 0; i < b.size(); ++i) m.e_[i] += b[i];
    return m;
}

Monomial Monomial::operator/(const Monomial& other) const {
    Monomial m = *this;
    for (std::size_t i = 0; i < other.e_.size(); ++i) m.e_[i] -= other.e_[i];
    m.trim();
    return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial m;
    std::size_t n = std::min(a.e_.size(), b.e_.size());
    m.e_.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.e_[i] = std::min(a.e_[i], b.e_[i]);
    m.trim();
    return m;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    std::size_t n = std::max(a.e_.size(), b.e_.size());
    for (std::size_t i = 0; i < n; ++i) {
        unsigned x = i < a.e_.size() ? a.e_[i] : 0;
        unsigned y = i < b.e_.size() ? b.e_[i] : 0;
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

// ---- Poly ----

namespace {

bool term_greater(const Term& a, const Term& b) { return Monomial::compare(a.mono, b.mono) > 0; }

// r - c*m*b in one merge pass.
std::vector<Term> sub_scaled(const std::vector<Term>& r, const std::vector<Term>& b, const Monomial& m,
                             const Rational& c) {
    std::vector<Term> out;
    out.reserve(r.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < b.size()) {
        if (j == b.size()) {
            out.push_back(r[i++]);
            continue;
        }
        Monomial bm = b[j].mono * m;
        int cmp = i == r.size() ? -1 : Monomial::compare(r[i].mono, bm);
        if (cmp > 0) {
            out.push_back(r[i++]);
        } else if (cmp < 0) {
            out.push_back(Term{std::move(bm), -c * b[j].coef});
            ++j;
        } else {
            Rational v = r[i].coef - c * b[j].coef;
            if (v != 0) out.push_back(Term{std::move(bm), std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Poly::Poly(const Rational& c) {
    if (c != 0) terms_.push_back(Term{Monomial(), c});
}

Poly Poly::variable(SymbolId v) { return monomial(Monomial::variable(v), 1); }

Poly Poly::monomial(const Monomial& m, const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.push_back(Term{m, c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_greater);
    Poly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef += t.coef;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
    return p;
}

Rational Poly::constant_value() const { return terms_.empty() ? Rational(0) : terms_[0].coef; }

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.coef = -t.coef;
    return p;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly p;
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = Monomial::compare(a.terms_[i].mono, b.terms_[j].mono);
        if (c > 0) {
            p.terms_.push_back(a.terms_[i++]);
        } else if (c < 0) {
            p.terms_.push_back(b.terms_[j++]);
        } else {
            Rational v = a.terms_[i].coef + b.terms_[j].coef;
            if (v != 0) p.terms_.push_back(Term{a.terms_[i].mono, std::move(v)});
            ++i;
            ++j;
        }
    }
    for (; i < a.terms_.size(); ++i) p.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) p.terms_.push_back(b.terms_[j]);
    return p;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly p;
    p.terms_ = sub_scaled(a.terms_, b.terms_, Monomial(), Rational(1));
    return p;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.is_constant()) return b.scaled(a.terms_[0].coef);
    if (b.is_constant()) return a.scaled(b.terms_[0].coef);
    if (a.terms_.size() == 1) return b.times(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.times(b.terms_[0].mono, b.terms_[0].coef);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) prod.push_back(Term{s.mono * t.mono, s.coef * t.coef});
    return Poly::from_terms(std::move(prod));
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return Poly();
    Poly p = *this;
    for (auto& t : p.terms_) t.coef *= c;
    return p;
}

Poly Poly::times(const Monomial& m, const Rational& c) const {
    if (c == 0) return Poly();
    Poly p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back(Term{t.mono * m, t.coef * c});
    return p;
}

Poly Poly::pow(unsigned e) const {
    Poly result(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
}

Poly Poly::diff(SymbolId v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = t.mono.degree(v);
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(v, e - 1);
        out.push_back(Term{std::move(m), t.coef * e});
    }
    // Differentiation can reorder terms (x*y^3 vs x^2 after d/dx), so re-sort.
    return from_terms(std::move(out));
}

unsigned Poly::degree(SymbolId v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
    return d;
}

unsigned Poly::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

std::vector<SymbolId> Poly::variables() const {
    std::vector<SymbolId> out;
    for (const auto& t : terms_)
        for (auto [v, e] : t.mono.factors()) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rational Poly::evaluate(const std::vector<const Rational*>& values) const {
    Rational sum = 0;
    for (const auto& t : terms_) {
        Rational term = t.coef;
        for (auto [v, e] : t.mono.factors()) {
            if (v >= values.size() || values[v] == nullptr)
                throw DomainError("no value assigned to '" + symbol_name(v) + "'");
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), values[v]->get_num_mpz_t(), e);
            mpz_pow_ui(p.get_den_mpz_t(), values[v]->get_den_mpz_t(), e);
            term *= p;
        }
        sum += term;
    }
    return sum;
}

Rational Poly::integer_content() const {
    if (terms_.empty()) return Rational(1);
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& t : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
}

Poly Poly::primitive() const {
    if (terms_.empty()) return Poly();
    Rational c = integer_content();
    if (terms_[0].coef < 0) c = -c;
    if (c == 1) return *this;
    Rational inv = 1 / c;
    return scaled(inv);
}

Monomial Poly::monomial_content() const {
    if (terms_.empty()) return Monomial();
    Monomial m = terms_[0].mono;
    for (std::size_t i = 1; i < terms_.size() && !m.is_one(); ++i) m = Monomial::gcd(m, terms_[i].mono);
    return m;
}

Poly Poly::divide_monomial(const Monomial& m) const {
    if (m.is_one()) return *this;
    Poly p = *this;
    for (auto& t : p.terms_) t.mono = t.mono / m;
    return p;
}

std::map<unsigned, Poly> Poly::coefficients(SymbolId v) const {
    std::map<unsigned, std::vector<Term>> buckets;
    for (const auto& t : terms_) buckets[t.mono.degree(v)].push_back(Term{t.mono.without(v), t.coef});
    std::map<unsigned, Poly> out;
    for (auto& [d, ts] : buckets) out.emplace(d, Poly::from_terms(std::move(ts)));
    return out;
}

// ---- division and gcd ----

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(1 / b.constant_value());
    const Term& lb = b.leading();
    // Every symbol degree of b must fit inside a.
    for (auto [v, e] : lb.mono.factors())
        if (a.degree(v) < e) return std::nullopt;
    std::vector<Term> q;
    std::vector<Term> r = a.terms();
    Rational inv = 1 / lb.coef;
    while (!r.empty()) {
        const Term& lt = r.front();
        if (!lb.mono.divides(lt.mono)) return std::nullopt;
        Monomial m = lt.mono / lb.mono;
        Rational c = lt.coef * inv;
        r = sub_scaled(r, b.terms(), m, c);
        q.push_back(Term{std::move(m), std::move(c)});
    }
    return Poly::from_terms(std::move(q));
}

namespace {

Poly lead_coefficient(const Poly& p, SymbolId v) {
    unsigned d = p.degree(v);
    std::vector<Term> ts;
    for (const auto& t : p.terms())
        if (t.mono.degree(v) == d) ts.push_back(Term{t.mono.without(v), t.coef});
    return Poly::from_terms(std::move(ts));
}

}  // namespace

Poly pseudo_remainder(const Poly& a, const Poly& b, SymbolId v) {
    unsigned db = b.degree(v);
    Poly lb = lead_coefficient(b, v);
    Poly r = a;
    bool field_case = lb.is_constant();
    while (!r.is_zero()) {
        unsigned dr = r.degree(v);
        if (dr < db) break;
        Poly lr = lead_coefficient(r, v);
        Poly shift = Poly::monomial(Monomial::variable(v, dr - db), 1);
        if (field_case) {
            r = r - (lr.scaled(1 / lb.constant_value()) * shift) * b;
        } else {
            r = lb * r - (lr * shift) * b;
        }
    }
    return r;
}

namespace {

Poly gcd_impl(const Poly& a, const Poly& b);

// gcd of a and every coefficient of p with respect to v.
Poly gcd_with_content(Poly g, const Poly& p, SymbolId v) {
    for (const auto& [d, c] : p.coefficients(v)) {
        if (g.is_constant()) break;
        g = gcd_impl(g, c);
    }
    return g;
}

Poly content_in(const Poly& p, SymbolId v) {
    auto coeffs = p.coefficients(v);
    Poly g;
    for (const auto& [d, c] : coeffs) {
        g = g.is_zero() ? c.primitive() : gcd_impl(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

Poly primitive_in(const Poly& p, SymbolId v) {
    Poly c = content_in(p, v);
    if (c.is_constant()) return p.primitive();
    return divide_exact(p, c).value().primitive();
}

// ---- heuristic gcd (Char, Geddes, Gonnet): evaluate one symbol at a large
// integer, recurse, and rebuild by xi-adic expansion. Integer coefficients only.

Integer max_norm(const Poly& p) {
    Integer m = 0;
    for (const auto& t : p.terms()) {
        Integer c = abs(t.coef.get_num());
        if (c > m) m = c;
    }
    return m;
}

Integer int_content(const Poly& p) {
    Integer g = 0;
    for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    return g;
}

Poly eval_at(const Poly& p, SymbolId v, const Integer& xi) {
    std::vector<Term> out;
    out.reserve(p.size());
    Integer pw;
    for (const auto& t : p.terms()) {
        mpz_pow_ui(pw.get_mpz_t(), xi.get_mpz_t(), t.mono.degree(v));
        out.push_back(Term{t.mono.without(v), t.coef * Rational(pw)});
    }
    return Poly::from_terms(std::move(out));
}

// Inverse of eval_at for coefficients below xi/2 in magnitude.
Poly interpolate(Poly h, SymbolId v, const Integer& xi) {
    std::vector<Term> out;
    Integer half = xi / 2;
    for (unsigned i = 0; !h.is_zero(); ++i) {
        std::vector<Term> digit;
        std::vector<Term> rest;
        for (const auto& t : h.terms()) {
            Integer c = t.coef.get_num();
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (r > half) r -= xi;
            if (r != 0) {
                Monomial m = t.mono;
                m.set(v, i);
                out.push_back(Term{m, Rational(r)});
            }
            Integer q = (c - r) / xi;
            if (q != 0) rest.push_back(Term{t.mono, Rational(q)});
        }
        h = Poly::from_terms(std::move(rest));
    }
    return Poly::from_terms(std::move(out));
}

std::optional<Poly> heu_gcd(const Poly& a, const Poly& b, int depth) {
    Integer ca = int_content(a), cb = int_content(b);
    Integer cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (a.is_constant() || b.is_constant()) return Poly(Rational(cg));
    Poly pa = a.scaled(Rational(1) / Rational(ca));
    Poly pb = b.scaled(Rational(1) / Rational(cb));
    auto va = pa.variables(), vb = pb.variables();
    SymbolId v = std::min(va.front(), vb.front());
    Integer fn = max_norm(pa), gn = max_norm(pb);
    Integer bound = 2 * std::min(fn, gn) + 29;
    Integer xi = std::min(bound, Integer(99 * sqrt(bound)));
    Integer la = abs(pa.leading().coef.get_num()), lb = abs(pb.leading().coef.get_num());
    Integer alt = 2 * std::min(Integer(fn / la), Integer(gn / lb)) + 2;
    if (alt > xi) xi = alt;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) > 1u << 20) break;
        Poly ea = eval_at(pa, v, xi), eb = eval_at(pb, v, xi);
        if (!ea.is_zero() && !eb.is_zero()) {
            if (auto h = heu_gcd(ea, eb, depth + 1)) {
                Poly cand = interpolate(*h, v, xi);
                if (!cand.is_zero()) {
                    cand = cand.primitive();
                    if (divide_exact(pa, cand) && divide_exact(pb, cand)) return cand.scaled(Rational(cg));
                }
            }
        }
        Integer r4 = sqrt(Integer(sqrt(xi)));
        xi = xi * 73794 * r4 / 27011;
    }
    return std::nullopt;
}

// Both inputs nonconstant, free of monomial factors.
Poly gcd_core(const Poly& a, const Poly& b) {
    if (auto q = divide_exact(a, b)) return b.primitive();
    if (auto q = divide_exact(b, a)) return a.primitive();
    if (auto h = heu_gcd(a.primitive(), b.primitive(), 0)) return h->primitive();
    auto va = a.variables();
    auto vb = b.variables();
    for (SymbolId v : va)
        if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd_with_content(b, a, v);
    for (SymbolId v : vb)
        if (!std::binary_search(va.begin(), va.end(), v)) return gcd_with_content(a, b, v);

    // Same symbol sets: primitive PRS in the symbol of lowest combined degree.
    SymbolId v = va.front();
    unsigned best = a.degree(v) + b.degree(v);
    for (SymbolId w : va) {
        unsigned d = a.degree(w) + b.degree(w);
        if (d < best) {
            best = d;
            v = w;
        }
    }
    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly c = gcd_impl(ca, cb);
    Poly pa = ca.is_constant() ? a : divide_exact(a, ca).value();
    Poly pb = cb.is_constant() ? b : divide_exact(b, cb).value();
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    Poly g;
    while (true) {
        Poly r = pseudo_remainder(pa, pb, v);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (r.degree(v) == 0) {
            g = Poly(1);
            break;
        }
        pa = std::move(pb);
        pb = primitive_in(r, v);
    }
    g = primitive_in(g, v);
    return (c * g).primitive();
}

Poly gcd_impl(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    Monomial ma = a.monomial_content();
    Monomial mb = b.monomial_content();
    Monomial mg = Monomial::gcd(ma, mb);
    Poly ra = a.divide_monomial(ma);
    Poly rb = b.divide_monomial(mb);
    Poly core(1);
    if (!ra.is_constant() && !rb.is_constant()) core = gcd_core(ra, rb);
    return core.times(mg, 1).primitive();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    return gcd_impl(a, b);
}

}  // namespace spacetime
