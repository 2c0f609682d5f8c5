#include "spacetime/expr.hpp"

#include <algorithm>
#include <sstream>

#include "spacetime/error.hpp"

namespace spacetime {

struct Expr::Data {
    SurdPoly num;
    Poly den;
};

namespace {

std::vector<std::pair<std::string, unsigned>> named_factors(const Monomial& m) {
    std::vector<std::pair<std::string, unsigned>> out;
    for (auto [v, e] : m.factors()) out.emplace_back(symbol_name(v), e);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return natural_less(a.first, b.first); });
    return out;
}

// Lex order with variables ranked by natural name order; independent of interning order.
int name_compare(const Monomial& a, const Monomial& b) {
    auto fa = named_factors(a);
    auto fb = named_factors(b);
    std::size_t n = std::min(fa.size(), fb.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = natural_compare(fa[i].first, fb[i].first);
        if (c != 0) return c < 0 ? 1 : -1;
        if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second ? 1 : -1;
    }
    if (fa.size() == fb.size()) return 0;
    return fa.size() > fb.size() ? 1 : -1;
}

const Rational& name_leading_coef(const Poly& p) {
    const Term* best = &p.terms().front();
    for (const auto& t : p.terms())
        if (name_compare(t.mono, best->mono) > 0) best = &t;
    return best->coef;
}

const std::shared_ptr<const Expr::Data>& zero_data() {
    static const auto z = std::make_shared<const Expr::Data>(Expr::Data{SurdPoly(), Poly(1)});
    return z;
}

}  // namespace

Expr::Expr() : d_(zero_data()) {}

Expr::Expr(const Rational& c) {
    d_ = c == 0 ? zero_data() : std::make_shared<const Data>(Data{SurdPoly(Poly(c)), Poly(1)});
}

Expr::Expr(long c) : Expr(Rational(c)) {}

Expr Expr::symbol(SymbolId id) { return Expr(std::make_shared<const Data>(Data{SurdPoly(Poly::variable(id)), Poly(1)})); }

Expr Expr::symbol(std::string_view name) { return symbol(intern_symbol(name)); }

Expr Expr::sqrt(const Rational& q) {
    SqrtSplit s = split_sqrt(q);
    if (s.radicand == 1) return Expr(s.outside);
    return Expr(std::make_shared<const Data>(Data{SurdPoly::surd(s.radicand, Poly(s.outside)), Poly(1)}));
}

// Cancels the common factor of den with all numerator components, then
// normalizes den to be integer-primitive with positive name-leading coefficient.
Expr Expr::from_parts(SurdPoly num, Poly den) {
    if (den.is_zero()) throw DomainError("division by zero");
    if (num.is_zero()) return Expr();
    if (den.is_constant()) {
        Rational c = den.constant_value();
        if (c != 1) num = num.scaled(1 / c);
        return Expr(std::make_shared<const Data>(Data{std::move(num), Poly(1)}));
    }
    Poly g = den;
    for (const auto& [r, p] : num.components()) {
        g = gcd(g, p);
        if (g.is_constant()) break;
    }
    if (!g.is_constant()) {
        den = divide_exact(den, g).value();
        num = num.divide_exact(g);
    }
    Rational c = den.integer_content();
    if (name_leading_coef(den) < 0) c = -c;
    if (c != 1) {
        Rational inv = 1 / c;
        den = den.scaled(inv);
        num = num.scaled(inv);
    }
    return Expr(std::make_shared<const Data>(Data{std::move(num), std::move(den)}));
}

Expr Expr::normalized(SurdPoly num, Poly den) {
    if (num.is_zero()) return Expr();
    if (den.is_constant()) return from_parts(std::move(num), std::move(den));
    Rational c = den.integer_content();
    if (name_leading_coef(den) < 0) c = -c;
    if (c != 1) {
        Rational inv = 1 / c;
        den = den.scaled(inv);
        num = num.scaled(inv);
    }
    return Expr(std::make_shared<const Data>(Data{std::move(num), std::move(den)}));
}

bool Expr::is_zero() const { return d_->num.is_zero(); }

bool Expr::is_one() const { return d_->den.is_one() && d_->num.is_rational() && d_->num.rational_part().is_one(); }

bool Expr::is_constant() const {
    if (!d_->den.is_constant()) return false;
    for (const auto& [r, p] : d_->num.components())
        if (!p.is_constant()) return false;
    return true;
}

bool Expr::is_rational() const { return d_->num.is_rational() && is_constant(); }

bool Expr::has_surds() const { return !d_->num.is_rational(); }

std::optional<Rational> Expr::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return d_->num.rational_part().constant_value();
}

const SurdPoly& Expr::numerator() const { return d_->num; }
const Poly& Expr::denominator() const { return d_->den; }

std::vector<SymbolId> Expr::symbols() const {
    std::vector<SymbolId> out = d_->den.variables();
    for (const auto& [r, p] : d_->num.components()) {
        auto v = p.variables();
        out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t Expr::complexity() const {
    std::size_t n = d_->den.size();
    for (const auto& [r, p] : d_->num.components()) n += p.size();
    return n;
}

Expr Expr::operator-() const {
    if (is_zero()) return *this;
    return Expr(std::make_shared<const Data>(Data{-d_->num, d_->den}));
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Poly& da = a.d_->den;
    const Poly& db = b.d_->den;
    if (da.is_one() && db.is_one())
        return Expr(std::make_shared<const Expr::Data>(Expr::Data{a.d_->num + b.d_->num, Poly(1)}));
    if (da == db) return Expr::from_parts(a.d_->num + b.d_->num, da);
    // Henrici: only the shared part of the denominators can cancel.
    Poly g = gcd(da, db);
    if (g.is_constant()) return Expr::normalized(a.d_->num.times(db) + b.d_->num.times(da), da * db);
    Poly ra = divide_exact(da, g).value();
    Poly rb = divide_exact(db, g).value();
    SurdPoly num = a.d_->num.times(rb) + b.d_->num.times(ra);
    if (num.is_zero()) return Expr();
    Poly h = g;
    for (const auto& [r, p] : num.components()) {
        h = gcd(h, p);
        if (h.is_constant()) break;
    }
    Poly den = ra * rb;
    if (!h.is_constant()) {
        num = num.divide_exact(h);
        den = den * divide_exact(g, h).value();
    } else {
        den = den * g;
    }
    return Expr::normalized(std::move(num), std::move(den));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr sum_of(const std::vector<Expr>& terms) {
    std::vector<std::pair<const Poly*, SurdPoly>> groups;
    for (const Expr& t : terms) {
        if (t.is_zero()) continue;
        const Poly& den = t.d_->den;
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return *g.first == den; });
        if (it == groups.end()) {
            groups.emplace_back(&den, t.d_->num);
        } else {
            it->second = it->second + t.d_->num;
        }
    }
    Expr total;
    for (auto& [den, num] : groups) total = total + Expr::from_parts(std::move(num), *den);
    return total;
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    const Poly& da = a.d_->den;
    const Poly& db = b.d_->den;
    if (a.has_surds() || b.has_surds()) {
        if (da.is_one() && db.is_one())
            return Expr(std::make_shared<const Expr::Data>(Expr::Data{a.d_->num * b.d_->num, Poly(1)}));
        return Expr::from_parts(a.d_->num * b.d_->num, da * db);
    }
    const Poly& na = a.d_->num.rational_part();
    const Poly& nb = b.d_->num.rational_part();
    if (da.is_one() && db.is_one())
        return Expr(std::make_shared<const Expr::Data>(Expr::Data{SurdPoly(na * nb), Poly(1)}));
    // Cross-cancel; the result is then already reduced.
    Poly g1 = db.is_one() ? Poly(1) : gcd(na, db);
    Poly g2 = da.is_one() ? Poly(1) : gcd(nb, da);
    Poly a1 = g1.is_constant() ? na : divide_exact(na, g1).value();
    Poly b1 = g2.is_constant() ? nb : divide_exact(nb, g2).value();
    Poly a2 = g2.is_constant() ? da : divide_exact(da, g2).value();
    Poly b2 = g1.is_constant() ? db : divide_exact(db, g1).value();
    return Expr::normalized(SurdPoly(a1 * b1), a2 * b2);
}

Expr Expr::inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    SurdPoly num(d_->den);
    SurdPoly den = d_->num;
    // Rationalize: multiply through by conjugates until no surds remain below.
    for (const Integer& p : den.primes()) {
        SurdPoly conj = den.conjugate(p);
        den = den * conj;
        num = num * conj;
    }
    return from_parts(std::move(num), den.rational_part());
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return Expr();
    return a * b.inverse();
}

Expr Expr::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Expr result(1);
    Expr base = *this;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent > 0) base = base * base;
    }
    return result;
}

Expr Expr::diff(SymbolId v) const {
    if (is_zero()) return *this;
    const Poly& den = d_->den;
    if (den.is_constant()) return from_parts(d_->num.diff(v), den);
    Poly dd = den.diff(v);
    if (dd.is_zero()) return from_parts(d_->num.diff(v), den);
    // (N'D - N D')/D^2; dividing out gcd(D, D') first keeps the result small.
    Poly g = gcd(den, dd);
    Poly q = divide_exact(den, g).value();
    Poly dq = divide_exact(dd, g).value();
    SurdPoly num = d_->num.diff(v).times(q) - d_->num.times(dq);
    return from_parts(std::move(num), den * q);
}

Expr Expr::substitute(const std::map<SymbolId, Expr>& values) const {
    auto eval_poly = [&](const Poly& p) {
        Expr sum;
        for (const auto& t : p.terms()) {
            Expr term(t.coef);
            for (auto [v, e] : t.mono.factors()) {
                auto it = values.find(v);
                term = term * (it == values.end() ? Expr::symbol(v) : it->second).pow(e);
            }
            sum = sum + term;
        }
        return sum;
    };
    Expr num;
    for (const auto& [r, p] : d_->num.components()) {
        Expr surd = r == 1 ? Expr(1) : Expr::sqrt(Rational(r));
        num = num + surd * eval_poly(p);
    }
    return num / eval_poly(d_->den);
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->num == b.d_->num && a.d_->den == b.d_->den;
}

// ---- printing ----

namespace {

struct PrintTerm {
    Integer radicand;
    const Term* term;
};

std::string term_body(const Integer& radicand, const Term& t, bool& negative) {
    std::ostringstream os;
    Rational c = t.coef;
    negative = c < 0;
    if (negative) c = -c;
    auto factors = named_factors(t.mono);
    bool has_other = radicand != 1 || !factors.empty();
    bool first = true;
    if (c != 1 || !has_other) {
        os << c.get_str();
        first = false;
    }
    if (radicand != 1) {
        if (!first) os << '*';
        os << "sqrt(" << radicand.get_str() << ')';
        first = false;
    }
    for (const auto& [name, e] : factors) {
        if (!first) os << '*';
        os << name;
        if (e != 1) os << '^' << e;
        first = false;
    }
    return os.str();
}

std::string sum_str(const std::vector<PrintTerm>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        bool neg = false;
        std::string body = term_body(terms[i].radicand, *terms[i].term, neg);
        if (i == 0) {
            out += neg ? "-" + body : body;
        } else {
            out += neg ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

std::vector<PrintTerm> ordered_terms(const SurdPoly& s) {
    std::vector<PrintTerm> out;
    for (const auto& [r, p] : s.components())
        for (const auto& t : p.terms()) out.push_back(PrintTerm{r, &t});
    std::stable_sort(out.begin(), out.end(), [](const PrintTerm& a, const PrintTerm& b) {
        int c = name_compare(a.term->mono, b.term->mono);
        if (c != 0) return c > 0;
        return a.radicand < b.radicand;
    });
    return out;
}

}  // namespace

std::string Expr::str() const {
    if (is_zero()) return "0";
    if (auto q = as_rational()) return q->get_str();
    // Display only: move coefficient denominators into the printed denominator.
    Integer lcm = 1;
    for (const auto& [r, p] : d_->num.components())
        for (const auto& t : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coef.get_den_mpz_t());
    SurdPoly num_poly = d_->num.scaled(Rational(lcm));
    SurdPoly den_poly(d_->den.scaled(Rational(lcm)));
    auto num_terms = ordered_terms(num_poly);
    std::string num = sum_str(num_terms);
    if (den_poly.rational_part().is_one()) return num;
    auto den_terms = ordered_terms(den_poly);
    std::string den = sum_str(den_terms);
    bool den_atom = false;
    if (den_terms.size() == 1) {
        const Term& t = *den_terms[0].term;
        std::size_t nf = t.mono.factors().size();
        den_atom = (nf == 0) || (nf == 1 && t.coef == 1);
    }
    if (!den_atom) den = "(" + den + ")";
    if (num_terms.size() > 1) num = "(" + num + ")";
    return num + "/" + den;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

}  // namespace spacetime
