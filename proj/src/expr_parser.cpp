#include <algorithm>
#include <cctype>

#include "spacetime/error.hpp"
#include "spacetime/expr.hpp"

namespace spacetime {

namespace {

// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := '-'? atom ('^' '-'? integer)?
// atom   := rational | 'sqrt' '(' rational ')' | identifier | '(' expr ')'
class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>* symbols, int line, int column_offset)
        : text_(text), symbols_(symbols), line_(line), offset_(column_offset) {}

    Expr parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty expression");
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
    [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const {
        throw ParseError(what, line_, offset_ + static_cast<int>(pos) + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    bool at_digit() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    Integer integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        if (pos_ < text_.size() && text_[pos_] == '.') fail("decimal literals are not supported; use a fraction");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    // integer ('/' integer)?; the slash is only consumed when an integer follows.
    Rational rational() {
        Integer num = integer();
        std::size_t save = pos_;
        if (accept('/') && at_digit()) {
            std::size_t den_pos = pos_;
            Integer den = integer();
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '^') {
                pos_ = save;  // 2/3^2 means 2/(3^2)
                return Rational(num);
            }
            if (den == 0) fail_at("zero denominator", den_pos);
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        pos_ = save;
        return Rational(num);
    }

    Expr expr() {
        Expr e = term();
        while (true) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        while (true) {
            if (accept('*')) {
                e = e * factor();
            } else if (accept('/')) {
                skip_ws();
                std::size_t at = pos_;
                Expr d = factor();
                if (d.is_zero()) fail_at(at < text_.size() && std::isdigit(static_cast<unsigned char>(text_[at]))
                                             ? "zero denominator"
                                             : "division by zero",
                                         at);
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        bool negate = accept('-');
        Expr base = atom();
        if (accept('^')) {
            bool neg = accept('-');
            skip_ws();
            std::size_t at = pos_;
            Integer n = integer();
            if (!n.fits_slong_p()) fail_at("exponent too large", at);
            long e = n.get_si();
            if (neg) e = -e;
            if (e < 0 && base.is_zero()) fail_at("zero raised to a negative power", at);
            base = base.pow(e);
        }
        return negate ? -base : base;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr(rational());
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "sqrt") {
                expect('(');
                skip_ws();
                std::size_t at = pos_;
                bool neg = accept('-');
                if (!at_digit()) fail_at("sqrt argument must be a rational literal", at);
                Rational q = rational();
                if (neg) q = -q;
                if (q <= 0) fail_at("sqrt of a non-positive rational", at);
                expect(')');
                return Expr::sqrt(q);
            }
            if (symbols_ != nullptr && std::find(symbols_->begin(), symbols_->end(), name) == symbols_->end())
                fail_at("unknown symbol '" + name + "'", start);
            return Expr::symbol(name);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    const std::vector<std::string>* symbols_;
    int line_;
    int offset_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const std::vector<std::string>* symbols, int line, int column_offset) {
    return Parser(text, symbols, line, column_offset).parse();
}

}  // namespace spacetime
