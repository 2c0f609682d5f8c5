#pragma once

// Independent expression trees for fuzzing: each node evaluates itself in
// MPFR and renders to grammar text, without touching the canonical form.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "spacetime/numeric.hpp"

namespace oracle {

using spacetime::Point;
using spacetime::Real;

struct Node {
    enum Kind { Const, Sqrt, Var, Add, Sub, Mul, Div, Pow } kind;
    long num = 0, den = 1;  // Const, Sqrt argument
    std::string var;
    int exponent = 0;
    std::shared_ptr<Node> a, b;

    Real eval(const Point& p) const {
        switch (kind) {
            case Const: return Real(num) / Real(den);
            case Sqrt: return boost::multiprecision::sqrt(Real(num) / Real(den));
            case Var: return Real(p.at(var).get_mpq_t());
            case Add: return a->eval(p) + b->eval(p);
            case Sub: return a->eval(p) - b->eval(p);
            case Mul: return a->eval(p) * b->eval(p);
            case Div: return a->eval(p) / b->eval(p);
            case Pow: return boost::multiprecision::pow(a->eval(p), exponent);
        }
        return 0;
    }

    std::string text() const {
        switch (kind) {
            case Const: return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
            case Sqrt: return "sqrt(" + std::to_string(num) + (den == 1 ? "" : "/" + std::to_string(den)) + ")";
            case Var: return var;
            case Add: return "(" + a->text() + " + " + b->text() + ")";
            case Sub: return "(" + a->text() + " - " + b->text() + ")";
            case Mul: return "(" + a->text() + "*" + b->text() + ")";
            case Div: return "(" + a->text() + "/" + b->text() + ")";
            case Pow: return "(" + a->text() + ")^" + std::to_string(exponent);
        }
        return "";
    }
};

using NodePtr = std::shared_ptr<Node>;

// Values on [1,2]^n: denominators are built positive there so no poles occur.
class Generator {
public:
    Generator(std::vector<std::string> vars, std::uint64_t seed) : vars_(std::move(vars)), rng_(seed) {}

    NodePtr expr(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(6)) {
            case 0: return bin(Node::Add, expr(depth - 1), expr(depth - 1));
            case 1: return bin(Node::Sub, expr(depth - 1), expr(depth - 1));
            case 2: return bin(Node::Mul, expr(depth - 1), expr(depth - 1));
            case 3: return bin(Node::Div, expr(depth - 1), positive(depth - 1));
            case 4: {
                auto n = std::make_shared<Node>();
                n->kind = Node::Pow;
                n->a = positive(depth - 1);
                n->exponent = pick(5) - 2;
                return n;
            }
            default: return leaf();
        }
    }

    // Strictly positive on [1,2]^n.
    NodePtr positive(int depth) {
        if (depth <= 0 || pick(2) == 0) {
            auto v = std::make_shared<Node>();
            v->kind = Node::Var;
            v->var = vars_[pick(static_cast<int>(vars_.size()))];
            return bin(Node::Add, v, constant(pick(3) + 1, 1));
        }
        return bin(Node::Mul, positive(depth - 1), positive(depth - 1));
    }

    NodePtr leaf() {
        int k = pick(10);
        if (k < 5) {
            auto v = std::make_shared<Node>();
            v->kind = Node::Var;
            v->var = vars_[pick(static_cast<int>(vars_.size()))];
            return v;
        }
        if (k < 8) return constant(pick(9) - 4, pick(3) + 1);
        auto s = std::make_shared<Node>();
        s->kind = Node::Sqrt;
        static const long radicands[][2] = {{2, 1}, {3, 1}, {2, 3}, {6, 1}, {8, 1}, {5, 4}};
        auto& r = radicands[pick(6)];
        s->num = r[0];
        s->den = r[1];
        return s;
    }

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

private:
    NodePtr constant(long num, long den) {
        auto c = std::make_shared<Node>();
        c->kind = Node::Const;
        c->num = num;
        c->den = den;
        return c;
    }
    static NodePtr bin(Node::Kind k, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    std::vector<std::string> vars_;
    std::mt19937_64 rng_;
};

}  // namespace oracle
