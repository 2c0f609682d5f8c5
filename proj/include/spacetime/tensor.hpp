#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "spacetime/expr.hpp"

namespace spacetime {

struct Valence {
    int up = 0;    // contravariant
    int down = 0;  // covariant
    int rank() const { return up + down; }
    friend bool operator==(const Valence& a, const Valence& b) { return a.up == b.up && a.down == b.down; }
};

using Index = std::vector<int>;

// Dense component array; contravariant indices come first in storage order.
// Indices are 0-based here and 1-based in every printed form.
class Tensor {
public:
    Tensor() = default;
    Tensor(int dim, Valence valence);

    int dim() const { return dim_; }
    Valence valence() const { return valence_; }
    int rank() const { return valence_.rank(); }
    std::size_t size() const { return comps_.size(); }

    Expr& operator[](std::size_t flat) { return comps_[flat]; }
    const Expr& operator[](std::size_t flat) const { return comps_[flat]; }
    Expr& at(const Index& idx) { return comps_[flat(idx)]; }
    const Expr& at(const Index& idx) const { return comps_[flat(idx)]; }
    template <class... I>
    Expr& operator()(I... idx) {
        return comps_[flat_of({static_cast<int>(idx)...})];
    }
    template <class... I>
    const Expr& operator()(I... idx) const {
        return comps_[flat_of({static_cast<int>(idx)...})];
    }

    std::size_t flat(const Index& idx) const;
    Index unflatten(std::size_t flat) const;

    bool is_zero() const;
    std::optional<Index> first_nonzero() const;

    Tensor operator-() const;
    friend Tensor operator+(const Tensor& a, const Tensor& b);
    friend Tensor operator-(const Tensor& a, const Tensor& b);
    Tensor scaled(const Expr& c) const;
    friend bool operator==(const Tensor& a, const Tensor& b);

private:
    std::size_t flat_of(std::initializer_list<int> idx) const {
        std::size_t f = 0;
        for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
        return f;
    }

    int dim_ = 0;
    Valence valence_;
    std::vector<Expr> comps_;
};

// Contravariant vector field, kept distinct from (1,0) tensors.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::vector<Expr> components) : comps_(std::move(components)) {}
    int dim() const { return static_cast<int>(comps_.size()); }
    const Expr& operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }
    const std::vector<Expr>& components() const { return comps_; }
    Tensor as_tensor() const;

private:
    std::vector<Expr> comps_;
};

Tensor one_form(const std::vector<Expr>& components);

// "(1,3,3,2)" for a 0-based index.
std::string index_label(const Index& idx);

}  // namespace spacetime
