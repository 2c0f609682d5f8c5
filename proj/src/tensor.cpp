#include "spacetime/tensor.hpp"

#include "spacetime/error.hpp"

namespace spacetime {

Tensor::Tensor(int dim, Valence valence) : dim_(dim), valence_(valence) {
    std::size_t n = 1;
    for (int i = 0; i < valence.rank(); ++i) n *= static_cast<std::size_t>(dim);
    comps_.assign(n, Expr());
}

std::size_t Tensor::flat(const Index& idx) const {
    if (static_cast<int>(idx.size()) != rank()) throw DimensionError("index rank mismatch");
    std::size_t f = 0;
    for (int i : idx) {
        if (i < 0 || i >= dim_) throw DimensionError("index out of range");
        f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return f;
}

Index Tensor::unflatten(std::size_t flat) const {
    Index idx(static_cast<std::size_t>(rank()));
    for (int k = rank() - 1; k >= 0; --k) {
        idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
        flat /= static_cast<std::size_t>(dim_);
    }
    return idx;
}

bool Tensor::is_zero() const { return !first_nonzero().has_value(); }

std::optional<Index> Tensor::first_nonzero() const {
    for (std::size_t i = 0; i < comps_.size(); ++i)
        if (!comps_[i].is_zero()) return unflatten(i);
    return std::nullopt;
}

Tensor Tensor::operator-() const {
    Tensor t = *this;
    for (auto& c : t.comps_) c = -c;
    return t;
}

namespace {

void require_same_shape(const Tensor& a, const Tensor& b) {
    if (a.dim() != b.dim() || !(a.valence() == b.valence())) throw DimensionError("tensor shape mismatch");
}

}  // namespace

Tensor operator+(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b);
    Tensor t = a;
    for (std::size_t i = 0; i < t.comps_.size(); ++i) t.comps_[i] += b.comps_[i];
    return t;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b);
    Tensor t = a;
    for (std::size_t i = 0; i < t.comps_.size(); ++i) t.comps_[i] -= b.comps_[i];
    return t;
}

Tensor Tensor::scaled(const Expr& c) const {
    Tensor t = *this;
    for (auto& x : t.comps_) x *= c;
    return t;
}

bool operator==(const Tensor& a, const Tensor& b) {
    return a.dim_ == b.dim_ && a.valence_ == b.valence_ && a.comps_ == b.comps_;
}

Tensor VectorField::as_tensor() const {
    Tensor t(dim(), Valence{1, 0});
    for (int i = 0; i < dim(); ++i) t(i) = comps_[static_cast<std::size_t>(i)];
    return t;
}

Tensor one_form(const std::vector<Expr>& components) {
    Tensor t(static_cast<int>(components.size()), Valence{0, 1});
    for (std::size_t i = 0; i < components.size(); ++i) t(i) = components[i];
    return t;
}

std::string index_label(const Index& idx) {
    std::string s = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(idx[i] + 1);
    }
    return s + ")";
}

}  // namespace spacetime
