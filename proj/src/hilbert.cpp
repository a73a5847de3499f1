#include "funnelctl/hilbert.hpp"

#include "funnelctl/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace funnelctl {

Grid::Grid(int m) : m_(m), h_(1.0 / (m - 1)), nodes_(m), weights_(m) {
    for (int i = 0; i < m; ++i) {
        nodes_[i] = static_cast<double>(i) / (m - 1);
        weights_[i] = h_;
    }
    nodes_[m - 1] = 1.0;
    weights_[0] = weights_[m - 1] = 0.5 * h_;
}

std::shared_ptr<const Grid> Grid::uniform(int m) {
    if (m < 2) throw PreconditionError("grid needs at least 2 nodes, got " + std::to_string(m));
    return std::shared_ptr<const Grid>(new Grid(m));
}

GridFunction::GridFunction(GridPtr grid, Vec values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw StructuralError("grid function without grid");
    if (values_.size() != grid_->m())
        throw StructuralError("grid function length " + std::to_string(values_.size()) + " != m " +
                              std::to_string(grid_->m()));
    if (!values_.allFinite()) throw PreconditionError("grid function has non-finite values");
}

GridFunction GridFunction::zeros(GridPtr grid) {
    const int m = grid->m();
    return GridFunction(std::move(grid), Vec::Zero(m));
}

ProductState::ProductState(GridPtr grid, Vec data) : grid_(std::move(grid)), data_(std::move(data)) {
    if (!grid_) throw StructuralError("product state without grid");
    if (data_.size() != 2 * grid_->m()) throw StructuralError("product state length mismatch");
}

ProductState::ProductState(const GridFunction& a, const GridFunction& b) : grid_(a.grid()) {
    require_same_grid(a.grid(), b.grid());
    data_.resize(2 * grid_->m());
    data_ << a.values(), b.values();
}

ProductState ProductState::zeros(GridPtr grid) {
    const int m = grid->m();
    return ProductState(std::move(grid), Vec::Zero(2 * m));
}

GridFunction ProductState::first_function() const { return GridFunction(grid_, first()); }
GridFunction ProductState::second_function() const { return GridFunction(grid_, second()); }

ProductState& ProductState::operator+=(const ProductState& o) {
    require_same_grid(grid_, o.grid_);
    data_ += o.data_;
    return *this;
}

ProductState& ProductState::operator-=(const ProductState& o) {
    require_same_grid(grid_, o.grid_);
    data_ -= o.data_;
    return *this;
}

ProductState& ProductState::operator*=(double s) {
    data_ *= s;
    return *this;
}

ProductState operator+(ProductState a, const ProductState& b) { return a += b; }
ProductState operator-(ProductState a, const ProductState& b) { return a -= b; }
ProductState operator*(double s, ProductState a) { return a *= s; }

void require_same_grid(const GridPtr& a, const GridPtr& b) {
    if (!a || !b) throw StructuralError("missing grid");
    if (a != b && a->m() != b->m())
        throw StructuralError("grid mismatch: m=" + std::to_string(a->m()) + " vs m=" + std::to_string(b->m()));
}

double inner_l2(const Grid& g, const CVecRef& u, const CVecRef& v) {
    return (g.weights().array() * u.array() * v.array()).sum();
}

double inner_h1(const Grid& g, const CVecRef& u, const CVecRef& v) {
    const int m = g.m();
    double s = 0.0;
    for (int i = 0; i + 1 < m; ++i) s += (u[i + 1] - u[i]) * (v[i + 1] - v[i]);
    return s / g.h();
}

double inner_l2(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u.grid(), v.grid());
    return inner_l2(*u.grid(), u.values(), v.values());
}

double inner_product(const ProductState& u, const ProductState& v) {
    require_same_grid(u.grid(), v.grid());
    return inner_l2(*u.grid(), u.data().head(u.m()), v.data().head(u.m())) +
           inner_l2(*u.grid(), u.data().tail(u.m()), v.data().tail(u.m()));
}

double inner_z(const ProductState& u, const ProductState& v) {
    require_same_grid(u.grid(), v.grid());
    return inner_h1(*u.grid(), u.data().head(u.m()), v.data().head(u.m())) +
           inner_l2(*u.grid(), u.data().tail(u.m()), v.data().tail(u.m()));
}

double inner(InnerKind kind, const ProductState& u, const ProductState& v) {
    return kind == InnerKind::Z ? inner_z(u, v) : inner_product(u, v);
}

double inner_raw(InnerKind kind, const Grid& g, const Vec& u, const Vec& v) {
    const int m = g.m();
    const double second = inner_l2(g, u.tail(m), v.tail(m));
    if (kind == InnerKind::Z) return inner_h1(g, u.head(m), v.head(m)) + second;
    return inner_l2(g, u.head(m), v.head(m)) + second;
}

double norm(InnerKind kind, const ProductState& u) { return std::sqrt(std::max(0.0, inner(kind, u, u))); }

double indicator_approx_at(int N, double z) {
    double s = 0.0;
    for (int n = 1; n <= N; n += 2) s += 4.0 / (n * std::numbers::pi) * std::sin(n * std::numbers::pi * z);
    return s;
}

GridFunction indicator_approx(int N, GridPtr grid) {
    if (N < 1) throw PreconditionError("indicator_approx needs N >= 1");
    auto f = GridFunction::sample(grid, [N](double z) { return indicator_approx_at(N, z); });
    // sin(n pi) is not exactly zero in floating point.
    f.values()[0] = 0.0;
    f.values()[grid->m() - 1] = 0.0;
    return f;
}

GridFunction derivative(const GridFunction& u, DerivativeScheme scheme) {
    const Grid& g = *u.grid();
    const int m = g.m();
    if (m < 3) throw StructuralError("derivative needs m >= 3");
    const double h = g.h();
    const Vec& x = u.values();
    Vec d(m);
    if (scheme == DerivativeScheme::upwind) {
        d[0] = (x[1] - x[0]) / h;
        for (int i = 1; i < m; ++i) d[i] = (x[i] - x[i - 1]) / h;
    } else {
        d[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h);
        for (int i = 1; i + 1 < m; ++i) d[i] = (x[i + 1] - x[i - 1]) / (2.0 * h);
        d[m - 1] = (3.0 * x[m - 1] - 4.0 * x[m - 2] + x[m - 3]) / (2.0 * h);
    }
    return GridFunction(u.grid(), std::move(d));
}

}  // namespace funnelctl
