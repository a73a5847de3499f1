#pragma once

#include <Eigen/Dense>

#include <memory>

namespace funnelctl {

using Vec = Eigen::VectorXd;
using CVecRef = Eigen::Ref<const Vec>;

// Uniform grid on [0,1] with m nodes including both endpoints and trapezoid weights.
class Grid {
public:
    static std::shared_ptr<const Grid> uniform(int m);

    int m() const { return m_; }
    double h() const { return h_; }
    const Vec& nodes() const { return nodes_; }
    const Vec& weights() const { return weights_; }
    double z(int i) const { return nodes_[i]; }

private:
    Grid(int m);

    int m_;
    double h_;
    Vec nodes_;
    Vec weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

class GridFunction {
public:
    GridFunction(GridPtr grid, Vec values);
    static GridFunction zeros(GridPtr grid);
    template <class F>
    static GridFunction sample(GridPtr grid, F&& fn) {
        Vec v(grid->m());
        for (int i = 0; i < grid->m(); ++i) v[i] = fn(grid->z(i));
        return GridFunction(std::move(grid), std::move(v));
    }

    const GridPtr& grid() const { return grid_; }
    const Vec& values() const { return values_; }
    Vec& values() { return values_; }
    double operator[](int i) const { return values_[i]; }
    int size() const { return static_cast<int>(values_.size()); }

private:
    GridPtr grid_;
    Vec values_;
};

// Pair of grid functions stored contiguously: [first (m) | second (m)].
class ProductState {
public:
    ProductState() = default;
    ProductState(GridPtr grid, Vec data);
    ProductState(const GridFunction& first, const GridFunction& second);
    static ProductState zeros(GridPtr grid);
    template <class F, class G>
    static ProductState sample(GridPtr grid, F&& f1, G&& f2) {
        const int m = grid->m();
        Vec v(2 * m);
        for (int i = 0; i < m; ++i) {
            v[i] = f1(grid->z(i));
            v[m + i] = f2(grid->z(i));
        }
        return ProductState(std::move(grid), std::move(v));
    }

    const GridPtr& grid() const { return grid_; }
    int m() const { return grid_->m(); }
    const Vec& data() const { return data_; }
    Vec& data() { return data_; }

    auto first() const { return data_.head(m()); }
    auto second() const { return data_.tail(m()); }
    auto first() { return data_.head(m()); }
    auto second() { return data_.tail(m()); }
    GridFunction first_function() const;
    GridFunction second_function() const;

    ProductState& operator+=(const ProductState& o);
    ProductState& operator-=(const ProductState& o);
    ProductState& operator*=(double s);

private:
    GridPtr grid_;
    Vec data_;
};

ProductState operator+(ProductState a, const ProductState& b);
ProductState operator-(ProductState a, const ProductState& b);
ProductState operator*(double s, ProductState a);

enum class InnerKind { L2xL2, Z };

void require_same_grid(const GridPtr& a, const GridPtr& b);

// Trapezoid inner product on L2(0,1).
double inner_l2(const GridFunction& u, const GridFunction& v);
double inner_l2(const Grid& g, const CVecRef& u, const CVecRef& v);

// Sum of componentwise L2 products.
double inner_product(const ProductState& u, const ProductState& v);

// H1-seminorm on the first component (cell differences, midpoint rule) plus L2 on the second.
// Assumes first components vanish at z = 0.
double inner_z(const ProductState& u, const ProductState& v);
double inner_h1(const Grid& g, const CVecRef& u, const CVecRef& v);

double inner(InnerKind kind, const ProductState& u, const ProductState& v);
// Same product on raw [first | second] vectors of length 2m.
double inner_raw(InnerKind kind, const Grid& g, const Vec& u, const Vec& v);
double norm(InnerKind kind, const ProductState& u);

// Truncated odd-sine expansion of the indicator of [0,1].
GridFunction indicator_approx(int N, GridPtr grid);
double indicator_approx_at(int N, double z);

enum class DerivativeScheme { upwind, central };

// upwind: backward differences, forward at node 0.
// central: centred interior, second-order one-sided at both ends.
GridFunction derivative(const GridFunction& u, DerivativeScheme scheme);

}  // namespace funnelctl
