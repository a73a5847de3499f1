#include "funnelctl/plants.hpp"

#include "funnelctl/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace funnelctl {

using std::numbers::pi;

void ReactorParams::validate() const {
    if (!(delta > 0 && alpha > 0 && mu > 0 && beta > 0))
        throw PreconditionError("reactor parameters delta, alpha, mu, beta must be positive");
    if (N < 1) throw PreconditionError("reactor basis order N must be >= 1");
}

void SineGordonParams::validate() const {
    if (!(alpha > pi)) throw PreconditionError("sine-Gordon damping alpha must exceed pi");
    if (nu == 0.0 || !std::isfinite(nu)) throw PreconditionError("sine-Gordon nu must be nonzero and finite");
    if (N < 1) throw PreconditionError("sine-Gordon basis order N must be >= 1");
}

ProductState SemilinearPlant::apply_A(const ProductState& x) const {
    require_same_grid(grid, x.grid());
    Vec out(dim());
    A(x.data(), out);
    return ProductState(grid, std::move(out));
}

ProductState SemilinearPlant::apply_A_adjoint(const ProductState& w) const {
    require_same_grid(grid, w.grid());
    Vec out(dim());
    A_adjoint(w.data(), out);
    return ProductState(grid, std::move(out));
}

ProductState SemilinearPlant::apply_f(const ProductState& x) const {
    require_same_grid(grid, x.grid());
    Vec out(dim());
    f(x.data(), out);
    return ProductState(grid, std::move(out));
}

double SemilinearPlant::inner(const ProductState& u, const ProductState& v) const {
    return funnelctl::inner(inner_kind, u, v);
}

double SemilinearPlant::norm(const ProductState& u) const { return funnelctl::norm(inner_kind, u); }

double SemilinearPlant::output(const ProductState& x) const { return inner(x, c); }

double SemilinearPlant::gamma() const { return inner(b, c); }

void SemilinearPlant::pin(Vec& v) const {
    v[0] = 0.0;
    v[m()] = 0.0;
}

double SemilinearPlant::boundary_residual(const Vec& v) const { return std::max(std::abs(v[0]), std::abs(v[m()])); }

SemilinearPlant SemilinearPlant::without_nonlinearity() const {
    SemilinearPlant copy = *this;
    copy.f = [](const Vec&, Vec& out) { out.setZero(); };
    copy.f_bound = 0.0;
    copy.name = name + " (linear)";
    return copy;
}

double arrhenius(double theta1, double theta2, const ReactorParams& p) {
    if (theta1 < -1.0) return 0.0;
    const double denom = 1.0 + theta1;
    // The exponent tends to -infinity as theta1 -> -1 from above.
    const double growth = denom > 0.0 ? std::exp(p.mu * theta1 / denom) : 0.0;
    if (theta2 < 0.0) return p.alpha * growth;
    if (theta2 <= 1.0) return p.alpha * (1.0 - theta2) * growth;
    return 0.0;
}

namespace {

GridFunction scaled(GridFunction g, double s) {
    g.values() *= s;
    return g;
}

}  // namespace

PlantPtr build_reactor(const ReactorParams& p, GridPtr grid) {
    p.validate();
    if (grid->m() < 3) throw PreconditionError("reactor grid needs m >= 3");
    auto plant = std::make_shared<SemilinearPlant>();
    plant->kind = PlantKind::reactor;
    plant->name = "reactor";
    plant->grid = grid;
    plant->inner_kind = InnerKind::L2xL2;

    const int m = grid->m();
    const double h = grid->h();
    const double beta = p.beta;
    const Vec w = grid->weights();

    // A = diag(-D - beta, -D) with D the backward difference, rows at node 0 zero.
    plant->A = [m, h, beta](const Vec& x, Vec& out) {
        out[0] = 0.0;
        out[m] = 0.0;
        for (int i = 1; i < m; ++i) {
            out[i] = -(x[i] - x[i - 1]) / h - beta * x[i];
            out[m + i] = -(x[m + i] - x[m + i - 1]) / h;
        }
    };
    // Weighted transpose W^{-1} A^T W.
    plant->A_adjoint = [m, h, beta, w](const Vec& v, Vec& out) {
        for (int k = 0; k < 2; ++k) {
            const int o = k * m;
            for (int j = 0; j < m; ++j) {
                double s = 0.0;
                if (j >= 1) s += w[j] * v[o + j];
                if (j + 1 < m) s -= w[j + 1] * v[o + j + 1];
                out[o + j] = -s / (h * w[j]);
                if (k == 0 && j >= 1) out[o + j] -= beta * v[o + j];
            }
        }
    };
    plant->f = [m, p](const Vec& x, Vec& out) {
        out[0] = 0.0;
        out[m] = 0.0;
        for (int i = 1; i < m; ++i) {
            const double r = arrhenius(x[i], x[m + i], p);
            out[i] = p.delta * r;
            out[m + i] = r;
        }
    };

    const GridFunction one_n = indicator_approx(p.N, grid);
    const GridFunction zero = GridFunction::zeros(grid);
    plant->b = ProductState(scaled(one_n, beta), zero);
    plant->c = ProductState(one_n, zero);
    plant->f_bound = p.alpha * std::exp(p.mu) * std::sqrt(p.delta * p.delta + 1.0);
    return plant;
}

double reactor_output(const ProductState& x, const SemilinearPlant& plant) { return inner_product(x, plant.c); }

double reactor_gamma_series(const ReactorParams& p) {
    double s = 0.0;
    for (int n = 1; n <= p.N; n += 2) s += 8.0 / (n * n * pi * pi);
    return p.beta * s;
}

Vec apply_A0(const Grid& g, const Vec& x) {
    const int m = g.m();
    const double h2 = g.h() * g.h();
    Vec out(m);
    out[0] = 0.0;
    for (int i = 1; i + 1 < m; ++i) out[i] = (-x[i - 1] + 2.0 * x[i] - x[i + 1]) / h2;
    out[m - 1] = 2.0 * (x[m - 1] - x[m - 2]) / h2;
    return out;
}

Vec solve_A0(const Grid& g, const Vec& r) {
    const int m = g.m();
    const int n = m - 1;  // unknowns v_1..v_{m-1}
    const double h2 = g.h() * g.h();
    // Row k (unknown v_{k+1}): lower a_k, diag d_k, upper c_k.
    Vec cp(n), dp(n);
    for (int k = 0; k < n; ++k) {
        const double a = (k == 0) ? 0.0 : (k == n - 1 ? -2.0 : -1.0);
        const double d = 2.0;
        const double c = (k == n - 1) ? 0.0 : -1.0;
        const double rhs = r[k + 1] * h2;
        if (k == 0) {
            cp[k] = c / d;
            dp[k] = rhs / d;
        } else {
            const double denom = d - a * cp[k - 1];
            cp[k] = c / denom;
            dp[k] = (rhs - a * dp[k - 1]) / denom;
        }
    }
    Vec v = Vec::Zero(m);
    v[n] = dp[n - 1];
    for (int k = n - 2; k >= 0; --k) v[k + 1] = dp[k] - cp[k] * v[k + 2];
    return v;
}

PlantPtr build_sine_gordon(const SineGordonParams& p, GridPtr grid) {
    p.validate();
    if (grid->m() < 3) throw PreconditionError("sine-Gordon grid needs m >= 3");
    auto plant = std::make_shared<SemilinearPlant>();
    plant->kind = PlantKind::sine_gordon;
    plant->name = "sine-gordon";
    plant->grid = grid;
    plant->inner_kind = InnerKind::Z;

    const int m = grid->m();
    const double h2 = grid->h() * grid->h();
    const double alpha = p.alpha;
    const double nu = p.nu;

    auto a0 = [m, h2](const Vec& x, int o, int i) {
        if (i + 1 < m) return (-x[o + i - 1] + 2.0 * x[o + i] - x[o + i + 1]) / h2;
        return 2.0 * (x[o + i] - x[o + i - 1]) / h2;
    };
    plant->A = [m, alpha, a0](const Vec& z, Vec& out) {
        out[0] = 0.0;
        out[m] = 0.0;
        for (int i = 1; i < m; ++i) {
            out[i] = z[m + i];
            out[m + i] = -a0(z, 0, i) - alpha * z[m + i];
        }
    };
    plant->A_adjoint = [m, alpha, a0](const Vec& w, Vec& out) {
        out[0] = 0.0;
        out[m] = 0.0;
        for (int i = 1; i < m; ++i) {
            out[i] = -w[m + i];
            out[m + i] = a0(w, 0, i) - alpha * w[m + i];
        }
    };
    plant->f = [m, nu](const Vec& z, Vec& out) {
        for (int i = 0; i < m; ++i) {
            out[i] = 0.0;
            out[m + i] = i == 0 ? 0.0 : nu * std::sin(z[i]);
        }
    };

    plant->b = ProductState(GridFunction::zeros(grid), indicator_approx(p.N, grid));
    plant->c = sg_c_vector(p, grid);
    plant->f_bound = std::abs(nu);
    return plant;
}

double sg_c_amplitude(const SineGordonParams& p) {
    return 2.0 / (pi * pi) * (p.alpha + std::sqrt(p.alpha * p.alpha - pi * pi));
}

ProductState sg_c_vector(const SineGordonParams& p, GridPtr grid) {
    const double a = sg_c_amplitude(p);
    auto c = ProductState::sample(
        grid, [a](double z) { return a * std::sin(pi * z / 2.0); }, [](double z) { return std::sin(pi * z / 2.0); });
    c.data()[grid->m() - 1 + grid->m()] = 1.0;
    c.data()[grid->m() - 1] = a;
    return c;
}

double sg_output(const ProductState& x, const SemilinearPlant& plant) { return inner_z(x, plant.c); }

double sg_output_integral(const ProductState& x, const SineGordonParams& p) {
    const Grid& g = *x.grid();
    const int m = g.m();
    const double scale = (p.alpha + std::sqrt(p.alpha * p.alpha - pi * pi)) / pi;
    double slope_part = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
        const double zmid = 0.5 * (g.z(i) + g.z(i + 1));
        slope_part += std::cos(pi * zmid / 2.0) * (x.first()[i + 1] - x.first()[i]);
    }
    double velocity_part = 0.0;
    for (int i = 0; i < m; ++i) velocity_part += g.weights()[i] * std::sin(pi * g.z(i) / 2.0) * x.second()[i];
    return scale * slope_part + velocity_part;
}

double sg_p0_closed_form(const SineGordonParams& p) {
    if (!(p.alpha > pi)) throw PreconditionError("closed form for p0 requires alpha > pi");
    return -p.alpha / 2.0 + 0.5 * std::sqrt(p.alpha * p.alpha - pi * pi);
}

double sg_gamma_series(const SineGordonParams& p) {
    double s = 0.0;
    for (int n = 1; n <= p.N; n += 2) s += 16.0 / (pi * pi * (4.0 * n * n - 1.0));
    return s;
}

ProductState apply_Pi(const ProductState& z, double alpha) {
    const Grid& g = *z.grid();
    const Vec z1 = z.first();
    const Vec z2 = z.second();
    const Vec inv1 = solve_A0(g, z1);
    const Vec inv2 = solve_A0(g, z2);
    Vec out(2 * g.m());
    out.head(g.m()) = z1 / alpha + (alpha / 2.0) * inv1 + 0.5 * inv2;
    out.tail(g.m()) = 0.5 * z1 + z2 / alpha;
    return ProductState(z.grid(), std::move(out));
}

}  // namespace funnelctl
