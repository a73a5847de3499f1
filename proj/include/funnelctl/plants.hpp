#pragma once

#include "funnelctl/hilbert.hpp"

#include <functional>
#include <memory>
#include <string>

namespace funnelctl {

enum class PlantKind { reactor, sine_gordon };

struct ReactorParams {
    double delta = 0.25;
    double alpha = 2.3248;
    double mu = 16.6607;
    double beta = 8.0;
    int N = 100;

    void validate() const;
};

struct SineGordonParams {
    double alpha = 3.141592653589793 + 1.0 / 6.0;
    double nu = -1.0;
    int N = 100;

    void validate() const;
};

// Discretized  x' = A x + f(x) + b (u + d),  y = <x, c>.
// Node 0 of both components is pinned to zero (inflow / Dirichlet end).
struct SemilinearPlant {
    using Map = std::function<void(const Vec&, Vec&)>;

    PlantKind kind{};
    std::string name;
    GridPtr grid;
    InnerKind inner_kind{};
    Map A;
    Map A_adjoint;
    Map f;
    ProductState b;
    ProductState c;
    double f_bound = 0.0;

    int m() const { return grid->m(); }
    int dim() const { return 2 * grid->m(); }

    ProductState apply_A(const ProductState& x) const;
    ProductState apply_A_adjoint(const ProductState& w) const;
    ProductState apply_f(const ProductState& x) const;
    double inner(const ProductState& u, const ProductState& v) const;
    double norm(const ProductState& u) const;
    double output(const ProductState& x) const;
    double gamma() const;

    // Zero out the pinned boundary nodes.
    void pin(Vec& v) const;
    void pin(ProductState& x) const { pin(x.data()); }
    // Largest magnitude at pinned nodes.
    double boundary_residual(const Vec& v) const;

    // Copy of this plant with f replaced by 0.
    SemilinearPlant without_nonlinearity() const;
};

using PlantPtr = std::shared_ptr<const SemilinearPlant>;

double arrhenius(double theta1, double theta2, const ReactorParams& p);

PlantPtr build_reactor(const ReactorParams& p, GridPtr grid);
double reactor_output(const ProductState& x, const SemilinearPlant& plant);
double reactor_gamma_series(const ReactorParams& p);

PlantPtr build_sine_gordon(const SineGordonParams& p, GridPtr grid);
ProductState sg_c_vector(const SineGordonParams& p, GridPtr grid);
double sg_c_amplitude(const SineGordonParams& p);
double sg_output(const ProductState& x, const SemilinearPlant& plant);
// Output through the integral representation (cos-weighted derivative plus sin-weighted velocity).
double sg_output_integral(const ProductState& x, const SineGordonParams& p);
double sg_p0_closed_form(const SineGordonParams& p);
double sg_gamma_series(const SineGordonParams& p);

// Discrete A0 = -d^2/dz^2 with x(0) = 0 and x'(1) = 0 (ghost-node Neumann).
Vec apply_A0(const Grid& g, const Vec& x);
// Solves A0 v = r on nodes 1..m-1 with v(0) = 0 (tridiagonal sweep).
Vec solve_A0(const Grid& g, const Vec& r);
// Lyapunov operator for the damped wave generator.
ProductState apply_Pi(const ProductState& z, double alpha);

}  // namespace funnelctl
