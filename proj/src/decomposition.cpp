#include "funnelctl/decomposition.hpp"

#include "funnelctl/errors.hpp"

#include <cmath>
#include <sstream>

namespace funnelctl {

Decomposition::Decomposition(PlantPtr plant) : plant_(std::move(plant)) {
    if (!plant_) throw StructuralError("decomposition without plant");
    gamma_ = plant_->inner(plant_->b, plant_->c);
    if (!(gamma_ > 0.0)) {
        std::ostringstream os;
        os << "<b, c> must be positive, got " << gamma_;
        throw PreconditionError(os.str());
    }
    bb_ = plant_->inner(plant_->b, plant_->b);
    astar_c_ = plant_->apply_A_adjoint(plant_->c);
    pi_astar_c_ = project_PI(astar_c_).value;
    r_vec_ = (1.0 / gamma_) * project_Pperp(plant_->apply_A(plant_->b)).value;
    p0_ = plant_->inner(astar_c_, plant_->b) / gamma_;
}

double Decomposition::project_P(const ProductState& x) const { return plant_->inner(x, plant_->b) / gamma_; }

EtaState Decomposition::project_PI(const ProductState& x) const {
    return {x - project_P(x) * plant_->c};
}

EtaState Decomposition::project_Pperp(const ProductState& x) const {
    return {x - (plant_->inner(x, plant_->b) / bb_) * plant_->b};
}

std::pair<double, EtaState> Decomposition::transform(const ProductState& x) const {
    return {plant_->inner(x, plant_->c), project_Pperp(x)};
}

ProductState Decomposition::untransform(double y, const EtaState& eta) const {
    const double ce = plant_->inner(plant_->c, eta.value);
    return eta.value + ((y - ce) / gamma_) * plant_->b;
}

double Decomposition::apply_S(const EtaState& eta) const { return plant_->inner(eta.value, pi_astar_c_); }

EtaState Decomposition::apply_R(double y) const { return {y * r_vec_}; }

EtaState Decomposition::apply_Q(const EtaState& eta) const {
    const double scale = std::max(1.0, plant_->norm(eta.value));
    const double residual = plant_->boundary_residual(eta.value.data());
    if (residual > 1e-8 * scale) {
        std::ostringstream os;
        os << "eta violates the boundary condition (residual " << residual << ")";
        throw PreconditionError(os.str());
    }
    ProductState out = project_Pperp(plant_->apply_A(eta.value)).value;
    out -= plant_->inner(plant_->c, eta.value) * r_vec_;
    return {std::move(out)};
}

ProductState Decomposition::ftilde(double y, const EtaState& eta) const {
    return plant_->apply_f(untransform(y, eta));
}

double Decomposition::output_drift(double y, const EtaState& eta) const {
    return p0_ * y + apply_S(eta) + plant_->inner(ftilde(y, eta), plant_->c);
}

EtaState Decomposition::eta_rhs(double y, const EtaState& eta) const {
    EtaState out = apply_Q(eta);
    out.value += y * r_vec_;
    out.value += project_Pperp(ftilde(y, eta)).value;
    return out;
}

double Decomposition::orthogonality_defect(const ProductState& x) const {
    const double nx = plant_->norm(x);
    if (nx == 0.0) return 0.0;
    return std::abs(plant_->inner(x, plant_->b)) / (nx * std::sqrt(bb_));
}

}  // namespace funnelctl
