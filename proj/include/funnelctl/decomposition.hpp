#pragma once

#include "funnelctl/hilbert.hpp"
#include "funnelctl/plants.hpp"

#include <utility>

namespace funnelctl {

// Element of the subspace orthogonal to b.
struct EtaState {
    ProductState value;
};

// Splitting H = span{c} + {b}^perp and the transformed operators of the (y, eta) form.
class Decomposition {
public:
    explicit Decomposition(PlantPtr plant);

    const SemilinearPlant& plant() const { return *plant_; }
    const PlantPtr& plant_ptr() const { return plant_; }
    double gamma() const { return gamma_; }
    const ProductState& b() const { return plant_->b; }
    const ProductState& c() const { return plant_->c; }

    double project_P(const ProductState& x) const;
    EtaState project_PI(const ProductState& x) const;
    EtaState project_Pperp(const ProductState& x) const;

    std::pair<double, EtaState> transform(const ProductState& x) const;
    ProductState untransform(double y, const EtaState& eta) const;

    double p0() const { return p0_; }
    double apply_S(const EtaState& eta) const;
    EtaState apply_R(double y) const;
    EtaState apply_Q(const EtaState& eta) const;
    ProductState ftilde(double y, const EtaState& eta) const;

    // Pointwise value of T: p0 y + S eta + <ftilde(y, eta), c>.
    double output_drift(double y, const EtaState& eta) const;
    // R y + Q eta + Pperp ftilde(y, eta).
    EtaState eta_rhs(double y, const EtaState& eta) const;

    // Relative distance of x from {b}^perp.
    double orthogonality_defect(const ProductState& x) const;

    const ProductState& PI_Astar_c() const { return pi_astar_c_; }
    const ProductState& Astar_c() const { return astar_c_; }
    const ProductState& Pperp_Ab_over_gamma() const { return r_vec_; }

private:
    PlantPtr plant_;
    double gamma_;
    double bb_;
    ProductState astar_c_;
    ProductState pi_astar_c_;
    ProductState r_vec_;
    double p0_;
};

}  // namespace funnelctl
