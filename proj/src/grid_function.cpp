#include "uhrfrac/grid_function.hpp"

#include <cmath>
#include <limits>

#include "uhrfrac/errors.hpp"

namespace uhrfrac {

GridFunction::GridFunction(std::shared_ptr<const Mesh> mesh, double gamma,
                           bool weighted_head)
    : mesh_(std::move(mesh)),
      gamma_(gamma),
      weighted_head_(weighted_head) {
    if (!mesh_) {
        throw MeshError("grid function requires a mesh");
    }
    if (!(gamma_ > 0.0) || gamma_ > 1.0) {
        throw DomainError("grid function requires gamma in (0, 1]");
    }
    values_.assign(mesh_->size(), 0.0);
}

GridFunction GridFunction::sample(std::shared_ptr<const Mesh> mesh,
                                  const std::function<double(double)>& fn) {
    GridFunction g(std::move(mesh), 1.0, false);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = fn(g.mesh().nodes()[i]);
    }
    return g;
}

double GridFunction::head_factor(const PsiFunction& psi, std::size_t i) const {
    const double gap = psi.value(mesh_->nodes()[i]) - psi.value(0.0);
    return std::pow(gap, 1.0 - gamma_);
}

double GridFunction::raw(const PsiFunction& psi, std::size_t i) const {
    if (!head_weighted(i)) {
        return values_[i];
    }
    if (i == 0) {
        if (values_[0] == 0.0) {
            return 0.0;
        }
        return std::copysign(std::numeric_limits<double>::infinity(), values_[0]);
    }
    return values_[i] / head_factor(psi, i);
}

void GridFunction::set_raw(const PsiFunction& psi, std::size_t i, double value) {
    if (!head_weighted(i)) {
        values_[i] = value;
        return;
    }
    if (i == 0) {
        throw SingularityError(
            "raw values at t = 0 are not representable for gamma < 1; "
            "write the weighted head value directly");
    }
    values_[i] = value * head_factor(psi, i);
}

double weighted_sup_distance(const GridFunction& a, const GridFunction& b) {
    if (a.mesh_ptr() != b.mesh_ptr() &&
        a.mesh().nodes() != b.mesh().nodes()) {
        throw MeshError("weighted_sup_distance requires a common mesh");
    }
    if (a.weighted_head() != b.weighted_head() || a.gamma() != b.gamma()) {
        throw MeshError("weighted_sup_distance requires a common storage convention");
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sup = std::max(sup, std::abs(a[i] - b[i]));
    }
    return sup;
}

}  // namespace uhrfrac
