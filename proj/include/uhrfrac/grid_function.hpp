#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "uhrfrac/mesh.hpp"
#include "uhrfrac/psi.hpp"

namespace uhrfrac {

/// Piecewise trajectory values on a mesh.
///
/// When `weighted_head` is set and gamma < 1, the nodes of the initial
/// segment store the weighted representative
///     w(t) = (psi(t) - psi(0))^(1 - gamma) * x(t),
/// which stays finite when the raw solution blows up like
/// (psi(t) - psi(0))^(gamma - 1) near t = 0. All other nodes store raw
/// values. With gamma = 1 the two representations coincide.
class GridFunction {
public:
    GridFunction(std::shared_ptr<const Mesh> mesh, double gamma,
                 bool weighted_head);

    /// Samples a raw-valued function of t on every node (no weighting).
    static GridFunction sample(std::shared_ptr<const Mesh> mesh,
                               const std::function<double(double)>& fn);

    std::size_t size() const noexcept { return values_.size(); }
    double& operator[](std::size_t i) { return values_[i]; }
    const double& operator[](std::size_t i) const { return values_[i]; }

    const Mesh& mesh() const noexcept { return *mesh_; }
    const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
    double gamma() const noexcept { return gamma_; }
    bool weighted_head() const noexcept { return weighted_head_; }

    /// True when node i stores the weighted representative.
    bool head_weighted(std::size_t i) const noexcept {
        return weighted_head_ && gamma_ < 1.0 && i <= mesh_->head_last();
    }

    /// (psi(t_i) - psi(0))^(1 - gamma), the factor between raw and stored
    /// values at head nodes.
    double head_factor(const PsiFunction& psi, std::size_t i) const;

    /// Raw value at node i. At node 0 with gamma < 1 the raw solution has
    /// no finite value; returns 0 when the stored head value is 0 and
    /// +/-infinity otherwise.
    double raw(const PsiFunction& psi, std::size_t i) const;

    /// Writes a raw value into node i, converting to the weighted
    /// representation when the node is a head node.
    void set_raw(const PsiFunction& psi, std::size_t i, double value);

private:
    std::shared_ptr<const Mesh> mesh_;
    std::vector<double> values_;
    double gamma_;
    bool weighted_head_;
};

/// Sup distance over nodes comparing stored representations: weighted
/// values on the head, raw values elsewhere. Both functions must live on
/// the same mesh with the same storage convention.
double weighted_sup_distance(const GridFunction& a, const GridFunction& b);

}  // namespace uhrfrac
