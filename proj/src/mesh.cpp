#include "uhrfrac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uhrfrac/errors.hpp"

namespace uhrfrac {

void check_partition(const std::vector<std::pair<double, double>>& partition,
                     double total_time) {
    if (!(total_time > 0.0)) {
        throw MeshError("total time T must be positive");
    }
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const auto [ti, si] = partition[i];
        const std::string tag = std::to_string(i + 1);
        if (i == 0 ? !(ti > 0.0) : ti < partition[i - 1].second) {
            throw MeshError("partition ordering violated: t_" + tag +
                            " must not precede the previous boundary");
        }
        if (si < ti) {
            throw MeshError("partition ordering violated: s_" + tag +
                            " < t_" + tag);
        }
        if (si > total_time) {
            throw MeshError("partition ordering violated: s_" + tag + " > T");
        }
    }
}

Mesh Mesh::build(const std::vector<std::pair<double, double>>& partition,
                 double total_time, int n_per_interval, double grading) {
    check_partition(partition, total_time);
    if (n_per_interval < 1) {
        throw MeshError("n_per_interval must be at least 1");
    }
    if (!(grading >= 1.0)) {
        throw MeshError("grading exponent must be >= 1");
    }

    Mesh mesh;
    mesh.grading_ = grading;
    mesh.total_time_ = total_time;

    const double t1 = partition.empty() ? total_time : partition.front().first;
    const auto n = static_cast<std::size_t>(n_per_interval);

    // Initial segment [0, t_1], graded toward 0.
    mesh.nodes_.push_back(0.0);
    for (std::size_t j = 1; j <= n; ++j) {
        const double frac = static_cast<double>(j) / static_cast<double>(n);
        mesh.nodes_.push_back(t1 * std::pow(frac, grading));
    }
    mesh.segments_.push_back(
        {IntervalKind::Initial, 0, 0.0, t1, 0, mesh.nodes_.size() - 1});
    mesh.head_last_ = mesh.nodes_.size() - 1;

    auto add_segment = [&](IntervalKind kind, int index, double left,
                           double right, double grade) {
        if (right <= left) {
            return;  // empty interval, nothing to mesh
        }
        const std::size_t first = mesh.nodes_.size() - 1;
        for (std::size_t j = 1; j <= n; ++j) {
            const double frac = static_cast<double>(j) / static_cast<double>(n);
            mesh.nodes_.push_back(left + (right - left) * std::pow(frac, grade));
        }
        // Pin the right boundary exactly.
        mesh.nodes_.back() = right;
        mesh.segments_.push_back(
            {kind, index, left, right, first, mesh.nodes_.size() - 1});
    };

    for (std::size_t i = 0; i < partition.size(); ++i) {
        const auto [ti, si] = partition[i];
        const double next_t =
            (i + 1 < partition.size()) ? partition[i + 1].first : total_time;
        const int idx = static_cast<int>(i) + 1;
        add_segment(IntervalKind::Impulse, idx, ti, si, 1.0);
        add_segment(IntervalKind::Post, idx, si, next_t, grading);
    }

    mesh.node_owner_.assign(mesh.nodes_.size(), 0);
    for (std::size_t s = 0; s < mesh.segments_.size(); ++s) {
        const auto& seg = mesh.segments_[s];
        const std::size_t from = (seg.kind == IntervalKind::Initial)
                                     ? seg.first_node
                                     : seg.first_node + 1;
        for (std::size_t j = from; j <= seg.last_node; ++j) {
            mesh.node_owner_[j] = static_cast<int>(s);
        }
    }

    for (std::size_t j = 1; j < mesh.nodes_.size(); ++j) {
        if (!(mesh.nodes_[j] > mesh.nodes_[j - 1])) {
            throw MeshError("mesh nodes are not strictly increasing; intervals too "
                            "small for the requested resolution");
        }
    }
    return mesh;
}

std::size_t Mesh::index_of(double t) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
    if (it == nodes_.end() || *it != t) {
        throw MeshError("value " + std::to_string(t) + " is not a mesh node");
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

const MeshSegment& Mesh::owner(std::size_t node) const {
    if (node >= nodes_.size()) {
        throw MeshError("node index out of range");
    }
    return segments_[static_cast<std::size_t>(node_owner_[node])];
}

}  // namespace uhrfrac
