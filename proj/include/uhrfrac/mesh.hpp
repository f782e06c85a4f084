#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace uhrfrac {

/// Interval types of the piecewise problem structure.
///   Initial  [0, t_1]           (integral equation with the head weight)
///   Impulse  (t_i, s_i]         (implicit impulse law g_i)
///   Post     (s_i, t_{i+1}]     (integral equation restarted at s_i)
enum class IntervalKind { Initial, Impulse, Post };

struct MeshSegment {
    IntervalKind kind;
    int impulse_index;       // i for Impulse/Post segments, 0 for Initial
    double left;
    double right;
    std::size_t first_node;  // left boundary node (owned by the previous segment
                             // except for the Initial segment)
    std::size_t last_node;   // right boundary node, owned by this segment
};

/// Global mesh over [0, T] with every partition point t_i, s_i placed
/// exactly on a node. Each non-initial segment refines toward its left
/// endpoint with spacing ~ (j/n)^grading; the initial segment refines
/// toward 0 the same way.
class Mesh {
public:
    static Mesh build(const std::vector<std::pair<double, double>>& partition,
                      double total_time, int n_per_interval, double grading);

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<MeshSegment>& segments() const noexcept { return segments_; }
    double grading() const noexcept { return grading_; }
    double total_time() const noexcept { return total_time_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// Index of the node equal to t; throws MeshError when t is not a node.
    std::size_t index_of(double t) const;

    /// Last node index of the Initial segment (the node at t_1, or at T when
    /// there are no impulses). Nodes 0..head_last() carry the weighted head
    /// representation in grid functions.
    std::size_t head_last() const noexcept { return head_last_; }

    /// Segment owning node i (boundary nodes belong to the segment they
    /// close on the right).
    const MeshSegment& owner(std::size_t node) const;

private:
    std::vector<double> nodes_;
    std::vector<MeshSegment> segments_;
    std::vector<int> node_owner_;
    double grading_ = 1.0;
    double total_time_ = 0.0;
    std::size_t head_last_ = 0;
};

/// Validates the partition chain 0 < t_1 <= s_1 < t_2 <= ... <= s_m <= T.
/// Throws MeshError with a description of the first violation.
void check_partition(const std::vector<std::pair<double, double>>& partition,
                     double total_time);

}  // namespace uhrfrac
