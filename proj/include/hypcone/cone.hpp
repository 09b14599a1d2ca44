#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hypcone/errors.hpp"

namespace hypcone {

// Kinds of gradings a cone can carry. Level and derivative gradings are
// exact cocycles (eta = 0); custom ones may be quasi-additive.
enum class CocycleKind { level, derivative, custom };

struct QuasiCocycleSpec {
    std::string name;
    double eta = 0.0;              // quasi-additivity slack, >= 0
    CocycleKind kind = CocycleKind::custom;
    bool positive = false;         // increments must exceed eta on every edge
    double delta_bound = 0.0;      // upper increment bound for positive cocycles; 0 = unknown
};

// A finite rooted tree with one location payload per node and one or more
// real gradings accumulated along root-to-node paths. Edge increments are
// recovered as grading(child) - grading(parent).
//
// Nodes are appended in breadth-first order by the builders; the root has
// index 0, depth 0 and all gradings 0. A node is "expanded" once all of
// its children have been generated; unexpanded nodes form the frontier.
class GradedCone {
public:
    static constexpr std::int32_t npos = -1;

    explicit GradedCone(std::vector<QuasiCocycleSpec> cocycles);

    // -- construction -------------------------------------------------------
    std::int32_t add_root(std::complex<double> location);
    std::int32_t add_child(std::int32_t parent, int branch,
                           std::complex<double> location,
                           std::span<const double> edge_increments);
    void mark_expanded(std::int32_t v);
    void finalize();                        // builds the child index

    // -- shape --------------------------------------------------------------
    std::size_t size() const { return parent_.size(); }
    std::int32_t parent(std::int32_t v) const { return parent_[check(v)]; }
    int branch(std::int32_t v) const { return branch_[check(v)]; }
    std::int32_t depth(std::int32_t v) const { return depth_[check(v)]; }
    bool expanded(std::int32_t v) const { return expanded_[check(v)]; }
    std::complex<double> location(std::int32_t v) const { return location_[check(v)]; }
    std::span<const std::int32_t> children(std::int32_t v) const;
    std::int32_t max_depth() const { return max_depth_; }

    // -- gradings -----------------------------------------------------------
    std::size_t cocycle_count() const { return cocycles_.size(); }
    const QuasiCocycleSpec& cocycle(std::size_t i) const;
    double grading(std::size_t cocycle, std::int32_t v) const;
    double edge_increment(std::size_t cocycle, std::int32_t v) const;
    std::span<const double> grading_column(std::size_t cocycle) const;
    double max_edge_increment(std::size_t cocycle) const;
    double min_edge_increment(std::size_t cocycle) const;
    // Smallest grading value over unexpanded nodes; +inf when the whole
    // cone is expanded. Annulus queries at or below this value are exact.
    double frontier_floor(std::size_t cocycle) const;

    // -- tree queries --------------------------------------------------------
    std::int32_t ancestor_at_depth(std::int32_t v, std::int32_t d) const;
    std::int32_t common_ancestor(std::int32_t a, std::int32_t b) const;
    // Combinatorial (unit-edge, undirected) distance.
    std::int64_t tree_distance(std::int32_t a, std::int32_t b) const;
    std::vector<std::int32_t> nodes_at_depth(std::int32_t d) const;
    // Branch labels along the root-to-v path; digits 0-9 then a-z.
    std::string word(std::int32_t v) const;

    // Checks the structural invariants: parent depths, root gradings,
    // monotonicity of positive gradings, quasi-additivity of increments.
    // Throws input_error describing the first violation.
    void validate() const;

private:
    std::int32_t check(std::int32_t v) const {
        if (v < 0 || static_cast<std::size_t>(v) >= parent_.size())
            throw input_error("unknown node index " + std::to_string(v));
        return v;
    }

    std::vector<QuasiCocycleSpec> cocycles_;
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> depth_;
    std::vector<int> branch_;
    std::vector<std::complex<double>> location_;
    std::vector<char> expanded_;
    std::vector<std::vector<double>> grading_;  // [cocycle][node]
    std::int32_t max_depth_ = 0;

    bool finalized_ = false;
    std::vector<std::int32_t> child_index_;    // CSR offsets, size+1
    std::vector<std::int32_t> child_list_;
};

// Grading value at the deepest common ancestor of a and b; +inf when a == b.
// On trees every geodesic between two vertices passes through their common
// ancestor, so this is the Gromov product for the given grading.
double gromov_product(const GradedCone& cone, std::size_t cocycle,
                      std::int32_t a, std::int32_t b);

struct BusemannResult {
    double value = 0.0;
    std::int32_t stabilization_depth = 0;  // horizons beyond this give the same value
};

// |v1 - v_h| - |v2 - v_h| in the combinatorial tree metric, where v_h is the
// node of the given root-to-leaf ray at depth `horizon`.
BusemannResult busemann_increment(const GradedCone& cone, std::int32_t ray_leaf,
                                  std::int32_t v1, std::int32_t v2, std::int32_t horizon);

} // namespace hypcone
