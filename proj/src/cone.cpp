#include "hypcone/cone.hpp"

#include <algorithm>
#include <cmath>

#include "hypcone/numeric.hpp"

namespace hypcone {

GradedCone::GradedCone(std::vector<QuasiCocycleSpec> cocycles)
    : cocycles_(std::move(cocycles)), grading_(cocycles_.size()) {
    if (cocycles_.empty())
        throw input_error("a graded cone needs at least one cocycle");
    for (const auto& c : cocycles_)
        if (c.eta < 0.0)
            throw input_error("cocycle '" + c.name + "': eta must be >= 0");
}

std::int32_t GradedCone::add_root(std::complex<double> location) {
    if (!parent_.empty()) throw input_error("cone already has a root");
    parent_.push_back(npos);
    depth_.push_back(0);
    branch_.push_back(0);
    location_.push_back(location);
    expanded_.push_back(0);
    for (auto& col : grading_) col.push_back(0.0);
    return 0;
}

std::int32_t GradedCone::add_child(std::int32_t parent, int branch,
                                   std::complex<double> location,
                                   std::span<const double> edge_increments) {
    check(parent);
    if (edge_increments.size() != cocycles_.size())
        throw input_error("edge increment vector has wrong length");
    if (finalized_) throw input_error("cone is finalized");
    const auto v = static_cast<std::int32_t>(parent_.size());
    parent_.push_back(parent);
    depth_.push_back(depth_[parent] + 1);
    branch_.push_back(branch);
    location_.push_back(location);
    expanded_.push_back(0);
    max_depth_ = std::max(max_depth_, depth_.back());
    for (std::size_t c = 0; c < grading_.size(); ++c)
        grading_[c].push_back(grading_[c][parent] + edge_increments[c]);
    return v;
}

void GradedCone::mark_expanded(std::int32_t v) { expanded_[check(v)] = 1; }

void GradedCone::finalize() {
    if (finalized_) return;
    const std::size_t n = parent_.size();
    child_index_.assign(n + 1, 0);
    for (std::size_t v = 1; v < n; ++v) ++child_index_[parent_[v] + 1];
    for (std::size_t v = 1; v <= n; ++v) child_index_[v] += child_index_[v - 1];
    child_list_.resize(n == 0 ? 0 : n - 1);
    std::vector<std::int32_t> cursor(child_index_.begin(), child_index_.end() - 1);
    for (std::size_t v = 1; v < n; ++v)
        child_list_[cursor[parent_[v]]++] = static_cast<std::int32_t>(v);
    finalized_ = true;
}

std::span<const std::int32_t> GradedCone::children(std::int32_t v) const {
    check(v);
    if (!finalized_) throw input_error("cone not finalized");
    return {child_list_.data() + child_index_[v],
            static_cast<std::size_t>(child_index_[v + 1] - child_index_[v])};
}

const QuasiCocycleSpec& GradedCone::cocycle(std::size_t i) const {
    if (i >= cocycles_.size())
        throw input_error("cocycle index " + std::to_string(i) + " not registered");
    return cocycles_[i];
}

double GradedCone::grading(std::size_t cocycle, std::int32_t v) const {
    this->cocycle(cocycle);
    return grading_[cocycle][check(v)];
}

double GradedCone::edge_increment(std::size_t cocycle, std::int32_t v) const {
    check(v);
    if (parent_[v] == npos) throw input_error("root has no incoming edge");
    return grading_[cocycle][v] - grading_[cocycle][parent_[v]];
}

std::span<const double> GradedCone::grading_column(std::size_t cocycle) const {
    this->cocycle(cocycle);
    return grading_[cocycle];
}

double GradedCone::max_edge_increment(std::size_t cocycle) const {
    this->cocycle(cocycle);
    double m = 0.0;
    for (std::size_t v = 1; v < parent_.size(); ++v)
        m = std::max(m, grading_[cocycle][v] - grading_[cocycle][parent_[v]]);
    return m;
}

double GradedCone::min_edge_increment(std::size_t cocycle) const {
    this->cocycle(cocycle);
    double m = kInf;
    for (std::size_t v = 1; v < parent_.size(); ++v)
        m = std::min(m, grading_[cocycle][v] - grading_[cocycle][parent_[v]]);
    return m;
}

double GradedCone::frontier_floor(std::size_t cocycle) const {
    this->cocycle(cocycle);
    double floor = kInf;
    for (std::size_t v = 0; v < parent_.size(); ++v)
        if (!expanded_[v]) floor = std::min(floor, grading_[cocycle][v]);
    return floor;
}

std::int32_t GradedCone::ancestor_at_depth(std::int32_t v, std::int32_t d) const {
    check(v);
    if (d < 0 || d > depth_[v])
        throw input_error("no ancestor of node " + std::to_string(v) + " at depth " + std::to_string(d));
    while (depth_[v] > d) v = parent_[v];
    return v;
}

std::int32_t GradedCone::common_ancestor(std::int32_t a, std::int32_t b) const {
    check(a);
    check(b);
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
        a = parent_[a];
        b = parent_[b];
    }
    return a;
}

std::int64_t GradedCone::tree_distance(std::int32_t a, std::int32_t b) const {
    const std::int32_t c = common_ancestor(a, b);
    return static_cast<std::int64_t>(depth_[a]) + depth_[b] - 2 * static_cast<std::int64_t>(depth_[c]);
}

std::vector<std::int32_t> GradedCone::nodes_at_depth(std::int32_t d) const {
    std::vector<std::int32_t> out;
    for (std::size_t v = 0; v < parent_.size(); ++v)
        if (depth_[v] == d) out.push_back(static_cast<std::int32_t>(v));
    return out;
}

std::string GradedCone::word(std::int32_t v) const {
    check(v);
    std::string w;
    for (std::int32_t u = v; parent_[u] != npos; u = parent_[u]) {
        const int b = branch_[u];
        w.push_back(b < 10 ? static_cast<char>('0' + b) : static_cast<char>('a' + b - 10));
    }
    std::reverse(w.begin(), w.end());
    return w;
}

void GradedCone::validate() const {
    if (parent_.empty()) throw input_error("cone is empty");
    if (depth_[0] != 0) throw input_error("root must have depth 0");
    for (std::size_t c = 0; c < cocycles_.size(); ++c)
        if (grading_[c][0] != 0.0)
            throw input_error("root grading must be 0 for cocycle '" + cocycles_[c].name + "'");
    for (std::size_t v = 1; v < parent_.size(); ++v) {
        if (depth_[v] != depth_[parent_[v]] + 1)
            throw input_error("node " + std::to_string(v) + ": parent depth mismatch");
    }
    for (std::size_t c = 0; c < cocycles_.size(); ++c) {
        const auto& spec = cocycles_[c];
        if (!spec.positive) continue;
        for (std::size_t v = 1; v < parent_.size(); ++v) {
            const double inc = grading_[c][v] - grading_[c][parent_[v]];
            if (inc <= spec.eta)
                throw input_error("cocycle '" + spec.name + "': edge increment " +
                                  format_sig(inc) + " at node " + std::to_string(v) +
                                  " not above eta = " + format_sig(spec.eta));
            if (spec.delta_bound > 0.0 && inc > spec.delta_bound)
                throw input_error("cocycle '" + spec.name + "': edge increment " +
                                  format_sig(inc) + " at node " + std::to_string(v) +
                                  " exceeds the declared bound " + format_sig(spec.delta_bound));
        }
    }
}

double gromov_product(const GradedCone& cone, std::size_t cocycle,
                      std::int32_t a, std::int32_t b) {
    if (a == b) {
        cone.grading(cocycle, a);  // validates indices
        return kInf;
    }
    return cone.grading(cocycle, cone.common_ancestor(a, b));
}

BusemannResult busemann_increment(const GradedCone& cone, std::int32_t ray_leaf,
                                  std::int32_t v1, std::int32_t v2, std::int32_t horizon) {
    if (horizon < 0 || horizon > cone.depth(ray_leaf))
        throw input_error("ray does not reach horizon depth " + std::to_string(horizon));
    const std::int32_t vh = cone.ancestor_at_depth(ray_leaf, horizon);
    BusemannResult r;
    r.value = static_cast<double>(cone.tree_distance(v1, vh) - cone.tree_distance(v2, vh));
    const std::int32_t s1 = cone.depth(cone.common_ancestor(v1, ray_leaf));
    const std::int32_t s2 = cone.depth(cone.common_ancestor(v2, ray_leaf));
    r.stabilization_depth = std::max(s1, s2);
    return r;
}

} // namespace hypcone
