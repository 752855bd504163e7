#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "isolab/types.hpp"

namespace isolab {

using VertexSet = std::unordered_set<VertexId, VertexHash>;

/// An implicit metric measure graph. The neighbor oracle yields (vertex,
/// scaled length) pairs; lengths must be >= 1 and symmetric. Spaces are
/// immutable after construction and cheap to copy (shared internals).
class Space {
public:
    using NeighborVisitor = std::function<void(const VertexId&, Scaled)>;
    using NeighborFn = std::function<void(const VertexId&, const NeighborVisitor&)>;
    using MeasureFn = std::function<Measure(const VertexId&)>;

    Space() = default;
    Space(std::string name, Scaled scale, NeighborFn neighbors)
        : name_(std::move(name)), scale_(scale), neighbors_(std::move(neighbors)) {
        if (scale_ < 1) throw Error("space scale must be >= 1");
    }

    Space& with_measure(MeasureFn m) {
        measure_ = std::move(m);
        return *this;
    }
    Space& with_finite_support(std::vector<VertexId> vs) {
        std::sort(vs.begin(), vs.end());
        support_ = std::make_shared<const std::vector<VertexId>>(std::move(vs));
        return *this;
    }

    const std::string& name() const { return name_; }
    Scaled scale() const { return scale_; }
    bool is_finite() const { return support_ != nullptr; }
    const std::vector<VertexId>& finite_support() const {
        if (!support_) throw Error("space '" + name_ + "' has no finite support");
        return *support_;
    }
    Measure measure(const VertexId& v) const { return measure_ ? measure_(v) : 1; }
    Measure total_measure() const {
        Measure t = 0;
        for (const auto& v : finite_support()) t += measure(v);
        return t;
    }
    void for_neighbors(const VertexId& v, const NeighborVisitor& fn) const { neighbors_(v, fn); }

private:
    std::string name_;
    Scaled scale_ = 1;
    NeighborFn neighbors_;
    MeasureFn measure_;
    std::shared_ptr<const std::vector<VertexId>> support_;
};

/// A finite vertex set with its cached total measure.
struct SubsetRegion {
    VertexSet vertices;
    Measure total_measure = 0;

    bool contains(const VertexId& v) const { return vertices.find(v) != vertices.end(); }
    bool empty() const { return vertices.empty(); }
    std::size_t size() const { return vertices.size(); }
    void insert(const VertexId& v, Measure m) {
        if (vertices.insert(v).second) total_measure += m;
    }
    std::vector<VertexId> sorted() const {
        std::vector<VertexId> out(vertices.begin(), vertices.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    static SubsetRegion from(const Space& s, std::span<const VertexId> vs) {
        SubsetRegion r;
        for (const auto& v : vs) r.insert(v, s.measure(v));
        return r;
    }
    static SubsetRegion from(const Space& s, std::initializer_list<VertexId> vs) {
        return from(s, std::span<const VertexId>(vs.begin(), vs.size()));
    }
};

/// Explicit finite space from a vertex list and index-pair edges.
Space make_finite(std::string name, Scaled scale, std::vector<VertexId> vertices,
                  const std::vector<std::tuple<std::size_t, std::size_t, Scaled>>& edges,
                  std::vector<Measure> measures = {});

/// The standard lattice on Z^dims with uniform edge length `scale`.
Space make_zd(int dims, Scaled scale = 1);

/// Same graph with every edge length multiplied by `factor` (scale follows).
Space scale_lengths(const Space& s, std::int64_t factor);

}  // namespace isolab
