#include "isolab/space.hpp"

namespace isolab {

Space make_finite(std::string name, Scaled scale, std::vector<VertexId> vertices,
                  const std::vector<std::tuple<std::size_t, std::size_t, Scaled>>& edges,
                  std::vector<Measure> measures) {
    using Adjacency = std::unordered_map<VertexId, std::vector<std::pair<VertexId, Scaled>>, VertexHash>;
    auto adj = std::make_shared<Adjacency>();
    for (const auto& v : vertices) {
        if (!adj->emplace(v, std::vector<std::pair<VertexId, Scaled>>{}).second)
            throw Error("duplicate vertex in finite space '" + name + "'");
    }
    for (const auto& [i, j, len] : edges) {
        if (i >= vertices.size() || j >= vertices.size()) throw Error("edge index out of range");
        if (len < 1) throw Error("edge length must be >= 1 scaled unit");
        (*adj)[vertices[i]].emplace_back(vertices[j], len);
        (*adj)[vertices[j]].emplace_back(vertices[i], len);
    }
    std::shared_ptr<const std::unordered_map<VertexId, Measure, VertexHash>> mu;
    if (!measures.empty()) {
        if (measures.size() != vertices.size()) throw Error("measure list size mismatch");
        auto m = std::make_shared<std::unordered_map<VertexId, Measure, VertexHash>>();
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (measures[i] < 1) throw Error("vertex measure must be >= 1");
            (*m)[vertices[i]] = measures[i];
        }
        mu = m;
    }

    Space s(std::move(name), scale, [adj](const VertexId& v, const Space::NeighborVisitor& fn) {
        auto it = adj->find(v);
        if (it == adj->end()) return;
        for (const auto& [q, len] : it->second) fn(q, len);
    });
    if (mu) s.with_measure([mu](const VertexId& v) {
        auto it = mu->find(v);
        return it == mu->end() ? Measure{1} : it->second;
    });
    s.with_finite_support(std::move(vertices));
    return s;
}

Space make_zd(int dims, Scaled scale) {
    if (dims < 1 || dims > 4) throw Error("make_zd supports 1..4 dimensions");
    return Space("Z^" + std::to_string(dims), scale,
                 [dims, scale](const VertexId& v, const Space::NeighborVisitor& fn) {
                     for (int i = 0; i < dims; ++i) {
                         VertexId q = v;
                         q.coords[i] += 1;
                         fn(q, scale);
                         q.coords[i] -= 2;
                         fn(q, scale);
                     }
                 });
}

Space scale_lengths(const Space& s, std::int64_t factor) {
    if (factor < 1) throw Error("length factor must be >= 1");
    Space base = s;
    Space out(s.name() + "*" + std::to_string(factor), s.scale() * factor,
              [base, factor](const VertexId& v, const Space::NeighborVisitor& fn) {
                  base.for_neighbors(v, [&](const VertexId& q, Scaled len) { fn(q, len * factor); });
              });
    out.with_measure([base](const VertexId& v) { return base.measure(v); });
    if (s.is_finite()) out.with_finite_support(s.finite_support());
    return out;
}

}  // namespace isolab
