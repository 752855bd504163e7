#include "isolab/metric.hpp"

#include <map>
#include <queue>

namespace isolab {

namespace {

// Multi-source Dijkstra with lazy deletion. on_settle(v, d) returning true
// stops the search; ties on distance settle in VertexId order so results are
// scheduling-independent.
template <class OnSettle>
void dijkstra(const Space& s, std::span<const VertexId> sources, Scaled cap, const Budget& budget,
              OnSettle&& on_settle) {
    using Item = std::pair<Scaled, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    std::unordered_map<VertexId, Scaled, VertexHash> best;
    VertexSet done;

    for (const auto& src : sources) {
        auto [it, fresh] = best.try_emplace(src, 0);
        if (fresh) heap.push({0, src});
        else it->second = 0;
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        auto bi = best.find(v);
        if (bi == best.end() || bi->second < d) continue;
        if (!done.insert(v).second) continue;
        if (on_settle(v, d)) return;
        s.for_neighbors(v, [&](const VertexId& q, Scaled len) {
            if (len < 1) throw Error("edge length below one scaled unit at " + to_string(v));
            const Scaled nd = d + len;
            if (nd > cap) return;
            auto [it, fresh] = best.try_emplace(q, nd);
            if (fresh) {
                if (best.size() > budget.max_vertices)
                    throw BudgetExceeded("search exceeded the vertex budget near " + to_string(q));
                heap.push({nd, q});
            } else if (nd < it->second) {
                it->second = nd;
                heap.push({nd, q});
            }
        });
    }
}

SubsetRegion region_from_map(const Space& s, const std::unordered_map<VertexId, Scaled, VertexHash>& dist,
                             Scaled lo_exclusive, Scaled hi_inclusive) {
    SubsetRegion r;
    for (const auto& [v, d] : dist) {
        if (d > lo_exclusive && d <= hi_inclusive) r.insert(v, s.measure(v));
    }
    return r;
}

}  // namespace

DistanceMap shortest_paths(const Space& s, std::span<const VertexId> sources, Scaled cap,
                           const Budget& budget) {
    if (cap < 0) throw Error("negative distance cap");
    DistanceMap out;
    out.sources.assign(sources.begin(), sources.end());
    std::sort(out.sources.begin(), out.sources.end());
    out.cap = cap;
    dijkstra(s, sources, cap, budget, [&](const VertexId& v, Scaled d) {
        out.dist.emplace(v, d);
        return false;
    });
    return out;
}

std::optional<Scaled> distance(const Space& s, const VertexId& x, const VertexId& y, Scaled cap,
                               const Budget& budget) {
    if (cap < 0) throw Error("negative distance cap");
    std::optional<Scaled> found;
    const VertexId src[1] = {x};
    dijkstra(s, src, cap, budget, [&](const VertexId& v, Scaled d) {
        if (v == y) {
            found = d;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<Scaled> distance_to_set(const Space& s, const VertexId& x, const SubsetRegion& target,
                                      Scaled cap, const Budget& budget) {
    std::optional<Scaled> found;
    const VertexId src[1] = {x};
    dijkstra(s, src, cap, budget, [&](const VertexId& v, Scaled d) {
        if (target.contains(v)) {
            found = d;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<Scaled> exit_distance(const Space& s, const SubsetRegion& a, const VertexId& x,
                                    Scaled cap, const Budget& budget) {
    std::optional<Scaled> found;
    const VertexId src[1] = {x};
    dijkstra(s, src, cap, budget, [&](const VertexId& v, Scaled d) {
        if (!a.contains(v)) {
            found = d;
            return true;
        }
        return false;
    });
    return found;
}

SubsetRegion ball(const Space& s, const VertexId& x, Scaled r, const Budget& budget) {
    if (r < 0) throw Error("negative ball radius");
    SubsetRegion out;
    const VertexId src[1] = {x};
    dijkstra(s, src, r, budget, [&](const VertexId& v, Scaled) {
        out.insert(v, s.measure(v));
        return false;
    });
    return out;
}

SubsetRegion annulus(const Space& s, const VertexId& x, Scaled r, Scaled r2, const Budget& budget) {
    if (!(0 <= r && r < r2)) throw Error("annulus requires 0 <= r < r2");
    const VertexId src[1] = {x};
    DistanceMap m = shortest_paths(s, src, r2, budget);
    return region_from_map(s, m.dist, r, r2);
}

SubsetRegion neighborhood(const Space& s, const SubsetRegion& a, Scaled h, const Budget& budget) {
    if (h < 0) throw Error("negative neighborhood radius");
    const auto sources = a.sorted();
    SubsetRegion out;
    dijkstra(s, sources, h, budget, [&](const VertexId& v, Scaled) {
        out.insert(v, s.measure(v));
        return false;
    });
    return out;
}

SubsetRegion h_boundary(const Space& s, const SubsetRegion& a, Scaled h, const Budget& budget) {
    if (h < 1) throw Error("h-boundary requires h >= 1 scaled unit");
    if (a.empty()) return {};
    const auto sources = a.sorted();
    // Everything within 2h of A; any complement vertex witnessing d(x,A^c) <= h
    // for some x in A_h lies in here.
    DistanceMap wide = shortest_paths(s, sources, 2 * h, budget);
    std::vector<VertexId> exits;
    exits.reserve(wide.dist.size());
    for (const auto& [v, d] : wide.dist) {
        if (!a.contains(v)) exits.push_back(v);
    }
    if (exits.empty()) return {};
    std::sort(exits.begin(), exits.end());
    DistanceMap to_exit = shortest_paths(s, exits, h, budget);
    SubsetRegion out;
    for (const auto& [v, d] : wide.dist) {
        if (d > h) continue;
        auto e = to_exit.at(v);
        if (e && *e <= h) out.insert(v, s.measure(v));
    }
    return out;
}

std::optional<std::int64_t> b_distance(const Space& s, const VertexId& x, const VertexId& y, Scaled b,
                                       std::int64_t cap, const Budget& budget) {
    if (b < 1) throw Error("b-distance requires b >= 1 scaled unit");
    if (x == y) return 0;
    VertexSet seen{x};
    std::vector<VertexId> frontier{x};
    for (std::int64_t step = 1; step <= cap && !frontier.empty(); ++step) {
        std::vector<VertexId> next;
        for (const auto& u : frontier) {
            SubsetRegion reach = ball(s, u, b, budget);
            for (const auto& v : reach.sorted()) {
                if (v == y) return step;
                if (seen.size() >= budget.max_vertices)
                    throw BudgetExceeded("b-chain search exceeded the vertex budget");
                if (seen.insert(v).second) next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

GrowthCurve growth_curve(const Space& s, const VertexId& x, std::span<const Scaled> radii,
                         const Budget& budget) {
    GrowthCurve out;
    out.center = x;
    if (radii.empty()) return out;
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        if (radii[i] > radii[i + 1]) throw Error("growth radii must be sorted ascending");
    }
    const VertexId src[1] = {x};
    DistanceMap m = shortest_paths(s, src, radii.back(), budget);
    std::vector<std::pair<Scaled, Measure>> found;
    found.reserve(m.dist.size());
    for (const auto& [v, d] : m.dist) found.emplace_back(d, s.measure(v));
    std::sort(found.begin(), found.end());
    std::size_t i = 0;
    Measure acc = 0;
    for (Scaled r : radii) {
        while (i < found.size() && found[i].first <= r) acc += found[i++].second;
        out.points.emplace_back(r, acc);
    }
    return out;
}

namespace {

bool chain_reaches(const Space& s, const VertexId& x, const VertexId& y, Scaled b,
                   const SubsetRegion& allowed, const Budget& budget) {
    if (x == y) return true;
    if (!allowed.contains(x) || !allowed.contains(y)) return false;
    VertexSet seen{x};
    std::vector<VertexId> frontier{x};
    while (!frontier.empty()) {
        std::vector<VertexId> next;
        for (const auto& u : frontier) {
            SubsetRegion reach = ball(s, u, b, budget);
            for (const auto& v : reach.vertices) {
                if (!allowed.contains(v)) continue;
                if (v == y) return true;
                if (seen.insert(v).second) next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return false;
}

}  // namespace

BConnectivity check_uniform_b_connected(const Space& s, Scaled b, Scaled e1,
                                        std::span<const std::pair<VertexId, VertexId>> samples,
                                        Scaled e2_cap, const Budget& budget) {
    if (samples.empty()) throw Error("uniform b-connectivity needs at least one sample pair");
    if (e2_cap <= 0) e2_cap = 16 * e1;
    BConnectivity out;
    out.ok = true;
    for (const auto& [x, y] : samples) {
        auto d = distance(s, x, y, e1, budget);
        if (!d) {
            // the pair is not even within E1 (possibly in different components)
            out.ok = false;
            out.counterexample = {x, y};
            return out;
        }
        auto reachable_within = [&](Scaled e2) {
            SubsetRegion r = ball(s, x, e2, budget);
            return chain_reaches(s, x, y, b, r, budget);
        };
        Scaled hi = e1;
        bool found = reachable_within(hi);
        while (!found && hi < e2_cap) {
            hi = std::min<Scaled>(hi * 2, e2_cap);
            found = reachable_within(hi);
        }
        if (!found) {
            out.ok = false;
            out.counterexample = {x, y};
            return out;
        }
        Scaled lo = e1;  // least E2 is searched within [e1, hi]
        while (lo < hi) {
            const Scaled mid = lo + (hi - lo) / 2;
            if (reachable_within(mid)) hi = mid;
            else lo = mid + 1;
        }
        out.rows.push_back({x, y, hi});
        out.e2 = std::max(out.e2, hi);
    }
    return out;
}

PropertyMResult check_property_M(const Space& s, std::span<const PropertyMSample> samples,
                                 const Budget& budget) {
    PropertyMResult out;
    out.ok = true;
    const Scaled unit = s.scale();
    for (const auto& sample : samples) {
        SubsetRegion bx = ball(s, sample.x, sample.r, budget);
        auto dxy = distance(s, sample.x, sample.y, sample.r + unit, budget);
        if (!dxy) throw Error("property (M) sample has y outside B(x, r + scale)");
        if (bx.contains(sample.y)) continue;  // contributes 0
        auto d = distance_to_set(s, sample.y, bx, 64 * unit, budget);
        if (!d) {
            out.ok = false;
            out.counterexample = sample;
            return out;
        }
        out.constant = std::max(out.constant, *d);
    }
    return out;
}

DoublingReport check_doubling(const Space& s, std::span<const std::pair<VertexId, Scaled>> samples,
                              const Budget& budget) {
    DoublingReport out;
    std::map<Scaled, Rational> worst;
    for (const auto& [x, r] : samples) {
        if (r < 1) throw Error("doubling radius must be positive");
        const VertexId src[1] = {x};
        DistanceMap m = shortest_paths(s, src, 2 * r, budget);
        Measure small = 0, big = 0;
        for (const auto& [v, d] : m.dist) {
            const Measure mu = s.measure(v);
            big += mu;
            if (d <= r) small += mu;
        }
        const Rational ratio = Rational::of(big, small);
        auto it = worst.find(r);
        if (it == worst.end() || it->second < ratio) worst[r] = ratio;
    }
    for (const auto& [r, ratio] : worst) {
        out.rows.push_back({r, ratio});
        if (out.global < ratio) out.global = ratio;
    }
    return out;
}

ConnectivityResult is_connected(const Space& s, const SubsetRegion& a, Scaled gap, const Budget& budget) {
    ConnectivityResult out;
    if (gap <= 0) gap = 10 * s.scale();
    const auto verts = a.sorted();
    if (verts.size() <= 1) return out;

    std::unordered_map<VertexId, std::size_t, VertexHash> index;
    for (std::size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], i);
    std::vector<std::size_t> parent(verts.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    auto unite = [&](std::size_t i, std::size_t j) {
        i = find(i);
        j = find(j);
        if (i != j) parent[std::max(i, j)] = std::min(i, j);
    };

    for (std::size_t i = 0; i < verts.size(); ++i) {
        const VertexId src[1] = {verts[i]};
        dijkstra(s, src, gap - 1, budget, [&](const VertexId& v, Scaled) {
            auto it = index.find(v);
            if (it != index.end()) unite(i, it->second);
            return false;
        });
    }

    const std::size_t root0 = find(0);
    bool split = false;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (find(i) == root0) out.part1.insert(verts[i], s.measure(verts[i]));
        else {
            out.part2.insert(verts[i], s.measure(verts[i]));
            split = true;
        }
    }
    out.connected = !split;
    if (!split) {
        out.part1 = {};
    }
    return out;
}

}  // namespace isolab
