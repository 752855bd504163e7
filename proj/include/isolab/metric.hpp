#pragma once

#include <optional>
#include <utility>

#include "isolab/space.hpp"

namespace isolab {

inline constexpr Scaled kUncapped = INT64_MAX / 4;

/// Exact shortest-path distances from a source set, complete up to `cap`.
struct DistanceMap {
    std::vector<VertexId> sources;
    Scaled cap = 0;
    std::unordered_map<VertexId, Scaled, VertexHash> dist;

    std::optional<Scaled> at(const VertexId& v) const {
        auto it = dist.find(v);
        if (it == dist.end()) return std::nullopt;
        return it->second;
    }
};

DistanceMap shortest_paths(const Space& s, std::span<const VertexId> sources, Scaled cap,
                           const Budget& budget = {});

/// Exact d(x,y) when it is <= cap, nullopt otherwise.
std::optional<Scaled> distance(const Space& s, const VertexId& x, const VertexId& y, Scaled cap,
                               const Budget& budget = {});

/// Exact d(x, target), searching outward from x.
std::optional<Scaled> distance_to_set(const Space& s, const VertexId& x, const SubsetRegion& target,
                                      Scaled cap, const Budget& budget = {});

/// Exact d(x, complement of `a`): capped search from x that stops at the first
/// settled vertex outside `a`, so the complement is never materialized.
std::optional<Scaled> exit_distance(const Space& s, const SubsetRegion& a, const VertexId& x,
                                    Scaled cap, const Budget& budget = {});

/// Closed ball {y : d(x,y) <= r}.
SubsetRegion ball(const Space& s, const VertexId& x, Scaled r, const Budget& budget = {});

/// ball(x,r2) \ ball(x,r), closed-ball semantics on both sides. Requires 0 <= r < r2.
SubsetRegion annulus(const Space& s, const VertexId& x, Scaled r, Scaled r2, const Budget& budget = {});

/// A_h = {x : d(x,A) <= h}. Contains A; monotone in h and in A.
SubsetRegion neighborhood(const Space& s, const SubsetRegion& a, Scaled h, const Budget& budget = {});

/// The h-boundary A_h ∩ (A^c)_h = {x : d(x,A) <= h and d(x,A^c) <= h}.
/// Computed locally against the exit frontier of A; requires h >= 1.
SubsetRegion h_boundary(const Space& s, const SubsetRegion& a, Scaled h, const Budget& budget = {});

/// Minimal length of a chain x = x_0, ..., x_n = y with d(x_i, x_{i+1}) <= b,
/// or nullopt if none exists within `cap` steps in the explored region.
std::optional<std::int64_t> b_distance(const Space& s, const VertexId& x, const VertexId& y, Scaled b,
                                       std::int64_t cap, const Budget& budget = {});

struct GrowthCurve {
    VertexId center;
    std::vector<std::pair<Scaled, Measure>> points;  // (radius, ball volume), radius ascending
};

GrowthCurve growth_curve(const Space& s, const VertexId& x, std::span<const Scaled> radii,
                         const Budget& budget = {});

struct BConnectivityRow {
    VertexId x, y;
    Scaled e2 = 0;
};
struct BConnectivity {
    bool ok = false;
    Scaled e2 = 0;  // max over samples of the least per-pair E2
    std::optional<std::pair<VertexId, VertexId>> counterexample;
    std::vector<BConnectivityRow> rows;
};

/// For each sampled pair at distance <= e1, the least E2 >= e1 such that a
/// b-chain joins them inside ball(x, E2). A pair with no chain within e2_cap
/// (default 16*e1), or not within e1 at all, comes back as the counterexample.
BConnectivity check_uniform_b_connected(const Space& s, Scaled b, Scaled e1,
                                        std::span<const std::pair<VertexId, VertexId>> samples,
                                        Scaled e2_cap = 0, const Budget& budget = {});

struct PropertyMSample {
    VertexId x;
    Scaled r;
    VertexId y;  // must lie in ball(x, r + scale)
};
struct PropertyMResult {
    bool ok = false;
    Scaled constant = 0;  // max over samples of d(y, B(x,r))
    std::optional<PropertyMSample> counterexample;
};

PropertyMResult check_property_M(const Space& s, std::span<const PropertyMSample> samples,
                                 const Budget& budget = {});

struct DoublingRow {
    Scaled r;
    Rational worst;  // max over sampled centers of mu(B(x,2r)) / mu(B(x,r))
};
struct DoublingReport {
    std::vector<DoublingRow> rows;
    Rational global{1, 1};
};

DoublingReport check_doubling(const Space& s, std::span<const std::pair<VertexId, Scaled>> samples,
                              const Budget& budget = {});

struct ConnectivityResult {
    bool connected = true;
    SubsetRegion part1, part2;  // witness partition with d(part1, part2) >= gap
};

/// Metric connectivity: no nontrivial partition at mutual distance >= gap
/// (default 10 * scale). Edges of the auxiliary graph join vertices at
/// ambient distance < gap.
ConnectivityResult is_connected(const Space& s, const SubsetRegion& a, Scaled gap = 0,
                                const Budget& budget = {});

}  // namespace isolab
