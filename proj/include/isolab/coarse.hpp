#pragma once

#include "isolab/profile.hpp"

namespace isolab {

/// A vertex map between two spaces together with its estimated quasi-isometry
/// and measure constants. The additive slack in the distance inequalities is
/// c2 codomain scaled units; c1 is the net constant of the image.
struct CoarseMap {
    Space domain, codomain;
    std::function<VertexId(const VertexId&)> forward;
    std::function<VertexId(const VertexId&)> approx_inverse;  // nearest preimage, lexicographic ties
    Scaled c1 = 0;
    std::int64_t c2 = 1;
    std::int64_t c3 = 1;
};

/// Neighborhood of the pointwise image f(A) at radius a in the codomain.
SubsetRegion thicken_image(const CoarseMap& f, const SubsetRegion& a, Scaled radius,
                           const Budget& budget = {});

/// Pointwise preimage of a codomain region through approx_inverse.
SubsetRegion pull_back(const CoarseMap& f, const SubsetRegion& b);

struct QiRow {
    VertexId x, y;
    Scaled d_dom = 0, d_cod = 0;
};
struct QiEstimate {
    bool ok = false;
    std::int64_t c2 = 0;  // smallest grid constant satisfying both inequalities
    Scaled c1 = 0;        // net constant: max over probes of d'(probe, f(net))
    std::optional<std::pair<VertexId, VertexId>> violation;
    std::vector<QiRow> rows;
};

/// Smallest grid C2 with C2^{-1} d(x,y) - C2*S' <= d'(f(x),f(y)) <= C2 d(x,y) + C2*S'
/// over the sampled pairs, plus the net constant measured on codomain probes
/// against the images of `domain_net`.
QiEstimate estimate_qi_constants(const CoarseMap& f, std::span<const std::pair<VertexId, VertexId>> pairs,
                                 std::span<const VertexId> domain_net,
                                 std::span<const VertexId> codomain_probes, Scaled dist_cap,
                                 const CompareGrid& grid = CompareGrid::powers(10),
                                 const Budget& budget = {});

struct MeasureEstimate {
    bool ok = false;
    std::int64_t c3 = 0;
    std::optional<VertexId> violation;
};

/// Smallest grid C3 with C3^{-1} mu(B(x,S)) <= mu'(B(f(x),S')) <= C3 mu(B(x,S)).
MeasureEstimate estimate_measure_constant(const CoarseMap& f, std::span<const VertexId> samples,
                                          const CompareGrid& grid = CompareGrid::powers(10),
                                          const Budget& budget = {});

struct TransportRow {
    std::string name;
    Measure mu_boundary_src = 0;
    Measure mu_boundary_img = 0;
    bool ratio_defined = false;
    Rational ratio{0, 1};
};
struct TransportReport {
    std::vector<TransportRow> forward;   // mu'(boundary_{h'} [f(A)]_a) vs mu(boundary_h A)
    std::vector<TransportRow> reverse;   // via the approximate inverse
    Rational k_forward{0, 1};
    Rational k_reverse{0, 1};
};

/// Per-set boundary measures on both sides and the max ratio K; the reverse
/// direction uses the approximate inverse when available.
TransportReport verify_boundary_transport(const CoarseMap& f, const FamilySpec& family, Scaled h,
                                          Scaled h_prime, Scaled thicken_radius = 0,
                                          const Budget& budget = {});

struct MeasureComparisonReport {
    bool ok = false;
    std::int64_t c = 0;  // smallest grid C with mu(A) <= C * mu'([f(A)]_{c1})
    std::optional<std::string> violation;  // member name at grid max
    std::vector<TransportRow> rows;        // measures reused: src = mu(A), img = mu'([f(A)]_a)
};

MeasureComparisonReport verify_measure_comparison(const CoarseMap& f, const FamilySpec& family,
                                                  Scaled thicken_radius = 0,
                                                  const CompareGrid& grid = CompareGrid::powers(10),
                                                  const Budget& budget = {});

}  // namespace isolab
