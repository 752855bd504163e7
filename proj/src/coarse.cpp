#include "isolab/coarse.hpp"

namespace isolab {

SubsetRegion thicken_image(const CoarseMap& f, const SubsetRegion& a, Scaled radius,
                           const Budget& budget) {
    SubsetRegion image;
    for (const auto& v : a.sorted()) {
        const VertexId w = f.forward(v);
        image.insert(w, f.codomain.measure(w));
    }
    if (radius <= 0 || image.empty()) return image;
    return neighborhood(f.codomain, image, radius, budget);
}

SubsetRegion pull_back(const CoarseMap& f, const SubsetRegion& b) {
    if (!f.approx_inverse) throw Error("coarse map has no approximate inverse");
    SubsetRegion out;
    for (const auto& v : b.sorted()) {
        const VertexId u = f.approx_inverse(v);
        out.insert(u, f.domain.measure(u));
    }
    return out;
}

QiEstimate estimate_qi_constants(const CoarseMap& f, std::span<const std::pair<VertexId, VertexId>> pairs,
                                 std::span<const VertexId> domain_net,
                                 std::span<const VertexId> codomain_probes, Scaled dist_cap,
                                 const CompareGrid& grid, const Budget& budget) {
    QiEstimate out;
    const Scaled unit_cod = f.codomain.scale();
    for (const auto& [x, y] : pairs) {
        auto d = distance(f.domain, x, y, dist_cap, budget);
        auto dp = distance(f.codomain, f.forward(x), f.forward(y), dist_cap, budget);
        if (!d || !dp) throw Error("sample pair exceeds the distance cap");
        out.rows.push_back({x, y, *d, *dp});
    }
    for (std::int64_t c : grid.constants) {
        bool all = true;
        for (const auto& row : out.rows) {
            // d' <= C d + C S'  and  d <= C d' + C^2 S' (the lower inequality
            // cleared of the division)
            const __int128 upper = static_cast<__int128>(c) * row.d_dom + static_cast<__int128>(c) * unit_cod;
            const __int128 lower = static_cast<__int128>(c) * row.d_cod +
                                   static_cast<__int128>(c) * c * unit_cod;
            if (row.d_cod > upper || row.d_dom > lower) {
                all = false;
                break;
            }
        }
        if (all) {
            out.ok = true;
            out.c2 = c;
            break;
        }
    }
    if (!out.ok) {
        const std::int64_t cmax = grid.constants.back();
        for (const auto& row : out.rows) {
            const __int128 upper = static_cast<__int128>(cmax) * row.d_dom +
                                   static_cast<__int128>(cmax) * unit_cod;
            const __int128 lower = static_cast<__int128>(cmax) * row.d_cod +
                                   static_cast<__int128>(cmax) * cmax * unit_cod;
            if (row.d_cod > upper || row.d_dom > lower) {
                out.violation = {row.x, row.y};
                break;
            }
        }
        return out;
    }

    // clause (a): every codomain probe is within c1 of the image of the net
    SubsetRegion net_image;
    for (const auto& v : domain_net) {
        const VertexId w = f.forward(v);
        net_image.insert(w, f.codomain.measure(w));
    }
    for (const auto& probe : codomain_probes) {
        auto d = distance_to_set(f.codomain, probe, net_image, dist_cap, budget);
        if (!d) {
            out.ok = false;
            out.violation = {probe, probe};
            return out;
        }
        out.c1 = std::max(out.c1, *d);
    }
    return out;
}

MeasureEstimate estimate_measure_constant(const CoarseMap& f, std::span<const VertexId> samples,
                                          const CompareGrid& grid, const Budget& budget) {
    MeasureEstimate out;
    std::vector<std::pair<Measure, Measure>> rows;
    for (const auto& x : samples) {
        const Measure a = ball(f.domain, x, f.domain.scale(), budget).total_measure;
        const Measure b = ball(f.codomain, f.forward(x), f.codomain.scale(), budget).total_measure;
        rows.emplace_back(a, b);
    }
    for (std::int64_t c : grid.constants) {
        bool all = true;
        for (const auto& [a, b] : rows) {
            if (b > c * a || a > c * b) {
                all = false;
                break;
            }
        }
        if (all) {
            out.ok = true;
            out.c3 = c;
            return out;
        }
    }
    const std::int64_t cmax = grid.constants.back();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].second > cmax * rows[i].first || rows[i].first > cmax * rows[i].second) {
            out.violation = samples[i];
            break;
        }
    }
    return out;
}

TransportReport verify_boundary_transport(const CoarseMap& f, const FamilySpec& family, Scaled h,
                                          Scaled h_prime, Scaled thicken_radius, const Budget& budget) {
    TransportReport out;
    const Scaled a = thicken_radius > 0 ? thicken_radius : std::max<Scaled>(f.c1, f.codomain.scale());
    for (const auto& member : family.members) {
        TransportRow row;
        row.name = member.name;
        row.mu_boundary_src = h_boundary(f.domain, member.region, h, budget).total_measure;
        SubsetRegion img = thicken_image(f, member.region, a, budget);
        row.mu_boundary_img = h_boundary(f.codomain, img, h_prime, budget).total_measure;
        if (row.mu_boundary_src > 0) {
            row.ratio_defined = true;
            row.ratio = Rational::of(row.mu_boundary_img, row.mu_boundary_src);
            if (out.k_forward < row.ratio) out.k_forward = row.ratio;
        }
        out.forward.push_back(row);

        if (f.approx_inverse) {
            TransportRow rev;
            rev.name = member.name;
            rev.mu_boundary_src = row.mu_boundary_img;
            SubsetRegion back = pull_back(f, img);
            SubsetRegion thick = back;
            const Scaled a_dom = std::max<Scaled>(f.domain.scale(), f.c1);
            thick = neighborhood(f.domain, back, a_dom, budget);
            rev.mu_boundary_img = h_boundary(f.domain, thick, h, budget).total_measure;
            if (rev.mu_boundary_src > 0) {
                rev.ratio_defined = true;
                rev.ratio = Rational::of(rev.mu_boundary_img, rev.mu_boundary_src);
                if (out.k_reverse < rev.ratio) out.k_reverse = rev.ratio;
            }
            out.reverse.push_back(rev);
        }
    }
    return out;
}

MeasureComparisonReport verify_measure_comparison(const CoarseMap& f, const FamilySpec& family,
                                                  Scaled thicken_radius, const CompareGrid& grid,
                                                  const Budget& budget) {
    MeasureComparisonReport out;
    const Scaled a = thicken_radius > 0 ? thicken_radius : std::max<Scaled>(f.c1, f.codomain.scale());
    for (const auto& member : family.members) {
        TransportRow row;
        row.name = member.name;
        row.mu_boundary_src = member.region.total_measure;
        row.mu_boundary_img = thicken_image(f, member.region, a, budget).total_measure;
        out.rows.push_back(row);
    }
    for (std::int64_t c : grid.constants) {
        bool all = true;
        for (const auto& row : out.rows) {
            if (row.mu_boundary_src > c * row.mu_boundary_img) {
                all = false;
                break;
            }
        }
        if (all) {
            out.ok = true;
            out.c = c;
            return out;
        }
    }
    const std::int64_t cmax = grid.constants.back();
    for (const auto& row : out.rows) {
        if (row.mu_boundary_src > cmax * row.mu_boundary_img) {
            out.violation = row.name;
            break;
        }
    }
    return out;
}

}  // namespace isolab
