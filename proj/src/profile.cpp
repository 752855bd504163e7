#include "isolab/profile.hpp"

#include <bit>
#include <limits>

namespace isolab {

const char* kind_name(ProfileCurve::Kind k) {
    switch (k) {
        case ProfileCurve::Kind::exact: return "exact";
        case ProfileCurve::Kind::exact_connected: return "exact-connected";
        case ProfileCurve::Kind::family_lower: return "family-lower";
        case ProfileCurve::Kind::family_upper: return "family-upper";
    }
    return "?";
}

ProfileCurve::Kind kind_from_name(const std::string& name) {
    if (name == "exact") return ProfileCurve::Kind::exact;
    if (name == "exact-connected") return ProfileCurve::Kind::exact_connected;
    if (name == "family-lower") return ProfileCurve::Kind::family_lower;
    if (name == "family-upper") return ProfileCurve::Kind::family_upper;
    throw Error("unknown profile kind '" + name + "'");
}

namespace {

constexpr Measure kNoValue = std::numeric_limits<Measure>::max();

}  // namespace

ProfileCurve exact_profile(const Space& s, Scaled h, const ExactProfileOptions& opt) {
    if (h < 1) throw Error("exact profile requires h >= 1 scaled unit");
    if (!s.is_finite()) throw TooLarge("exact profile needs a finite space");
    const auto& support = s.finite_support();
    const int n = static_cast<int>(support.size());
    if (n == 0) throw TooLarge("exact profile on an empty space");
    if (n > 22) throw TooLarge("exact profile enumeration bound is 22 vertices");

    const Scaled gap = opt.gap > 0 ? opt.gap : 10 * s.scale();
    const Scaled reach = std::max(h, gap - 1);

    // Per-vertex reach masks; distances computed once, capped at max(h, gap-1).
    std::vector<std::uint32_t> close(n, 0), gap_adj(n, 0);
    std::vector<Measure> mu(n, 0);
    std::unordered_map<VertexId, int, VertexHash> index;
    for (int i = 0; i < n; ++i) index.emplace(support[i], i);
    for (int i = 0; i < n; ++i) {
        mu[i] = s.measure(support[i]);
        const VertexId src[1] = {support[i]};
        DistanceMap m = shortest_paths(s, src, reach, opt.budget);
        for (const auto& [v, d] : m.dist) {
            auto it = index.find(v);
            if (it == index.end()) continue;
            const std::uint32_t bit = std::uint32_t{1} << it->second;
            if (d <= h) close[i] |= bit;
            if (d < gap) gap_adj[i] |= bit;
        }
    }

    Measure total = 0;
    for (int i = 0; i < n; ++i) total += mu[i];
    const Measure half = total / 2;

    ProfileCurve out;
    out.kind = opt.connected_only ? ProfileCurve::Kind::exact_connected : ProfileCurve::Kind::exact;
    out.h = h;
    out.provenance = opt.connected_only
                         ? "metrically connected subsets (gap=" + std::to_string(gap) + ")"
                         : "all subsets";
    if (half < 1) return out;

    std::vector<Measure> best(static_cast<std::size_t>(half) + 1, kNoValue);

    // Gray-code walk: each step flips one vertex, so boundary membership only
    // changes on that vertex's close mask.
    std::vector<int> in_count(n, 0);
    std::vector<char> in_boundary(n, 0);
    std::vector<int> close_size(n, 0);
    for (int i = 0; i < n; ++i) close_size[i] = std::popcount(close[i]);
    std::uint32_t cur = 0;
    Measure mu_a = 0, boundary = 0;

    auto is_connected_mask = [&](std::uint32_t a) {
        const int start = std::countr_zero(a);
        std::uint32_t seen = std::uint32_t{1} << start;
        std::uint32_t frontier = seen;
        while (frontier) {
            std::uint32_t nxt = 0;
            std::uint32_t f = frontier;
            while (f) {
                const int v = std::countr_zero(f);
                f &= f - 1;
                nxt |= gap_adj[v];
            }
            nxt &= a & ~seen;
            seen |= nxt;
            frontier = nxt;
        }
        return seen == a;
    };

    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < limit; ++i) {
        const int v = std::countr_zero(i);
        const std::uint32_t vbit = std::uint32_t{1} << v;
        const bool adding = (cur & vbit) == 0;
        cur ^= vbit;
        mu_a += adding ? mu[v] : -mu[v];
        std::uint32_t touched = close[v];
        while (touched) {
            const int x = std::countr_zero(touched);
            touched &= touched - 1;
            in_count[x] += adding ? 1 : -1;
            const bool now = in_count[x] >= 1 && in_count[x] < close_size[x];
            if (now != static_cast<bool>(in_boundary[x])) {
                boundary += now ? mu[x] : -mu[x];
                in_boundary[x] = now;
            }
        }
        if (mu_a < 1 || 2 * mu_a > total) continue;
        if (opt.connected_only && !is_connected_mask(cur)) continue;
        Measure& slot = best[static_cast<std::size_t>(mu_a)];
        if (boundary < slot) slot = boundary;
    }

    Measure running = kNoValue;
    std::vector<std::pair<Measure, Measure>> rev;
    for (Measure t = half; t >= 1; --t) {
        running = std::min(running, best[static_cast<std::size_t>(t)]);
        if (running != kNoValue) rev.emplace_back(t, running);
    }
    out.points.assign(rev.rbegin(), rev.rend());
    return out;
}

FamilyProfileResult family_profile(const Space& s, const FamilySpec& family, Scaled h, FamilyMode mode,
                                   const Budget& budget) {
    if (family.members.empty()) throw Error("family profile needs a nonempty family");
    FamilyProfileResult out;
    out.curve.kind = mode == FamilyMode::lower ? ProfileCurve::Kind::family_lower
                                               : ProfileCurve::Kind::family_upper;
    out.curve.h = h;
    out.curve.provenance = family.name;

    for (const auto& member : family.members) {
        SubsetRegion b = h_boundary(s, member.region, h, budget);
        out.rows.push_back({member.name, member.region.total_measure, b.total_measure});
    }
    std::vector<std::pair<Measure, Measure>> pts;  // (member measure, boundary)
    for (const auto& row : out.rows) pts.emplace_back(row.measure, row.boundary);
    std::sort(pts.begin(), pts.end());

    if (mode == FamilyMode::lower) {
        // value at t = min boundary over members with measure >= t
        Measure suffix = kNoValue;
        std::vector<std::pair<Measure, Measure>> rev;
        for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
            suffix = std::min(suffix, it->second);
            if (rev.empty() || rev.back().first != it->first) rev.emplace_back(it->first, suffix);
            else rev.back().second = suffix;
        }
        out.curve.points.assign(rev.rbegin(), rev.rend());
    } else {
        Measure prefix = 0;
        for (const auto& [m, b] : pts) {
            prefix = std::max(prefix, b);
            if (!out.curve.points.empty() && out.curve.points.back().first == m)
                out.curve.points.back().second = prefix;
            else
                out.curve.points.emplace_back(m, prefix);
        }
    }
    return out;
}

std::optional<Measure> profile_value_at(const ProfileCurve& c, Measure t) {
    if (c.points.empty()) return std::nullopt;
    if (c.kind == ProfileCurve::Kind::family_lower || c.kind == ProfileCurve::Kind::exact ||
        c.kind == ProfileCurve::Kind::exact_connected) {
        // inf over measure >= t: first sampled point at or above t
        for (const auto& [m, v] : c.points) {
            if (m >= t) return v;
        }
        return std::nullopt;
    }
    // sup over measure <= t: last sampled point at or below t
    std::optional<Measure> out;
    for (const auto& [m, v] : c.points) {
        if (m <= t) out = v;
        else break;
    }
    return out;
}

Measure profile_value_checked(const ProfileCurve& c, Measure t) {
    auto v = profile_value_at(c, t);
    if (!v) throw EmptyAtT("no family member qualifies at t = " + std::to_string(t));
    return *v;
}

Scaled PhiCurve::eval(Measure t) const {
    if (growth.empty() || t > max_volume) throw OutOfRange("phi evaluated above the sampled growth range");
    for (const auto& [r, vol] : growth) {
        if (vol >= t) return r;
    }
    throw OutOfRange("phi evaluation failed");
}

PhiCurve phi_from_growth(const GrowthCurve& g) {
    PhiCurve out;
    out.growth = g.points;
    for (std::size_t i = 0; i + 1 < out.growth.size(); ++i) {
        if (out.growth[i].second > out.growth[i + 1].second)
            throw Error("growth curve must be nondecreasing");
    }
    if (!out.growth.empty()) out.max_volume = out.growth.back().second;
    Measure last = -1;
    for (const auto& [r, vol] : out.growth) {
        if (vol != last) {
            out.points.emplace_back(vol, out.eval(vol));
            last = vol;
        }
    }
    return out;
}

Curve to_curve(const ProfileCurve& p) {
    Curve c;
    for (const auto& [t, v] : p.points) c.points.emplace_back(t, Rational::whole(v));
    return c;
}

Curve to_curve(const GrowthCurve& g) {
    Curve c;
    for (const auto& [r, v] : g.points) c.points.emplace_back(r, Rational::whole(v));
    return c;
}

Curve sqrt_curve(std::span<const std::int64_t> ts) {
    Curve c;
    for (auto t : ts) c.points.emplace_back(t, Rational::whole(isqrt_floor(t)));
    return c;
}

Curve id_over_phi_curve(const PhiCurve& phi, std::span<const std::int64_t> ts) {
    Curve c;
    for (auto t : ts) {
        if (t > phi.max_volume || t < 1) continue;
        const Scaled r = phi.eval(t);
        c.points.emplace_back(t, Rational::of(t, std::max<Scaled>(r, 1)));
    }
    return c;
}

const char* relation_name(ComparisonWitness::Relation r) {
    switch (r) {
        case ComparisonWitness::Relation::dominates: return "dominates";
        case ComparisonWitness::Relation::equivalent: return "equivalent";
        case ComparisonWitness::Relation::refuted: return "refuted";
    }
    return "?";
}

namespace {

std::optional<Rational> eval_floor(const Curve& g, std::int64_t t) {
    if (g.points.empty() || t < g.points.front().first) return std::nullopt;
    // largest sample <= t; beyond the top sample this under-estimates a
    // nondecreasing curve, which is the safe direction for domination checks
    Rational out = g.points.front().second;
    for (const auto& [s, v] : g.points) {
        if (s <= t) out = v;
        else break;
    }
    return out;
}

struct PairCheck {
    bool verified = false;
    bool any_eligible = false;
    std::int64_t t_min = 0, t_max = 0;
    std::optional<std::int64_t> first_violation;  // within g's sampled range only
};

PairCheck check_pair(const Curve& f, const Curve& g, std::int64_t c1, std::int64_t c2) {
    PairCheck out;
    out.verified = true;
    const std::int64_t g_max = g.points.back().first;
    for (const auto& [t, fv] : f.points) {
        const std::int64_t s_arg = c2 > std::numeric_limits<std::int64_t>::max() / std::max<std::int64_t>(t, 1)
                                       ? std::numeric_limits<std::int64_t>::max()
                                       : c2 * t;
        auto gv = eval_floor(g, s_arg);
        if (!gv) continue;
        if (!out.any_eligible) {
            out.any_eligible = true;
            out.t_min = t;
        }
        out.t_max = t;
        const Rational bound = gv->times(Rational::whole(c1));
        if (bound < fv) {
            out.verified = false;
            if (!out.first_violation && s_arg <= g_max) out.first_violation = t;
        }
    }
    if (!out.any_eligible) out.verified = false;
    return out;
}

}  // namespace

ComparisonWitness compare(const Curve& f, const Curve& g, const CompareGrid& grid) {
    if (f.points.empty() || g.points.empty()) throw EmptyCurve("compare needs nonempty curves");
    if (grid.constants.empty()) throw Error("compare needs a nonempty constant grid");
    if (f.points.back().first < g.points.front().first ||
        g.points.back().first < f.points.front().first)
        throw Error("compare requires overlapping t-ranges");

    struct Candidate {
        std::int64_t c1, c2;
    };
    std::vector<Candidate> order;
    for (auto c1 : grid.constants)
        for (auto c2 : grid.constants) order.push_back({c1, c2});
    std::sort(order.begin(), order.end(), [](const Candidate& a, const Candidate& b) {
        const __int128 pa = static_cast<__int128>(a.c1) * a.c2;
        const __int128 pb = static_cast<__int128>(b.c1) * b.c2;
        if (pa != pb) return pa < pb;
        return a.c1 < b.c1;
    });

    ComparisonWitness w;
    for (const auto& cand : order) {
        PairCheck pc = check_pair(f, g, cand.c1, cand.c2);
        if (pc.verified) {
            w.relation = ComparisonWitness::Relation::dominates;
            w.c1 = cand.c1;
            w.c2 = cand.c2;
            w.t_min = pc.t_min;
            w.t_max = pc.t_max;
            return w;
        }
    }
    // refuted relative to this grid: witness from the costliest pair that has
    // an in-range violation
    w.relation = ComparisonWitness::Relation::refuted;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        PairCheck pc = check_pair(f, g, it->c1, it->c2);
        if (pc.first_violation) {
            w.c1 = it->c1;
            w.c2 = it->c2;
            w.t_min = pc.t_min;
            w.t_max = pc.t_max;
            w.counterexample = pc.first_violation;
            break;
        }
    }
    w.note = "refuted relative to grid max " + std::to_string(grid.constants.back());
    return w;
}

ComparisonWitness compare_equivalent(const Curve& f, const Curve& g, const CompareGrid& grid) {
    ComparisonWitness fw = compare(f, g, grid);
    ComparisonWitness bw = compare(g, f, grid);
    ComparisonWitness w;
    if (fw.holds() && bw.holds()) {
        w.relation = ComparisonWitness::Relation::equivalent;
        w.c1 = fw.c1;
        w.c2 = fw.c2;
        w.c3 = bw.c1;
        w.c4 = bw.c2;
        w.t_min = std::max(fw.t_min, bw.t_min);
        w.t_max = std::min(fw.t_max, bw.t_max);
        return w;
    }
    w = fw.holds() ? bw : fw;
    w.relation = ComparisonWitness::Relation::refuted;
    w.note += fw.holds() ? " (reverse direction failed)" : " (forward direction failed)";
    return w;
}

ComparisonWitness strong_profile_check(const ProfileCurve& profile, const GrowthCurve& growth,
                                       const CompareGrid& grid) {
    PhiCurve phi = phi_from_growth(growth);
    std::vector<std::int64_t> ts;
    for (const auto& [t, v] : profile.points) ts.push_back(t);
    Curve ref = id_over_phi_curve(phi, ts);
    if (ref.points.empty())
        throw OutOfRange("no profile sample lies inside the growth range");
    ComparisonWitness w = compare(ref, to_curve(profile), grid);
    w.note = w.note.empty() ? "f = t/phi(t) vs profile" : w.note + "; f = t/phi(t) vs profile";
    return w;
}

AnnulusReport annulus_inf_check(const Space& s, const VertexId& x, Scaled r, const Budget& budget) {
    const Scaled unit = s.scale();
    if (r < unit) throw Error("annulus check requires r >= one true unit");
    AnnulusReport out;
    out.center = x;
    out.r = r;

    const VertexId src[1] = {x};
    DistanceMap m = shortest_paths(s, src, 2 * r, budget);
    std::vector<std::pair<Scaled, Measure>> by_dist;
    for (const auto& [v, d] : m.dist) by_dist.emplace_back(d, s.measure(v));
    std::sort(by_dist.begin(), by_dist.end());
    auto measure_between = [&](Scaled lo_excl, Scaled hi_incl) {
        Measure acc = 0;
        for (const auto& [d, mu] : by_dist) {
            if (d > lo_excl && d <= hi_incl) acc += mu;
        }
        return acc;
    };
    for (const auto& [d, mu] : by_dist) {
        if (d <= r) out.ball_measure += mu;
    }
    if (out.ball_measure <= 0) throw Error("empty ball in annulus check");

    bool first = true;
    for (Scaled r2 = r + unit; r2 <= 2 * r; r2 += unit) {
        const Measure a = measure_between(r2 - unit, r2);
        if (first || a < out.best_annulus_measure) {
            out.best_annulus_measure = a;
            out.best_annulus_r2 = r2;
            first = false;
        }
    }
    if (!first) out.annulus_ratio = Rational::of(out.best_annulus_measure * r, out.ball_measure * unit);

    bool sfirst = true;
    for (Scaled r2 = r; r2 <= 2 * r; r2 += unit) {
        SubsetRegion b;
        for (const auto& [v, d] : m.dist) {
            if (d <= r2) b.insert(v, s.measure(v));
        }
        SubsetRegion bd = h_boundary(s, b, unit, budget);
        if (sfirst || bd.total_measure < out.best_sphere_measure) {
            out.best_sphere_measure = bd.total_measure;
            out.best_sphere_r2 = r2;
            sfirst = false;
        }
    }
    if (!sfirst) out.sphere_ratio = Rational::of(out.best_sphere_measure * r, out.ball_measure * unit);
    return out;
}

}  // namespace isolab
