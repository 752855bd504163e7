#include <doctest.h>

#include "isolab/profile.hpp"
#include "oracles.hpp"

using namespace isolab;

namespace {

Space cycle(int n) {
    std::vector<VertexId> vs;
    std::vector<std::tuple<std::size_t, std::size_t, Scaled>> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back(vx(i));
        es.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n), 1});
    }
    return make_finite("c" + std::to_string(n), 1, vs, es);
}

Space path(int n) {
    std::vector<VertexId> vs;
    std::vector<std::tuple<std::size_t, std::size_t, Scaled>> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back(vx(i));
        if (i) es.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i), 1});
    }
    return make_finite("p" + std::to_string(n), 1, vs, es);
}

Measure value_at(const ProfileCurve& c, Measure t) {
    auto v = profile_value_at(c, t);
    REQUIRE(v);
    return *v;
}

}  // namespace

// The brute-force oracle is the reference for everything below; its own
// frozen values come first.
TEST_CASE("oracle values on the 8-cycle") {
    Space c8 = cycle(8);
    auto prof = oracle::brute_profile(c8, 1, false, 10);
    CHECK(prof.at(1) == 3);
    CHECK(prof.at(2) == 4);
    CHECK(prof.at(3) == 4);
    CHECK(prof.at(4) == 4);
}

TEST_CASE("engine matches the oracle on the 8-cycle and K2") {
    Space c8 = cycle(8);
    ProfileCurve p = exact_profile(c8, 1);
    CHECK(value_at(p, 1) == 3);
    CHECK(value_at(p, 2) == 4);
    CHECK(value_at(p, 3) == 4);
    CHECK(value_at(p, 4) == 4);

    Space k2 = path(2);
    ProfileCurve pk = exact_profile(k2, 1);
    REQUIRE(pk.points.size() == 1);
    CHECK(pk.points[0] == std::pair<Measure, Measure>{1, 2});
}

TEST_CASE("engine matches the oracle on random graphs") {
    Lcg rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Space g = oracle::random_graph(rng, 2 + static_cast<int>(rng.below(11)));
        for (Scaled h : {Scaled{1}, Scaled{2}}) {
            ProfileCurve engine = exact_profile(g, h);
            auto ref = oracle::brute_profile(g, h, false, 10);
            REQUIRE(engine.points.size() == ref.size());
            for (const auto& [t, v] : engine.points) CHECK(ref.at(t) == v);
        }
        // connected restriction as well
        ProfileCurve conn = exact_profile(g, 1, {.connected_only = true, .gap = 4});
        auto ref_conn = oracle::brute_profile(g, 1, true, 4);
        REQUIRE(conn.points.size() == ref_conn.size());
        for (const auto& [t, v] : conn.points) CHECK(ref_conn.at(t) == v);
    }
}

TEST_CASE("connected restriction dominates and meets the profile") {
    Space p6 = path(6);
    ProfileCurve all = exact_profile(p6, 1);
    ProfileCurve conn = exact_profile(p6, 1, {.connected_only = true});
    bool equality = false;
    for (const auto& [t, v] : all.points) {
        const Measure cv = value_at(conn, t);
        CHECK(cv >= v);
        if (cv == v) equality = true;
    }
    CHECK(equality);
}

TEST_CASE("profile size guard") {
    std::vector<VertexId> vs;
    std::vector<std::tuple<std::size_t, std::size_t, Scaled>> es;
    for (int i = 0; i < 23; ++i) {
        vs.push_back(vx(i));
        if (i) es.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i), 1});
    }
    Space big = make_finite("p23", 1, vs, es);
    CHECK_THROWS_AS(exact_profile(big, 1), TooLarge);
    CHECK_THROWS_AS(exact_profile(make_zd(2), 1), TooLarge);
}

TEST_CASE("family profiles") {
    Space z2 = make_zd(2);
    SUBCASE("singleton family is flat at its boundary value") {
        FamilySpec fam{"one ball", {{"b", ball(z2, vx(0, 0), 2)}}};
        FamilyProfileResult r = family_profile(z2, fam, 1, FamilyMode::lower);
        REQUIRE(r.curve.points.size() == 1);
        CHECK(r.curve.points[0].first == 13);
        CHECK(r.curve.points[0].second == h_boundary(z2, fam.members[0].region, 1).total_measure);
        CHECK(profile_value_at(r.curve, 5).has_value());
        CHECK(!profile_value_at(r.curve, 14).has_value());  // no member that large
        CHECK_THROWS_AS(profile_value_checked(r.curve, 14), EmptyAtT);
    }
    SUBCASE("ball family values grow like the radius") {
        FamilySpec fam{"balls", {}};
        for (Scaled r = 1; r <= 10; ++r)
            fam.members.push_back({"r" + std::to_string(r), ball(z2, vx(0, 0), r)});
        FamilyProfileResult r = family_profile(z2, fam, 1, FamilyMode::lower);
        // value at t = mu(B(r)) is the boundary of B(r): 8r + 4
        for (const auto& [t, v] : r.curve.points) {
            const Scaled rad = (isqrt_floor(2 * t - 1) - 1) / 2;
            CHECK(v == 8 * rad + 4);
        }
        // upper mode dominates lower pointwise
        FamilyProfileResult up = family_profile(z2, fam, 1, FamilyMode::upper);
        for (const auto& [t, v] : r.curve.points) CHECK(*profile_value_at(up.curve, t) >= v);
    }
}

TEST_CASE("exact profile is below any family profile") {
    Space c12 = cycle(12);
    ProfileCurve exact = exact_profile(c12, 1);
    FamilySpec fam{"arcs", {}};
    for (int len : {2, 3, 5}) {
        SubsetRegion arc;
        for (int i = 0; i < len; ++i) arc.insert(vx(i), 1);
        fam.members.push_back({"arc" + std::to_string(len), arc});
    }
    FamilyProfileResult r = family_profile(c12, fam, 1, FamilyMode::lower);
    for (const auto& [t, v] : r.curve.points) CHECK(value_at(exact, t) <= v);
}

TEST_CASE("phi is the step right-inverse of growth") {
    SUBCASE("identity growth") {
        GrowthCurve g;
        for (Scaled r = 1; r <= 10; ++r) g.points.emplace_back(r, r);
        PhiCurve phi = phi_from_growth(g);
        for (Measure t = 1; t <= 10; ++t) CHECK(phi.eval(t) == t);
    }
    SUBCASE("lattice growth") {
        Space z2 = make_zd(2);
        GrowthCurve g = growth_curve(z2, vx(0, 0), std::vector<Scaled>{1, 2, 3});
        PhiCurve phi = phi_from_growth(g);
        CHECK(phi.eval(6) == 2);
        CHECK(phi.eval(5) == 1);
        CHECK(phi.eval(25) == 3);
        CHECK_THROWS_AS(phi.eval(26), OutOfRange);
        // adjunction at sampled points
        for (const auto& [r, vol] : g.points) CHECK(phi.eval(vol) <= r);
        for (const auto& [t, r] : phi.points) {
            Measure v = 0;
            for (const auto& [rr, vv] : g.points)
                if (rr == r) v = vv;
            CHECK(v >= t);
        }
    }
    SUBCASE("flat then jump") {
        GrowthCurve g;
        g.points = {{1, 3}, {2, 3}, {3, 3}, {4, 9}};
        PhiCurve phi = phi_from_growth(g);
        CHECK(phi.eval(2) == 1);
        CHECK(phi.eval(3) == 1);
        CHECK(phi.eval(4) == 4);
    }
}

namespace {

Curve linear_curve(std::int64_t lo, std::int64_t hi, std::int64_t scale_num = 1) {
    Curve c;
    for (std::int64_t t = lo; t <= hi; t *= 2) c.points.emplace_back(t, Rational::whole(scale_num * t));
    return c;
}

}  // namespace

TEST_CASE("compare basics") {
    Curve f = linear_curve(1, 1 << 12);
    SUBCASE("reflexivity with unit constants") {
        ComparisonWitness w = compare(f, f);
        CHECK(w.relation == ComparisonWitness::Relation::dominates);
        CHECK(w.c1 == 1);
        CHECK(w.c2 == 1);
    }
    SUBCASE("t against 2t") {
        Curve g = linear_curve(1, 1 << 12, 2);
        ComparisonWitness w = compare(f, g);
        CHECK(w.relation == ComparisonWitness::Relation::dominates);
        CHECK(w.c1 == 1);
        CHECK(w.c2 == 1);
    }
    SUBCASE("t against sqrt(t) refutes on a wide range with a small grid") {
        std::vector<std::int64_t> ts;
        for (std::int64_t t = 4; t <= 1'000'000; t *= 2) ts.push_back(t);
        Curve g = sqrt_curve(ts);
        Curve ff;
        for (auto t : ts) ff.points.emplace_back(t, Rational::whole(t));
        ComparisonWitness w = compare(ff, g, CompareGrid::powers(4));
        CHECK(w.relation == ComparisonWitness::Relation::refuted);
        REQUIRE(w.counterexample);
        // the first violation sits past C1^2 * C2, toward the top of the range
        CHECK(*w.counterexample > 4096);
    }
}

TEST_CASE("witness constants compose transitively") {
    Lcg rng(9);
    std::vector<std::int64_t> ts;
    for (std::int64_t t = 1; t <= 1 << 10; t *= 2) ts.push_back(t);
    Curve f, g, h;
    for (auto t : ts) {
        f.points.emplace_back(t, Rational::whole(t));
        g.points.emplace_back(t, Rational::whole(2 * t + static_cast<std::int64_t>(rng.below(3))));
        h.points.emplace_back(t, Rational::whole(5 * t));
    }
    ComparisonWitness fg = compare(f, g);
    ComparisonWitness gh = compare(g, h);
    REQUIRE(fg.holds());
    REQUIRE(gh.holds());
    const std::int64_t c1 = fg.c1 * gh.c1, c2 = fg.c2 * gh.c2;
    for (const auto& [t, v] : f.points) {
        if (c2 * t > h.points.back().first) break;
        Rational hv{0, 1};
        for (const auto& [s, w] : h.points)
            if (s <= c2 * t) hv = w;
        CHECK(v <= hv.times(Rational::whole(c1)));
    }
}

TEST_CASE("equivalence runs both directions") {
    Curve f = linear_curve(1, 1 << 10);
    Curve g = linear_curve(1, 1 << 10, 3);
    ComparisonWitness w = compare_equivalent(f, g);
    CHECK(w.relation == ComparisonWitness::Relation::equivalent);
    CHECK(w.c3 <= 4);  // 3t <= 4 * t at matching samples
}

TEST_CASE("strong profile check on a small lattice window") {
    Space g44 = [] {
        std::vector<VertexId> vs;
        std::vector<std::tuple<std::size_t, std::size_t, Scaled>> es;
        auto idx = [](int x, int y) { return static_cast<std::size_t>(y * 4 + x); };
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x) vs.push_back(vx(x, y));
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x) {
                if (x + 1 < 4) es.push_back({idx(x, y), idx(x + 1, y), 1});
                if (y + 1 < 4) es.push_back({idx(x, y), idx(x, y + 1), 1});
            }
        return make_finite("g44", 1, vs, es);
    }();
    ProfileCurve prof = exact_profile(g44, 1);
    GrowthCurve growth = growth_curve(g44, vx(1, 1), std::vector<Scaled>{1, 2, 3, 4, 5, 6});
    ComparisonWitness w = strong_profile_check(prof, growth);
    CHECK(w.holds());
    CHECK(w.c1 * w.c2 <= 16);
}

TEST_CASE("annulus infimum bounds") {
    Space z1 = make_zd(1);
    AnnulusReport a1 = annulus_inf_check(z1, vx(0), 10);
    CHECK(a1.best_annulus_measure == 2);
    CHECK(a1.annulus_ratio <= Rational::whole(1));

    Space z2 = make_zd(2);
    AnnulusReport a2 = annulus_inf_check(z2, vx(0, 0), 8);
    CHECK(a2.best_annulus_r2 == 9);  // annuli grow with r', the first is smallest
    CHECK(a2.annulus_ratio <= Rational::whole(2));
    CHECK(a2.sphere_ratio <= Rational::whole(4));
    CHECK(a2.best_sphere_measure >= 4);
}
