#include <doctest.h>

#include "isolab/generators.hpp"

using namespace isolab;

namespace {

CoarseMap identity_map(const Space& s) {
    CoarseMap f;
    f.domain = s;
    f.codomain = s;
    f.forward = [](const VertexId& v) { return v; };
    f.approx_inverse = [](const VertexId& v) { return v; };
    f.c1 = 0;
    return f;
}

}  // namespace

TEST_CASE("thicken image") {
    Space z2 = make_zd(2);
    CoarseMap id = identity_map(z2);
    SubsetRegion a = ball(z2, vx(0, 0), 2);
    SUBCASE("identity at zero radius") {
        SubsetRegion t = thicken_image(id, a, 0);
        CHECK(t.total_measure == a.total_measure);
    }
    SUBCASE("empty set stays empty") { CHECK(thicken_image(id, SubsetRegion{}, 3).empty()); }
    SUBCASE("positive radius thickens") {
        CHECK(thicken_image(id, a, 1).total_measure == ball(z2, vx(0, 0), 3).total_measure);
    }
}

TEST_CASE("identity map constants") {
    Space z2 = make_zd(2);
    CoarseMap id = identity_map(z2);
    std::vector<std::pair<VertexId, VertexId>> pairs{{vx(0, 0), vx(3, 1)}, {vx(-2, 2), vx(5, 5)}};
    const std::vector<VertexId> net{vx(0, 0), vx(1, 0), vx(0, 1)};
    QiEstimate est = estimate_qi_constants(id, pairs, net, net, 1000);
    CHECK(est.ok);
    CHECK(est.c2 == 1);
    CHECK(est.c1 == 0);

    MeasureEstimate me = estimate_measure_constant(id, net);
    CHECK(me.ok);
    CHECK(me.c3 == 1);
}

TEST_CASE("a collapsing map is refuted") {
    Space z2 = make_zd(2);
    CoarseMap crush = identity_map(z2);
    crush.forward = [](const VertexId&) { return vx(0, 0); };
    // the pair distance exceeds the grid maximum squared, so no constant fits
    std::vector<std::pair<VertexId, VertexId>> pairs{{vx(0, 0), vx(300, 0)}};
    const std::vector<VertexId> net{vx(0, 0)};
    QiEstimate est = estimate_qi_constants(crush, pairs, net, net, 1000, CompareGrid::powers(4));
    CHECK(!est.ok);
    CHECK(est.violation);
}

TEST_CASE("identity transport has K = 1") {
    Space z2 = make_zd(2);
    CoarseMap id = identity_map(z2);
    FamilySpec fam{"balls", {}};
    for (Scaled r : {Scaled{1}, Scaled{3}})
        fam.members.push_back({"r" + std::to_string(r), ball(z2, vx(0, 0), r)});
    TransportReport tr = verify_boundary_transport(id, fam, 1, 1, 1);
    // thickening by one then taking the boundary can only help the image side
    CHECK(tr.k_forward <= Rational::whole(2));
    MeasureComparisonReport mc = verify_measure_comparison(id, fam, 0);
    CHECK(mc.ok);
    CHECK(mc.c == 1);
}

TEST_CASE("measure loss is caught at the grid maximum") {
    Space z2 = make_zd(2);
    CoarseMap crush = identity_map(z2);
    crush.forward = [](const VertexId&) { return vx(0, 0); };
    FamilySpec fam{"big ball", {{"b", ball(z2, vx(0, 0), 8)}}};
    MeasureComparisonReport mc = verify_measure_comparison(crush, fam, 0, CompareGrid::powers(3));
    CHECK(!mc.ok);
    CHECK(mc.violation);
}

TEST_CASE("ball transport sandwich under the dilation map") {
    IbPair pair = gen_ib_pair({.d = 2, .n_list = {4, 5}});
    pair.map.c1 = 2;
    const std::int64_t c2 = 4;
    const VertexId c = pair.x.points.at("center_5");
    for (Scaled r : {Scaled{3}, Scaled{5}}) {
        SubsetRegion img = thicken_image(pair.map, ball(pair.x.space, c, r), pair.map.c1);
        // inner ball of radius r/c2 - c1 and outer of radius c2 r + c1
        const Scaled inner = r / c2 - pair.map.c1;
        SubsetRegion outer = ball(pair.x_prime.space, c, c2 * r + pair.map.c1);
        if (inner >= 0) {
            for (const auto& v : ball(pair.x_prime.space, c, inner).vertices) CHECK(img.contains(v));
        }
        for (const auto& v : img.vertices) CHECK(outer.contains(v));
    }
}

TEST_CASE("Hausdorff-equivalent maps tighten to additive constants") {
    Space z2 = make_zd(2);
    CoarseMap shift = identity_map(z2);
    shift.forward = [](const VertexId& v) { return vx(v.coords[0] + 1, v.coords[1]); };
    shift.approx_inverse = [](const VertexId& v) { return vx(v.coords[0] - 1, v.coords[1]); };
    shift.c1 = 1;
    const VertexId x = vx(0, 0);
    for (Scaled r : {Scaled{2}, Scaled{4}}) {
        SubsetRegion img = thicken_image(shift, ball(z2, x, r), 1);
        for (const auto& v : ball(z2, shift.forward(x), r - 1).vertices) CHECK(img.contains(v));
        SubsetRegion outer = ball(z2, shift.forward(x), r + 1);
        for (const auto& v : img.vertices) CHECK(outer.contains(v));
    }
}

TEST_CASE("transport across the dilation map stays bounded") {
    IbPair pair = gen_ib_pair({.d = 2, .n_list = {4, 5, 6, 7}});
    pair.map.c1 = 2;
    FamilySpec fam{"A_n", {}};
    for (std::int64_t n : {4, 5, 6, 7})
        fam.members.push_back({"A_" + std::to_string(n), pair.x.sets.at("A_" + std::to_string(n))});
    TransportReport tr = verify_boundary_transport(pair.map, fam, 1, 1, pair.map.c1);
    CHECK(tr.k_forward <= Rational::whole(16));
    CHECK(tr.k_reverse.num > 0);
    for (const auto& row : tr.forward) CHECK(row.ratio_defined);

    MeasureComparisonReport mc = verify_measure_comparison(pair.map, fam, pair.map.c1);
    CHECK(mc.ok);
    CHECK(mc.c <= 4);
}

TEST_CASE("forgetful map from the weighted plane to the plain lattice") {
    GeneratedSpace vk = gen_vonkoch({.k_max = 3});
    CoarseMap forget;
    forget.domain = vk.space;
    forget.codomain = make_zd(2, 100);  // lattice reweighted to match the scale
    forget.forward = [](const VertexId& v) { return v; };
    forget.approx_inverse = [](const VertexId& v) { return v; };
    forget.c1 = 0;

    std::vector<std::pair<VertexId, VertexId>> pairs{{vx(64, 0), vx(70, 0)}, {vx(0, 0), vx(4, 4)}};
    const std::vector<VertexId> net{vx(64, 0), vx(65, 0)};
    QiEstimate est = estimate_qi_constants(forget, pairs, net, net, 1 << 20);
    CHECK(est.ok);
    CHECK(est.c2 <= 128);

    FamilySpec fam{"balls at the root", {}};
    for (Scaled r : {Scaled{200}, Scaled{400}})
        fam.members.push_back({"r" + std::to_string(r), ball(vk.space, vx(64, 0), r)});
    TransportReport tr = verify_boundary_transport(forget, fam, 100, 100, 100);
    CHECK(tr.k_forward.num > 0);  // finite, defined on every row
    for (const auto& row : tr.forward) CHECK(row.ratio_defined);
}

TEST_CASE("growth is preserved under the dilation map") {
    IbPair pair = gen_ib_pair({.d = 2, .n_list = {4, 5, 6, 7, 8}});
    const auto& balls = pair.x.description["balls"];
    const std::int64_t x_free =
        balls.back()["center_x"].get<std::int64_t>() + balls.back()["n"].get<std::int64_t>() + 60;
    std::vector<Scaled> radii{2, 4, 8, 16};
    GrowthCurve gx = growth_curve(pair.x.space, vx(x_free, 0), radii);
    GrowthCurve gxp = growth_curve(pair.x_prime.space, vx(x_free, 0), radii);
    ComparisonWitness w = compare_equivalent(to_curve(gx), to_curve(gxp), CompareGrid::powers(6));
    CHECK(w.relation == ComparisonWitness::Relation::equivalent);
}
