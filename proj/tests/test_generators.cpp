#include <doctest.h>

#include "isolab/generators.hpp"
#include "oracles.hpp"

using namespace isolab;

TEST_CASE("glued trees: construction counts") {
    GeneratedSpace g1 = gen_glued_trees({.n_max = 1});
    // G_1: root + two subdivided edges of length 2; doubled copy shares the leaves
    CHECK(g1.space.finite_support().size() == 8);
    GeneratedSpace g2 = gen_glued_trees({.n_max = 2});
    CHECK(g2.description["per_n"][1]["segments"] == nlohmann::json::array({4, 2}));

    GeneratedSpace g4 = gen_glued_trees({.n_max = 4});
    CHECK(g4.space.finite_support().size() == 1423);
    // the chain is one component
    SubsetRegion all = SubsetRegion::from(g4.space, g4.space.finite_support());
    CHECK(is_connected(g4.space, all, 10).connected);
}

TEST_CASE("glued trees: linear ball growth") {
    GeneratedSpace g = gen_glued_trees({.n_max = 3});
    Lcg rng(2);
    const auto& vs = g.space.finite_support();
    std::vector<Scaled> radii{1, 2, 4, 8, 16, 32, 64, 100};
    for (int i = 0; i < 24; ++i) {
        const VertexId x = vs[rng.below(vs.size())];
        GrowthCurve gc = growth_curve(g.space, x, radii);
        for (const auto& [r, vol] : gc.points) CHECK(vol <= 8 * r);
    }
}

TEST_CASE("glued trees: far diamond poles are distance local maxima") {
    // once a ball swallows one of the doubled-tree cycles, its annulus vertices
    // at the far pole have no nearby complement vertex, so the annulus is not
    // contained in any thin boundary of the enlarged ball
    GeneratedSpace g = gen_glued_trees({.n_max = 3});
    const auto& vs = g.space.finite_support();
    bool witnessed = false;
    Lcg rng(31);
    for (int trial = 0; trial < 60 && !witnessed; ++trial) {
        const VertexId x = vs[rng.below(vs.size())];
        const Scaled r = rng.range(2, 12);
        SubsetRegion ann = annulus(g.space, x, r, r + 1);
        if (ann.empty()) continue;
        SubsetRegion bd = h_boundary(g.space, ball(g.space, x, r + 1), 2);
        for (const auto& v : ann.vertices)
            if (!bd.contains(v)) witnessed = true;
    }
    CHECK(witnessed);
}

TEST_CASE("glued trees: property (M) stays at one step") {
    GeneratedSpace g = gen_glued_trees({.n_max = 3});
    const VertexId root = g.points.at("r_1");
    std::vector<PropertyMSample> samples;
    for (Scaled r : {Scaled{3}, Scaled{9}, Scaled{20}}) {
        for (const auto& y : annulus(g.space, root, r, r + 1).sorted()) samples.push_back({root, r, y});
    }
    PropertyMResult m = check_property_M(g.space, samples);
    CHECK(m.ok);
    CHECK(m.constant <= 2);
}

TEST_CASE("vonkoch builds to depth seven without branch collisions") {
    // generation asserts that branches stay disjoint, so success is the check
    GeneratedSpace g = gen_vonkoch({.k_max = 7});
    CHECK(g.sets.at("S_7").total_measure >= ipow(3, 6));
    CHECK_THROWS_AS(gen_vonkoch({.k_max = 8}), TooLarge);
}

TEST_CASE("vonkoch: roots, spheres and scale") {
    GeneratedSpace g = gen_vonkoch({.k_max = 5});
    CHECK(g.space.scale() == 100);
    CHECK(g.points.at("a_3") == vx(64, 0));
    for (int k = 1; k <= 5; ++k) {
        const auto& sphere = g.sets.at("S_" + std::to_string(k));
        CHECK(sphere.total_measure >= ipow(3, k - 1));
        // every sphere point is a leaf at depth 2^{k+1} - 1
        for (const auto& v : sphere.vertices) {
            auto dec = decompose_ak(v, k);
            REQUIRE(dec);
            CHECK(ak_depth(*dec) == (Scaled{2} << k) - 1);
        }
    }
}

TEST_CASE("vonkoch: tree edges are cheap, lattice edges cost 100") {
    GeneratedSpace g = gen_vonkoch({.k_max = 3});
    const VertexId a3 = g.points.at("a_3");
    CHECK(*distance(g.space, a3, vx(64 + 8, 0), 10000) == 8);
    // a pure lattice move away from every tree
    CHECK(*distance(g.space, vx(0, 50), vx(1, 50), 10000) == 100);
}

TEST_CASE("vonkoch: geodesics from the root stay in the tree") {
    GeneratedSpace g = gen_vonkoch({.k_max = 4});
    for (int k = 1; k <= 4; ++k) {
        const VertexId a = g.points.at("a_" + std::to_string(k));
        const Scaled r_k = (Scaled{2} << k) - 1;
        const VertexId src[1] = {a};
        DistanceMap m = shortest_paths(g.space, src, r_k);
        for (const auto& v : g.sets.at("A_" + std::to_string(k)).sorted()) {
            auto dec = decompose_ak(v, k);
            REQUIRE(dec);
            auto d = m.at(v);
            REQUIRE(d);
            CHECK(*d == ak_depth(*dec));
        }
    }
}

TEST_CASE("decompose round-trips and rejects") {
    SUBCASE("root and simple points") {
        auto root = decompose_ak(ak_root(4), 4);
        REQUIRE(root);
        CHECK(root->dirs.empty());
        CHECK(root->partial == 0);

        auto full = decompose_ak(vx(256 + 16, 0), 4);  // a_4 + 2^4 e1
        REQUIRE(full);
        CHECK(full->dirs == std::vector<int>{0});
        CHECK(full->partial == 0);

        auto straight = decompose_ak(vx(256 + 16 + 8, 0), 4);  // continues along e1
        REQUIRE(straight);
        CHECK(straight->dirs == std::vector<int>{0, 0});
        CHECK(straight->partial == 0);
    }
    SUBCASE("round trip across the whole tree") {
        GeneratedSpace g = gen_vonkoch({.k_max = 4});
        for (int k = 1; k <= 4; ++k) {
            for (const auto& v : g.sets.at("A_" + std::to_string(k)).sorted()) {
                auto dec = decompose_ak(v, k);
                REQUIRE(dec);
                CHECK(recompose_ak(*dec) == v);
            }
        }
    }
    SUBCASE("membership oracle agrees with the walk-built tree") {
        GeneratedSpace g = gen_vonkoch({.k_max = 4});
        for (int k = 1; k <= 4; ++k) {
            const auto& tree = g.sets.at("A_" + std::to_string(k));
            const VertexId a = ak_root(k);
            const std::int64_t w = Scaled{4} << k;
            for (std::int64_t dx = -w; dx <= w; ++dx)
                for (std::int64_t dy = -w; dy <= w; ++dy) {
                    const VertexId v = vx(a.coords[0] + dx, dy);
                    CHECK(static_cast<bool>(decompose_ak(v, k)) == tree.contains(v));
                }
        }
    }
    SUBCASE("points off the tree") {
        CHECK(!decompose_ak(vx(64 + 3, 1), 3));
        CHECK(!decompose_ak(vx(0, 0), 3));
    }
}

TEST_CASE("vonkoch separation bound on sampled tree pairs") {
    GeneratedSpace g = gen_vonkoch({.k_max = 4});
    Lcg rng(6);
    const auto tree = g.sets.at("A_4").sorted();
    for (int i = 0; i < 2000; ++i) {
        const VertexId u = tree[rng.below(tree.size())];
        const VertexId v = tree[rng.below(tree.size())];
        const Scaled du = ak_depth(*decompose_ak(u, 4));
        const Scaled dv = ak_depth(*decompose_ak(v, 4));
        const std::int64_t l1 =
            std::abs(u.coords[0] - v.coords[0]) + std::abs(u.coords[1] - v.coords[1]);
        CHECK(50 * l1 >= du - dv);
    }
}

TEST_CASE("vonkoch is uniformly connected at both step scales") {
    GeneratedSpace g = gen_vonkoch({.k_max = 3});
    // lattice-wide pairs joined by whole-unit chains
    std::vector<std::pair<VertexId, VertexId>> wide{{vx(60, 0), vx(70, 2)}, {vx(0, 0), vx(6, -3)}};
    BConnectivity at_unit = check_uniform_b_connected(g.space, 100, 1000, wide);
    CHECK(at_unit.ok);
    // in-tree pairs joined by cheap tree chains
    const auto tree = g.sets.at("A_3").sorted();
    std::vector<std::pair<VertexId, VertexId>> inside{{tree[0], tree[1]}, {tree[2], tree[5]}};
    BConnectivity at_tree_step = check_uniform_b_connected(g.space, 1, 1000, inside);
    CHECK(at_tree_step.ok);
}

TEST_CASE("perforated: exact counts and example block") {
    GeneratedSpace g = gen_perforated({.d = 2, .n_list = {4, 9, 16, 25}});
    const auto& blocks = g.description["blocks"];
    CHECK(blocks[1]["n"] == 9);
    CHECK(blocks[1]["cells"] == 27);  // 3 x 9 box
    CHECK(blocks[1]["kept_edges"] == 8);
    CHECK(blocks[1]["zd_boundary_edges"] == 24);
    for (const auto& b : blocks) {
        const auto& region = g.sets.at("A_" + std::to_string(b["n"].get<std::int64_t>()));
        CHECK(region.total_measure == b["cells"].get<Measure>());
        CHECK(h_boundary(g.space, region, 1).total_measure ==
              b["boundary_vertex_measure"].get<Measure>());
    }
}

TEST_CASE("perforated: u_n grows") {
    GeneratedSpace g = gen_perforated({.d = 2, .n_list = {4, 9, 16, 25}});
    double prev = 0;
    for (const auto& b : g.description["blocks"]) {
        const double u = b["cells"].get<double>() /
                         (b["kept_edges"].get<double>() * b["kept_edges"].get<double>());
        CHECK(u > prev);
        prev = u;
    }
}

TEST_CASE("perforated in three dimensions") {
    GeneratedSpace g = gen_perforated({.d = 3, .n_list = {4, 9}});
    const auto& b = g.description["blocks"][0];
    CHECK(b["cells"] == 2 * 5 * 5);
    const auto& region = g.sets.at("A_4");
    CHECK(h_boundary(g.space, region, 1).total_measure ==
          b["boundary_vertex_measure"].get<Measure>());
}

TEST_CASE("constricted: equator, poles, connectivity") {
    GeneratedSpace g = gen_constricted({.d = 2, .n_list = {8, 16}});
    // two l1 balls of 145 cells whose centers sit 10 apart: 25 shared cells
    CHECK(g.sets.at("C_8").total_measure == 265);
    for (std::int64_t n : {8, 16}) {
        const auto& c = g.sets.at("C_" + std::to_string(n));
        const Scaled bound = 2 * log2_ceil(n) + 4;
        for (const auto& v : g.sets.at("equator_" + std::to_string(n)).sorted()) {
            auto d = exit_distance(g.space, c, v, 10 * bound);
            REQUIRE(d);
            CHECK(*d <= bound);
        }
        for (const char* pole : {"pole_up_", "pole_dn_"}) {
            auto d = exit_distance(g.space, c, g.points.at(pole + std::to_string(n)), 100 * n);
            REQUIRE(d);
            CHECK(2 * *d >= n);
        }
        CHECK(is_connected(g.space, c, 10).connected);
    }
}

TEST_CASE("ib pair: constant boundary in X, dilated distances in X'") {
    IbPair pair = gen_ib_pair({.d = 2, .n_list = {4, 5, 6}});
    for (std::int64_t n : {4, 5, 6}) {
        const auto& a = pair.x.sets.at("A_" + std::to_string(n));
        CHECK(h_boundary(pair.x.space, a, 1).total_measure == 4);
    }
    // vertical unit edges become chains of four
    const auto c4 = pair.x.points.at("center_4");
    const VertexId up = vx(c4.coords[0], 1);
    CHECK(*distance(pair.x.space, c4, up, 10) == 1);
    CHECK(*distance(pair.x_prime.space, c4, up, 10) == 4);
    CHECK(*distance(pair.x_prime.space, c4, vx(c4.coords[0] + 1, 0), 10) == 1);

    // the map is a quasi-isometry with multiplicative constant at most 4
    std::vector<std::pair<VertexId, VertexId>> pairs{
        {c4, up}, {c4, vx(c4.coords[0] + 2, 1)}, {c4, vx(c4.coords[0] - 1, -2)}};
    const std::vector<VertexId> net{c4, up, vx(c4.coords[0] + 1, 0)};
    VertexId probe = c4;
    probe.tag = 4 + 2;
    QiEstimate est = estimate_qi_constants(pair.map, pairs, net, std::vector<VertexId>{probe}, 1 << 16);
    CHECK(est.ok);
    CHECK(est.c2 <= 4);
    CHECK(est.c1 <= 2);
}

TEST_CASE("ib pair: dilated region matches the subdivision count") {
    IbPair pair = gen_ib_pair({.d = 2, .n_list = {4}});
    const auto& a = pair.x.sets.at("A_4");
    const auto& ap = pair.x_prime.sets.at("A_4");
    // vertical internal edges of the L1 ball of radius 4: each contributes 3 vertices
    std::int64_t vertical = 0;
    for (const auto& v : a.vertices) {
        VertexId up = v;
        up.coords[1] += 1;
        if (a.contains(up)) ++vertical;
    }
    CHECK(ap.total_measure == a.total_measure + 3 * vertical);
}

TEST_CASE("cube chain: exact faces and boundaries") {
    GeneratedSpace g = gen_cube_chain({.n_list = {1, 2}});
    const auto& levels = g.description["levels"];
    CHECK(levels[0]["side"] == 4);
    CHECK(levels[0]["face"] == 2);
    CHECK(levels[1]["side"] == 16);
    CHECK(levels[1]["face"] == 16);
    CHECK(levels[1]["N"] == 512);
    for (const auto& lv : levels) {
        const int n = lv["n"].get<int>();
        const auto& region = g.sets.at("C_" + std::to_string(n));
        CHECK(region.total_measure == lv["N"].get<Measure>());
        CHECK(h_boundary(g.space, region, 1).total_measure == lv["boundary_measure"].get<Measure>());
    }
}

TEST_CASE("cube chain: substituted mode enforces face << side") {
    CHECK_THROWS_AS(gen_cube_chain({.n_list = {3},
                                    .substituted = true,
                                    .side_fn = [](int) { return std::int64_t{8}; },
                                    .face_fn = [](int) { return std::int64_t{5}; }}),
                    InvalidScaling);
    GeneratedSpace ok = gen_cube_chain({.n_list = {3}, .substituted = true});
    CHECK(ok.description["levels"][0]["face"] == 3);
}

TEST_CASE("boundary measures at h = 2 and h = 4 stay comparable on the families") {
    GeneratedSpace pf = gen_perforated({.d = 2, .n_list = {4, 9, 16, 25}});
    GeneratedSpace cs = gen_constricted({.d = 2, .n_list = {8, 16}});
    IbPair ib = gen_ib_pair({.d = 2, .n_list = {4, 6, 8}});
    std::vector<std::pair<const Space*, const SubsetRegion*>> family;
    for (const auto& [name, region] : pf.sets) family.push_back({&pf.space, &region});
    for (const auto& [name, region] : cs.sets)
        if (name.rfind("C_", 0) == 0) family.push_back({&cs.space, &region});
    for (const auto& [name, region] : ib.x.sets) family.push_back({&ib.x.space, &region});
    for (const auto& [space, region] : family) {
        const Measure b2 = h_boundary(*space, *region, 2).total_measure;
        const Measure b4 = h_boundary(*space, *region, 4).total_measure;
        CHECK(b2 <= b4);
        CHECK(b4 <= 8 * b2);
    }
}

TEST_CASE("generated spaces keep bounded doubling constants") {
    GeneratedSpace pf = gen_perforated({.d = 2, .n_list = {4, 9}});
    std::vector<std::pair<VertexId, Scaled>> samples{{vx(0, 0), 4}, {vx(20, 3), 8}};
    CHECK(check_doubling(pf.space, samples).global <= Rational::whole(8));

    GeneratedSpace gt = gen_glued_trees({.n_max = 3});
    std::vector<std::pair<VertexId, Scaled>> tree_samples{{gt.points.at("r_1"), 8},
                                                          {gt.points.at("r_2"), 16}};
    CHECK(check_doubling(gt.space, tree_samples).global <= Rational::whole(16));

    GeneratedSpace vk = gen_vonkoch({.k_max = 3});
    std::vector<std::pair<VertexId, Scaled>> vk_samples{{vx(64, 0), 100}, {vx(64, 0), 200},
                                                        {vx(0, 10), 200}};
    CHECK(check_doubling(vk.space, vk_samples).global <= Rational::whole(16));

    GeneratedSpace cc = gen_cube_chain({.n_list = {2, 3}, .substituted = true});
    const auto& c2 = cc.sets.at("C_2").sorted();
    std::vector<std::pair<VertexId, Scaled>> cc_samples{{c2.front(), 2}, {c2.front(), 4},
                                                        {vx(0, 0), 8}};
    CHECK(check_doubling(cc.space, cc_samples).global <= Rational::whole(16));

    IbPair ib = gen_ib_pair({.d = 2, .n_list = {4, 6}});
    const VertexId c4 = ib.x.points.at("center_4");
    std::vector<std::pair<VertexId, Scaled>> ib_samples{{c4, 2}, {c4, 8}, {vx(0, 0), 8}};
    CHECK(check_doubling(ib.x.space, ib_samples).global <= Rational::whole(16));
    CHECK(check_doubling(ib.x_prime.space, ib_samples).global <= Rational::whole(16));
}

TEST_CASE("glued trees accept substituted segment lengths") {
    GluedTreesParams p;
    p.n_max = 5;
    p.segment_length = [](int, int k) { return Scaled{1} << k; };
    GeneratedSpace g = gen_glued_trees(p);
    CHECK(g.description["per_n"][4]["segments"] == nlohmann::json::array({2, 4, 8, 16, 32}));
    SubsetRegion all = SubsetRegion::from(g.space, g.space.finite_support());
    CHECK(is_connected(g.space, all, 10).connected);
}
