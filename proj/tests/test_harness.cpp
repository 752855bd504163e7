#include <doctest.h>

#include "isolab/experiments.hpp"
#include "isolab/serialize.hpp"

using namespace isolab;

TEST_CASE("experiment registry covers every named claim") {
    const auto& names = experiment_names();
    CHECK(names.size() == 11);
    for (const auto& name : names) CHECK_NOTHROW(experiment_defaults(name));
    CHECK_THROWS_AS(experiment_defaults("nope"), Error);
}

TEST_CASE("reports are byte-deterministic") {
    ExperimentSpec spec;
    spec.name = "connected_equality_points";
    Report a = run_experiment(spec);
    Report b = run_experiment(spec);
    CHECK(a.passed());
    CHECK(json_dump_stable(report_to_json(a)) == json_dump_stable(report_to_json(b)));
}

TEST_CASE("unknown experiments are rejected, not crashed") {
    Report r = run_experiment({.name = "does_not_exist"});
    CHECK(r.status == "invalid-input");
}

TEST_CASE("budget failures surface as reports") {
    ExperimentSpec spec;
    spec.name = "tree_linear_growth";
    spec.budget = Budget{50};
    Report r = run_experiment(spec);
    CHECK(r.status == "budget-exceeded");
    CHECK(r.constants.contains("error"));
}

TEST_CASE("pass/fail is recomputable from the stored assertions") {
    Report r = run_experiment({.name = "oracle_h_independence"});
    bool all = !r.assertions.empty();
    for (const auto& a : r.assertions) all = all && a.pass;
    CHECK(all == r.passed());
}

TEST_CASE("report emission") {
    Report r = run_experiment({.name = "connected_equality_points"});
    SUBCASE("json is schema-shaped and stable on disk") {
        const std::string path = "/tmp/isolab_report_test.json";
        emit_report(r, path, "json");
        nlohmann::json j = read_json_file(path);
        CHECK(j["experiment"] == "connected_equality_points");
        CHECK(j.contains("assertions"));
        CHECK(j.contains("claim"));
        emit_report(r, path, "json");
        CHECK(json_dump_stable(read_json_file(path)) == json_dump_stable(j));
    }
    SUBCASE("csv lists assertions and profile tables") {
        const std::string csv = report_to_csv(r);
        CHECK(csv.rfind("assertion,pass\n", 0) == 0);
    }
    SUBCASE("unknown format") {
        CHECK_THROWS_AS(emit_report(r, "/tmp/x", "yaml"), Error);
    }
}

TEST_CASE("profile and growth serialization round-trips") {
    Space z2 = make_zd(2);
    GrowthCurve g = growth_curve(z2, vx(0, 0), std::vector<Scaled>{1, 2, 3});
    GrowthCurve g2 = growth_from_json(growth_to_json(g));
    CHECK(g2.points == g.points);

    ProfileCurve p;
    p.kind = ProfileCurve::Kind::family_lower;
    p.h = 2;
    p.provenance = "balls";
    p.points = {{5, 8}, {13, 12}};
    ProfileCurve p2 = profile_from_json(profile_to_json(p));
    CHECK(p2.kind == p.kind);
    CHECK(p2.h == p.h);
    CHECK(p2.points == p.points);

    CHECK(points_to_csv(p.points) == "t,value\n5,8\n13,12\n");
}

TEST_CASE("space serialization round-trips") {
    GeneratedSpace gt = gen_glued_trees({.n_max = 2});
    nlohmann::json explicit_form = space_to_json(gt.space);
    GeneratedSpace loaded = load_space(explicit_form);
    CHECK(loaded.space.finite_support().size() == gt.space.finite_support().size());
    // distances survive the round trip
    const VertexId a = gt.points.at("r_1"), b = gt.points.at("rp_2");
    CHECK(*distance(loaded.space, a, b, 1000) == *distance(gt.space, a, b, 1000));

    nlohmann::json gen_form = generated_to_json(gt);
    CHECK(gen_form["generator"] == "glued_trees");
    GeneratedSpace regen = load_space(gen_form);
    CHECK(regen.space.finite_support().size() == gt.space.finite_support().size());

    nlohmann::json desc = describe_generated(regen);
    CHECK(desc["sets"].contains("gen_2_1"));
    CHECK(desc["points"].contains("r_1"));
}

TEST_CASE("region serialization round-trips") {
    Space z2 = make_zd(2);
    SubsetRegion b = ball(z2, vx(1, -1), 2);
    nlohmann::json j = region_to_json(b);
    CHECK(j["measure"] == b.total_measure);
    SubsetRegion back = region_from_json(z2, j);
    CHECK(back.total_measure == b.total_measure);
    for (const auto& v : b.vertices) CHECK(back.contains(v));
    j["measure"] = 1;
    CHECK_THROWS_AS(region_from_json(z2, j), Error);
}

TEST_CASE("transport report serialization") {
    Space z2 = make_zd(2);
    CoarseMap id;
    id.domain = z2;
    id.codomain = z2;
    id.forward = [](const VertexId& v) { return v; };
    id.approx_inverse = [](const VertexId& v) { return v; };
    FamilySpec fam{"balls", {{"b1", ball(z2, vx(0, 0), 1)}, {"b2", ball(z2, vx(0, 0), 2)}}};
    TransportReport tr = verify_boundary_transport(id, fam, 1, 1, 1);
    nlohmann::json j = transport_to_json(tr);
    CHECK(j["forward"].size() == 2);
    CHECK(j["forward"][0]["set"] == "b1");
    const std::string csv = transport_to_csv(tr);
    CHECK(csv.rfind("set-name,mu_boundary_src,mu_boundary_img,ratio\n", 0) == 0);
    CHECK(csv.find("b2,") != std::string::npos);
}

TEST_CASE("witness serialization carries the grid verdict") {
    Curve f;
    for (std::int64_t t = 1; t <= 64; t *= 2) f.points.emplace_back(t, Rational::whole(t));
    ComparisonWitness w = compare(f, f);
    nlohmann::json j = witness_to_json(w);
    CHECK(j["relation"] == "dominates");
    CHECK(j["C"][0] == 1);
    CHECK(j["counterexample"].is_null());
}

TEST_CASE("svg plots") {
    SUBCASE("a constant curve renders as one horizontal step line") {
        PlotSeries s{"flat", {{1, Rational::whole(5)}, {10, Rational::whole(5)}, {100, Rational::whole(5)}}};
        const std::string svg = emit_plot(std::vector<PlotSeries>{s});
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("flat") != std::string::npos);
        CHECK(svg.find("<path") != std::string::npos);
    }
    SUBCASE("log-log growth of the plane is annotated near slope two") {
        Space z2 = make_zd(2);
        std::vector<Scaled> radii;
        for (Scaled r = 1; r <= 64; r *= 2) radii.push_back(r);
        GrowthCurve g = growth_curve(z2, vx(0, 0), radii);
        PlotOptions opt;
        opt.log_log = true;
        opt.annotate_slope = true;
        const std::string svg = emit_plot(std::vector<PlotSeries>{series_from("V", g)}, opt);
        const auto pos = svg.find("slope ");
        REQUIRE(pos != std::string::npos);
        const double slope = std::stod(svg.substr(pos + 6));
        CHECK(slope > 1.6);
        CHECK(slope < 2.4);
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(emit_plot(std::vector<PlotSeries>{}), EmptyCurve);
        PlotSeries empty{"none", {}};
        CHECK_THROWS_AS(emit_plot(std::vector<PlotSeries>{empty}), EmptyCurve);
    }
    SUBCASE("plots are deterministic") {
        PlotSeries s{"u_n", {{10, Rational::of(10, 36)}, {27, Rational::of(27, 64)},
                             {68, Rational::of(68, 100)}, {125, Rational::of(125, 144)}}};
        CHECK(emit_plot(std::vector<PlotSeries>{s}) == emit_plot(std::vector<PlotSeries>{s}));
    }
}
