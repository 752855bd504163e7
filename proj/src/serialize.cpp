#include "isolab/serialize.hpp"

#include <fstream>
#include <sstream>

namespace isolab {

nlohmann::json vertex_to_json(const VertexId& v) {
    return nlohmann::json::array({v.coords[0], v.coords[1], v.coords[2], v.coords[3], v.tag});
}

VertexId vertex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() < 1 || j.size() > 5) throw Error("vertex json must be [c...,tag]");
    VertexId v;
    const std::size_t n = j.size();
    for (std::size_t i = 0; i + 1 < n && i < 4; ++i) v.coords[i] = j[i].get<std::int64_t>();
    v.tag = j[n - 1].get<std::int32_t>();
    if (n == 1) {
        v.coords[0] = j[0].get<std::int64_t>();
        v.tag = 0;
    }
    return v;
}

nlohmann::json space_to_json(const Space& s, const Budget& budget) {
    const auto& support = s.finite_support();
    if (support.size() > budget.max_vertices) throw BudgetExceeded("space too large to serialize");
    std::unordered_map<VertexId, std::size_t, VertexHash> index;
    nlohmann::json vertices = nlohmann::json::array();
    for (std::size_t i = 0; i < support.size(); ++i) {
        index.emplace(support[i], i);
        vertices.push_back(vertex_to_json(support[i]));
    }
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t i = 0; i < support.size(); ++i) {
        s.for_neighbors(support[i], [&](const VertexId& q, Scaled len) {
            auto it = index.find(q);
            if (it == index.end() || it->second < i) return;  // emit each undirected edge once
            edges.push_back(nlohmann::json::array({i, it->second, len}));
        });
    }
    nlohmann::json out;
    out["scale"] = s.scale();
    out["vertices"] = vertices;
    out["edges"] = edges;
    bool counting = true;
    nlohmann::json measures = nlohmann::json::array();
    for (const auto& v : support) {
        const Measure m = s.measure(v);
        measures.push_back(m);
        if (m != 1) counting = false;
    }
    if (!counting) out["measures"] = measures;
    return out;
}

nlohmann::json generated_to_json(const GeneratedSpace& g) {
    if (g.generator == "finite") return space_to_json(g.space);
    return nlohmann::json{{"generator", g.generator}, {"params", g.params}};
}

namespace {

GeneratedSpace load_finite(const nlohmann::json& j) {
    std::vector<VertexId> vertices;
    for (const auto& vj : j.at("vertices")) vertices.push_back(vertex_from_json(vj));
    std::vector<std::tuple<std::size_t, std::size_t, Scaled>> edges;
    for (const auto& ej : j.at("edges"))
        edges.emplace_back(ej[0].get<std::size_t>(), ej[1].get<std::size_t>(), ej[2].get<Scaled>());
    std::vector<Measure> measures;
    if (j.contains("measures"))
        for (const auto& m : j["measures"]) measures.push_back(m.get<Measure>());
    GeneratedSpace out;
    out.generator = "finite";
    out.params = nlohmann::json::object();
    out.description = {{"vertex_count", vertices.size()}, {"edge_count", edges.size()}};
    out.space = make_finite("finite", j.value("scale", Scaled{1}), std::move(vertices), edges,
                            std::move(measures));
    return out;
}

template <class T>
std::vector<T> list_of(const nlohmann::json& j, const char* key, std::vector<T> fallback) {
    if (!j.contains(key)) return fallback;
    std::vector<T> out;
    for (const auto& x : j.at(key)) out.push_back(x.get<T>());
    return out;
}

}  // namespace

GeneratedSpace load_space(const nlohmann::json& j, const Budget& budget) {
    if (!j.contains("generator")) return load_finite(j);
    const std::string name = j.at("generator").get<std::string>();
    const nlohmann::json p = j.value("params", nlohmann::json::object());
    if (name == "glued_trees") {
        GluedTreesParams gp;
        gp.n_max = p.value("n_max", 3);
        gp.scale = p.value("scale", Scaled{1});
        return gen_glued_trees(gp, budget);
    }
    if (name == "vonkoch") {
        VonKochParams vp;
        vp.k_max = p.value("k_max", 5);
        vp.window_factor = p.value("window_factor", std::int64_t{4});
        return gen_vonkoch(vp, budget);
    }
    if (name == "perforated") {
        PerforatedParams pp;
        pp.d = p.value("d", 2);
        pp.n_list = list_of<std::int64_t>(p, "n_list", pp.n_list);
        return gen_perforated(pp, budget);
    }
    if (name == "constricted") {
        ConstrictedParams cp;
        cp.d = p.value("d", 2);
        cp.n_list = list_of<std::int64_t>(p, "n_list", cp.n_list);
        return gen_constricted(cp, budget);
    }
    if (name == "ib_pair") {
        IbPairParams ip;
        ip.d = p.value("d", 2);
        ip.n_list = list_of<std::int64_t>(p, "n_list", ip.n_list);
        IbPair pair = gen_ib_pair(ip, budget);
        const std::string member = p.value("member", "x");
        if (member == "x") return pair.x;
        if (member == "x_prime") return pair.x_prime;
        throw Error("ib_pair member must be 'x' or 'x_prime'");
    }
    if (name == "cube_chain") {
        CubeChainParams cp;
        cp.n_list = list_of<int>(p, "n_list", cp.n_list);
        cp.substituted = p.value("substituted", false);
        return gen_cube_chain(cp, budget);
    }
    if (name == "zd") return gen_zd(p.value("d", 2), p.value("scale", Scaled{1}));
    throw Error("unknown generator '" + name + "'");
}

nlohmann::json describe_generated(const GeneratedSpace& g) {
    nlohmann::json sets = nlohmann::json::object();
    for (const auto& [name, region] : g.sets)
        sets[name] = {{"size", region.size()}, {"measure", region.total_measure}};
    nlohmann::json points = nlohmann::json::object();
    for (const auto& [name, v] : g.points) points[name] = vertex_to_json(v);
    return nlohmann::json{{"generator", g.generator},
                          {"params", g.params},
                          {"description", g.description},
                          {"scale", g.space.scale()},
                          {"sets", sets},
                          {"points", points}};
}

nlohmann::json region_to_json(const SubsetRegion& r) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : r.sorted()) vertices.push_back(vertex_to_json(v));
    return nlohmann::json{{"vertices", vertices}, {"measure", r.total_measure}};
}

SubsetRegion region_from_json(const Space& s, const nlohmann::json& j) {
    SubsetRegion r;
    for (const auto& vj : j.at("vertices")) {
        const VertexId v = vertex_from_json(vj);
        r.insert(v, s.measure(v));
    }
    if (j.contains("measure") && j["measure"].get<Measure>() != r.total_measure)
        throw Error("region measure does not match its vertices");
    return r;
}

nlohmann::json profile_to_json(const ProfileCurve& p) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& [t, v] : p.points) points.push_back(nlohmann::json::array({t, v}));
    return nlohmann::json{{"kind", kind_name(p.kind)},
                          {"h", p.h},
                          {"provenance", p.provenance},
                          {"points", points}};
}

ProfileCurve profile_from_json(const nlohmann::json& j) {
    ProfileCurve p;
    p.kind = kind_from_name(j.value("kind", "exact"));
    p.h = j.value("h", Scaled{1});
    p.provenance = j.value("provenance", "");
    for (const auto& pt : j.at("points"))
        p.points.emplace_back(pt[0].get<Measure>(), pt[1].get<Measure>());
    return p;
}

nlohmann::json growth_to_json(const GrowthCurve& g) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& [r, v] : g.points) points.push_back(nlohmann::json::array({r, v}));
    return nlohmann::json{{"center", vertex_to_json(g.center)}, {"points", points}};
}

GrowthCurve growth_from_json(const nlohmann::json& j) {
    GrowthCurve g;
    if (j.contains("center")) g.center = vertex_from_json(j["center"]);
    for (const auto& pt : j.at("points")) g.points.emplace_back(pt[0].get<Scaled>(), pt[1].get<Measure>());
    return g;
}

Curve curve_from_json(const nlohmann::json& j) {
    Curve c;
    for (const auto& pt : j.at("points")) {
        if (pt.size() == 3)
            c.points.emplace_back(pt[0].get<std::int64_t>(),
                                  Rational::of(pt[1].get<std::int64_t>(), pt[2].get<std::int64_t>()));
        else
            c.points.emplace_back(pt[0].get<std::int64_t>(), Rational::whole(pt[1].get<std::int64_t>()));
    }
    std::sort(c.points.begin(), c.points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return c;
}

nlohmann::json witness_to_json(const ComparisonWitness& w) {
    nlohmann::json out{{"relation", relation_name(w.relation)},
                       {"C", nlohmann::json::array({w.c1, w.c2, w.c3, w.c4})},
                       {"range", nlohmann::json::array({w.t_min, w.t_max})}};
    out["counterexample"] = w.counterexample ? nlohmann::json(*w.counterexample) : nlohmann::json();
    if (!w.note.empty()) out["note"] = w.note;
    return out;
}

namespace {

nlohmann::json transport_rows(const std::vector<TransportRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row{{"set", r.name},
                           {"mu_boundary_src", r.mu_boundary_src},
                           {"mu_boundary_img", r.mu_boundary_img}};
        row["ratio"] = r.ratio_defined ? nlohmann::json::array({r.ratio.num, r.ratio.den})
                                       : nlohmann::json();
        out.push_back(std::move(row));
    }
    return out;
}

void transport_csv_rows(std::ostringstream& os, const std::vector<TransportRow>& rows) {
    for (const auto& r : rows) {
        os << r.name << "," << r.mu_boundary_src << "," << r.mu_boundary_img << ",";
        if (r.ratio_defined) os << r.ratio.num << "/" << r.ratio.den;
        os << "\n";
    }
}

}  // namespace

nlohmann::json transport_to_json(const TransportReport& t) {
    return nlohmann::json{{"forward", transport_rows(t.forward)},
                          {"reverse", transport_rows(t.reverse)},
                          {"k_forward", nlohmann::json::array({t.k_forward.num, t.k_forward.den})},
                          {"k_reverse", nlohmann::json::array({t.k_reverse.num, t.k_reverse.den})}};
}

std::string transport_to_csv(const TransportReport& t) {
    std::ostringstream os;
    os << "set-name,mu_boundary_src,mu_boundary_img,ratio\n";
    transport_csv_rows(os, t.forward);
    if (!t.reverse.empty()) {
        os << "# reverse\n";
        transport_csv_rows(os, t.reverse);
    }
    return os.str();
}

std::string points_to_csv(const std::vector<std::pair<Measure, Measure>>& points) {
    std::ostringstream os;
    os << "t,value\n";
    for (const auto& [t, v] : points) os << t << "," << v << "\n";
    return os.str();
}

std::string json_dump_stable(const nlohmann::json& j) {
    return j.dump(2) + "\n";  // nlohmann objects keep keys sorted
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw Error("write to '" + path + "' failed");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "'");
    nlohmann::json j;
    f >> j;
    return j;
}

}  // namespace isolab
