#pragma once

#include <json.hpp>

#include "isolab/generators.hpp"

namespace isolab {

nlohmann::json vertex_to_json(const VertexId& v);
VertexId vertex_from_json(const nlohmann::json& j);

/// Finite spaces: {"scale": S, "vertices": [[c0,c1,c2,c3,tag],...], "edges": [[i,j,len],...]}.
nlohmann::json space_to_json(const Space& s, const Budget& budget = {});

/// Generated spaces: {"generator": name, "params": {...}}.
nlohmann::json generated_to_json(const GeneratedSpace& g);

/// Loads either form; a "generator" key re-runs the named generator.
GeneratedSpace load_space(const nlohmann::json& j, const Budget& budget = {});

/// Named subsets and exact counts of a generated space.
nlohmann::json describe_generated(const GeneratedSpace& g);

/// Regions: {"vertices": [[c...,tag],...], "measure": N}, vertices sorted.
nlohmann::json region_to_json(const SubsetRegion& r);
SubsetRegion region_from_json(const Space& s, const nlohmann::json& j);

nlohmann::json profile_to_json(const ProfileCurve& p);
ProfileCurve profile_from_json(const nlohmann::json& j);

nlohmann::json growth_to_json(const GrowthCurve& g);
GrowthCurve growth_from_json(const nlohmann::json& j);

/// Accepts profile json, growth json, or a plain {"points": [[t, v], ...]}.
Curve curve_from_json(const nlohmann::json& j);

nlohmann::json witness_to_json(const ComparisonWitness& w);

nlohmann::json transport_to_json(const TransportReport& t);
/// Columns: set-name, mu_boundary_src, mu_boundary_img, ratio.
std::string transport_to_csv(const TransportReport& t);

std::string points_to_csv(const std::vector<std::pair<Measure, Measure>>& points);

/// Deterministic serialization: sorted keys, two-space indent, trailing newline.
std::string json_dump_stable(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json read_json_file(const std::string& path);

}  // namespace isolab
