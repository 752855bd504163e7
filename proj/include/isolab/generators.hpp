#pragma once

#include <map>

#include <json.hpp>

#include "isolab/coarse.hpp"

namespace isolab {

/// A constructed space together with its named subsets, distinguished points
/// and exact construction counts, so experiments never re-derive arithmetic.
struct GeneratedSpace {
    Space space;
    std::string generator;
    nlohmann::json params;
    nlohmann::json description;
    std::map<std::string, SubsetRegion> sets;
    std::map<std::string, VertexId> points;
};

// ---------------------------------------------------------------------------
// Chained stretched binary trees with linear growth.

struct GluedTreesParams {
    int n_max = 3;
    Scaled scale = 1;
    // Edge between generations k-1 and k of the n-th tree is subdivided into
    // this many unit segments; the default doubles double-exponentially.
    std::function<Scaled(int n, int k)> segment_length;
};

GeneratedSpace gen_glued_trees(const GluedTreesParams& params, const Budget& budget = {});

// ---------------------------------------------------------------------------
// The plane with shortcut subtrees (scale 100; tree edges cost 1, lattice
// edges cost 100).

struct VonKochParams {
    int k_max = 5;
    std::int64_t window_factor = 4;  // sampling window radius around a_k is window_factor * 2^k
};

GeneratedSpace gen_vonkoch(const VonKochParams& params, const Budget& budget = {});

/// Canonical branch decomposition of a tree point: full segment directions
/// (segment level j has length 2^{k-j}) followed by one partial direction
/// when `partial` > 0. The root decomposes to an empty list.
struct AkDecomposition {
    int k = 0;
    std::vector<int> dirs;      // 0:+e1 1:-e1 2:+e2 3:-e2; dirs[j+1] never reverses dirs[j]
    std::int64_t partial = 0;   // steps taken into the last listed direction; 0 = all full
};

std::optional<AkDecomposition> decompose_ak(const VertexId& x, int k);
VertexId recompose_ak(const AkDecomposition& dec);
Scaled ak_depth(const AkDecomposition& dec);  // graph distance to the root a_k
VertexId ak_root(int k);

// ---------------------------------------------------------------------------
// Lattice surgery families.

struct PerforatedParams {
    int d = 2;
    std::vector<std::int64_t> n_list{4, 9, 16, 25};
};

/// Z^d with boxes A_n (side floor(sqrt(n)) along the axis, n across) whose
/// boundary edges are removed except one per boundary tile of side
/// floor(sqrt(n)).
GeneratedSpace gen_perforated(const PerforatedParams& params, const Budget& budget = {});

struct ConstrictedParams {
    int d = 2;
    std::vector<std::int64_t> n_list{8, 16, 32};
};

/// Z^d with constricted double balls C_n = B(x_n, n) ∪ B(x'_n, n), detached
/// from the complement except along the axis Z.e1.
GeneratedSpace gen_constricted(const ConstrictedParams& params, const Budget& budget = {});

struct IbPairParams {
    int d = 2;
    std::vector<std::int64_t> n_list{4, 5, 6, 7, 8, 9};
};

struct IbPair {
    GeneratedSpace x;        // balls A_n attached to the complement only along the axis
    GeneratedSpace x_prime;  // image under the ratio-4 dilation orthogonal to e1
    CoarseMap map;           // the natural vertex map X -> X'
};

IbPair gen_ib_pair(const IbPairParams& params, const Budget& budget = {});

struct CubeChainParams {
    int d = 2;  // the construction is two-dimensional
    std::vector<int> n_list{1, 2, 3};
    bool substituted = false;
    std::function<std::int64_t(int)> side_fn;  // substituted mode; default 2^n
    std::function<std::int64_t(int)> face_fn;  // substituted mode; default n
};

/// Chained cube rows: level n holds n cubes attached to the complement only
/// through a face segment on the axis. Exact mode uses side 2^(2^n) and face
/// min(2^(n^2), side); substituted mode takes user maps and enforces
/// face << side.
GeneratedSpace gen_cube_chain(const CubeChainParams& params, const Budget& budget = {});

/// Plain lattice wrapped as a generated space.
GeneratedSpace gen_zd(int d, Scaled scale = 1);

}  // namespace isolab
