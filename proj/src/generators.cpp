#include "isolab/generators.hpp"

namespace isolab {

namespace {

// Lattice directions: 0:+e1 1:-e1 2:+e2 3:-e2 4:+e3 5:-e3 6:+e4 7:-e4.
VertexId step(const VertexId& v, int dir) {
    VertexId q = v;
    q.coords[dir / 2] += (dir % 2 == 0) ? 1 : -1;
    return q;
}
int opposite(int dir) { return dir ^ 1; }

std::int64_t l1(const VertexId& a, const VertexId& b) {
    std::int64_t s = 0;
    for (int i = 0; i < 4; ++i) {
        const std::int64_t d = a.coords[i] - b.coords[i];
        s += d < 0 ? -d : d;
    }
    return s;
}

bool on_axis(const VertexId& v, int d) {
    for (int i = 1; i < d; ++i)
        if (v.coords[i] != 0) return false;
    return true;
}

// All lattice points with |p - center|_1 <= r in the first d coordinates.
void for_l1_ball(const VertexId& center, std::int64_t r, int d,
                 const std::function<void(const VertexId&)>& fn) {
    VertexId p = center;
    std::function<void(int, std::int64_t)> rec = [&](int axis, std::int64_t left) {
        if (axis == d - 1) {
            for (std::int64_t o = -left; o <= left; ++o) {
                p.coords[axis] = center.coords[axis] + o;
                fn(p);
            }
            return;
        }
        for (std::int64_t o = -left; o <= left; ++o) {
            p.coords[axis] = center.coords[axis] + o;
            rec(axis + 1, left - (o < 0 ? -o : o));
        }
    };
    rec(0, r);
}

void for_box(std::span<const std::int64_t> lo, std::span<const std::int64_t> hi, int d,
             const std::function<void(const VertexId&)>& fn) {
    VertexId p;
    std::function<void(int)> rec = [&](int axis) {
        if (axis == d) {
            fn(p);
            return;
        }
        for (std::int64_t c = lo[axis]; c <= hi[axis]; ++c) {
            p.coords[axis] = c;
            rec(axis + 1);
        }
    };
    rec(0);
}

using Adjacency = std::unordered_map<VertexId, std::vector<std::pair<VertexId, Scaled>>, VertexHash>;

Space space_from_adjacency(std::string name, Scaled scale, std::shared_ptr<Adjacency> adj) {
    std::vector<VertexId> support;
    support.reserve(adj->size());
    for (const auto& [v, _] : *adj) support.push_back(v);
    Space s(std::move(name), scale,
            [adj](const VertexId& v, const Space::NeighborVisitor& fn) {
                auto it = adj->find(v);
                if (it == adj->end()) return;
                for (const auto& [q, len] : it->second) fn(q, len);
            });
    s.with_finite_support(std::move(support));
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Glued stretched trees.

GeneratedSpace gen_glued_trees(const GluedTreesParams& params, const Budget& budget) {
    const int n_max = params.n_max;
    if (n_max < 1) throw Error("glued trees need n_max >= 1");
    auto segment = params.segment_length;
    if (!segment) {
        if (n_max > 4) throw TooLarge("exact stretched trees are built for n_max <= 4");
        segment = [](int n, int k) { return Scaled{1} << (std::int64_t{1} << (n - k)); };
    }

    // Tree node of generation g (index idx) in copy `c` of the n-th tree.
    // Last generations of the two copies are identified, and the far root of
    // each doubled tree is identified with the root of the next one.
    auto node = [&](int n, int c, int g, std::int64_t idx) {
        if (g == n) c = 0;
        if (g == 0 && c == 1 && n + 1 <= n_max) return VertexId{{n + 1, 0, 0, 0}, 0};
        return VertexId{{n, g, idx, 0}, c};
    };
    auto subdiv = [&](int n, int c, int g, std::int64_t child_idx, Scaled p) {
        return VertexId{{n, g, child_idx, p}, c + 2};  // tags 2/3 keep interior points distinct
    };

    // Size check before building.
    std::size_t predicted = 1;
    for (int n = 1; n <= n_max; ++n) {
        std::size_t tree = 0;
        for (int g = 1; g <= n; ++g)
            tree += static_cast<std::size_t>((std::int64_t{1} << g) * segment(n, g));
        predicted += 2 * tree - (std::size_t{1} << n) + 1;
        if (predicted > budget.max_vertices) throw BudgetExceeded("glued trees exceed the vertex budget");
    }

    auto adj = std::make_shared<Adjacency>();
    auto add_edge = [&](const VertexId& u, const VertexId& v, Scaled len) {
        (*adj)[u].emplace_back(v, len);
        (*adj)[v].emplace_back(u, len);
    };

    GeneratedSpace out;
    for (int n = 1; n <= n_max; ++n) {
        for (int c = 0; c < 2; ++c) {
            for (int g = 1; g <= n; ++g) {
                const Scaled seg = segment(n, g);
                if (seg < 1) throw Error("segment length must be >= 1");
                for (std::int64_t child = 0; child < (std::int64_t{1} << g); ++child) {
                    VertexId prev = node(n, c, g - 1, child >> 1);
                    for (Scaled p = 1; p <= seg; ++p) {
                        VertexId cur = p == seg ? node(n, c, g, child) : subdiv(n, c, g, child, p);
                        add_edge(prev, cur, params.scale);
                        prev = cur;
                    }
                }
            }
        }
        out.points["r_" + std::to_string(n)] = node(n, 0, 0, 0);
        out.points["rp_" + std::to_string(n)] = node(n, 1, 0, 0);
        for (int g = 0; g <= n; ++g) {
            SubsetRegion gen_set;
            for (std::int64_t idx = 0; idx < (std::int64_t{1} << g); ++idx) {
                gen_set.insert(node(n, 0, g, idx), 1);
                gen_set.insert(node(n, 1, g, idx), 1);
            }
            out.sets["gen_" + std::to_string(n) + "_" + std::to_string(g)] = std::move(gen_set);
        }
    }

    out.generator = "glued_trees";
    out.params = {{"n_max", n_max}, {"scale", params.scale}};
    nlohmann::json per_n = nlohmann::json::array();
    for (int n = 1; n <= n_max; ++n) {
        nlohmann::json segs = nlohmann::json::array();
        for (int g = 1; g <= n; ++g) segs.push_back(segment(n, g));
        per_n.push_back({{"n", n}, {"segments", segs}});
    }
    out.description = {{"vertex_count", adj->size()}, {"per_n", per_n}};
    out.space = space_from_adjacency("glued_trees(n_max=" + std::to_string(n_max) + ")",
                                     params.scale, adj);
    return out;
}

// ---------------------------------------------------------------------------
// Weighted plane with shortcut trees.

namespace {

struct VkNode {
    int k = 0;
    Scaled depth = 0;
    VertexId parent;
};
using VkMap = std::unordered_map<VertexId, VkNode, VertexHash>;

void build_vk_branches(int k, const VertexId& from, int level, int prev_dir, Scaled depth,
                       VkMap& map) {
    if (level > k) return;
    const std::int64_t seg = std::int64_t{1} << (k - level);
    for (int dir = 0; dir < 4; ++dir) {
        if (level > 0 && dir == opposite(prev_dir)) continue;
        VertexId p = from;
        for (std::int64_t s = 1; s <= seg; ++s) {
            VertexId q = step(p, dir);
            VkNode nd{k, depth + s, p};
            if (!map.emplace(q, nd).second)
                throw Error("tree branches collide at " + to_string(q) + "; decomposition not unique");
            p = q;
        }
        build_vk_branches(k, p, level + 1, dir, depth + seg, map);
    }
}

}  // namespace

VertexId ak_root(int k) {
    return vx(std::int64_t{1} << (2 * k), 0);
}

GeneratedSpace gen_vonkoch(const VonKochParams& params, const Budget& budget) {
    if (params.k_max < 1 || params.k_max > 7) throw TooLarge("vonkoch trees are built for k_max in 1..7");
    auto trees = std::make_shared<VkMap>();
    GeneratedSpace out;
    nlohmann::json per_k = nlohmann::json::array();
    for (int k = 1; k <= params.k_max; ++k) {
        const VertexId root = ak_root(k);
        trees->emplace(root, VkNode{k, 0, root});
        build_vk_branches(k, root, 0, -1, 0, *trees);
        if (trees->size() > budget.max_vertices) throw BudgetExceeded("vonkoch trees exceed the budget");

        SubsetRegion a_set, s_set;
        const Scaled r_k = (Scaled{2} << k) - 1;  // 2^{k+1} - 1 scaled units
        for (const auto& [v, nd] : *trees) {
            if (nd.k != k) continue;
            a_set.insert(v, 1);
            if (nd.depth == r_k) s_set.insert(v, 1);
        }
        out.points["a_" + std::to_string(k)] = root;
        per_k.push_back({{"k", k},
                         {"root", {root.coords[0], root.coords[1]}},
                         {"r_k", r_k},
                         {"tree_size", a_set.size()},
                         {"sphere_size", s_set.size()},
                         {"window_radius", params.window_factor * (std::int64_t{1} << k)}});
        out.sets["A_" + std::to_string(k)] = std::move(a_set);
        out.sets["S_" + std::to_string(k)] = std::move(s_set);
    }

    const Scaled kLattice = 100;
    out.generator = "vonkoch";
    out.params = {{"k_max", params.k_max}, {"window_factor", params.window_factor}};
    out.description = {{"scale", kLattice}, {"per_k", per_k}};
    out.space = Space("vonkoch(k_max=" + std::to_string(params.k_max) + ")", kLattice,
                      [trees](const VertexId& v, const Space::NeighborVisitor& fn) {
                          auto vi = trees->find(v);
                          for (int dir = 0; dir < 4; ++dir) {
                              const VertexId q = step(v, dir);
                              Scaled len = 100;
                              if (vi != trees->end()) {
                                  auto qi = trees->find(q);
                                  if (qi != trees->end() && qi->second.k == vi->second.k &&
                                      (qi->second.parent == v || vi->second.parent == q))
                                      len = 1;
                              }
                              fn(q, len);
                          }
                      });
    return out;
}

namespace {

bool decompose_search(const VertexId& off, int k, int level, int prev_dir,
                      std::vector<int>& dirs, std::int64_t& partial) {
    const bool zero = off.coords[0] == 0 && off.coords[1] == 0;
    if (zero) {
        partial = 0;
        return true;
    }
    if (level > k) return false;
    const std::int64_t seg = std::int64_t{1} << (k - level);
    const std::int64_t remaining_after = seg - 1;  // total length of all deeper segments
    for (int dir = 0; dir < 4; ++dir) {
        if (level > 0 && dir == opposite(prev_dir)) continue;
        const int axis = dir / 2;
        const std::int64_t sign = dir % 2 == 0 ? 1 : -1;
        const std::int64_t along = off.coords[axis] * sign;
        const std::int64_t across = off.coords[1 - axis];
        if (across == 0 && along >= 1 && along <= seg - 1) {
            dirs.push_back(dir);
            partial = along;
            return true;
        }
        VertexId rem = off;
        rem.coords[axis] -= sign * seg;
        if (l1(rem, VertexId{}) > remaining_after) continue;
        dirs.push_back(dir);
        if (decompose_search(rem, k, level + 1, dir, dirs, partial)) return true;
        dirs.pop_back();
    }
    return false;
}

}  // namespace

std::optional<AkDecomposition> decompose_ak(const VertexId& x, int k) {
    if (k < 1) throw Error("decompose_ak requires k >= 1");
    const VertexId root = ak_root(k);
    VertexId off;
    off.coords[0] = x.coords[0] - root.coords[0];
    off.coords[1] = x.coords[1] - root.coords[1];
    if (x.tag != 0 || x.coords[2] != 0 || x.coords[3] != 0) return std::nullopt;
    AkDecomposition dec;
    dec.k = k;
    if (!decompose_search(off, k, 0, -1, dec.dirs, dec.partial)) return std::nullopt;
    return dec;
}

VertexId recompose_ak(const AkDecomposition& dec) {
    VertexId p = ak_root(dec.k);
    const std::size_t full = dec.partial > 0 ? dec.dirs.size() - 1 : dec.dirs.size();
    for (std::size_t j = 0; j < full; ++j) {
        const std::int64_t seg = std::int64_t{1} << (dec.k - static_cast<int>(j));
        const int dir = dec.dirs[j];
        p.coords[dir / 2] += (dir % 2 == 0 ? 1 : -1) * seg;
    }
    if (dec.partial > 0) {
        const int dir = dec.dirs.back();
        p.coords[dir / 2] += (dir % 2 == 0 ? 1 : -1) * dec.partial;
    }
    return p;
}

Scaled ak_depth(const AkDecomposition& dec) {
    Scaled depth = 0;
    const std::size_t full = dec.partial > 0 ? dec.dirs.size() - 1 : dec.dirs.size();
    for (std::size_t j = 0; j < full; ++j) depth += std::int64_t{1} << (dec.k - static_cast<int>(j));
    return depth + dec.partial;
}

// ---------------------------------------------------------------------------
// Perforated lattice.

namespace {

struct PerfBlock {
    std::int64_t n = 0;
    std::int64_t x_lo = 0, x_hi = 0;  // axis range
    std::int64_t half = 0;            // cross axes range [-half, half]
    std::unordered_map<VertexId, std::uint8_t, VertexHash> kept;  // inner vertex -> outward dir mask
    std::int64_t cells = 0;
    std::int64_t zd_boundary_edges = 0;
    std::int64_t kept_edges = 0;
};

struct PerfData {
    int d = 2;
    std::vector<PerfBlock> blocks;

    int block_of(const VertexId& v) const {
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const auto& b = blocks[i];
            if (v.coords[0] < b.x_lo || v.coords[0] > b.x_hi) continue;
            bool in = true;
            for (int a = 1; a < d; ++a)
                if (v.coords[a] < -b.half || v.coords[a] > b.half) in = false;
            if (in) return static_cast<int>(i);
        }
        return -1;
    }
};

// Tile a face grid (given per-axis ranges) with cubes of side `tile`,
// remainder merged into the last tile; emit the floor midpoint of each tile.
void for_tile_centers(const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges,
                      std::int64_t tile,
                      const std::function<void(std::span<const std::int64_t>)>& fn) {
    const int k = static_cast<int>(ranges.size());
    std::vector<std::vector<std::int64_t>> centers_per_axis(k);
    for (int a = 0; a < k; ++a) {
        const auto [lo, hi] = ranges[a];
        const std::int64_t len = hi - lo + 1;
        const std::int64_t count = std::max<std::int64_t>(1, len / tile);
        for (std::int64_t j = 0; j < count; ++j) {
            const std::int64_t start = lo + j * tile;
            const std::int64_t end = (j == count - 1) ? hi : start + tile - 1;
            centers_per_axis[a].push_back((start + end) / 2 - (start + end < 0 && (start + end) % 2 ? 1 : 0));
        }
    }
    std::vector<std::int64_t> pick(k);
    std::function<void(int)> rec = [&](int a) {
        if (a == k) {
            fn(pick);
            return;
        }
        for (auto c : centers_per_axis[a]) {
            pick[a] = c;
            rec(a + 1);
        }
    };
    rec(0);
}

}  // namespace

GeneratedSpace gen_perforated(const PerforatedParams& params, const Budget& budget) {
    if (params.d < 2 || params.d > 4) throw Error("perforated lattice needs 2 <= d <= 4");
    if (params.n_list.empty()) throw Error("perforated lattice needs a nonempty n list");
    auto data = std::make_shared<PerfData>();
    data->d = params.d;
    std::vector<std::int64_t> ns = params.n_list;
    std::sort(ns.begin(), ns.end());

    std::int64_t cursor = std::int64_t{1} << std::min<std::int64_t>(ns.front(), 40);
    std::size_t total_cells = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const std::int64_t n = ns[i];
        if (n < 2) throw Error("perforated blocks need n >= 2");
        PerfBlock b;
        b.n = n;
        const std::int64_t w = isqrt_floor(n);
        b.x_lo = cursor;
        b.x_hi = cursor + w - 1;
        b.half = n / 2;
        const std::int64_t cross = 2 * b.half + 1;
        b.cells = w;
        for (int a = 1; a < params.d; ++a) b.cells *= cross;
        total_cells += static_cast<std::size_t>(b.cells);
        if (total_cells > budget.max_vertices) throw BudgetExceeded("perforated blocks exceed the budget");

        // Faces orthogonal to the axis.
        std::int64_t cross_face = 1;
        for (int a = 1; a < params.d; ++a) cross_face *= cross;
        b.zd_boundary_edges += 2 * cross_face;
        // Faces orthogonal to each cross axis.
        for (int a = 1; a < params.d; ++a) b.zd_boundary_edges += 2 * (b.cells / cross);

        auto add_kept = [&](const VertexId& inner, int dir) {
            b.kept[inner] |= static_cast<std::uint8_t>(1u << dir);
            ++b.kept_edges;
        };
        // axis faces: free axes are the cross axes
        for (int side = 0; side < 2; ++side) {
            std::vector<std::pair<std::int64_t, std::int64_t>> ranges(params.d - 1, {-b.half, b.half});
            for_tile_centers(ranges, w, [&](std::span<const std::int64_t> c) {
                VertexId inner;
                inner.coords[0] = side == 0 ? b.x_lo : b.x_hi;
                for (int a = 1; a < params.d; ++a) inner.coords[a] = c[a - 1];
                add_kept(inner, side == 0 ? 1 : 0);  // outward -e1 / +e1
            });
        }
        // cross-axis faces: free axes are the axis plus the other cross axes
        for (int a = 1; a < params.d; ++a) {
            for (int side = 0; side < 2; ++side) {
                std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
                ranges.emplace_back(b.x_lo, b.x_hi);
                for (int o = 1; o < params.d; ++o)
                    if (o != a) ranges.emplace_back(-b.half, b.half);
                for_tile_centers(ranges, w, [&](std::span<const std::int64_t> c) {
                    VertexId inner;
                    inner.coords[0] = c[0];
                    int ci = 1;
                    for (int o = 1; o < params.d; ++o) {
                        if (o == a) inner.coords[o] = side == 0 ? b.half : -b.half;
                        else inner.coords[o] = c[ci++];
                    }
                    add_kept(inner, side == 0 ? 2 * a : 2 * a + 1);  // outward +e_a / -e_a
                });
            }
        }
        data->blocks.push_back(std::move(b));
        // next block starts 2^n past this one, so d(A_n, A_next) = 2^n
        cursor = data->blocks.back().x_hi + (std::int64_t{1} << std::min<std::int64_t>(n, 40));
    }

    GeneratedSpace out;
    const int d = params.d;
    out.space = Space("perforated(d=" + std::to_string(d) + ")", 1,
                      [data, d](const VertexId& v, const Space::NeighborVisitor& fn) {
                          const int bv = data->block_of(v);
                          for (int dir = 0; dir < 2 * d; ++dir) {
                              const VertexId q = step(v, dir);
                              const int bq = data->block_of(q);
                              if (bv == bq) {
                                  fn(q, 1);
                                  continue;
                              }
                              const bool v_inside = bv >= 0;
                              const auto& blk = data->blocks[static_cast<std::size_t>(v_inside ? bv : bq)];
                              const VertexId& inner = v_inside ? v : q;
                              const int outward = v_inside ? dir : opposite(dir);
                              auto it = blk.kept.find(inner);
                              if (it != blk.kept.end() && (it->second & (1u << outward))) fn(q, 1);
                          }
                      });

    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : data->blocks) {
        SubsetRegion region;
        std::vector<std::int64_t> lo{b.x_lo}, hi{b.x_hi};
        for (int a = 1; a < d; ++a) {
            lo.push_back(-b.half);
            hi.push_back(b.half);
        }
        for_box(lo, hi, d, [&](const VertexId& v) { region.insert(v, 1); });
        if (region.total_measure != b.cells) throw Error("perforated block cell count mismatch");
        out.sets["A_" + std::to_string(b.n)] = std::move(region);
        // distinct inner attachment vertices plus one outer endpoint per kept edge
        const std::int64_t boundary_vertices =
            static_cast<std::int64_t>(b.kept.size()) + b.kept_edges;
        blocks.push_back({{"n", b.n},
                          {"x_lo", b.x_lo},
                          {"x_hi", b.x_hi},
                          {"cells", b.cells},
                          {"zd_boundary_edges", b.zd_boundary_edges},
                          {"kept_edges", b.kept_edges},
                          {"boundary_vertex_measure", boundary_vertices}});
    }
    out.generator = "perforated";
    out.params = {{"d", d}, {"n_list", params.n_list}};
    out.description = {{"blocks", blocks}};
    return out;
}

// ---------------------------------------------------------------------------
// Constricted double balls.

namespace {

struct ConsBlob {
    std::int64_t n = 0, log_n = 0;
    VertexId c_up, c_dn;
};

struct ConsData {
    int d = 2;
    std::vector<ConsBlob> blobs;

    int blob_of(const VertexId& v) const {
        for (std::size_t i = 0; i < blobs.size(); ++i) {
            if (l1(v, blobs[i].c_up) <= blobs[i].n || l1(v, blobs[i].c_dn) <= blobs[i].n)
                return static_cast<int>(i);
        }
        return -1;
    }
};

}  // namespace

GeneratedSpace gen_constricted(const ConstrictedParams& params, const Budget& budget) {
    if (params.d < 2 || params.d > 4) throw Error("constricted lattice needs 2 <= d <= 4");
    auto data = std::make_shared<ConsData>();
    data->d = params.d;
    GeneratedSpace out;
    nlohmann::json blobs = nlohmann::json::array();
    std::size_t total = 0;
    for (std::int64_t n : params.n_list) {
        if (n < 2 || n > 60) throw Error("constricted blocks need 2 <= n <= 60");
        ConsBlob b;
        b.n = n;
        b.log_n = log2_ceil(n);
        const std::int64_t x = std::int64_t{1} << (n + 1);
        b.c_up = VertexId{};
        b.c_up.coords[0] = x;
        b.c_up.coords[1] = n - b.log_n;
        b.c_dn = b.c_up;
        b.c_dn.coords[1] = b.log_n - n;
        data->blobs.push_back(b);

        SubsetRegion region;
        for_l1_ball(b.c_up, n, params.d, [&](const VertexId& v) { region.insert(v, 1); });
        for_l1_ball(b.c_dn, n, params.d, [&](const VertexId& v) { region.insert(v, 1); });
        total += region.size();
        if (total > budget.max_vertices) throw BudgetExceeded("constricted blocks exceed the budget");

        SubsetRegion equator;
        for (const auto& v : region.vertices) {
            if (v.coords[1] == 0) equator.insert(v, 1);
        }
        VertexId pole_up = b.c_up;
        pole_up.coords[1] += n;
        VertexId pole_dn = b.c_dn;
        pole_dn.coords[1] -= n;
        out.points["pole_up_" + std::to_string(n)] = pole_up;
        out.points["pole_dn_" + std::to_string(n)] = pole_dn;
        blobs.push_back({{"n", n},
                         {"log_n", b.log_n},
                         {"center_x", x},
                         {"size", region.total_measure},
                         {"equator_size", equator.total_measure}});
        out.sets["C_" + std::to_string(n)] = std::move(region);
        out.sets["equator_" + std::to_string(n)] = std::move(equator);
    }

    const int d = params.d;
    out.space = Space("constricted(d=" + std::to_string(d) + ")", 1,
                      [data, d](const VertexId& v, const Space::NeighborVisitor& fn) {
                          const int bv = data->blob_of(v);
                          for (int dir = 0; dir < 2 * d; ++dir) {
                              const VertexId q = step(v, dir);
                              const int bq = data->blob_of(q);
                              if (bv == bq || (on_axis(v, d) && on_axis(q, d))) fn(q, 1);
                          }
                      });
    out.generator = "constricted";
    out.params = {{"d", d}, {"n_list", params.n_list}};
    out.description = {{"blobs", blobs}};
    return out;
}

// ---------------------------------------------------------------------------
// The (IB) / (NIB) pair.

namespace {

struct IbData {
    int d = 2;
    struct Ball {
        std::int64_t n = 0;
        VertexId center;
    };
    std::vector<Ball> balls;

    int ball_of(const VertexId& v) const {
        for (std::size_t i = 0; i < balls.size(); ++i)
            if (l1(v, balls[i].center) <= balls[i].n) return static_cast<int>(i);
        return -1;
    }
    bool edge_exists(const VertexId& u, const VertexId& w) const {
        const int bu = ball_of(u), bw = ball_of(w);
        if (bu == bw) return true;
        return on_axis(u, d) && on_axis(w, d);
    }
};

}  // namespace

IbPair gen_ib_pair(const IbPairParams& params, const Budget& budget) {
    if (params.d < 2 || params.d > 4) throw Error("ib pair needs 2 <= d <= 4");
    if (params.n_list.empty()) throw Error("ib pair needs a nonempty n list");
    auto data = std::make_shared<IbData>();
    data->d = params.d;
    std::vector<std::int64_t> ns = params.n_list;
    std::sort(ns.begin(), ns.end());
    std::int64_t cursor = (std::int64_t{1} << std::min<std::int64_t>(ns.front(), 40)) + ns.front();
    std::size_t total = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        IbData::Ball b;
        b.n = ns[i];
        b.center = VertexId{};
        b.center.coords[0] = cursor;
        data->balls.push_back(b);
        std::int64_t vol = 1;
        for (int a = 0; a < params.d; ++a) vol = vol * (2 * b.n + 1);  // crude box bound
        total += static_cast<std::size_t>(vol);
        if (total > budget.max_vertices) throw BudgetExceeded("ib pair balls exceed the budget");
        if (i + 1 < ns.size())
            cursor += b.n + (std::int64_t{1} << std::min<std::int64_t>(b.n, 40)) + ns[i + 1];
    }

    const int d = params.d;
    IbPair out;
    out.x.space = Space("ib_x(d=" + std::to_string(d) + ")", 1,
                        [data, d](const VertexId& v, const Space::NeighborVisitor& fn) {
                            for (int dir = 0; dir < 2 * d; ++dir) {
                                const VertexId q = step(v, dir);
                                if (data->edge_exists(v, q)) fn(q, 1);
                            }
                        });

    // X': every edge orthogonal to e1 subdivided into four unit edges. A
    // subdivision vertex sits on the edge base -> base + e_axis and carries
    // tag 4*axis + p for quarter p in 1..3.
    auto subdiv = [](const VertexId& base, int axis, int p) {
        VertexId v = base;
        v.tag = 4 * axis + p;
        return v;
    };
    out.x_prime.space = Space(
        "ib_x_prime(d=" + std::to_string(d) + ")", 1,
        [data, d, subdiv](const VertexId& v, const Space::NeighborVisitor& fn) {
            if (v.tag == 0) {
                for (int dir = 0; dir < 2; ++dir) {
                    const VertexId q = step(v, dir);
                    if (data->edge_exists(v, q)) fn(q, 1);
                }
                for (int axis = 1; axis < d; ++axis) {
                    VertexId up = v;
                    up.coords[axis] += 1;
                    if (data->edge_exists(v, up)) fn(subdiv(v, axis, 1), 1);
                    VertexId dn = v;
                    dn.coords[axis] -= 1;
                    if (data->edge_exists(dn, v)) fn(subdiv(dn, axis, 3), 1);
                }
                return;
            }
            const int axis = v.tag / 4;
            const int p = v.tag % 4;
            VertexId base = v;
            base.tag = 0;
            if (p == 1) {
                fn(base, 1);
                fn(subdiv(base, axis, 2), 1);
            } else if (p == 2) {
                fn(subdiv(base, axis, 1), 1);
                fn(subdiv(base, axis, 3), 1);
            } else {
                fn(subdiv(base, axis, 2), 1);
                VertexId top = base;
                top.coords[axis] += 1;
                fn(top, 1);
            }
        });

    nlohmann::json balls_json = nlohmann::json::array();
    for (const auto& b : data->balls) {
        SubsetRegion a_n;
        for_l1_ball(b.center, b.n, d, [&](const VertexId& v) { a_n.insert(v, 1); });
        SubsetRegion a_n_prime;
        for (const auto& v : a_n.vertices) {
            a_n_prime.insert(v, 1);
            for (int axis = 1; axis < d; ++axis) {
                VertexId up = v;
                up.coords[axis] += 1;
                if (a_n.contains(up)) {
                    for (int p = 1; p <= 3; ++p) a_n_prime.insert(subdiv(v, axis, p), 1);
                }
            }
        }
        balls_json.push_back({{"n", b.n},
                              {"center_x", b.center.coords[0]},
                              {"size", a_n.total_measure},
                              {"size_dilated", a_n_prime.total_measure}});
        out.x.sets["A_" + std::to_string(b.n)] = std::move(a_n);
        out.x_prime.sets["A_" + std::to_string(b.n)] = std::move(a_n_prime);
        VertexId c = b.center;
        out.x.points["center_" + std::to_string(b.n)] = c;
        out.x_prime.points["center_" + std::to_string(b.n)] = c;
    }
    out.x.generator = "ib_pair";
    out.x.params = {{"d", d}, {"n_list", params.n_list}, {"member", "x"}};
    out.x.description = {{"balls", balls_json}};
    out.x_prime.generator = "ib_pair";
    out.x_prime.params = {{"d", d}, {"n_list", params.n_list}, {"member", "x_prime"}};
    out.x_prime.description = {{"balls", balls_json}, {"dilation", 4}};

    out.map.domain = out.x.space;
    out.map.codomain = out.x_prime.space;
    out.map.forward = [](const VertexId& v) { return v; };
    out.map.approx_inverse = [](const VertexId& v) {
        if (v.tag == 0) return v;
        const int axis = v.tag / 4;
        const int p = v.tag % 4;
        VertexId base = v;
        base.tag = 0;
        if (p <= 2) return base;  // quarter 2 ties resolve to the lexicographically smaller end
        base.coords[axis] += 1;
        return base;
    };
    out.map.c1 = 2;
    out.map.c2 = 4;
    out.map.c3 = 4;
    (void)budget;
    return out;
}

// ---------------------------------------------------------------------------
// Cube chain.

namespace {

struct CubeBlock {
    std::int64_t n = 0;
    int m = 0;
    std::int64_t x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    std::int64_t face_lo = 0, face_hi = 0;  // at x = x_lo

    bool contains(const VertexId& v) const {
        return v.coords[0] >= x_lo && v.coords[0] <= x_hi && v.coords[1] >= y_lo &&
               v.coords[1] <= y_hi;
    }
    bool in_face(const VertexId& v) const {
        return v.coords[0] == x_lo && v.coords[1] >= face_lo && v.coords[1] <= face_hi;
    }
};

struct CubeData {
    std::vector<CubeBlock> cubes;

    int cube_of(const VertexId& v) const {
        for (std::size_t i = 0; i < cubes.size(); ++i)
            if (cubes[i].contains(v)) return static_cast<int>(i);
        return -1;
    }
};

}  // namespace

GeneratedSpace gen_cube_chain(const CubeChainParams& params, const Budget& budget) {
    if (params.d != 2) throw TooLarge("the cube chain is built for d = 2");
    if (params.n_list.empty()) throw Error("cube chain needs a nonempty n list");
    std::vector<int> ns = params.n_list;
    std::sort(ns.begin(), ns.end());

    auto side_of = [&](int n) -> std::int64_t {
        if (params.substituted) return params.side_fn ? params.side_fn(n) : (std::int64_t{1} << n);
        if (n > 3) throw TooLarge("exact cube sides are built for n <= 3");
        return std::int64_t{1} << (std::int64_t{1} << n);
    };
    auto face_of = [&](int n, std::int64_t side) -> std::int64_t {
        if (params.substituted) {
            const std::int64_t f = params.face_fn ? params.face_fn(n) : n;
            if (f < 1 || 2 * f > side)
                throw InvalidScaling("substituted face must satisfy 1 <= 2*face <= side");
            return f;
        }
        std::int64_t f = side;
        if (n * n < 62) f = std::min<std::int64_t>(side, std::int64_t{1} << (n * n));
        return f;
    };

    auto data = std::make_shared<CubeData>();
    GeneratedSpace out;
    nlohmann::json levels = nlohmann::json::array();
    std::int64_t cursor = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const int n = ns[i];
        if (n < 1) throw Error("cube chain levels start at n = 1");
        const std::int64_t side = side_of(n);
        const std::int64_t face = face_of(n, side);
        cursor += static_cast<std::int64_t>(n) * side;  // gap n*side(n) before the level
        SubsetRegion level_region;
        for (int m = 0; m < n; ++m) {
            CubeBlock c;
            c.n = n;
            c.m = m;
            c.x_lo = cursor + m * static_cast<std::int64_t>(n) * side;
            c.x_hi = c.x_lo + side - 1;
            c.y_lo = -side / 2;
            c.y_hi = c.y_lo + side - 1;
            c.face_lo = -face / 2;
            c.face_hi = c.face_lo + face - 1;
            data->cubes.push_back(c);
            total += static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
            if (total > budget.max_vertices) throw BudgetExceeded("cube chain exceeds the vertex budget");
            std::vector<std::int64_t> lo{c.x_lo, c.y_lo}, hi{c.x_hi, c.y_hi};
            for_box(lo, hi, 2, [&](const VertexId& v) { level_region.insert(v, 1); });
            SubsetRegion face_set;
            for (std::int64_t y = c.face_lo; y <= c.face_hi; ++y) face_set.insert(vx(c.x_lo, y), 1);
            out.sets["c_" + std::to_string(n) + "_" + std::to_string(m)] = std::move(face_set);
        }
        cursor = data->cubes.back().x_hi;
        const std::int64_t kept_per_cube = face + (face == side ? 2 : 0);
        levels.push_back({{"n", n},
                          {"side", side},
                          {"face", face},
                          {"cubes", n},
                          {"N", static_cast<std::int64_t>(n) * side * side},
                          {"kept_edges_per_cube", kept_per_cube},
                          {"boundary_measure", static_cast<std::int64_t>(n) * (2 * face + (face == side ? 2 : 0))}});
        out.sets["C_" + std::to_string(n)] = std::move(level_region);
    }

    out.space = Space("cube_chain", 1, [data](const VertexId& v, const Space::NeighborVisitor& fn) {
        const int cv = data->cube_of(v);
        for (int dir = 0; dir < 4; ++dir) {
            const VertexId q = step(v, dir);
            const int cq = data->cube_of(q);
            if (cv == cq) {
                fn(q, 1);
                continue;
            }
            const bool v_in = cv >= 0;
            const CubeBlock& c = data->cubes[static_cast<std::size_t>(v_in ? cv : cq)];
            if (c.in_face(v_in ? v : q)) fn(q, 1);
        }
    });
    out.generator = "cube_chain";
    out.params = {{"d", 2}, {"n_list", params.n_list}, {"substituted", params.substituted}};
    out.description = {{"levels", levels}};
    return out;
}

GeneratedSpace gen_zd(int d, Scaled scale) {
    GeneratedSpace out;
    out.space = make_zd(d, scale);
    out.generator = "zd";
    out.params = {{"d", d}, {"scale", scale}};
    out.description = {{"dims", d}};
    return out;
}

}  // namespace isolab
