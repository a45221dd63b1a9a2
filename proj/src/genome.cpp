#include "chipopt/genome.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "chipopt/errors.hpp"

namespace chipopt {

namespace {

// ---------------------------------------------------------------------------
// Decoder
// ---------------------------------------------------------------------------

// Occupancy bitmap over the coordinate decomposition of the placed
// rectangles; answers "is the cell with lower-left corner (X[i], Y[j])
// covered" in O(1).
struct OccupancyGrid {
  std::vector<double> xs, ys;
  std::vector<std::int32_t> cover;  // (xs.size()-1) x (ys.size()-1), row-major in x

  void build(const std::vector<Rect>& rects) {
    xs.clear();
    ys.clear();
    for (const Rect& r : rects) {
      xs.push_back(r.x);
      xs.push_back(r.right());
      ys.push_back(r.y);
      ys.push_back(r.top());
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::size_t nx = xs.size() ? xs.size() - 1 : 0;
    std::size_t ny = ys.size() ? ys.size() - 1 : 0;
    cover.assign((nx + 1) * (ny + 1), 0);
    auto idx_x = [&](double v) {
      return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin());
    };
    auto idx_y = [&](double v) {
      return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), v) - ys.begin());
    };
    // 2D difference marking followed by a prefix sum.
    for (const Rect& r : rects) {
      std::size_t x0 = idx_x(r.x), x1 = idx_x(r.right());
      std::size_t y0 = idx_y(r.y), y1 = idx_y(r.top());
      cover[x0 * (ny + 1) + y0] += 1;
      cover[x1 * (ny + 1) + y0] -= 1;
      cover[x0 * (ny + 1) + y1] -= 1;
      cover[x1 * (ny + 1) + y1] += 1;
    }
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j <= ny; ++j) cover[(i + 1) * (ny + 1) + j] += cover[i * (ny + 1) + j];
    for (std::size_t i = 0; i <= nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) cover[i * (ny + 1) + j + 1] += cover[i * (ny + 1) + j];
  }

  bool cell_covered(std::ptrdiff_t i, std::ptrdiff_t j) const {
    std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(xs.size()) - 1;
    std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(ys.size()) - 1;
    if (i < 0 || j < 0 || i >= nx || j >= ny) return false;
    return cover[static_cast<std::size_t>(i) * (ny + 1) + j] > 0;
  }
};

// Concave corners of the union (exactly three of the four quadrant cells
// around a decomposition crossing are covered) plus the two axis-anchored
// anchors at the far ends of the bottom and left edges.
std::vector<Point> corner_candidates(const std::vector<Rect>& rects, double max_x, double max_y) {
  OccupancyGrid grid;
  grid.build(rects);
  std::vector<Point> corners;
  std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(grid.xs.size());
  std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(grid.ys.size());
  for (std::ptrdiff_t i = 0; i < nx; ++i)
    for (std::ptrdiff_t j = 0; j < ny; ++j) {
      int occupied = grid.cell_covered(i, j) + grid.cell_covered(i - 1, j) +
                     grid.cell_covered(i - 1, j - 1) + grid.cell_covered(i, j - 1);
      if (occupied == 3) corners.push_back({grid.xs[i], grid.ys[j]});
    }
  corners.push_back({max_x, 0.0});
  corners.push_back({0.0, max_y});
  std::sort(corners.begin(), corners.end(), [](const Point& a, const Point& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  return corners;
}

// Moves the tentative rectangle until it is overlap free. A conflict whose
// left edge lies strictly right of the rectangle's own left edge entered
// from the right flank, so the rectangle moves up past it; any other
// conflict moves it right. Capped, then stacked on top of everything.
Rect resolve_overlaps(Rect r, const std::vector<Rect>& placed, double max_y) {
  int cap = 4 * static_cast<int>(placed.size()) + 4;
  for (int iter = 0; iter < cap; ++iter) {
    const Rect* conflict = nullptr;
    for (const Rect& e : placed)
      if (r.overlaps_interior(e)) {
        conflict = &e;
        break;
      }
    if (!conflict) return r;
    if (conflict->x > r.x)
      r.y = conflict->top();
    else
      r.x = conflict->right();
  }
  r.x = 0.0;
  r.y = max_y;
  return r;
}

// ---------------------------------------------------------------------------
// Topology inference
// ---------------------------------------------------------------------------

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

struct Edge {
  double w;
  std::size_t u, v;  // global PHY node ids, u < v
  bool internal;

  friend bool operator<(const Edge& a, const Edge& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  }
};

struct InferResult {
  std::optional<IciTopology> topology;
  double mst_weight = 0.0;
};

InferResult infer_impl(const Architecture& arch, const Layout& layout) {
  std::size_t n_phys = arch.total_phy_nodes;
  std::size_t n_chiplets = arch.chiplet_count();

  std::vector<Point> pts(n_phys);
  std::vector<std::size_t> owner(n_phys);
  for (const PlacedChiplet& pc : layout.placed)
    for (std::size_t k = 0; k < arch.phy_count(pc.instance); ++k) {
      std::size_t node = arch.phy_node(pc.instance, k);
      pts[node] = absolute_phy(arch, pc, k);
      owner[node] = pc.instance;
    }

  std::vector<Edge> edges;
  for (std::size_t inst = 0; inst < n_chiplets; ++inst) {
    const ChipletSpec& spec = arch.spec_of(inst);
    if (!spec.can_relay) continue;
    for (std::size_t i = 0; i < spec.phys.size(); ++i)
      for (std::size_t j = i + 1; j < spec.phys.size(); ++j)
        edges.push_back({0.0, arch.phy_node(inst, i), arch.phy_node(inst, j), true});
  }
  for (std::size_t u = 0; u < n_phys; ++u)
    for (std::size_t v = u + 1; v < n_phys; ++v) {
      if (owner[u] == owner[v]) continue;
      double d = distance(pts[u], pts[v], arch.distance_type);
      if (d <= arch.max_link_length_mm + kGeomTolMm) edges.push_back({d, u, v, false});
    }
  std::sort(edges.begin(), edges.end());

  // Pass 1: plain spanning forest, to find the component that reaches every
  // chiplet and the unconstrained tree weight inside it.
  Dsu free_dsu(n_phys);
  for (const Edge& e : edges) free_dsu.unite(e.u, e.v);

  std::vector<std::size_t> chiplets_on_root(n_phys, 0);
  std::vector<std::size_t> last_seen(n_phys, SIZE_MAX);
  for (std::size_t inst = 0; inst < n_chiplets; ++inst)
    for (std::size_t k = 0; k < arch.phy_count(inst); ++k) {
      std::size_t r = free_dsu.find(arch.phy_node(inst, k));
      if (last_seen[r] != inst) {
        last_seen[r] = inst;
        ++chiplets_on_root[r];
      }
    }
  std::size_t main_root = SIZE_MAX;
  for (std::size_t r = 0; r < n_phys; ++r)
    if (chiplets_on_root[r] == n_chiplets) {
      main_root = r;
      break;
    }
  if (main_root == SIZE_MAX) return {};  // some chiplet is out of reach

  auto in_main = [&](std::size_t node) { return free_dsu.find(node) == main_root; };

  // Unconstrained MST weight over the main component.
  double w_free = 0.0;
  {
    Dsu dsu(n_phys);
    for (const Edge& e : edges) {
      if (!in_main(e.u)) continue;
      if (dsu.unite(e.u, e.v) && !e.internal) w_free += e.w;
    }
  }

  // Pass 2: the same Kruskal order, but a PHY already carrying a selected
  // link cannot take another one. When this constraint changes the tree
  // weight no port-valid minimum tree exists and the placement is rejected.
  Dsu dsu(n_phys);
  std::vector<char> port_used(n_phys, 0);
  std::vector<const Edge*> tree_links;
  double w_tree = 0.0;
  for (const Edge& e : edges) {
    if (!in_main(e.u)) continue;
    if (e.internal) {
      dsu.unite(e.u, e.v);
      continue;
    }
    if (port_used[e.u] || port_used[e.v]) continue;
    if (!dsu.unite(e.u, e.v)) continue;
    port_used[e.u] = port_used[e.v] = 1;
    tree_links.push_back(&e);
    w_tree += e.w;
  }
  std::size_t root = dsu.find(main_root);
  for (std::size_t inst = 0; inst < n_chiplets; ++inst) {
    bool reached = false;
    for (std::size_t k = 0; k < arch.phy_count(inst) && !reached; ++k) {
      std::size_t node = arch.phy_node(inst, k);
      reached = in_main(node) && dsu.find(node) == root;
    }
    if (!reached) return {};
  }
  if (w_tree != w_free) return {};

  IciTopology topo;
  for (const Edge* e : tree_links)
    topo.links.push_back({PhyRef{owner[e->u], e->u - arch.phy_offset[owner[e->u]]},
                          PhyRef{owner[e->v], e->v - arch.phy_offset[owner[e->v]]}, e->w});

  // Greedy augmentation: remaining candidate edges by increasing weight,
  // added whenever both endpoint PHYs are still unused.
  for (const Edge& e : edges) {
    if (e.internal || port_used[e.u] || port_used[e.v]) continue;
    port_used[e.u] = port_used[e.v] = 1;
    topo.links.push_back({PhyRef{owner[e.u], e.u - arch.phy_offset[owner[e.u]]},
                          PhyRef{owner[e.v], e.v - arch.phy_offset[owner[e.v]]}, e.w});
  }

  topo.relay_edges = build_relay_edges(arch);
  return {std::move(topo), w_tree};
}

// ---------------------------------------------------------------------------
// Genome operations
// ---------------------------------------------------------------------------

Rotation draw_allowed(const Architecture& arch, std::size_t instance, Rng& rng) {
  auto allowed = allowed_rotations(arch.rot_class_of(instance));
  return allowed[rng.uniform_index(allowed.size())];
}

// Order positions holding chiplets of different types; neighbor modes only
// consider adjacent positions.
std::vector<std::pair<std::size_t, std::size_t>> swap_positions(const Architecture& arch,
                                                                const Genome& g,
                                                                bool neighbor_only) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t n = g.order.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j_end = neighbor_only ? std::min(i + 2, n) : n;
    for (std::size_t j = i + 1; j < j_end; ++j)
      if (arch.type_of(g.order[i]) != arch.type_of(g.order[j])) out.emplace_back(i, j);
  }
  return out;
}

std::vector<std::size_t> rotation_positions(const Architecture& arch, const Genome& g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.order.size(); ++i)
    if (allowed_rotations(arch.rot_class_of(g.order[i])).size() >= 2) out.push_back(i);
  return out;
}

Genome mutate_genome_once(const Architecture& arch, const Genome& g, MutationMode mode,
                          Rng& rng) {
  bool neighbor_only = mode == MutationMode::NeighborBoth || mode == MutationMode::NeighborOne;
  bool both = mode == MutationMode::AnyBoth || mode == MutationMode::NeighborBoth;

  Genome out = g;
  auto swaps = swap_positions(arch, g, neighbor_only);
  auto rots = rotation_positions(arch, g);
  if (swaps.empty() && rots.empty())
    throw Error(Errc::NoValidMove, "no legal swap or rotation exists");

  bool do_swap, do_rotate;
  if (both) {
    do_swap = !swaps.empty();
    do_rotate = !rots.empty();
  } else if (rng.bernoulli(0.5)) {
    do_swap = !swaps.empty();  // unavailable branch falls back to the other
    do_rotate = !do_swap;
  } else {
    do_rotate = !rots.empty();
    do_swap = !do_rotate;
  }

  if (do_swap) {
    auto [i, j] = swaps[rng.uniform_index(swaps.size())];
    std::swap(out.order[i], out.order[j]);
    std::swap(out.rotations[i], out.rotations[j]);  // rotations travel with the chiplet
  }
  if (do_rotate) {
    std::size_t i = rots[rng.uniform_index(rots.size())];
    auto allowed = allowed_rotations(arch.rot_class_of(out.order[i]));
    std::vector<Rotation> others;
    for (Rotation r : allowed)
      if (r != out.rotations[i]) others.push_back(r);
    out.rotations[i] = others[rng.uniform_index(others.size())];
  }
  return out;
}

Genome merge_genomes_once(const Architecture& arch, const Genome& x, const Genome& y, Rng& rng) {
  std::size_t n = x.order.size();
  Genome out;
  out.order.assign(n, SIZE_MAX);
  out.rotations.assign(n, Rotation::R0);

  std::vector<char> type_fixed(n, 0), rotation_fixed(n, 0);
  std::array<std::vector<std::size_t>, 3> by_type;
  for (std::size_t inst = 0; inst < arch.chiplet_count(); ++inst)
    by_type[static_cast<int>(arch.type_of(inst))].push_back(inst);
  for (auto& v : by_type) rng.shuffle(v);
  std::array<std::size_t, 3> next{0, 0, 0};

  for (std::size_t i = 0; i < n; ++i) {
    ChipletType tx = arch.type_of(x.order[i]);
    if (tx != arch.type_of(y.order[i])) continue;
    type_fixed[i] = 1;
    int t = static_cast<int>(tx);
    out.order[i] = by_type[t][next[t]++];
    if (x.rotations[i] == y.rotations[i]) {
      rotation_fixed[i] = 1;
      out.rotations[i] = x.rotations[i];
    }
  }

  std::vector<std::size_t> leftovers;
  for (int t = 0; t < 3; ++t)
    for (std::size_t k = next[t]; k < by_type[t].size(); ++k) leftovers.push_back(by_type[t][k]);
  rng.shuffle(leftovers);
  std::size_t li = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!type_fixed[i]) out.order[i] = leftovers[li++];

  for (std::size_t i = 0; i < n; ++i)
    if (!rotation_fixed[i]) out.rotations[i] = draw_allowed(arch, out.order[i], rng);
  return out;
}

template <class MakeGenome>
HeteroCandidate retry_for_connectivity(const Architecture& arch, Errc exhausted_code,
                                       const char* what, MakeGenome&& make) {
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    Genome g = make();
    Layout layout = decode_genome(arch, g);
    auto topo = infer_topology(arch, layout);
    if (topo) return {std::move(g), std::move(layout), std::move(*topo)};
  }
  throw Error(exhausted_code, what);
}

}  // namespace

Layout decode_genome(const Architecture& arch, const Genome& genome) {
  Layout layout;
  layout.placed.reserve(genome.order.size());
  std::vector<Rect> rects;
  rects.reserve(genome.order.size());
  double max_x = 0.0, max_y = 0.0;

  for (std::size_t pos = 0; pos < genome.order.size(); ++pos) {
    std::size_t inst = genome.order[pos];
    Rotation rot = genome.rotations[pos];
    auto [w, h] = arch.spec_of(inst).dims(rot);

    Rect chosen{0.0, 0.0, w, h};
    if (!rects.empty()) {
      std::vector<Point> corners = corner_candidates(rects, max_x, max_y);
      double best_side = 0.0;
      bool have = false;
      Point best{0.0, 0.0};
      for (const Point& c : corners) {
        double side = std::max(std::max(max_x, c.x + w), std::max(max_y, c.y + h));
        if (!have || side < best_side) {
          have = true;
          best_side = side;
          best = c;  // candidates arrive sorted by (y, x): first strict win is the tie-break
        }
      }
      chosen = resolve_overlaps(Rect{best.x, best.y, w, h}, rects, max_y);
    }

    rects.push_back(chosen);
    max_x = std::max(max_x, chosen.right());
    max_y = std::max(max_y, chosen.top());
    layout.placed.push_back({inst, Point{chosen.x, chosen.y}, rot});
  }

  layout.bounding_box = compute_bounding_box(arch, layout.placed);
  return layout;
}

Genome random_genome_raw(const Architecture& arch, Rng& rng) {
  Genome g;
  g.order.resize(arch.chiplet_count());
  std::iota(g.order.begin(), g.order.end(), 0);
  rng.shuffle(g.order);
  g.rotations.reserve(g.order.size());
  for (std::size_t inst : g.order) g.rotations.push_back(draw_allowed(arch, inst, rng));
  return g;
}

HeteroCandidate random_hetero_candidate(const Architecture& arch, Rng& rng) {
  return retry_for_connectivity(arch, Errc::GenerationExhausted,
                                "no connected random genome found within the retry cap",
                                [&] { return random_genome_raw(arch, rng); });
}

HeteroCandidate mutate_hetero(const Architecture& arch, const Genome& g, MutationMode mode,
                              Rng& rng) {
  return retry_for_connectivity(arch, Errc::MutationExhausted,
                                "no connected genome mutation found within the retry cap",
                                [&] { return mutate_genome_once(arch, g, mode, rng); });
}

HeteroCandidate merge_hetero(const Architecture& arch, const Genome& x, const Genome& y,
                             Rng& rng) {
  if (x.order.size() != y.order.size())
    throw Error(Errc::ConfigError, "merge requires genomes over the same architecture");
  return retry_for_connectivity(arch, Errc::MergeExhausted,
                                "no connected genome merge found within the retry cap",
                                [&] { return merge_genomes_once(arch, x, y, rng); });
}

std::optional<IciTopology> infer_topology(const Architecture& arch, const Layout& layout) {
  return infer_impl(arch, layout).topology;
}

std::optional<double> infer_mst_weight(const Architecture& arch, const Layout& layout) {
  InferResult r = infer_impl(arch, layout);
  if (!r.topology) return std::nullopt;
  return r.mst_weight;
}

}  // namespace chipopt
