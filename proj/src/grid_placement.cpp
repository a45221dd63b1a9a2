#include "chipopt/grid_placement.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "chipopt/errors.hpp"

namespace chipopt {

namespace {

// Cell deltas per side index (E, N, W, S); rows grow upward.
constexpr int kSideDr[4] = {0, 1, 0, -1};
constexpr int kSideDc[4] = {1, 0, -1, 0};

int classify_side(const Point& p, double w, double h) {
  if (almost_equal(p.x, w)) return 0;
  if (almost_equal(p.y, h)) return 1;
  if (almost_equal(p.x, 0.0)) return 2;
  if (almost_equal(p.y, 0.0)) return 3;
  return -1;
}

bool at_side_center(const Point& p, double w, double h, int side) {
  switch (side) {
    case 0: return almost_equal(p.x, w) && almost_equal(p.y, h / 2);
    case 1: return almost_equal(p.y, h) && almost_equal(p.x, w / 2);
    case 2: return almost_equal(p.x, 0.0) && almost_equal(p.y, h / 2);
    case 3: return almost_equal(p.y, 0.0) && almost_equal(p.x, w / 2);
  }
  return false;
}

bool is_single_phy(const ChipletSpec& spec) { return spec.phys.size() == 1; }

bool in_bounds(const GridPlacement& g, int r, int c) {
  return r >= 0 && r < g.rows() && c >= 0 && c < g.cols();
}

bool occupied_neighbor(const GridPlacement& g, int r, int c, int side) {
  int nr = r + kSideDr[side];
  int nc = c + kSideDc[side];
  return in_bounds(g, nr, nc) && g.at(nr, nc).occupied();
}

std::vector<Rotation> valid_orientations(const Architecture& arch, const GridPlacement& g, int r,
                                         int c) {
  const ChipletSpec& spec = arch.spec_of(g.at(r, c).instance);
  if (!is_single_phy(spec)) return {Rotation::R0};
  int s0 = phy_side_at_r0(spec, 0);
  std::vector<Rotation> out;
  for (Rotation rot : kAllRotations) {
    int side = (s0 + quarter_turns(rot)) % 4;
    if (occupied_neighbor(g, r, c, side)) out.push_back(rot);
  }
  return out;
}

// Assigns an orientation to the chiplet at (r, c). With keep_current, a
// still-valid current rotation is left alone; otherwise a uniform draw over
// the valid orientations is taken. Returns false when no orientation is
// valid (the creating operation must be repeated).
bool assign_orientation(const Architecture& arch, GridPlacement& g, int r, int c, Rng& rng,
                        bool keep_current) {
  GridPlacement::Cell& cell = g.at(r, c);
  const ChipletSpec& spec = arch.spec_of(cell.instance);
  if (!is_single_phy(spec)) {
    cell.rotation = Rotation::R0;
    return true;
  }
  std::vector<Rotation> valid = valid_orientations(arch, g, r, c);
  if (valid.empty()) return false;
  if (keep_current && std::find(valid.begin(), valid.end(), cell.rotation) != valid.end())
    return true;
  cell.rotation = valid[rng.uniform_index(valid.size())];
  return true;
}

int content_code(const GridPlacement::Cell& cell, const Architecture& arch) {
  if (!cell.occupied()) return -1;
  return static_cast<int>(arch.type_of(cell.instance));
}

std::optional<GridPlacement> random_attempt(const Architecture& arch, Rng& rng) {
  int rows = arch.effective_grid_rows();
  int cols = arch.effective_grid_cols();
  GridPlacement g(rows, cols);
  std::vector<std::size_t> cell_order(static_cast<std::size_t>(rows) * cols);
  std::iota(cell_order.begin(), cell_order.end(), 0);
  rng.shuffle(cell_order);
  for (std::size_t inst = 0; inst < arch.chiplet_count(); ++inst) {
    std::size_t idx = cell_order[inst];
    g.cells()[idx].instance = static_cast<std::int32_t>(inst);
  }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (g.at(r, c).occupied() && !assign_orientation(arch, g, r, c, rng, /*keep_current=*/false))
        return std::nullopt;
  return g;
}

struct SwapPairs {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Unordered cell pairs eligible for a swap: contents of different type,
// with the empty cell counting as its own type. Neighbor modes restrict the
// pairs to 4-adjacent cells.
std::vector<std::pair<std::size_t, std::size_t>> swap_candidates(const Architecture& arch,
                                                                 const GridPlacement& g,
                                                                 bool neighbor_only) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t n = g.cells().size();
  auto code = [&](std::size_t i) { return content_code(g.cells()[i], arch); };
  if (neighbor_only) {
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) {
        std::size_t i = static_cast<std::size_t>(r) * g.cols() + c;
        if (c + 1 < g.cols()) {
          std::size_t j = i + 1;
          if (code(i) != code(j)) out.emplace_back(i, j);
        }
        if (r + 1 < g.rows()) {
          std::size_t j = i + g.cols();
          if (code(i) != code(j)) out.emplace_back(i, j);
        }
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (code(i) != code(j)) out.emplace_back(i, j);
  }
  return out;
}

// Single-PHY chiplets that admit at least one valid orientation different
// from the current one.
std::vector<std::size_t> rotation_candidates(const Architecture& arch, const GridPlacement& g) {
  std::vector<std::size_t> out;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      const GridPlacement::Cell& cell = g.at(r, c);
      if (!cell.occupied() || !is_single_phy(arch.spec_of(cell.instance))) continue;
      std::vector<Rotation> valid = valid_orientations(arch, g, r, c);
      bool has_other = std::any_of(valid.begin(), valid.end(),
                                   [&](Rotation rot) { return rot != cell.rotation; });
      if (has_other) out.push_back(static_cast<std::size_t>(r) * g.cols() + c);
    }
  return out;
}

bool repair_orientations(const Architecture& arch, GridPlacement& g, Rng& rng) {
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (g.at(r, c).occupied() && !assign_orientation(arch, g, r, c, rng, /*keep_current=*/true))
        return false;
  return true;
}

bool apply_rotation_move(const Architecture& arch, GridPlacement& g, Rng& rng) {
  std::vector<std::size_t> cands = rotation_candidates(arch, g);
  if (cands.empty()) return false;
  std::size_t idx = cands[rng.uniform_index(cands.size())];
  int r = static_cast<int>(idx) / g.cols();
  int c = static_cast<int>(idx) % g.cols();
  GridPlacement::Cell& cell = g.at(r, c);
  std::vector<Rotation> valid = valid_orientations(arch, g, r, c);
  std::erase(valid, cell.rotation);
  cell.rotation = valid[rng.uniform_index(valid.size())];
  return true;
}

std::optional<GridPlacement> mutate_attempt(const Architecture& arch, const GridPlacement& p,
                                            MutationMode mode, Rng& rng) {
  bool neighbor_only = mode == MutationMode::NeighborBoth || mode == MutationMode::NeighborOne;
  bool both = mode == MutationMode::AnyBoth || mode == MutationMode::NeighborBoth;

  GridPlacement g = p;
  auto swaps = swap_candidates(arch, g, neighbor_only);

  auto do_swap = [&]() -> bool {
    auto [i, j] = swaps[rng.uniform_index(swaps.size())];
    std::swap(g.cells()[i], g.cells()[j]);
    return repair_orientations(arch, g, rng);
  };

  if (both) {
    bool swapped = false;
    if (!swaps.empty()) {
      if (!do_swap()) return std::nullopt;
      swapped = true;
    }
    bool rotated = apply_rotation_move(arch, g, rng);
    if (!swapped && !rotated) throw Error(Errc::NoValidMove, "no legal swap or rotation exists");
    return g;
  }

  // One-modes: coin flip between the branches; a branch without legal moves
  // falls back to the other one.
  bool pick_swap = rng.bernoulli(0.5);
  if (pick_swap && !swaps.empty()) {
    if (!do_swap()) return std::nullopt;
    return g;
  }
  if (apply_rotation_move(arch, g, rng)) return g;
  if (swaps.empty()) throw Error(Errc::NoValidMove, "no legal swap or rotation exists");
  if (!do_swap()) return std::nullopt;
  return g;
}

std::optional<GridPlacement> merge_attempt(const Architecture& arch, const GridPlacement& x,
                                           const GridPlacement& y, Rng& rng) {
  int rows = x.rows();
  int cols = x.cols();
  GridPlacement g(rows, cols);
  std::size_t n_cells = g.cells().size();

  // Cells where the parents agree on content type keep that type; the
  // rotation is kept as well when both parents agree on it.
  std::vector<int> fixed_type(n_cells, -2);  // -2 free, -1 fixed empty, >=0 fixed type
  std::vector<bool> fixed_rotation(n_cells, false);
  std::vector<Rotation> carried(n_cells, Rotation::R0);
  for (std::size_t i = 0; i < n_cells; ++i) {
    int tx = content_code(x.cells()[i], arch);
    int ty = content_code(y.cells()[i], arch);
    if (tx != ty) continue;
    fixed_type[i] = tx;
    if (tx >= 0 && x.cells()[i].rotation == y.cells()[i].rotation) {
      fixed_rotation[i] = true;
      carried[i] = x.cells()[i].rotation;
    }
  }

  // Instances of each type fill that type's fixed cells first; the leftover
  // instances are scattered uniformly over the free cells.
  std::array<std::vector<std::int32_t>, 3> by_type;
  for (std::size_t inst = 0; inst < arch.chiplet_count(); ++inst)
    by_type[static_cast<int>(arch.type_of(inst))].push_back(static_cast<std::int32_t>(inst));
  for (auto& v : by_type) rng.shuffle(v);
  std::array<std::size_t, 3> next{0, 0, 0};

  std::vector<std::int32_t> leftovers;
  std::vector<std::size_t> free_cells;
  for (std::size_t i = 0; i < n_cells; ++i) {
    if (fixed_type[i] == -2) {
      free_cells.push_back(i);
    } else if (fixed_type[i] >= 0) {
      int t = fixed_type[i];
      g.cells()[i].instance = by_type[t][next[t]++];
    }
  }
  for (int t = 0; t < 3; ++t)
    for (std::size_t k = next[t]; k < by_type[t].size(); ++k) leftovers.push_back(by_type[t][k]);
  rng.shuffle(leftovers);
  rng.shuffle(free_cells);
  for (std::size_t k = 0; k < leftovers.size(); ++k) g.cells()[free_cells[k]].instance = leftovers[k];

  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      std::size_t i = static_cast<std::size_t>(r) * cols + c;
      GridPlacement::Cell& cell = g.cells()[i];
      if (!cell.occupied()) continue;
      bool keep = false;
      if (fixed_rotation[i]) {
        cell.rotation = carried[i];
        keep = true;  // re-drawn only if the carried rotation became invalid
      }
      if (!assign_orientation(arch, g, r, c, rng, keep)) return std::nullopt;
    }
  return g;
}

}  // namespace

int phy_side_at_r0(const ChipletSpec& spec, std::size_t phy) {
  return classify_side(spec.phys[phy].pos, spec.width, spec.height);
}

std::optional<std::size_t> phy_on_side(const ChipletSpec& spec, Rotation rot, int side) {
  auto [w, h] = spec.dims(rot);
  for (std::size_t i = 0; i < spec.phys.size(); ++i) {
    Point p = spec.phy_at(i, rot);
    if (classify_side(p, w, h) == side) return i;
  }
  return std::nullopt;
}

void validate_grid_architecture(const Architecture& arch) {
  const ChipletSpec& first = arch.specs.front();
  if (!almost_equal(first.width, first.height))
    throw Error(Errc::ConfigError, "grid representation requires square chiplets");
  for (const ChipletSpec& spec : arch.specs) {
    if (!almost_equal(spec.width, first.width) || !almost_equal(spec.height, first.height))
      throw Error(Errc::ConfigError, "grid representation requires one uniform chiplet footprint");
    if (spec.phys.size() == 4) {
      for (int side = 0; side < 4; ++side) {
        bool found = false;
        for (const Phy& p : spec.phys)
          found = found || at_side_center(p.pos, spec.width, spec.height, side);
        if (!found)
          throw Error(Errc::ConfigError, "chiplet '" + spec.name +
                                             "': four-PHY chiplets need one PHY per side center");
      }
    } else if (spec.phys.size() == 1) {
      int side = classify_side(spec.phys[0].pos, spec.width, spec.height);
      if (side < 0 || !at_side_center(spec.phys[0].pos, spec.width, spec.height, side))
        throw Error(Errc::ConfigError, "chiplet '" + spec.name +
                                           "': single PHY must sit at a side center");
    } else {
      throw Error(Errc::ConfigError,
                  "chiplet '" + spec.name + "': grid representation supports 1 or 4 PHYs");
    }
  }
  if (!(arch.grid_spacing_mm > 0.0))
    throw Error(Errc::ConfigError, "grid_spacing_mm must be > 0");
  if (arch.grid_spacing_mm > arch.max_link_length_mm)
    throw Error(Errc::ConfigError, "grid_spacing_mm exceeds max_link_length_mm");
}

std::optional<IciTopology> extract_grid_topology(const Architecture& arch,
                                                 const GridPlacement& p) {
  IciTopology topo;
  for (int r = 0; r < p.rows(); ++r)
    for (int c = 0; c < p.cols(); ++c) {
      const GridPlacement::Cell& cell = p.at(r, c);
      if (!cell.occupied()) continue;
      const ChipletSpec& spec = arch.spec_of(cell.instance);
      // East and north neighbors; each adjacent pair is visited once.
      struct Dir {
        int dr, dc, side_a, side_b;
      };
      constexpr Dir dirs[2] = {{0, 1, 0, 2}, {1, 0, 1, 3}};
      for (const Dir& d : dirs) {
        int nr = r + d.dr, nc = c + d.dc;
        if (!in_bounds(p, nr, nc) || !p.at(nr, nc).occupied()) continue;
        const GridPlacement::Cell& other = p.at(nr, nc);
        auto pa = phy_on_side(spec, cell.rotation, d.side_a);
        auto pb = phy_on_side(arch.spec_of(other.instance), other.rotation, d.side_b);
        if (pa && pb)
          topo.links.push_back({PhyRef{static_cast<std::size_t>(cell.instance), *pa},
                                PhyRef{static_cast<std::size_t>(other.instance), *pb},
                                arch.grid_spacing_mm});
      }
    }
  topo.relay_edges = build_relay_edges(arch);
  if (!chiplet_graph_connected(arch, topo.links)) return std::nullopt;
  return topo;
}

GridCandidate random_grid_candidate(const Architecture& arch, Rng& rng) {
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    auto g = random_attempt(arch, rng);
    if (!g) continue;
    auto topo = extract_grid_topology(arch, *g);
    if (topo) return {std::move(*g), std::move(*topo)};
  }
  throw Error(Errc::GenerationExhausted,
              "no connected random grid placement found within the retry cap");
}

GridCandidate mutate_grid(const Architecture& arch, const GridPlacement& p, MutationMode mode,
                          Rng& rng) {
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    auto g = mutate_attempt(arch, p, mode, rng);
    if (!g) continue;
    auto topo = extract_grid_topology(arch, *g);
    if (topo) return {std::move(*g), std::move(*topo)};
  }
  throw Error(Errc::MutationExhausted, "no connected mutation found within the retry cap");
}

GridCandidate merge_grids(const Architecture& arch, const GridPlacement& x,
                          const GridPlacement& y, Rng& rng) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(Errc::ConfigError, "merge requires equal grid dimensions");
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    auto g = merge_attempt(arch, x, y, rng);
    if (!g) continue;
    auto topo = extract_grid_topology(arch, *g);
    if (topo) return {std::move(*g), std::move(*topo)};
  }
  throw Error(Errc::MergeExhausted, "no connected merge found within the retry cap");
}

double grid_area_mm2(const Architecture& arch, const GridPlacement& p) {
  const ChipletSpec& spec = arch.specs.front();
  return spec.width * spec.height * p.rows() * p.cols();
}

Layout grid_to_layout(const Architecture& arch, const GridPlacement& p) {
  const ChipletSpec& spec = arch.specs.front();
  double pitch_x = spec.width + arch.grid_spacing_mm;
  double pitch_y = spec.height + arch.grid_spacing_mm;
  std::vector<PlacedChiplet> placed(arch.chiplet_count());
  for (int r = 0; r < p.rows(); ++r)
    for (int c = 0; c < p.cols(); ++c) {
      const GridPlacement::Cell& cell = p.at(r, c);
      if (!cell.occupied()) continue;
      placed[cell.instance] = PlacedChiplet{static_cast<std::size_t>(cell.instance),
                                            Point{c * pitch_x, r * pitch_y}, cell.rotation};
    }
  Layout layout;
  layout.placed = std::move(placed);
  layout.bounding_box = compute_bounding_box(arch, layout.placed);
  return layout;
}

}  // namespace chipopt
