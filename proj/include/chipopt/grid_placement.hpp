#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chipopt/architecture.hpp"
#include "chipopt/rng.hpp"
#include "chipopt/topology.hpp"

namespace chipopt {

enum class MutationMode { AnyBoth, AnyOne, NeighborBoth, NeighborOne };

// Placement of uniformly shaped chiplets on a rows x cols grid. A cell is
// either empty or holds one chiplet instance with a rotation. Single-PHY
// chiplets are always oriented so that the PHY faces an occupied neighbor
// cell; chiplets with one PHY per side always carry R0.
class GridPlacement {
 public:
  static constexpr std::int32_t kEmpty = -1;

  struct Cell {
    std::int32_t instance = kEmpty;
    Rotation rotation = Rotation::R0;

    bool occupied() const { return instance != kEmpty; }
    friend bool operator==(const Cell&, const Cell&) = default;
  };

  GridPlacement() = default;
  GridPlacement(int rows, int cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Cell& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Cell& at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::vector<Cell>& cells() { return cells_; }

  friend bool operator==(const GridPlacement&, const GridPlacement&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cell> cells_;
};

// Placement plus its (connected) extracted topology; operations hand both
// back so the caller never re-derives the network.
struct GridCandidate {
  GridPlacement placement;
  IciTopology topology;
};

// Cardinal side of a cell/chiplet: 0 = east (+x), 1 = north, 2 = west,
// 3 = south. A counterclockwise quarter turn advances the side index by one.
int phy_side_at_r0(const ChipletSpec& spec, std::size_t phy);
std::optional<std::size_t> phy_on_side(const ChipletSpec& spec, Rotation rot, int side);

// The grid representation supports exactly two PHY patterns: one PHY per
// side (at the side centers) or a single PHY on one side center; all
// chiplets must share one square footprint. Throws Error{ConfigError}.
void validate_grid_architecture(const Architecture& arch);

// Retry cap shared by all operations that must re-run on an unconnected
// extraction.
inline constexpr int kRetryCap = 1000;

GridCandidate random_grid_candidate(const Architecture& arch, Rng& rng);
GridCandidate mutate_grid(const Architecture& arch, const GridPlacement& p, MutationMode mode,
                          Rng& rng);
GridCandidate merge_grids(const Architecture& arch, const GridPlacement& x,
                          const GridPlacement& y, Rng& rng);

// Returns nullopt when the chiplet graph is unconnected; the caller repeats
// the operation that produced the placement.
std::optional<IciTopology> extract_grid_topology(const Architecture& arch,
                                                 const GridPlacement& p);

// chiplet area * rows * cols; identical for every placement of one
// architecture.
double grid_area_mm2(const Architecture& arch, const GridPlacement& p);

// Geometric form (cell pitch = chiplet size + grid spacing), used for
// rendering and shared reporting.
Layout grid_to_layout(const Architecture& arch, const GridPlacement& p);

}  // namespace chipopt
