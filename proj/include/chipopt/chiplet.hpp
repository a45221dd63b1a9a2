#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chipopt/geometry.hpp"

namespace chipopt {

enum class ChipletType : std::uint8_t { Compute = 0, Memory = 1, Io = 2 };

const char* to_string(ChipletType t);

// PHY attachment point, relative to the chiplet's lower-left corner when
// unrotated. Must lie on the rectangle boundary.
struct Phy {
  Point pos;
};

struct ChipletSpec {
  std::string name;
  ChipletType type = ChipletType::Compute;
  double width = 0.0;   // mm, > 0
  double height = 0.0;  // mm, > 0
  std::vector<Phy> phys;
  bool can_relay = false;

  std::pair<double, double> dims(Rotation r) const {
    return rotated_dims(width, height, r);
  }
  // PHY position after rotation, still relative to the lower-left corner.
  Point phy_at(std::size_t i, Rotation r) const {
    return rotate_in_footprint(phys[i].pos, width, height, r);
  }

  // Throws Error{ConfigError} on bad geometry (non-positive dims, no PHYs,
  // PHY off the boundary, relay with fewer than two PHYs).
  void validate() const;
};

// Symmetry category of a chiplet under quarter-turn rotations, derived from
// its footprint and PHY multiset.
//   Invariant: all four rotations are indistinguishable  -> only R0 allowed
//   Hybrid:    R0==R180 and R90==R270 but not all equal  -> R0, R90 allowed
//   Sensitive: anything else                             -> all four allowed
enum class RotationClass : std::uint8_t { Invariant, Hybrid, Sensitive };

RotationClass rotation_class(const ChipletSpec& spec);

std::span<const Rotation> allowed_rotations(RotationClass c);

}  // namespace chipopt
