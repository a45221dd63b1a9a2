#include "chipopt/chiplet.hpp"

#include <algorithm>

#include "chipopt/errors.hpp"

namespace chipopt {

const char* to_string(ChipletType t) {
  switch (t) {
    case ChipletType::Compute: return "compute";
    case ChipletType::Memory: return "memory";
    case ChipletType::Io: return "io";
  }
  return "?";
}

void ChipletSpec::validate() const {
  if (!(width > 0.0) || !(height > 0.0))
    throw Error(Errc::ConfigError, "chiplet '" + name + "': dimensions must be > 0");
  if (phys.empty())
    throw Error(Errc::ConfigError, "chiplet '" + name + "': needs at least one PHY");
  for (std::size_t i = 0; i < phys.size(); ++i) {
    const Point& p = phys[i].pos;
    bool in_x = p.x >= -kGeomTolMm && p.x <= width + kGeomTolMm;
    bool in_y = p.y >= -kGeomTolMm && p.y <= height + kGeomTolMm;
    bool on_edge = almost_equal(p.x, 0.0) || almost_equal(p.x, width) ||
                   almost_equal(p.y, 0.0) || almost_equal(p.y, height);
    if (!in_x || !in_y || !on_edge)
      throw Error(Errc::ConfigError, "chiplet '" + name + "': PHY " + std::to_string(i) +
                                         " must lie on the rectangle boundary");
  }
  if (can_relay && phys.size() < 2)
    throw Error(Errc::ConfigError,
                "chiplet '" + name + "': relay capability requires at least two PHYs");
}

namespace {

// Canonical (footprint, sorted PHY multiset) signature of one rotation.
struct RotSignature {
  double w, h;
  std::vector<Point> sorted_phys;
};

RotSignature signature(const ChipletSpec& spec, Rotation r) {
  RotSignature s;
  auto [w, h] = spec.dims(r);
  s.w = w;
  s.h = h;
  s.sorted_phys.reserve(spec.phys.size());
  for (std::size_t i = 0; i < spec.phys.size(); ++i) s.sorted_phys.push_back(spec.phy_at(i, r));
  std::sort(s.sorted_phys.begin(), s.sorted_phys.end(), [](const Point& a, const Point& b) {
    if (!almost_equal(a.x, b.x)) return a.x < b.x;
    return a.y < b.y;
  });
  return s;
}

bool same_signature(const RotSignature& a, const RotSignature& b) {
  if (!almost_equal(a.w, b.w) || !almost_equal(a.h, b.h)) return false;
  for (std::size_t i = 0; i < a.sorted_phys.size(); ++i)
    if (!points_equal(a.sorted_phys[i], b.sorted_phys[i])) return false;
  return true;
}

}  // namespace

RotationClass rotation_class(const ChipletSpec& spec) {
  RotSignature s0 = signature(spec, Rotation::R0);
  RotSignature s90 = signature(spec, Rotation::R90);
  RotSignature s180 = signature(spec, Rotation::R180);
  RotSignature s270 = signature(spec, Rotation::R270);
  bool all_equal = same_signature(s0, s90) && same_signature(s0, s180) && same_signature(s0, s270);
  if (all_equal) return RotationClass::Invariant;
  if (same_signature(s0, s180) && same_signature(s90, s270)) return RotationClass::Hybrid;
  return RotationClass::Sensitive;
}

std::span<const Rotation> allowed_rotations(RotationClass c) {
  static constexpr Rotation kInvariant[] = {Rotation::R0};
  static constexpr Rotation kHybrid[] = {Rotation::R0, Rotation::R90};
  switch (c) {
    case RotationClass::Invariant: return kInvariant;
    case RotationClass::Hybrid: return kHybrid;
    case RotationClass::Sensitive: return kAllRotations;
  }
  return kAllRotations;
}

}  // namespace chipopt
