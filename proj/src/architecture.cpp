#include "chipopt/architecture.hpp"

#include <cmath>

#include "chipopt/errors.hpp"

namespace chipopt {

std::size_t Architecture::count_of(ChipletType t) const {
  std::size_t n = 0;
  for (std::size_t i : instance_spec)
    if (specs[i].type == t) ++n;
  return n;
}

int Architecture::effective_grid_rows() const {
  if (grid_rows > 0) return grid_rows;
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(chiplet_count()))));
}

int Architecture::effective_grid_cols() const {
  if (grid_cols > 0) return grid_cols;
  int r = effective_grid_rows();
  return static_cast<int>((chiplet_count() + r - 1) / r);
}

void Architecture::finalize() {
  if (specs.empty() || instance_spec.empty())
    throw Error(Errc::ConfigError, "architecture has no chiplets");
  spec_rot_class.clear();
  spec_rot_class.reserve(specs.size());
  for (const ChipletSpec& s : specs) {
    s.validate();
    spec_rot_class.push_back(rotation_class(s));
  }
  phy_offset.assign(chiplet_count(), 0);
  std::size_t off = 0;
  for (std::size_t i = 0; i < chiplet_count(); ++i) {
    phy_offset[i] = off;
    off += phy_count(i);
  }
  total_phy_nodes = off;
  if (!(max_link_length_mm > 0.0))
    throw Error(Errc::ConfigError, "max_link_length_mm must be > 0");
  if (latency.l_phy < 0 || latency.l_link < 0 || latency.l_relay < 0)
    throw Error(Errc::ConfigError, "latency parameters must be >= 0");
  std::size_t n = chiplet_count();
  std::size_t cells =
      static_cast<std::size_t>(effective_grid_rows()) * static_cast<std::size_t>(effective_grid_cols());
  if (cells < n)
    throw Error(Errc::ConfigError, "grid has fewer cells than chiplets");
}

Architecture make_architecture(std::vector<std::pair<ChipletSpec, int>> catalog) {
  Architecture arch;
  for (auto& [spec, count] : catalog) {
    if (count < 0) throw Error(Errc::ConfigError, "chiplet count must be >= 0");
    std::size_t spec_idx = arch.specs.size();
    arch.specs.push_back(std::move(spec));
    for (int k = 0; k < count; ++k) arch.instance_spec.push_back(spec_idx);
  }
  return arch;
}

Rect placed_rect(const Architecture& arch, const PlacedChiplet& p) {
  auto [w, h] = arch.spec_of(p.instance).dims(p.rotation);
  return Rect{p.origin.x, p.origin.y, w, h};
}

Point absolute_phy(const Architecture& arch, const PlacedChiplet& p, std::size_t phy) {
  Point rel = arch.spec_of(p.instance).phy_at(phy, p.rotation);
  return {p.origin.x + rel.x, p.origin.y + rel.y};
}

std::vector<Point> absolute_phys(const Architecture& arch, const PlacedChiplet& p) {
  std::vector<Point> out;
  out.reserve(arch.phy_count(p.instance));
  for (std::size_t i = 0; i < arch.phy_count(p.instance); ++i)
    out.push_back(absolute_phy(arch, p, i));
  return out;
}

double layout_area_mm2(const Layout& layout) { return layout.bounding_box.area(); }

Rect compute_bounding_box(const Architecture& arch, const std::vector<PlacedChiplet>& placed) {
  if (placed.empty()) return Rect{};
  Rect first = placed_rect(arch, placed.front());
  double min_x = first.x, min_y = first.y, max_x = first.right(), max_y = first.top();
  for (std::size_t i = 1; i < placed.size(); ++i) {
    Rect r = placed_rect(arch, placed[i]);
    min_x = std::min(min_x, r.x);
    min_y = std::min(min_y, r.y);
    max_x = std::max(max_x, r.right());
    max_y = std::max(max_y, r.top());
  }
  return Rect{min_x, min_y, max_x - min_x, max_y - min_y};
}

}  // namespace chipopt
