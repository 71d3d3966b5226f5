#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hecke/complex_geom.hpp"

namespace hecke {

enum class Location { Inside, Outside, Band };

// Closed polyline (last vertex joins the first) with a boundary band. A grid
// over the bounding box keeps membership queries near O(sqrt(n)).
class JordanDisc {
 public:
  JordanDisc() = default;
  explicit JordanDisc(std::vector<cplx> boundary, double band = 1e-6);

  const std::vector<cplx>& boundary() const { return v_; }
  size_t size() const { return v_.size(); }
  double band() const { return band_; }

  Location locate(cplx z) const;
  bool contains_closed(cplx z) const { return locate(z) != Location::Outside; }
  double distance(cplx z) const;  // to the boundary
  double signed_area() const;     // positive when counter-clockwise

 private:
  int cell_x(double x) const;
  int cell_y(double y) const;
  cplx seg_a(int s) const { return v_[s]; }
  cplx seg_b(int s) const { return v_[(s + 1) % v_.size()]; }

  std::vector<cplx> v_;
  double band_ = 1e-6;
  double x0_ = 0, y0_ = 0, cw_ = 1, ch_ = 1;
  int gx_ = 0, gy_ = 0;
  std::vector<std::vector<int>> cells_;  // segments near each cell
  std::vector<std::vector<int>> rows_;   // segments spanning each cell row
};

double segment_distance(cplx a, cplx b, cplx z);
bool segments_cross(cplx a, cplx b, cplx c, cplx d);

// First pair of non-adjacent crossing segments of a closed polyline.
std::optional<std::pair<size_t, size_t>> self_intersection(const std::vector<cplx>& closed);

// Winding number of a closed polyline around z.
int winding_number(const std::vector<cplx>& closed, cplx z);

}  // namespace hecke
