#pragma once

#include <string>
#include <vector>

#include "hecke/complex_geom.hpp"
#include "hecke/correspondence.hpp"
#include "hecke/hecke_group.hpp"

namespace hecke {

using Polyline = std::vector<cplx>;

// "re im" per line at 15 significant digits, a blank line between components.
void write_polylines(const std::string& path, const std::vector<Polyline>& curves);
std::vector<Polyline> read_polylines(const std::string& path);

// One polygon per line: its vertex angles in [0, 2pi).
void write_tessellation(const std::string& path, const std::vector<IdealPolygon>& polys);

// "parent_re parent_im child_re child_im" per edge; edges touching infinity are skipped.
// Returns the number of edges written.
size_t write_orbit_edges(const std::string& path, const OrbitTree& tree);

}  // namespace hecke
