#include "hecke/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace hecke {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_out(const std::string& path) {
  File f(std::fopen(path.c_str(), "w"));
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

void finish(File& f, const std::string& path) {
  if (std::ferror(f.get()) || std::fclose(f.release()) != 0) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_polylines(const std::string& path, const std::vector<Polyline>& curves) {
  File f = open_out(path);
  for (size_t c = 0; c < curves.size(); ++c) {
    if (c) std::fputc('\n', f.get());
    for (cplx z : curves[c]) std::fprintf(f.get(), "%.15g %.15g\n", z.real(), z.imag());
  }
  finish(f, path);
}

std::vector<Polyline> read_polylines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<Polyline> out;
  Polyline cur;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    std::istringstream is(line);
    double re, im;
    if (!(is >> re >> im)) throw std::runtime_error("bad polyline line in " + path + ": " + line);
    cur.emplace_back(re, im);
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

void write_tessellation(const std::string& path, const std::vector<IdealPolygon>& polys) {
  File f = open_out(path);
  for (const auto& p : polys) {
    for (size_t k = 0; k < p.vertices.size(); ++k)
      std::fprintf(f.get(), k ? " %.15g" : "%.15g", angle_0_2pi(p.vertices[k]));
    std::fputc('\n', f.get());
  }
  finish(f, path);
}

size_t write_orbit_edges(const std::string& path, const OrbitTree& tree) {
  File f = open_out(path);
  size_t n = 0;
  for (const auto& [a, b] : tree.edges) {
    const SpherePoint &p = tree.nodes[a], &q = tree.nodes[b];
    if (p.is_infinite() || q.is_infinite()) continue;
    const cplx u = p.value(), v = q.value();
    std::fprintf(f.get(), "%.15g %.15g %.15g %.15g\n", u.real(), u.imag(), v.real(), v.imag());
    ++n;
  }
  finish(f, path);
  return n;
}

}  // namespace hecke
