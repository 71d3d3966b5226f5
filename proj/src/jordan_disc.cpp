#include "hecke/jordan_disc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hecke {

double segment_distance(cplx a, cplx b, cplx z) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

namespace {

double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

}  // namespace

bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on = [](cplx p, cplx q, cplx r) {
    return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
           std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
  };
  if (d1 == 0 && on(a, b, c)) return true;
  if (d2 == 0 && on(a, b, d)) return true;
  if (d3 == 0 && on(c, d, a)) return true;
  if (d4 == 0 && on(c, d, b)) return true;
  return false;
}

std::optional<std::pair<size_t, size_t>> self_intersection(const std::vector<cplx>& p) {
  const size_t n = p.size();
  if (n < 4) return std::nullopt;
  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> box(n);
  for (size_t i = 0; i < n; ++i) {
    const cplx a = p[i], b = p[(i + 1) % n];
    box[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()),
              std::min(a.imag(), b.imag()), std::max(a.imag(), b.imag())};
  }
  // sweep on x
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return box[a].x0 < box[b].x0; });
  for (size_t oi = 0; oi < n; ++oi) {
    const size_t i = order[oi];
    for (size_t oj = oi + 1; oj < n && box[order[oj]].x0 <= box[i].x1; ++oj) {
      const size_t j = order[oj];
      if (box[j].y0 > box[i].y1 || box[i].y0 > box[j].y1) continue;
      const size_t lo = std::min(i, j), hi = std::max(i, j);
      if (hi - lo == 1 || (lo == 0 && hi == n - 1)) continue;
      if (segments_cross(p[lo], p[(lo + 1) % n], p[hi], p[(hi + 1) % n])) return std::make_pair(lo, hi);
    }
  }
  return std::nullopt;
}

int winding_number(const std::vector<cplx>& p, cplx z) {
  int w = 0;
  const size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    const cplx a = p[i] - z, b = p[(i + 1) % n] - z;
    const double left = cross(b - a, -a);
    if (a.imag() <= 0) {
      if (b.imag() > 0 && left > 0) ++w;
    } else if (b.imag() <= 0 && left < 0) {
      --w;
    }
  }
  return w;
}

JordanDisc::JordanDisc(std::vector<cplx> boundary, double band) : v_(std::move(boundary)), band_(band) {
  if (v_.size() < 3) throw std::invalid_argument("JordanDisc: fewer than 3 vertices");
  double x1 = -std::numeric_limits<double>::infinity(), y1 = x1;
  x0_ = y0_ = std::numeric_limits<double>::infinity();
  for (cplx z : v_) {
    x0_ = std::min(x0_, z.real());
    x1 = std::max(x1, z.real());
    y0_ = std::min(y0_, z.imag());
    y1 = std::max(y1, z.imag());
  }
  const double pad = 2 * band_ + 1e-12 * std::max({1.0, x1 - x0_, y1 - y0_});
  x0_ -= pad;
  y0_ -= pad;
  x1 += pad;
  y1 += pad;
  const int g = std::max(4, static_cast<int>(std::sqrt(static_cast<double>(v_.size()))));
  gx_ = gy_ = g;
  cw_ = (x1 - x0_) / gx_;
  ch_ = (y1 - y0_) / gy_;
  cells_.assign(static_cast<size_t>(gx_) * gy_, {});
  rows_.assign(gy_, {});
  const int n = static_cast<int>(v_.size());
  for (int s = 0; s < n; ++s) {
    const cplx a = seg_a(s), b = seg_b(s);
    const double sx0 = std::min(a.real(), b.real()) - band_, sx1 = std::max(a.real(), b.real()) + band_;
    const double sy0 = std::min(a.imag(), b.imag()) - band_, sy1 = std::max(a.imag(), b.imag()) + band_;
    const int cx0 = cell_x(sx0), cx1 = cell_x(sx1), cy0 = cell_y(sy0), cy1 = cell_y(sy1);
    for (int cy = cy0; cy <= cy1; ++cy) {
      rows_[cy].push_back(s);
      for (int cx = cx0; cx <= cx1; ++cx) cells_[static_cast<size_t>(cy) * gx_ + cx].push_back(s);
    }
  }
}

int JordanDisc::cell_x(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - x0_) / cw_)), 0, gx_ - 1);
}

int JordanDisc::cell_y(double y) const {
  return std::clamp(static_cast<int>(std::floor((y - y0_) / ch_)), 0, gy_ - 1);
}

Location JordanDisc::locate(cplx z) const {
  const double x = z.real(), y = z.imag();
  if (!(x >= x0_ && x <= x0_ + gx_ * cw_ && y >= y0_ && y <= y0_ + gy_ * ch_)) return Location::Outside;
  const int cx = cell_x(x), cy = cell_y(y);
  for (int s : cells_[static_cast<size_t>(cy) * gx_ + cx])
    if (segment_distance(seg_a(s), seg_b(s), z) <= band_) return Location::Band;
  // crossings of the leftward ray; only segments reaching this row matter
  bool inside = false;
  for (int s : rows_[cy]) {
    const cplx a = seg_a(s), b = seg_b(s);
    if ((a.imag() > y) != (b.imag() > y)) {
      const double xi = a.real() + (y - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (xi < x) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

double JordanDisc::distance(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < v_.size(); ++s)
    best = std::min(best, segment_distance(seg_a(static_cast<int>(s)), seg_b(static_cast<int>(s)), z));
  return best;
}

double JordanDisc::signed_area() const {
  double a = 0.0;
  for (size_t i = 0; i < v_.size(); ++i) a += cross(v_[i], v_[(i + 1) % v_.size()]);
  return 0.5 * a;
}

}  // namespace hecke
