#include "hecke/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hecke {

void check_viewport(const Viewport& v) {
  if (!(v.width > 0) || !std::isfinite(v.width)) throw std::invalid_argument("viewport width must be positive");
  if (v.px < 1 || v.py < 1) throw std::invalid_argument("viewport needs at least one pixel");
}

ImageBuffer::ImageBuffer(int w, int h, RGB fill) : width(w), height(h) {
  if (w < 1 || h < 1) throw std::invalid_argument("image size must be positive");
  rgb.resize(static_cast<size_t>(w) * h * 3);
  for (size_t k = 0; k < rgb.size(); k += 3) {
    rgb[k] = fill.r;
    rgb[k + 1] = fill.g;
    rgb[k + 2] = fill.b;
  }
}

RGB ImageBuffer::get(int x, int y) const {
  const size_t k = (static_cast<size_t>(y) * width + x) * 3;
  return {rgb[k], rgb[k + 1], rgb[k + 2]};
}

void ImageBuffer::set(int x, int y, RGB c) {
  const size_t k = (static_cast<size_t>(y) * width + x) * 3;
  rgb[k] = c.r;
  rgb[k + 1] = c.g;
  rgb[k + 2] = c.b;
}

Palette Palette::standard() {
  Palette p;
  // pastel HSV wheel in steps of 22.5 degrees, alternating brightness
  for (int k = 0; k < 16; ++k) {
    const double h = k / 16.0 * 6.0;
    const int sector = static_cast<int>(h);
    const double f = h - sector;
    const double v = k % 2 ? 0.80 : 0.95, s = 0.55;
    const double pp = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
    double r, g, b;
    switch (sector) {
      case 0: r = v, g = t, b = pp; break;
      case 1: r = q, g = v, b = pp; break;
      case 2: r = pp, g = v, b = t; break;
      case 3: r = pp, g = q, b = v; break;
      case 4: r = t, g = pp, b = v; break;
      default: r = v, g = pp, b = q; break;
    }
    auto byte = [](double x) { return static_cast<std::uint8_t>(std::lround(255 * x)); };
    p.ranks[k] = {byte(r), byte(g), byte(b)};
  }
  return p;
}

RGB Palette::operator()(const TileClassification& t) const {
  switch (t.verdict) {
    case Verdict::TileRank:
      return ranks[static_cast<size_t>(std::max(t.rank, 0)) % ranks.size()];
    case Verdict::NonEscapingApprox:
      if (t.side == Side::Kplus) return kplus;
      if (t.side == Side::Kminus) return kminus;
      return nonescaping;
    case Verdict::Undecided:
      return undecided;
  }
  return undecided;
}

ImageBuffer colorize(const std::vector<TileClassification>& grid, const Viewport& v, const Palette& pal) {
  ImageBuffer img(v.px, v.py);
  for (int row = 0; row < v.py; ++row)
    for (int col = 0; col < v.px; ++col) img.set(col, row, pal(grid[static_cast<size_t>(row) * v.px + col]));
  return img;
}

namespace {

// Liang-Barsky on the continuous buffer rectangle.
bool clip(double& x0, double& y0, double& x1, double& y1, double xmin, double ymin, double xmax, double ymax) {
  double t0 = 0.0, t1 = 1.0;
  const double dx = x1 - x0, dy = y1 - y0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {x0 - xmin, xmax - x0, y0 - ymin, ymax - y0};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0) return false;
      continue;
    }
    const double r = q[k] / p[k];
    if (p[k] < 0) {
      if (r > t1) return false;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return false;
      t1 = std::min(t1, r);
    }
  }
  const double ax = x0 + t0 * dx, ay = y0 + t0 * dy;
  x1 = x0 + t1 * dx;
  y1 = y0 + t1 * dy;
  x0 = ax;
  y0 = ay;
  return true;
}

void bresenham(ImageBuffer& img, int x0, int y0, int x1, int y1, RGB c) {
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    if (x0 >= 0 && x0 < img.width && y0 >= 0 && y0 < img.height) img.set(x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) err += dy, x0 += sx;
    if (e2 <= dx) err += dx, y0 += sy;
  }
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void draw_polylines(ImageBuffer& img, const std::vector<std::vector<cplx>>& curves, const Viewport& v, RGB color) {
  const double lo = -0.5, hx = img.width - 0.5, hy = img.height - 0.5;
  for (const auto& curve : curves) {
    if (curve.size() == 1 && finite(curve[0])) {
      draw_points(img, curve, v, color);
      continue;
    }
    for (size_t k = 0; k + 1 < curve.size(); ++k) {
      if (!finite(curve[k]) || !finite(curve[k + 1])) continue;
      auto [x0, y0] = v.to_buffer(curve[k]);
      auto [x1, y1] = v.to_buffer(curve[k + 1]);
      if (!clip(x0, y0, x1, y1, lo, lo, hx, hy)) continue;
      auto px = [](double t, int hi) { return std::clamp(static_cast<int>(std::lround(t)), 0, hi); };
      bresenham(img, px(x0, img.width - 1), px(y0, img.height - 1), px(x1, img.width - 1), px(y1, img.height - 1),
                color);
    }
  }
}

void draw_points(ImageBuffer& img, const std::vector<cplx>& pts, const Viewport& v, RGB color) {
  for (cplx z : pts) {
    if (!finite(z)) continue;
    const auto [x, y] = v.to_buffer(z);
    const double xr = std::round(x), yr = std::round(y);
    if (xr < 0 || yr < 0 || xr >= img.width || yr >= img.height) continue;
    img.set(static_cast<int>(xr), static_cast<int>(yr), color);
  }
}

void write_ppm(const ImageBuffer& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "P6\n" << img.width << " " << img.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

ImageBuffer read_ppm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  f >> magic >> w >> h >> maxval;
  if (magic != "P6" || w < 1 || h < 1 || maxval != 255) throw std::runtime_error("not an 8-bit P6 file: " + path);
  f.get();  // the single whitespace byte after the header
  ImageBuffer img(w, h);
  f.read(reinterpret_cast<char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (f.gcount() != static_cast<std::streamsize>(img.rgb.size())) throw std::runtime_error("truncated PPM: " + path);
  return img;
}

}  // namespace hecke
