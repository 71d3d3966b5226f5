#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/b_involution.hpp"
#include "hecke/complex_geom.hpp"

namespace hecke {

struct RGB {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const RGB&) const = default;
};

struct Viewport {
  cplx center;
  double width = 1.0;
  int px = 1, py = 1;

  double height() const { return width * py / px; }
  // (i, j) with j counted from the bottom edge
  cplx to_plane(double i, double j) const {
    return center + cplx(((i + 0.5) / px - 0.5) * width, ((j + 0.5) / py - 0.5) * height());
  }
  // Buffer addressing: row 0 is the top of the image.
  cplx pixel_center(int col, int row) const { return to_plane(col, py - 1 - row); }
  // Continuous buffer coordinates (col, row) of z; pixel centres are integers.
  std::array<double, 2> to_buffer(cplx z) const {
    const double i = ((z - center).real() / width + 0.5) * px - 0.5;
    const double j = ((z - center).imag() / height() + 0.5) * py - 0.5;
    return {i, py - 1 - j};
  }
};

void check_viewport(const Viewport& v);

struct ImageBuffer {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first

  ImageBuffer() = default;
  ImageBuffer(int w, int h, RGB fill = {255, 255, 255});

  RGB get(int x, int y) const;
  void set(int x, int y, RGB c);
  bool operator==(const ImageBuffer&) const = default;
};

struct Palette {
  std::array<RGB, 16> ranks;
  RGB nonescaping{20, 20, 20};
  RGB kplus{30, 60, 200};
  RGB kminus{200, 40, 40};
  RGB undecided{128, 128, 128};

  static Palette standard();
  RGB operator()(const TileClassification& t) const;
};

struct RenderReport {
  long pixels = 0;
  long exceptions = 0;  // classifier throws mapped to Undecided
  long undecided = 0;
};

// A Classifier provides State make_state() const and
// TileClassification classify(State&, cplx) const. One state per row keeps
// warm starts row-local, so rows are independent of the partition.
template <class Classifier>
std::vector<TileClassification> classify_grid(const Classifier& c, const Viewport& v, int workers,
                                              RenderReport* report = nullptr) {
  check_viewport(v);
  if (workers < 1) throw std::invalid_argument("render: workers must be >= 1");
  std::vector<TileClassification> out(static_cast<size_t>(v.px) * v.py);
  long exceptions = 0;
#pragma omp parallel for schedule(static) num_threads(workers) reduction(+ : exceptions)
  for (int row = 0; row < v.py; ++row) {
    auto state = c.make_state();
    for (int col = 0; col < v.px; ++col) {
      TileClassification t;
      try {
        t = c.classify(state, v.pixel_center(col, row));
      } catch (const std::exception&) {
        t = {};
        ++exceptions;
      }
      out[static_cast<size_t>(row) * v.px + col] = t;
    }
  }
  if (report) {
    report->pixels = static_cast<long>(out.size());
    report->exceptions = exceptions;
    report->undecided = 0;
    for (const auto& t : out) report->undecided += t.verdict == Verdict::Undecided;
  }
  return out;
}

// Reference implementation for tests: no OpenMP at all.
template <class Classifier>
std::vector<TileClassification> classify_grid_serial(const Classifier& c, const Viewport& v) {
  check_viewport(v);
  std::vector<TileClassification> out(static_cast<size_t>(v.px) * v.py);
  for (int row = 0; row < v.py; ++row) {
    auto state = c.make_state();
    for (int col = 0; col < v.px; ++col) {
      TileClassification t;
      try {
        t = c.classify(state, v.pixel_center(col, row));
      } catch (const std::exception&) {
        t = {};
      }
      out[static_cast<size_t>(row) * v.px + col] = t;
    }
  }
  return out;
}

ImageBuffer colorize(const std::vector<TileClassification>& grid, const Viewport& v, const Palette& pal);

template <class Classifier>
ImageBuffer render(const Classifier& c, const Viewport& v, int workers, const Palette& pal = Palette::standard(),
                   RenderReport* report = nullptr) {
  return colorize(classify_grid(c, v, workers, report), v, pal);
}

template <class Classifier>
ImageBuffer render_serial(const Classifier& c, const Viewport& v, const Palette& pal = Palette::standard()) {
  return colorize(classify_grid_serial(c, v), v, pal);
}

struct SPlaneClassifier {
  const BInvolutionData* data;
  int max_rank;
  RootCache make_state() const { return {}; }
  TileClassification classify(RootCache& s, cplx u) const { return tile_rank(*data, u, max_rank, &s); }
};

struct CorrPlaneClassifier {
  const BInvolutionData* data;
  int max_rank;
  RootCache make_state() const { return {}; }
  TileClassification classify(RootCache& s, cplx z) const { return classify_corr_point(*data, z, max_rank, &s); }
};

// Bresenham segments clipped to the image.
void draw_polylines(ImageBuffer& img, const std::vector<std::vector<cplx>>& curves, const Viewport& v, RGB color);
void draw_points(ImageBuffer& img, const std::vector<cplx>& pts, const Viewport& v, RGB color);

void write_ppm(const ImageBuffer& img, const std::string& path);
ImageBuffer read_ppm(const std::string& path);

}  // namespace hecke
