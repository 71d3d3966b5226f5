#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "hecke/b_involution.hpp"
#include "hecke/curve_io.hpp"
#include "hecke/figures.hpp"
#include "hecke/instance_io.hpp"
#include "hecke/raster.hpp"

using namespace hecke;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 1;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int workers = 1;
  double tol = 0.0;  // 0 keeps the instance value
};

// Companion data file next to the image: a.ppm -> a_<tag>.txt
std::string companion(const std::string& out, const std::string& tag) {
  std::string stem = out;
  if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".ppm") == 0) stem.resize(stem.size() - 4);
  return stem + "_" + tag + ".txt";
}

std::vector<double> parse_reals(const std::string& s, size_t n, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationFailure(std::string(what) + ": not a number: '" + item + "'");
    }
  }
  if (v.size() != n) throw ValidationFailure(std::string(what) + ": expected " + std::to_string(n) + " values");
  return v;
}

BInvolutionData load_instance(const std::string& path, const Globals& g) {
  BInvolutionData data = read_instance_file(path);
  if (g.tol > 0) {
    std::vector<cplx> b = data.D.boundary();
    data = make_binvolution(data.Q, std::move(b), data.pinch, g.tol);
  }
  return data;
}

void report_image(const std::string& path, const ImageBuffer& img) {
  std::fprintf(stderr, "wrote %s (%dx%d)\n", path.c_str(), img.width, img.height);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke groups, parabolic Blaschke products and B-involution correspondences"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--workers", g.workers, "OpenMP worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "override of the instance tolerance")->check(CLI::PositiveNumber);

  std::string out;
  int d = 2, depth = 3, size = 800, preimages = 3, px = 512, max_rank = 40;
  double theta0 = kDefaultTheta0, h = 0.5, eps = 0.05;
  std::string kind = "hecke", qfile, z0s, instance, views, plane = "s";

  auto* tess = app.add_subcommand("tessellate", "ideal polygon tessellation of the disc");
  tess->add_option("--d", d)->required()->check(CLI::Range(kMinDegree, kMaxDegree));
  tess->add_option("--depth", depth)->required()->check(CLI::Range(0, 12));
  tess->add_option("--out", out)->required();
  tess->add_option("--size", size)->check(CLI::Range(16, 8192));

  auto* blas = app.add_subcommand("blaschke", "petal and its preimages under B_d");
  blas->add_option("--d", d)->required()->check(CLI::Range(2, 8));
  blas->add_option("--preimages", preimages)->required()->check(CLI::Range(0, 8));
  blas->add_option("--out", out)->required();
  blas->add_option("--theta0", theta0)->check(CLI::Range(1e-3, kPi - 1e-3));
  blas->add_option("--size", size)->check(CLI::Range(16, 8192));

  auto* arcs = app.add_subcommand("dividing-arcs", "repelling horizontal lines pulled back to the disc");
  arcs->add_option("--d", d)->required()->check(CLI::Range(2, 8));
  // -h would clash with --h
  arcs->set_help_flag("--help", "Print this help message and exit");
  arcs->add_option("--h", h)->required()->check(CLI::PositiveNumber);
  arcs->add_option("--out", out)->required();
  arcs->add_option("--size", size)->check(CLI::Range(16, 8192));

  auto* ext = app.add_subcommand("external-map", "piece boundaries, the monogon and its preimage");
  ext->add_option("--kind", kind)->required()->check(CLI::IsMember({"hecke", "farey"}));
  ext->add_option("--d", d)->required()->check(CLI::Range(kMinDegree, kMaxDegree));
  ext->add_option("--out", out)->required();
  ext->add_option("--monogon-eps", eps)->check(CLI::Range(1e-6, 0.499));
  ext->add_option("--size", size)->check(CLI::Range(16, 8192));

  int cap = 200000;
  auto* corr = app.add_subcommand("correspondence", "orbit tree of Cov_0^Q o J");
  corr->add_option("--q", qfile, "coefficients, one 're im' per line, ascending")->required();
  corr->add_option("--z0", z0s, "re,im")->required();
  corr->add_option("--depth", depth)->required()->check(CLI::Range(0, 30));
  corr->add_option("--out", out)->required();
  corr->add_option("--cap", cap)->check(CLI::Range(1, 10000000));
  corr->add_option("--size", size)->check(CLI::Range(16, 8192));

  auto* binv = app.add_subcommand("b-involution", "tile ranks of S or the Omega / K+ / K- partition");
  binv->add_option("--instance", instance)->required();
  binv->add_option("--view", views, "cx,cy,width")->required();
  binv->add_option("--px", px)->required()->check(CLI::Range(1, 16384));
  binv->add_option("--max-rank", max_rank)->required()->check(CLI::Range(0, 100000));
  binv->add_option("--plane", plane)->required()->check(CLI::IsMember({"s", "corr"}));
  binv->add_option("--out", out)->required();

  auto* val = app.add_subcommand("validate", "check an instance file");
  val->add_option("--instance", instance)->required();

  auto* find = app.add_subcommand("find-instance", "search the pinched family for a valid instance");
  int vertices = 4096;
  find->add_option("--d", d)->required()->check(CLI::Range(2, 6));
  find->add_option("--out", out)->required();
  find->add_option("--vertices", vertices)->check(CLI::Range(1000, 1 << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*tess) {
      const TessellationFigure f = tessellation_figure(d, depth, size);
      write_ppm(f.img, out);
      write_tessellation(companion(out, "polygons"), f.polys);
      std::printf("polygons %zu\n", f.polys.size());
      report_image(out, f.img);
    } else if (*blas) {
      const BlaschkeFigure f = blaschke_figure(d, preimages, theta0, size);
      write_ppm(f.img, out);
      write_polylines(companion(out, "curves"), f.curves);
      std::printf("levels %zu nesting_violations %d/%d failed_segments %zu\n", f.levels.size(),
                  f.nesting_violations, f.nesting_checked, f.failed_segments);
      for (size_t k = 0; k < f.levels.size(); ++k)
        std::printf("level %zu components %zu\n", k + 1, f.levels[k].curves.size());
      report_image(out, f.img);
    } else if (*arcs) {
      const ArcsFigure f = dividing_arcs_figure(d, h, size);
      write_ppm(f.img, out);
      write_polylines(companion(out, "curves"), f.curves);
      std::printf("arc_samples %zu invariance %.3g\n", f.arcs.gamma_plus.size(), f.invariance);
      report_image(out, f.img);
    } else if (*ext) {
      const ExternalMapFigure f =
          external_map_figure(kind == "hecke" ? ExternalKind::Hecke : ExternalKind::Farey, d, eps, size);
      write_ppm(f.img, out);
      write_polylines(companion(out, "curves"), f.curves);
      std::printf("preimage_components %d\n", f.components);
      report_image(out, f.img);
    } else if (*corr) {
      const std::vector<double> z = parse_reals(z0s, 2, "--z0");
      const Polynomial P = read_polynomial_file(qfile);
      const CorrespondenceFigure f = correspondence_figure(P, cplx(z[0], z[1]), depth, size, cap);
      write_ppm(f.img, out);
      const size_t edges = write_orbit_edges(companion(out, "edges"), f.tree);
      std::printf("nodes %zu edges %zu truncated %s\n", f.tree.nodes.size(), edges, f.tree.truncated ? "yes" : "no");
      report_image(out, f.img);
    } else if (*binv) {
      const std::vector<double> v = parse_reals(views, 3, "--view");
      if (!(v[2] > 0)) throw ValidationFailure("--view: width must be positive");
      const BInvolutionData data = load_instance(instance, g);
      const ValidationReport rep = validate(data);
      if (!rep.all_pass()) {
        std::cerr << rep.text();
        throw ValidationFailure("instance failed validation");
      }
      const Viewport view{cplx(v[0], v[1]), v[2], px, px};
      const BInvolutionFigure f =
          binvolution_figure(data, view, max_rank, plane == "s" ? Plane::S : Plane::Corr, g.workers);
      write_ppm(f.img, out);
      long ne = 0;
      for (const auto& t : f.grid) ne += t.verdict == Verdict::NonEscapingApprox;
      std::printf("pixels %ld nonescaping %ld undecided %ld exceptions %ld\n", f.report.pixels, ne,
                  f.report.undecided, f.report.exceptions);
      report_image(out, f.img);
    } else if (*val) {
      const BInvolutionData data = load_instance(instance, g);
      const ValidationReport rep = validate(data);
      std::cout << rep.text();
      if (!rep.all_pass()) return kExitValidation;
    } else if (*find) {
      const auto res = search_instance(d, vertices, g.tol > 0 ? g.tol : 1e-6);
      if (!res) throw ValidationFailure("no candidate passed validation");
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "pinched family Q'(z) = (1 - z)(1 - z/r)^(d-1), r = %g\n"
                    "boundary r(t) = exp(b1 sin t + b2 sin 2t), b1 = %g, b2 = %g\n"
                    "candidate %d of the search; non-escaping census %ld on 64x64 at rank 50",
                    res->params.r, res->params.b1, res->params.b2, res->tried, res->nonescaping);
      write_instance_file(out, res->data, buf);
      std::printf("r %g b1 %g b2 %g candidate %d census %ld\n", res->params.r, res->params.b1, res->params.b2,
                  res->tried, res->nonescaping);
    }
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
