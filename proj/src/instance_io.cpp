#include "hecke/instance_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace hecke {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty, non-comment line.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      const auto p = line.find_first_not_of(" \t\r");
      if (p == std::string::npos || line[p] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("instance line " + std::to_string(lineno_) + ": " + what);
  }

  size_t header(const std::string& key) {
    std::string line, k;
    if (!next(line)) fail("missing '" + key + "' block");
    std::istringstream is(line);
    long n = -1;
    if (!(is >> k >> n) || k != key || n < 0) fail("expected '" + key + " <count>'");
    return static_cast<size_t>(n);
  }

  cplx point() {
    std::string line;
    if (!next(line)) fail("unexpected end of input");
    std::istringstream is(line);
    double re, im;
    if (!(is >> re >> im)) fail("expected '<re> <im>'");
    return {re, im};
  }

 private:
  std::istream& in_;
  int lineno_ = 0;
};

}  // namespace

BInvolutionData read_instance(std::istream& in) {
  LineReader r(in);
  const size_t deg = r.header("degree");
  if (deg < 2 || deg > static_cast<size_t>(kMaxPolyDegree)) r.fail("degree out of range");
  std::vector<cplx> q(deg + 1);
  for (auto& c : q) c = r.point();
  if (q.back() == 0.0) r.fail("leading coefficient is zero");
  const size_t nb = r.header("boundary");
  if (nb < 3) r.fail("boundary needs at least 3 vertices");
  std::vector<cplx> b(nb);
  for (auto& z : b) z = r.point();
  const size_t np = r.header("pinch");
  std::vector<cplx> p(np);
  for (auto& z : p) z = r.point();
  std::string line, key;
  double tol = 1e-6;
  if (r.next(line)) {
    std::istringstream is(line);
    if (!(is >> key >> tol) || key != "tol" || !(tol > 0)) r.fail("expected 'tol <positive>'");
  }
  return make_binvolution(Polynomial(std::move(q)), std::move(b), std::move(p), tol);
}

BInvolutionData read_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  return read_instance(f);
}

void write_instance(std::ostream& out, const BInvolutionData& data, const std::string& comment) {
  out << std::setprecision(17);
  if (!comment.empty()) {
    std::istringstream is(comment);
    std::string line;
    while (std::getline(is, line)) out << "# " << line << "\n";
  }
  out << "degree " << data.Q.degree() << "\n";
  for (cplx c : data.Q.c) out << c.real() << " " << c.imag() << "\n";
  out << "boundary " << data.D.size() << "\n";
  for (cplx z : data.D.boundary()) out << z.real() << " " << z.imag() << "\n";
  out << "pinch " << data.pinch.size() << "\n";
  for (cplx z : data.pinch) out << z.real() << " " << z.imag() << "\n";
  out << "tol " << data.tol << "\n";
}

void write_instance_file(const std::string& path, const BInvolutionData& data, const std::string& comment) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write instance file: " + path);
  write_instance(f, data, comment);
  if (!f) throw std::runtime_error("write failed: " + path);
}

Polynomial read_polynomial_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open coefficient file: " + path);
  std::vector<cplx> c;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    std::istringstream is(line);
    double re, im = 0.0;
    if (!(is >> re)) throw FormatError(path + ":" + std::to_string(lineno) + ": expected '<re> [<im>]'");
    is >> im;
    c.emplace_back(re, im);
  }
  Polynomial P(std::move(c));
  if (P.degree() < 2) throw FormatError(path + ": polynomial degree must be at least 2");
  if (P.degree() > kMaxPolyDegree) throw FormatError(path + ": polynomial degree above 9");
  return P;
}

}  // namespace hecke
