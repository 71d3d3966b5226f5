#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/correspondence.hpp"
#include "hecke/jordan_disc.hpp"

namespace hecke {

struct BInvolutionData {
  Polynomial Q;
  JordanDisc D;
  std::vector<cplx> pinch;       // points of the boundary where Q' vanishes
  std::vector<cplx> U_boundary;  // Q of the boundary vertices
  std::vector<cplx> singular;    // Q(pinch)
  double tol = 1e-6;

  int d() const { return Q.degree() - 1; }
};

BInvolutionData make_binvolution(Polynomial Q, std::vector<cplx> boundary, std::vector<cplx> pinch,
                                 double tol = 1e-6);

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::string text() const;  // one "CHECK name PASS|FAIL detail" line each
};

ValidationReport validate(const BInvolutionData& data);

struct OutOfDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Undecidable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SStatus { Ok, OutOfDomain, Undecidable };

struct SResult {
  SStatus status;
  cplx value;     // S(u) when Ok
  cplx preimage;  // the root of Q(x) = u in the closed disc when Ok
};

// Root cache for warm starts, one slot per orbit step.
struct RootCache {
  std::vector<std::vector<cplx>> slots;
  std::vector<cplx>& at(size_t k) {
    if (slots.size() <= k) slots.resize(k + 1);
    return slots[k];
  }
  void clear() { slots.clear(); }
};

// extend = true accepts a root in the boundary band as the disc root; it is
// used for points of the boundary of U itself.
SResult try_eval_S(const BInvolutionData& data, cplx u, bool extend = false,
                   std::vector<cplx>* warm = nullptr);
cplx eval_S(const BInvolutionData& data, cplx u);  // throws OutOfDomain / Undecidable

enum class Verdict { TileRank, NonEscapingApprox, Undecided };
enum class Side { None, Omega, Kplus, Kminus };

struct TileClassification {
  Verdict verdict = Verdict::Undecided;
  int rank = -1;
  Side side = Side::None;

  bool operator==(const TileClassification&) const = default;
};

inline constexpr double kSingularBand = 1e-4;

TileClassification tile_rank(const BInvolutionData& data, cplx u, int max_rank,
                             RootCache* cache = nullptr);
TileClassification classify_corr_point(const BInvolutionData& data, cplx z, int max_rank,
                                       RootCache* cache = nullptr);

Side mirror(Side s);

// The disc root of Q(x) = S(Q(z)), i.e. the forward branch that keeps K+.
std::optional<cplx> distinguished_branch(const BInvolutionData& data, cplx z);

// Images of z under the correspondence against the roots of Q(w) = S(Q(z))
// with one copy of J(z) removed. Throws Undecidable / OutOfDomain.
bool check_prop67(const BInvolutionData& data, cplx z, double* residual = nullptr);

struct InjectivityReport {
  int samples = 0;
  int collisions = 0;         // samples with a second root in the closed disc
  int kset_samples = 0;       // non-escaping samples checked for the sheet count
  int kset_bad = 0;           // of those, not exactly 1 inside and d outside
  bool boundary_simple = false;
  int boundary_winding = 0;
  bool pass() const { return collisions == 0 && kset_bad == 0 && boundary_simple && boundary_winding == 1; }
};

InjectivityReport injectivity_witness(const BInvolutionData& data, int n, int max_rank = 30);

// S o S - id on the boundary of U, away from the singular set.
double boundary_involution_residual(const BInvolutionData& data, int samples, double min_arc = 1e-2);

// r(t) = exp(b1 sin t + b2 sin 2t): J-symmetric since r(-t) = 1/r(t).
std::vector<cplx> symmetric_boundary(double b1, double b2, int n);

// Q(0) = 0, Q'(z) = (1 - z)(1 - z/r)^(d-1).
Polynomial pinched_polynomial(int d, double r);

struct SearchCandidate {
  double r, b1, b2;
};

struct SearchResult {
  BInvolutionData data;
  SearchCandidate params;
  int tried;
  long nonescaping;
};

// First candidate that validates and has non-escaping points on a coarse census.
std::optional<SearchResult> search_instance(int d, int vertices = 4096, double tol = 1e-6);

// Census of tile ranks over a grid covering U's bounding box.
long nonescaping_census(const BInvolutionData& data, int n, int max_rank);

}  // namespace hecke
