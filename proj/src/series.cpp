#include "hecke/series.hpp"

#include <stdexcept>

namespace hecke {

Series::Series(int order, std::vector<double> coeffs) : c_(order, 0.0) {
  for (int k = 0; k < order && k < static_cast<int>(coeffs.size()); ++k) c_[k] = coeffs[k];
}

Series Series::operator*(const Series& o) const {
  Series r(order());
  for (int i = 0; i < order(); ++i)
    for (int j = 0; i + j < order(); ++j) r[i + j] += c_[i] * o[j];
  return r;
}

Series Series::operator+(const Series& o) const {
  Series r(order());
  for (int i = 0; i < order(); ++i) r[i] = c_[i] + o[i];
  return r;
}

Series Series::operator*(double s) const {
  Series r(order());
  for (int i = 0; i < order(); ++i) r[i] = c_[i] * s;
  return r;
}

Series Series::reciprocal() const {
  if (c_[0] == 0.0) throw std::domain_error("series reciprocal: zero constant term");
  Series r(order());
  r[0] = 1.0 / c_[0];
  for (int n = 1; n < order(); ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += c_[k] * r[n - k];
    r[n] = -s / c_[0];
  }
  return r;
}

Series Series::compose(const Series& inner) const {
  if (inner[0] != 0.0) throw std::domain_error("series compose: inner series has a constant term");
  Series r(order());
  Series p(order());
  p[0] = 1.0;
  for (int k = 0; k < order(); ++k) {
    r = r + p * c_[k];
    p = p * inner;
  }
  return r;
}

Series Series::log1p(int order) {
  Series r(order);
  for (int k = 1; k < order; ++k) r[k] = (k % 2 ? 1.0 : -1.0) / k;
  return r;
}

Series Series::expm1(int order) {
  Series r(order);
  double f = 1.0;
  for (int k = 1; k < order; ++k) {
    f *= k;
    r[k] = 1.0 / f;
  }
  return r;
}

}  // namespace hecke
