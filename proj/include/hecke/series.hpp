#pragma once

#include <vector>

namespace hecke {

// Real power series truncated at a fixed order, c[k] multiplies x^k.
class Series {
 public:
  explicit Series(int order) : c_(order, 0.0) {}
  Series(int order, std::vector<double> coeffs);

  int order() const { return static_cast<int>(c_.size()); }
  double& operator[](int k) { return c_[k]; }
  double operator[](int k) const { return c_[k]; }

  Series operator*(const Series& o) const;
  Series operator+(const Series& o) const;
  Series operator*(double s) const;

  // 1 / this; requires c[0] != 0.
  Series reciprocal() const;
  // this(inner(x)); requires inner[0] == 0.
  Series compose(const Series& inner) const;

  static Series log1p(int order);  // log(1 + x)
  static Series expm1(int order);  // exp(x) - 1

 private:
  std::vector<double> c_;
};

}  // namespace hecke
