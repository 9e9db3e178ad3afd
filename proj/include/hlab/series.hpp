#pragma once

#include <array>
#include <vector>

#include "hlab/common.hpp"

namespace hlab {

// Power series in one variable truncated at degree D.
class TruncSeries1 {
 public:
  explicit TruncSeries1(int D = 0);
  TruncSeries1(int D, std::vector<cx> coeffs);  // missing tail is zero, longer input is an error

  static TruncSeries1 identity(int D);
  static TruncSeries1 constant(int D, cx c);

  int order() const { return D_; }
  cx& operator[](int k);
  cx operator[](int k) const;
  const std::vector<cx>& coeffs() const { return c_; }

  cx eval(cx x) const;
  TruncSeries1 derivative() const;  // stays at order D, top coefficient becomes 0
  TruncSeries1 truncated(int D2) const;
  TruncSeries1 scaled_arg(cx s) const;  // f(s x)
  double max_abs() const;

  TruncSeries1& operator+=(const TruncSeries1& o);
  TruncSeries1& operator-=(const TruncSeries1& o);
  TruncSeries1& operator*=(cx s);

 private:
  int D_;
  std::vector<cx> c_;
};

TruncSeries1 operator+(TruncSeries1 a, const TruncSeries1& b);
TruncSeries1 operator-(TruncSeries1 a, const TruncSeries1& b);
TruncSeries1 operator*(const TruncSeries1& a, const TruncSeries1& b);
TruncSeries1 operator*(cx s, TruncSeries1 a);

TruncSeries1 compose1(const TruncSeries1& outer, const TruncSeries1& inner);
TruncSeries1 invert1(const TruncSeries1& f);

// Two variables, total-degree truncation i+j <= D.
class TruncSeries2 {
 public:
  explicit TruncSeries2(int D = 0);

  static TruncSeries2 var_x(int D);
  static TruncSeries2 var_y(int D);
  static TruncSeries2 constant(int D, cx c);

  int order() const { return D_; }
  // Both throw std::out_of_range when i+j > D.
  cx& at(int i, int j);
  cx at(int i, int j) const;
  // Read access that answers 0 beyond the truncation; never used for writes.
  cx coeff(int i, int j) const;

  cx eval(cx x, cx y) const;
  TruncSeries2 dx() const;
  TruncSeries2 dy() const;
  TruncSeries2 truncated(int D2) const;
  double max_abs() const;

  TruncSeries2& operator+=(const TruncSeries2& o);
  TruncSeries2& operator-=(const TruncSeries2& o);
  TruncSeries2& operator*=(cx s);

 private:
  int idx(int i, int j) const { return (i + j) * (i + j + 1) / 2 + j; }
  int D_;
  std::vector<cx> c_;
};

TruncSeries2 operator+(TruncSeries2 a, const TruncSeries2& b);
TruncSeries2 operator-(TruncSeries2 a, const TruncSeries2& b);
TruncSeries2 operator*(const TruncSeries2& a, const TruncSeries2& b);
TruncSeries2 operator*(cx s, TruncSeries2 a);

// A germ of a map (C^2,0) -> C^2 as a pair of series.
using Map2 = std::array<TruncSeries2, 2>;

Map2 identity2(int D);
Map2 truncated(const Map2& f, int D2);

// f(g(x,y)) for scalar f and a pair g vanishing at the origin.
TruncSeries2 compose(const TruncSeries2& f, const Map2& g);
// f(g(x,y)) with f in one variable and g(0,0)=0.
TruncSeries2 compose(const TruncSeries1& f, const TruncSeries2& g);
Map2 compose2(const Map2& outer, const Map2& inner);
Map2 invert2(const Map2& f);

std::array<cx, 2> eval(const Map2& f, cx x, cx y);
// Jacobian rows (d f0/dx, d f0/dy; d f1/dx, d f1/dy) at a point.
std::array<cx, 4> jacobian(const Map2& f, cx x, cx y);

double max_abs_diff(const TruncSeries1& a, const TruncSeries1& b);
double max_abs_diff(const Map2& a, const Map2& b);
// Same but only over total degree <= upto.
double max_abs_diff(const Map2& a, const Map2& b, int upto);

}  // namespace hlab
