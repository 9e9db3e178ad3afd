#include "hlab/series.hpp"

#include <algorithm>
#include <cmath>

namespace hlab {

// ---- one variable ----

TruncSeries1::TruncSeries1(int D) : D_(D), c_(D + 1) {
  require(D >= 0, "truncation order must be non-negative");
}

TruncSeries1::TruncSeries1(int D, std::vector<cx> coeffs) : TruncSeries1(D) {
  require(coeffs.size() <= c_.size(), "more coefficients than the truncation order allows");
  std::copy(coeffs.begin(), coeffs.end(), c_.begin());
}

TruncSeries1 TruncSeries1::identity(int D) {
  TruncSeries1 f(D);
  if (D >= 1) f[1] = 1.0;
  return f;
}

TruncSeries1 TruncSeries1::constant(int D, cx c) {
  TruncSeries1 f(D);
  f[0] = c;
  return f;
}

cx& TruncSeries1::operator[](int k) { return c_.at(k); }
cx TruncSeries1::operator[](int k) const { return c_.at(k); }

cx TruncSeries1::eval(cx x) const {
  cx acc = 0;
  for (int k = D_; k >= 0; --k) acc = acc * x + c_[k];
  return acc;
}

TruncSeries1 TruncSeries1::derivative() const {
  TruncSeries1 d(D_);
  for (int k = 1; k <= D_; ++k) d.c_[k - 1] = double(k) * c_[k];
  return d;
}

TruncSeries1 TruncSeries1::truncated(int D2) const {
  TruncSeries1 r(D2);
  for (int k = 0; k <= std::min(D2, D_); ++k) r.c_[k] = c_[k];
  return r;
}

TruncSeries1 TruncSeries1::scaled_arg(cx s) const {
  TruncSeries1 r(D_);
  cx p = 1;
  for (int k = 0; k <= D_; ++k, p *= s) r.c_[k] = c_[k] * p;
  return r;
}

double TruncSeries1::max_abs() const {
  double m = 0;
  for (auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

TruncSeries1& TruncSeries1::operator+=(const TruncSeries1& o) {
  require(o.D_ == D_, "truncation orders differ");
  for (int k = 0; k <= D_; ++k) c_[k] += o.c_[k];
  return *this;
}

TruncSeries1& TruncSeries1::operator-=(const TruncSeries1& o) {
  require(o.D_ == D_, "truncation orders differ");
  for (int k = 0; k <= D_; ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncSeries1& TruncSeries1::operator*=(cx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

TruncSeries1 operator+(TruncSeries1 a, const TruncSeries1& b) { return a += b; }
TruncSeries1 operator-(TruncSeries1 a, const TruncSeries1& b) { return a -= b; }
TruncSeries1 operator*(cx s, TruncSeries1 a) { return a *= s; }

TruncSeries1 operator*(const TruncSeries1& a, const TruncSeries1& b) {
  require(a.order() == b.order(), "truncation orders differ");
  int D = a.order();
  TruncSeries1 r(D);
  for (int i = 0; i <= D; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; i + j <= D; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

TruncSeries1 compose1(const TruncSeries1& outer, const TruncSeries1& inner) {
  require(outer.order() == inner.order(), "truncation orders differ");
  if (inner[0] != 0.0) throw precondition_error("composition requires inner(0)=0");
  int D = outer.order();
  // Horner; inner has no constant term so each step gains a degree
  TruncSeries1 acc = TruncSeries1::constant(D, outer[D]);
  for (int k = D - 1; k >= 0; --k) {
    acc = acc * inner;
    acc[0] += outer[k];
  }
  return acc;
}

TruncSeries1 invert1(const TruncSeries1& f) {
  int D = f.order();
  if (f[0] != 0.0) throw precondition_error("composition requires inner(0)=0");
  if (D < 1 || std::abs(f[1]) < 1e-300) throw precondition_error("non-invertible jet");
  cx l = f[1];
  TruncSeries1 id = TruncSeries1::identity(D);
  TruncSeries1 g = (1.0 / l) * id;
  // g <- g + (x - f(g))/f'(0); each pass fixes one more degree
  for (int it = 1; it < D; ++it) g += (1.0 / l) * (id - compose1(f, g));
  return g;
}

// ---- two variables ----

TruncSeries2::TruncSeries2(int D) : D_(D), c_((D + 1) * (D + 2) / 2) {
  require(D >= 0, "truncation order must be non-negative");
}

TruncSeries2 TruncSeries2::var_x(int D) {
  TruncSeries2 f(D);
  if (D >= 1) f.at(1, 0) = 1.0;
  return f;
}

TruncSeries2 TruncSeries2::var_y(int D) {
  TruncSeries2 f(D);
  if (D >= 1) f.at(0, 1) = 1.0;
  return f;
}

TruncSeries2 TruncSeries2::constant(int D, cx c) {
  TruncSeries2 f(D);
  f.at(0, 0) = c;
  return f;
}

cx& TruncSeries2::at(int i, int j) {
  if (i < 0 || j < 0 || i + j > D_) throw std::out_of_range("TruncSeries2 index beyond truncation");
  return c_[idx(i, j)];
}

cx TruncSeries2::at(int i, int j) const {
  if (i < 0 || j < 0 || i + j > D_) throw std::out_of_range("TruncSeries2 index beyond truncation");
  return c_[idx(i, j)];
}

cx TruncSeries2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > D_) return 0.0;
  return c_[idx(i, j)];
}

cx TruncSeries2::eval(cx x, cx y) const {
  // Horner in x over polynomials in y
  cx acc = 0;
  for (int i = D_; i >= 0; --i) {
    cx py = 0;
    for (int j = D_ - i; j >= 0; --j) py = py * y + c_[idx(i, j)];
    acc = acc * x + py;
  }
  return acc;
}

TruncSeries2 TruncSeries2::dx() const {
  TruncSeries2 r(D_);
  for (int n = 1; n <= D_; ++n)
    for (int i = 1; i <= n; ++i) r.c_[idx(i - 1, n - i)] = double(i) * c_[idx(i, n - i)];
  return r;
}

TruncSeries2 TruncSeries2::dy() const {
  TruncSeries2 r(D_);
  for (int n = 1; n <= D_; ++n)
    for (int j = 1; j <= n; ++j) r.c_[idx(n - j, j - 1)] = double(j) * c_[idx(n - j, j)];
  return r;
}

TruncSeries2 TruncSeries2::truncated(int D2) const {
  TruncSeries2 r(D2);
  for (int n = 0; n <= std::min(D2, D_); ++n)
    for (int i = 0; i <= n; ++i) r.at(i, n - i) = c_[idx(i, n - i)];
  return r;
}

double TruncSeries2::max_abs() const {
  double m = 0;
  for (auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

TruncSeries2& TruncSeries2::operator+=(const TruncSeries2& o) {
  require(o.D_ == D_, "truncation orders differ");
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TruncSeries2& TruncSeries2::operator-=(const TruncSeries2& o) {
  require(o.D_ == D_, "truncation orders differ");
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncSeries2& TruncSeries2::operator*=(cx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

TruncSeries2 operator+(TruncSeries2 a, const TruncSeries2& b) { return a += b; }
TruncSeries2 operator-(TruncSeries2 a, const TruncSeries2& b) { return a -= b; }
TruncSeries2 operator*(cx s, TruncSeries2 a) { return a *= s; }

TruncSeries2 operator*(const TruncSeries2& a, const TruncSeries2& b) {
  require(a.order() == b.order(), "truncation orders differ");
  int D = a.order();
  TruncSeries2 r(D);
  for (int n1 = 0; n1 <= D; ++n1)
    for (int i1 = 0; i1 <= n1; ++i1) {
      cx u = a.at(i1, n1 - i1);
      if (u == 0.0) continue;
      for (int n2 = 0; n1 + n2 <= D; ++n2)
        for (int i2 = 0; i2 <= n2; ++i2) r.at(i1 + i2, n1 - i1 + n2 - i2) += u * b.at(i2, n2 - i2);
    }
  return r;
}

Map2 identity2(int D) { return {TruncSeries2::var_x(D), TruncSeries2::var_y(D)}; }

Map2 truncated(const Map2& f, int D2) { return {f[0].truncated(D2), f[1].truncated(D2)}; }

static void check_inner(const Map2& g) {
  if (g[0].at(0, 0) != 0.0 || g[1].at(0, 0) != 0.0)
    throw precondition_error("composition requires inner(0)=0");
}

TruncSeries2 compose(const TruncSeries2& f, const Map2& g) {
  int D = f.order();
  require(g[0].order() == D && g[1].order() == D, "truncation orders differ");
  check_inner(g);
  std::vector<TruncSeries2> ypow(D + 1, TruncSeries2(D));
  ypow[0] = TruncSeries2::constant(D, 1.0);
  for (int j = 1; j <= D; ++j) ypow[j] = ypow[j - 1] * g[1];
  auto column = [&](int i) {
    TruncSeries2 p(D);
    for (int j = 0; i + j <= D; ++j) {
      cx c = f.at(i, j);
      if (c != 0.0) p += c * ypow[j];
    }
    return p;
  };
  TruncSeries2 acc = column(D);
  for (int i = D - 1; i >= 0; --i) acc = acc * g[0] + column(i);
  return acc;
}

TruncSeries2 compose(const TruncSeries1& f, const TruncSeries2& g) {
  int D = f.order();
  require(g.order() == D, "truncation orders differ");
  if (g.at(0, 0) != 0.0) throw precondition_error("composition requires inner(0)=0");
  TruncSeries2 acc = TruncSeries2::constant(D, f[D]);
  for (int k = D - 1; k >= 0; --k) {
    acc = acc * g;
    acc.at(0, 0) += f[k];
  }
  return acc;
}

Map2 compose2(const Map2& outer, const Map2& inner) {
  return {compose(outer[0], inner), compose(outer[1], inner)};
}

Map2 invert2(const Map2& f) {
  int D = f[0].order();
  check_inner(f);
  if (D < 1) throw precondition_error("non-invertible jet");
  cx a = f[0].at(1, 0), b = f[0].at(0, 1), c = f[1].at(1, 0), d = f[1].at(0, 1);
  cx det = a * d - b * c;
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), 1e-300});
  if (std::abs(det) < 1e-14 * scale * scale) throw precondition_error("non-invertible jet");
  // L^{-1} applied to a pair
  auto linv = [&](const Map2& v) {
    return Map2{(d / det) * v[0] - (b / det) * v[1], (a / det) * v[1] - (c / det) * v[0]};
  };
  Map2 id = identity2(D);
  Map2 g = linv(id);
  for (int it = 1; it < D; ++it) {
    Map2 fg = compose2(f, g);
    Map2 corr = linv({id[0] - fg[0], id[1] - fg[1]});
    g[0] += corr[0];
    g[1] += corr[1];
  }
  return g;
}

std::array<cx, 2> eval(const Map2& f, cx x, cx y) { return {f[0].eval(x, y), f[1].eval(x, y)}; }

std::array<cx, 4> jacobian(const Map2& f, cx x, cx y) {
  return {f[0].dx().eval(x, y), f[0].dy().eval(x, y), f[1].dx().eval(x, y), f[1].dy().eval(x, y)};
}

double max_abs_diff(const TruncSeries1& a, const TruncSeries1& b) { return (a - b).max_abs(); }

double max_abs_diff(const Map2& a, const Map2& b) {
  return std::max((a[0] - b[0]).max_abs(), (a[1] - b[1]).max_abs());
}

double max_abs_diff(const Map2& a, const Map2& b, int upto) {
  return max_abs_diff(truncated(a, upto), truncated(b, upto));
}

}  // namespace hlab
