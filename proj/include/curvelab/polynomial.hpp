#pragma once

// Dense homogeneous polynomials F(x, y, z) of fixed degree.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "curvelab/errors.hpp"
#include "curvelab/geometry.hpp"

namespace curvelab {

template <typename Scalar>
class HomogeneousPolynomial {
 public:
  using Vector = Vector3<Scalar>;
  using Matrix = Matrix3<Scalar>;

  struct Derivatives {
    Scalar value;
    Vector gradient;
    Matrix hessian;
  };

  explicit HomogeneousPolynomial(int degree = 0) : degree_(degree), coeffs_(size_for(degree), Scalar(0)) {
    if (degree < 0) fail(ErrorCode::DegreeMismatch, "negative degree");
  }

  int degree() const { return degree_; }
  static int size_for(int degree) { return (degree + 1) * (degree + 2) / 2; }

  /// Index of the monomial x^i y^j z^(d-i-j).
  int index(int i, int j) const {
    if (i < 0 || j < 0 || i + j > degree_) fail(ErrorCode::DegreeMismatch, "monomial outside degree");
    const int a = degree_ - i;  // exponents with x^i fixed form a block of length a + 1
    return (degree_ - a) * (2 * degree_ - (degree_ - a) + 3) / 2 + j;
  }

  Scalar coeff(int i, int j) const { return coeffs_[index(i, j)]; }
  Scalar& coeff(int i, int j) { return coeffs_[index(i, j)]; }
  /// Adds c to the coefficient of x^i y^j z^k; throws DegreeMismatch unless i + j + k = degree.
  void add(int i, int j, int k, Scalar c) {
    if (i < 0 || j < 0 || k < 0 || i + j + k != degree_)
      fail(ErrorCode::DegreeMismatch, "monomial exponents do not sum to the degree");
    coeffs_[index(i, j)] += c;
  }

  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  template <typename F>
  void for_each_monomial(F&& f) const {
    for (int i = 0; i <= degree_; ++i)
      for (int j = 0; i + j <= degree_; ++j) f(i, j, degree_ - i - j, coeffs_[index(i, j)]);
  }

  int nonzero_terms() const {
    int n = 0;
    for (const auto& c : coeffs_) n += c != Scalar(0);
    return n;
  }

  bool is_zero() const { return nonzero_terms() == 0; }

  /// Largest absolute coefficient.
  Scalar scale() const {
    Scalar s(0);
    for (const auto& c : coeffs_) s = std::max(s, std::abs(c));
    return s;
  }

  Scalar operator()(const Vector& p) const {
    Scalar px[kMaxDegree + 1], py[kMaxDegree + 1], pz[kMaxDegree + 1];
    powers(p, px, py, pz);
    Scalar sum(0);
    for_each_monomial([&](int i, int j, int k, Scalar c) {
      if (c != Scalar(0)) sum += c * px[i] * py[j] * pz[k];
    });
    return sum;
  }

  Derivatives derivatives(const Vector& p) const {
    Scalar px[kMaxDegree + 1], py[kMaxDegree + 1], pz[kMaxDegree + 1];
    powers(p, px, py, pz);
    auto pw = [](const Scalar* base, int e) { return e < 0 ? Scalar(0) : base[e]; };
    Derivatives d{Scalar(0), Vector::Zero(), Matrix::Zero()};
    for_each_monomial([&](int i, int j, int k, Scalar c) {
      if (c == Scalar(0)) return;
      d.value += c * px[i] * py[j] * pz[k];
      d.gradient.x() += c * i * pw(px, i - 1) * py[j] * pz[k];
      d.gradient.y() += c * j * px[i] * pw(py, j - 1) * pz[k];
      d.gradient.z() += c * k * px[i] * py[j] * pw(pz, k - 1);
      d.hessian(0, 0) += c * i * (i - 1) * pw(px, i - 2) * py[j] * pz[k];
      d.hessian(1, 1) += c * j * (j - 1) * px[i] * pw(py, j - 2) * pz[k];
      d.hessian(2, 2) += c * k * (k - 1) * px[i] * py[j] * pw(pz, k - 2);
      d.hessian(0, 1) += c * i * j * pw(px, i - 1) * pw(py, j - 1) * pz[k];
      d.hessian(0, 2) += c * i * k * pw(px, i - 1) * py[j] * pw(pz, k - 1);
      d.hessian(1, 2) += c * j * k * px[i] * pw(py, j - 1) * pw(pz, k - 1);
    });
    d.hessian(1, 0) = d.hessian(0, 1);
    d.hessian(2, 0) = d.hessian(0, 2);
    d.hessian(2, 1) = d.hessian(1, 2);
    return d;
  }

  Vector gradient(const Vector& p) const { return derivatives(p).gradient; }
  Matrix hessian(const Vector& p) const { return derivatives(p).hessian; }
  Scalar hessian_det(const Vector& p) const { return derivatives(p).hessian.determinant(); }

  /// Coefficients, lowest order first, of u -> F(p + u w).
  std::vector<Scalar> restrict_to_line(const Vector& p, const Vector& w) const {
    std::vector<Scalar> out(degree_ + 1, Scalar(0));
    std::vector<Scalar> lin[3];
    for (int a = 0; a < 3; ++a) lin[a] = {p[a], w[a]};
    for_each_monomial([&](int i, int j, int k, Scalar c) {
      if (c == Scalar(0)) return;
      std::vector<Scalar> term{c};
      for (int e = 0; e < i; ++e) term = multiply(term, lin[0]);
      for (int e = 0; e < j; ++e) term = multiply(term, lin[1]);
      for (int e = 0; e < k; ++e) term = multiply(term, lin[2]);
      for (size_t e = 0; e < term.size(); ++e) out[e] += term[e];
    });
    return out;
  }

  /// G(P) = F(A P).
  HomogeneousPolynomial composed(const Matrix& A) const {
    HomogeneousPolynomial out(degree_);
    // rows of A as linear forms
    HomogeneousPolynomial forms[3] = {HomogeneousPolynomial(1), HomogeneousPolynomial(1), HomogeneousPolynomial(1)};
    for (int r = 0; r < 3; ++r) {
      forms[r].coeff(1, 0) = A(r, 0);
      forms[r].coeff(0, 1) = A(r, 1);
      forms[r].coeff(0, 0) = A(r, 2);
    }
    for_each_monomial([&](int i, int j, int k, Scalar c) {
      if (c == Scalar(0)) return;
      HomogeneousPolynomial term(0);
      term.coeffs_[0] = c;
      for (int e = 0; e < i; ++e) term = term * forms[0];
      for (int e = 0; e < j; ++e) term = term * forms[1];
      for (int e = 0; e < k; ++e) term = term * forms[2];
      for (size_t e = 0; e < out.coeffs_.size(); ++e) out.coeffs_[e] += term.coeffs_[e];
    });
    return out;
  }

  /// dF/dx, dF/dy or dF/dz for axis 0, 1, 2.
  HomogeneousPolynomial partial(int axis) const {
    if (degree_ == 0) return HomogeneousPolynomial(0);
    HomogeneousPolynomial out(degree_ - 1);
    for_each_monomial([&](int i, int j, int k, Scalar c) {
      const int e[3] = {i, j, k};
      if (c == Scalar(0) || e[axis] == 0) return;
      int f[3] = {i, j, k};
      --f[axis];
      out.add(f[0], f[1], f[2], c * Scalar(e[axis]));
    });
    return out;
  }

  /// det of the Hessian matrix as a polynomial of degree 3(d - 2).
  HomogeneousPolynomial hessian_polynomial() const {
    if (degree_ < 2) return HomogeneousPolynomial(0);
    HomogeneousPolynomial h[3][3];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) h[r][c] = partial(r).partial(c);
    auto minor = [&](int r1, int c1, int r2, int c2) {
      return h[r1][c1] * h[r2][c2] + Scalar(-1) * (h[r1][c2] * h[r2][c1]);
    };
    return h[0][0] * minor(1, 1, 2, 2) + Scalar(-1) * (h[0][1] * minor(1, 0, 2, 2)) + h[0][2] * minor(1, 0, 2, 1);
  }

  friend HomogeneousPolynomial operator*(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    HomogeneousPolynomial out(a.degree_ + b.degree_);
    a.for_each_monomial([&](int i1, int j1, int, Scalar c1) {
      if (c1 == Scalar(0)) return;
      b.for_each_monomial([&](int i2, int j2, int, Scalar c2) {
        if (c2 != Scalar(0)) out.coeffs_[out.index(i1 + i2, j1 + j2)] += c1 * c2;
      });
    });
    return out;
  }

  friend HomogeneousPolynomial operator+(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    if (a.degree_ != b.degree_) fail(ErrorCode::DegreeMismatch, "sum of polynomials of different degree");
    HomogeneousPolynomial out = a;
    for (size_t e = 0; e < out.coeffs_.size(); ++e) out.coeffs_[e] += b.coeffs_[e];
    return out;
  }

  friend HomogeneousPolynomial operator*(Scalar s, const HomogeneousPolynomial& a) {
    HomogeneousPolynomial out = a;
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }

  bool operator==(const HomogeneousPolynomial& other) const = default;

  static constexpr int kMaxDegree = 24;

 private:
  void powers(const Vector& p, Scalar* px, Scalar* py, Scalar* pz) const {
    if (degree_ > kMaxDegree) fail(ErrorCode::DegreeMismatch, "degree exceeds supported maximum");
    px[0] = py[0] = pz[0] = Scalar(1);
    for (int e = 1; e <= degree_; ++e) {
      px[e] = px[e - 1] * p.x();
      py[e] = py[e - 1] * p.y();
      pz[e] = pz[e - 1] * p.z();
    }
  }

  static std::vector<Scalar> multiply(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> out(a.size() + b.size() - 1, Scalar(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  }

  int degree_;
  std::vector<Scalar> coeffs_;
};

using Polynomial = HomogeneousPolynomial<double>;

}  // namespace curvelab
