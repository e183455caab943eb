#pragma once

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <ostream>
#include <string>

namespace dkp {

using Complex = std::complex<double>;

enum class ScalarMode { exact, floating };

/// Exact complex number a + b i with a, b arbitrary-precision rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// num/den + 0 i, canonicalized.
  static GaussianRational ratio(long num, long den);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  /// |z|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  double magnitude() const;
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) {
    return GaussianRational(mpq_class(-a.re_), mpq_class(-a.im_));
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend GaussianRational conj(const GaussianRational& a) {
    return GaussianRational(a.re_, mpq_class(-a.im_));
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Per-mode arithmetic the algebra code needs beyond + - * /.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::exact;
  static GaussianRational ratio(long num, long den) { return GaussianRational::ratio(num, den); }
  static GaussianRational imaginary_unit() { return GaussianRational(0, 1); }
  static double magnitude(const GaussianRational& z) { return z.magnitude(); }
  static bool is_zero(const GaussianRational& z, double /*tol*/) { return z.is_zero(); }
  static Complex to_complex(const GaussianRational& z) { return z.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::floating;
  static Complex ratio(long num, long den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static Complex imaginary_unit() { return {0.0, 1.0}; }
  static double magnitude(const Complex& z) { return std::abs(z); }
  static bool is_zero(const Complex& z, double tol) { return std::abs(z) <= tol; }
  static Complex to_complex(const Complex& z) { return z; }
};

template <class T>
concept DkpScalar = requires(const T& a, const T& b) {
  { ScalarTraits<T>::exact } -> std::convertible_to<bool>;
  { a + b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
};

template <DkpScalar T>
T ratio(long num, long den) {
  return ScalarTraits<T>::ratio(num, den);
}

template <DkpScalar T>
T imaginary_unit() {
  return ScalarTraits<T>::imaginary_unit();
}

template <DkpScalar T>
double magnitude(const T& z) {
  return ScalarTraits<T>::magnitude(z);
}

template <DkpScalar T>
T conjugate(const T& z) {
  using std::conj;
  return T(conj(z));
}

/// Exact mode ignores `tol`; floating mode compares |z| <= tol.
template <DkpScalar T>
bool is_zero(const T& z, double tol) {
  return ScalarTraits<T>::is_zero(z, tol);
}

inline const char* to_string(ScalarMode mode) {
  return mode == ScalarMode::exact ? "exact" : "float";
}

// Minkowski metric diag(1,-1,-1,-1); raising and lowering go through it.
inline constexpr std::array<int, 4> kMetric{1, -1, -1, -1};

inline constexpr int metric(int mu, int nu) { return mu == nu ? kMetric[mu] : 0; }

template <class T>
using FourVector = std::array<T, 4>;

template <class T>
using Tensor4 = std::array<std::array<T, 4>, 4>;

}  // namespace dkp
