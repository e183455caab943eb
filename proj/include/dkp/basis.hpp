#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>

#include "dkp/kemmer.hpp"
#include "dkp/scalar.hpp"

namespace dkp {

inline constexpr std::size_t kBasisSize = 25;

// Canonical ordering: I; beta_0..beta_3; beta_dot_0..beta_dot_3; beta_mu beta_nu row-major.
inline constexpr std::size_t basis_identity() { return 0; }
inline constexpr std::size_t basis_beta(int mu) { return 1 + static_cast<std::size_t>(mu); }
inline constexpr std::size_t basis_beta_dot(int mu) { return 5 + static_cast<std::size_t>(mu); }
inline constexpr std::size_t basis_beta_pair(int mu, int nu) {
  return 9 + 4 * static_cast<std::size_t>(mu) + static_cast<std::size_t>(nu);
}

std::string basis_label(std::size_t index);

/// Element of the 25-dimensional algebra as coefficients on the canonical basis.
template <DkpScalar T>
struct BasisCombination {
  std::array<T, kBasisSize> coeffs;

  BasisCombination() { coeffs.fill(T(0)); }

  static BasisCombination unit(std::size_t index, T value = T(1)) {
    BasisCombination c;
    c.coeffs[index] = std::move(value);
    return c;
  }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!dkp::is_zero(c, 0.0)) return false;
    return true;
  }

  BasisCombination& operator+=(const BasisCombination& o) {
    for (std::size_t i = 0; i < kBasisSize; ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  BasisCombination& operator-=(const BasisCombination& o) {
    for (std::size_t i = 0; i < kBasisSize; ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  BasisCombination& operator*=(const T& s) {
    for (auto& c : coeffs) c *= s;
    return *this;
  }
  friend BasisCombination operator+(BasisCombination a, const BasisCombination& b) { return a += b; }
  friend BasisCombination operator-(BasisCombination a, const BasisCombination& b) { return a -= b; }
  friend BasisCombination operator*(const T& s, BasisCombination a) { return a *= s; }
  friend bool operator==(const BasisCombination& a, const BasisCombination& b) {
    return a.coeffs == b.coeffs;
  }
};

using ExactCombination = BasisCombination<GaussianRational>;

/// Right multiplication by beta_nu, using structure constants derived symbolically from
/// the cubic reduction and the beta_dot beta product relation.
ExactCombination right_multiply_beta(const ExactCombination& x, int nu);

/// Canonical expansion of beta_{w1} beta_{w2} ... on the basis, folded left to right.
/// The empty word is the identity. Throws DomainError for indices outside 0..3.
ExactCombination reduce_word(std::span<const int> word);

/// Algebra product of two combinations, computed through the structure constants.
ExactCombination multiply(const ExactCombination& a, const ExactCombination& b);

BasisCombination<Complex> to_float(const ExactCombination& c);

template <DkpScalar T>
Matrix5<T> eval_basis_combination(const KemmerRep<T>& rep, const BasisCombination<T>& c) {
  Matrix5<T> out;
  for (std::size_t i = 0; i < kBasisSize; ++i) {
    if (dkp::is_zero(c.coeffs[i], 0.0)) continue;
    out += c.coeffs[i] * basis_matrix(rep, i);
  }
  return out;
}

using AnyBasisCombination = std::variant<ExactCombination, BasisCombination<Complex>>;
using AnyMatrix5 = std::variant<Matrix5<GaussianRational>, Matrix5<Complex>>;

/// Runtime-mode evaluation; throws ModeError when rep and combination modes differ.
AnyMatrix5 eval_basis_combination(const AnyKemmerRep& rep, const AnyBasisCombination& c);

}  // namespace dkp
