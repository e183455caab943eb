#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dkp/scalar.hpp"

namespace dkp {

/// Per-point payload of a grid. The numeric codes are part of the file format.
enum class PayloadKind : std::uint8_t {
  wavefunction = 0,  // 5 complex
  four_vector = 1,   // 4 complex
  scalar = 2,        // 1 complex
  tensor = 3,        // 16 complex, row-major (mu, nu)
};

std::size_t component_count(PayloadKind kind);
const char* to_string(PayloadKind kind);

/// Rectangular 4D lattice, axis 0 (t) slowest. Point coordinates are x^mu = i_mu h_mu.
/// An axis of extent 1 is a symmetry axis: derivatives along it vanish.
struct GridShape {
  std::array<std::size_t, 4> extents{1, 1, 1, 1};
  std::array<double, 4> spacing{1.0, 1.0, 1.0, 1.0};

  /// Throws ShapeError on a zero extent or a non-positive / non-finite spacing.
  void validate() const;
  std::size_t points() const;
  std::size_t stride(int axis) const;
  std::size_t index(const std::array<std::size_t, 4>& coords) const;
  std::array<std::size_t, 4> coords(std::size_t flat) const;
  std::array<double, 4> position(std::size_t flat) const;

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

/// Row-major array of per-point payloads over a GridShape.
class FieldGrid {
 public:
  FieldGrid() = default;
  FieldGrid(GridShape shape, PayloadKind kind);

  const GridShape& shape() const { return shape_; }
  PayloadKind kind() const { return kind_; }
  std::size_t components() const { return components_; }
  std::size_t points() const { return shape_.points(); }

  Complex& at(std::size_t point, std::size_t comp) { return values_[point * components_ + comp]; }
  const Complex& at(std::size_t point, std::size_t comp) const {
    return values_[point * components_ + comp];
  }
  std::span<Complex> point(std::size_t p) {
    return std::span<Complex>(values_).subspan(p * components_, components_);
  }
  std::span<const Complex> point(std::size_t p) const {
    return std::span<const Complex>(values_).subspan(p * components_, components_);
  }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

 private:
  GridShape shape_;
  PayloadKind kind_ = PayloadKind::scalar;
  std::size_t components_ = 1;
  std::vector<Complex> values_;
};

/// Throws ShapeError unless both grids share extents and spacing.
void require_same_shape(const FieldGrid& a, const FieldGrid& b, const char* what);

/// Binary layout, little-endian: "DKP5", u32 version (1), u8 payload kind,
/// 4 x u64 extents, 4 x f64 spacings, then (re, im) f64 pairs row-major.
std::vector<std::uint8_t> encode_grid(const FieldGrid& grid);
/// Throws FormatError (with byte offset) on bad magic, version, kind, shape or length.
FieldGrid decode_grid(std::span<const std::uint8_t> bytes);

void store_grid(const FieldGrid& grid, const std::filesystem::path& path);
FieldGrid load_grid(const std::filesystem::path& path);

/// d/dx^axis with second-order central differences inside and second-order one-sided
/// stencils at the ends. Extent 1 gives the zero field; extent 2 throws StencilError.
FieldGrid partial_derivative(const FieldGrid& grid, int axis);

/// d^2/d(x^axis)^2: (f_-1 - 2 f_0 + f_1)/h^2 inside, (2f_0 - 5f_1 + 4f_2 - f_3)/h^2 at the ends,
/// second order throughout. Composing partial_derivative with itself is only first order
/// within two points of a boundary. Extent 1 gives zero; extents 2 and 3 throw StencilError.
FieldGrid second_partial_derivative(const FieldGrid& grid, int axis);

}  // namespace dkp
