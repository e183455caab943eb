#include "dkp/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "dkp/errors.hpp"

namespace dkp {

std::size_t component_count(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::wavefunction: return 5;
    case PayloadKind::four_vector: return 4;
    case PayloadKind::scalar: return 1;
    case PayloadKind::tensor: return 16;
  }
  throw ShapeError("unknown payload kind");
}

const char* to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::wavefunction: return "wavefunction";
    case PayloadKind::four_vector: return "four-vector";
    case PayloadKind::scalar: return "scalar";
    case PayloadKind::tensor: return "tensor";
  }
  return "unknown";
}

void GridShape::validate() const {
  for (int a = 0; a < 4; ++a) {
    if (extents[a] == 0) throw ShapeError("grid extent along axis " + std::to_string(a) + " is 0");
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
      throw ShapeError("grid spacing along axis " + std::to_string(a) + " must be positive");
  }
}

std::size_t GridShape::points() const {
  return extents[0] * extents[1] * extents[2] * extents[3];
}

std::size_t GridShape::stride(int axis) const {
  std::size_t s = 1;
  for (int a = 3; a > axis; --a) s *= extents[a];
  return s;
}

std::size_t GridShape::index(const std::array<std::size_t, 4>& c) const {
  return ((c[0] * extents[1] + c[1]) * extents[2] + c[2]) * extents[3] + c[3];
}

std::array<std::size_t, 4> GridShape::coords(std::size_t flat) const {
  std::array<std::size_t, 4> c{};
  for (int a = 3; a >= 0; --a) {
    c[a] = flat % extents[a];
    flat /= extents[a];
  }
  return c;
}

std::array<double, 4> GridShape::position(std::size_t flat) const {
  const auto c = coords(flat);
  return {c[0] * spacing[0], c[1] * spacing[1], c[2] * spacing[2], c[3] * spacing[3]};
}

FieldGrid::FieldGrid(GridShape shape, PayloadKind kind)
    : shape_(shape), kind_(kind), components_(component_count(kind)) {
  shape_.validate();
  values_.assign(shape_.points() * components_, Complex(0.0, 0.0));
}

void require_same_shape(const FieldGrid& a, const FieldGrid& b, const char* what) {
  if (!(a.shape() == b.shape())) throw ShapeError(std::string("grid shape mismatch: ") + what);
}

namespace {

constexpr char kMagic[4] = {'D', 'K', 'P', '5'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 4 + 1 + 4 * 8 + 4 * 8;

template <class U>
void put(std::vector<std::uint8_t>& out, U value) {
  static_assert(std::is_trivially_copyable_v<U>);
  std::array<std::uint8_t, sizeof(U)> raw;
  std::memcpy(raw.data(), &value, sizeof(U));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
  out.insert(out.end(), raw.begin(), raw.end());
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <class U>
  U get(const char* what) {
    if (bytes_.size() - pos_ < sizeof(U))
      throw FormatError(std::string("truncated grid file reading ") + what, pos_);
    std::array<std::uint8_t, sizeof(U)> raw;
    std::memcpy(raw.data(), bytes_.data() + pos_, sizeof(U));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
    U value;
    std::memcpy(&value, raw.data(), sizeof(U));
    pos_ += sizeof(U);
    return value;
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_grid(const FieldGrid& grid) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + grid.values().size() * 16);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put(out, kVersion);
  put(out, static_cast<std::uint8_t>(grid.kind()));
  for (auto e : grid.shape().extents) put(out, static_cast<std::uint64_t>(e));
  for (auto h : grid.shape().spacing) put(out, h);
  for (const auto& v : grid.values()) {
    put(out, v.real());
    put(out, v.imag());
  }
  return out;
}

FieldGrid decode_grid(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  std::array<char, 4> magic{};
  for (auto& c : magic) c = static_cast<char>(in.get<std::uint8_t>("magic"));
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("bad magic, expected DKP5", 0);

  const std::size_t version_at = in.pos();
  const auto version = in.get<std::uint32_t>("version");
  if (version != kVersion)
    throw FormatError("unsupported grid version " + std::to_string(version), version_at);

  const std::size_t kind_at = in.pos();
  const auto kind_code = in.get<std::uint8_t>("payload kind");
  if (kind_code > static_cast<std::uint8_t>(PayloadKind::tensor))
    throw FormatError("unknown payload kind " + std::to_string(kind_code), kind_at);
  const auto kind = static_cast<PayloadKind>(kind_code);

  GridShape shape;
  for (int a = 0; a < 4; ++a) {
    const std::size_t at = in.pos();
    const auto e = in.get<std::uint64_t>("extent");
    if (e == 0) throw FormatError("extent 0 on axis " + std::to_string(a), at);
    shape.extents[a] = static_cast<std::size_t>(e);
  }
  for (int a = 0; a < 4; ++a) {
    const std::size_t at = in.pos();
    const double h = in.get<double>("spacing");
    if (!(h > 0.0) || !std::isfinite(h))
      throw FormatError("non-positive spacing on axis " + std::to_string(a), at);
    shape.spacing[a] = h;
  }

  // Guard the product against overflow before trusting it as a length.
  std::size_t expected = component_count(kind) * 16;
  for (auto e : shape.extents) {
    if (e > in.remaining() / expected + 1) {
      throw FormatError("payload shorter than extents require", in.pos());
    }
    expected *= e;
  }
  if (in.remaining() != expected) {
    throw FormatError("payload length " + std::to_string(in.remaining()) + " does not match " +
                          std::to_string(expected) + " bytes implied by the header",
                      in.pos());
  }

  FieldGrid grid(shape, kind);
  for (auto& v : grid.values()) {
    const double re = in.get<double>("payload");
    const double im = in.get<double>("payload");
    v = Complex(re, im);
  }
  return grid;
}

void store_grid(const FieldGrid& grid, const std::filesystem::path& path) {
  const auto bytes = encode_grid(grid);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

FieldGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_grid(bytes);
}

FieldGrid partial_derivative(const FieldGrid& grid, int axis) {
  if (axis < 0 || axis > 3) throw DomainError("derivative axis must be 0..3");
  const GridShape& shape = grid.shape();
  FieldGrid out(shape, grid.kind());
  const std::size_t n = shape.extents[axis];
  if (n == 1) return out;
  if (n == 2) {
    throw StencilError("axis " + std::to_string(axis) +
                       " has extent 2; derivatives need extent 1 (symmetry) or >= 3");
  }
  const double inv2h = 1.0 / (2.0 * shape.spacing[axis]);
  const std::size_t stride = shape.stride(axis);
  const std::size_t comps = grid.components();

  for (std::size_t p = 0; p < shape.points(); ++p) {
    const std::size_t i = shape.coords(p)[axis];
    for (std::size_t c = 0; c < comps; ++c) {
      auto f = [&](std::ptrdiff_t offset) {
        return grid.at(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) +
                                                offset * static_cast<std::ptrdiff_t>(stride)),
                       c);
      };
      Complex d;
      if (i == 0) {
        // (-3 f0 + 4 f1 - f2) / 2h, grouped so constants difference to exactly zero.
        const Complex f0 = f(0);
        d = (4.0 * (f(1) - f0) - (f(2) - f0)) * inv2h;
      } else if (i == n - 1) {
        const Complex f0 = f(0);
        d = -(4.0 * (f(-1) - f0) - (f(-2) - f0)) * inv2h;
      } else {
        d = (f(1) - f(-1)) * inv2h;
      }
      out.at(p, c) = d;
    }
  }
  return out;
}

FieldGrid second_partial_derivative(const FieldGrid& grid, int axis) {
  if (axis < 0 || axis > 3) throw DomainError("derivative axis must be 0..3");
  const GridShape& shape = grid.shape();
  FieldGrid out(shape, grid.kind());
  const std::size_t n = shape.extents[axis];
  if (n == 1) return out;
  if (n < 4) {
    throw StencilError("axis " + std::to_string(axis) + " has extent " + std::to_string(n) +
                       "; second derivatives need extent 1 (symmetry) or >= 4");
  }
  const double inv_h2 = 1.0 / (shape.spacing[axis] * shape.spacing[axis]);
  const std::size_t stride = shape.stride(axis);
  const std::size_t comps = grid.components();

  for (std::size_t p = 0; p < shape.points(); ++p) {
    const std::size_t i = shape.coords(p)[axis];
    for (std::size_t c = 0; c < comps; ++c) {
      auto f = [&](std::ptrdiff_t offset) {
        return grid.at(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) +
                                                offset * static_cast<std::ptrdiff_t>(stride)),
                       c);
      };
      const Complex f0 = f(0);
      Complex d;
      // Differences against f0 so constants give exactly zero.
      if (i == 0) {
        d = (-5.0 * (f(1) - f0) + 4.0 * (f(2) - f0) - (f(3) - f0)) * inv_h2;
      } else if (i == n - 1) {
        d = (-5.0 * (f(-1) - f0) + 4.0 * (f(-2) - f0) - (f(-3) - f0)) * inv_h2;
      } else {
        d = ((f(1) - f0) + (f(-1) - f0)) * inv_h2;
      }
      out.at(p, c) = d;
    }
  }
  return out;
}

}  // namespace dkp
