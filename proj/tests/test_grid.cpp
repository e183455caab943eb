#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>

#include "dkp/errors.hpp"
#include "dkp/grid.hpp"

using namespace dkp;

namespace {

GridShape shape_of(std::array<std::size_t, 4> n, std::array<double, 4> h = {1, 1, 1, 1}) {
  GridShape s;
  s.extents = n;
  s.spacing = h;
  return s;
}

FieldGrid random_grid(const GridShape& s, PayloadKind kind, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  FieldGrid g(s, kind);
  for (auto& v : g.values()) v = {n(rng), n(rng)};
  return g;
}

template <class F>
FieldGrid sample(const GridShape& s, F&& f) {
  FieldGrid g(s, PayloadKind::scalar);
  for (std::size_t p = 0; p < s.points(); ++p) g.at(p, 0) = f(s.position(p));
  return g;
}

double max_diff(const FieldGrid& a, const FieldGrid& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace

TEST_CASE("index and coordinate round trip") {
  const auto s = shape_of({2, 3, 4, 5});
  CHECK(s.points() == 120);
  CHECK(s.stride(3) == 1);
  CHECK(s.stride(0) == 60);
  for (std::size_t p = 0; p < s.points(); ++p) CHECK(s.index(s.coords(p)) == p);
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS_AS(FieldGrid(shape_of({1, 0, 1, 1}), PayloadKind::scalar), ShapeError);
  CHECK_THROWS_AS(FieldGrid(shape_of({1, 1, 1, 1}, {1, -1, 1, 1}), PayloadKind::scalar), ShapeError);
}

TEST_CASE("binary round trip is bit exact") {
  for (auto kind : {PayloadKind::wavefunction, PayloadKind::four_vector, PayloadKind::scalar,
                    PayloadKind::tensor}) {
    const auto g = random_grid(shape_of({3, 2, 1, 4}, {0.5, 0.25, 1.0, 0.125}), kind, 7);
    const auto bytes = encode_grid(g);
    const auto back = decode_grid(bytes);
    CHECK(back.kind() == kind);
    CHECK(back.shape() == g.shape());
    REQUIRE(back.values().size() == g.values().size());
    CHECK(std::memcmp(back.values().data(), g.values().data(), g.values().size_bytes()) == 0);
  }
}

TEST_CASE("file round trip") {
  const auto g = random_grid(shape_of({2, 2, 2, 2}), PayloadKind::wavefunction, 3);
  const auto path = std::filesystem::temp_directory_path() / "dkp_test_grid.bin";
  store_grid(g, path);
  const auto back = load_grid(path);
  std::filesystem::remove(path);
  CHECK(max_diff(g, back) == 0.0);
}

TEST_CASE("corrupt files raise FormatError with offsets") {
  const auto g = random_grid(shape_of({2, 1, 1, 3}), PayloadKind::four_vector, 11);
  const auto bytes = encode_grid(g);

  SUBCASE("truncated payload") {
    std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 5);
    CHECK_THROWS_AS(decode_grid(cut), FormatError);
  }
  SUBCASE("truncated header") {
    std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 20);
    try {
      decode_grid(cut);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.offset() >= 9);
    }
  }
  SUBCASE("trailing bytes") {
    auto extra = bytes;
    extra.push_back(0);
    CHECK_THROWS_AS(decode_grid(extra), FormatError);
  }
  SUBCASE("bad magic") {
    auto bad = bytes;
    bad[0] = 'X';
    try {
      decode_grid(bad);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.offset() == 0);
    }
  }
  SUBCASE("extent zero") {
    auto bad = bytes;
    std::memset(bad.data() + 9 + 8, 0, 8);  // second extent
    try {
      decode_grid(bad);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.offset() == 17);
    }
  }
  SUBCASE("unknown payload kind") {
    auto bad = bytes;
    bad[8] = 9;
    CHECK_THROWS_AS(decode_grid(bad), FormatError);
  }
  SUBCASE("huge extent does not allocate") {
    auto bad = bytes;
    std::memset(bad.data() + 9, 0xff, 8);
    CHECK_THROWS_AS(decode_grid(bad), FormatError);
  }
}

TEST_CASE("derivative of a constant is exactly zero") {
  const auto s = shape_of({5, 4, 3, 1}, {0.1, 0.3, 0.7, 1.0});
  const auto g = sample(s, [](auto) { return Complex(0.37, -1.91); });
  for (int axis = 0; axis < 4; ++axis) {
    const auto d = partial_derivative(g, axis);
    for (const auto& v : d.values()) CHECK(v == Complex(0.0, 0.0));
  }
}

TEST_CASE("quadratics differentiate exactly up to round-off") {
  const auto s = shape_of({7, 1, 1, 1}, {0.25, 1, 1, 1});
  const auto g = sample(s, [](auto x) { return Complex(x[0] * x[0], 0.0); });
  const auto expected = sample(s, [](auto x) { return Complex(2.0 * x[0], 0.0); });
  CHECK(max_diff(partial_derivative(g, 0), expected) < 1e-13);
}

TEST_CASE("second-order convergence on a smooth function") {
  auto error = [](std::size_t n) {
    const double h = 1.0 / static_cast<double>(n - 1);
    const auto s = shape_of({1, n, 1, 1}, {1, h, 1, 1});
    const auto g = sample(s, [](auto x) { return Complex(std::sin(3.0 * x[1]), 0.0); });
    const auto exact = sample(s, [](auto x) { return Complex(3.0 * std::cos(3.0 * x[1]), 0.0); });
    return max_diff(partial_derivative(g, 1), exact);
  };
  const double ratio = error(21) / error(41);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("extent rules for stencils") {
  const auto g2 = random_grid(shape_of({2, 3, 3, 3}), PayloadKind::scalar, 1);
  CHECK_THROWS_AS(partial_derivative(g2, 0), StencilError);
  CHECK_NOTHROW(partial_derivative(g2, 1));
  const auto g1 = random_grid(shape_of({1, 3, 3, 3}), PayloadKind::scalar, 2);
  const auto d = partial_derivative(g1, 0);
  for (const auto& v : d.values()) CHECK(v == Complex(0.0, 0.0));
  CHECK_THROWS_AS(partial_derivative(g1, 4), DomainError);
}

TEST_CASE("derivatives along different axes commute") {
  const auto s = shape_of({5, 6, 1, 1}, {0.2, 0.15, 1, 1});
  const auto g = sample(s, [](auto x) { return Complex(std::exp(x[0]) * std::sin(2 * x[1]), x[0] * x[1] * x[1]); });
  const auto a = partial_derivative(partial_derivative(g, 0), 1);
  const auto b = partial_derivative(partial_derivative(g, 1), 0);
  CHECK(max_diff(a, b) < 1e-12);
}
