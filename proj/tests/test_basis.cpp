#include <doctest.h>

#include <random>
#include <vector>

#include "dkp/basis.hpp"
#include "dkp/errors.hpp"

using namespace dkp;
using Q = GaussianRational;

namespace {

// Oracle: direct product of reference-representation matrices along the word.
Matrix5<Q> word_product(const KemmerRep<Q>& rep, const std::vector<int>& word) {
  Matrix5<Q> m = Matrix5<Q>::identity();
  for (int idx : word) m = m * rep.beta[idx];
  return m;
}

std::vector<std::vector<int>> words_of_length(int len) {
  std::vector<std::vector<int>> out{{}};
  for (int l = 0; l < len; ++l) {
    std::vector<std::vector<int>> next;
    for (const auto& w : out)
      for (int i = 0; i < 4; ++i) {
        auto e = w;
        e.push_back(i);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("empty word reduces to the identity") {
  const auto c = reduce_word(std::vector<int>{});
  CHECK(c == ExactCombination::unit(basis_identity()));
}

TEST_CASE("single generators map to their basis element") {
  for (int mu = 0; mu < 4; ++mu) {
    CHECK(reduce_word(std::vector<int>{mu}) == ExactCombination::unit(basis_beta(mu)));
  }
}

TEST_CASE("beta0 beta1 beta0 vanishes and beta0^3 = beta0") {
  CHECK(reduce_word(std::vector<int>{0, 1, 0}).is_zero());
  CHECK(reduce_word(std::vector<int>{0, 0, 0}) == ExactCombination::unit(basis_beta(0)));
}

TEST_CASE("out-of-range indices are domain errors") {
  CHECK_THROWS_AS(reduce_word(std::vector<int>{0, 4}), DomainError);
  CHECK_THROWS_AS(reduce_word(std::vector<int>{-1}), DomainError);
}

TEST_CASE("symbolic reduction matches the matrix product for every word up to length 5") {
  const auto rep = build_representation<Q>();
  std::size_t checked = 0;
  for (int len = 0; len <= 5; ++len) {
    for (const auto& w : words_of_length(len)) {
      const auto reduced = reduce_word(w);
      REQUIRE(eval_basis_combination(rep, reduced) == word_product(rep, w));
      ++checked;
    }
  }
  CHECK(checked == 1 + 4 + 16 + 64 + 256 + 1024);
}

TEST_CASE("reduction is multiplicative through the structure constants") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> gen(0, 3), len(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a(len(rng)), b(len(rng));
    for (auto& x : a) x = gen(rng);
    for (auto& x : b) x = gen(rng);
    std::vector<int> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    REQUIRE(multiply(reduce_word(a), reduce_word(b)) == reduce_word(ab));
  }
}

TEST_CASE("basis elements multiply consistently with their matrices") {
  const auto rep = build_representation<Q>();
  for (std::size_t i = 0; i < kBasisSize; ++i)
    for (std::size_t j = 0; j < kBasisSize; ++j) {
      const auto prod = multiply(ExactCombination::unit(i), ExactCombination::unit(j));
      REQUIRE(eval_basis_combination(rep, prod) == basis_matrix(rep, i) * basis_matrix(rep, j));
    }
}

TEST_CASE("eval of trivial combinations") {
  const auto rep = build_representation<Q>();
  CHECK(eval_basis_combination(rep, ExactCombination{}).is_zero());
  CHECK(eval_basis_combination(rep, ExactCombination::unit(0)) == Matrix5<Q>::identity());
}

TEST_CASE("float evaluation agrees with the exact one") {
  const auto rep = build_representation<Complex>();
  const auto c = reduce_word(std::vector<int>{2, 1, 1, 3});
  const auto m = eval_basis_combination(rep, to_float(c));
  const auto exact = eval_basis_combination(build_representation<Q>(), c);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(m(i, j) - exact(i, j).to_complex()) < 1e-15);
}

TEST_CASE("runtime evaluation rejects mixed scalar modes") {
  const AnyKemmerRep exact_rep = build_representation(ScalarMode::exact);
  const AnyKemmerRep float_rep = build_representation(ScalarMode::floating);
  const AnyBasisCombination c = reduce_word(std::vector<int>{1, 2});
  CHECK_THROWS_AS(eval_basis_combination(float_rep, c), ModeError);
  const auto m = eval_basis_combination(exact_rep, c);
  CHECK(std::holds_alternative<Matrix5<Q>>(m));
}

TEST_CASE("basis labels follow the canonical ordering") {
  CHECK(basis_label(0) == "I");
  CHECK(basis_label(basis_beta(2)) == "beta2");
  CHECK(basis_label(basis_beta_dot(3)) == "beta_dot3");
  CHECK(basis_label(basis_beta_pair(1, 2)) == "beta1beta2");
  CHECK_THROWS_AS(basis_label(25), DomainError);
}
