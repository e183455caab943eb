#include "dkp/basis.hpp"

#include <vector>

#include "dkp/errors.hpp"

namespace dkp {

std::string basis_label(std::size_t index) {
  if (index == 0) return "I";
  if (index < 5) return "beta" + std::to_string(index - 1);
  if (index < 9) return "beta_dot" + std::to_string(index - 5);
  if (index < kBasisSize) {
    const std::size_t k = index - 9;
    return "beta" + std::to_string(k / 4) + "beta" + std::to_string(k % 4);
  }
  throw DomainError("basis index out of range: " + std::to_string(index));
}

namespace {

using Q = GaussianRational;

Q g(int a, int b) { return Q(metric(a, b)); }

// table[b][nu] = (basis element b) * beta_nu on the canonical basis.
using StructureTable = std::array<std::array<ExactCombination, 4>, kBasisSize>;

StructureTable build_structure_table() {
  StructureTable table;
  const Q half = Q::ratio(1, 2);
  const Q two_thirds = Q::ratio(2, 3);
  for (int nu = 0; nu < 4; ++nu) {
    table[basis_identity()][nu] = ExactCombination::unit(basis_beta(nu));
    for (int mu = 0; mu < 4; ++mu) {
      table[basis_beta(mu)][nu] = ExactCombination::unit(basis_beta_pair(mu, nu));

      // beta_dot_mu beta_nu = beta_mu beta_nu - 2/3 eta_{mu nu} (beta^2 - I),
      // with beta^2 = eta^{ab} beta_a beta_b.
      ExactCombination dot = ExactCombination::unit(basis_beta_pair(mu, nu));
      if (mu == nu) {
        const Q c = two_thirds * g(mu, nu);
        for (int a = 0; a < 4; ++a) dot.coeffs[basis_beta_pair(a, a)] -= c * g(a, a);
        dot.coeffs[basis_identity()] += c;
      }
      table[basis_beta_dot(mu)][nu] = dot;
    }
    // beta_k beta_l beta_nu = 1/2 (eta_{kl} beta_nu + eta_{nu l} beta_k)
    //                       + 1/2 (eta_{nu l} beta_dot_k - eta_{kl} beta_dot_nu).
    for (int k = 0; k < 4; ++k) {
      for (int l = 0; l < 4; ++l) {
        ExactCombination c;
        c.coeffs[basis_beta(nu)] += half * g(k, l);
        c.coeffs[basis_beta(k)] += half * g(nu, l);
        c.coeffs[basis_beta_dot(k)] += half * g(nu, l);
        c.coeffs[basis_beta_dot(nu)] -= half * g(k, l);
        table[basis_beta_pair(k, l)][nu] = c;
      }
    }
  }
  return table;
}

const StructureTable& structure_table() {
  static const StructureTable table = build_structure_table();
  return table;
}

struct Word {
  std::vector<int> indices;
  Q coeff;
};

// Each basis element written as a combination of generator words.
std::vector<Word> basis_as_words(std::size_t index) {
  if (index == basis_identity()) return {{{}, Q(1)}};
  if (index < 5) return {{{static_cast<int>(index - 1)}, Q(1)}};
  if (index < 9) {
    // beta_dot_mu = 1/3 eta^{aa} (beta_mu beta_a beta_a - beta_a beta_a beta_mu).
    const int mu = static_cast<int>(index - 5);
    std::vector<Word> words;
    for (int a = 0; a < 4; ++a) {
      const Q c = Q::ratio(kMetric[a], 3);
      words.push_back({{mu, a, a}, c});
      words.push_back({{a, a, mu}, -c});
    }
    return words;
  }
  const std::size_t k = index - 9;
  return {{{static_cast<int>(k / 4), static_cast<int>(k % 4)}, Q(1)}};
}

void check_index(int idx) {
  if (idx < 0 || idx > 3) throw DomainError("generator index out of range 0..3: " + std::to_string(idx));
}

}  // namespace

ExactCombination right_multiply_beta(const ExactCombination& x, int nu) {
  check_index(nu);
  const auto& table = structure_table();
  ExactCombination out;
  for (std::size_t b = 0; b < kBasisSize; ++b) {
    if (x.coeffs[b].is_zero()) continue;
    const auto& row = table[b][nu];
    for (std::size_t c = 0; c < kBasisSize; ++c) {
      if (row.coeffs[c].is_zero()) continue;
      out.coeffs[c] += x.coeffs[b] * row.coeffs[c];
    }
  }
  return out;
}

ExactCombination reduce_word(std::span<const int> word) {
  for (int idx : word) check_index(idx);
  ExactCombination acc = ExactCombination::unit(basis_identity());
  for (int idx : word) acc = right_multiply_beta(acc, idx);
  return acc;
}

ExactCombination multiply(const ExactCombination& a, const ExactCombination& b) {
  ExactCombination out;
  for (std::size_t c = 0; c < kBasisSize; ++c) {
    if (b.coeffs[c].is_zero()) continue;
    for (const auto& w : basis_as_words(c)) {
      ExactCombination term = a;
      for (int idx : w.indices) term = right_multiply_beta(term, idx);
      out += (b.coeffs[c] * w.coeff) * term;
    }
  }
  return out;
}

BasisCombination<Complex> to_float(const ExactCombination& c) {
  BasisCombination<Complex> out;
  for (std::size_t i = 0; i < kBasisSize; ++i) out.coeffs[i] = c.coeffs[i].to_complex();
  return out;
}

AnyMatrix5 eval_basis_combination(const AnyKemmerRep& rep, const AnyBasisCombination& c) {
  if (rep.index() != c.index()) {
    throw ModeError("representation and basis combination use different scalar modes");
  }
  if (rep.index() == 0) {
    return eval_basis_combination(std::get<0>(rep), std::get<0>(c));
  }
  return eval_basis_combination(std::get<1>(rep), std::get<1>(c));
}

}  // namespace dkp
