#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dkp/basis.hpp"
#include "dkp/bilinears.hpp"

namespace dkp {

/// 25 entries in canonical basis order: [num_re, den_re, num_im, den_im] (integers; a value
/// that does not fit in 64 bits is written as a decimal string).
nlohmann::json to_json(const ExactCombination& c);
/// 25 entries [re, im].
nlohmann::json to_json(const BasisCombination<Complex>& c);

/// Fixed key order: S, Sflat, J0..J3, ImH0..ImH3, ReK00, ImK00, ..., ReK33, ImK33, Z, then the
/// tilde currents as Re/Im pairs (TildeS, TildeSflat, TildeJ0..3, TildeK00..33, TildeZ).
/// Tilde H is omitted: it vanishes identically.
const std::vector<std::string>& current_set_keys();

/// Values in current_set_keys() order.
std::vector<double> current_set_values(const CurrentSet<Complex>& cs);

nlohmann::ordered_json to_json(const CurrentSet<Complex>& cs);
/// Exact values are written as canonical rational strings ("p/q" or "p").
nlohmann::ordered_json to_json(const CurrentSet<GaussianRational>& cs);

}  // namespace dkp
