#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dkp/grid.hpp"

namespace dkp {

/// Per-point exclusion mask; true = masked (no claim made at that point).
using Mask = std::vector<bool>;

struct ResidualStats {
  double max_abs = 0.0;
  double rms = 0.0;
  double masked_fraction = 0.0;
  std::size_t counted = 0;
};

/// Max-abs and RMS over every component of every unmasked point, accumulated in row-major
/// order so results do not depend on execution order. An empty mask means "nothing masked".
ResidualStats residual_stats(const FieldGrid& residual, const Mask& mask = {});

struct CheckRecord {
  std::string identity;
  ResidualStats stats;
  double tolerance = 0.0;
  bool pass = false;
};

/// Grades stats against `tolerance`. A record with no unmasked points passes vacuously only
/// if `allow_empty` is set.
CheckRecord make_check(std::string identity, const ResidualStats& stats, double tolerance,
                       bool allow_empty = false);

struct Report {
  std::vector<CheckRecord> checks;
  /// Reported but never graded into the exit status.
  std::vector<CheckRecord> diagnostics;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  bool all_pass() const;
  const CheckRecord* find(const std::string& identity) const;
};

nlohmann::ordered_json to_json(const CheckRecord& r);
nlohmann::ordered_json to_json(const Report& r);

struct NamedField {
  std::string name;
  FieldGrid field;
  Mask mask;
};

/// One row per point: point index, coordinates, the singular-mask flag, then for each field
/// the largest component magnitude at that point (empty when the field masks the point).
std::string per_point_csv(const GridShape& shape, const Mask& singular,
                          const std::vector<NamedField>& fields);

/// CSV with one row per check/diagnostic and the schema fields as columns.
std::string to_csv(const Report& r);

}  // namespace dkp
