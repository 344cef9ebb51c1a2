#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gtorsion/groups.hpp"
#include "gtorsion/linalg.hpp"

namespace gtorsion {

/// Which module(s) Gamma is applied to. `sum` is Gamma(ker d2 + coker d^2).
enum class Side { ker, coker, both, sum };

[[nodiscard]] Side parse_side(std::string_view s);
[[nodiscard]] std::string_view to_string(Side s);

struct TargetReport {
  std::size_t zrank{0};
  std::size_t gamma_zrank{0};
  /// Torsion of the coinvariants of Gamma; both oracles agreed on it.
  AbelianInvariants h0;
  friend bool operator==(const TargetReport&, const TargetReport&) = default;
};

struct CheckOutcome {
  std::string name;
  bool passed{false};
  friend bool operator==(const CheckOutcome&, const CheckOutcome&) = default;
};

struct ComputationReport {
  std::string group;
  std::size_t order{0};
  std::optional<TargetReport> ker;
  std::optional<TargetReport> coker;
  std::optional<TargetReport> sum;
  /// Stage name and wall time in milliseconds, in execution order.
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<CheckOutcome> checks;

  [[nodiscard]] bool all_checks_passed() const;
  friend bool operator==(const ComputationReport&, const ComputationReport&) = default;
};

struct ComputeOptions {
  std::uint64_t max_order{32};
  /// Validate every Gamma action against the relators.
  bool validate_gamma{true};
};

/// 32, or the value of GAMMA_TORSION_MAX_ORDER when set. Throws ParseError on
/// a malformed value.
[[nodiscard]] std::uint64_t default_max_order();

/// Both Tate oracles run on every target; a disagreement throws
/// ConsistencyError. Throws OrderBoundError above options.max_order.
[[nodiscard]] ComputationReport compute(const FiniteGroup& g, Side side, const ComputeOptions& options = {});
/// `spec` is a group-spec string, a catalog name, or "@path" to a group JSON file.
[[nodiscard]] ComputationReport compute(std::string_view spec, Side side, const ComputeOptions& options = {});
[[nodiscard]] FiniteGroup load_group(std::string_view spec, std::uint64_t max_order);

/// compute() over every catalog group of order <= max_order, in catalog order.
[[nodiscard]] std::vector<ComputationReport> table(std::uint64_t max_order, Side side = Side::ker,
                                                   const ComputeOptions& options = {});

[[nodiscard]] std::string to_json(const ComputationReport& r, int indent = -1);
[[nodiscard]] std::string to_json(std::span<const ComputationReport> rs, int indent = -1);
[[nodiscard]] ComputationReport report_from_json(std::string_view text);
[[nodiscard]] std::vector<ComputationReport> reports_from_json(std::string_view text);

[[nodiscard]] std::string format_text(const ComputationReport& r);
/// One row per report: group, order, the zranks and each H0.
[[nodiscard]] std::string format_table(std::span<const ComputationReport> rs);

}  // namespace gtorsion
