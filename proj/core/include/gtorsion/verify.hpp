#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gtorsion {

/// Outcome of one property over all of its cases.
struct PropertyResult {
  std::string suite;
  std::string property;
  bool passed{false};
  std::size_t cases{0};
  /// First failing case, empty when the property passed.
  std::string counterexample;
};

struct VerifyOptions {
  std::uint64_t seed{20240611};
  /// Catalog groups up to this order take part in the per-group suites.
  std::uint64_t max_order{16};
  /// Bound for the stability suite, whose modules are stabilized twice.
  std::uint64_t stability_max_order{8};
  /// Number of random lattice modules in the oracle-fuzz suite.
  std::size_t fuzz_modules{100};
};

/// linalg, gamma-axioms, theorem-3-1, prop-3-5, prop-4-4, prop-6-1,
/// prop-6-2, stability, sylow-primes, structural, oracle-fuzz, all.
[[nodiscard]] const std::vector<std::string>& suite_names();

/// Runs one suite (or every suite for "all"). Each suite ends with a property
/// recording that both Tate oracles agreed on every module it built. Throws
/// InvalidArgumentError for an unknown suite name.
[[nodiscard]] std::vector<PropertyResult> verify(std::string_view suite, const VerifyOptions& options = {});

[[nodiscard]] bool all_passed(std::span<const PropertyResult> results);
[[nodiscard]] std::string to_json(std::span<const PropertyResult> results, int indent = -1);
[[nodiscard]] std::string format_text(std::span<const PropertyResult> results);

}  // namespace gtorsion
