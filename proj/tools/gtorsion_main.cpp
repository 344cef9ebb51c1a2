// gtorsion: compute H0(pi; Gamma(ker d2)) and friends from the command line.
//
// Exit codes: 0 success, 1 a check or verification property failed,
// 2 usage/parse/catalog error, 3 order bound exceeded, 4 internal
// consistency failure, 5 presentation does not generate the relations,
// 6 anything else.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gtorsion/errors.hpp"
#include "gtorsion/pipeline.hpp"
#include "gtorsion/verify.hpp"

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, order_bound = 3, consistency = 4, deficiency = 5, other = 6 };

int exit_code_for(const gtorsion::Error& e) {
  using gtorsion::ErrorKind;
  switch (e.kind()) {
    case ErrorKind::invalid_argument:
    case ErrorKind::parse:
    case ErrorKind::catalog_miss: return usage;
    case ErrorKind::order_bound: return order_bound;
    case ErrorKind::not_a_lattice:
    case ErrorKind::consistency: return consistency;
    case ErrorKind::presentation_deficiency: return deficiency;
  }
  return other;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tate homology of Whitehead's Gamma for ker d2 and coker d^2 of finite groups"};
  app.require_subcommand(1);

  std::string format = "text";
  std::optional<std::uint64_t> max_order;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-order", max_order, "Largest group order to accept (default 32 or $GAMMA_TORSION_MAX_ORDER)");
  };

  auto* compute = app.add_subcommand("compute", "Run the pipeline for one group");
  std::string group;
  std::string side = "ker";
  std::uint64_t seed = 0;
  bool no_validate = false;
  compute->add_option("--group", group, "Group spec such as C4xC2xC2, a catalog name, or @file.json")->required();
  compute->add_option("--side", side, "ker, coker, both or sum")->check(CLI::IsMember({"ker", "coker", "both", "sum"}));
  compute->add_option("--seed", seed, "Accepted for interface compatibility; compute is deterministic");
  compute->add_flag("--no-validate", no_validate, "Skip validating Gamma actions against the relators");
  add_common(compute);

  auto* table = app.add_subcommand("table", "Run the pipeline over the built-in catalog");
  std::string table_side = "ker";
  table->add_option("--side", table_side, "ker, coker, both or sum")
      ->check(CLI::IsMember({"ker", "coker", "both", "sum"}));
  add_common(table);

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string suite;
  std::uint64_t verify_seed = gtorsion::VerifyOptions{}.seed;
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(gtorsion::suite_names()));
  verify->add_option("--seed", verify_seed, "Seed for the random cases");
  add_common(verify);

  auto* groups = app.add_subcommand("groups", "List the catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    const std::uint64_t bound = max_order ? *max_order : gtorsion::default_max_order();
    const bool json = format == "json";
    if (compute->parsed()) {
      gtorsion::ComputeOptions opts{bound, !no_validate};
      const auto report = gtorsion::compute(group, gtorsion::parse_side(side), opts);
      std::cout << (json ? gtorsion::to_json(report, 2) + "\n" : gtorsion::format_text(report));
      return report.all_checks_passed() ? ok : check_failed;
    }
    if (table->parsed()) {
      if (bound > 32) throw gtorsion::InvalidArgumentError("table supports --max-order up to 32");
      const auto reports = gtorsion::table(bound, gtorsion::parse_side(table_side), gtorsion::ComputeOptions{bound});
      std::cout << (json ? gtorsion::to_json(std::span<const gtorsion::ComputationReport>(reports), 2) + "\n"
                         : gtorsion::format_table(reports));
      for (const auto& r : reports)
        if (!r.all_checks_passed()) return check_failed;
      return ok;
    }
    if (verify->parsed()) {
      gtorsion::VerifyOptions opts;
      opts.seed = verify_seed;
      if (max_order) opts.max_order = *max_order;
      const auto results = gtorsion::verify(suite, opts);
      std::cout << (json ? gtorsion::to_json(std::span<const gtorsion::PropertyResult>(results), 2) + "\n"
                         : gtorsion::format_text(results));
      return gtorsion::all_passed(results) ? ok : check_failed;
    }
    if (groups->parsed()) {
      for (const auto& name : gtorsion::catalog_names())
        std::cout << name << '\t' << gtorsion::group_spec_order(name) << '\n';
      return ok;
    }
  } catch (const gtorsion::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return other;
  }
  return usage;
}
