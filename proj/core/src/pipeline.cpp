#include "gtorsion/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "gtorsion/errors.hpp"
#include "gtorsion/gamma.hpp"
#include "gtorsion/resolutions.hpp"

namespace gtorsion {

Side parse_side(std::string_view s) {
  if (s == "ker") return Side::ker;
  if (s == "coker") return Side::coker;
  if (s == "both") return Side::both;
  if (s == "sum") return Side::sum;
  throw ParseError("unknown side '" + std::string(s) + "' (expected ker, coker, both or sum)");
}

std::string_view to_string(Side s) {
  switch (s) {
    case Side::ker: return "ker";
    case Side::coker: return "coker";
    case Side::both: return "both";
    case Side::sum: return "sum";
  }
  return "?";
}

bool ComputationReport::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

std::uint64_t default_max_order() {
  const char* env = std::getenv("GAMMA_TORSION_MAX_ORDER");
  if (env == nullptr || *env == '\0') return 32;
  std::uint64_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
    throw ParseError("GAMMA_TORSION_MAX_ORDER must be a positive integer, got '" + std::string(s) + "'");
  return v;
}

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<std::pair<std::string, double>>& out) : out_(out) {}
  void lap(std::string name) {
    const auto now = std::chrono::steady_clock::now();
    out_.emplace_back(std::move(name), std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  std::vector<std::pair<std::string, double>>& out_;
  std::chrono::steady_clock::time_point last_{std::chrono::steady_clock::now()};
};

bool factors_divide(const AbelianInvariants& a, std::size_t order) {
  const Integer n(static_cast<std::int64_t>(order));
  return std::all_of(a.torsion.begin(), a.torsion.end(), [&](const Integer& t) { return divides(t, n); });
}

TargetReport analyse(const std::string& label, const LatticeModule& m, const ComputeOptions& options,
                     ComputationReport& report, StageClock& clock) {
  const GammaModule gm = gamma(m, options.validate_gamma ? LatticeModule::Check::full : LatticeModule::Check::none);
  clock.lap("gamma_" + label);
  TargetReport t{m.zrank(), gm.module.zrank(), tate_h0(gm.module)};
  clock.lap("h0_" + label);
  const AbelianInvariants via_norm = tate_h0_via_norm(gm.module);
  clock.lap("h0_norm_" + label);
  if (!(via_norm == t.h0))
    throw ConsistencyError("Tate oracles disagree on " + label + " for " + report.group + ": coinvariant torsion " +
                           t.h0.to_string() + ", norm kernel " + via_norm.to_string());
  report.checks.push_back({label + ": oracles agree", true});
  report.checks.push_back({label + ": gamma rank r(r+1)/2", t.gamma_zrank == GammaIndex::rank_for(t.zrank)});
  report.checks.push_back({label + ": invariant factors divide |pi|", factors_divide(t.h0, report.order)});
  return t;
}

}  // namespace

ComputationReport compute(const FiniteGroup& g, Side side, const ComputeOptions& options) {
  if (g.order() > options.max_order)
    throw OrderBoundError("group " + g.name() + " has order " + std::to_string(g.order()) + " above the bound " +
                          std::to_string(options.max_order));
  ComputationReport report;
  report.group = g.name();
  report.order = g.order();
  StageClock clock(report.timings_ms);
  const GroupPtr gp = share(g);
  const PartialResolution res = presentation_complex(gp);
  clock.lap("presentation_complex");

  const bool need_ker = side != Side::coker;
  const bool need_coker = side != Side::ker;
  std::optional<LatticeModule> ker, coker;
  if (need_ker) {
    ker = ker_d2(res);
    clock.lap("ker_d2");
  }
  if (need_coker) {
    coker = coker_d2_dual(res);
    clock.lap("coker_d2");
  }
  if (side == Side::ker || side == Side::both) report.ker = analyse("ker", *ker, options, report, clock);
  if (side == Side::coker || side == Side::both) report.coker = analyse("coker", *coker, options, report, clock);
  if (side == Side::sum) report.sum = analyse("sum", direct_sum(*ker, *coker), options, report, clock);
  return report;
}

FiniteGroup load_group(std::string_view spec, std::uint64_t max_order) {
  if (!spec.empty() && spec.front() == '@') {
    const std::string path(spec.substr(1));
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read group file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return group_from_json(buf.str());
  }
  const std::uint64_t order = group_spec_order(spec);
  if (order > max_order)
    throw OrderBoundError("group " + std::string(spec) + " has order " + std::to_string(order) + " above the bound " +
                          std::to_string(max_order));
  return parse_group_spec(spec);
}

ComputationReport compute(std::string_view spec, Side side, const ComputeOptions& options) {
  return compute(load_group(spec, options.max_order), side, options);
}

std::vector<ComputationReport> table(std::uint64_t max_order, Side side, const ComputeOptions& options) {
  std::vector<ComputationReport> out;
  for (const auto& name : catalog_names())
    if (group_spec_order(name) <= max_order) out.push_back(compute(catalog(name), side, options));
  return out;
}

// ------------------------------------------------------------------ JSON

namespace {

using json = nlohmann::ordered_json;

json integer_json(const Integer& v) {
  if (v.fits_int64()) return v.to_int64();
  return v.to_string();
}

Integer integer_from(const json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<std::int64_t>());
}

json target_json(const TargetReport& t) {
  json h0 = json::array();
  for (const auto& f : t.h0.torsion) h0.push_back(integer_json(f));
  return {{"zrank", t.zrank}, {"gamma_zrank", t.gamma_zrank}, {"h0", h0}};
}

TargetReport target_from(const json& j) {
  TargetReport t;
  t.zrank = j.at("zrank").get<std::size_t>();
  t.gamma_zrank = j.value("gamma_zrank", GammaIndex::rank_for(t.zrank));
  for (const auto& f : j.at("h0")) t.h0.torsion.push_back(integer_from(f));
  if (!t.h0.is_valid()) throw ParseError("h0 is not a divisibility chain");
  return t;
}

json report_json(const ComputationReport& r) {
  json j{{"group", r.group}, {"order", r.order}};
  if (r.ker) j["ker"] = target_json(*r.ker);
  if (r.coker) j["coker"] = target_json(*r.coker);
  if (r.sum) j["sum"] = target_json(*r.sum);
  json timings = json::object();
  for (const auto& [stage, ms] : r.timings_ms) timings[stage] = ms;
  j["timings_ms"] = timings;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}});
  j["checks"] = checks;
  return j;
}

ComputationReport report_from(const json& j) {
  ComputationReport r;
  r.group = j.at("group").get<std::string>();
  r.order = j.at("order").get<std::size_t>();
  if (j.contains("ker")) r.ker = target_from(j.at("ker"));
  if (j.contains("coker")) r.coker = target_from(j.at("coker"));
  if (j.contains("sum")) r.sum = target_from(j.at("sum"));
  if (j.contains("timings_ms"))
    for (const auto& [stage, ms] : j.at("timings_ms").items()) r.timings_ms.emplace_back(stage, ms.get<double>());
  if (j.contains("checks"))
    for (const auto& c : j.at("checks")) r.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>()});
  return r;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const ComputationReport& r, int indent) { return report_json(r).dump(indent); }

std::string to_json(std::span<const ComputationReport> rs, int indent) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a.dump(indent);
}

ComputationReport report_from_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] { return report_from(j); });
}

std::vector<ComputationReport> reports_from_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    if (!j.is_array()) throw ParseError("expected a JSON array of reports");
    std::vector<ComputationReport> out;
    for (const auto& r : j) out.push_back(report_from(r));
    return out;
  });
}

// ------------------------------------------------------------------ text

std::string format_text(const ComputationReport& r) {
  std::ostringstream os;
  os << "group " << r.group << " (order " << r.order << ")\n";
  auto target = [&](const char* name, const std::optional<TargetReport>& t) {
    if (!t) return;
    os << "  " << name << ": zrank " << t->zrank << ", Gamma zrank " << t->gamma_zrank << ", H0 = " << t->h0.to_string()
       << '\n';
  };
  target("ker d2", r.ker);
  target("coker d^2", r.coker);
  target("ker d2 + coker d^2", r.sum);
  os << "  timings:";
  for (const auto& [stage, ms] : r.timings_ms) os << ' ' << stage << '=' << std::fixed << std::setprecision(1) << ms << "ms";
  os << '\n';
  for (const auto& c : r.checks) os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << '\n';
  return os.str();
}

std::string format_table(std::span<const ComputationReport> rs) {
  std::ostringstream os;
  os << std::left << std::setw(14) << "group" << std::setw(7) << "order" << std::setw(22) << "H0 ker" << std::setw(22)
     << "H0 coker" << std::setw(22) << "H0 sum" << "ms\n";
  for (const auto& r : rs) {
    auto cell = [](const std::optional<TargetReport>& t) { return t ? t->h0.to_string() : std::string("-"); };
    double total = 0;
    for (const auto& [stage, ms] : r.timings_ms) total += ms;
    os << std::left << std::setw(14) << r.group << std::setw(7) << r.order << std::setw(22) << cell(r.ker)
       << std::setw(22) << cell(r.coker) << std::setw(22) << cell(r.sum) << std::fixed << std::setprecision(0) << total
       << '\n';
  }
  return os.str();
}

}  // namespace gtorsion
