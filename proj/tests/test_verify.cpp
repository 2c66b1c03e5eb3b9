#include <catch_amalgamated.hpp>

#include <set>

#include "elgas/verify.hpp"

using namespace elgas;

namespace {

std::string failures(const std::vector<CheckReport>& rs) {
  std::string out;
  for (const auto& r : rs)
    if (r.failed()) out += r.name + ": measured " + detail::fmt(r.measured) + " at " + r.worst_case + "\n";
  return out;
}

const CheckReport& find(const std::vector<CheckReport>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  FAIL("no report named " << name);
  return rs.front();
}

}  // namespace

TEST_CASE("lattice checks pass", "[verify]") {
  for (double kf : {1.0, 2.0, 3.0}) {
    auto rs = check_lattice(fermi_ball(kf));
    INFO(failures(rs));
    CHECK_FALSE(any_failed(rs));
    CHECK(find(rs, "lattice.gap").status == CheckStatus::pass);
    CHECK(find(rs, "lattice.gap_sum").status == CheckStatus::diagnostic);
  }
}

TEST_CASE("perturbed gaps are caught", "[verify]") {
  VerifyOptions o;
  o.lambda_override = [](const IVec3& k, const IVec3& p) {
    const double l = lambda_of(k, p);
    return (k == IVec3{1, 0, 0} && p == IVec3{1, 1, 0}) ? l - 0.25 : l;
  };
  auto rs = check_lattice(fermi_ball(1.0), o);
  const auto& gap = find(rs, "lattice.gap");
  CHECK(gap.failed());
  CHECK(gap.measured == 0.25);
  CHECK_THAT(gap.reproducer, Catch::Matchers::ContainsSubstring("k=1,0,0"));
  CHECK_THAT(gap.reproducer, Catch::Matchers::ContainsSubstring("p=1,1,0"));
  CHECK(any_failed(rs));
}

TEST_CASE("mode checks pass", "[verify]") {
  for (double kf : {1.0, 2.0})
    for (double g : {0.0, 0.1, 1.0, 10.0}) {
      auto rs = check_mode(fermi_ball(kf), Potential::coulomb(g));
      INFO("k_F=" << kf << " g=" << g << "\n" << failures(rs));
      CHECK_FALSE(any_failed(rs));
      if (g == 0.0) {
        CHECK(find(rs, "mode.sandwich.K").measured <= 0.0);
        CHECK(find(rs, "mode.hyperbolic_identity").measured == 0.0);
      }
    }
}

TEST_CASE("printed T2 form is off at strong coupling", "[verify]") {
  auto rs = check_mode(fermi_ball(1.0), Potential::coulomb(10.0));
  const auto& printed = find(rs, "mode.decomposition.T2_as_printed");
  CHECK(printed.status == CheckStatus::diagnostic);
  CHECK(printed.measured > 1e-7);
  CHECK(find(rs, "mode.decomposition.T2").measured <= 1e-9);
}

TEST_CASE("cross checks pass", "[verify]") {
  for (double kf : {1.0, 2.0})
    for (double g : {0.1, 1.0, 10.0}) {
      auto rs = check_cross(fermi_ball(kf), Potential::coulomb(g));
      INFO("k_F=" << kf << " g=" << g << "\n" << failures(rs));
      CHECK_FALSE(any_failed(rs));
    }
}

TEST_CASE("exchange aggregation needs the multiset reading at xi = 0", "[verify]") {
  auto cfg = fermi_ball(1.0);
  const auto pot = Potential::coulomb(1.0);
  const IVec3 k{2, 0, 0};
  auto multi = exchange_aggregation(k, cfg, pot);
  auto set = exchange_aggregation(k, cfg, pot, ZetaCounting::set);
  CHECK(std::abs(multi.lhs - multi.rhs) <= 1e-12 * std::abs(multi.rhs));
  CHECK(std::abs(set.lhs - set.rhs) > 1e-3 * std::abs(set.rhs));
}

TEST_CASE("run_verify report", "[verify]") {
  auto rs = run_verify(fermi_ball(1.0), Potential::coulomb(1.0));
  INFO(failures(rs));
  CHECK_FALSE(any_failed(rs));
  CHECK(std::is_sorted(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
  std::set<std::string> names;
  for (const auto& r : rs) names.insert(r.name);
  for (const char* n : {"lattice.gap", "lattice.reflection", "lattice.four_point", "mode.hyperbolic_identity",
                        "mode.sandwich.K", "mode.decomposition.T1", "mode.decomposition.T2", "cross.sherman_morrison",
                        "cross.response_identity", "cross.exchange_aggregation", "cross.route_per_mode"})
    CHECK(names.count(n) == 1);
}
