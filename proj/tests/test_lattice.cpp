#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "elgas/lattice.hpp"
#include "elgas/symmetry.hpp"

using namespace elgas;
using Catch::Matchers::WithinAbs;

namespace {

// Brute-force ball count over a box.
std::int64_t count_ball(double kf) {
  const auto r = static_cast<std::int64_t>(kf) + 1;
  std::int64_t n = 0;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y)
      for (std::int64_t z = -r; z <= r; ++z)
        if (static_cast<double>(x * x + y * y + z * z) <= kf * kf) ++n;
  return n;
}

// 2 kappa from a box search for the smallest norm outside and largest inside.
std::int64_t twice_kappa(double kf) {
  const auto r = static_cast<std::int64_t>(kf) + 3;
  std::int64_t in = 0, out = 1 << 30;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y)
      for (std::int64_t z = -r; z <= r; ++z) {
        const auto n2 = x * x + y * y + z * z;
        if (static_cast<double>(n2) <= kf * kf)
          in = std::max(in, n2);
        else
          out = std::min(out, n2);
      }
  return in + out;
}

}  // namespace

TEST_CASE("fermi ball counts and kappa", "[lattice]") {
  auto c1 = fermi_ball(1.0);
  CHECK(c1.particle_count == 7);
  CHECK(c1.kappa() == 1.5);
  auto c2 = fermi_ball(2.0);
  CHECK(c2.particle_count == 33);
  CHECK(c2.kappa() == 4.5);
  auto ch = fermi_ball(0.5);
  CHECK(ch.particle_count == 1);
  CHECK(ch.kappa() == 0.5);

  for (double kf : {1.0, 1.5, 2.0, 2.3, 2.5, 3.0, 3.7, 4.0, std::sqrt(6.0)}) {
    INFO("k_F = " << kf);
    auto cfg = fermi_ball(kf);
    CHECK(cfg.particle_count == count_ball(kf));
    CHECK(cfg.kappa_twice == twice_kappa(kf));
    CHECK(std::is_sorted(cfg.ball.begin(), cfg.ball.end()));
  }
  CHECK_THROWS_AS(fermi_ball(0.0), std::invalid_argument);
  CHECK_THROWS_AS(fermi_ball(-1.0), std::invalid_argument);
}

TEST_CASE("kappa skips norms that are not sums of three squares", "[lattice]") {
  // |p|^2 = 7 has no lattice point, so the first shell outside r2max = 6 is 8.
  auto cfg = fermi_ball(std::sqrt(6.0) + 1e-12);
  CHECK(cfg.r2max == 6);
  CHECK(cfg.kappa_twice == 14);
}

TEST_CASE("lune examples", "[lattice]") {
  auto cfg = fermi_ball(1.0);
  auto l1 = lune({1, 0, 0}, cfg);
  const std::vector<IVec3> expect{{1, -1, 0}, {1, 0, -1}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
  CHECK(l1.points == expect);
  CHECK(l1.lambdas() == std::vector<double>{0.5, 0.5, 0.5, 0.5, 1.5});

  auto l2 = lune({2, 0, 0}, cfg);
  REQUIRE(l2.size() == 6);
  auto lam = l2.lambdas();
  std::sort(lam.begin(), lam.end());
  CHECK(lam == std::vector<double>{2, 2, 2, 2, 2, 4});

  auto far = lune({3, 0, 0}, cfg);
  CHECK(static_cast<std::int64_t>(far.size()) == cfg.particle_count);

  CHECK_THROWS_AS(lune({0, 0, 0}, cfg), std::invalid_argument);
}

TEST_CASE("lune membership against the definition", "[lattice]") {
  for (double kf : {1.0, 2.0, 2.5}) {
    auto cfg = fermi_ball(kf);
    for (const auto& k : lattice_shell(-1.0, 2 * kf + 2)) {
      auto basis = lune(k, cfg);
      std::set<IVec3> got(basis.points.begin(), basis.points.end());
      std::set<IVec3> want;
      const auto r = static_cast<std::int64_t>(3 * kf + 3);
      for (std::int64_t x = -r; x <= r; ++x)
        for (std::int64_t y = -r; y <= r; ++y)
          for (std::int64_t z = -r; z <= r; ++z) {
            IVec3 p{x, y, z};
            const double a = std::sqrt(static_cast<double>((p - k).norm2()));
            const double b = std::sqrt(static_cast<double>(p.norm2()));
            if (a <= kf && kf < b) want.insert(p);
          }
      REQUIRE(got == want);
      CHECK(std::is_sorted(basis.points.begin(), basis.points.end()));
      for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis.lambda(i) >= 0.5);
    }
  }
}

TEST_CASE("lambda_of", "[lattice]") {
  CHECK(lambda_of({1, 0, 0}, {2, 0, 0}) == 1.5);
  CHECK(lambda_of({1, 0, 0}, {1, 1, 0}) == 0.5);
  CHECK(lambda_of({3, -1, 2}, {3, -1, 2}) == 7.0);
}

TEST_CASE("reflection of lunes", "[lattice]") {
  for (double kf : {1.0, 2.0, 3.0}) {
    auto cfg = fermi_ball(kf);
    for (const auto& k : lattice_shell(-1.0, 2 * kf + 2)) {
      auto a = lune(k, cfg), b = lune(-k, cfg);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        auto j = b.index_of(-a.points[i]);
        REQUIRE(j);
        CHECK(b.lambda(*j) == a.lambda(i));
      }
    }
  }
}

TEST_CASE("d_intersection", "[lattice]") {
  auto cfg = fermi_ball(1.0);
  CHECK(d_intersection({1, 0, 0}, {1, 1, 0}, cfg) == std::vector<IVec3>{{1, 1, 0}});

  auto z = d_intersection({2, 0, 0}, {0, 0, 0}, cfg);
  CHECK(z == std::vector<IVec3>{{2, 0, 0}, {2, 0, 0}});
  CHECK(d_intersection({2, 0, 0}, {0, 0, 0}, cfg, ZetaCounting::set) == std::vector<IVec3>{{2, 0, 0}});
  CHECK(d_intersection({1, 0, 0}, {0, 0, 0}, cfg).empty());

  // xi in B_F with both k +- xi inside the ball.
  auto cfg2 = fermi_ball(2.0);
  CHECK(d_intersection({1, 0, 0}, {0, 1, 0}, cfg2).empty());
}

TEST_CASE("k_support", "[lattice]") {
  auto cfg = fermi_ball(1.0);
  TruncationPolicy policy;
  auto out = k_support({2, 0, 0}, cfg, policy);
  REQUIRE(out.is_finite());
  CHECK(out.finite_part.size() <= 14);
  for (const auto& k : lattice_shell(-1.0, 10)) {
    const bool contributes = !d_intersection(k, {2, 0, 0}, cfg).empty();
    const bool listed = std::binary_search(out.finite_part.begin(), out.finite_part.end(), k);
    if (contributes) CHECK(listed);
  }

  auto in = k_support({0, 0, 0}, cfg, policy);
  REQUIRE_FALSE(in.is_finite());
  CHECK(in.finite_part.empty());
  CHECK(in.truncated_part->k_max == 4.0);
  auto shell = truncated_shell({0, 0, 0}, cfg, -1.0, 4.0);
  for (const auto& k : shell) CHECK(k.norm2() > 1);
}

TEST_CASE("kappa_and_weight", "[lattice]") {
  auto cfg = fermi_ball(1.0);
  auto w0 = kappa_and_weight({0, 0, 0}, cfg);
  CHECK(w0.inverse_weight == 1.5);
  CHECK_THAT(w0.weight, WithinAbs(2.0 / 3.0, 1e-15));
  auto w2 = kappa_and_weight({1, 1, 0}, cfg);
  CHECK(w2.inverse_weight == 0.5);
  CHECK(w2.weight == 2.0);
  for (double kf : {1.0, 2.0, 3.0, std::sqrt(6.0)}) {
    auto c = fermi_ball(kf);
    for (const auto& p : lattice_shell(-1.0, 6)) CHECK(kappa_and_weight(p, c).inverse_weight >= 0.5);
  }
}

TEST_CASE("orbit folding preserves counts", "[lattice][symmetry]") {
  CHECK(cubic_group().size() == 48);
  for (auto [lo, hi] : std::vector<std::pair<double, double>>{{-1, 3}, {3, 6}, {2.5, 4.1}}) {
    auto ks = lattice_shell(lo, hi);
    const std::int64_t lo2 = lo < 0 ? -1 : static_cast<std::int64_t>(std::floor(lo * lo));
    const auto hi2 = static_cast<std::int64_t>(std::floor(hi * hi));
    std::int64_t total = 0;
    for (const auto& o : cubic_orbits(lo2, hi2)) total += o.multiplicity;
    CHECK(total == static_cast<std::int64_t>(ks.size()));
    for (IVec3 xi : {IVec3{0, 0, 0}, IVec3{1, 0, 0}, IVec3{1, 1, 0}, IVec3{2, 1, 0}}) {
      std::int64_t t = 0;
      for (const auto& o : fold_orbits(ks, pair_stabilizer(xi))) t += o.multiplicity;
      CHECK(t == static_cast<std::int64_t>(ks.size()));
    }
  }
  CHECK(pair_stabilizer({0, 0, 0}).size() == 48);
  CHECK(pair_stabilizer({1, 0, 0}).size() == 16);
  CHECK(pair_stabilizer({1, 2, 3}).size() == 2);
}

TEST_CASE("parse_ivec3", "[lattice]") {
  CHECK(parse_ivec3("1,-2,3") == IVec3{1, -2, 3});
  CHECK_THROWS_AS(parse_ivec3("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ivec3("1, 2, 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ivec3("a,b,c"), std::invalid_argument);
}
