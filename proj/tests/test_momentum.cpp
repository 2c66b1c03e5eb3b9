#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "elgas/momentum.hpp"

using namespace elgas;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MomentumOptions fast(double tail = 1e-4) {
  MomentumOptions o;
  o.policy.tail_rel_tol = tail;
  o.quad.abs_tol = 1e-11;
  return o;
}

struct Brute {
  double n_b = 0.0;
  double n_ex = 0.0;
};

// Direct sums over a box of k for xi outside the ball, with the lune and the
// mode matrices rebuilt from the definitions.
Brute brute_outside(const IVec3& xi, double kf, const Potential& pot) {
  const std::int64_t r2 = static_cast<std::int64_t>(std::floor(kf * kf));
  auto inside = [&](const IVec3& p) { return p.norm2() <= r2; };
  const double pi = std::numbers::pi;
  const double v_scale = 1.0 / (kf * 2.0 * 8.0 * pi * pi * pi);
  const double ex_scale = -1.0 / (kf * kf * 8.0 * std::pow(2 * pi, 6));
  const auto reach = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(xi.norm2())) + kf)) + 1;
  Brute out;
  for (std::int64_t x = -reach; x <= reach; ++x)
    for (std::int64_t y = -reach; y <= reach; ++y)
      for (std::int64_t z = -reach; z <= reach; ++z) {
        const IVec3 k{x, y, z};
        if (k.is_zero()) continue;
        std::vector<IVec3> lune;
        std::vector<double> lam;
        for (std::int64_t a = -reach - 2; a <= reach + 2; ++a)
          for (std::int64_t b = -reach - 2; b <= reach + 2; ++b)
            for (std::int64_t c = -reach - 2; c <= reach + 2; ++c) {
              const IVec3 p{a, b, c};
              if (!inside(p) && inside(p - k)) {
                lune.push_back(p);
                lam.push_back(0.5 * static_cast<double>(p.norm2() - (p - k).norm2()));
              }
            }
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < lune.size(); ++i)
          if (lune[i] == xi || lune[i] == -xi) hits.push_back(i);
        if (hits.empty()) continue;
        const auto n = static_cast<Eigen::Index>(lune.size());
        const double v2 = pot(k) * v_scale;
        Eigen::VectorXd h(n), v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          h[i] = lam[static_cast<std::size_t>(i)];
          v[i] = std::sqrt(v2);
        }
        const Eigen::MatrixXd hm = h.asDiagonal();
        const Eigen::MatrixXd hs = h.cwiseSqrt().asDiagonal();
        const Eigen::MatrixXd hsi = h.cwiseSqrt().cwiseInverse().asDiagonal();
        // A = h^{-1/2} (h^{1/2}(h + 2 v v^T) h^{1/2})^{1/2} h^{-1/2}
        const Eigen::MatrixXd inner = hs * (hm + 2.0 * v * v.transpose()) * hs;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inner);
        const Eigen::MatrixXd a = hsi * es.operatorSqrt() * hsi;
        const Eigen::MatrixXd ch = 0.5 * (a + a.inverse()) - Eigen::MatrixXd::Identity(n, n);
        for (auto i : hits) {
          out.n_b += 0.5 * ch(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
          double acc = 0.0;
          for (std::size_t j = 0; j < lune.size(); ++j) {
            const double d = lam[j] + lam[i];
            acc += pot(lune[j] + lune[i] - k) / (d * d);
          }
          out.n_ex += ex_scale * pot(k) * acc;
        }
      }
  return out;
}

}  // namespace

TEST_CASE("zero potential gives zero", "[momentum]") {
  auto cfg = fermi_ball(1.0);
  for (IVec3 xi : {IVec3{0, 0, 0}, IVec3{1, 1, 0}, IVec3{2, 0, 0}}) {
    auto o = fast();
    o.route = Route::both;
    auto b = n_point(xi, cfg, Potential::zero(), o);
    CHECK(b.n_b == 0.0);
    CHECK(*b.n_b_integral == 0.0);
    CHECK(*b.n_b_spectral == 0.0);
    CHECK(b.n_ex == 0.0);
  }
}

TEST_CASE("outside the ball against brute-force sums", "[momentum]") {
  for (double kf : {1.0, 2.0}) {
    auto cfg = fermi_ball(kf);
    for (double g : {0.1, 1.0, 10.0}) {
      const auto pot = Potential::coulomb(g);
      for (IVec3 xi : {IVec3{1, 1, 0}, IVec3{2, 0, 0}, IVec3{2, 1, 1}, IVec3{3, 1, 0}}) {
        if (cfg.in_ball(xi)) continue;
        INFO("k_F=" << kf << " g=" << g << " xi=" << xi);
        const auto want = brute_outside(xi, kf, pot);
        auto b = n_point(xi, cfg, pot, fast());
        // The oracle forms (A + A^{-1})/2 - 1 directly and loses ~1e-16 absolute to cancellation.
        CHECK_THAT(b.n_b, WithinRel(want.n_b, 1e-10) || WithinAbs(want.n_b, 1e-14));
        CHECK_THAT(b.n_ex, WithinRel(want.n_ex, 1e-10));
        CHECK(b.converged);
        CHECK(b.tail_estimate == 0.0);
      }
    }
  }
}

TEST_CASE("routes agree", "[momentum]") {
  auto o = fast();
  o.route = Route::both;
  for (auto [kf, xi] : std::vector<std::pair<double, IVec3>>{{1.0, {1, 1, 0}}, {1.0, {0, 0, 0}}, {2.0, {1, 0, 0}}}) {
    auto b = n_point(xi, fermi_ball(kf), Potential::coulomb(1.0), o);
    INFO("k_F=" << kf << " xi=" << xi);
    REQUIRE(b.discrepancy());
    CHECK(*b.discrepancy() <= 10 * b.quad_error + 1e-12 * std::abs(b.n_b));
  }
}

TEST_CASE("pinned values at k_F = 1", "[momentum]") {
  // Cross-route agreement and the brute-force oracle above fixed these.
  auto cfg = fermi_ball(1.0);
  auto b = n_point({1, 1, 0}, cfg, Potential::coulomb(1.0), fast());
  CHECK_THAT(b.n_b, WithinRel(7.61282663713e-05, 1e-9));
  CHECK_THAT(b.n_ex, WithinRel(-2.54134632853e-05, 1e-9));
  CHECK(b.k_modes_used == 14);
}

TEST_CASE("signs and reflection", "[momentum]") {
  for (double kf : {1.0, 2.0}) {
    auto cfg = fermi_ball(kf);
    for (IVec3 xi : {IVec3{1, 0, 0}, IVec3{2, 1, 0}, IVec3{3, 0, 0}}) {
      const auto pot = Potential::coulomb(1.0);
      auto a = n_point(xi, cfg, pot, fast());
      auto b = n_point(-xi, cfg, pot, fast());
      CHECK(a.n_b >= 0.0);
      CHECK(a.n_ex <= 0.0);
      CHECK(std::abs(a.n_total() - b.n_total()) <= 1e-12 * std::abs(a.n_total()));
    }
  }
}

TEST_CASE("symmetry folding matches the plain sum", "[momentum]") {
  auto cfg = fermi_ball(2.0);
  for (IVec3 xi : {IVec3{1, 1, 0}, IVec3{2, 1, 1}}) {
    auto folded = fast(1e-3);
    auto plain = folded;
    plain.use_symmetry = false;
    auto a = n_point(xi, cfg, Potential::coulomb(1.0), folded);
    auto b = n_point(xi, cfg, Potential::coulomb(1.0), plain);
    CHECK_THAT(a.n_b, WithinRel(b.n_b, 1e-12));
    CHECK_THAT(a.n_ex, WithinRel(b.n_ex, 1e-12));
  }
}

TEST_CASE("finite support ignores the cutoff", "[momentum]") {
  auto cfg = fermi_ball(1.0);
  const auto pot = Potential::coulomb(1.0);
  for (double kmax : {2.0, 4.0, 8.0}) {
    auto o = fast();
    o.policy.k_max = kmax;
    o.policy.adaptive = false;
    auto b = n_point({9, 9, 9}, cfg, pot, o);
    CHECK(b.n_b > 0.0);
    CHECK_THAT(b.n_b, WithinRel(n_point({9, 9, 9}, cfg, pot, fast()).n_b, 1e-15));
  }
}

TEST_CASE("inside the ball the cutoff change stays below the tail estimate", "[momentum]") {
  auto cfg = fermi_ball(1.0);
  const auto pot = Potential::coulomb(1.0);
  for (IVec3 xi : {IVec3{0, 0, 0}, IVec3{1, 0, 0}}) {
    auto o = fast();
    o.policy.adaptive = false;
    o.policy.k_max = 8.0;
    auto r = n_point(xi, cfg, pot, o);
    o.policy.k_max = 16.0;
    auto r2 = n_point(xi, cfg, pot, o);
    INFO("xi=" << xi);
    CHECK(r.tail_estimate > 0.0);
    CHECK(std::abs(r2.n_total() - r.n_total()) < r.tail_estimate);
  }
}

TEST_CASE("coincident zeta counting", "[momentum]") {
  auto cfg = fermi_ball(1.0);
  auto multi = fast(1e-3);
  auto set = multi;
  set.counting = ZetaCounting::set;
  const auto pot = Potential::coulomb(1.0);
  const double m = n_point({0, 0, 0}, cfg, pot, multi).n_b;
  const double s = n_point({0, 0, 0}, cfg, pot, set).n_b;
  CHECK_THAT(m, WithinRel(2.0 * s, 1e-6));
  // Away from xi = 0 the four candidates are distinct and the readings agree.
  CHECK(n_point({2, 0, 0}, cfg, pot, multi).n_b == n_point({2, 0, 0}, cfg, pot, set).n_b);
}

TEST_CASE("thread count does not change results", "[momentum]") {
  auto cfg = fermi_ball(2.0);
  auto one = fast(1e-3);
  auto three = one;
  three.threads = 3;
  auto a = n_point({1, 0, 0}, cfg, Potential::coulomb(1.0), one);
  auto b = n_point({1, 0, 0}, cfg, Potential::coulomb(1.0), three);
  CHECK(a.n_b == b.n_b);
  CHECK(a.n_ex == b.n_ex);
}

TEST_CASE("weighted sums", "[momentum]") {
  auto cfg = fermi_ball(1.0);
  const auto pot = Potential::coulomb(1.0);
  const IVec3 xi0{1, 1, 0};
  auto w = n_weighted(Observable::delta(xi0), cfg, pot, fast());
  const double n0 = n_point(xi0, cfg, pot, fast()).n_total();
  CHECK_THAT(w.value, WithinRel(2.0 * n0, 1e-12));
  CHECK(w.rows.size() == 2);

  auto nothing = n_weighted(Observable::table({{{2, 0, 0}, 0.0}, {{-2, 0, 0}, 0.0}}), cfg, pot, fast());
  CHECK(nothing.value == 0.0);

  auto ball = n_weighted(Observable::fermi_ball_indicator(cfg), cfg, pot, fast(1e-3));
  CHECK(std::isfinite(ball.value));
  CHECK(ball.n_b > 0.0);
  CHECK(ball.rows.size() == 7);

  CHECK_THROWS_AS(Observable::table({{{1, 0, 0}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Observable::table({{{1, 0, 0}, 1.0}, {{-1, 0, 0}, 2.0}}), std::invalid_argument);
}

TEST_CASE("route parsing", "[momentum]") {
  CHECK(parse_route("both") == Route::both);
  CHECK(parse_route("integral") == Route::integral);
  CHECK_THROWS_AS(parse_route("fast"), std::invalid_argument);
}
