#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "stackvol/errors.hpp"
#include "stackvol/quadrature.hpp"

using namespace stackvol;
using std::numbers::pi;

using P = Point<double>;

TEST_CASE("1d examples") {
  const double tol = 1e-6;
  auto sq = integrate_1d([](double x) { return x * x; }, 0.0, 1.0, tol);
  CHECK(std::abs(sq.value - 1.0 / 3) <= tol);
  CHECK(sq.error_estimate >= 0);
  CHECK(sq.evaluations > 0);

  auto s = integrate_1d([](double x) { return std::sin(x); }, 0.0, 2 * pi, tol);
  CHECK(std::abs(s.value) <= tol);

  auto r = integrate_1d([](double x) { return x; }, 0.0, 2.0, tol);
  CHECK(std::abs(r.value - 2) <= tol);

  // the reported estimate bounds the true error for smooth integrands
  for (double t : {1e-4, 1e-6, 1e-8, 1e-10}) {
    auto e = integrate_1d([](double x) { return std::exp(-x * x); }, -1.0, 2.0, t);
    const double exact = std::sqrt(pi) / 2 * (std::erf(2.0) + std::erf(1.0));
    CHECK(std::abs(e.value - exact) <= std::max(e.error_estimate, 1e-14) * 1.5 + 1e-14);
    CHECK(std::abs(e.value - exact) <= t);
  }
}

TEST_CASE("1d failure modes") {
  CHECK_THROWS_AS(integrate_1d([](double x) { return x; }, 0.0, 1.0, 0.0), ValidationError);
  try {
    // the 1/sqrt singularity defeats a 15-level cap at this tolerance
    integrate_1d([](double x) { return 1 / std::sqrt(x + 1e-300); }, 0.0, 1.0, 1e-12);
    FAIL("expected non-convergence");
  } catch (const NonConvergence& e) {
    CHECK(e.evaluations() > 0);
    CHECK(std::isfinite(e.partial_value()));
    CHECK(e.partial_value() > 1.5);
  }
  CHECK_THROWS_AS(integrate_1d([](double) { return std::nan(""); }, 0.0, 1.0, 1e-6), NonConvergence);
}

TEST_CASE("Gauss-Legendre nodes") {
  const auto [nodes, weights] = gauss_legendre<double>(5);
  CHECK(std::abs(weights.sum() - 2) < 1e-14);
  // exact through degree 9
  for (int k = 0; k <= 9; ++k) {
    double q = 0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) q += weights(i) * std::pow(nodes(i), k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(q - exact) < 1e-13);
  }
  CHECK(std::abs(nodes(2)) < 1e-15);
  CHECK(std::abs(nodes(4) - std::sqrt(5 + 2 * std::sqrt(10.0 / 7)) / 3) < 1e-14);
}

TEST_CASE("box and disk examples") {
  const double tol = 1e-6;
  auto disk = integrate_annulus([](const P&) { return 1.0; }, 0.0, 1.0, tol);
  CHECK(std::abs(disk.value - pi) <= tol);

  auto xy = integrate_box([](const P& p) { return p(0) * p(1); }, make_box<double>({{0, 1}, {0, 1}}), tol);
  CHECK(std::abs(xy.value - 0.25) <= tol);

  auto d2 = integrate_annulus([](const P&) { return 1 / (2 * pi); }, 0.0, 2.0, tol);
  CHECK(std::abs(d2.value - 2) <= tol);

  auto gauss = integrate_box([](const P& p) { return std::exp(-p.squaredNorm()); },
                             make_box<double>({{-6, 6}, {-6, 6}}), tol);
  CHECK(std::abs(gauss.value - pi) <= tol);

  auto line = integrate_box([](const P& p) { return std::cos(p(0)); }, make_box<double>({{0, pi / 2}}), tol);
  CHECK(std::abs(line.value - 1) <= tol);

  CHECK_THROWS_AS(integrate_box([](const P&) { return 1.0; }, make_box<double>({{0, 1}, {0, 1}}), -1.0),
                  ValidationError);
  // a kink along the diagonal is fine, a jump on a curve exhausts the budget at tight tolerance
  CHECK_THROWS_AS(integrate_box([](const P& p) { return p.squaredNorm() < 1 ? 1.0 : 0.0; },
                                make_box<double>({{-1, 1}, {-1, 1}}), 1e-12, 200),
                  NonConvergence);
}

TEST_CASE("Monte Carlo") {
  const auto cube = make_box<double>({{0, 1}, {0, 1}, {0, 1}});
  auto one = integrate_mc([](const P&) { return 1.0; }, cube, 1000, 1);
  CHECK(one.value == 1.0);
  CHECK(one.error_estimate == 0.0);
  CHECK(one.evaluations == 1000);

  const auto big = make_box<double>({{-1, 1}, {-1, 1}, {-1, 1}});
  auto ball = [](const P& p) { return p.squaredNorm() <= 1 ? 1.0 : 0.0; };
  auto a = integrate_mc(ball, big, 1000000, 94720);
  CHECK(std::abs(a.value - 4 * pi / 3) <= 3 * a.error_estimate);
  auto b = integrate_mc(ball, big, 1000000, 94720);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  auto c = integrate_mc(ball, big, 1000000, 94721);
  CHECK(c.value != a.value);
  CHECK_THROWS_AS(integrate_mc(ball, big, 1, 0), ValidationError);
}

TEST_CASE("linearity within combined error") {
  const double tol = 1e-8;
  auto f = [](double x) { return std::exp(x); };
  auto g = [](double x) { return std::cos(3 * x); };
  for (double alpha : {-2.0, 0.5, 3.0}) {
    for (double beta : {-1.0, 4.0}) {
      auto h = [&](double x) { return alpha * f(x) + beta * g(x); };
      auto rf = integrate_1d(f, 0.0, 1.5, tol), rg = integrate_1d(g, 0.0, 1.5, tol);
      auto rh = integrate_1d(h, 0.0, 1.5, tol);
      const double bound = std::abs(alpha) * rf.error_estimate + std::abs(beta) * rg.error_estimate +
                           rh.error_estimate + 1e-13;
      CHECK(std::abs(rh.value - (alpha * rf.value + beta * rg.value)) <= bound);
    }
  }
  const auto sq = make_box<double>({{0, 1}, {0, 2}});
  auto f2 = [](const P& p) { return std::sin(p(0) + p(1)); };
  auto g2 = [](const P& p) { return p(0) * p(0) * p(1); };
  auto h2 = [&](const P& p) { return 2 * f2(p) - 3 * g2(p); };
  auto a = integrate_box(f2, sq, 1e-9), b = integrate_box(g2, sq, 1e-9), c = integrate_box(h2, sq, 1e-9);
  CHECK(std::abs(c.value - (2 * a.value - 3 * b.value)) <=
        2 * a.error_estimate + 3 * b.error_estimate + c.error_estimate + 1e-13);

  const auto cube = make_box<double>({{0, 1}, {0, 1}, {0, 1}});
  auto u = [](const P& p) { return p.sum(); };
  auto v = [](const P& p) { return p(0) * p(2); };
  auto w = [&](const P& p) { return 5 * u(p) - v(p); };
  auto mu = integrate_mc(u, cube, 20000, 3), mv = integrate_mc(v, cube, 20000, 3), mw = integrate_mc(w, cube, 20000, 3);
  // same sample points, so linearity holds to rounding
  CHECK(std::abs(mw.value - (5 * mu.value - mv.value)) < 1e-12);
}

TEST_CASE("halving the tolerance never increases the estimate") {
  auto fs = std::vector<double (*)(double)>{
      [](double x) { return std::exp(x); }, [](double x) { return std::sin(10 * x); },
      [](double x) { return 1 / (1 + 25 * x * x); }, [](double x) { return std::sqrt(x + 0.01); }};
  for (auto f : fs) {
    double previous = std::numeric_limits<double>::infinity();
    for (double tol = 1e-3; tol > 1e-11; tol /= 2) {
      const auto r = integrate_1d(f, 0.0, 1.0, tol);
      CHECK(r.error_estimate <= previous);
      previous = r.error_estimate;
    }
  }
  auto g = [](const P& p) { return std::exp(-p(0) * p(1)) * std::cos(p(0)); };
  double previous = std::numeric_limits<double>::infinity();
  for (double tol = 1e-3; tol > 1e-10; tol /= 2) {
    const auto r = integrate_box(g, make_box<double>({{0, 2}, {0, 1}}), tol);
    CHECK(r.error_estimate <= previous);
    previous = r.error_estimate;
  }
}

TEST_CASE("deterministic results") {
  auto f = [](const P& p) { return std::exp(-p.squaredNorm()) * (1 + p(0)); };
  const auto box = make_box<double>({{-2, 3}, {-1, 2}});
  const auto a = integrate_box(f, box, 1e-9), b = integrate_box(f, box, 1e-9);
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("long double instantiation") {
  auto r = integrate_1d([](long double x) { return x * x * x; }, 0.0L, 1.0L, 1e-15L);
  CHECK(std::abs(static_cast<double>(r.value - 0.25L)) < 1e-15);
}
