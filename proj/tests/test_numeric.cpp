#include <cmath>
#include <cstdio>
#include <filesystem>

#include "fdt/errors.hpp"
#include "fdt/numeric.hpp"
#include "support.hpp"

using namespace fdt;

namespace {

double zero(double) { return 0.0; }

double sup_error(const GridFn& f, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(f[i] - exact(f.grid().x(i))));
  return e;
}

}  // namespace

TEST_CASE("grid guards") {
  CHECK_THROWS_AS(Grid(0, 1, 4), Error);
  CHECK_THROWS_AS(Grid(1, 0, 11), Error);
  const Grid g(0, 1, 11);
  CHECK(g.h() == doctest::Approx(0.1));
  CHECK(g.x(10) == 1.0);
}

TEST_CASE("RK4 examples") {
  std::vector<double> hs, errs;
  for (std::size_t n : {11, 21, 41, 81}) {
    const Grid g(0, 1, n);
    hs.push_back(g.h());
    errs.push_back(sup_error(rk4_ivp(zero, [](double) { return -1.0; }, 0, 1, 1, g), [](double x) { return std::exp(x); }));
  }
  for (std::size_t k = 1; k < errs.size(); ++k) CHECK(errs[k - 1] / errs[k] == doctest::Approx(16.0).epsilon(0.1));
  const auto orders = observed_orders(hs, errs);
  for (double p : orders) {
    CHECK(p >= 3.8);
    CHECK(p <= 4.2);
  }

  const Grid g(0, 2, 201);
  const GridFn s = rk4_ivp(zero, [](double) { return 1.0; }, 0, 0, 1, g);
  CHECK(sup_error(s, [](double x) { return std::sin(x); }) < 1e-9);
  CHECK(sup_error(rk4_ivp(zero, zero, 0, 0, 1, g), [](double x) { return x; }) < 1e-13);

  // Interior starting node: integration runs both ways.
  const GridFn c = rk4_ivp(zero, [](double) { return 1.0; }, 1.0, std::cos(1.0), -std::sin(1.0), g);
  CHECK(sup_error(c, [](double x) { return std::cos(x); }) < 1e-9);
  CHECK(c.has_analytic(1));
  CHECK_THROWS_AS(rk4_ivp(zero, zero, 0.005, 1, 0, g), Error);
}

TEST_CASE("Crank-Nicolson examples") {
  std::vector<double> hs, errs;
  for (std::size_t m : {10, 20, 40}) {
    const Grid xg(0, 1, m + 1), tg(0, 0.5, m / 2 + 1);
    std::vector<double> left, right;
    for (double t : tg.nodes()) {
      left.push_back(1 + std::exp(t));
      right.push_back(1 + std::exp(1 + t));
    }
    const GridField f =
        heat_crank_nicolson(GridFn::sample(xg, [](double x) { return 1 + std::exp(x); }), left, right, tg, 1.0);
    double e = 0.0;
    for (std::size_t j = 0; j < tg.size(); ++j)
      for (std::size_t i = 0; i < xg.size(); ++i) e = std::max(e, std::abs(f(i, j) - 1 - std::exp(xg.x(i) + tg.x(j))));
    hs.push_back(xg.h());
    errs.push_back(e);
  }
  const double p = observed_orders(hs, errs).back();
  CHECK(p >= 1.8);
  CHECK(p <= 2.2);

  const Grid xg(0, M_PI, 81), tg(0, 0.5, 81);
  const std::vector<double> zeros(tg.size(), 0.0);
  const GridField s = heat_crank_nicolson(GridFn::sample(xg, [](double x) { return std::sin(x); }), zeros, zeros, tg, 1.0);
  double e = 0.0;
  for (std::size_t i = 0; i < xg.size(); ++i) e = std::max(e, std::abs(s(i, 80) - std::exp(-0.5) * std::sin(xg.x(i))));
  CHECK(e < 1e-3);

  const std::vector<double> threes(tg.size(), 3.0);
  const GridField c = heat_crank_nicolson(GridFn::sample(xg, [](double) { return 3.0; }), threes, threes, tg, 1.0);
  for (double v : c.values()) CHECK(v == doctest::Approx(3.0).epsilon(1e-14));

  CHECK_THROWS_AS(heat_crank_nicolson(GridFn::sample(xg, zero), std::vector<double>(3), zeros, tg, 1.0), Error);
}

TEST_CASE("finite-difference examples") {
  const Grid g(-1, 1, 21);
  const GridFn sq = GridFn::sample(g, [](double x) { return x * x; });
  const auto d = fd_derivative(sq, 1).values();
  for (std::size_t i = 2; i + 2 < g.size(); ++i) CHECK(d[i] == doctest::Approx(2 * g.x(i)).epsilon(1e-12));

  std::vector<double> hs, errs;
  for (std::size_t n : {21, 41, 81}) {
    const Grid gs(0, 1, n);
    const auto d2 = fd_derivative(GridFn::sample(gs, [](double x) { return std::sin(x); }), 2).values();
    double e = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) e = std::max(e, std::abs(d2[i] + std::sin(gs.x(i))));
    hs.push_back(gs.h());
    errs.push_back(e);
  }
  CHECK(observed_orders(hs, errs).back() >= 3.8);

  CHECK_THROWS_AS(fd_first(std::vector<double>(4, 1.0), 0.1), Error);
  CHECK_THROWS_AS(fd_derivative(sq, 3), Error);
}

TEST_CASE("property: finite differences are exact on quartics at interior nodes") {
  std::mt19937 rng(61);
  const Grid g(-2, 1, 31);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = test::random_poly(rng, 4);
    const Polynomial dp = p.derivative(), ddp = dp.derivative();
    const GridFn f = GridFn::sample(g, [&](double x) { return p.evaluate(x); });
    const auto d1 = fd_derivative(f, 1).values(), d2 = fd_derivative(f, 2).values();
    for (std::size_t i = 2; i + 2 < g.size(); ++i) {
      CHECK(std::abs(d1[i] - dp.evaluate(g.x(i))) < 1e-10);
      CHECK(std::abs(d2[i] - ddp.evaluate(g.x(i))) < 1e-9);
    }
  }
}

TEST_CASE("ODE residual examples") {
  const Grid g(0, 2, 101);
  const GridFn s = GridFn::sample(g, [](double x) { return std::sin(x); },
                                  {[](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); }});
  CHECK(ode_residual(zero, [](double) { return 1.0; }, s).linf <= 1e-10);

  std::vector<double> hs, errs;
  for (std::size_t n : {41, 81, 161}) {
    const Grid gr(0, 2, n);
    const GridFn w = rk4_ivp(zero, [](double) { return 1.0; }, 0, 0, 1, gr).values_only();
    hs.push_back(gr.h());
    errs.push_back(ode_residual(zero, [](double) { return 1.0; }, w).linf);
  }
  CHECK(observed_orders(hs, errs).back() >= 1.9);

  const GridFn c = GridFn::sample(g, [](double x) { return std::cos(x); },
                                  {[](double x) { return -std::sin(x); }, [](double x) { return -std::cos(x); }});
  CHECK(ode_residual(zero, [](double) { return -1.0; }, c).linf >= 1e-2);
}

TEST_CASE("PDE residual examples") {
  const PdeOperator heat = [](const PointStencil& s) { return s.u_t - s.u_xx; };
  std::vector<GridField> levels;
  for (std::size_t m : {10, 20, 40})
    levels.push_back(GridField::sample(Grid(0, 1, m + 1), Grid(0, 0.5, m / 2 + 1),
                                       [](double x, double t) { return std::exp(-t) * std::sin(x); }));
  const PDEResidualReport rep = pde_residual(levels, heat);
  REQUIRE(rep.order.has_value());
  CHECK(*rep.order >= 1.9);
  CHECK(*rep.order <= 2.2);

  std::vector<GridField> waves;
  for (std::size_t m : {10, 20, 40})
    waves.push_back(GridField::sample(Grid(-1, 1, 2 * m + 1), Grid(0, 0.5, m / 2 + 1),
                                      [](double x, double t) { return 1 - std::tanh((x - t) / 2); }));
  const PDEResidualReport burgers = pde_residual(waves, [](const PointStencil& s) { return s.u_t + s.u * s.u_x - s.u_xx; });
  CHECK(*burgers.order >= 1.9);

  const GridField flat = GridField::sample(Grid(0, 1, 11), Grid(0, 1, 11), [](double, double) { return 2.5; });
  CHECK(pde_residual({flat}, heat).levels[0].linf == 0.0);

  CHECK_THROWS_AS(pde_residual({levels[1], levels[0]}, heat), Error);
}

TEST_CASE("CSV round trip") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "fdt_gridfn_test.csv").string();
  const Grid g(0.1, 0.7, 13);
  const GridFn f = GridFn::sample(g, [](double x) { return std::exp(x) / 3; }, {[](double x) { return std::exp(x) / 3; }});
  write_gridfn_csv(path, f);
  const GridFn back = read_gridfn_csv(path);
  CHECK(back.grid() == g);
  CHECK(back.values() == f.values());
  CHECK(back.derivative(1) == f.derivative(1));

  const std::string fpath = (dir / "fdt_gridfield_test.csv").string();
  const GridField field = GridField::sample(Grid(0, 1, 6), Grid(0, 1, 5), [](double x, double t) { return x * t + 1 / 3.0; });
  write_gridfield_csv(fpath, field);
  const GridField fback = read_gridfield_csv(fpath);
  CHECK(fback.values() == field.values());
  std::remove(path.c_str());
  std::remove(fpath.c_str());

  CHECK_THROWS_AS(read_gridfn_csv((dir / "fdt_missing_file.csv").string()), Error);
}
