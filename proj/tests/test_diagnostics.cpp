#include <doctest.h>

#include "bohm/diagnostics.hpp"
#include "detail/naive_current.hpp"

using namespace bohm;

namespace {

WavepacketSpec packets(double alpha)
{
    WavepacketSpec s;
    s.alpha = alpha;
    return s;
}

GridSpec small_grid()
{
    GridSpec g;
    g.t_min = -2.0;
    g.t_max = 2.0;
    g.x_min = -3.0;
    g.x_max = 3.0;
    g.nt = 41;
    g.nx = 121;
    return g;
}

}  // namespace

TEST_CASE("continuity holds for the Klein-Gordon current")
{
    for (double alpha : {1.0, 0.0, 0.5, 0.3}) {
        const auto r = continuity_check(Wavefunction(packets(alpha)), small_grid(), 1e-4);
        CHECK(r.pass);
        CHECK(r.max_residual < 1e-5);
    }
    const auto slope = continuity_slope(Wavefunction(packets(0.5)), small_grid());
    CHECK(slope.pass);
}

TEST_CASE("continuity rejects the naive reconstruction")
{
    const auto s = packets(0.5);
    const auto r = continuity_check([&](SpacetimePoint p) { return detail::naive_schrodinger_current(s, p); },
                                    small_grid(), 1e-4, 1e-5, "naive");
    CHECK_FALSE(r.pass);
    CHECK(r.max_residual > 1e-3);
    CHECK(r.name == "naive");

    // Without interference the naive density is exact.
    const auto pure = packets(1.0);
    const auto ok = continuity_check([&](SpacetimePoint p) { return detail::naive_schrodinger_current(pure, p); },
                                     small_grid(), 1e-4);
    CHECK(ok.pass);
}

TEST_CASE("density matching")
{
    const Wavefunction wf(packets(1.0));
    EnsembleSpec ens;
    ens.n_traj = 10;
    const std::vector<double> times{-4.0, 0.0, 4.0};
    const auto few = ensemble(wf, ens, times, -10.0, 10.0);
    CHECK_THROWS_AS(density_match(wf, few, times, -10.0, 10.0), InsufficientTrajectories);

    ens.n_traj = 200;
    const auto many = ensemble(wf, ens, times, -10.0, 10.0);
    const auto r = density_match(wf, many, times, -10.0, 10.0);
    CHECK(r.max_residual < 0.005);
    CHECK(r.pass);
}

TEST_CASE("weak value identity and covariance on a small sample")
{
    const Wavefunction wf(packets(0.5));
    const auto pts = random_points(small_grid(), 300, 7);
    REQUIRE(pts.size() == 300);
    CHECK(weak_value_identity(wf, pts, 1e-12).pass);
    CHECK(covariance_check(wf, BoostFrame(0.4), pts, 1e-10).pass);
    CHECK(random_points(small_grid(), 300, 7)[17] == pts[17]);
}

TEST_CASE("negative density appears only in boosted frames, at interference minima")
{
    GridSpec g;
    g.nt = 161;
    g.nx = 481;
    g.t_min = g.x_min = -4.0;
    g.t_max = g.x_max = 4.0;

    const auto rest = negativity_stats(Wavefunction(packets(0.5)), g);
    CHECK(rest.significant_cells == 0);
    CHECK(rest.eta == doctest::Approx(1.0 / 225.0));
    CHECK(positivity_check(Wavefunction(packets(0.5)), g).pass);

    const auto moving = negativity_stats(Wavefunction(packets(0.5), BoostFrame(0.4)), g);
    CHECK(moving.significant_cells > 0);
    CHECK(moving.node_cells == moving.significant_cells);
    CHECK(moving.min_rho < -moving.eta * moving.max_abs_rho);
    CHECK_FALSE(positivity_check(Wavefunction(packets(0.5), BoostFrame(0.4)), g).pass);

    const auto cells = negative_density_map(Wavefunction(packets(0.5), BoostFrame(0.4)), g);
    CHECK(static_cast<long>(cells.size()) == moving.strict_cells);
    for (const auto& c : cells) {
        CHECK(c.rho < 0.0);
        CHECK(c.point.t == g.t(c.i));
        CHECK(c.point.x == g.x(c.j));
    }
    CHECK(negative_density_map(Wavefunction(packets(1.0), BoostFrame(0.4)), g).empty());
}

TEST_CASE("paraxial and relativistic velocities agree at the centre")
{
    WavepacketSpec s;
    s.k0R = s.k0L = 6.0;
    s.kz = 50.0;
    s.regime = Regime::Paraxial;
    CHECK(velocity(Wavefunction(s), {0.0, 0.0}).value() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    s.regime = Regime::General;
    CHECK(velocity(Wavefunction(s), {0.0, 0.0}).value() == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    const auto g = paraxial_comparison_grid(6.0, 50.0, 11, 21);
    CHECK(g.t_max == doctest::Approx(4.0 * 50.0 / 6.0));
    CHECK(g.x_min == -6.0);
    const std::vector<double> kzs{100.0, 50.0};
    const auto r = paraxial_convergence(0.5, 6.0, 1.0, kzs, 11, 21);
    CHECK_FALSE(r.pass);  // kz listed in decreasing order, so the deviations grow
    CHECK(std::isinf(r.max_residual));
}

TEST_CASE("report serialization")
{
    const auto r = make_report("demo", 0.5, 1.0, {{"cells", 3.0}});
    CHECK(r.pass);
    CHECK(r.detail("cells") == 3.0);
    CHECK(std::isnan(r.detail("missing")));
    CHECK(serialize_report(r) ==
          "report=demo\nmax_residual=0.5\ntolerance=1\npass=true\ncells=3\n\n");
    CHECK_FALSE(make_report("nan", std::nan(""), 1.0).pass);
    CHECK_FALSE(make_report("big", 2.0, 1.0).pass);
}

TEST_CASE("null metric checks")
{
    const Wavefunction wf(packets(0.5));
    CHECK(null_metric_grid(wf, small_grid()).pass);
    EnsembleSpec ens;
    ens.n_traj = 8;
    const auto trs = ensemble(wf, ens, output_times(-4.0, 4.0, 41), -8.0, 8.0);
    CHECK(null_metric_ensemble(wf, trs).pass);
}
