#include <doctest.h>

#include <random>

#include "bohm/metric.hpp"

using namespace bohm;

TEST_CASE("shift examples")
{
    CHECK(shift_from_velocity(1.0) == 0.0);
    CHECK(shift_from_velocity(-1.0) == 0.0);
    CHECK(shift_from_velocity(1.5) == 0.5);
    CHECK(shift_from_velocity(-1.5) == -0.5);
    CHECK(shift_from_velocity(0.25) == -0.75);
    CHECK(shift_from_velocity(-0.25) == 0.75);
    CHECK(shift_from_velocity(0.0) == 1.0);
    CHECK(sgn(0.0) == -1.0);
}

TEST_CASE("null identity and unit determinant")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int n = 0; n < 10000; ++n) {
        const double V = n == 0 ? 0.0 : u(rng);
        const auto m = metric_from_velocity({0.0, 0.0}, V);
        CHECK(std::abs(null_form(m.v_s, V)) <= 1e-12 * std::max(1.0, V * V));
        CHECK(metric_determinant(m) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(m.g_xx == 1.0);
        CHECK(m.g_tx == -m.v_s);
        CHECK(m.g_tt == doctest::Approx(-(1.0 - m.v_s * m.v_s)));
    }
}

TEST_CASE("metric of a pure right mover is flat")
{
    WavepacketSpec s;
    s.alpha = 1.0;
    const Wavefunction wf(s);
    CHECK(shift_field(wf, {0.0, 0.1}) == 0.0);
    const auto m = metric_sample(wf, {0.0, 0.1});
    CHECK(m.g_tt == -1.0);
    CHECK(m.g_tx == 0.0);

    const auto tr = integrate(wf, -4.0, -4.0, 4.0);
    CHECK(null_residual(tr, wf) == 0.0);

    GridSpec g;
    g.nt = 5;
    g.nx = 7;
    g.x_min = -40.0;
    g.x_max = 40.0;
    const auto vs = shift_grid(wf, g, 2);
    REQUIRE(vs.size() == 35);
    CHECK(std::isnan(vs[0]));  // deep in the tail
    CHECK_THROWS_AS(shift_field(wf, {0.0, 40.0}), UndefinedAtNode);
}

TEST_CASE("null residual along interfering paths")
{
    WavepacketSpec s;
    const Wavefunction wf(s);
    const auto tr = integrate(wf, -4.3, -4.0, 4.0);
    CHECK(null_residual(tr, wf) < 1e-8);
}
