#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "bohm/trajectories.hpp"

using namespace bohm;

namespace {

WavepacketSpec packets(double alpha)
{
    WavepacketSpec s;
    s.alpha = alpha;
    return s;
}

double max_abs_diff(const Trajectory& a, const Trajectory& b)
{
    double d = 0.0;
    for (std::size_t k = 0; k < std::min(a.samples.size(), b.samples.size()); ++k)
        d = std::max(d, std::abs(a.samples[k].x - b.samples[k].x));
    return d;
}

}  // namespace

TEST_CASE("pure movers travel on the light cone")
{
    const auto times = output_times(-4.0, 4.0, 201);
    for (double alpha : {1.0, 0.0}) {
        const Wavefunction wf(packets(alpha));
        const double dir = alpha == 1.0 ? 1.0 : -1.0;
        for (double off : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
            const double x0 = -4.0 * dir + off;
            const Trajectory tr = integrate(wf, x0, times);
            REQUIRE(tr.status == TrajectoryStatus::Completed);
            REQUIRE(tr.samples.size() == times.size());
            double err = 0.0;
            for (const auto& s : tr.samples) err = std::max(err, std::abs(s.x - (x0 + dir * (s.t + 4.0))));
            CHECK(err < 1e-8);
        }
    }
}

TEST_CASE("quantile seeding")
{
    const Wavefunction right(packets(1.0));
    EnsembleSpec one;
    one.n_traj = 1;
    one.t0 = 0.0;
    const auto med = sample_initial(right, one, -6.0, 6.0);
    REQUIRE(med.size() == 1);
    CHECK(std::abs(med[0]) < 1e-6);

    // Symmetric density gives mirror-symmetric seeds.
    EnsembleSpec ens;
    ens.n_traj = 40;
    ens.t0 = 0.0;
    const auto xs = sample_initial(right, ens, -6.0, 6.0);
    for (int i = 0; i < 40; ++i) CHECK(std::abs(xs[i] + xs[39 - i]) < 1e-6);
    CHECK(std::is_sorted(xs.begin(), xs.end()));

    // Translating the packet translates the seeds.
    ens.t0 = 1.0;
    const auto moved = sample_initial(right, ens, -5.0, 7.0);
    for (int i = 0; i < 40; ++i) CHECK(moved[i] == doctest::Approx(xs[i] + 1.0).epsilon(1e-6));

    // Two separated packets split the ensemble evenly.
    const Wavefunction both(packets(0.5));
    ens.t0 = -4.0;
    const auto split = sample_initial(both, ens, -8.0, 8.0);
    CHECK(std::count_if(split.begin(), split.end(), [](double x) { return x < 0.0; }) == 20);
    CHECK(std::all_of(split.begin(), split.end(), [](double x) { return std::abs(std::abs(x) - 4.0) < 3.0; }));

    ens.sampling = Sampling::UniformWindow;
    const auto uni = sample_initial(both, ens, -8.0, 8.0);
    CHECK(uni.front() == doctest::Approx(-8.0 + 8.0 / 40.0));
}

TEST_CASE("ensemble paths never cross and do not depend on the worker count")
{
    const Wavefunction wf(packets(0.5));
    EnsembleSpec ens;
    ens.n_traj = 24;
    const auto times = output_times(-4.0, 4.0, 81);
    const auto a = ensemble(wf, ens, times, -8.0, 8.0, {}, 1);
    const auto b = ensemble(wf, ens, times, -8.0, 8.0, {}, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        CHECK(a[n].id == static_cast<int>(n));
        CHECK(a[n].samples == b[n].samples);
        CHECK(a[n].status == b[n].status);
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        double prev = -1e300;
        for (const auto& tr : a) {
            if (k >= tr.samples.size()) continue;
            CHECK(tr.samples[k].x > prev);
            prev = tr.samples[k].x;
        }
    }
}

TEST_CASE("time reversal")
{
    IntegratorOptions opts;
    opts.abs_tol = 1e-8;

    SUBCASE("pure mover, 10 tol")
    {
        const Wavefunction wf(packets(1.0));
        const auto fwd = integrate(wf, -4.2, -4.0, 4.0, opts);
        const auto back = integrate(wf, fwd.samples.back().x, 4.0, -4.0, opts);
        CHECK(std::abs(back.samples.back().x + 4.2) < 10 * opts.abs_tol);
    }
    SUBCASE("interfering packets before the collision")
    {
        // The other packet's tail already carries fringes here; measured round
        // trips reach about 12 tol, so the bound is loosened to 100 tol.
        const Wavefunction wf(packets(0.5));
        for (double x0 : {-4.5, -3.8, 3.6}) {
            const auto fwd = integrate(wf, x0, -4.0, -1.5, opts);
            REQUIRE(fwd.status == TrajectoryStatus::Completed);
            const auto back = integrate(wf, fwd.samples.back().x, -1.5, -4.0, opts);
            CHECK(std::abs(back.samples.back().x - x0) < 100 * opts.abs_tol);
        }
    }
    SUBCASE("through the collision")
    {
        // The fringe region amplifies local errors, so the round trip is only
        // bounded globally here.
        const Wavefunction wf(packets(0.5));
        for (double x0 : {-4.5, -3.8, 3.6}) {
            const auto fwd = integrate(wf, x0, -4.0, 4.0, opts);
            if (fwd.status != TrajectoryStatus::Completed) continue;
            const auto back = integrate(wf, fwd.samples.back().x, 4.0, -4.0, opts);
            if (back.status != TrajectoryStatus::Completed) continue;
            CHECK(std::abs(back.samples.back().x - x0) < 1e-4);
        }
    }
}

TEST_CASE("paths carry their density quantile through the collision")
{
    const Wavefunction wf(packets(0.5));
    const DensityCdf c0(wf, -4.0, -8.0, 8.0), c1(wf, 4.0, -8.0, 8.0);
    for (double q : {0.05, 0.2, 0.37, 0.63, 0.8, 0.95}) {
        const auto tr = integrate(wf, c0.quantile(q), -4.0, 4.0);
        REQUIRE(tr.status == TrajectoryStatus::Completed);
        CHECK(std::abs(c1.cdf(tr.samples.back().x) - q) < 1e-3);
    }
}

TEST_CASE("backward integration records decreasing times")
{
    const Wavefunction wf(packets(1.0));
    const std::vector<double> times{1.0, 0.5, 0.0, -0.5};
    const auto tr = integrate(wf, 1.0, times);
    REQUIRE(tr.samples.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(tr.samples[k].t == times[k]);
        CHECK(tr.samples[k].x == doctest::Approx(times[k]).epsilon(1e-8));
    }
}

TEST_CASE("domain exit and node stalls are reported")
{
    const Wavefunction wf(packets(1.0));
    IntegratorOptions opts;
    opts.x_domain = std::make_pair(-6.0, 0.0);
    const auto tr = integrate(wf, -4.0, -4.0, 4.0, opts);
    CHECK(tr.status == TrajectoryStatus::LeftDomain);
    CHECK(tr.samples.back().x <= 0.0 + 1e-9);

    // Far in the tail the density is below the floor.
    const auto stall = integrate(wf, 30.0, 0.0, 1.0);
    CHECK(stall.status == TrajectoryStatus::StalledAtNode);
    CHECK(to_string(TrajectoryStatus::StalledAtNode) == "stalled_at_node");
}

TEST_CASE("map_to_frame")
{
    const Wavefunction wf(packets(0.5));
    EnsembleSpec ens;
    ens.n_traj = 6;
    const auto times = output_times(-4.0, 4.0, 21);
    const auto trs = ensemble(wf, ens, times, -8.0, 8.0);
    const auto same = map_to_frame(trs, BoostFrame{});
    for (std::size_t n = 0; n < trs.size(); ++n) CHECK(same[n].samples == trs[n].samples);

    const BoostFrame f(0.4);
    const auto mapped = map_to_frame(trs, f);
    const auto back = map_to_frame(mapped, f.inverse());
    for (std::size_t n = 0; n < trs.size(); ++n) {
        CHECK(mapped[n].status == trs[n].status);
        CHECK(max_abs_diff(back[n], trs[n]) < 1e-12);
    }
}

TEST_CASE("seeding refuses windows with significant negative density")
{
    const Wavefunction wf(packets(0.5), BoostFrame(0.4));
    const double eta = optical_negativity_bound(wf.spec());
    bool found = false;
    for (double t = -1.0; t <= 1.0 && !found; t += 0.01) {
        const DensityCdf cdf(wf, t, -3.0, 3.0, 6001);
        if (cdf.min_rho() >= -eta * cdf.max_rho()) continue;
        found = true;
        EnsembleSpec ens;
        ens.t0 = t;
        CHECK_THROWS_AS(sample_initial(wf, ens, -3.0, 3.0), NegativeDensityInWindow);
    }
    CHECK(found);

    EnsembleSpec ok;
    CHECK_NOTHROW(sample_initial(Wavefunction(packets(0.5)), ok, -8.0, 8.0));
}

TEST_CASE("optical negativity bound")
{
    CHECK(optical_negativity_bound(packets(0.5)) == doctest::Approx(1.0 / 225.0));
    WavepacketSpec s = packets(0.5);
    s.k0R = 20.0;
    s.k0L = 10.0;
    CHECK(optical_negativity_bound(s) == doctest::Approx(0.01));
}

TEST_CASE("mapped lab paths overlay the boosted density fringes")
{
    const Wavefunction lab(packets(0.5));
    const BoostFrame f(0.125);
    const Wavefunction moving(packets(0.5), f);
    EnsembleSpec ens;
    ens.n_traj = 2000;
    const auto trs = map_to_frame(ensemble(lab, ens, output_times(-4.0, 4.0, 801), -8.0, 8.0), f);

    // Crossing points of each mapped path with t' = 0, binned on x'.
    const int bins = 150;
    const double lo = -1.5, width = 0.02;
    std::vector<double> hist(bins, 0.0), rho(bins);
    for (const auto& tr : trs) {
        for (std::size_t k = 1; k < tr.samples.size(); ++k) {
            const auto a = tr.samples[k - 1], b = tr.samples[k];
            if ((a.t < 0.0) == (b.t < 0.0)) continue;
            const double x = a.x + (b.x - a.x) * (0.0 - a.t) / (b.t - a.t);
            const int i = static_cast<int>(std::floor((x - lo) / width));
            if (i >= 0 && i < bins) hist[i] += 1.0;
        }
    }
    CHECK(std::accumulate(hist.begin(), hist.end(), 0.0) > 1000.0);
    for (int i = 0; i < bins; ++i) rho[i] = current_density(moving, {0.0, lo + (i + 0.5) * width}).rho;

    int best = 0;
    double best_c = -1e300;
    for (int off = -20; off <= 20; ++off) {
        double c = 0.0;
        for (int i = 0; i < bins; ++i)
            if (i + off >= 0 && i + off < bins) c += hist[i] * rho[i + off];
        if (c > best_c) {
            best_c = c;
            best = off;
        }
    }
    CHECK(std::abs(best) <= 1);
}
