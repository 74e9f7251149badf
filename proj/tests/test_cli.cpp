#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bohm/cli.hpp"
#include "bohm/observables.hpp"
#include "bohm/relativity.hpp"

using namespace bohm;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "bohmtraj");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

RunConfig small(const std::string& name)
{
    RunConfig c = *cli::preset(name);
    c.grid = c.grid.thinned(21, 41);
    return c;
}

}  // namespace

TEST_CASE("presets")
{
    const auto names = cli::preset_names();
    CHECK(names == std::vector<std::string>{"fig2a", "fig2b", "fig3", "fig4", "fig5", "fig6"});
    CHECK(cli::preset("fig2a")->spec.alpha == 1.0);
    CHECK(cli::preset("fig2b")->spec.alpha == 0.5);
    CHECK(cli::preset("fig3")->boost_v == 0.125);
    CHECK(cli::preset("fig6")->boost_v == 0.4);
    CHECK(cli::preset("fig4")->spec.regime == Regime::General);
    CHECK(cli::preset("fig5")->spec.regime == Regime::Paraxial);
    CHECK_FALSE(cli::preset("fig7").has_value());
    for (const auto& n : names) CHECK(validate_spec(cli::preset(n)->spec).valid());
}

TEST_CASE("csv headers and shapes")
{
    const auto cfg = small("fig2b");
    const auto field = parse_csv(cli::field_csv(cfg));
    REQUIRE(field.size() == 1 + 21 * 41);
    CHECK(field[0] == std::vector<std::string>{"t", "x", "re_psi", "im_psi", "j", "rho", "V"});

    const auto traj = parse_csv(cli::traj_csv(cfg));
    CHECK(traj[0] == std::vector<std::string>{"traj_id", "t", "x", "status"});
    CHECK(traj.size() > 1);
    for (std::size_t r = 1; r < traj.size(); ++r)
        CHECK((traj[r][3] == "completed" || traj[r][3] == "left_domain" || traj[r][3] == "stalled_at_node"));

    const auto metric = parse_csv(cli::metric_csv(cfg));
    CHECK(metric[0] == std::vector<std::string>{"t", "x", "vs"});
    CHECK(metric.size() == field.size());
}

TEST_CASE("pure right mover has V = 1 wherever defined")
{
    const auto rows = parse_csv(cli::field_csv(small("fig2a")));
    int defined = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r][6] == "nan") continue;
        ++defined;
        CHECK(std::stod(rows[r][6]) == 1.0);
    }
    CHECK(defined > 100);
}

TEST_CASE("boosted fields")
{
    const auto fig6 = parse_csv(cli::field_csv(small("fig6")));
    bool negative = false;
    for (std::size_t r = 1; r < fig6.size(); ++r) negative |= std::stod(fig6[r][5]) < 0.0;
    CHECK(negative);

    // The fig3 field is the fig2b state seen from v = 0.125.
    const auto cfg = small("fig3");
    const auto rows = parse_csv(cli::field_csv(cfg));
    const Wavefunction lab(cfg.spec);
    const BoostFrame f(cfg.boost_v);
    for (std::size_t r = 1; r < rows.size(); r += 37) {
        const SpacetimePoint primed{std::stod(rows[r][0]), std::stod(rows[r][1])};
        const PsiEval e = lab(boost_point(primed, f.inverse()));
        CHECK(std::abs(e.psi.real() - std::stod(rows[r][2])) < 1e-12);
        CHECK(std::abs(e.psi.imag() - std::stod(rows[r][3])) < 1e-12);
    }
}

TEST_CASE("boost-frame output")
{
    RunConfig cfg = small("fig2b");
    cfg.spec.k0R = 20.0;
    cfg.spec.k0L = 10.0;
    const std::string text = cli::boost_frame_text(cfg);
    CHECK(text.find("v=0.33333333333333331\n") != std::string::npos);
    CHECK(cli::integration_frame(cfg).v() == 1.0 / 3.0);
    CHECK(cli::integration_frame(small("fig2b")).is_identity());
    CHECK(cli::integration_frame(small("fig5")).is_identity());
}

TEST_CASE("exit codes")
{
    CHECK(run_cli({"boost-frame", "--preset", "fig2b"}).code == cli::kOk);
    CHECK(run_cli({"field", "--preset", "nope"}).code == cli::kConfigError);
    CHECK(run_cli({"field", "--preset", "fig2b", "--set", "bogus=1"}).code == cli::kConfigError);
    CHECK(run_cli({"field", "--preset", "fig5", "--set", "boost_v=0.1"}).code == cli::kConfigError);
    CHECK(run_cli({"field", "--preset", "fig2b", "--set", "k0=3", "--require-optical"}).code ==
          cli::kConfigError);
    const auto warn = run_cli({"field", "--preset", "fig2b", "--set", "k0=3", "--set", "nt=3", "--set", "nx=3"});
    CHECK(warn.code == cli::kOk);
    CHECK(warn.err.find("warning") != std::string::npos);
    CHECK(run_cli({}).code == cli::kConfigError);

    // A huge difference step wrecks the continuity residual.
    const auto bad = run_cli({"check", "--preset", "fig2b", "--set", "fd_step=1", "--set", "nt=21", "--set",
                              "nx=41", "--set", "check_traj=100"});
    CHECK(bad.code == cli::kDiagnosticFailure);
    CHECK(bad.out.find("overall=fail") != std::string::npos);
}

TEST_CASE("output file and manifest")
{
    const auto dir = std::filesystem::temp_directory_path() / "bohm_cli_test";
    std::filesystem::create_directories(dir);
    const auto out = (dir / "field.csv").string();
    const auto r = run_cli({"field", "--preset", "fig2b", "--set", "nt=5", "--set", "nx=7", "--out", out});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.empty());
    CHECK(std::filesystem::exists(out));
    std::ifstream m(out + ".manifest");
    std::stringstream ss;
    ss << m.rdbuf();
    CHECK(ss.str().find("command=field") != std::string::npos);
    CHECK(ss.str().find("nt=5") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("repeated runs are byte identical")
{
    for (const char* name : {"fig2b", "fig6", "fig4"}) {
        const auto cfg = small(name);
        CHECK(cli::field_csv(cfg) == cli::field_csv(cfg));
        CHECK(cli::traj_csv(cfg) == cli::traj_csv(cfg));
    }
}
