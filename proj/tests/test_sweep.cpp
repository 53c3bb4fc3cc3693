#include <cmath>

#include <gtest/gtest.h>

#include "lmg/sweep.hpp"

using namespace lmg;

namespace
{
SweepConfig field_config(std::vector<int> sizes, std::vector<double> gammas, FieldRange range)
{
    SweepConfig c;
    c.mode = SweepMode::field_sweep;
    c.n_list = std::move(sizes);
    c.gammas = std::move(gammas);
    c.h_range = range;
    return c;
}
} // namespace

TEST(Csv, HeaderIsFixed)
{
    EXPECT_EQ(csv_header, "mode,N,gamma,h,parity,energy,chi2,xi1_2,xi2_2,fisher,qcr,tl_chi2,tl_xi1_2,phase,status");
    SweepConfig c = field_config({4}, {0.5}, {0.0, 0.0, 1.0});
    const auto text = render_csv(run_sweep(c));
    EXPECT_EQ(text.substr(0, text.find('\n')), csv_header);
}

TEST(Csv, FormatDouble)
{
    EXPECT_EQ(format_double(INFINITY), "inf");
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}

TEST(ModeNames, RoundTrip)
{
    for (auto m : {SweepMode::field_sweep, SweepMode::size_scaling, SweepMode::isotropic, SweepMode::analytic_only}) {
        EXPECT_EQ(parse_mode(to_string(m)), m);
    }
    EXPECT_FALSE(parse_mode("sweep").has_value());
}

TEST(FieldSweep, DeterministicAndThreadCountIndependent)
{
    auto c = field_config({20, 33}, {0.0, 0.5}, {0.0, 2.0, 0.1});
    const auto serial = render_csv(run_sweep(c));
    EXPECT_EQ(serial, render_csv(run_sweep(c)));
    c.jobs = 4;
    EXPECT_EQ(serial, render_csv(run_sweep(c)));
}

TEST(FieldSweep, RowOrderIsGammaThenSizeThenField)
{
    const auto result = run_sweep(field_config({10, 20}, {0.0, 1.0}, {0.0, 1.0, 0.5}));
    ASSERT_EQ(result.rows.size(), 12u);
    EXPECT_EQ(result.rows[0].gamma, 0.0);
    EXPECT_EQ(result.rows[0].n, 10);
    EXPECT_EQ(result.rows[2].h, 1.0);
    EXPECT_EQ(result.rows[3].n, 20);
    EXPECT_EQ(result.rows[6].gamma, 1.0);
}

TEST(FieldSweep, IsotropicHundredSpins)
{
    const auto result = run_sweep(field_config({100}, {1.0}, {0.0, 2.0, 0.01}));
    ASSERT_EQ(result.rows.size(), 201u);
    for (const auto &row : result.rows) {
        ASSERT_TRUE(row.numeric.has_value());
        const auto &r = *row.numeric;
        if (row.h < 1.0) {
            EXPECT_NEAR(r.xi1_2, 1.0 / r.chi2, 1e-9) << "h=" << row.h;
        } else {
            EXPECT_NEAR(r.chi2, 1.0, 1e-12) << "h=" << row.h;
            EXPECT_NEAR(r.xi1_2, 1.0, 1e-12) << "h=" << row.h;
        }
    }
    EXPECT_FALSE(result.has_failures());
}

TEST(FieldSweep, SymmetricPhaseAgreesWithThermodynamicLimit)
{
    SweepConfig c;
    c.n_list = {500};
    c.gammas = {0.5};
    c.h_list = {2.0};
    const auto result = run_sweep(c);
    ASSERT_EQ(result.rows.size(), 1u);
    const auto &row = result.rows.front();
    EXPECT_NEAR(row.numeric->chi2 / 0.816497, 1.0, 0.01);
    EXPECT_NEAR(*row.tl_chi2, 0.816497, 1e-6);
}

TEST(FieldSweep, CriticalRowsHaveNoLimitColumns)
{
    SweepConfig c;
    c.n_list = {50};
    c.gammas = {0.5};
    c.h_list = {1.0};
    const auto row = run_sweep(c).rows.front();
    EXPECT_FALSE(row.tl_chi2.has_value());
    EXPECT_EQ(row.phase, PhaseLabel::critical);
    EXPECT_EQ(row.status, "ok");
}

TEST(FieldSweep, UsageErrors)
{
    SweepConfig c;
    c.n_list = {10};
    EXPECT_THROW(run_sweep(c), UsageError);
    c.h_range = FieldRange{1.0, 0.0, 0.1};
    EXPECT_THROW(run_sweep(c), UsageError);
    c.h_range = FieldRange{0.0, 1.0, 0.0};
    EXPECT_THROW(run_sweep(c), UsageError);
    c.h_range.reset();
    c.h_list = {-0.5};
    EXPECT_THROW(run_sweep(c), UsageError);
    c.h_list = {0.5};
    c.n_list = {};
    EXPECT_THROW(run_sweep(c), UsageError);
}

TEST(FieldRange, InclusiveStop)
{
    SweepConfig c;
    c.h_range = FieldRange{0.0, 2.0, 0.01};
    const auto hs = expand_h_values(c);
    ASSERT_EQ(hs.size(), 201u);
    EXPECT_NEAR(hs.back(), 2.0, 1e-12);
}

TEST(EffectiveGammas, ModeDefaults)
{
    SweepConfig c;
    EXPECT_EQ(effective_gammas(c), (std::vector<double>{0.0, 1.0 / 3.0, 0.5, 1.0}));
    c.mode = SweepMode::size_scaling;
    EXPECT_EQ(effective_gammas(c), std::vector<double>{0.5});
    c.mode = SweepMode::isotropic;
    c.gammas = {0.2};
    EXPECT_EQ(effective_gammas(c), std::vector<double>{1.0});
}

TEST(SizeScaling, SymmetricPhaseIsSizeIndependent)
{
    SweepConfig c;
    c.mode = SweepMode::size_scaling;
    c.n_list = {100, 200, 300, 400};
    c.gammas = {0.5};
    c.h_fixed = 1.5;
    const auto result = run_sweep(c);
    ASSERT_EQ(result.rows.size(), 4u);
    double lo = INFINITY;
    double hi = 0.0;
    for (const auto &row : result.rows) {
        lo = std::min(lo, row.numeric->chi2);
        hi = std::max(hi, row.numeric->chi2);
    }
    EXPECT_LT((hi - lo) / lo, 0.01);
}

TEST(SizeScaling, BrokenPhaseSummaryReportsFits)
{
    SweepConfig c;
    c.mode = SweepMode::size_scaling;
    c.n_list = {400, 100, 300, 200};
    c.h_fixed = 0.5;
    const auto result = run_sweep(c);
    ASSERT_EQ(result.rows.size(), 4u);
    EXPECT_EQ(result.rows.front().n, 100);
    bool power = false;
    bool linear = false;
    for (const auto &line : result.summary) {
        if (line.starts_with("fit_power_law_chi2,") && line.find("exponent=") != std::string::npos) {
            const double e = std::stod(line.substr(line.find("exponent=") + 9));
            EXPECT_GE(e, -1.05);
            EXPECT_LE(e, -0.95);
            power = true;
        }
        if (line.starts_with("fit_linear_inv_chi2,") && line.find("slope=") != std::string::npos) {
            EXPECT_NEAR(std::stod(line.substr(line.find("slope=") + 6)), 0.75, 0.0075);
            linear = true;
        }
    }
    EXPECT_TRUE(power);
    EXPECT_TRUE(linear);
}

TEST(SizeScaling, NeedsFixedField)
{
    SweepConfig c;
    c.mode = SweepMode::size_scaling;
    c.n_list = {10, 20, 30};
    EXPECT_THROW(run_sweep(c), UsageError);
}

TEST(Isotropic, ClosedFormsMatchSolverAwayFromCrossings)
{
    SweepConfig c;
    c.mode = SweepMode::isotropic;
    c.n_list = {100};
    c.h_range = FieldRange{0.0025, 1.9975, 0.005};
    const auto result = run_sweep(c);
    const auto crossings = isotropic_level_crossings(100);
    for (const auto &row : result.rows) {
        const auto m0 = isotropic_ground_m(100, row.h);
        EXPECT_NEAR(2.0 * *row.energy + 1.0, isotropic_energy(100, m0, row.h), 1e-10) << "h=" << row.h;
        EXPECT_NEAR(row.numeric->chi2, *row.tl_chi2, 1e-10) << "h=" << row.h;
        if (row.h >= 1.0) {
            EXPECT_EQ(m0, HalfInteger(50));
            EXPECT_NEAR(row.numeric->chi2, 1.0, 1e-12);
        }
    }
    for (const auto &line : result.summary) {
        if (line.starts_with("isotropic,")) {
            const auto m0 = line.substr(line.find("M0=") + 3, line.find(",E0=") - line.find("M0=") - 3);
            EXPECT_EQ(m0, line.substr(line.find("solver_M0=") + 10));
        }
    }
    const auto& last = result.summary.back();
    ASSERT_TRUE(last.starts_with("crossings,N=100,h="));
    EXPECT_DOUBLE_EQ(std::stod(last.substr(18)), 0.99);
}

TEST(AnalyticOnly, NoNumericColumns)
{
    SweepConfig c;
    c.mode = SweepMode::analytic_only;
    c.n_list = {400};
    c.gammas = {0.5, 1.0};
    c.h_list = {0.5, 1.0, 2.0};
    const auto result = run_sweep(c);
    ASSERT_EQ(result.rows.size(), 6u);
    for (const auto &row : result.rows) {
        EXPECT_FALSE(row.numeric.has_value());
        EXPECT_FALSE(row.energy.has_value());
    }
    EXPECT_NEAR(*result.rows[0].tl_xi1_2, 1.224745, 1e-6);
    EXPECT_FALSE(result.rows[1].tl_chi2.has_value());
    EXPECT_FALSE(result.rows[3].tl_chi2.has_value());
    EXPECT_EQ(*result.rows[5].tl_chi2, 1.0);
}
