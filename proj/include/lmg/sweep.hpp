#ifndef LMG_SWEEP_HPP
#define LMG_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "lmg/analytic.hpp"
#include "lmg/errors.hpp"
#include "lmg/ground_state.hpp"
#include "lmg/metrology.hpp"
#include "lmg/scaling.hpp"

namespace lmg
{

enum class SweepMode { field_sweep, size_scaling, isotropic, analytic_only };

inline std::string_view to_string(SweepMode m) noexcept
{
    switch (m) {
    case SweepMode::field_sweep:
        return "field-sweep";
    case SweepMode::size_scaling:
        return "size-scaling";
    case SweepMode::isotropic:
        return "isotropic";
    case SweepMode::analytic_only:
        return "analytic-only";
    }
    return "?";
}

inline std::optional<SweepMode> parse_mode(std::string_view s) noexcept
{
    for (auto m : {SweepMode::field_sweep, SweepMode::size_scaling, SweepMode::isotropic, SweepMode::analytic_only}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

/// Inclusive range start, start+step, ... <= stop.
struct FieldRange {
    double start;
    double stop;
    double step;
};

struct SweepConfig {
    SweepMode mode = SweepMode::field_sweep;
    std::vector<int> n_list;
    /// Empty selects the mode default.
    std::vector<double> gammas;
    /// An explicit list takes precedence over the range.
    std::vector<double> h_list;
    std::optional<FieldRange> h_range;
    std::optional<double> h_fixed;
    /// Smallest N entering size-scaling fits. Unset: 100 at h = 1, otherwise all N.
    std::optional<int> fit_min_n;
    std::string output_path;
    unsigned jobs = 1;
};

inline constexpr std::string_view csv_header =
    "mode,N,gamma,h,parity,energy,chi2,xi1_2,xi2_2,fisher,qcr,tl_chi2,tl_xi1_2,phase,status";

struct CsvRow {
    SweepMode mode;
    int n;
    double gamma;
    double h;
    std::optional<Parity> parity;
    std::optional<double> energy;
    std::optional<MetrologyReport> numeric;
    std::optional<double> tl_chi2;
    std::optional<double> tl_xi1_2;
    PhaseLabel phase;
    std::string status;
};

struct SweepResult {
    std::vector<CsvRow> rows;
    /// Trailing summary block, one line each, emitted after the rows with a "# " prefix.
    std::vector<std::string> summary;

    [[nodiscard]] bool has_failures() const noexcept
    {
        return std::any_of(rows.begin(), rows.end(), [](const CsvRow &r) { return r.status != "ok"; });
    }
};

/// 17 significant digits; infinities as "inf".
inline std::string format_double(double x)
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_row(const CsvRow &row)
{
    auto opt = [](const std::optional<double> &v) { return v ? format_double(*v) : std::string(); };
    std::string out;
    out.reserve(256);
    out += to_string(row.mode);
    out += ',' + std::to_string(row.n);
    out += ',' + format_double(row.gamma);
    out += ',' + format_double(row.h);
    out += ',';
    if (row.parity) {
        out += to_string(*row.parity);
    }
    out += ',' + opt(row.energy);
    if (row.numeric) {
        const auto &r = *row.numeric;
        for (double v : {r.chi2, r.xi1_2, r.xi2_2, r.fisher, r.qcr}) {
            out += ',' + format_double(v);
        }
    } else {
        out += ",,,,,";
    }
    out += ',' + opt(row.tl_chi2);
    out += ',' + opt(row.tl_xi1_2);
    out += ',';
    out += to_string(row.phase);
    out += ',' + row.status;
    return out;
}

inline std::string render_csv(const SweepResult &result)
{
    std::string out(csv_header);
    out += '\n';
    for (const auto &row : result.rows) {
        out += format_row(row);
        out += '\n';
    }
    for (const auto &line : result.summary) {
        out += "# " + line + '\n';
    }
    return out;
}

/// Field values selected by the config, in input order.
inline std::vector<double> expand_h_values(const SweepConfig &config)
{
    if (!config.h_list.empty()) {
        return config.h_list;
    }
    if (!config.h_range) {
        throw UsageError("no field values given (use --h or --h-start/--h-stop/--h-step)");
    }
    const auto [start, stop, step] = *config.h_range;
    if (!(step > 0.0)) {
        throw UsageError("h step must be > 0");
    }
    if (!(stop >= start)) {
        throw UsageError("h range is empty (stop < start)");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(start + static_cast<double>(k) * step);
    }
    return out;
}

inline std::vector<double> effective_gammas(const SweepConfig &config)
{
    if (config.mode == SweepMode::isotropic) {
        return {1.0};
    }
    if (!config.gammas.empty()) {
        return config.gammas;
    }
    if (config.mode == SweepMode::size_scaling) {
        return {0.5};
    }
    return {0.0, 1.0 / 3.0, 0.5, 1.0};
}

namespace detail
{

inline void validate_common(const SweepConfig &config)
{
    if (config.n_list.empty()) {
        throw UsageError("no system sizes given (use --n)");
    }
    for (int n : config.n_list) {
        if (n < 1) {
            throw UsageError("system size N must be >= 1");
        }
    }
    for (double g : effective_gammas(config)) {
        if (!(g >= 0.0 && g <= 1.0)) {
            throw UsageError("gamma must lie in [0, 1]");
        }
    }
}

inline void check_fields(const std::vector<double> &hs)
{
    if (hs.empty()) {
        throw UsageError("field list is empty");
    }
    for (double h : hs) {
        if (!(h >= 0.0) || !std::isfinite(h)) {
            throw UsageError("field values must be finite and >= 0");
        }
    }
}

/// Runs task(i) for i in [0, count) on up to `jobs` threads. Results are written by index.
inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)> &task)
{
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            task(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) {
                    task(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

struct GridPoint {
    int n;
    double gamma;
    double h;
};

inline void attach_tl(CsvRow &row)
{
    try {
        const auto tl = tl_prediction(row.h, row.gamma, row.n);
        row.tl_chi2 = tl.chi2;
        row.tl_xi1_2 = tl.xi1_2;
    } catch (const DomainError &) {
        // undefined at h = 1 and in the isotropic broken phase
    }
}

struct NumericPoint {
    CsvRow row;
    std::optional<GroundState> state;
};

inline NumericPoint evaluate_point(SweepMode mode, const GridPoint &p)
{
    NumericPoint out{CsvRow{mode, p.n, p.gamma, p.h, {}, {}, {}, {}, {}, phase_of(p.h), "ok"}, std::nullopt};
    try {
        auto gs = lmg_ground_state(ModelParams(p.n, p.gamma, p.h));
        out.row.parity = gs.parity();
        out.row.energy = gs.energy;
        out.row.numeric = report(gs);
        out.state = std::move(gs);
    } catch (const ConvergenceError &e) {
        out.row.status = "convergence_error";
    }
    return out;
}

inline std::vector<NumericPoint> evaluate_grid(SweepMode mode, const std::vector<GridPoint> &grid, unsigned jobs)
{
    std::vector<NumericPoint> out(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t i) { out[i] = evaluate_point(mode, grid[i]); });
    return out;
}

inline std::string join(const std::vector<double> &values, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += format_double(values[i]);
    }
    return out;
}

} // namespace detail

/// One row per (gamma, N, h): numeric figures plus thermodynamic-limit values where defined.
inline SweepResult run_field_sweep(const SweepConfig &config)
{
    detail::validate_common(config);
    const auto hs = expand_h_values(config);
    detail::check_fields(hs);

    std::vector<detail::GridPoint> grid;
    for (double g : effective_gammas(config)) {
        for (int n : config.n_list) {
            for (double h : hs) {
                grid.push_back({n, g, h});
            }
        }
    }
    auto points = detail::evaluate_grid(SweepMode::field_sweep, grid, config.jobs);
    SweepResult result;
    result.rows.reserve(points.size());
    for (auto &p : points) {
        detail::attach_tl(p.row);
        result.rows.push_back(std::move(p.row));
    }
    return result;
}

/// One row per (gamma, N) at h_fixed, plus fits of chi^2 vs N and 1/chi^2 vs N in the summary.
inline SweepResult run_size_scaling(const SweepConfig &config)
{
    detail::validate_common(config);
    if (!config.h_fixed) {
        throw UsageError("size-scaling needs --h-fixed");
    }
    const double h = *config.h_fixed;
    detail::check_fields({h});
    std::vector<int> sizes = config.n_list;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    const int min_n = config.fit_min_n.value_or(h == 1.0 ? 100 : 1);

    const auto gammas = effective_gammas(config);
    std::vector<detail::GridPoint> grid;
    for (double g : gammas) {
        for (int n : sizes) {
            grid.push_back({n, g, h});
        }
    }
    auto points = detail::evaluate_grid(SweepMode::size_scaling, grid, config.jobs);

    SweepResult result;
    for (double g : gammas) {
        std::vector<ScalingPoint> chi2;
        std::vector<ScalingPoint> inverse;
        const std::string tag = "gamma=" + format_double(g) + ",h=" + format_double(h);
        for (auto &p : points) {
            if (p.row.gamma != g) {
                continue;
            }
            detail::attach_tl(p.row);
            if (p.row.numeric) {
                const double c = p.row.numeric->chi2;
                result.summary.push_back("inv_chi2," + tag + ",N=" + std::to_string(p.row.n) + ",value=" + format_double(1.0 / c));
                if (p.row.n >= min_n) {
                    chi2.push_back({static_cast<double>(p.row.n), c});
                    inverse.push_back({static_cast<double>(p.row.n), 1.0 / c});
                }
            }
            result.rows.push_back(p.row);
        }
        try {
            const auto fit = fit_power_law(chi2);
            result.summary.push_back("fit_power_law_chi2," + tag + ",exponent=" + format_double(fit.exponent) +
                                     ",amplitude=" + format_double(fit.amplitude) + ",r_squared=" +
                                     format_double(fit.r_squared) + ",points=" + std::to_string(fit.points_used));
            result.summary.push_back("local_exponents_chi2," + tag + ",values=" + detail::join(local_exponents(chi2), ';'));
        } catch (const std::exception &e) {
            result.summary.push_back("fit_power_law_chi2," + tag + ",unavailable=" + e.what());
        }
        try {
            const auto line = fit_linear(inverse);
            result.summary.push_back("fit_linear_inv_chi2," + tag + ",slope=" + format_double(line.slope) +
                                     ",intercept=" + format_double(line.intercept) + ",r_squared=" +
                                     format_double(line.r_squared));
        } catch (const std::exception &e) {
            result.summary.push_back("fit_linear_inv_chi2," + tag + ",unavailable=" + e.what());
        }
    }
    return result;
}

/// Index of the largest-magnitude amplitude's M.
inline HalfInteger dominant_m(const GroundState &gs)
{
    const auto &c = gs.amplitudes;
    const auto it = std::max_element(c.begin(), c.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    return gs.sector.m_values[static_cast<std::size_t>(it - c.begin())];
}

/// gamma = 1 rows. Numeric columns come from the solver; tl columns hold the Dicke closed forms at M_0.
inline SweepResult run_isotropic(const SweepConfig &config)
{
    detail::validate_common(config);
    const auto hs = expand_h_values(config);
    detail::check_fields(hs);

    std::vector<detail::GridPoint> grid;
    for (int n : config.n_list) {
        for (double h : hs) {
            grid.push_back({n, 1.0, h});
        }
    }
    auto points = detail::evaluate_grid(SweepMode::isotropic, grid, config.jobs);

    SweepResult result;
    for (auto &p : points) {
        const auto m0 = isotropic_ground_m(p.row.n, p.row.h);
        const auto dicke = dicke_metrics(p.row.n, m0);
        p.row.tl_chi2 = dicke.chi2;
        p.row.tl_xi1_2 = dicke.xi1_2;
        std::string line = "isotropic,N=" + std::to_string(p.row.n) + ",h=" + format_double(p.row.h) +
                           ",M0=" + m0.to_string() + ",E0=" + format_double(isotropic_energy(p.row.n, m0, p.row.h));
        if (p.state) {
            line += ",solver_M0=" + dominant_m(*p.state).to_string();
        }
        result.summary.push_back(std::move(line));
        result.rows.push_back(std::move(p.row));
    }
    for (int n : config.n_list) {
        result.summary.push_back("crossings,N=" + std::to_string(n) + ",h=" + detail::join(isotropic_level_crossings(n), ';'));
    }
    return result;
}

/// Thermodynamic-limit columns only; no diagonalization.
inline SweepResult run_analytic_only(const SweepConfig &config)
{
    detail::validate_common(config);
    const auto hs = expand_h_values(config);
    detail::check_fields(hs);
    SweepResult result;
    for (double g : effective_gammas(config)) {
        for (int n : config.n_list) {
            for (double h : hs) {
                CsvRow row{SweepMode::analytic_only, n, g, h, {}, {}, {}, {}, {}, phase_of(h), "ok"};
                detail::attach_tl(row);
                result.rows.push_back(std::move(row));
            }
        }
    }
    return result;
}

inline SweepResult run_sweep(const SweepConfig &config)
{
    switch (config.mode) {
    case SweepMode::field_sweep:
        return run_field_sweep(config);
    case SweepMode::size_scaling:
        return run_size_scaling(config);
    case SweepMode::isotropic:
        return run_isotropic(config);
    case SweepMode::analytic_only:
        return run_analytic_only(config);
    }
    throw UsageError("unknown mode");
}

} // namespace lmg

#endif
