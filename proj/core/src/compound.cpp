#include "pcw/compound.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pcw/constants.hpp"

namespace pcw::compound {

double compound_peak(double lambda_1_nm, double lambda_2_nm) {
    if (!(lambda_1_nm > 0.0 && lambda_2_nm > 0.0))
        throw DomainError("compound_peak: wavelengths must be positive");
    return 0.5 * (lambda_1_nm + lambda_2_nm);
}

CompoundDesign build_compound(double a_1_nm, double a_2_nm, double lambda_1_nm,
                              double lambda_2_nm, double h_nm,
                              const slab_optics::MaterialModel &material,
                              double theta_gr_rad, const numerics::Tolerance &tol,
                              const heuristic::HeuristicConfig &config) {
    CompoundDesign out;
    try {
        out.half_1 = heuristic::design_radius({a_1_nm, lambda_1_nm, h_nm, material, theta_gr_rad},
                                              std::nullopt, tol, config);
    } catch (const Error &e) {
        throw InfeasibleError("half_1", std::string("build_compound: half 1 failed: ") + e.what());
    }
    try {
        out.half_2 = heuristic::design_radius({a_2_nm, lambda_2_nm, h_nm, material, theta_gr_rad},
                                              std::nullopt, tol, config);
    } catch (const Error &e) {
        throw InfeasibleError("half_2", std::string("build_compound: half 2 failed: ") + e.what());
    }
    out.target_lambda_1_nm = lambda_1_nm;
    out.target_lambda_2_nm = lambda_2_nm;
    out.predicted_peak_nm = compound_peak(lambda_1_nm, lambda_2_nm);
    return out;
}

const char *to_string(PerturbationMode m) {
    return m == PerturbationMode::per_hole_mean ? "per-hole-mean" : "per-half-single";
}

PerturbationMode perturbation_mode_from_string(const std::string &s) {
    if (s == "per-hole-mean") return PerturbationMode::per_hole_mean;
    if (s == "per-half-single") return PerturbationMode::per_half_single;
    throw DomainError("unknown perturbation mode '" + s + "' (per-hole-mean|per-half-single)");
}

std::uint64_t SplitMix64::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform_symmetric(double magnitude) {
    // 53-bit mantissa mapping to [0, 1), then stretched to [-m, m].
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return (2.0 * u - 1.0) * magnitude;
}

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t run_index) {
    SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ULL * (run_index + 1)));
    return SplitMix64(mixer.next_u64());
}

void PerturbationConfig::validate() const {
    if (delta_r_max_nm < 0.0) throw DomainError("PerturbationConfig: delta_r_max must be >= 0");
    if (n_runs < 1) throw DomainError("PerturbationConfig: n_runs must be >= 1");
    if (holes_per_half < 1) throw DomainError("PerturbationConfig: holes_per_half must be >= 1");
    if (success_window_nm < 0.0)
        throw DomainError("PerturbationConfig: success_window must be >= 0");
}

namespace {

// Effective radius offset for one half, consuming holes_per_half draws in
// per-hole-mean mode and a single draw otherwise.
double draw_effective_offset(SplitMix64 &rng, const PerturbationConfig &cfg) {
    if (cfg.mode == PerturbationMode::per_half_single) {
        return rng.uniform_symmetric(cfg.delta_r_max_nm);
    }
    double sum = 0.0;
    for (int i = 0; i < cfg.holes_per_half; ++i) sum += rng.uniform_symmetric(cfg.delta_r_max_nm);
    return sum / static_cast<double>(cfg.holes_per_half);
}

double solve_half_peak(const heuristic::DesignResult &half, double eff_r_nm, double bias_a_nm,
                       double lambda_target, double bracket_halfwidth,
                       const numerics::Tolerance &tol,
                       const heuristic::HeuristicConfig &config) {
    heuristic::LatticeSpec spec = half.spec;
    spec.a_nm += bias_a_nm;
    spec.r_nm = eff_r_nm;
    spec.validate();
    return heuristic::peak_wavelength(
        spec, {lambda_target - bracket_halfwidth, lambda_target + bracket_halfwidth}, tol, config);
}

double bracket_halfwidth_for(const PerturbationConfig &cfg) {
    // Peak shifts are a few nm per nm of radius; size the scan to cover the
    // worst-case single-hole offset plus the systematic bias with margin.
    const double reach = cfg.delta_r_max_nm + std::abs(cfg.bias_r_nm) + std::abs(cfg.bias_a_nm);
    return std::max(45.0, 5.5 * reach);
}

} // namespace

PerturbationRun perturbation_run(const CompoundDesign &design, const PerturbationConfig &cfg,
                                 int run_index, const numerics::Tolerance &tol,
                                 const heuristic::HeuristicConfig &config) {
    cfg.validate();
    const double halfwidth = bracket_halfwidth_for(cfg);

    SplitMix64 rng = SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(run_index));
    PerturbationRun run;
    run.run = run_index;
    run.eff_r1_nm = design.half_1.spec.r_nm + cfg.bias_r_nm + draw_effective_offset(rng, cfg);
    run.eff_r2_nm = design.half_2.spec.r_nm + cfg.bias_r_nm + draw_effective_offset(rng, cfg);
    try {
        run.peak1_nm = solve_half_peak(design.half_1, run.eff_r1_nm, cfg.bias_a_nm,
                                       design.target_lambda_1_nm, halfwidth, tol, config);
        run.peak2_nm = solve_half_peak(design.half_2, run.eff_r2_nm, cfg.bias_a_nm,
                                       design.target_lambda_2_nm, halfwidth, tol, config);
        run.compound_peak_nm = compound_peak(run.peak1_nm, run.peak2_nm);
        run.ok = true;
    } catch (const Error &e) {
        run.peak1_nm = std::numeric_limits<double>::quiet_NaN();
        run.peak2_nm = std::numeric_limits<double>::quiet_NaN();
        run.compound_peak_nm = std::numeric_limits<double>::quiet_NaN();
        run.ok = false;
        run.error = e.what();
    }
    return run;
}

PerturbationReport run_perturbation(const CompoundDesign &design, const PerturbationConfig &cfg,
                                    const numerics::Tolerance &tol,
                                    const heuristic::HeuristicConfig &config) {
    cfg.validate();

    PerturbationReport report;
    report.config = cfg;
    report.seed = cfg.seed;
    report.target_peak_nm = design.predicted_peak_nm;
    report.runs.reserve(static_cast<std::size_t>(cfg.n_runs));

    double sum = 0.0;
    double sum_sq = 0.0;
    int ok_count = 0;
    int success = 0;
    for (int k = 0; k < cfg.n_runs; ++k) {
        PerturbationRun run = perturbation_run(design, cfg, k, tol, config);
        if (run.ok) {
            const double shift = run.compound_peak_nm - design.predicted_peak_nm;
            sum += shift;
            sum_sq += shift * shift;
            ++ok_count;
            if (std::abs(shift) <= cfg.success_window_nm) ++success;
        } else {
            ++report.n_failed;
        }
        report.runs.push_back(std::move(run));
    }

    report.success_fraction = static_cast<double>(success) / static_cast<double>(cfg.n_runs);
    if (ok_count > 0) {
        report.mean_shift_nm = sum / ok_count;
        report.std_shift_nm =
            ok_count > 1
                ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / ok_count) / (ok_count - 1)))
                : 0.0;
    } else {
        report.mean_shift_nm = std::numeric_limits<double>::quiet_NaN();
        report.std_shift_nm = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

double sensitivity(const heuristic::LatticeSpec &design_half, double lambda_0_nm, double dr_nm,
                   const numerics::Tolerance &tol, const heuristic::HeuristicConfig &config) {
    if (!(dr_nm > 0.0)) throw DomainError("sensitivity: dr must be positive");
    const double halfwidth = std::max(40.0, 12.0 * dr_nm);

    const auto peak_at = [&](double r) {
        heuristic::LatticeSpec spec = design_half;
        spec.r_nm = r;
        try {
            spec.validate();
            return heuristic::peak_wavelength(
                spec, {lambda_0_nm - halfwidth, lambda_0_nm + halfwidth}, tol, config);
        } catch (const Error &e) {
            std::ostringstream msg;
            msg << "sensitivity: stencil point r = " << r << " nm infeasible: " << e.what();
            throw InfeasibleError("stencil", msg.str());
        }
    };
    const double up = peak_at(design_half.r_nm + dr_nm);
    const double down = peak_at(design_half.r_nm - dr_nm);
    return (up - down) / (2.0 * dr_nm);
}

} // namespace pcw::compound
