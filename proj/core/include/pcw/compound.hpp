#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcw/heuristic.hpp"

namespace pcw::compound {

/// Two half-lattices designed for target wavelengths lambda_1 and lambda_2;
/// the composed structure peaks at their mean.
struct CompoundDesign {
    heuristic::DesignResult half_1;
    heuristic::DesignResult half_2;
    double target_lambda_1_nm = 0.0;
    double target_lambda_2_nm = 0.0;
    double predicted_peak_nm = 0.0;
};

/// Peak of the composed structure: (lambda_1 + lambda_2) / 2.
double compound_peak(double lambda_1_nm, double lambda_2_nm);

/// Solves each half independently and composes the result.
CompoundDesign build_compound(double a_1_nm, double a_2_nm, double lambda_1_nm,
                              double lambda_2_nm, double h_nm,
                              const slab_optics::MaterialModel &material,
                              double theta_gr_rad, const numerics::Tolerance &tol = {},
                              const heuristic::HeuristicConfig &config = {});

/// How per-hole radius noise is reduced to one effective radius per half.
enum class PerturbationMode { per_hole_mean, per_half_single };

const char *to_string(PerturbationMode m);
PerturbationMode perturbation_mode_from_string(const std::string &s);

/// Identity of the generator pinned into every report.
inline constexpr const char *kRngId = "splitmix64/v1";

/// Deterministic 64-bit generator; per-run substreams come from
/// substream(seed, run_index).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform double in [-magnitude, magnitude].
    double uniform_symmetric(double magnitude);

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t run_index);

private:
    std::uint64_t state_ = 0;
};

struct PerturbationConfig {
    double delta_r_max_nm = 10.0;
    int n_runs = 100;
    std::uint64_t seed = 0;
    int holes_per_half = 100;
    PerturbationMode mode = PerturbationMode::per_hole_mean;
    double success_window_nm = 1.5;
    double bias_a_nm = 0.0; // systematic period offset applied before solving
    double bias_r_nm = 0.0; // systematic radius offset applied before solving

    void validate() const;
};

struct PerturbationRun {
    int run = 0;
    double eff_r1_nm = 0.0;
    double eff_r2_nm = 0.0;
    double peak1_nm = 0.0;
    double peak2_nm = 0.0;
    double compound_peak_nm = 0.0;
    bool ok = false;
    std::string error;
};

struct PerturbationReport {
    std::vector<PerturbationRun> runs;
    double target_peak_nm = 0.0;
    double mean_shift_nm = 0.0; // over successful runs
    double std_shift_nm = 0.0;  // sample standard deviation over successful runs
    double success_fraction = 0.0;
    int n_failed = 0;
    std::uint64_t seed = 0;
    std::string rng_id = kRngId;
    PerturbationConfig config;
};

/// Seeded Monte Carlo over random hole-radius offsets. Each run draws i.i.d.
/// uniform offsets in [-delta_r_max, delta_r_max] per hole (half 1 first,
/// then half 2), reduces them per `mode` to an effective radius per half,
/// re-solves each half's peak wavelength at its unperturbed period, and
/// composes the two. Fully deterministic given the seed; forward-solve
/// failures count as failed runs against success_fraction.
PerturbationReport run_perturbation(const CompoundDesign &design,
                                    const PerturbationConfig &cfg,
                                    const numerics::Tolerance &tol = {},
                                    const heuristic::HeuristicConfig &config = {});

/// One run of the harness in isolation; run_perturbation(k) == runs[k] of the
/// full report for the same seed, which makes the report order-independent.
PerturbationRun perturbation_run(const CompoundDesign &design, const PerturbationConfig &cfg,
                                 int run_index, const numerics::Tolerance &tol = {},
                                 const heuristic::HeuristicConfig &config = {});

/// Central-difference peak shift per nm of radius at the design point.
double sensitivity(const heuristic::LatticeSpec &design_half, double lambda_0_nm,
                   double dr_nm = 1.0, const numerics::Tolerance &tol = {},
                   const heuristic::HeuristicConfig &config = {});

} // namespace pcw::compound
