#pragma once

#include <string>
#include <vector>

#include "pcw/errors.hpp"

namespace pcw::slab_optics {

/// Refractive index vs wavelength: a sampled table with a constant fallback.
///
/// Lookup rules: an empty table returns fallback_n; a single-sample table acts
/// as a constant index (there is no slope to interpolate); tables with two or
/// more samples interpolate linearly and refuse to extrapolate outside the
/// sampled range.
class MaterialModel {
public:
    struct Sample {
        double lambda_nm = 0.0;
        double n = 0.0;
    };

    MaterialModel() = default;
    MaterialModel(std::string name, std::vector<Sample> samples, double fallback_n);

    /// GaAs with the single sample n(925 nm) = 3.46 and matching fallback.
    static MaterialModel gaas();

    double index_at(double lambda_nm) const;

    const std::string &name() const { return name_; }
    const std::vector<Sample> &samples() const { return samples_; }
    double fallback_n() const { return fallback_n_; }

private:
    std::string name_ = "constant";
    std::vector<Sample> samples_;
    double fallback_n_ = 1.5;
};

/// Slab resonator between the membrane faces, first resonance only.
struct VerticalCavity {
    double h_nm = 0.0;
    double reflectance = 0.0;      // R = (n-1)^2 / (n+1)^2 for normal incidence
    double omega_1_rad_s = 0.0;    // pi c / (n h)
    double d_omega_rad_s = 0.0;    // c (1-R) / (n sqrt(R) h)
    double quality = 0.0;          // omega_1 / d_omega
    double v_eff_nm3 = 0.0;        // (2/3) h^3
    double lorentzian = 0.0;       // d_omega^2 / (4 (omega - omega_1)^2 + d_omega^2)
    double f_fp = 0.0;
};

/// Purcell factor of the vertical slab resonance at vacuum wavelength lambda.
VerticalCavity vertical_cavity(double h_nm, double n, double lambda_nm);

/// Numerically rebuilds the effective-length construction behind the (2/3) h^3
/// mode volume and returns the dimensionless prefactor of h^3 (= 2/3).
double verify_veff_prefactor();

} // namespace pcw::slab_optics
