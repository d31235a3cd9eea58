#include "pcw/slab_optics.hpp"

#include <cmath>
#include <sstream>

#include "pcw/constants.hpp"
#include "pcw/numerics.hpp"

namespace pcw::slab_optics {

MaterialModel::MaterialModel(std::string name, std::vector<Sample> samples, double fallback_n)
    : name_(std::move(name)), samples_(std::move(samples)), fallback_n_(fallback_n) {
    if (!(fallback_n_ > 1.0)) throw DomainError("MaterialModel: fallback_n must be > 1");
    double prev = 0.0;
    for (const auto &s : samples_) {
        if (!(s.lambda_nm > 0.0)) throw DomainError("MaterialModel: wavelengths must be positive");
        if (!(s.n > 1.0)) throw DomainError("MaterialModel: all n must be > 1");
        if (!(s.lambda_nm > prev))
            throw DomainError("MaterialModel: wavelengths must be strictly increasing");
        prev = s.lambda_nm;
    }
}

MaterialModel MaterialModel::gaas() { return MaterialModel("GaAs", {{925.0, 3.46}}, 3.46); }

double MaterialModel::index_at(double lambda_nm) const {
    if (!(lambda_nm > 0.0)) throw DomainError("MaterialModel: lambda must be positive");
    if (samples_.empty()) return fallback_n_;
    if (samples_.size() == 1) return samples_.front().n;

    if (lambda_nm < samples_.front().lambda_nm || lambda_nm > samples_.back().lambda_nm) {
        std::ostringstream msg;
        msg << "MaterialModel '" << name_ << "': lambda = " << lambda_nm
            << " nm outside table range [" << samples_.front().lambda_nm << ", "
            << samples_.back().lambda_nm << "] nm";
        throw DomainError(msg.str());
    }
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        if (lambda_nm <= samples_[i].lambda_nm) {
            const auto &a = samples_[i - 1];
            const auto &b = samples_[i];
            const double t = (lambda_nm - a.lambda_nm) / (b.lambda_nm - a.lambda_nm);
            return a.n + t * (b.n - a.n);
        }
    }
    return samples_.back().n;
}

VerticalCavity vertical_cavity(double h_nm, double n, double lambda_nm) {
    if (!(h_nm > 0.0)) throw DomainError("vertical_cavity: h must be positive");
    if (!(n > 1.0)) throw DomainError("vertical_cavity: n must be > 1");
    if (!(lambda_nm > 0.0)) throw DomainError("vertical_cavity: lambda must be positive");

    const double c = constants::speed_of_light_mps;
    const double h_m = h_nm * constants::nm_to_m;
    const double lambda_m = lambda_nm * constants::nm_to_m;

    VerticalCavity vc;
    vc.h_nm = h_nm;
    vc.reflectance = (n - 1.0) * (n - 1.0) / ((n + 1.0) * (n + 1.0));
    vc.omega_1_rad_s = constants::pi * c / (n * h_m);
    vc.d_omega_rad_s = c * (1.0 - vc.reflectance) / (n * std::sqrt(vc.reflectance) * h_m);
    vc.quality = vc.omega_1_rad_s / vc.d_omega_rad_s;
    vc.v_eff_nm3 = (2.0 / 3.0) * h_nm * h_nm * h_nm;

    const double omega = 2.0 * constants::pi * c / lambda_m;
    const double detune = omega - vc.omega_1_rad_s;
    vc.lorentzian = vc.d_omega_rad_s * vc.d_omega_rad_s /
                    (4.0 * detune * detune + vc.d_omega_rad_s * vc.d_omega_rad_s);

    const double lam_in = lambda_m / n;
    const double v_eff_m3 = vc.v_eff_nm3 * constants::nm3_to_m3;
    vc.f_fp = 3.0 * vc.quality * lam_in * lam_in * lam_in /
              (4.0 * constants::pi * constants::pi * v_eff_m3) * vc.lorentzian;
    return vc;
}

double verify_veff_prefactor() {
    // Effective lengths of the slab mode: the polar direction carries the
    // dipole pattern plus the vertical projection, the azimuthal one only the
    // spherical measure. Both normalize against the peak intensity at h/2.
    const numerics::Tolerance tol{1e-12, 1e-12, 400};
    const double polar =
        numerics::integrate([](double t) { return std::pow(std::sin(t), 3); }, 0.0,
                            constants::pi, tol) /
        2.0;
    const double azimuthal =
        numerics::integrate([](double p) { return std::sin(p); }, 0.0, constants::pi, tol) / 2.0;
    return polar * azimuthal;
}

} // namespace pcw::slab_optics
