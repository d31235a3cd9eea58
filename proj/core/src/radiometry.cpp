#include "pcw/radiometry.hpp"

#include <cmath>

#include "pcw/constants.hpp"

namespace pcw::radiometry {

namespace {

// Antiderivative of sin^3.
double sin3_primitive(double t) {
    const double c = std::cos(t);
    return -c + c * c * c / 3.0;
}

double sin3_integral(double lo, double hi) { return sin3_primitive(hi) - sin3_primitive(lo); }

} // namespace

void AngularBand::validate() const {
    if (!(0.0 <= lo_rad && lo_rad <= hi_rad && hi_rad <= constants::pi))
        throw DomainError("AngularBand: requires 0 <= lo <= hi <= pi");
}

double dipole_band_fraction(const AngularBand &band) {
    band.validate();
    const double full = sin3_integral(0.0, constants::pi); // 4/3
    return sin3_integral(band.lo_rad, band.hi_rad) / full;
}

double average_emission_angle() { return 1.0 / (2.0 * constants::pi); }

BraggFractions bragg_family_fractions(double theta_gr_rad) {
    if (!(theta_gr_rad > 0.0 && theta_gr_rad < 0.5 * constants::pi))
        throw DomainError("bragg_family_fractions: theta_gr must be in (0, pi/2)");

    const double quarter = sin3_integral(0.0, 0.5 * constants::pi); // 2/3
    BraggFractions out;
    out.slp = sin3_integral(0.5 * constants::pi - theta_gr_rad, 0.5 * constants::pi) / quarter;
    out.par = sin3_integral(0.0, 0.5 * constants::pi - theta_gr_rad) / quarter;
    return out;
}

} // namespace pcw::radiometry
