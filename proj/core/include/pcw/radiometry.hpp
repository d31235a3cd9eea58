#pragma once

#include "pcw/errors.hpp"

namespace pcw::radiometry {

/// Polar band [lo, hi] within [0, pi], measured from the dipole axis.
struct AngularBand {
    double lo_rad = 0.0;
    double hi_rad = 0.0;

    void validate() const;
};

/// Fraction of dipole radiation (sin^3 weighting) emitted into `band`,
/// normalized by the full-sphere integral. Closed form, in [0, 1].
double dipole_band_fraction(const AngularBand &band);

/// Mean tilt of the emitted power's transverse projection: 1 / (2 pi) rad.
double average_emission_angle();

struct BraggFractions {
    double slp = 0.0;
    double par = 0.0;
};

/// Split of the quarter-sphere dipole radiation between the sloped-surface
/// band [pi/2 - theta_gr, pi/2] and the complementary parallel-surface band.
/// The two fractions sum to 1.
BraggFractions bragg_family_fractions(double theta_gr_rad);

} // namespace pcw::radiometry
