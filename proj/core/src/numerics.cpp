#include "pcw/numerics.hpp"

#include <cmath>
#include <sstream>

#include "pcw/constants.hpp"

namespace pcw::numerics {

void Tolerance::validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("Tolerance: abs_tol must be positive");
    if (!(rel_tol > 0.0)) throw DomainError("Tolerance: rel_tol must be positive");
    if (max_iter < 1) throw DomainError("Tolerance: max_iter must be >= 1");
}

namespace {

struct PanelBudget {
    long remaining = 0;
    bool exhausted = false;
};

// One level of adaptive Simpson with Richardson correction.
double adaptive_simpson(const Fn &f, double a, double b, double fa, double fb, double fm,
                        double whole, double tol, int depth, PanelBudget &budget) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);

    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double refined = left + right;
    const double err = (refined - whole) / 15.0;

    if (std::abs(err) <= tol || depth <= 0 || budget.remaining <= 0) {
        if (std::abs(err) > tol) budget.exhausted = true;
        return refined + err;
    }
    budget.remaining -= 2;
    return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1, budget) +
           adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1, budget);
}

} // namespace

double integrate(const Fn &f, double lo, double hi, const Tolerance &tol) {
    tol.validate();
    if (!(lo <= hi)) throw DomainError("integrate: requires lo <= hi");
    if (lo == hi) return 0.0;

    // The top-level split sits at an irrational fraction so that periodic
    // integrands cannot alias the dyadic refinement grid into a fake-zero
    // error estimate.
    const double golden = 0.6180339887498949;
    const double cut = lo + (hi - lo) * golden;

    const double fa = f(lo);
    const double fc = f(cut);
    const double fb = f(hi);
    const double fm1 = f(0.5 * (lo + cut));
    const double fm2 = f(0.5 * (cut + hi));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fc) ||
        !std::isfinite(fm1) || !std::isfinite(fm2))
        throw DomainError("integrate: integrand not finite on [lo, hi]");

    const double whole1 = (cut - lo) / 6.0 * (fa + 4.0 * fm1 + fc);
    const double whole2 = (hi - cut) / 6.0 * (fc + 4.0 * fm2 + fb);
    // First pass pins the relative-tolerance target to a coarse magnitude.
    const double target =
        std::max(tol.abs_tol, tol.rel_tol * std::abs(whole1 + whole2));

    PanelBudget budget{static_cast<long>(tol.max_iter) * 512, false};
    const double value =
        adaptive_simpson(f, lo, cut, fa, fc, fm1, whole1, 0.5 * target, 60, budget) +
        adaptive_simpson(f, cut, hi, fc, fb, fm2, whole2, 0.5 * target, 60, budget);
    if (budget.exhausted) {
        std::ostringstream msg;
        msg << "integrate: subdivision budget exhausted on [" << lo << ", " << hi
            << "], best estimate " << value;
        throw QuadratureError(value, msg.str());
    }
    return value;
}

FresnelCS fresnel_cs(double u, const Tolerance &tol) {
    if (u < 0.0) throw DomainError("fresnel_cs: u must be >= 0");
    if (u == 0.0) return {0.0, 0.0};

    constexpr double half_pi = 0.5 * constants::pi;
    FresnelCS out;
    out.c = integrate([](double t) { return std::cos(half_pi * t * t); }, 0.0, u, tol);
    out.s = integrate([](double t) { return std::sin(half_pi * t * t); }, 0.0, u, tol);
    return out;
}

double find_root(const Fn &f, double lo, double hi, const Tolerance &tol) {
    if (!(lo <= hi)) throw DomainError("find_root: requires lo <= hi");
    return find_root(f, lo, hi, f(lo), f(hi), tol);
}

double find_root(const Fn &f, double lo, double hi, double f_lo, double f_hi,
                 const Tolerance &tol) {
    tol.validate();
    if (!(lo <= hi)) throw DomainError("find_root: requires lo <= hi");

    double flo = f_lo;
    double fhi = f_hi;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) {
        std::ostringstream msg;
        msg << "find_root: no sign change on [" << lo << ", " << hi << "] (f(lo) = " << flo
            << ", f(hi) = " << fhi << ")";
        throw BracketError(msg.str());
    }

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < tol.max_iter; ++it) {
        // Secant proposal from the bracket endpoints; fall back to bisection
        // whenever it leaves the bracket or stalls.
        double cand = 0.5 * (lo + hi);
        const double denom = fhi - flo;
        if (denom != 0.0) {
            const double secant = hi - fhi * (hi - lo) / denom;
            const double margin = 0.01 * (hi - lo);
            if (secant > lo + margin && secant < hi - margin) cand = secant;
        }

        x = cand;
        const double fx = f(x);
        if (std::abs(fx) <= tol.abs_tol) return x;

        if (flo * fx <= 0.0) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        if (hi - lo <= tol.abs_tol + tol.rel_tol * std::abs(x)) return 0.5 * (lo + hi);
    }
    std::ostringstream msg;
    msg << "find_root: no convergence after " << tol.max_iter << " iterations; bracket ["
        << lo << ", " << hi << "]";
    throw ConvergenceError(msg.str());
}

FixedPointResult fixed_point(const Fn &g, double x0, const Tolerance &tol, double damping,
                             double lower_bound, double upper_bound) {
    tol.validate();
    if (!std::isfinite(x0)) throw DomainError("fixed_point: x0 must be finite");
    if (!(damping > 0.0 && damping <= 1.0))
        throw DomainError("fixed_point: damping must be in (0, 1]");

    FixedPointResult res;
    double x = x0;
    for (int it = 0; it < tol.max_iter; ++it) {
        const double next = (1.0 - damping) * x + damping * g(x);
        const double residual = std::abs(next - x);
        res.trace.steps.push_back({it, next, residual});
        if (!std::isfinite(next) || next < lower_bound || next > upper_bound) {
            std::ostringstream msg;
            msg << "fixed_point: iterate " << next << " left bounds [" << lower_bound << ", "
                << upper_bound << "] at iteration " << it;
            throw DivergenceError(res.trace, msg.str());
        }
        x = next;
        if (residual <= tol.abs_tol) {
            res.trace.converged = true;
            res.value = x;
            return res;
        }
    }
    std::ostringstream msg;
    msg << "fixed_point: no convergence after " << tol.max_iter
        << " iterations; final residual " << res.trace.final_residual();
    throw NonConvergenceError(res.trace, msg.str());
}

} // namespace pcw::numerics
