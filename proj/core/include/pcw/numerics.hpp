#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "pcw/errors.hpp"

namespace pcw::numerics {

/// Shared accuracy/budget knobs for the scalar kernels.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_iter = 200;

    void validate() const;
};

/// Per-iteration record of an iterative solve.
struct ConvergenceTrace {
    struct Step {
        int iteration = 0;
        double value = 0.0;
        double residual = 0.0;
    };

    std::vector<Step> steps;
    bool converged = false;

    int iterations() const { return static_cast<int>(steps.size()); }
    double final_residual() const {
        return steps.empty() ? std::numeric_limits<double>::quiet_NaN() : steps.back().residual;
    }
};

// Iteration failures carry the trace accumulated up to the failing step.
class NonConvergenceError : public ConvergenceError {
public:
    NonConvergenceError(ConvergenceTrace trace, const std::string &what)
        : ConvergenceError(what), trace_(std::move(trace)) {}
    const ConvergenceTrace &trace() const { return trace_; }

private:
    ConvergenceTrace trace_;
};

class DivergenceError : public NonConvergenceError {
public:
    DivergenceError(ConvergenceTrace trace, const std::string &what)
        : NonConvergenceError(std::move(trace), what) {}
};

using Fn = std::function<double(double)>;

/// Adaptive-Simpson integral of f over [lo, hi] with estimated error below
/// max(abs_tol, rel_tol * |integral|). Deterministic; throws QuadratureError
/// (carrying the best estimate) when the subdivision budget runs out.
double integrate(const Fn &f, double lo, double hi, const Tolerance &tol = {});

struct FresnelCS {
    double c = 0.0;
    double s = 0.0;
};

/// Fresnel cosine/sine integrals C(u) = int_0^u cos(pi t^2 / 2) dt and the sine
/// analogue, evaluated by quadrature of the defining integrals. u must be >= 0.
FresnelCS fresnel_cs(double u, const Tolerance &tol = {});

/// Bracketing root finder: bisection with secant acceleration. Requires
/// f(lo) * f(hi) <= 0 and always returns a point inside [lo, hi].
double find_root(const Fn &f, double lo, double hi, const Tolerance &tol = {});

/// Same, with the endpoint evaluations supplied by the caller (they are often
/// already known from bracket construction and can be expensive).
double find_root(const Fn &f, double lo, double hi, double f_lo, double f_hi,
                 const Tolerance &tol = {});

struct FixedPointResult {
    double value = 0.0;
    ConvergenceTrace trace;
};

/// Damped fixed-point iteration x <- (1-damping) x + damping g(x), stopping
/// when successive iterates differ by at most abs_tol. Iterates leaving
/// [lower_bound, upper_bound] raise DivergenceError with the trace so far.
FixedPointResult fixed_point(const Fn &g, double x0, const Tolerance &tol = {},
                             double damping = 0.5,
                             double lower_bound = -std::numeric_limits<double>::infinity(),
                             double upper_bound = std::numeric_limits<double>::infinity());

} // namespace pcw::numerics
