#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace solgap {

/// Tolerances and subdivision limits controlling all numerical integration.
struct QuadratureSpec {
    double abs_tol = 1e-12;  // absolute error target, > 0
    double rel_tol = 1e-10;  // relative error target, > 0
    int max_depth = 60;      // subdivision cap, >= 1

    void validate() const;
};

/// Search interval with lo < hi.
struct Bracket {
    double lo;
    double hi;

    Bracket(double lo_, double hi_);
};

/// Thrown when adaptive quadrature cannot meet its tolerance within the
/// subdivision cap. Carries the best estimate and the achieved error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Thrown when two independent evaluation routes disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
    ConsistencyError(const std::string& what, double first, double second, double tolerance)
        : std::runtime_error(what), first_(first), second_(second), tolerance_(tolerance) {}
    double first() const { return first_; }
    double second() const { return second_; }
    double tolerance() const { return tolerance_; }

private:
    double first_;
    double second_;
    double tolerance_;
};

/// Thrown by solve_threshold when the low end of the bracket already misses
/// the target, so no admissible point exists.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double f_lo, double target)
        : std::runtime_error(what), f_lo_(f_lo), target_(target) {}
    double f_lo() const { return f_lo_; }
    double target() const { return target_; }

private:
    double f_lo_;
    double target_;
};

/// Adaptive Gauss-Kronrod (7,15) quadrature of f over [a, b].
///
/// Returns I with estimated |I - integral| <= max(abs_tol, rel_tol*|I|).
/// Panels are accepted when the embedded-rule discrepancy falls below the
/// local allowance or below the roundoff floor; a panel still failing at
/// max_depth raises QuadratureError with the last estimate and bound.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec);

/// Same as integrate, but also reports the accumulated error bound.
struct IntegralResult {
    double value;
    double error_bound;
};
IntegralResult integrate_with_bound(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureSpec& spec);

/// Gamma function for x > 0, accurate to at least 12 significant digits.
/// Integer and half-integer arguments are evaluated by exact recurrence.
double gamma_fn(double x);

/// Natural log of Gamma for x > 0 (Lanczos approximation).
double log_gamma(double x);

/// Upper incomplete gamma Gamma(a, x) = \int_x^inf t^{a-1} e^{-t} dt for
/// x >= 0; a > 0 required when x == 0. Negative a (with x > 0) is lifted
/// through the recurrence Gamma(a,x) = (Gamma(a+1,x) - x^a e^{-x}) / a.
double upper_gamma(double a, double x);

/// Both evaluation routes for the weighted tail integral
///   I(n, eps, r0) = \int_{r0}^inf s^{n-1-2n*eps} e^{-s^2/4} ds.
struct WeightedTailPair {
    double quadrature;  // truncated adaptive quadrature
    double gamma;       // 2^{n-1-2n*eps} * Gamma((n-2n*eps)/2, r0^2/4)
};
WeightedTailPair weighted_tail_both(int n, double eps, double r0, const QuadratureSpec& spec);

/// The weighted tail integral, checked two ways. The quadrature and
/// incomplete-gamma routes must agree within 10*abs_tol or a
/// ConsistencyError is raised. Requires n >= 2, 0 <= eps < n/2, r0 >= 0,
/// and eps < 1/2 when r0 == 0 (convergence at the origin).
double weighted_tail(int n, double eps, double r0, const QuadratureSpec& spec);

/// Largest admissible abscissa search: given F with F(bracket.lo) >= target,
/// returns eps* in the bracket with F(eps*) >= target and either
/// eps* == bracket.hi or F(eps*(1+tol)) < target. Monotonicity of F is not
/// assumed: a coarse log-spaced scan locates the first sign change, then
/// bisection refines it. Deterministic scan order.
double solve_threshold(const std::function<double(double)>& F, double target,
                       const Bracket& bracket, double tol);

}  // namespace solgap
