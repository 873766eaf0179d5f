#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solgap/numerics.hpp"

namespace solgap {

/// Hypotheses of the gap computation.
struct GapInputs {
    int n = 0;               // dimension, >= 2
    double A = 0.0;          // sectional curvature upper bound, > 0
    double v = 0.0;          // f-volume floor, in (0, 1]
    double eps_prime = 0.0;  // gap constant for the target f-volume 1 - eps_prime, in (0, 1)

    void validate() const;
};

/// Domain error for the admissibility windows of the f-volume lower bound,
/// distinguishing the eps-window (0 < eps <= 1, eps < n/2) from the
/// C0-window (eps^{1/4} < C0).
class WindowError : public std::domain_error {
public:
    enum class Which { eps_window, c0_window };
    WindowError(Which which, const std::string& what) : std::domain_error(what), which_(which) {}
    Which which() const { return which_; }

private:
    Which which_;
};

/// One step of the constant chain, with the formula it came from.
struct Stage {
    std::string name;
    std::string formula;
    double value = 0.0;
    std::vector<std::string> assumptions;
};

struct FCurvePoint {
    double eps;
    double F;
};

/// Sampled graph of the f-volume lower bound F(eps), log-spaced in eps.
struct FCurve {
    std::vector<FCurvePoint> samples;
};

/// Outcome of the threshold solve. Infeasibility is a first-class result:
/// the chain's conservative constants can push the admissible eps window
/// below anything representable, and that is reported, not hidden.
struct GapResult {
    bool feasible = false;
    std::optional<double> eps_star;
    double eps_cap = 0.0;
    double target = 0.0;          // 1 - eps_prime
    double f_at_eps_star = 0.0;   // only when feasible
    std::string limiting_stage;   // names the blocking stage when infeasible
};

/// The full constant chain with provenance, plus the solve outcome and curve.
struct BoundReport {
    GapInputs inputs;
    QuadratureSpec quadrature;
    bool sharp_constant = false;  // 36 + 1/e variant instead of 37

    double C1 = 0.0;
    double H = 0.0;
    double C2 = 0.0;
    double C_noncollapse = 0.0;
    double volB1_lower = 0.0;
    double inj_lower = 0.0;
    double C0 = 0.0;
    GapResult result;
    FCurve curve;

    std::vector<Stage> stages;  // proof order: C1, H, C2, C(A,n), V(1) floor, inj, C0, eps*
};

/// Sectional lower bound from the upper bound: with K(g) <= A and R >= 0,
/// twice any sectional curvature is R minus the other n(n-1)-2 terms of the
/// scalar sum, so K >= -(n(n-1)-2) A / 2. Returns that H <= 0.
double sectional_lower_from_upper(int n, double A);

/// Extremal Bishop-Gromov doubling ratio at curvature floor H <= 0:
/// C2 = V_H(1) / V_H(1/2). Equals 2^n when H = 0.
double bg_ratio(int n, double H, const QuadratureSpec& q);

/// No-local-collapsing constant C(A,n) = exp(-1 - 37 C2); combined with
/// mu0 <= -log v it gives Vol(B_p(1)) >= C(A,n) v under R <= 1.
/// The sharp flag replaces 37 by 36 + 1/e.
double noncollapse_constant(int n, double A, const QuadratureSpec& q, bool sharp = false);

/// Cheeger-Gromov-Taylor injectivity radius lower bound evaluated at the
/// center with r1 = r0 = s = pi/(4 sqrt(A)):
///   i(M) >= (r0/2) / (1 + V_H(2 r0) / vol(B_p(r0))_lb),
/// where vol(B_p(r0))_lb is volB1_lower itself when r0 >= 1 and the
/// Bishop-Gromov scaled (V_H(r0)/V_H(1)) volB1_lower otherwise.
double injectivity_lower(int n, double A, double volB1_lower, const QuadratureSpec& q);

/// Sublevel-radius distortion factor
///   alpha(eps) = (1 + 4 eps^{1/4} + 8 eps^{1/2})^{-n/2 + eps} eps^{eps/2},
/// with eps^{eps/2} = exp((eps/2) log eps) -> 1 as eps -> 0+.
double alpha_factor(int n, double eps);

/// Small-ball volume ratio
///   C(A, eps) = n omega_n \int_0^{eps^{1/4}} (sin(sqrt(A) s)/sqrt(A))^{n-1} ds / eps^{n/4},
/// evaluated in the rescaled form n omega_n \int_0^1 (w sinc(sqrt(A) eps^{1/4} w))^{n-1} dw
/// so that nothing underflows as eps -> 0. Lies in (0, omega_n].
double small_ball_ratio(int n, double A, double eps, const QuadratureSpec& q);

/// The f-volume lower bound display evaluated with no window checks:
///   F = e^{-eps} (4 pi)^{-n/2} (n - 2 eps) alpha(eps) C(A, eps) I(n, eps, r0),
/// r0 = eps^{1/4} + 2 eps^{1/2}. Used for limit studies; certification of the
/// bound additionally needs the windows enforced by f_volume_lower.
double f_volume_lower_formula(int n, double A, double eps, const QuadratureSpec& q);

/// Certified f-volume lower bound under R <= eps, K(g) <= A, Vol_f >= v.
/// Enforces 0 < eps <= 1, eps < n/2 (eps-window) and eps^{1/4} < C0
/// (C0-window, C0 = min(injectivity chain, pi/sqrt(A))); violations raise
/// WindowError naming the failed constraint.
double f_volume_lower(const GapInputs& inputs, double eps, const QuadratureSpec& q,
                      bool sharp = false);

/// Threshold solve: the largest eps in (0, eps_cap] with F(eps) >= 1 - eps_prime,
/// eps_cap = min(1, (n/2)(1 - 1e-6), C0^4 (1 - 1e-6)), located by log-grid scan
/// plus bisection (monotonicity of F is not assumed).
GapResult solve_gap_epsilon(const GapInputs& inputs, const QuadratureSpec& q, bool sharp = false);

/// Populate every chain field in dependency order, with formula provenance
/// strings and at least `curve_points` log-spaced samples of F (minimum 50).
BoundReport full_report(const GapInputs& inputs, const QuadratureSpec& q, bool sharp = false,
                        int curve_points = 64);

}  // namespace solgap
