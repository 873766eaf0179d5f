#include "solgap/bound_chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "solgap/spaceform.hpp"

namespace solgap {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::string fmtg(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
constexpr double kCapMargin = 1e-6;   // relative buffer keeping eps inside open windows
constexpr double kEpsFloor = 1e-300;  // smallest eps the solver will scan

double sinc_stable(double x) {
    const double z = x * x;
    if (z < 1e-8) return 1.0 - z / 6.0 + z * z / 120.0;
    return std::sin(x) / x;
}

struct ChainConstants {
    double C1, H, C2, C_noncollapse, volB1_lower, inj_lower, C0;
};

ChainConstants compute_chain(const GapInputs& in, const QuadratureSpec& q, bool sharp) {
    ChainConstants cc;
    cc.H = sectional_lower_from_upper(in.n, in.A);
    cc.C1 = cc.H == 0.0 ? 0.0 : -cc.H;
    cc.C2 = bg_ratio(in.n, cc.H, q);
    const double coef = sharp ? 36.0 + std::exp(-1.0) : 37.0;
    cc.C_noncollapse = std::exp(-1.0 - coef * cc.C2);
    cc.volB1_lower = cc.C_noncollapse * in.v;
    cc.inj_lower = injectivity_lower(in.n, in.A, cc.volB1_lower, q);
    cc.C0 = std::min(cc.inj_lower, kPi / std::sqrt(in.A));
    return cc;
}

double eps_cap_from(const GapInputs& in, const ChainConstants& cc) {
    const double from_dim = 0.5 * in.n * (1.0 - kCapMargin);
    const double from_window = std::pow(cc.C0, 4) * (1.0 - kCapMargin);
    return std::min({1.0, from_dim, from_window});
}

}  // namespace

void GapInputs::validate() const {
    if (n < 2) throw std::domain_error("GapInputs: requires dimension n >= 2");
    if (!(A > 0.0)) throw std::domain_error("GapInputs: requires A > 0");
    if (!(v > 0.0 && v <= 1.0)) {
        throw std::domain_error("GapInputs: requires 0 < v <= 1 (the f-volume never exceeds 1)");
    }
    if (!(eps_prime > 0.0 && eps_prime < 1.0)) {
        throw std::domain_error("GapInputs: requires 0 < eps_prime < 1");
    }
}

double sectional_lower_from_upper(int n, double A) {
    if (n < 2) throw std::domain_error("sectional_lower_from_upper: requires n >= 2");
    if (!(A > 0.0)) throw std::domain_error("sectional_lower_from_upper: requires A > 0");
    const double magnitude = 0.5 * (n * (n - 1) - 2) * A;
    return magnitude == 0.0 ? 0.0 : -magnitude;
}

double bg_ratio(int n, double H, const QuadratureSpec& q) {
    if (H > 0.0) throw std::domain_error("bg_ratio: requires H <= 0");
    return model_volume({n, H}, 1.0, q) / model_volume({n, H}, 0.5, q);
}

double noncollapse_constant(int n, double A, const QuadratureSpec& q, bool sharp) {
    const double H = sectional_lower_from_upper(n, A);
    const double coef = sharp ? 36.0 + std::exp(-1.0) : 37.0;
    return std::exp(-1.0 - coef * bg_ratio(n, H, q));
}

double injectivity_lower(int n, double A, double volB1_lower, const QuadratureSpec& q) {
    if (!(volB1_lower > 0.0)) {
        // A fully collapsed floor still yields a well-defined (zero) bound.
        return 0.0;
    }
    const double H = sectional_lower_from_upper(n, A);
    const double r0 = kPi / (4.0 * std::sqrt(A));
    double ball_lb = volB1_lower;
    if (r0 < 1.0) {
        ball_lb *= model_volume({n, H}, r0, q) / model_volume({n, H}, 1.0, q);
    }
    const double outer = model_volume({n, H}, 2.0 * r0, q);
    return 0.5 * r0 / (1.0 + outer / ball_lb);
}

double alpha_factor(int n, double eps) {
    if (n < 2) throw std::domain_error("alpha_factor: requires n >= 2");
    if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("alpha_factor: requires 0 < eps <= 1");
    const double base = 1.0 + 4.0 * std::pow(eps, 0.25) + 8.0 * std::sqrt(eps);
    return std::pow(base, -0.5 * n + eps) * std::exp(0.5 * eps * std::log(eps));
}

double small_ball_ratio(int n, double A, double eps, const QuadratureSpec& q) {
    if (n < 2) throw std::domain_error("small_ball_ratio: requires n >= 2");
    if (!(A > 0.0)) throw std::domain_error("small_ball_ratio: requires A > 0");
    if (!(eps > 0.0)) throw std::domain_error("small_ball_ratio: requires eps > 0");
    const double quarter_root = std::pow(eps, 0.25);
    if (quarter_root > kPi / std::sqrt(A)) {
        throw std::domain_error("small_ball_ratio: eps^{1/4} exceeds the sine cap pi/sqrt(A)");
    }
    const double scale = std::sqrt(A) * quarter_root;
    const double integral = integrate(
        [n, scale](double w) { return std::pow(w * sinc_stable(scale * w), n - 1); }, 0.0, 1.0, q);
    return n * unit_ball_volume(n) * integral;
}

double f_volume_lower_formula(int n, double A, double eps, const QuadratureSpec& q) {
    const double r0 = std::pow(eps, 0.25) + 2.0 * std::sqrt(eps);
    return std::exp(-eps) * std::pow(4.0 * kPi, -0.5 * n) * (n - 2.0 * eps) *
           alpha_factor(n, eps) * small_ball_ratio(n, A, eps, q) * weighted_tail(n, eps, r0, q);
}

double f_volume_lower(const GapInputs& inputs, double eps, const QuadratureSpec& q, bool sharp) {
    inputs.validate();
    if (!(eps > 0.0 && eps <= 1.0 && eps < 0.5 * inputs.n)) {
        throw WindowError(WindowError::Which::eps_window,
                          "f_volume_lower: eps-window violated (needs 0 < eps <= 1 and eps < n/2)");
    }
    const ChainConstants cc = compute_chain(inputs, q, sharp);
    if (!(std::pow(eps, 0.25) < cc.C0)) {
        throw WindowError(WindowError::Which::c0_window,
                          "f_volume_lower: C0-window violated (needs eps^{1/4} < C0 = " +
                              fmtg(cc.C0) + ")");
    }
    return f_volume_lower_formula(inputs.n, inputs.A, eps, q);
}

GapResult solve_gap_epsilon(const GapInputs& inputs, const QuadratureSpec& q, bool sharp) {
    inputs.validate();
    GapResult out;
    out.target = 1.0 - inputs.eps_prime;

    const ChainConstants cc = compute_chain(inputs, q, sharp);
    const double cap = eps_cap_from(inputs, cc);
    out.eps_cap = cap;
    if (!(cap >= kEpsFloor)) {
        out.feasible = false;
        out.limiting_stage =
            "eps_cap: C0^4 is below the representable floor (C0 = " + fmtg(cc.C0) + ")";
        return out;
    }

    const int n = inputs.n;
    const double A = inputs.A;
    auto F = [n, A, &q](double eps) { return f_volume_lower_formula(n, A, eps, q); };
    const double lo = std::min(kEpsFloor, 0.5 * cap);
    try {
        const double star = solve_threshold(F, out.target, Bracket(lo, cap), kCapMargin);
        out.feasible = true;
        out.eps_star = star;
        out.f_at_eps_star = F(star);
    } catch (const InfeasibleError& e) {
        out.feasible = false;
        out.limiting_stage = "target: F(" + fmtg(lo) +
                             ") = " + fmtg(e.f_lo()) + " < 1 - eps_prime = " +
                             fmtg(e.target());
    }
    return out;
}

BoundReport full_report(const GapInputs& inputs, const QuadratureSpec& q, bool sharp,
                        int curve_points) {
    inputs.validate();
    q.validate();
    BoundReport rep;
    rep.inputs = inputs;
    rep.quadrature = q;
    rep.sharp_constant = sharp;

    const ChainConstants cc = compute_chain(inputs, q, sharp);
    rep.C1 = cc.C1;
    rep.H = cc.H;
    rep.C2 = cc.C2;
    rep.C_noncollapse = cc.C_noncollapse;
    rep.volB1_lower = cc.volB1_lower;
    rep.inj_lower = cc.inj_lower;
    rep.C0 = cc.C0;
    rep.result = solve_gap_epsilon(inputs, q, sharp);

    const std::string coef_str = sharp ? "(36 + 1/e)" : "37";
    rep.stages = {
        {"C1", "C1 = (n*(n-1) - 2)/2 * A", rep.C1,
         {"K(g) <= A", "R >= 0", "2K(plane) = R - sum of the other n(n-1)-2 sectional terms"}},
        {"H", "H = -C1", rep.H, {"uniform sectional lower bound K(g) >= H"}},
        {"C2", "C2 = V_H(1) / V_H(1/2)", rep.C2,
         {"Bishop-Gromov volume comparison at the curvature floor H"}},
        {"C_noncollapse", "C(A,n) = exp(-1 - " + coef_str + " * C2)", rep.C_noncollapse,
         {"log V(1) >= -mu0 - 1 - " + coef_str + " * V(1)/V(1/2)", "R <= 1 on B_p(1)",
          "mu0 <= -log(v)"}},
        {"volB1_lower", "volB1_lower = C_noncollapse * v", rep.volB1_lower,
         {"Vol_f(M) >= v"}},
        {"inj_lower",
         "inj_lower = (r0/2) / (1 + V_H(2*r0)/ball_lb), r0 = pi/(4*sqrt(A)), "
         "ball_lb = volB1_lower if r0 >= 1 else (V_H(r0)/V_H(1)) * volB1_lower",
         rep.inj_lower,
         {"Cheeger-Gromov-Taylor with r1 = r0 = s = pi/(4*sqrt(A)) at the center"}},
        {"C0", "C0 = min(inj_lower, pi/sqrt(A))", rep.C0,
         {"joint validity window for the comparison ball"}},
        {"eps_star",
         "largest eps in (0, eps_cap] with F(eps) >= 1 - eps_prime, "
         "eps_cap = min(1, (n/2)*(1-1e-6), C0^4*(1-1e-6))",
         rep.result.feasible ? *rep.result.eps_star : 0.0,
         {"R <= eps pointwise", "F(eps) = e^{-eps} (4pi)^{-n/2} (n-2eps) alpha(eps) C(A,eps) "
                                "Integral_{r0}^{inf} s^{n-1-2n*eps} e^{-s^2/4} ds",
          "r0 = eps^{1/4} + 2*eps^{1/2}"}},
    };

    // Curve: log-spaced F samples across the admissible window.
    const int points = std::max(50, curve_points);
    if (rep.result.eps_cap >= kEpsFloor) {
        const double hi = rep.result.eps_cap;
        const double lo = std::max(kEpsFloor, hi * 1e-30);
        const double llo = std::log(lo);
        const double lhi = std::log(hi);
        rep.curve.samples.reserve(points);
        for (int i = 0; i < points; ++i) {
            // The endpoints are pinned exactly; exp(log(hi)) can overshoot by an ulp.
            double eps = i == 0          ? lo
                         : i == points - 1 ? hi
                                           : std::exp(llo + (lhi - llo) * i / (points - 1));
            eps = std::min(eps, hi);
            rep.curve.samples.push_back({eps, f_volume_lower_formula(inputs.n, inputs.A, eps, q)});
        }
    }
    return rep;
}

}  // namespace solgap
