#pragma once

#include "solgap/numerics.hpp"

namespace solgap {

/// Simply connected space form of constant sectional curvature H, dimension n.
struct SpaceFormSpec {
    int n;     // dimension, >= 2
    double H;  // constant sectional curvature, any sign

    void validate() const;
};

/// Volume of the unit ball in R^n: omega_n = pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

/// Volume of the radius-r ball in the space form:
///   V_H(r) = n omega_n \int_0^r sn_H(s)^{n-1} ds,
/// with sn_H(s) = sin(sqrt(H) s)/sqrt(H) for H > 0, s for H = 0, and
/// sinh(sqrt(-H) s)/sqrt(-H) for H < 0. For H > 0 the domain is r <= pi/sqrt(H);
/// beyond that a domain_error naming the cap is raised. Continuous in H at 0.
double model_volume(const SpaceFormSpec& spec, double r, const QuadratureSpec& q);

/// Certified lower bound for Vol(B_p(r)) on any manifold with K(g) <= A and
/// injectivity radius >= inj_lower: returns V_A(r). Valid only for
/// r < min(inj_lower, pi/sqrt(A)); outside that window a domain_error is
/// raised (never a silent clamp).
double gunther_lower_bound(int n, double A, double r, double inj_lower, const QuadratureSpec& q);

}  // namespace solgap
