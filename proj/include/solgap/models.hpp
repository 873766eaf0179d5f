#pragma once

#include <functional>
#include <string>
#include <vector>

#include "solgap/numerics.hpp"

namespace solgap {

enum class ModelKind { gaussian, sphere, cylinder };

/// Closed-form shrinking gradient Ricci soliton normalized so that
/// R + |grad f|^2 = f. Three families:
///
///   gaussian(n):  flat R^n, f = |x|^2/4, R = 0
///   sphere(n):    round sphere of radius sqrt(2(n-1)), R = f = n/2
///   cylinder(n):  S^{n-1}(sqrt(2(n-2))) x R, R = (n-1)/2, f = t^2/4 + (n-1)/2
///
/// Radii come from Ric + Hess f = g/2. A round sphere of radius a has
/// Ric = (n-1)/a^2 g and constant f, so a^2 = 2(n-1), giving
/// R = n(n-1)/a^2 = n/2 = f and sectional curvature 1/(2(n-1)). On the
/// cylinder the S^{n-1}(b) factor needs (n-2)/b^2 = 1/2, so b^2 = 2(n-2),
/// R = (n-1)(n-2)/b^2 = (n-1)/2, while the flat direction forces
/// f = t^2/4 + const; the normalization pins const = R. Along the axis
/// Delta f = 1/2, so R + Delta f = n/2 on all three families.
///
/// Geometry is parametrized by a single chart coordinate u: the radial
/// distance |x| for the Gaussian, the axial coordinate t for the cylinder,
/// and the geodesic distance from a fixed base point for the sphere.
class ModelSoliton {
public:
    static ModelSoliton gaussian(int n);
    static ModelSoliton sphere(int n);
    static ModelSoliton cylinder(int n);  // requires n >= 3

    ModelKind kind() const { return kind_; }
    int dimension() const { return n_; }
    std::string name() const;

    /// Minimum of the normalized potential; equals R at the minimum set.
    double c_p() const { return c_p_; }
    /// Tight upper bound for the sectional curvature K(g).
    double sect_upper() const { return sect_upper_; }
    /// sup_M R (all three models have constant scalar curvature).
    double sup_scalar() const { return scalar_; }

    double scalar_curvature(double u) const;
    double potential(double u) const;
    double grad_f_sq(double u) const;
    double laplacian_f(double u) const;
    /// Distance from the potential's minimum point to the chart point u.
    double chart_distance(double u) const;
    /// Largest chart coordinate (pi * radius for the sphere, +inf otherwise).
    double chart_limit() const;

    // Sublevel geometry of D(r) = { rho <= r }, rho = 2 sqrt(f - c_p), in
    // closed form. On the sphere rho == 0, so D(r) = M and V' = chi' = 0.
    double V(double r) const;
    double chi(double r) const;
    double dV(double r) const;
    double dchi(double r) const;

    /// (4pi)^{-n/2} \int_{D(r)} e^{-f} dV_g.
    double V_f(double r, const QuadratureSpec& q) const;

private:
    ModelSoliton(ModelKind kind, int n);

    ModelKind kind_;
    int n_;
    double c_p_;
    double scalar_;
    double sect_upper_;
    double cross_section_;  // cylinder: (n-1)-volume of the sphere factor
    double total_volume_;   // sphere: Vol(M); infinite otherwise
};

/// The sublevel functions of a model, packaged as callables.
struct SublevelGeometry {
    std::function<double(double)> rho;  // chart coordinate u -> rho(u)
    std::function<double(double)> V;
    std::function<double(double)> chi;
    std::function<double(double)> V_f;
};
SublevelGeometry sublevel_geometry(const ModelSoliton& m, const QuadratureSpec& q);

/// Residuals of the pointwise soliton identities R + Delta f = n/2 and
/// R + |grad f|^2 = f over a set of chart points.
struct IdentityReport {
    double max_traced_residual = 0.0;   // |R + Delta f - n/2|
    double worst_traced_point = 0.0;
    double max_potential_residual = 0.0;  // |R + |grad f|^2 - f|
    double worst_potential_point = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string failure;  // names the identity and worst point on failure
};
IdentityReport verify_identities(const ModelSoliton& m, const std::vector<double>& samples,
                                 double tol);

/// (V(r), chi(r)) for the model's sublevel set D(r).
struct SublevelVolumes {
    double V;
    double chi;
};
SublevelVolumes sublevel_volume(const ModelSoliton& m, double r, const QuadratureSpec& q);

enum class DerivativeMode { closed_form, finite_difference };

/// Residual of the coarea identity
///   n V(r) - 2 chi(r) = ((r^2 + 4 c_p)/r) V'(r) - (4/r) chi'(r)
/// together with the sign check n V(r) - 2 chi(r) >= 0. Derivatives come from
/// closed forms by default; the finite-difference path (central, step h)
/// exists to exercise the generic route.
struct CoareaResidual {
    double residual;
    double lhs;  // n V(r) - 2 chi(r)
    bool sign_ok;
};
CoareaResidual coarea_residual(const ModelSoliton& m, double r, const QuadratureSpec& q,
                                DerivativeMode mode = DerivativeMode::closed_form,
                                double h = 0.0);

/// Check of the volume growth bounds, valid under sup R <= delta < n/2:
///   V(r)  >= V(r0) (r^2 + 4c_p)^{n/2 - delta} / (r0^2 + 4c_p)^{n/2 - delta}
///   V'(r) >= (n - 2 delta) V(r0) r (r^2 + 4c_p)^{n/2 - 1 - delta} / (r0^2 + 4c_p)^{n/2 - delta}
/// at each grid point, plus samples of the monotone ratio
/// V(r) / (r^2 + 4c_p)^{n/2 - delta}.
struct GrowthCheckReport {
    bool pass = true;
    double worst_r = 0.0;
    double worst_margin = 0.0;          // min over grid of LHS - RHS (volume bound)
    double worst_area_margin = 0.0;     // same for the derivative bound
    std::vector<double> ratio_samples;  // V(r)/(r^2+4c_p)^{n/2-delta} along the grid
    std::string failure;
};
GrowthCheckReport growth_bound_check(const ModelSoliton& m, double delta, double r0,
                                const std::vector<double>& r_grid, const QuadratureSpec& q);

/// Normalized f-volume (4pi)^{-n/2} \int_M e^{-f} dV_g, reduced to a 1-D
/// weighted integral through the model's symmetry. Equals 1 exactly for the
/// Gaussian soliton.
double f_volume(const ModelSoliton& m, const QuadratureSpec& q);

/// Radial test function for the log-Sobolev deficit: u(s), u'(s), and the
/// integration cutoff beyond which u is treated as zero.
struct RadialProfile {
    std::function<double(double)> u;
    std::function<double(double)> du;
    double r_max;
    std::string label;
};

/// Log-Sobolev deficit on the Gaussian soliton (mu0 = 0, R = 0):
///   4 \int |grad u|^2 - [ \int u^2 log u^2 - (\int u^2) log \int u^2 ],
/// all integrals over R^n against Lebesgue measure. Nonnegative for every
/// admissible profile; the inequality implementation is falsified if this
/// comes back below -tol.
double logsob_deficit(const RadialProfile& profile, int n, const QuadratureSpec& q);

}  // namespace solgap
