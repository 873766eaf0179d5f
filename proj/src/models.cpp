#include "solgap/models.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "solgap/spaceform.hpp"

namespace solgap {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kInf = std::numeric_limits<double>::infinity();

// (m)-volume of the unit m-sphere S^m in R^{m+1}.
double unit_sphere_area(int m) { return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / gamma_fn(0.5 * (m + 1)); }

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

std::string fmtg(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}


}  // namespace

ModelSoliton::ModelSoliton(ModelKind kind, int n)
    : kind_(kind), n_(n), c_p_(0), scalar_(0), sect_upper_(0), cross_section_(0),
      total_volume_(kInf) {}

ModelSoliton ModelSoliton::gaussian(int n) {
    if (n < 2) throw std::domain_error("ModelSoliton::gaussian: requires n >= 2");
    ModelSoliton m(ModelKind::gaussian, n);
    m.c_p_ = 0.0;
    m.scalar_ = 0.0;
    m.sect_upper_ = 0.0;
    return m;
}

ModelSoliton ModelSoliton::sphere(int n) {
    if (n < 2) throw std::domain_error("ModelSoliton::sphere: requires n >= 2");
    ModelSoliton m(ModelKind::sphere, n);
    m.c_p_ = 0.5 * n;
    m.scalar_ = 0.5 * n;
    const double radius_sq = 2.0 * (n - 1);
    m.sect_upper_ = 1.0 / radius_sq;
    m.total_volume_ = unit_sphere_area(n) * std::pow(radius_sq, 0.5 * n);
    return m;
}

ModelSoliton ModelSoliton::cylinder(int n) {
    if (n < 3) {
        throw std::domain_error(
            "ModelSoliton::cylinder: requires n >= 3 (the sphere factor radius "
            "sqrt(2(n-2)) degenerates at n = 2)");
    }
    ModelSoliton m(ModelKind::cylinder, n);
    m.c_p_ = 0.5 * (n - 1);
    m.scalar_ = 0.5 * (n - 1);
    const double radius_sq = 2.0 * (n - 2);
    m.sect_upper_ = 1.0 / radius_sq;
    m.cross_section_ = unit_sphere_area(n - 1) * std::pow(radius_sq, 0.5 * (n - 1));
    return m;
}

std::string ModelSoliton::name() const {
    switch (kind_) {
        case ModelKind::gaussian: return "gaussian";
        case ModelKind::sphere: return "sphere";
        case ModelKind::cylinder: return "cylinder";
    }
    return "?";
}

double ModelSoliton::scalar_curvature(double) const { return scalar_; }

double ModelSoliton::potential(double u) const {
    switch (kind_) {
        case ModelKind::gaussian: return 0.25 * u * u;
        case ModelKind::sphere: return c_p_;
        case ModelKind::cylinder: return 0.25 * u * u + c_p_;
    }
    return 0.0;
}

double ModelSoliton::grad_f_sq(double u) const {
    switch (kind_) {
        case ModelKind::gaussian:
        case ModelKind::cylinder: return 0.25 * u * u;
        case ModelKind::sphere: return 0.0;
    }
    return 0.0;
}

double ModelSoliton::laplacian_f(double) const {
    switch (kind_) {
        case ModelKind::gaussian: return 0.5 * n_;
        case ModelKind::sphere: return 0.0;
        case ModelKind::cylinder: return 0.5;
    }
    return 0.0;
}

double ModelSoliton::chart_distance(double u) const { return std::fabs(u); }

double ModelSoliton::chart_limit() const {
    if (kind_ == ModelKind::sphere) return kPi * std::sqrt(2.0 * (n_ - 1));
    return kInf;
}

double ModelSoliton::V(double r) const {
    if (r < 0.0) throw std::domain_error("ModelSoliton::V: requires r >= 0");
    switch (kind_) {
        case ModelKind::gaussian: return unit_ball_volume(n_) * std::pow(r, n_);
        case ModelKind::sphere: return total_volume_;  // rho == 0, so D(r) = M
        case ModelKind::cylinder: return 2.0 * cross_section_ * r;
    }
    return 0.0;
}

double ModelSoliton::chi(double r) const {
    if (r < 0.0) throw std::domain_error("ModelSoliton::chi: requires r >= 0");
    return scalar_ * V(r);
}

double ModelSoliton::dV(double r) const {
    switch (kind_) {
        case ModelKind::gaussian: return n_ * unit_ball_volume(n_) * std::pow(r, n_ - 1);
        case ModelKind::sphere: return 0.0;  // coarea limit on the degenerate sublevel
        case ModelKind::cylinder: return 2.0 * cross_section_;
    }
    return 0.0;
}

double ModelSoliton::dchi(double r) const { return scalar_ * dV(r); }

double ModelSoliton::V_f(double r, const QuadratureSpec& q) const {
    if (r < 0.0) throw std::domain_error("ModelSoliton::V_f: requires r >= 0");
    const double norm = std::pow(4.0 * kPi, -0.5 * n_);
    switch (kind_) {
        case ModelKind::gaussian: {
            if (r == 0.0) return 0.0;
            const int n = n_;
            const double shell = integrate(
                [n](double s) { return std::pow(s, n - 1) * std::exp(-0.25 * s * s); }, 0.0, r, q);
            return norm * n_ * unit_ball_volume(n_) * shell;
        }
        case ModelKind::sphere:
            return norm * std::exp(-c_p_) * total_volume_;
        case ModelKind::cylinder: {
            if (r == 0.0) return 0.0;
            const double axial =
                2.0 * integrate([](double t) { return std::exp(-0.25 * t * t); }, 0.0, r, q);
            return norm * std::exp(-c_p_) * cross_section_ * axial;
        }
    }
    return 0.0;
}

SublevelGeometry sublevel_geometry(const ModelSoliton& m, const QuadratureSpec& q) {
    SublevelGeometry g;
    g.rho = [m](double u) {
        const double d = m.potential(u) - m.c_p();
        return 2.0 * std::sqrt(std::max(0.0, d));
    };
    g.V = [m](double r) { return m.V(r); };
    g.chi = [m](double r) { return m.chi(r); };
    g.V_f = [m, q](double r) { return m.V_f(r, q); };
    return g;
}

IdentityReport verify_identities(const ModelSoliton& m, const std::vector<double>& samples,
                                 double tol) {
    if (samples.empty()) throw std::invalid_argument("verify_identities: empty sample set");
    IdentityReport rep;
    rep.tolerance = tol;
    const double half_n = 0.5 * m.dimension();
    for (double u : samples) {
        if (m.chart_distance(u) > m.chart_limit()) {
            throw std::domain_error("verify_identities: sample outside the coordinate chart");
        }
        const double traced = std::fabs(m.scalar_curvature(u) + m.laplacian_f(u) - half_n);
        const double pot = std::fabs(m.scalar_curvature(u) + m.grad_f_sq(u) - m.potential(u));
        if (traced > rep.max_traced_residual) {
            rep.max_traced_residual = traced;
            rep.worst_traced_point = u;
        }
        if (pot > rep.max_potential_residual) {
            rep.max_potential_residual = pot;
            rep.worst_potential_point = u;
        }
    }
    rep.pass = rep.max_traced_residual <= tol && rep.max_potential_residual <= tol;
    if (!rep.pass) {
        if (rep.max_traced_residual > tol) {
            rep.failure = "R + Delta f = n/2 fails at u = " + fmtg(rep.worst_traced_point) +
                          " (residual " + fmtg(rep.max_traced_residual) + ")";
        } else {
            rep.failure = "R + |grad f|^2 = f fails at u = " +
                          fmtg(rep.worst_potential_point) + " (residual " +
                          fmtg(rep.max_potential_residual) + ")";
        }
    }
    return rep;
}

SublevelVolumes sublevel_volume(const ModelSoliton& m, double r, const QuadratureSpec&) {
    return {m.V(r), m.chi(r)};
}

CoareaResidual coarea_residual(const ModelSoliton& m, double r, const QuadratureSpec&,
                                DerivativeMode mode, double h) {
    if (!(r > 0.0)) throw std::domain_error("coarea_residual: requires r > 0");
    const int n = m.dimension();
    double dV, dchi;
    if (mode == DerivativeMode::closed_form) {
        dV = m.dV(r);
        dchi = m.dchi(r);
    } else {
        const double step = h > 0.0 ? h : 1e-5 * r;
        dV = (m.V(r + step) - m.V(r - step)) / (2.0 * step);
        dchi = (m.chi(r + step) - m.chi(r - step)) / (2.0 * step);
    }
    const double lhs = n * m.V(r) - 2.0 * m.chi(r);
    const double rhs = (r * r + 4.0 * m.c_p()) / r * dV - 4.0 / r * dchi;
    CoareaResidual out;
    out.residual = std::fabs(lhs - rhs);
    out.lhs = lhs;
    out.sign_ok = lhs >= -1e-12 * (1.0 + std::fabs(n * m.V(r)));
    return out;
}

GrowthCheckReport growth_bound_check(const ModelSoliton& m, double delta, double r0,
                                const std::vector<double>& r_grid, const QuadratureSpec&) {
    const int n = m.dimension();
    if (!(m.sup_scalar() <= delta && delta < 0.5 * n)) {
        throw std::domain_error("growth_bound_check: requires sup R <= delta < n/2 (sup R = " +
                                fmtg(m.sup_scalar()) + ")");
    }
    if (!(r0 > 0.0)) throw std::domain_error("growth_bound_check: requires r0 > 0");

    const double exponent = 0.5 * n - delta;
    const double four_cp = 4.0 * m.c_p();
    const double base = m.V(r0) / std::pow(r0 * r0 + four_cp, exponent);

    GrowthCheckReport rep;
    rep.worst_margin = kInf;
    rep.worst_area_margin = kInf;
    rep.ratio_samples.reserve(r_grid.size());
    for (double r : r_grid) {
        if (!(r > r0)) throw std::invalid_argument("growth_bound_check: grid points must exceed r0");
        const double w = r * r + four_cp;
        const double vol_rhs = base * std::pow(w, exponent);
        const double area_rhs = (n - 2.0 * delta) * base * r * std::pow(w, exponent - 1.0);
        const double vol = m.V(r);
        const double area = m.dV(r);
        const double slack = 1e-9 * (1.0 + std::fabs(vol));
        const double vol_margin = vol - vol_rhs;
        const double area_margin = area - area_rhs;
        rep.ratio_samples.push_back(vol / std::pow(w, exponent));
        if (vol_margin < rep.worst_margin) {
            rep.worst_margin = vol_margin;
            rep.worst_r = r;
        }
        rep.worst_area_margin = std::min(rep.worst_area_margin, area_margin);
        if (vol_margin < -slack || area_margin < -slack) {
            rep.pass = false;
            rep.failure = "growth bound violated at r = " + fmtg(r) +
                          " (volume margin " + fmtg(vol_margin) + ", area margin " +
                          fmtg(area_margin) + ")";
        }
    }
    return rep;
}

double f_volume(const ModelSoliton& m, const QuadratureSpec& q) {
    const int n = m.dimension();
    const double norm = std::pow(4.0 * kPi, -0.5 * n);
    switch (m.kind()) {
        case ModelKind::gaussian:
            return norm * n * unit_ball_volume(n) * weighted_tail(n, 0.0, 0.0, q);
        case ModelKind::sphere:
            return m.V_f(1.0, q);  // independent of r on the compact model
        case ModelKind::cylinder: {
            // e^{-t^2/4} tail beyond T is below 2 e^{-T^2/4}/T, negligible at T = 16.
            return m.V_f(16.0, q);
        }
    }
    return 0.0;
}

double logsob_deficit(const RadialProfile& profile, int n, const QuadratureSpec& q) {
    if (n < 2) throw std::domain_error("logsob_deficit: requires n >= 2");
    if (!(profile.r_max > 0.0)) throw std::domain_error("logsob_deficit: requires r_max > 0");
    const double shell = n * unit_ball_volume(n);
    const auto& u = profile.u;
    const auto& du = profile.du;

    const double mass = shell * integrate(
        [&u, n](double s) { return u(s) * u(s) * std::pow(s, n - 1); }, 0.0, profile.r_max, q);
    if (!(mass > 0.0)) throw std::domain_error("logsob_deficit: profile has no mass");

    const double dirichlet = shell * integrate(
        [&du, n](double s) { return du(s) * du(s) * std::pow(s, n - 1); }, 0.0, profile.r_max, q);

    const double entropy = shell * integrate(
        [&u, n](double s) { return xlogx(u(s) * u(s)) * std::pow(s, n - 1); }, 0.0,
        profile.r_max, q);

    // mu0 = 0 and R = 0 on the Gaussian soliton, so those terms drop out.
    return 4.0 * dirichlet - (entropy - mass * std::log(mass));
}

}  // namespace solgap
