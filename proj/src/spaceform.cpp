#include "solgap/spaceform.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace solgap {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::string fmtg(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// sn_H(s), evaluated through the shared series sin(x)/x = 1 - z/6 + z^2/120 - ...
// with z = H s^2 when |z| is small; the series covers both curvature signs and
// removes the 0/0 cancellation at H = 0.
double sn(double H, double s) {
    const double z = H * s * s;
    if (std::fabs(z) < 1e-8) {
        return s * (1.0 - z / 6.0 + z * z / 120.0);
    }
    if (H > 0.0) {
        const double root = std::sqrt(H);
        return std::sin(root * s) / root;
    }
    const double root = std::sqrt(-H);
    return std::sinh(root * s) / root;
}

}  // namespace

void SpaceFormSpec::validate() const {
    if (n < 2) throw std::domain_error("SpaceFormSpec: requires n >= 2");
}

double unit_ball_volume(int n) {
    if (n < 2) throw std::domain_error("unit_ball_volume: requires n >= 2");
    return std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
}

double model_volume(const SpaceFormSpec& spec, double r, const QuadratureSpec& q) {
    spec.validate();
    if (r < 0.0) throw std::domain_error("model_volume: requires r >= 0");
    if (spec.H > 0.0) {
        const double cap = kPi / std::sqrt(spec.H);
        if (r > cap) {
            throw std::domain_error("model_volume: r exceeds the space-form cap pi/sqrt(H) = " +
                                    fmtg(cap));
        }
    }
    if (r == 0.0) return 0.0;
    const int n = spec.n;
    const double H = spec.H;
    const double integral =
        integrate([H, n](double s) { return std::pow(sn(H, s), n - 1); }, 0.0, r, q);
    return n * unit_ball_volume(n) * integral;
}

double gunther_lower_bound(int n, double A, double r, double inj_lower, const QuadratureSpec& q) {
    if (!(A > 0.0)) throw std::domain_error("gunther_lower_bound: requires A > 0");
    if (!(r > 0.0)) throw std::domain_error("gunther_lower_bound: requires r > 0");
    if (!(inj_lower > 0.0)) throw std::domain_error("gunther_lower_bound: requires inj_lower > 0");
    const double window = std::min(inj_lower, kPi / std::sqrt(A));
    if (!(r < window)) {
        throw std::domain_error(
            "gunther_lower_bound: r outside the validity window r < min(inj_lower, pi/sqrt(A)) = " +
            fmtg(window));
    }
    return model_volume({n, A}, r, q);
}

}  // namespace solgap
