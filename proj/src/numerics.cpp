#include "solgap/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace solgap {

namespace {

std::string fmtg(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Gauss-Kronrod (7,15) node/weight tables on [-1, 1], QUADPACK values.
// Nodes are symmetric; only the nonnegative half is stored.
constexpr std::array<double, 8> kK15Nodes = {
    0.0,
    0.2077849550078984676006894037732449,
    0.4058451513773971669066064120769615,
    0.5860872354676911302941448382587296,
    0.7415311855993944398638647732807884,
    0.8648644233597690727897127886409262,
    0.9491079123427585245261896840478513,
    0.9914553711208126392068546975263285,
};
constexpr std::array<double, 8> kK15Weights = {
    0.2094821410847278280129991748917143,
    0.2044329400752988924141619992346491,
    0.1903505780647854099132564024210137,
    0.1690047266392679028265834265985503,
    0.1406532597155259187451895905102379,
    0.1047900103222501838398763225415180,
    0.0630920926299785532907006631892042,
    0.0229353220105292249637320080589695,
};
// Gauss-7 weights attach to the even-index Kronrod nodes (0, 2, 4, 6).
constexpr std::array<double, 4> kG7Weights = {
    0.4179591836734693877551020408163265,
    0.3818300505051189449503697754889751,
    0.2797053914892766679014677714237796,
    0.1294849661688696932706114326790820,
};

struct PanelEval {
    double kronrod;   // K15 estimate
    double gauss;     // embedded G7 estimate
    double resabs;    // K15 estimate of |f|
};

PanelEval eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(mid);
    double k = kK15Weights[0] * fc;
    double g = kG7Weights[0] * fc;
    double resabs = kK15Weights[0] * std::fabs(fc);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kK15Nodes[i];
        const double fl = f(mid - dx);
        const double fr = f(mid + dx);
        k += kK15Weights[i] * (fl + fr);
        resabs += kK15Weights[i] * (std::fabs(fl) + std::fabs(fr));
        if (i % 2 == 0) g += kG7Weights[i / 2] * (fl + fr);
    }
    return {k * half, g * half, resabs * std::fabs(half)};
}

struct AdaptiveAccum {
    double value = 0.0;
    double bound = 0.0;
    bool converged = true;
};

// Tolerance-halving recursion: a panel either meets its local allowance (or
// the roundoff floor) or is split with half the allowance per child.
void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
           int max_depth, AdaptiveAccum& acc) {
    const PanelEval p = eval_panel(f, a, b);
    const double err = std::fabs(p.kronrod - p.gauss);
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * p.resabs;
    if (err <= std::max(tol, floor) || depth >= max_depth) {
        acc.value += p.kronrod;
        acc.bound += err;
        if (err > std::max(tol, floor)) acc.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, acc);
    adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, acc);
}

bool is_half_integer(double x) { return x > 0.0 && std::floor(2.0 * x) == 2.0 * x; }

// Lower incomplete gamma by series: gamma(a,x) = x^a e^{-x} sum_k x^k / (a (a+1) ... (a+k)).
double lower_gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
    }
    return std::pow(x, a) * std::exp(-x) * sum;
}

// E1(x) = Gamma(0, x) by its series, for 0 < x < 1.
double e1_series(double x) {
    const double euler = 0.57721566490153286060651209;
    double sum = -euler - std::log(x);
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 60; ++k) {
        term *= -x / k;
        sum -= term / k;
        if (std::fabs(term) < 1e-18) break;
    }
    return sum;
}

// Upper incomplete gamma by Legendre's continued fraction (modified Lentz).
double upper_gamma_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / (b == 0.0 ? tiny : b);
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0)) throw std::domain_error("QuadratureSpec: abs_tol must be > 0");
    if (!(rel_tol > 0.0)) throw std::domain_error("QuadratureSpec: rel_tol must be > 0");
    if (max_depth < 1) throw std::domain_error("QuadratureSpec: max_depth must be >= 1");
}

Bracket::Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw std::invalid_argument("Bracket: requires lo < hi");
}

IntegralResult integrate_with_bound(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureSpec& spec) {
    spec.validate();
    if (!(a <= b)) throw std::domain_error("integrate: requires a <= b");
    if (a == b) return {0.0, 0.0};

    const PanelEval first = eval_panel(f, a, b);
    if (!std::isfinite(first.kronrod)) {
        throw std::domain_error("integrate: integrand is not finite on the interval");
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(first.kronrod));

    AdaptiveAccum acc;
    adapt(f, a, b, tol, 0, spec.max_depth, acc);
    if (!std::isfinite(acc.value)) {
        throw std::domain_error("integrate: integrand is not finite on the interval");
    }
    if (!acc.converged) {
        throw QuadratureError("integrate: no convergence within max_depth (estimate " +
                                  fmtg(acc.value) + ", bound " +
                                  fmtg(acc.bound) + ")",
                              acc.value, acc.bound);
    }
    return {acc.value, acc.bound};
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    return integrate_with_bound(f, a, b, spec).value;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    // Lanczos, g = 7, 9 coefficients (~15 significant digits).
    static const std::array<double, 9> coef = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // Reflection keeps the shifted argument comfortably positive.
        const double pi = 3.14159265358979323846264338327950288;
        return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double series = coef[0];
    for (int i = 1; i < 9; ++i) series += coef[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * 3.14159265358979323846264338327950288) +
           (z + 0.5) * std::log(t) - t + std::log(series);
}

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
    if (is_half_integer(x) && x <= 25.0) {
        // Exact recurrence from Gamma(1)=1 or Gamma(1/2)=sqrt(pi).
        const bool integral = std::floor(x) == x;
        double value = integral ? 1.0 : std::sqrt(3.14159265358979323846264338327950288);
        for (double t = integral ? 1.0 : 0.5; t < x - 0.25; t += 1.0) value *= t;
        return value;
    }
    return std::exp(log_gamma(x));
}

double upper_gamma(double a, double x) {
    if (x < 0.0) throw std::domain_error("upper_gamma: requires x >= 0");
    if (x == 0.0) {
        if (!(a > 0.0)) throw std::domain_error("upper_gamma: x == 0 requires a > 0");
        return gamma_fn(a);
    }
    if (a <= 0.0) {
        // The continued fraction handles any a once x is away from 0; for
        // small x descend by Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s,
        // starting from the fractional part or from Gamma(0, x) = E1(x).
        if (x >= 1.0) return upper_gamma_cf(a, x);
        const bool integral = std::floor(a) == a;
        const double s0 = integral ? 0.0 : a - std::floor(a);
        double g = integral ? e1_series(x) : gamma_fn(s0) - lower_gamma_series(s0, x);
        for (double s = s0 - 1.0; s >= a - 0.25; s -= 1.0) {
            g = (g - std::pow(x, s) * std::exp(-x)) / s;
        }
        return g;
    }
    if (x < a + 1.0) return gamma_fn(a) - lower_gamma_series(a, x);
    return upper_gamma_cf(a, x);
}

namespace {

// Truncation point T for \int s^p e^{-s^2/4} ds: once T >= 2 sqrt(max(1, p)),
// integration by parts gives tail(T) <= 4 T^{p-1} e^{-T^2/4}.
double tail_truncation_point(double p, double r0, double abs_tol) {
    double T = std::max({8.0, r0 + 2.0, 2.0 * std::sqrt(std::max(1.0, p))});
    while (4.0 * std::pow(T, p - 1.0) * std::exp(-T * T / 4.0) > 0.1 * abs_tol && T < 400.0) {
        T += 1.0;
    }
    return T;
}

double tail_integrand(double p, double s) { return std::pow(s, p) * std::exp(-s * s / 4.0); }

// Quadrature route. A power substitution u = s^{p+1}/(p+1) removes the
// endpoint singularity when p < 1 (needs p > -1, guaranteed when r0 == 0).
double weighted_tail_quadrature(double p, double r0, const QuadratureSpec& spec) {
    QuadratureSpec inner = spec;
    inner.abs_tol = spec.abs_tol / 4.0;
    inner.rel_tol = 1e-15;
    const double T = tail_truncation_point(p, r0, spec.abs_tol);

    const double cut = 1.0;
    double total = 0.0;
    if (p > -1.0 && p < 1.0 && r0 < cut) {
        const double q = p + 1.0;
        const double u0 = std::pow(r0, q) / q;
        const double u1 = std::pow(cut, q) / q;
        auto g = [q](double u) {
            const double s = std::pow(q * u, 1.0 / q);
            return std::exp(-s * s / 4.0);
        };
        total += integrate(g, u0, u1, inner);
        total += integrate([p](double s) { return tail_integrand(p, s); }, cut, T, inner);
    } else {
        total += integrate([p](double s) { return tail_integrand(p, s); }, r0, T, inner);
    }
    return total;
}

}  // namespace

WeightedTailPair weighted_tail_both(int n, double eps, double r0, const QuadratureSpec& spec) {
    spec.validate();
    if (n < 2) throw std::domain_error("weighted_tail: requires n >= 2");
    if (!(eps >= 0.0 && eps < 0.5 * n)) {
        throw std::domain_error("weighted_tail: requires 0 <= eps < n/2");
    }
    if (r0 < 0.0) throw std::domain_error("weighted_tail: requires r0 >= 0");
    if (r0 == 0.0 && !(n - 2.0 * n * eps > 0.0)) {
        throw std::domain_error("weighted_tail: r0 == 0 requires n - 2n*eps > 0");
    }

    const double p = n - 1.0 - 2.0 * n * eps;
    const double a = 0.5 * (n - 2.0 * n * eps);
    const double via_gamma = std::pow(2.0, p) * upper_gamma(a, r0 * r0 / 4.0);
    const double via_quad = weighted_tail_quadrature(p, r0, spec);
    return {via_quad, via_gamma};
}

double weighted_tail(int n, double eps, double r0, const QuadratureSpec& spec) {
    const WeightedTailPair pair = weighted_tail_both(n, eps, r0, spec);
    const double tol = 10.0 * spec.abs_tol;
    if (std::fabs(pair.quadrature - pair.gamma) > tol) {
        throw ConsistencyError("weighted_tail: quadrature and incomplete-gamma routes disagree",
                               pair.quadrature, pair.gamma, tol);
    }
    return pair.gamma;
}

double solve_threshold(const std::function<double(double)>& F, double target,
                       const Bracket& bracket, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_threshold: requires tol > 0");
    const double f_lo = F(bracket.lo);
    if (!(f_lo >= target)) {
        throw InfeasibleError("solve_threshold: F(lo) < target (F(lo) = " + fmtg(f_lo) +
                                  ", target = " + fmtg(target) + ")",
                              f_lo, target);
    }

    // Log-spaced scan grid; a nonpositive lo is replaced by hi*1e-300 for
    // spacing purposes (lo itself is already known admissible).
    constexpr int kScanPoints = 160;
    const double lo_eff = bracket.lo > 0.0 ? bracket.lo : bracket.hi * 1e-300;
    std::vector<double> grid;
    grid.reserve(kScanPoints + 1);
    grid.push_back(bracket.lo);
    const double llo = std::log(lo_eff);
    const double lhi = std::log(bracket.hi);
    for (int i = 0; i < kScanPoints; ++i) {
        double g = std::exp(llo + (lhi - llo) * (i + 1) / kScanPoints);
        g = std::min(g, bracket.hi);
        if (g > grid.back()) grid.push_back(g);
    }
    if (grid.back() < bracket.hi) grid.push_back(bracket.hi);

    double lo_ok = bracket.lo;
    for (int attempt = 0; attempt < 8; ++attempt) {
        // Scan upward for the first failing point past lo_ok.
        double hi_bad = -1.0;
        bool all_pass = true;
        for (double g : grid) {
            if (g <= lo_ok) continue;
            if (F(g) >= target) {
                lo_ok = g;
            } else {
                hi_bad = g;
                all_pass = false;
                break;
            }
        }
        if (all_pass) return bracket.hi;

        // Bisect [lo_ok, hi_bad] down to relative width tol.
        double a = lo_ok;
        double b = hi_bad;
        for (int it = 0; it < 1200 && b - a > tol * std::max(a, 1e-300); ++it) {
            const double mid = a > 0.0 ? std::sqrt(a * b) : 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (F(mid) >= target) {
                a = mid;
            } else {
                b = mid;
            }
        }
        // Certify the postcondition; a non-monotone F may recover just past
        // the crossing, in which case the scan resumes from there.
        const double probe = a * (1.0 + tol);
        if (probe >= bracket.hi || F(probe) < target) return a;
        lo_ok = probe;
    }
    return lo_ok;
}

}  // namespace solgap
