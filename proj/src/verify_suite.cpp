#include "solgap/verify_suite.hpp"

#include <cmath>
#include <sstream>

#include "solgap/report_io.hpp"
#include "solgap/spaceform.hpp"

namespace solgap {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::vector<double> linspace(double a, double b, int count) {
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(a + (b - a) * i / (count - 1));
    return out;
}

std::vector<double> residual_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 100; ++i) grid.push_back(0.1 * i);
    return grid;
}

// Independent closed forms for the normalized f-volume.
double expected_f_volume(const ModelSoliton& m) {
    const int n = m.dimension();
    const double norm = std::pow(4.0 * kPi, -0.5 * n);
    switch (m.kind()) {
        case ModelKind::gaussian:
            return 1.0;
        case ModelKind::sphere: {
            const double area = 2.0 * std::pow(kPi, 0.5 * (n + 1)) / gamma_fn(0.5 * (n + 1));
            const double vol = area * std::pow(2.0 * (n - 1), 0.5 * n);
            return norm * std::exp(-0.5 * n) * vol;
        }
        case ModelKind::cylinder: {
            const double area = 2.0 * std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n);
            const double sigma = area * std::pow(2.0 * (n - 2), 0.5 * (n - 1));
            // axial integral of e^{-t^2/4} over the line is 2 sqrt(pi)
            return norm * std::exp(-0.5 * (n - 1)) * sigma * 2.0 * std::sqrt(kPi);
        }
    }
    return 0.0;
}

struct RowBuilder {
    VerifySuiteResult* out;
    void add(const std::string& model, int n, const std::string& check, bool pass, double value,
             double tol, const std::string& detail = "") {
        out->rows.push_back({model, n, check, pass ? "pass" : "fail", value, tol, detail});
        if (pass) {
            ++out->passed;
        } else {
            ++out->failed;
        }
    }
    void skip(const std::string& model, int n, const std::string& check,
              const std::string& detail) {
        out->rows.push_back({model, n, check, "skip", 0.0, 0.0, detail});
        ++out->skipped;
    }
};

void run_model_checks(const ModelSoliton& m, double tol_or_default, bool has_override,
                      const QuadratureSpec& q, RowBuilder& rb) {
    const std::string name = m.name();
    const int n = m.dimension();
    auto tol = [&](double def) { return has_override ? tol_or_default : def; };

    // Pointwise soliton identities on a chart grid.
    std::vector<double> samples;
    if (m.kind() == ModelKind::sphere) {
        samples = linspace(0.0, m.chart_limit(), 25);
    } else if (m.kind() == ModelKind::cylinder) {
        samples = linspace(-8.0, 8.0, 33);
    } else {
        samples = linspace(0.0, 8.0, 25);
    }
    const double id_tol = tol(1e-12);
    const IdentityReport id = verify_identities(m, samples, id_tol);
    rb.add(name, n, "identities", id.pass,
           std::max(id.max_traced_residual, id.max_potential_residual), id_tol, id.failure);

    // Coarea residual scaled by 1 + V(r), closed-form and finite-difference.
    const std::vector<double> grid = residual_grid();
    for (const bool fd : {false, true}) {
        double worst = 0.0;
        bool sign_ok = true;
        for (double r : grid) {
            const CoareaResidual res = coarea_residual(
                m, r, q, fd ? DerivativeMode::finite_difference : DerivativeMode::closed_form);
            worst = std::max(worst, res.residual / (1.0 + m.V(r)));
            sign_ok = sign_ok && res.sign_ok;
        }
        const double t = tol(fd ? 1e-6 : 1e-9);
        rb.add(name, n, fd ? "coarea_fd" : "coarea", worst <= t && sign_ok, worst, t,
               sign_ok ? "" : "sign check nV - 2chi >= 0 violated");
    }

    // Growth bounds; the sphere saturates R = n/2, so its hypothesis window
    // sup R <= delta < n/2 is empty.
    if (m.kind() == ModelKind::sphere) {
        rb.skip(name, n, "growth", "hypothesis sup R <= delta < n/2 is empty (sup R = n/2)");
    } else {
        std::vector<std::pair<std::string, double>> deltas;
        if (m.kind() == ModelKind::gaussian) {
            deltas = {{"growth_delta0", 0.0}, {"growth_delta0.1", 0.1}};
        } else {
            deltas = {{"growth_supR", 0.5 * (n - 1)}};
        }
        const double r0 = 0.1;
        std::vector<double> rest(grid.begin() + 1, grid.end());
        for (const auto& [label, delta] : deltas) {
            const GrowthCheckReport rep = growth_bound_check(m, delta, r0, rest, q);
            const double violation =
                std::max(0.0, -std::min(rep.worst_margin, rep.worst_area_margin));
            rb.add(name, n, label, rep.pass, violation, 0.0, rep.failure);
        }
    }

    // f-volume against the independent closed form.
    const double fv = f_volume(m, q);
    const double fv_expected = expected_f_volume(m);
    const double fv_tol = tol(1e-8);
    rb.add(name, n, "f_volume", std::fabs(fv - fv_expected) <= fv_tol,
           std::fabs(fv - fv_expected), fv_tol,
           "computed " + fmt17(fv) + " vs closed form " + fmt17(fv_expected));
}

}  // namespace

std::vector<RadialProfile> gaussian_logsob_profiles(int n) {
    std::vector<RadialProfile> out;
    const double c0 = std::pow(4.0 * kPi, -0.25 * n);

    out.push_back({[c0](double s) { return c0 * std::exp(-s * s / 8.0); },
                   [c0](double s) { return -0.25 * s * c0 * std::exp(-s * s / 8.0); }, 45.0,
                   "gaussian_optimal"});
    out.push_back({[c0](double s) { return 2.0 * c0 * std::exp(-s * s / 8.0); },
                   [c0](double s) { return -0.5 * s * c0 * std::exp(-s * s / 8.0); }, 45.0,
                   "gaussian_optimal_x2"});
    out.push_back({[](double s) { return std::exp(-s * s / 16.0); },
                   [](double s) { return -0.125 * s * std::exp(-s * s / 16.0); }, 45.0,
                   "gaussian_wide"});
    out.push_back({[](double s) { return std::exp(-s * s / 4.0); },
                   [](double s) { return -0.5 * s * std::exp(-s * s / 4.0); }, 45.0,
                   "gaussian_narrow"});
    out.push_back({[](double s) {
                       const double w = 1.0 - s * s / 16.0;
                       return s < 4.0 ? w * w : 0.0;
                   },
                   [](double s) {
                       const double w = 1.0 - s * s / 16.0;
                       return s < 4.0 ? -0.25 * s * w : 0.0;
                   },
                   4.0, "bump4"});
    // bump4 normalized to unit mass (fixed constants per dimension, computed
    // once from the shell integral of (1 - (s/4)^2)^4 s^{n-1}).
    {
        QuadratureSpec q;
        const double mass =
            n * unit_ball_volume(n) *
            integrate(
                [n](double s) {
                    const double w = 1.0 - s * s / 16.0;
                    return w * w * w * w * std::pow(s, n - 1);
                },
                0.0, 4.0, q);
        const double c = 1.0 / std::sqrt(mass);
        out.push_back({[c](double s) {
                           const double w = 1.0 - s * s / 16.0;
                           return s < 4.0 ? c * w * w : 0.0;
                       },
                       [c](double s) {
                           const double w = 1.0 - s * s / 16.0;
                           return s < 4.0 ? -0.25 * c * s * w : 0.0;
                       },
                       4.0, "bump4_unit_mass"});
    }
    out.push_back({[](double s) {
                       const double w = 1.0 - s * s / 64.0;
                       return s < 8.0 ? w * w * w : 0.0;
                   },
                   [](double s) {
                       const double w = 1.0 - s * s / 64.0;
                       return s < 8.0 ? -(3.0 / 32.0) * s * w * w : 0.0;
                   },
                   8.0, "bump8_cubed"});
    out.push_back({[](double s) { return (1.0 + s * s / 8.0) * std::exp(-s * s / 8.0); },
                   [](double s) { return -(s * s * s / 32.0) * std::exp(-s * s / 8.0); }, 45.0,
                   "gauss_poly"});
    out.push_back(
        {[](double s) { return std::exp(-s * s / 8.0) + 0.5 * std::exp(-s * s / 6.0); },
         [](double s) {
             return -0.25 * s * std::exp(-s * s / 8.0) - (s / 6.0) * std::exp(-s * s / 6.0);
         },
         45.0, "two_widths"});
    out.push_back({[](double s) { return std::exp(-s * s / 8.0) * (2.0 + std::cos(s)); },
                   [](double s) {
                       return std::exp(-s * s / 8.0) *
                              (-0.25 * s * (2.0 + std::cos(s)) - std::sin(s));
                   },
                   45.0, "modulated"});
    return out;
}

double gaussian_logsob_closed_form_deficit(int n) { return n + 0.5 * n * std::log(4.0 * kPi); }

VerifySuiteResult run_verify_suite(const VerifyFilter& filter, const QuadratureSpec& q) {
    VerifySuiteResult out;
    RowBuilder rb{&out};
    const bool has_override = filter.tol_override.has_value();
    const double tol_value = filter.tol_override.value_or(0.0);

    auto wanted = [&](const std::string& model, int n) {
        if (filter.model && *filter.model != model) return false;
        if (filter.n && *filter.n != n) return false;
        return true;
    };

    for (int n = 2; n <= 6; ++n) {
        if (wanted("gaussian", n)) {
            run_model_checks(ModelSoliton::gaussian(n), tol_value, has_override, q, rb);
        }
        if (wanted("sphere", n)) {
            run_model_checks(ModelSoliton::sphere(n), tol_value, has_override, q, rb);
        }
        if (n >= 3 && wanted("cylinder", n)) {
            run_model_checks(ModelSoliton::cylinder(n), tol_value, has_override, q, rb);
        }
    }

    // Log-Sobolev deficits on the Gaussian model.
    for (int n = 2; n <= 6; ++n) {
        if (!wanted("gaussian", n)) continue;
        const auto profiles = gaussian_logsob_profiles(n);
        const double neg_tol = has_override ? tol_value : 1e-9;
        for (const RadialProfile& p : profiles) {
            const double deficit = logsob_deficit(p, n, q);
            rb.add("gaussian", n, "logsob:" + p.label, deficit >= -neg_tol, deficit, neg_tol,
                   "deficit must be >= -tol");
        }
        const double match_tol = has_override ? tol_value : 1e-8;
        const double got = logsob_deficit(profiles[0], n, q);
        const double want = gaussian_logsob_closed_form_deficit(n);
        rb.add("gaussian", n, "logsob_closed_form", std::fabs(got - want) <= match_tol,
               std::fabs(got - want), match_tol, "deficit of the normalized Gaussian profile");
        const double got2 = logsob_deficit(profiles[1], n, q);
        rb.add("gaussian", n, "logsob_scaling", std::fabs(got2 - 4.0 * want) <= 4.0 * match_tol,
               std::fabs(got2 - 4.0 * want), 4.0 * match_tol,
               "deficit is quadratically homogeneous in the profile");
    }
    return out;
}

nlohmann::ordered_json verify_to_json(const VerifySuiteResult& result) {
    nlohmann::ordered_json j;
    j["schema_version"] = "1";
    j["header"] = nlohmann::ordered_json{{"tool", "soliton-gap"}, {"report", "verify"}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const VerifyRow& r : result.rows) {
        rows.push_back(nlohmann::ordered_json{
            {"model", r.model},
            {"n", r.n},
            {"check", r.check},
            {"status", r.status},
            {"value", fmt17(r.value)},
            {"tolerance", fmt17(r.tolerance)},
            {"detail", r.detail},
        });
    }
    j["checks"] = rows;
    j["result"] = nlohmann::ordered_json{
        {"passed", result.passed}, {"failed", result.failed}, {"skipped", result.skipped}};
    return j;
}

std::string verify_to_csv(const VerifySuiteResult& result) {
    std::ostringstream os;
    os << "model,n,check,status,value,tolerance,detail\n";
    for (const VerifyRow& r : result.rows) {
        std::string detail = r.detail;
        for (char& c : detail) {
            if (c == ',') c = ';';
        }
        os << r.model << "," << r.n << "," << r.check << "," << r.status << "," << fmt17(r.value)
           << "," << fmt17(r.tolerance) << "," << detail << "\n";
    }
    return os.str();
}

}  // namespace solgap
