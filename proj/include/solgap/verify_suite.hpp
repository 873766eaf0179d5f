#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "solgap/models.hpp"

namespace solgap {

/// One verification row: a single check on a single model.
struct VerifyRow {
    std::string model;
    int n = 0;
    std::string check;
    std::string status;  // "pass" | "fail" | "skip"
    double value = 0.0;  // achieved residual / violation measure
    double tolerance = 0.0;
    std::string detail;
};

struct VerifySuiteResult {
    std::vector<VerifyRow> rows;
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    bool all_passed() const { return failed == 0; }
};

struct VerifyFilter {
    std::optional<std::string> model;  // gaussian | sphere | cylinder
    std::optional<int> n;
    std::optional<double> tol_override;  // replaces every row's default tolerance
};

/// Model-soliton verification: pointwise identities, the coarea residual on
/// r in {0.1, ..., 10}, the growth bounds, f-volumes against closed forms,
/// and log-Sobolev deficits on the Gaussian model, for n in {2..6}
/// (cylinder from 3).
VerifySuiteResult run_verify_suite(const VerifyFilter& filter, const QuadratureSpec& q);

/// Radial profiles for the Gaussian log-Sobolev check. The first is the
/// normalized Gaussian profile with closed-form deficit n + (n/2) log(4 pi);
/// the second is that profile scaled by 2 (deficit scales by 4).
std::vector<RadialProfile> gaussian_logsob_profiles(int n);
double gaussian_logsob_closed_form_deficit(int n);

nlohmann::ordered_json verify_to_json(const VerifySuiteResult& result);
std::string verify_to_csv(const VerifySuiteResult& result);

}  // namespace solgap
