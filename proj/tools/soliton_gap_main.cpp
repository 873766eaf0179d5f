// soliton-gap: command-line front end for the shrinking-soliton gap toolkit.
//
// Commands:
//   gap        solve for the gap threshold eps* and write the bound report
//   chain      print the constant chain stage by stage and write the report
//   curve      emit log-spaced (eps, F(eps)) samples for plotting
//   verify     run the model-soliton verification suite
//   spaceform  evaluate the space-form ball volume V_H(r)
//
// Exit codes: 0 success/feasible, 1 usage or domain error, 2 infeasible,
// 3 verification failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "solgap/bound_chain.hpp"
#include "solgap/report_io.hpp"
#include "solgap/spaceform.hpp"
#include "solgap/verify_suite.hpp"

namespace {

using solgap::fmt17;

std::map<std::string, std::string> load_config() {
    std::map<std::string, std::string> cfg;
    const char* path = std::getenv("SOLITON_GAP_CONFIG");
    if (path == nullptr || *path == '\0') return cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("config file not readable: ") + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=', first);
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        cfg[trim(line.substr(first, eq - first))] = trim(line.substr(eq + 1));
    }
    return cfg;
}

// Applies a config value to any option the command line left untouched.
void apply_config(const std::map<std::string, std::string>& cfg, CLI::Option* opt,
                  const std::string& key) {
    if (opt == nullptr || opt->count() > 0) return;
    const auto it = cfg.find(key);
    if (it == cfg.end()) return;
    opt->add_result(it->second);
    opt->run_callback();
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << payload;
}

struct GapOpts {
    int n = 0;
    double A = 0.0;
    double v = 0.0;
    double eps_prime = std::numeric_limits<double>::quiet_NaN();
    bool sharp = false;
    int points = 64;
    std::string format = "json";
    std::string out;
    solgap::QuadratureSpec quad;
};

void add_quad_flags(CLI::App* cmd, solgap::QuadratureSpec& q) {
    cmd->add_option("--abs-tol", q.abs_tol, "quadrature absolute error target");
    cmd->add_option("--rel-tol", q.rel_tol, "quadrature relative error target");
    cmd->add_option("--max-depth", q.max_depth, "quadrature subdivision cap");
}

void require_eps_prime(const GapOpts& o) {
    if (std::isnan(o.eps_prime)) {
        throw std::domain_error(
            "missing --eps-prime: the Yokota gap constant eps'_n has no default and must "
            "be supplied");
    }
}

int run_gap_or_chain(const GapOpts& o, bool print_stages) {
    require_eps_prime(o);
    const solgap::GapInputs inputs{o.n, o.A, o.v, o.eps_prime};
    const solgap::BoundReport rep =
        solgap::full_report(inputs, o.quad, o.sharp, o.points);

    if (print_stages) {
        for (const solgap::Stage& s : rep.stages) {
            std::cout << s.name << " = " << fmt17(s.value) << "    [" << s.formula << "]\n";
        }
    }
    if (rep.result.feasible) {
        std::cout << "eps_star = " << fmt17(*rep.result.eps_star)
                  << "  (eps_cap = " << fmt17(rep.result.eps_cap)
                  << ", F(eps_star) = " << fmt17(rep.result.f_at_eps_star)
                  << ", target = " << fmt17(rep.result.target) << ")\n";
    } else {
        std::cout << "infeasible: " << rep.result.limiting_stage << "\n";
    }

    const std::string payload = o.format == "csv"
                                    ? solgap::report_to_csv(rep)
                                    : solgap::report_to_json(rep).dump(2) + "\n";
    emit(payload, o.out);
    return rep.result.feasible ? 0 : 2;
}

int run_curve(const GapOpts& o) {
    // eps_prime is optional here; a placeholder satisfies the input contract
    // without affecting the curve (it only enters the admissibility column).
    const bool have_target = !std::isnan(o.eps_prime);
    const solgap::GapInputs inputs{o.n, o.A, o.v, have_target ? o.eps_prime : 0.5};
    const solgap::BoundReport rep =
        solgap::full_report(inputs, o.quad, o.sharp, o.points);
    const std::optional<double> target =
        have_target ? std::optional<double>(o.eps_prime) : std::nullopt;
    const std::string payload = o.format == "csv"
                                    ? solgap::curve_to_csv(rep, target)
                                    : solgap::curve_to_json(rep, target).dump(2) + "\n";
    if (rep.curve.samples.empty()) {
        std::cerr << "note: admissible eps range is empty; " << rep.result.limiting_stage << "\n";
    }
    emit(payload, o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soliton-gap: certified constant chains, model-soliton verification, and "
                 "gap thresholds for shrinking gradient Ricci solitons"};
    app.require_subcommand(1);

    GapOpts gap_o, chain_o, curve_o;
    std::string verify_model, verify_format = "json", verify_out;
    int verify_n = 0;
    double verify_tol = std::numeric_limits<double>::quiet_NaN();
    solgap::QuadratureSpec verify_quad;
    int sf_n = 0;
    double sf_H = 0.0, sf_r = 0.0;
    std::string sf_out;
    solgap::QuadratureSpec sf_quad;

    auto add_gap_flags = [&](CLI::App* cmd, GapOpts& o) {
        std::map<std::string, CLI::Option*> opts;
        opts["n"] = cmd->add_option("--n", o.n, "manifold dimension (>= 2)");
        opts["A"] = cmd->add_option("--A", o.A, "sectional curvature upper bound (> 0)");
        opts["v"] = cmd->add_option("--v", o.v, "f-volume floor, in (0, 1]");
        opts["eps_prime"] =
            cmd->add_option("--eps-prime", o.eps_prime, "Yokota gap constant eps'_n, in (0, 1)");
        opts["sharp_constant"] = cmd->add_flag("--sharp-constant", o.sharp,
                                               "use the 36 + 1/e coefficient instead of 37");
        opts["points"] =
            cmd->add_option("--points", o.points, "curve sample count (at least 50 in reports)");
        opts["format"] = cmd->add_option("--format", o.format, "json or csv")
                             ->check(CLI::IsMember({"json", "csv"}));
        opts["out"] = cmd->add_option("--out", o.out, "output file path (default: stdout)");
        add_quad_flags(cmd, o.quad);
        return opts;
    };

    CLI::App* gap_cmd = app.add_subcommand("gap", "solve for the gap threshold eps*");
    auto gap_opts = add_gap_flags(gap_cmd, gap_o);
    CLI::App* chain_cmd = app.add_subcommand("chain", "print the full constant chain");
    auto chain_opts = add_gap_flags(chain_cmd, chain_o);
    CLI::App* curve_cmd = app.add_subcommand("curve", "emit (eps, F(eps)) samples");
    auto curve_opts = add_gap_flags(curve_cmd, curve_o);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the model verification suite");
    CLI::Option* v_model = verify_cmd->add_option("--model", verify_model,
                                                  "restrict to one model")
                               ->check(CLI::IsMember({"gaussian", "sphere", "cylinder"}));
    CLI::Option* v_n = verify_cmd->add_option("--n", verify_n, "restrict to one dimension");
    CLI::Option* v_tol =
        verify_cmd->add_option("--tol", verify_tol, "override every check tolerance");
    CLI::Option* v_format = verify_cmd->add_option("--format", verify_format, "json or csv")
                                ->check(CLI::IsMember({"json", "csv"}));
    CLI::Option* v_out = verify_cmd->add_option("--out", verify_out, "output file path");
    add_quad_flags(verify_cmd, verify_quad);

    CLI::App* sf_cmd = app.add_subcommand("spaceform", "evaluate V_H(r)");
    sf_cmd->add_option("--n", sf_n, "dimension (>= 2)")->required();
    sf_cmd->add_option("--H", sf_H, "constant sectional curvature")->required();
    sf_cmd->add_option("--r", sf_r, "ball radius")->required();
    sf_cmd->add_option("--out", sf_out, "output file path");
    add_quad_flags(sf_cmd, sf_quad);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const auto cfg = load_config();
        const std::pair<CLI::App*, std::map<std::string, CLI::Option*>*> cfg_targets[] = {
            {gap_cmd, &gap_opts}, {chain_cmd, &chain_opts}, {curve_cmd, &curve_opts}};
        for (const auto& [cmd, opts] : cfg_targets) {
            if (!cmd->parsed()) continue;
            for (auto& [key, opt] : *opts) apply_config(cfg, opt, key);
        }
        if (verify_cmd->parsed()) {
            apply_config(cfg, v_model, "model");
            apply_config(cfg, v_n, "n");
            apply_config(cfg, v_tol, "tol");
            apply_config(cfg, v_format, "format");
            apply_config(cfg, v_out, "out");
        }

        if (gap_cmd->parsed()) return run_gap_or_chain(gap_o, false);
        if (chain_cmd->parsed()) return run_gap_or_chain(chain_o, true);
        if (curve_cmd->parsed()) return run_curve(curve_o);
        if (verify_cmd->parsed()) {
            solgap::VerifyFilter filter;
            if (v_model->count() > 0) filter.model = verify_model;
            if (v_n->count() > 0) filter.n = verify_n;
            if (!std::isnan(verify_tol)) filter.tol_override = verify_tol;
            const solgap::VerifySuiteResult res = solgap::run_verify_suite(filter, verify_quad);
            const std::string payload = verify_format == "csv"
                                            ? solgap::verify_to_csv(res)
                                            : solgap::verify_to_json(res).dump(2) + "\n";
            emit(payload, verify_out);
            if (!res.all_passed()) {
                for (const solgap::VerifyRow& r : res.rows) {
                    if (r.status == "fail") {
                        std::cerr << "FAIL " << r.model << " n=" << r.n << " " << r.check << " ("
                                  << r.detail << ")\n";
                    }
                }
                return 3;
            }
            return 0;
        }
        if (sf_cmd->parsed()) {
            const double vol = solgap::model_volume({sf_n, sf_H}, sf_r, sf_quad);
            emit(fmt17(vol) + "\n", sf_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
