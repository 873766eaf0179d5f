#include "solgap/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace solgap {

namespace {
constexpr const char* kSchemaVersion = "1";
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_hex(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

ordered_json number_json(double x) {
    return ordered_json{{"dec", fmt17(x)}, {"hex", fmt_hex(x)}};
}

double number_from_json(const ordered_json& j) {
    return std::strtod(j.at("hex").get<std::string>().c_str(), nullptr);
}

ordered_json report_to_json(const BoundReport& rep) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["header"] = ordered_json{{"tool", "soliton-gap"}, {"report", "bound-chain"}};
    j["inputs"] = ordered_json{
        {"n", rep.inputs.n},
        {"A", number_json(rep.inputs.A)},
        {"v", number_json(rep.inputs.v)},
        {"eps_prime", number_json(rep.inputs.eps_prime)},
        {"sharp_constant", rep.sharp_constant},
    };
    j["quadrature"] = ordered_json{
        {"abs_tol", number_json(rep.quadrature.abs_tol)},
        {"rel_tol", number_json(rep.quadrature.rel_tol)},
        {"max_depth", rep.quadrature.max_depth},
    };
    ordered_json stages = ordered_json::array();
    for (const Stage& s : rep.stages) {
        stages.push_back(ordered_json{
            {"name", s.name},
            {"formula", s.formula},
            {"value", number_json(s.value)},
            {"assumptions", s.assumptions},
        });
    }
    j["stages"] = stages;
    ordered_json result;
    result["feasible"] = rep.result.feasible;
    result["target"] = number_json(rep.result.target);
    result["eps_cap"] = number_json(rep.result.eps_cap);
    if (rep.result.feasible) {
        result["eps_star"] = number_json(*rep.result.eps_star);
        result["F_at_eps_star"] = number_json(rep.result.f_at_eps_star);
    } else {
        result["eps_star"] = nullptr;
        result["limiting_stage"] = rep.result.limiting_stage;
    }
    j["result"] = result;
    ordered_json curve = ordered_json::array();
    for (const FCurvePoint& p : rep.curve.samples) {
        curve.push_back(ordered_json{{"eps", number_json(p.eps)}, {"F", number_json(p.F)}});
    }
    j["curve"] = curve;
    return j;
}

BoundReport report_from_json(const ordered_json& j) {
    BoundReport rep;
    const auto& in = j.at("inputs");
    rep.inputs.n = in.at("n").get<int>();
    rep.inputs.A = number_from_json(in.at("A"));
    rep.inputs.v = number_from_json(in.at("v"));
    rep.inputs.eps_prime = number_from_json(in.at("eps_prime"));
    rep.sharp_constant = in.at("sharp_constant").get<bool>();
    const auto& q = j.at("quadrature");
    rep.quadrature.abs_tol = number_from_json(q.at("abs_tol"));
    rep.quadrature.rel_tol = number_from_json(q.at("rel_tol"));
    rep.quadrature.max_depth = q.at("max_depth").get<int>();
    for (const auto& s : j.at("stages")) {
        Stage st;
        st.name = s.at("name").get<std::string>();
        st.formula = s.at("formula").get<std::string>();
        st.value = number_from_json(s.at("value"));
        st.assumptions = s.at("assumptions").get<std::vector<std::string>>();
        rep.stages.push_back(st);
        if (st.name == "C1") rep.C1 = st.value;
        if (st.name == "H") rep.H = st.value;
        if (st.name == "C2") rep.C2 = st.value;
        if (st.name == "C_noncollapse") rep.C_noncollapse = st.value;
        if (st.name == "volB1_lower") rep.volB1_lower = st.value;
        if (st.name == "inj_lower") rep.inj_lower = st.value;
        if (st.name == "C0") rep.C0 = st.value;
    }
    const auto& res = j.at("result");
    rep.result.feasible = res.at("feasible").get<bool>();
    rep.result.target = number_from_json(res.at("target"));
    rep.result.eps_cap = number_from_json(res.at("eps_cap"));
    if (rep.result.feasible) {
        rep.result.eps_star = number_from_json(res.at("eps_star"));
        rep.result.f_at_eps_star = number_from_json(res.at("F_at_eps_star"));
    } else {
        rep.result.limiting_stage = res.at("limiting_stage").get<std::string>();
    }
    for (const auto& p : j.at("curve")) {
        rep.curve.samples.push_back(
            {number_from_json(p.at("eps")), number_from_json(p.at("F"))});
    }
    return rep;
}

std::string report_to_csv(const BoundReport& rep) {
    std::ostringstream os;
    os << "section,name,value,value_hex,detail\n";
    os << "input,n," << rep.inputs.n << "," << fmt_hex(static_cast<double>(rep.inputs.n)) << ",\n";
    os << "input,A," << fmt17(rep.inputs.A) << "," << fmt_hex(rep.inputs.A) << ",\n";
    os << "input,v," << fmt17(rep.inputs.v) << "," << fmt_hex(rep.inputs.v) << ",\n";
    os << "input,eps_prime," << fmt17(rep.inputs.eps_prime) << "," << fmt_hex(rep.inputs.eps_prime)
       << ",\n";
    for (const Stage& s : rep.stages) {
        std::string formula = s.formula;
        for (char& c : formula) {
            if (c == ',') c = ';';
        }
        os << "stage," << s.name << "," << fmt17(s.value) << "," << fmt_hex(s.value) << ","
           << formula << "\n";
    }
    os << "result,feasible," << (rep.result.feasible ? 1 : 0) << ",,\n";
    os << "result,eps_cap," << fmt17(rep.result.eps_cap) << "," << fmt_hex(rep.result.eps_cap)
       << ",\n";
    if (rep.result.feasible) {
        os << "result,eps_star," << fmt17(*rep.result.eps_star) << ","
           << fmt_hex(*rep.result.eps_star) << ",\n";
        os << "result,F_at_eps_star," << fmt17(rep.result.f_at_eps_star) << ","
           << fmt_hex(rep.result.f_at_eps_star) << ",\n";
    } else {
        std::string stage = rep.result.limiting_stage;
        for (char& c : stage) {
            if (c == ',') c = ';';
        }
        os << "result,limiting_stage,,," << stage << "\n";
    }
    for (const FCurvePoint& p : rep.curve.samples) {
        os << "curve," << fmt17(p.eps) << "," << fmt17(p.F) << "," << fmt_hex(p.F) << ",\n";
    }
    return os.str();
}

ordered_json curve_to_json(const BoundReport& rep, std::optional<double> eps_prime) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["header"] = ordered_json{{"tool", "soliton-gap"}, {"report", "f-curve"}};
    j["inputs"] = ordered_json{
        {"n", rep.inputs.n},
        {"A", number_json(rep.inputs.A)},
        {"v", number_json(rep.inputs.v)},
    };
    if (eps_prime) {
        j["inputs"]["eps_prime"] = number_json(*eps_prime);
        j["target"] = number_json(1.0 - *eps_prime);
    }
    j["domain"] = ordered_json{
        {"eps_cap", number_json(rep.result.eps_cap)},
        {"note", rep.curve.samples.empty()
                     ? "admissible eps range is empty; " + rep.result.limiting_stage
                     : "grid truncated to the admissible window (0, eps_cap]"},
    };
    ordered_json rows = ordered_json::array();
    for (const FCurvePoint& p : rep.curve.samples) {
        ordered_json row{{"eps", number_json(p.eps)}, {"F", number_json(p.F)}};
        if (eps_prime) row["admissible"] = (p.F >= 1.0 - *eps_prime);
        rows.push_back(row);
    }
    j["samples"] = rows;
    return j;
}

std::string curve_to_csv(const BoundReport& rep, std::optional<double> eps_prime) {
    std::ostringstream os;
    os << (eps_prime ? "eps,F,admissible\n" : "eps,F\n");
    for (const FCurvePoint& p : rep.curve.samples) {
        os << fmt17(p.eps) << "," << fmt17(p.F);
        if (eps_prime) os << "," << (p.F >= 1.0 - *eps_prime ? 1 : 0);
        os << "\n";
    }
    return os.str();
}

}  // namespace solgap
