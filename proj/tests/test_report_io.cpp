#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "solgap/report_io.hpp"
#include "solgap/verify_suite.hpp"

using namespace solgap;

TEST_CASE("number encoding is bit-exact through the hex field") {
    for (double x : {0.0, 1.0, -1.0, 0.1, 4.0 * std::atan(1.0), 1e-300, 8.625185724586784e-267,
                     std::exp(-149.0), -2.5e17, 5e-324}) {
        const ordered_json j = number_json(x);
        CHECK(number_from_json(j) == x);
        CHECK(j.at("dec").get<std::string>() == fmt17(x));
    }
}

TEST_CASE("bound report JSON round-trips byte-identically") {
    const QuadratureSpec q;
    for (const GapInputs& in : {GapInputs{2, 1.0, 0.5, 0.05}, GapInputs{3, 1.0, 0.5, 0.05}}) {
        const BoundReport rep = full_report(in, q);
        const std::string first = report_to_json(rep).dump(2);
        const BoundReport parsed = report_from_json(ordered_json::parse(first));
        const std::string second = report_to_json(parsed).dump(2);
        CHECK(first == second);
        CHECK(parsed.result.feasible == rep.result.feasible);
        CHECK(parsed.C_noncollapse == rep.C_noncollapse);
        CHECK(parsed.curve.samples.size() == rep.curve.samples.size());
    }
}

TEST_CASE("CSV emission: header, LF endings, column counts") {
    const QuadratureSpec q;
    const BoundReport rep = full_report({2, 1.0, 0.5, 0.05}, q);

    const std::string report_csv = report_to_csv(rep);
    CHECK(report_csv.rfind("section,name,value,value_hex,detail\n", 0) == 0);
    CHECK(report_csv.find('\r') == std::string::npos);

    const std::string plain = curve_to_csv(rep, std::nullopt);
    CHECK(plain.rfind("eps,F\n", 0) == 0);
    const std::string with_target = curve_to_csv(rep, 0.05);
    CHECK(with_target.rfind("eps,F,admissible\n", 0) == 0);
    size_t lines = 0;
    for (char c : with_target) lines += (c == '\n');
    CHECK(lines == rep.curve.samples.size() + 1);
    // Every data row of the admissible curve ends with 0 or 1.
    size_t pos = with_target.find('\n') + 1;
    while (pos < with_target.size()) {
        const size_t end = with_target.find('\n', pos);
        const std::string row = with_target.substr(pos, end - pos);
        CHECK((row.back() == '0' || row.back() == '1'));
        pos = end + 1;
    }
}

TEST_CASE("curve JSON carries the domain note and admissibility") {
    const QuadratureSpec q;
    const BoundReport feasible = full_report({2, 1.0, 0.5, 0.05}, q);
    const ordered_json with = curve_to_json(feasible, 0.05);
    CHECK(with.at("target").at("dec").get<std::string>() == fmt17(0.95));
    CHECK(with.at("samples").size() == feasible.curve.samples.size());
    CHECK(with.at("samples").at(0).contains("admissible"));
    const ordered_json without = curve_to_json(feasible, std::nullopt);
    CHECK_FALSE(without.contains("target"));
    CHECK_FALSE(without.at("samples").at(0).contains("admissible"));

    const BoundReport infeasible = full_report({3, 1.0, 0.5, 0.05}, q);
    const ordered_json empty = curve_to_json(infeasible, 0.05);
    CHECK(empty.at("samples").empty());
    CHECK(empty.at("domain").at("note").get<std::string>().find("empty") != std::string::npos);
}

TEST_CASE("verify suite serialization shapes") {
    const QuadratureSpec q;
    VerifyFilter filter;
    filter.model = "sphere";
    filter.n = 3;
    const VerifySuiteResult res = run_verify_suite(filter, q);
    CHECK(res.failed == 0);
    CHECK(res.skipped >= 1);  // the sphere growth-bound row is a documented skip
    for (const VerifyRow& r : res.rows) {
        CHECK(r.model == "sphere");
        CHECK(r.n == 3);
    }
    const ordered_json j = verify_to_json(res);
    CHECK(j.at("checks").size() == res.rows.size());
    CHECK(j.at("result").at("failed").get<int>() == 0);
    const std::string csv = verify_to_csv(res);
    CHECK(csv.rfind("model,n,check,status,value,tolerance,detail\n", 0) == 0);
}
