#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

std::string g_cli;
std::string g_dir;

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string out_path = g_dir + "/out.txt";
    const std::string err_path = g_dir + "/err.txt";
    const std::string cmd =
        env_prefix + " " + g_cli + " " + args + " > " + out_path + " 2> " + err_path;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = (raw == -1) ? -1 : WEXITSTATUS(raw);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

}  // namespace

TEST_CASE("usage and domain errors exit with code 1") {
    const RunResult missing = run("gap --n 3 --A 1 --v 0.5");
    CHECK(missing.code == 1);
    CHECK(missing.err.find("Yokota") != std::string::npos);

    const RunResult bad_dim = run("gap --n 1 --A 1 --v 0.5 --eps-prime 0.05");
    CHECK(bad_dim.code == 1);
    CHECK(bad_dim.err.find("n >= 2") != std::string::npos);

    const RunResult unknown = run("gap --bogus 1");
    CHECK(unknown.code == 1);

    const RunResult no_cmd = run("");
    CHECK(no_cmd.code == 1);
}

TEST_CASE("gap: feasible run writes a deterministic report, infeasible exits 2") {
    const std::string f1 = g_dir + "/gap1.json";
    const std::string f2 = g_dir + "/gap2.json";
    const std::string base = "gap --n 2 --A 1 --v 0.5 --eps-prime 0.05 --out ";
    const RunResult r1 = run(base + f1);
    const RunResult r2 = run(base + f2);
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    CHECK(r1.out.find("eps_star") != std::string::npos);
    const std::string b1 = slurp(f1);
    CHECK(!b1.empty());
    CHECK(b1 == slurp(f2));
    CHECK(b1.find("\"feasible\": true") != std::string::npos);

    const RunResult inf = run("gap --n 3 --A 1 --v 0.5 --eps-prime 0.05 --out " + g_dir +
                              "/gap3.json");
    CHECK(inf.code == 2);
    CHECK(inf.out.find("infeasible") != std::string::npos);
    CHECK(slurp(g_dir + "/gap3.json").find("\"feasible\": false") != std::string::npos);
}

TEST_CASE("chain prints the stage trace") {
    const RunResult r = run("chain --n 2 --A 1 --v 1 --eps-prime 0.5 --out " + g_dir +
                            "/chain.json");
    CHECK(r.code == 0);
    for (const char* stage : {"C1", "C2", "C_noncollapse", "volB1_lower", "inj_lower", "C0"}) {
        CHECK(r.out.find(stage) != std::string::npos);
    }
    const RunResult csv = run("chain --n 2 --A 1 --v 1 --eps-prime 0.5 --format csv --out " +
                              g_dir + "/chain.csv");
    CHECK(csv.code == 0);
    const std::string body = slurp(g_dir + "/chain.csv");
    CHECK(body.rfind("section,name,value,value_hex,detail\n", 0) == 0);
    CHECK(body.find("stage,C_noncollapse,") != std::string::npos);
}

TEST_CASE("curve: row counts, admissibility column, empty domain") {
    const RunResult csv = run("curve --n 2 --A 1 --v 0.5 --points 100 --format csv");
    CHECK(csv.code == 0);
    size_t lines = 0;
    for (char c : csv.out) lines += (c == '\n');
    CHECK(lines == 101);  // header + 100 rows
    CHECK(csv.out.rfind("eps,F\n", 0) == 0);

    const RunResult with_target =
        run("curve --n 2 --A 1 --v 0.5 --points 60 --eps-prime 0.05 --format csv");
    CHECK(with_target.code == 0);
    CHECK(with_target.out.rfind("eps,F,admissible\n", 0) == 0);

    // Empty admissible range: data (header only), not a failure.
    const RunResult empty = run("curve --n 3 --A 1 --v 0.5 --points 60 --format csv");
    CHECK(empty.code == 0);
    CHECK(empty.out == "eps,F\n");
}

TEST_CASE("spaceform: values and the positive-curvature cap") {
    const RunResult sphere = run("spaceform --n 2 --H 1 --r 3.14159265");
    CHECK(sphere.code == 0);
    CHECK(std::strtod(sphere.out.c_str(), nullptr) == doctest::Approx(4.0 * 3.14159265358979324).epsilon(1e-6));

    const RunResult flat = run("spaceform --n 3 --H 0 --r 1");
    CHECK(flat.code == 0);
    CHECK(std::strtod(flat.out.c_str(), nullptr) ==
          doctest::Approx(4.0 * 3.14159265358979324 / 3.0).epsilon(1e-10));

    const RunResult capped = run("spaceform --n 2 --H 1 --r 4");
    CHECK(capped.code == 1);
    CHECK(capped.err.find("pi/sqrt(H)") != std::string::npos);
}

TEST_CASE("verify: full suite, filtered run, forced failure via --tol") {
    const RunResult full = run("verify --format csv");
    CHECK(full.code == 0);
    CHECK(full.out.find(",fail,") == std::string::npos);
    // One block per model/dimension pair: gaussian and sphere from 2, cylinder from 3.
    for (const char* row : {"gaussian,2,", "gaussian,6,", "sphere,2,", "sphere,6,",
                            "cylinder,3,", "cylinder,6,"}) {
        CHECK(full.out.find(row) != std::string::npos);
    }

    const RunResult subset = run("verify --model gaussian --n 4 --format csv");
    CHECK(subset.code == 0);
    CHECK(subset.out.rfind("model,n,check,status", 0) == 0);
    CHECK(subset.out.find("sphere") == std::string::npos);
    CHECK(subset.out.find("gaussian,4,") != std::string::npos);

    const RunResult forced = run("verify --model gaussian --n 2 --tol 1e-30");
    CHECK(forced.code == 3);
    CHECK(forced.err.find("FAIL") != std::string::npos);
}

TEST_CASE("config file supplies defaults; flags override") {
    const std::string cfg = g_dir + "/solgap.cfg";
    {
        std::ofstream out(cfg);
        out << "# sweep defaults\n";
        out << "eps_prime = 0.05\n";
        out << "v = 0.5\n";
    }
    const std::string env = "SOLITON_GAP_CONFIG=" + cfg;
    const RunResult from_cfg = run("gap --n 2 --A 1 --out " + g_dir + "/cfg1.json", env);
    CHECK(from_cfg.code == 0);
    CHECK(from_cfg.out.find("target = 0.94999999999999996") != std::string::npos);

    const RunResult overridden =
        run("gap --n 2 --A 1 --eps-prime 0.2 --out " + g_dir + "/cfg2.json", env);
    CHECK(overridden.code == 0);
    CHECK(overridden.out.find("target = 0.80000000000000004") != std::string::npos);
}

int main(int argc, char** argv) {
    std::vector<char*> pass;
    pass.push_back(argv[0]);
    for (int i = 1; i < argc; ++i) {
        if (g_cli.empty() && argv[i][0] != '-') {
            g_cli = argv[i];
            continue;
        }
        pass.push_back(argv[i]);
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-soliton-gap> [doctest args]\n");
        return 2;
    }
    char tmpl[] = "/tmp/solgap_cli_XXXXXX";
    if (mkdtemp(tmpl) == nullptr) return 2;
    g_dir = tmpl;

    doctest::Context ctx;
    ctx.applyCommandLine(static_cast<int>(pass.size()), pass.data());
    return ctx.run();
}
