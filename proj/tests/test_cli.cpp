#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "charclass/matrix_io.hpp"

using namespace charclass;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CHARCLASS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string temp_matrix_file(const std::string& name, const ComplexMatrix& m) {
    const std::string path = std::string("cli_test_") + name + ".json";
    std::ofstream out(path);
    out << write_matrix_json(m);
    return path;
}

ComplexMatrix diag(std::initializer_list<Complex> vals) {
    const int n = int(vals.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    int i = 0;
    for (Complex v : vals) m(i, i) = v, ++i;
    return m;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("eval on closed-form cases") {
    const std::string m23 = temp_matrix_file("d23", diag({2.0, 3.0}));
    const RunResult r = run_cli("eval --group gl --rank 1 --weight 1,0 --matrix " + m23);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "value = 5 + 0 i"));
    CHECK(contains(r.output, "pivot ="));

    const std::string msp = temp_matrix_file("sp", diag({2.0, 0.5}));
    const RunResult r2 = run_cli("eval --group sp --rank 1 --weight 2 --matrix " + msp);
    CHECK(r2.exit_code == 0);
    CHECK(contains(r2.output, "value = 5.25 + 0 i"));
}

TEST_CASE("eval with method both prints values and the discrepancy") {
    const std::string md = temp_matrix_file("so4", diag({2.0, 0.5, 3.0, 1.0 / 3.0}));
    const RunResult r =
        run_cli("eval --group so-even --rank 2 --weight 1,1 --matrix " + md + " --method both");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "value = 7.16666666666667 + 0 i"));
    CHECK(contains(r.output, "value_bar = 3.16666666666667 + 0 i"));
    CHECK(contains(r.output, "oracle = 7.16666666666667"));
    CHECK(contains(r.output, "discrepancy ="));
}

TEST_CASE("eval exit codes") {
    // not in group -> 3
    const std::string bad = temp_matrix_file("notsl", diag({2.0, 3.0}));
    CHECK(run_cli("eval --group sl --rank 1 --weight 1,0 --matrix " + bad).exit_code == 3);

    // degenerate without fallback -> 2, with fallback -> 0
    const std::string one = temp_matrix_file("id2", ComplexMatrix::Identity(2, 2));
    const RunResult deg = run_cli("eval --group gl --rank 1 --weight 1,0 --matrix " + one);
    CHECK(deg.exit_code == 2);
    const RunResult fb =
        run_cli("eval --group gl --rank 1 --weight 1,0 --matrix " + one + " --fallback");
    CHECK(fb.exit_code == 0);
    CHECK(contains(fb.output, "perturbed = true"));

    // dominance violation -> 1
    const std::string m23 = temp_matrix_file("d23b", diag({2.0, 3.0}));
    CHECK(run_cli("eval --group gl --rank 1 --weight 0,1 --matrix " + m23).exit_code == 1);

    // malformed json -> 1 with a position diagnostic
    {
        std::ofstream out("cli_test_broken.json");
        out << "{\"n\": 2, \"entries\": [[1,0],]}";
    }
    const RunResult bj =
        run_cli("eval --group gl --rank 1 --weight 1,0 --matrix cli_test_broken.json");
    CHECK(bj.exit_code == 1);
    CHECK(contains(bj.output, "line"));

    // missing file -> 1
    CHECK(run_cli("eval --group gl --rank 1 --weight 1,0 --matrix nosuch.json").exit_code == 1);
}

TEST_CASE("exponent cap override through the environment") {
    const std::string m =
        temp_matrix_file("cap", diag({Complex(1.1, 0.0), Complex(1.0 / 1.1, 0.0)}));
    const std::string base = "eval --group gl --rank 1 --weight 6,0 --matrix " + m;
    CHECK(run_cli(base).exit_code == 0);

    const std::string cmd =
        std::string("env CHARCLASS_MAX_EXP=4 ") + CHARCLASS_CLI_PATH + " " + base + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 1);
    CHECK(contains(output, "cap"));
}

TEST_CASE("verify campaigns pass and are deterministic") {
    const RunResult a = run_cli("verify --group gl --rank 2 --trials 25 --seed 5 --tol 1e-8");
    CHECK(a.exit_code == 0);
    CHECK(contains(a.output, "result: PASS"));
    const RunResult b = run_cli("verify --group gl --rank 2 --trials 25 --seed 5 --tol 1e-8");
    CHECK(a.output == b.output); // byte-identical report for one seed

    const RunResult d = run_cli("verify --group so-even --rank 2 --trials 25 --seed 5 --tol 1e-8");
    CHECK(d.exit_code == 0);
    CHECK(contains(d.output, "pfaffian_identity_max"));

    CHECK(run_cli("verify --group gl --rank 2 --trials 0 --seed 5 --tol 1e-8").exit_code == 1);
}

TEST_CASE("dim command with the fallback cross-check") {
    const RunResult r = run_cli("dim --group gl --rank 2 --weight 1,1,0");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "dim = 3"));

    const RunResult rs = run_cli("dim --group sp --rank 2 --weight 1,0");
    CHECK(contains(rs.output, "dim = 4"));

    const RunResult rb = run_cli("dim --group so-odd --rank 1 --weight 2 --check");
    CHECK(rb.exit_code == 0);
    CHECK(contains(rb.output, "dim = 5"));
    CHECK(contains(rb.output, "fallback_discrepancy"));

    CHECK(run_cli("dim --group sp --rank 2 --weight 0,1").exit_code == 1);
}

TEST_CASE("sample emits a valid element and round-trips through eval") {
    for (const std::string family : {"gl", "sl", "so-odd", "sp", "so-even"}) {
        for (int rank = 1; rank <= 4; ++rank) {
            // rank-4 orthogonal/symplectic elements this close to 1 are
            // numerically degenerate; step further out along the algebra
            const std::string scale = rank == 4 ? "1.5" : "0.5";
            const RunResult s = run_cli("sample --group " + family + " --rank " +
                                        std::to_string(rank) + " --seed 7 --scale " + scale);
            REQUIRE(s.exit_code == 0);
            const std::string path = "cli_test_rt_" + family + std::to_string(rank) + ".json";
            {
                std::ofstream out(path);
                out << s.output;
            }
            std::string weight = "1";
            const int len = (family == "gl" || family == "sl") ? rank + 1 : rank;
            for (int i = 1; i < len; ++i) weight += ",0";
            const RunResult e = run_cli("eval --group " + family + " --rank " +
                                        std::to_string(rank) + " --weight " + weight +
                                        " --matrix " + path + " --method both");
            CHECK(e.exit_code == 0);
        }
    }

    // determinism and the scale-zero identity
    const RunResult a = run_cli("sample --group sp --rank 2 --seed 9 --scale 0.5");
    const RunResult b = run_cli("sample --group sp --rank 2 --seed 9 --scale 0.5");
    CHECK(a.output == b.output);
    const RunResult z = run_cli("sample --group so-even --rank 2 --seed 7 --scale 0");
    CHECK(z.exit_code == 0);
    const ComplexMatrix m = read_matrix_json(z.output);
    CHECK((m - ComplexMatrix::Identity(4, 4)).norm() < 1e-8);
}
