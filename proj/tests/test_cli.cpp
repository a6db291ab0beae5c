#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "stiknn/analysis.hpp"
#include "stiknn/csv.hpp"
#include "stiknn/datagen.hpp"
#include "stiknn/matrix.hpp"
#include "stiknn/sti_knn.hpp"
#include "support/fixtures.hpp"

using namespace stiknn;
using testsupport::TempDir;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args, const TempDir& dir) {
    const std::string log = dir.file("cli_output.txt");
    const std::string command = std::string(STIKNN_CLI_PATH) + " " + args + " >" + log + " 2>&1";
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// The four-point worked fixture: train on a line, one test point at the
// origin, match flags by rank [0, 1, 0, 1].
void write_pair_example(const TempDir& dir) {
    std::ofstream train(dir.file("train.csv"));
    train << "x1,label\n1,neg\n2,pos\n3,neg\n4,pos\n";
    std::ofstream test(dir.file("test.csv"));
    test << "x1,label\n0,pos\n";
}

}  // namespace

TEST_CASE("compute reproduces the worked fixture and round-trips the matrix") {
    TempDir dir("cli_compute");
    write_pair_example(dir);

    const CliResult r = run_cli("compute --train " + dir.file("train.csv") + " --test " +
                                    dir.file("test.csv") + " --k 2 --out " + dir.file("m.csv") +
                                    " --heatmap " + dir.file("m.ppm"),
                                dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("pair_sum=0.5") != std::string::npos);
    CHECK(r.output.find("v_N=0.5") != std::string::npos);
    CHECK(r.output.find("residual=0") != std::string::npos);
    CHECK(r.output.find("time_ms=") != std::string::npos);

    const SquareMatrix m = read_matrix_csv(dir.file("m.csv"));
    REQUIRE(m.n() == 4);
    CHECK(m.at(0, 0) == 0.0);
    CHECK(m.at(1, 1) == 0.5);
    CHECK(m.at(0, 1) == 0.0);
    CHECK(m.at(2, 3) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(m.at(0, 3) == m.at(2, 3));

    // Written CSV is lossless: reading it back reproduces the in-process matrix.
    const auto [train, test] = testsupport::ranked_flags_fixture({0, 1, 0, 1});
    const InteractionMatrix direct = sti_knn(train, test, {2, Metric::Euclidean});
    CHECK(bit_identical(m, direct.values));

    CHECK(slurp(dir.file("m.ppm")).substr(0, 11) == "P6\n4 4\n255\n");
}

TEST_CASE("compute --order display permutes the exported matrix") {
    TempDir dir("cli_order");
    // Two classes interleaved so display order differs from original order.
    {
        std::ofstream train(dir.file("train.csv"));
        train << "x1,x2,label\n5,0,b\n1,0,a\n4,0,b\n2,0,a\n";
        std::ofstream test(dir.file("test.csv"));
        test << "x1,x2,label\n0,0,a\n";
    }

    const std::string base = "--train " + dir.file("train.csv") + " --test " +
                             dir.file("test.csv") + " --k 2 ";
    CHECK(run_cli("compute " + base + "--out " + dir.file("orig.csv"), dir).exit_code == 0);
    CHECK(run_cli("compute " + base + "--out " + dir.file("disp.csv") + " --order display", dir)
              .exit_code == 0);

    const Dataset train_ds = read_dataset_csv(dir.file("train.csv"));
    const SquareMatrix orig = read_matrix_csv(dir.file("orig.csv"));
    const SquareMatrix disp = read_matrix_csv(dir.file("disp.csv"));
    CHECK(bit_identical(disp, reorder(orig, display_order(train_ds))));
    CHECK_FALSE(bit_identical(disp, orig));
}

TEST_CASE("compute rejects k larger than the training set") {
    TempDir dir("cli_kbig");
    write_pair_example(dir);
    const CliResult r = run_cli("compute --train " + dir.file("train.csv") + " --test " +
                                    dir.file("test.csv") + " --k 9 --out " + dir.file("m.csv"),
                                dir);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("k exceeds training size") != std::string::npos);
}

TEST_CASE("missing input maps to the I/O exit code") {
    TempDir dir("cli_io");
    const CliResult r = run_cli("compute --train " + dir.file("absent.csv") + " --test " +
                                    dir.file("absent.csv") + " --k 2 --out " + dir.file("m.csv"),
                                dir);
    CHECK(r.exit_code == 3);

    const CliResult usage = run_cli("compute --train only", dir);
    CHECK(usage.exit_code == 2);

    const CliResult nothing = run_cli("", dir);
    CHECK(nothing.exit_code == 2);

    const CliResult help = run_cli("--help", dir);
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("compute") != std::string::npos);
}

TEST_CASE("oracle command agrees with compute on the fixture") {
    TempDir dir("cli_oracle");
    write_pair_example(dir);
    const std::string base = "--train " + dir.file("train.csv") + " --test " +
                             dir.file("test.csv") + " --k 2 ";
    CHECK(run_cli("compute " + base + "--out " + dir.file("fast.csv"), dir).exit_code == 0);
    CHECK(run_cli("oracle " + base + "--out " + dir.file("exact.csv"), dir).exit_code == 0);

    const SquareMatrix fast = read_matrix_csv(dir.file("fast.csv"));
    const SquareMatrix exact = read_matrix_csv(dir.file("exact.csv"));
    CHECK(testsupport::max_abs_diff(fast, exact) <= 1e-12);

    // Cap enforcement: a 24-point set exceeds even the requested cap.
    std::ofstream big_train(dir.file("big.csv"));
    big_train << "x1,label\n";
    for (int i = 0; i < 24; ++i) big_train << i << ",a\n";
    big_train.close();
    const CliResult capped = run_cli("oracle --train " + dir.file("big.csv") + " --test " +
                                         dir.file("test.csv") + " --k 2 --out " +
                                         dir.file("x.csv") + " --cap 15",
                                     dir);
    CHECK(capped.exit_code == 2);
    CHECK(capped.output.find("cap") != std::string::npos);
}

TEST_CASE("verify passes clean and fails under an injected fault") {
    TempDir dir("cli_verify");
    const CliResult clean = run_cli("verify --n-max 3 --trials 2 --seed 5", dir);
    CHECK(clean.exit_code == 0);
    CHECK(clean.output.find("verify: PASS") != std::string::npos);

    const CliResult faulty =
        run_cli("verify --n-max 2 --trials 1 --seed 5 --inject-fault 1e-6", dir);
    CHECK(faulty.exit_code == 1);
    CHECK(faulty.output.find("verify: FAIL") != std::string::npos);
}

TEST_CASE("gen is deterministic and supports the experiment transforms") {
    TempDir dir("cli_gen");
    const std::string args = "gen --kind circles --n 30 --seed 1 --out ";
    CHECK(run_cli(args + dir.file("a.csv"), dir).exit_code == 0);
    CHECK(run_cli(args + dir.file("b.csv"), dir).exit_code == 0);
    CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));

    const CliResult flips = run_cli(
        "gen --kind circles --n 30 --seed 1 --mislabel-fraction 0.1 --mislabel-seed 3 --out " +
            dir.file("noisy.csv") + " --flips-out " + dir.file("flips.txt"),
        dir);
    CHECK(flips.exit_code == 0);
    CHECK(flips.output.find("flipped=6") != std::string::npos);
    std::istringstream flip_lines(slurp(dir.file("flips.txt")));
    int count = 0;
    int idx = 0;
    while (flip_lines >> idx) ++count;
    CHECK(count == 6);

    const CliResult moons =
        run_cli("gen --kind moons --n 10 --noise 0 --seed 2 --out " + dir.file("moons.csv"), dir);
    CHECK(moons.exit_code == 0);
    CHECK(read_dataset_csv(dir.file("moons.csv")).size() == 20);

    const CliResult thin = run_cli("gen --kind circles --n 30 --seed 1 --subsample-class 1 "
                                   "--keep-fraction 0.5 --subsample-seed 4 --out " +
                                       dir.file("thin.csv"),
                                   dir);
    CHECK(thin.exit_code == 0);
    CHECK(read_dataset_csv(dir.file("thin.csv")).size() == 45);

    const CliResult unknown = run_cli("gen --kind circles --n 5 --seed 1 --subsample-class zz "
                                      "--keep-fraction 0.5 --out " +
                                          dir.file("zz.csv"),
                                      dir);
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("loo command writes one value per training point") {
    TempDir dir("cli_loo");
    write_pair_example(dir);
    const CliResult r = run_cli("loo --train " + dir.file("train.csv") + " --test " +
                                    dir.file("test.csv") + " --k 2 --out " + dir.file("loo.csv"),
                                dir);
    CHECK(r.exit_code == 0);
    std::istringstream lines(slurp(dir.file("loo.csv")));
    std::string line;
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);  // header + 4 points
}

TEST_CASE("ksweep command emits the correlation table") {
    TempDir dir("cli_ksweep");
    const CliResult gen_train =
        run_cli("gen --kind circles --n 20 --seed 3 --out " + dir.file("train.csv"), dir);
    const CliResult gen_test =
        run_cli("gen --kind circles --n 4 --seed 4 --out " + dir.file("test.csv"), dir);
    REQUIRE(gen_train.exit_code == 0);
    REQUIRE(gen_test.exit_code == 0);

    const CliResult r = run_cli("ksweep --train " + dir.file("train.csv") + " --test " +
                                    dir.file("test.csv") + " --k-min 2 --k-max 5 --out " +
                                    dir.file("table.csv"),
                                dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("min_pairwise_correlation=") != std::string::npos);
    const std::string table = slurp(dir.file("table.csv"));
    CHECK(table.find("k,r_k2,r_k3,r_k4,r_k5,std") == 0);
}

TEST_CASE("bench command writes timing rows and slopes") {
    TempDir dir("cli_bench");
    // Tiny sweep sizes keep this test fast; slopes are not asserted here.
    const CliResult r = run_cli(
        "bench --reps 1 --t-fixed 4 --n-fixed 60 --k 2 --out " + dir.file("bench.csv"), dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("slope_n=") != std::string::npos);
    CHECK(r.output.find("slope_t=") != std::string::npos);
    CHECK(slurp(dir.file("bench.csv")).find("sweep,n,t,k,seconds") == 0);
}
