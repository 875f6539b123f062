#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(AQCEL_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, p)) r.out += buf;
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(AQCEL_DATA_DIR) + "/" + name; }

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("aqcel_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& f) const { return (dir_ / f).string(); }
    void write(const std::string& f, const std::string& text) const { std::ofstream(path(f)) << text; }

    fs::path dir_;
};

nlohmann::json load(const std::string& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_F(Cli, OptimizeWritesCircuitAndReport) {
    const auto r = run("optimize --circuit " + data("qps1.circ") + " --threshold 0.05 --out " + path("o.circ") +
                       " --report " + path("r.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("two-qubit gates (lowered): 136 ->"), std::string::npos) << r.out;
    const auto rep = load(path("r.json"));
    EXPECT_LT(rep["two_qubit_after"].get<int>(), rep["two_qubit_before"].get<int>());
    EXPECT_TRUE(fs::exists(path("o.circ")));
}

TEST_F(Cli, RejectsBadArguments) {
    EXPECT_NE(run("optimize --circuit " + data("qps1.circ") + " --threshold 1.01").code, 0);
    EXPECT_NE(run("optimize --circuit " + data("qps1.circ") + " --backend noisy").code, 0);
    EXPECT_NE(run("optimize --circuit /nonexistent.circ").code, 0);
    EXPECT_NE(run("").code, 0);
    const std::string cmd = "AQCEL_SEED=abc " + std::string(AQCEL_CLI) + " optimize --circuit " + data("qps1.circ") +
                            " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    EXPECT_EQ(WEXITSTATUS(st), 2);
}

TEST_F(Cli, V1MeasuresMore) {
    const std::string base = "optimize --circuit " + data("qps1.circ") + " --threshold 0.05 --report ";
    ASSERT_EQ(run(base + path("v2.json")).code, 0);
    ASSERT_EQ(run(base + path("v1.json") + " --v1").code, 0);
    EXPECT_LT(load(path("v2.json"))["measurements_performed"].get<int>(),
              load(path("v1.json"))["measurements_performed"].get<int>());
}

TEST_F(Cli, SweepIsMonotoneAndMatchesOptimize) {
    const auto r = run("sweep --circuit " + data("qps2.circ") + " --thresholds 0,0.05,0.1,0.2 --json " +
                       path("s.json") + " --csv " + path("s.csv"));
    ASSERT_EQ(r.code, 0) << r.out;
    const auto s = load(path("s.json"));
    ASSERT_EQ(s.size(), 4u);
    for (std::size_t k = 1; k < s.size(); ++k)
        EXPECT_LE(s[k]["mean_two_qubit"].get<double>(), s[k - 1]["mean_two_qubit"].get<double>());
    ASSERT_EQ(run("optimize --circuit " + data("qps2.circ") + " --threshold 0.05 --report " + path("r.json")).code, 0);
    EXPECT_EQ(s[1]["mean_two_qubit"].get<double>(), load(path("r.json"))["two_qubit_after"].get<double>());
}

TEST_F(Cli, SampledRunsReproducibleFromEnvSeed) {
    const std::string args = " optimize --circuit " + data("qps1.circ") +
                             " --backend sampled --shots 500 --threshold 0.1 --out ";
    const std::string cli = std::string(AQCEL_CLI);
    ASSERT_EQ(std::system(("AQCEL_SEED=7 " + cli + args + path("a.circ") + " >/dev/null").c_str()), 0);
    ASSERT_EQ(std::system((cli + args + path("b.circ") + " --seed 7 >/dev/null").c_str()), 0);
    std::ifstream a(path("a.circ")), b(path("b.circ"));
    EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}), std::string(std::istreambuf_iterator<char>(b), {}));
}

TEST_F(Cli, FidelityExamples) {
    write("p.json", R"({"0": 1.0})");
    write("q.json", R"({"1": 1.0})");
    write("h.json", R"({"0": 0.5, "1": 0.5})");
    EXPECT_EQ(run("fidelity " + path("p.json") + " " + path("p.json")).out, "1.000000\n");
    EXPECT_EQ(run("fidelity " + path("p.json") + " " + path("q.json")).out, "0.000000\n");
    EXPECT_EQ(run("fidelity " + path("p.json") + " " + path("h.json")).out, "0.500000\n");
    write("bad.json", R"({"0": 0.7})");
    EXPECT_NE(run("fidelity " + path("p.json") + " " + path("bad.json")).code, 0);
}

TEST_F(Cli, QpsAndSimulate) {
    ASSERT_EQ(run("qps --steps 1 --params " + data("qps_params.json") + " --out " + path("q.circ") + " --layout " +
                  path("l.json") + " --histogram " + path("h.json"))
                  .code,
              0);
    std::ifstream gen(path("q.circ")), ref(data("qps1.circ"));
    EXPECT_EQ(std::string(std::istreambuf_iterator<char>(gen), {}), std::string(std::istreambuf_iterator<char>(ref), {}));
    EXPECT_NEAR(load(path("h.json"))["emissions"][1].get<double>(), 0.21196523473327833, 1e-9);
    EXPECT_NE(run("qps --steps 3").code, 0);

    ASSERT_EQ(run("simulate --circuit " + data("qps1.circ") + " --qubits 0,1,2 --out " + path("d.json")).code, 0);
    const auto d = load(path("d.json"));
    double total = 0;
    for (const auto& [k, v] : d.items()) total += v.get<double>();
    EXPECT_NEAR(total, 1.0, 1e-9);
}
