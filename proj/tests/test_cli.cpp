#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shotasm/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("shotasm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        write("catalog.json", R"({
          "shots": [
            {"id": "a", "shot_size": "MS", "motion": "STABLE"},
            {"id": "b", "shot_size": "CU", "motion": "UP"},
            {"id": "c", "shot_size": "ECU", "motion": "IN"}
          ]})");
        write("ref.txt", "MS\nCU\nMS\nCU\n");
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
    }

    std::string read(const std::string& name) const {
        std::ifstream in(path(name));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return shotasm::cli::run(args, out_, err_);
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

}  // namespace

TEST_F(Cli, OptimizeDemoCatalog) {
    ASSERT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "3", "--algo", "langevin-ga", "--seed", "1",
                   "--iters", "50", "--out", path("r.json")}),
              0)
        << err_.str();
    const auto doc = json::parse(read("r.json"));
    EXPECT_DOUBLE_EQ(doc["best_energy"].get<double>(), -2.0);
    ASSERT_EQ(doc["sequences"].size(), 1u);
    EXPECT_EQ(doc["sequences"][0]["shot_ids"], json({"a", "b", "c"}));
    EXPECT_DOUBLE_EQ(doc["sequences"][0]["score_size"].get<double>(), 2.0);
    EXPECT_DOUBLE_EQ(doc["sequences"][0]["score_motion"].get<double>(), 2.0);
    EXPECT_TRUE(doc["sequences"][0]["cos_semantic"].is_null());
    EXPECT_EQ(doc["algorithm"], "langevin-ga");
    EXPECT_EQ(doc["iterations_used"], 50);
    const auto& cfg = doc["config"];
    for (const char* key : {"alpha", "beta", "gamma", "seed", "iters", "beam", "pop", "rc", "rm", "epsilon", "temp",
                            "topq", "eta", "noise", "sinkhorn_iters"})
        EXPECT_TRUE(cfg.contains(key)) << key;
    EXPECT_FALSE(doc.contains("trace"));
}

TEST_F(Cli, OptimizeEveryAlgorithmToStdout) {
    for (const char* algo : {"oracle", "bs", "ga", "langevin-bs", "langevin-ga", "continuous"}) {
        ASSERT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--algo", algo, "--iters", "40",
                       "--cont-iters", "40", "--trace"}),
                  0)
            << algo << ": " << err_.str();
        const auto doc = json::parse(out_.str());
        EXPECT_EQ(doc["algorithm"], algo);
        EXPECT_TRUE(doc.contains("trace"));
    }
}

TEST_F(Cli, OptimizeIsDeterministic) {
    const std::vector<std::string> base{"optimize", "--catalog", path("catalog.json"), "--k", "3", "--algo", "ga",
                                        "--seed", "9", "--iters", "30", "--trace"};
    auto first = base;
    first.insert(first.end(), {"--out", path("1.json")});
    auto second = base;
    second.insert(second.end(), {"--out", path("2.json")});
    ASSERT_EQ(run(first), 0);
    ASSERT_EQ(run(second), 0);
    EXPECT_EQ(read("1.json"), read("2.json"));
}

TEST_F(Cli, OptimizeWithReference) {
    ASSERT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--algo", "oracle", "--alpha", "1", "--beta", "0",
                   "--reference", path("ref.txt")}),
              0)
        << err_.str();
    const auto doc = json::parse(out_.str());
    // Learned W[MS][CU] = 2/3 is the largest entry, so [a, b] wins.
    EXPECT_EQ(doc["sequences"][0]["shot_ids"], json({"a", "b"}));
    EXPECT_NEAR(doc["best_energy"].get<double>(), -2.0 / 3.0, 1e-12);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "4"}), 4);
    EXPECT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--gamma", "1"}), 4);
    EXPECT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--algo", "nope"}), 2);
    EXPECT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--reference", path("ref.txt"),
                   "--size-matrix", path("m.json")}),
              2);
    EXPECT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--alpha", "0", "--beta", "0"}), 2);
    EXPECT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--pop", "0"}), 2);
    EXPECT_EQ(run({"optimize", "--k", "2"}), 2);
    EXPECT_EQ(run({"frobnicate"}), 2);
    EXPECT_EQ(run({"optimize", "--catalog", path("missing.json"), "--k", "2"}), 3);
    write("bad.json", "{\"shots\": [");
    EXPECT_EQ(run({"optimize", "--catalog", path("bad.json"), "--k", "2"}), 3);
    write("dup.json", R"({"shots":[{"id":"a"},{"id":"a"}]})");
    EXPECT_EQ(run({"optimize", "--catalog", path("dup.json"), "--k", "1"}), 3);
}

TEST_F(Cli, OracleTooLarge) {
    std::string shots;
    for (int i = 0; i < 20; ++i) shots += (i ? "," : "") + std::string(R"({"id":"s)") + std::to_string(i) + R"(","shot_size":"MS"})";
    write("big.json", "{\"shots\":[" + shots + "]}");
    EXPECT_EQ(run({"optimize", "--catalog", path("big.json"), "--k", "8", "--algo", "oracle"}), 4);
    EXPECT_NE(err_.str().find("InstanceTooLarge"), std::string::npos);
}

TEST_F(Cli, Learn) {
    ASSERT_EQ(run({"learn", "--reference", path("ref.txt"), "--alphabet", "size", "--out", path("w.json"), "--csv",
                   path("w.csv")}),
              0);
    const auto doc = json::parse(read("w.json"));
    EXPECT_NEAR(doc["rows"][2][3].get<double>(), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(doc["rows"][3][2].get<double>(), 1.0 / 3.0, 1e-12);
    EXPECT_NE(out_.str().find("global sum: 1"), std::string::npos);
    EXPECT_EQ(read("w.csv").substr(0, 21), "from,ELS,LS,MS,CU,ECU");

    write("one.txt", "MS\n");
    EXPECT_EQ(run({"learn", "--reference", path("one.txt"), "--alphabet", "size"}), 3);
    EXPECT_EQ(run({"learn", "--reference", path("ref.txt"), "--alphabet", "motion"}), 3);
    EXPECT_NE(err_.str().find("NoTransitions"), std::string::npos);
    EXPECT_EQ(run({"learn", "--reference", path("ref.txt"), "--alphabet", "colour"}), 2);
}

TEST_F(Cli, LearnedMatrixFeedsOptimize) {
    ASSERT_EQ(run({"learn", "--reference", path("ref.txt"), "--alphabet", "size", "--out", path("w.json")}), 0);
    ASSERT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--algo", "oracle", "--alpha", "1", "--beta", "0",
                   "--size-matrix", path("w.json")}),
              0);
    EXPECT_NEAR(json::parse(out_.str())["best_energy"].get<double>(), -2.0 / 3.0, 1e-12);
    EXPECT_EQ(run({"optimize", "--catalog", path("catalog.json"), "--k", "2", "--motion-matrix", path("w.json")}), 3);
}

TEST_F(Cli, Eval) {
    ASSERT_EQ(run({"eval", "--output-labels", path("ref.txt"), "--reference", path("ref.txt")}), 0);
    auto doc = json::parse(out_.str());
    EXPECT_EQ(doc["size_mse"], 0.0);
    EXPECT_TRUE(doc["motion_mse"].is_null());
    EXPECT_NE(err_.str().find("warning"), std::string::npos);

    write("ref5.txt", "MS\nCU\nMS\nCU\nMS\n");
    ASSERT_EQ(run({"eval", "--output-labels", path("ref.txt"), "--reference", path("ref5.txt"), "--out",
                   path("e.json")}),
              0);
    doc = json::parse(read("e.json"));
    EXPECT_NEAR(doc["size_mse"].get<double>(), 0.002222, 1e-6);

    write("both.txt", "MS,STABLE\nCU,UP\n");
    ASSERT_EQ(run({"eval", "--output-labels", path("both.txt"), "--reference", path("both.txt")}), 0);
    doc = json::parse(out_.str());
    EXPECT_EQ(doc["size_mse"], 0.0);
    EXPECT_EQ(doc["motion_mse"], 0.0);

    write("one.txt", "MS\n");
    EXPECT_EQ(run({"eval", "--output-labels", path("one.txt"), "--reference", path("ref.txt")}), 3);
}

TEST_F(Cli, BenchOracleAndFiles) {
    ASSERT_EQ(run({"bench", "--algos", "oracle", "--samples-fixed", "4", "--samples-random", "4",
                   "--samples-extended", "4", "--out", path("acc")}),
              0)
        << err_.str();
    const auto csv = read("acc.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) EXPECT_EQ(line.substr(line.rfind(',') + 1), "1.000000");
    EXPECT_TRUE(json::parse(read("acc.json")).contains("instances"));
}

TEST_F(Cli, BenchFullCrossProduct) {
    ASSERT_EQ(run({"bench", "--samples-fixed", "2", "--samples-random", "2", "--samples-extended", "2", "--iters",
                   "10", "--cont-iters", "10"}),
              0);
    const auto csv = out_.str();
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
    EXPECT_EQ(run({"bench", "--scenarios", "nowhere"}), 2);
    EXPECT_EQ(run({"bench", "--algos", "bs,fast"}), 2);
}
