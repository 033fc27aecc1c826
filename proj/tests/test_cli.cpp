// Copyright 2026 The qamem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qamem/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "qamem/report_io.hpp"

using namespace qamem;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(QAMEM_TEST_TMPDIR) / "cli" /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
  }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return cli::run_cli(args, out_, err_);
  }

  Json json() const { return Json::parse(out_.str()); }

  static std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST_F(CliTest, StoreReportsDeviation) {
  const auto file = write("p.txt", "# two patterns\n01\n10\n");
  const auto dump = (dir_ / "state.json").string();
  ASSERT_EQ(run({"store", "--patterns", file, "--dump", dump}), cli::kSuccess) << err_.str();
  const Json j = json();
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["p"], 2);
  EXPECT_LT(j["deviation"].get<double>(), 1e-9);
  const Json state = Json::parse(slurp(dump));
  EXPECT_EQ(state["amplitudes"].size(), 2u);
}

TEST_F(CliTest, StoreInputErrors) {
  const auto dup = write("dup.txt", "01\n10\n\n01\n");
  EXPECT_EQ(run({"store", "--patterns", dup}), cli::kInputError);
  EXPECT_NE(err_.str().find("line 4"), std::string::npos) << err_.str();
  EXPECT_EQ(run({"store", "--patterns", write("empty.txt", "")}), cli::kInputError);
  EXPECT_EQ(run({"store", "--patterns", write("comments.txt", "# nothing\n\n")}), cli::kInputError);
  EXPECT_EQ(run({"store", "--patterns", (dir_ / "missing.txt").string()}), cli::kInputError);
  EXPECT_EQ(run({"store", "--patterns", write("bad.txt", "01\n0a\n")}), cli::kInputError);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos) << err_.str();
  EXPECT_EQ(run({"store"}), cli::kInputError);
  EXPECT_EQ(run({"nonsense"}), cli::kInputError);
}

TEST_F(CliTest, ReportAgreesWithOracle) {
  const auto file = write("p.txt", "000\n111\n");
  ASSERT_EQ(run({"report", "--patterns", file, "--input", "001"}), cli::kSuccess) << err_.str();
  const Json j = json();
  EXPECT_NEAR(j["gate_level"]["p0"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["analytic"]["p0"].get<double>(), 0.5, 1e-12);
  EXPECT_LT(j["max_deviation"].get<double>(), 1e-9);
  EXPECT_NEAR(j["gate_level"]["per_pattern"]["000"].get<double>(), 0.75, 1e-12);
}

TEST_F(CliTest, ReportFullCapacity) {
  const auto file = write("all.txt", "000\n001\n010\n011\n100\n101\n110\n111\n");
  ASSERT_EQ(run({"report", "--patterns", file, "--input", "110"}), cli::kSuccess);
  EXPECT_NEAR(json()["gate_level"]["p0"].get<double>(), 0.5, 1e-12);
}

TEST_F(CliTest, AllOnesMaskMatchesNoMask) {
  const auto file = write("p.txt", "0110\n1010\n0001\n1111\n");
  ASSERT_EQ(run({"report", "--patterns", file, "--input", "0111"}), cli::kSuccess);
  const Json plain = json();
  ASSERT_EQ(run({"report", "--patterns", file, "--input", "0111", "--mask", "1111"}),
            cli::kSuccess);
  const Json masked = json();
  EXPECT_EQ(plain["gate_level"]["per_pattern"].dump(), masked["gate_level"]["per_pattern"].dump());
  EXPECT_EQ(plain["gate_level"]["p0"].dump(), masked["gate_level"]["p0"].dump());
}

TEST_F(CliTest, ReportWithUnknownBitsAndTable) {
  const auto file = write("p.txt", "0000\n1111\n");
  EXPECT_EQ(run({"report", "--patterns", file, "--input", "01??"}), cli::kInputError);
  ASSERT_EQ(run({"report", "--patterns", file, "--input", "01??", "--seed", "3"}), cli::kSuccess)
      << err_.str();
  const Json j = json();
  EXPECT_EQ(j["gate_level"]["mask"], "1100");
  EXPECT_NEAR(j["gate_level"]["p0"].get<double>(), 0.85355339059327376, 1e-12);

  const auto table = write("f.txt", "0 2 2 4 4\n");
  ASSERT_EQ(run({"report", "--patterns", file, "--input", "0011", "--f-table", table}),
            cli::kSuccess)
      << err_.str();
  EXPECT_LT(json()["max_deviation"].get<double>(), 1e-9);
  EXPECT_EQ(run({"report", "--patterns", file, "--input", "0011", "--f-table",
                 write("g.txt", "1 2 2 4 4\n")}),
            cli::kInputError);
  EXPECT_EQ(run({"report", "--patterns", file, "--input", "001"}), cli::kInputError);
  EXPECT_EQ(run({"report", "--patterns", file, "--input", "0011", "--mask", "0000"}),
            cli::kInputError);
}

TEST_F(CliTest, ReportCsv) {
  const auto file = write("p.txt", "000\n111\n");
  ASSERT_EQ(run({"report", "--patterns", file, "--input", "001", "--format", "csv"}),
            cli::kSuccess);
  const std::string text = out_.str();
  EXPECT_NE(text.find("pattern,probability,empirical_frequency,stderr\n"), std::string::npos);
  const auto row = text.find("\n000,");
  ASSERT_NE(row, std::string::npos) << text;
  EXPECT_NEAR(std::stod(text.substr(row + 5)), 0.75, 1e-12);
}

TEST_F(CliTest, RecognizeNeedsSeedAndExhaustsThreshold) {
  const auto file = write("p.txt", "11\n");
  EXPECT_EQ(run({"recognize", "--patterns", file, "--input", "00", "--threshold", "5"}),
            cli::kInputError);
  ASSERT_EQ(run({"recognize", "--patterns", file, "--input", "00", "--threshold", "5", "--seed",
                 "1"}),
            cli::kSuccess);
  const Json j = json();
  EXPECT_EQ(j["recognized"], false);
  EXPECT_EQ(j["trials_used"], 5);
  EXPECT_EQ(run({"recognize", "--patterns", file, "--input", "00", "--threshold", "0", "--seed",
                 "1"}),
            cli::kInputError);
  EXPECT_EQ(run({"recognize", "--patterns", file, "--input", "00", "--threshold", "many",
                 "--seed", "1"}),
            cli::kInputError);
  ASSERT_EQ(run({"recognize", "--patterns", file, "--input", "11", "--seed", "1"}), cli::kSuccess);
  EXPECT_EQ(json()["recognized"], true);
  EXPECT_EQ(json()["trials_used"], 1);
}

TEST_F(CliTest, ExperimentMatchesAnalyticAndIsReproducible) {
  const auto file = write("p.txt", "000\n111\n");
  const auto a = (dir_ / "a.json").string();
  const auto b = (dir_ / "b.json").string();
  const std::vector<std::string> base = {"experiment", "--patterns", file, "--input", "001",
                                         "--trials", "100000", "--seed", "7"};
  auto with_output = [&](const std::string& path) {
    auto args = base;
    args.insert(args.end(), {"--output", path});
    return args;
  };
  ASSERT_EQ(run(with_output(a)), cli::kSuccess) << err_.str();
  ASSERT_EQ(run(with_output(b)), cli::kSuccess) << err_.str();
  EXPECT_EQ(slurp(a), slurp(b));
  const Json j = Json::parse(slurp(a));
  EXPECT_NEAR(j["p0"]["empirical"].get<double>(), 0.5, 0.005);
  EXPECT_NEAR(j["per_pattern"]["000"]["empirical"].get<double>(), 0.75, 0.01);
  EXPECT_NEAR(j["per_pattern"]["000"]["analytic"].get<double>(), 0.75, 1e-12);
  EXPECT_GT(j["per_pattern"]["000"]["stderr"].get<double>(), 0.0);
  EXPECT_EQ(run({"experiment", "--patterns", file, "--input", "001", "--trials", "10"}),
            cli::kInputError);
  EXPECT_EQ(run({"experiment", "--patterns", file, "--input", "001", "--trials", "0", "--seed",
                 "1"}),
            cli::kInputError);
}

TEST_F(CliTest, ExperimentCsvIsReproducible) {
  const auto file = write("p.txt", "0101\n1100\n0011\n");
  const std::vector<std::string> args = {"experiment", "--patterns", file, "--input", "0111",
                                         "--trials", "2000", "--seed", "42", "--format", "csv"};
  ASSERT_EQ(run(args), cli::kSuccess);
  const std::string first = out_.str();
  ASSERT_EQ(run(args), cli::kSuccess);
  EXPECT_EQ(first, out_.str());
  EXPECT_NE(first.find("# trials=2000 seed=42"), std::string::npos) << first;
}

TEST_F(CliTest, Threshold) {
  ASSERT_EQ(run({"threshold", "--patterns", write("p.txt", "000\n111\n")}), cli::kSuccess);
  const Json j = json();
  EXPECT_EQ(j["threshold"], 2);
  EXPECT_NEAR(j["p_min"].get<double>(), 0.5, 1e-12);
  ASSERT_EQ(run({"threshold", "--patterns", write("one.txt", "1\n")}), cli::kSuccess);
  EXPECT_EQ(json()["threshold"], 1);
}

TEST_F(CliTest, WorstCase) {
  ASSERT_EQ(run({"worst-case", "--n", "4", "--x", "1", "--gate-level"}), cli::kSuccess);
  const Json j = json();
  EXPECT_EQ(j["p"], 6);
  EXPECT_EQ(j["threshold"], 4);
  EXPECT_NEAR(j["p0_gate_level"].get<double>(), 0.264297739604484158, 1e-9);
  EXPECT_EQ(run({"worst-case", "--n", "4", "--x", "4"}), cli::kInputError);
}

TEST_F(CliTest, QubitBudgetIsEnforced) {
  const auto file = write("p.txt", "0000000000\n1111111111\n");
  EXPECT_EQ(run({"store", "--patterns", file, "--max-qubits", "8"}), cli::kInputError);
  EXPECT_EQ(run({"store", "--patterns", file, "--max-qubits", "12"}), cli::kSuccess);
}
