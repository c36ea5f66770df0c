// Copyright 2026 The notouch Authors
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

#include "notouch/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "notouch/io.hpp"
#include "notouch/verify.hpp"

using namespace notouch;

namespace {

struct Invocation {
    int code = -1;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    args.insert(args.begin(), "notouch");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Invocation r;
    r.code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string field(const std::string &text, const std::string &key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + ",", 0) == 0) return line.substr(key.size() + 1);
    }
    return {};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "notouch_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

const char *const kFigure2N3 =
    "N,delta_max,eff_exact,eff_asymptotic,eff_competitor_asymptotic\n"
    "2,0.707106781187,0.5,0.252917115805,0.114962325366\n"
    "3,0.650115167344,0.154700538379,0.0885635691709,0.0476880757074\n";

}  // namespace

TEST(CliSimulate, n2_boson) {
    const auto r = run({"simulate", "--n", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(field(r.out, "success_probability")), 0.5, 1e-10);
    EXPECT_NEAR(std::stod(field(r.out, "fidelity_w")), 1.0, 1e-10);
    EXPECT_EQ(field(r.out, "w_sign_mismatches"), "0");
    EXPECT_NE(r.out.find("bitstring,re,im,probability"), std::string::npos);
    EXPECT_TRUE(r.err.empty());
}

TEST(CliSimulate, n3_fermion_without_correction_reports_signs) {
    const auto r = run({"simulate", "--n", "3", "--statistics", "fermion", "--no-phase-correction"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(field(r.out, "fidelity_w")), 1.0 / 9.0, 1e-10);
    EXPECT_EQ(field(r.out, "w_sign_mismatches"), "2");
    EXPECT_NE(r.err.find("opposite sign"), std::string::npos);
    EXPECT_NEAR(std::stod(field(r.out, "success_probability")), 0.154700538379, 1e-10);
}

TEST(CliSimulate, n3_fermion_default_is_corrected) {
    const auto r = run({"simulate", "--n", "3", "--statistics", "fermion"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(std::stod(field(r.out, "fidelity_w")), 1.0, 1e-10);
    EXPECT_EQ(field(r.out, "w_sign_mismatches"), "0");
}

TEST(CliSimulate, json_and_unitary_export) {
    const auto path = scratch("u.json");
    const auto r = run({"simulate", "--n", "3", "--delta", "0.5", "--format", "json", "--g-seed", "9",
                        "--export-unitary", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j.at("fidelity_w").get<double>(), 1.0, 1e-10);
    EXPECT_EQ(j.at("delta").get<double>(), 0.5);
    const ModeUnitary u = io::unitary_from_json(nlohmann::json::parse(slurp(path)));
    EXPECT_EQ(u.dim(), 7);
    EXPECT_LT(u.defect(), 1e-12);
}

TEST(CliArguments, rejected_inputs_exit_2) {
    EXPECT_EQ(run({"simulate", "--n", "1"}).code, 2);
    EXPECT_EQ(run({"simulate", "--n", "3", "--delta", "1.5"}).code, 2);
    EXPECT_EQ(run({"simulate", "--n", "3", "--statistics", "anyon"}).code, 2);
    EXPECT_EQ(run({"figure2", "--n", "3", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(CliArguments, degenerate_delta_is_an_error) {
    const auto r = run({"simulate", "--n", "3", "--delta", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliFigure2, golden_table) {
    const auto r = run({"figure2", "--n", "3"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, kFigure2N3);
}

TEST(CliFigure2, deterministic_file_output_and_round_trip) {
    const auto a = scratch("fig_a.csv");
    const auto b = scratch("fig_b.csv");
    ASSERT_EQ(run({"figure2", "--n", "60", "-o", a.string()}).code, 0);
    ASSERT_EQ(run({"figure2", "--n", "60", "-o", b.string()}).code, 0);
    const std::string text = slurp(a);
    EXPECT_EQ(text, slurp(b));
    const EfficiencyCurve parsed = io::parse_efficiency_csv(text);
    const EfficiencyCurve exact = efficiency_curve(60);
    ASSERT_EQ(parsed.rows.size(), 59u);
    for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
        EXPECT_EQ(parsed.rows[i].n, exact.rows[i].n);
        EXPECT_NEAR(parsed.rows[i].delta_max, exact.rows[i].delta_max, 1e-10);
        EXPECT_NEAR(parsed.rows[i].eff_exact, exact.rows[i].eff_exact, 1e-10);
        EXPECT_NEAR(parsed.rows[i].eff_asymptotic, exact.rows[i].eff_asymptotic, 1e-10);
        EXPECT_NEAR(parsed.rows[i].eff_competitor_asymptotic, exact.rows[i].eff_competitor_asymptotic, 1e-10);
    }
}

TEST(CliFigure2, unwritable_output_exits_1) {
    const auto r = run({"figure2", "--n", "3", "-o", "/nonexistent-dir/fig.csv"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("I/O error"), std::string::npos);
}

TEST(CliEfficiencyAndOptimize, values) {
    const auto e = run({"efficiency", "--n", "3", "--delta", "0.65"});
    ASSERT_EQ(e.code, 0);
    EXPECT_NE(e.out.find("0.154700520357"), std::string::npos) << e.out;
    const auto o = run({"optimize", "--n", "3"});
    ASSERT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("0.650115167344"), std::string::npos) << o.out;
    EXPECT_NE(o.out.find("0.154700538379"), std::string::npos) << o.out;
}

TEST(CliVerify, default_passes) {
    const auto r = run({"verify"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("\nOK\n"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliVerify, large_n_skips_oracle_comparison) {
    const auto r = run({"verify", "--n", "9"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("SKIP oracle-protocol-circuit"), std::string::npos) << r.out;
}

TEST(Verify, permanent_for_fermions_is_caught) {
    // Same probabilities, wrong signs: the efficiency check cannot tell, the
    // entrywise fidelity check must.
    VerifyOptions opts;
    opts.kernel = [](const ModeUnitary &u, const FockConfiguration &in, const FockConfiguration &out,
                     ParticleStatistics) { return transition_amplitude(u, in, out, ParticleStatistics::Boson); };
    const VerifyReport report = run_verification(opts);
    EXPECT_FALSE(report.ok());
    const auto *efficiency = report.find("boson-fermion-efficiency");
    const auto *fidelity = report.find("w-fidelity-fermion-corrected");
    ASSERT_NE(efficiency, nullptr);
    ASSERT_NE(fidelity, nullptr);
    EXPECT_EQ(efficiency->status, CheckResult::Status::Pass);
    EXPECT_EQ(fidelity->status, CheckResult::Status::Fail);
}
