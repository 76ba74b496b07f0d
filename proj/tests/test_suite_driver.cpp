#include "symalg/suite.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace symalg;

namespace {

SuiteConfig fast(std::uint64_t seed = 42) {
    SuiteConfig cfg;
    cfg.suites = {"symfun", "tensor", "divided"};
    cfg.seed = seed;
    return cfg;
}

nlohmann::json checks_of(const nlohmann::json& report, const std::string& suite) {
    nlohmann::json out = nlohmann::json::array();
    for (auto& c : report.at("checks"))
        if (c.at("suite") == suite) out.push_back(c);
    return out;
}

}  // namespace

TEST(SuiteConfig, RejectsUnknownSuites) {
    SuiteConfig cfg;
    cfg.suites = {"tensor", "bogus"};
    EXPECT_THROW(cfg.validate(), InputError);
    EXPECT_THROW(run_suite(cfg), InputError);
}

TEST(SuiteConfig, EnforcesCaps) {
    SuiteConfig a;
    a.theta_samples = 200000;
    EXPECT_THROW(a.validate(), ResourceLimit);
    SuiteConfig b;
    b.multi_bounds = {4, 2};
    EXPECT_THROW(b.validate(), ResourceLimit);
    SuiteConfig c;
    c.cech_bounds.max_base = 5;
    EXPECT_THROW(c.validate(), ResourceLimit);
    SuiteConfig d;
    d.kernel_degree = 7;
    EXPECT_THROW(d.validate(), ResourceLimit);
    EXPECT_NO_THROW(SuiteConfig{}.validate());
}

TEST(Fnv1a, KnownVectors) {
    EXPECT_EQ(detail::fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(detail::fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(detail::fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Report, SameSeedSameBytes) {
    const std::string a = run_suite(fast()).json.dump(2), b = run_suite(fast()).json.dump(2);
    EXPECT_EQ(a, b);
}

TEST(Report, SuiteStreamsDoNotDependOnSelection) {
    SuiteConfig alone;
    alone.suites = {"tensor"};
    const auto one = run_suite(alone).json;
    const auto three = run_suite(fast()).json;
    EXPECT_EQ(checks_of(one, "tensor"), checks_of(three, "tensor"));
    // selection order and duplicates do not matter
    SuiteConfig shuffled;
    shuffled.suites = {"divided", "tensor", "symfun", "tensor"};
    EXPECT_EQ(run_suite(shuffled).json.dump(), three.dump());
}

TEST(Report, Schema) {
    SuiteConfig cfg = fast(7);
    cfg.golden_dir = SYMALG_GOLDEN_DIR;
    const auto r = run_suite(cfg);
    const auto& j = r.json;
    EXPECT_TRUE(r.ok()) << j.dump(2).substr(0, 2000);
    EXPECT_EQ(j.at("schema_version"), kReportSchema);
    EXPECT_EQ(j.at("tool"), "symalg");
    EXPECT_EQ(j.at("version"), kToolVersion);
    EXPECT_EQ(j.at("seed"), 7u);
    EXPECT_EQ(j.at("config").at("suites"), (nlohmann::json{"divided", "symfun", "tensor"}));
    EXPECT_FALSE(j.contains("timings_seconds"));

    const auto& checks = j.at("checks");
    EXPECT_EQ(j.at("summary").at("checks"), checks.size());
    EXPECT_EQ(j.at("summary").at("failed"), 0u);
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        for (auto key : {"suite", "check", "ok", "checked", "failed"}) ASSERT_TRUE(c.contains(key)) << key;
        ASSERT_GT(c.at("checked").get<std::size_t>(), 0u) << c.dump();
        if (i) {
            const auto& p = checks[i - 1];
            ASSERT_LE(std::make_pair(p.at("suite").get<std::string>(), p.at("check").get<std::string>()),
                      std::make_pair(c.at("suite").get<std::string>(), c.at("check").get<std::string>()));
        }
    }

    const auto& inputs = j.at("inputs");
    EXPECT_EQ(inputs.size(), 5u);
    for (auto& [name, hash] : inputs.items()) {
        EXPECT_EQ(name.rfind("golden/wk_", 0), 0u);
        EXPECT_EQ(hash.get<std::string>().size(), 16u);
    }
}

TEST(Report, TimingsAreOptIn) {
    SuiteConfig cfg;
    cfg.suites = {"symfun"};
    cfg.timings = true;
    const auto j = run_suite(cfg).json;
    ASSERT_TRUE(j.contains("timings_seconds"));
    EXPECT_TRUE(j.at("timings_seconds").contains("symfun"));
}

TEST(Report, FailuresCarryAReplayCommand) {
    // a golden directory with a wrong table makes the golden check fail
    const std::string dir = testing::TempDir() + "symalg_bad_goldens";
    std::filesystem::create_directories(dir);
    for (auto& f : {"wk_1_2.json", "wk_2_1.json", "wk_2_2.json", "wk_2_3.json", "wk_3_2.json"})
        std::filesystem::copy_file(std::string(SYMALG_GOLDEN_DIR) + "/" + f, dir + "/" + f,
                                   std::filesystem::copy_options::overwrite_existing);
    {
        std::ofstream out(dir + "/wk_2_2.json");
        out << R"({"m": 2, "n": 2, "w": []})";
    }
    SuiteConfig cfg;
    cfg.suites = {"symfun"};
    cfg.seed = 9;
    cfg.golden_dir = dir;
    const auto r = run_suite(cfg);
    EXPECT_FALSE(r.ok());
    bool found = false;
    for (auto& c : r.json.at("checks"))
        if (!c.at("ok").get<bool>()) {
            found = true;
            EXPECT_EQ(c.at("check"), "w_k golden (2,2)");
            EXPECT_EQ(c.at("replay"), "symalg suite --suite symfun --seed 9");
        }
    EXPECT_TRUE(found);
    EXPECT_EQ(r.json.at("summary").at("failed"), 1u);
}
