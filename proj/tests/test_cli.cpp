#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "test_support.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs grothcalc with `args` (stdout captured, stderr discarded).
Run grothcalc(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " \"" GROTHCALC_PATH "\" " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::size_t count_lines(const std::string& s)
{
    std::size_t n = 0;
    for (char c : s)
        n += c == '\n';
    return n;
}

} // namespace

TEST(Cli, ComputeSchubert)
{
    const auto r = grothcalc("compute 31542 --kind schubert");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, ortho::Polynomial::parse(ortho::fixtures::kSchubert31542, 5).to_string() + "\n");
    EXPECT_EQ(grothcalc("compute 31542 --kind schubert --method recursive").out, r.out);
}

TEST(Cli, ComputeGrothendieck)
{
    const auto r = grothcalc("compute 14532 --kind grothendieck");
    EXPECT_EQ(r.status, 0);
    const auto printed = ortho::Polynomial::parse(r.out.substr(0, r.out.size() - 1), 5);
    EXPECT_EQ(printed, ortho::Polynomial::parse(ortho::fixtures::kGrothendieck14532, 5));
    EXPECT_EQ(grothcalc("compute 1").out, "1\n");
}

TEST(Cli, ComputeJson)
{
    const auto r = grothcalc("compute 132 --format json");
    EXPECT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("w"), (std::vector<int>{1, 3, 2}));
    EXPECT_EQ(j.at("kind"), "grothendieck");
    EXPECT_EQ(ortho::Polynomial::from_json(j.at("polynomial")), ortho::Polynomial::parse("x1 + x2 - x1*x2", 3));
}

TEST(Cli, Ortho)
{
    const auto r = grothcalc("ortho 31542");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("i = (2,3,1)\nk = (1,0,0,0,0)\nm = (0,1,1)\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("□□···"), std::string::npos);
    const auto id = grothcalc("ortho 1234");
    EXPECT_NE(id.out.find("i = ()\nk = (0,0,0,0)\nm = ()\n"), std::string::npos) << id.out;
    const auto j = nlohmann::json::parse(grothcalc("ortho 68234751 --format json").out);
    EXPECT_EQ(j.at("sequence").at("i"), (std::vector<int>{5, 4, 3, 1}));
    EXPECT_EQ(j.at("sequence").at("m"), (std::vector<int>{0, 0, 1, 1}));
    EXPECT_EQ(j.at("steps").size(), 4u);
}

TEST(Cli, Diagram)
{
    EXPECT_EQ(grothcalc("diagram 31542").out, "□□···\n·····\n·□·□·\n·□···\n·····\n");
    EXPECT_EQ(grothcalc("diagram 31542 --format json").out, R"({"columns":[[1],[1,3,4],[],[3],[]],"n":5})"
                                                            "\n");
    EXPECT_EQ(grothcalc("diagram 14532 --closure --format json").out,
              R"({"columns":[[],[1,2,3,4],[1,2,3],[],[]],"n":5})"
              "\n");
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(grothcalc("compute 3154").status, 2);
    EXPECT_EQ(grothcalc("compute 31x42").status, 2);
    EXPECT_EQ(grothcalc("compute 31542 --kind bogus").status, 2);
    EXPECT_EQ(grothcalc("compute 31542 --method bogus").status, 2);
    EXPECT_EQ(grothcalc("compute").status, 2);
    EXPECT_EQ(grothcalc("").status, 2);
    EXPECT_EQ(grothcalc("frobnicate").status, 2);
    EXPECT_EQ(grothcalc("verify --n 3 --bogus").status, 2);
    EXPECT_EQ(grothcalc("verify --n 3 --suite nope").status, 2);
    EXPECT_EQ(grothcalc("verify --n 9").status, 2);
    EXPECT_EQ(grothcalc("verify --n 0").status, 2);
    EXPECT_EQ(grothcalc("report --n 12").status, 2);
    EXPECT_EQ(grothcalc("verify --n 2 --cache /nonexistent-dir/c.jsonl").status, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(grothcalc("--help").status, 0); }

TEST(Cli, VerifyPasses)
{
    const auto r = grothcalc("verify --n 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find(R"("summary":"main")"), std::string::npos);
    EXPECT_EQ(grothcalc("verify --n 4 --suite main").status, 0);
    const auto div = grothcalc("verify --n 5 --suite divisibility");
    EXPECT_EQ(div.status, 0);
    EXPECT_NE(div.out.find(R"("passed":120)"), std::string::npos);
    EXPECT_EQ(grothcalc("verify --n 3 --suite conjecture").status, 0);
}

TEST(Cli, VerifyDeterministicAcrossJobs)
{
    const auto one = grothcalc("verify --n 4 --jobs 1");
    ASSERT_EQ(one.status, 0);
    EXPECT_EQ(grothcalc("verify --n 4 --jobs 4").out, one.out);
    EXPECT_EQ(grothcalc("verify --n 4 --jobs 8").out, one.out);
}

TEST(Cli, CacheFromEnvironment)
{
    const auto path = std::filesystem::temp_directory_path() / "grothcalc_cli_env_cache.jsonl";
    std::filesystem::remove(path);
    const auto r = grothcalc("verify --n 3 --suite main", "GROTHCALC_CACHE=\"" + path.string() + "\"");
    EXPECT_EQ(r.status, 0);
    ASSERT_TRUE(std::filesystem::exists(path));
    std::ifstream in(path);
    const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(count_lines(content), 6u);
    // An explicit --cache overrides the environment.
    const auto other = std::filesystem::temp_directory_path() / "grothcalc_cli_flag_cache.jsonl";
    std::filesystem::remove(other);
    EXPECT_EQ(grothcalc("verify --n 2 --suite main --cache \"" + other.string() + "\"",
                        "GROTHCALC_CACHE=\"" + path.string() + "\"")
                  .status,
              0);
    EXPECT_TRUE(std::filesystem::exists(other));
    std::filesystem::remove(path);
    std::filesystem::remove(other);
}

TEST(Cli, Report)
{
    const auto r = grothcalc("report --n 3 --jobs 2");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(count_lines(r.out), 6u);
    const auto first = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
    EXPECT_EQ(first.at("w"), (std::vector<int>{1, 2, 3}));
}
