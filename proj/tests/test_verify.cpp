#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ortho/verify.hpp"

using namespace ortho;

namespace {

std::string verify_output(int n, std::vector<Suite> suites, int jobs, std::optional<std::string> cache = {})
{
    VerifyOptions opts;
    opts.n = n;
    opts.suites = std::move(suites);
    opts.jobs = jobs;
    opts.cache_path = std::move(cache);
    std::ostringstream out;
    run_verify(opts, out);
    return out.str();
}

std::vector<nlohmann::json> lines_of(const std::string& text)
{
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(nlohmann::json::parse(line));
    return out;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name) : path(std::filesystem::temp_directory_path() / name)
    {
        std::filesystem::remove(path);
    }
    ~TempFile() { std::filesystem::remove(path); }
};

} // namespace

TEST(Verify, SuiteNames)
{
    for (Suite s : all_suites())
        EXPECT_EQ(parse_suite(suite_name(s)), s);
    EXPECT_THROW(parse_suite("bogus"), InvalidArgument);
    EXPECT_TRUE(is_experiment(Suite::Conjecture));
    EXPECT_FALSE(is_experiment(Suite::Main));
}

TEST(Verify, AllSuitesPassOnS4)
{
    VerifyOptions opts;
    opts.n = 4;
    std::ostringstream out;
    const auto result = run_verify(opts, out);
    EXPECT_FALSE(result.gating_failure);
    ASSERT_EQ(result.summaries.size(), all_suites().size());
    for (const auto& s : result.summaries) {
        EXPECT_EQ(s.passed, 24) << suite_name(s.suite);
        EXPECT_EQ(s.failed, 0) << suite_name(s.suite);
    }
    EXPECT_EQ(lines_of(out.str()).size(), all_suites().size() * 25);
}

TEST(Verify, SummaryLineShape)
{
    const auto lines = lines_of(verify_output(5, {Suite::Divisibility}, 2));
    ASSERT_EQ(lines.size(), 121u);
    const auto& summary = lines.back();
    EXPECT_EQ(summary.at("summary"), "divisibility");
    EXPECT_EQ(summary.at("total"), 120);
    EXPECT_EQ(summary.at("passed"), 120);
    EXPECT_EQ(summary.at("experiment"), false);
    const auto degree = lines_of(verify_output(3, {Suite::Degree}, 1)).back();
    EXPECT_TRUE(degree.contains("tight_prop"));
    EXPECT_TRUE(degree.contains("tight_cor"));
}

TEST(Verify, DeterministicAcrossWorkers)
{
    const auto one = verify_output(4, all_suites(), 1);
    EXPECT_EQ(verify_output(4, all_suites(), 1), one);
    EXPECT_EQ(verify_output(4, all_suites(), 4), one);
    EXPECT_EQ(verify_output(4, all_suites(), 8), one);
}

TEST(Verify, ParallelMapKeepsIndexOrder)
{
    const auto r = parallel_map(1000, 8, [](std::size_t i) { return static_cast<int>(i * i % 97); });
    ASSERT_EQ(r.size(), 1000u);
    for (std::size_t i = 0; i < r.size(); ++i)
        EXPECT_EQ(r[i], static_cast<int>(i * i % 97));
    EXPECT_TRUE(parallel_map(0, 4, [](std::size_t) { return 0; }).empty());
}

TEST(Verify, CacheIsReusedAndOutputUnchanged)
{
    TempFile file("ortho_verify_cache_test.jsonl");
    const auto fresh = verify_output(4, {Suite::Main, Suite::Monk}, 2, file.path.string());
    EXPECT_EQ(verify_output(4, {Suite::Main, Suite::Monk}, 2), fresh);

    VerifyOptions opts;
    opts.n = 4;
    opts.suites = {Suite::Main, Suite::Monk};
    opts.cache_path = file.path.string();
    std::ostringstream out;
    const auto result = run_verify(opts, out);
    EXPECT_EQ(out.str(), fresh);
    for (const auto& s : result.summaries)
        EXPECT_EQ(s.cache_hits, 24);

    // Nothing new computed, so nothing new appended.
    std::ifstream in(file.path);
    int count = 0;
    for (std::string line; std::getline(in, line);)
        ++count;
    EXPECT_EQ(count, 48);
}

TEST(Verify, CacheIgnoresOtherVersionsAndGarbage)
{
    TempFile file("ortho_verify_cache_version.jsonl");
    {
        std::ofstream out(file.path);
        nlohmann::json stale{{"version", "ortho-verify-0"},
                             {"n", 3},
                             {"suite", "main"},
                             {"key", "123"},
                             {"record", {{"ok", false}}}};
        out << stale.dump() << "\nnot json\n\n";
    }
    ResultCache cache(file.path.string());
    EXPECT_FALSE(cache.find(3, Suite::Main, Permutation::identity(3)).has_value());

    VerifyOptions opts;
    opts.n = 3;
    opts.suites = {Suite::Main};
    opts.cache_path = file.path.string();
    std::ostringstream out;
    const auto result = run_verify(opts, out);
    EXPECT_FALSE(result.gating_failure);
    EXPECT_EQ(result.summaries[0].cache_hits, 0);
    EXPECT_EQ(result.summaries[0].passed, 6);

    ResultCache reread(file.path.string());
    const auto hit = reread.find(3, Suite::Main, Permutation::identity(3));
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(hit->at("ok"), true);
}

TEST(Verify, UnwritableCacheThrows)
{
    VerifyOptions opts;
    opts.n = 2;
    opts.cache_path = "/nonexistent-dir/cache.jsonl";
    std::ostringstream out;
    EXPECT_THROW(run_verify(opts, out), CacheError);
    opts.cache_path.reset();
    opts.n = 0;
    EXPECT_THROW(run_verify(opts, out), InvalidArgument);
}

TEST(Verify, ExperimentNeverGates)
{
    VerifyOptions opts;
    opts.n = 3;
    opts.suites = {Suite::Conjecture};
    std::ostringstream out;
    const auto result = run_verify(opts, out);
    EXPECT_FALSE(result.gating_failure);
    EXPECT_EQ(lines_of(out.str()).back().at("experiment"), true);
}

TEST(Verify, SortedRecordFieldsOnPublishedExample)
{
    const auto rec = run_check(Suite::Sorted, Permutation::parse("923854761"));
    EXPECT_EQ(rec.at("ok"), true) << rec.dump();
    EXPECT_EQ(rec.at("sorted"), true);
    for (const char* key : {"part_i", "part_ii", "part_iii", "part_iv", "part_v", "fb_strict", "exponent_change"})
        EXPECT_EQ(rec.at(key), true) << key;
    const auto unsorted = run_check(Suite::Sorted, Permutation::parse("68432751"));
    EXPECT_EQ(unsorted.at("sorted"), false);
    EXPECT_EQ(unsorted.at("unsorted_k"), true);
    EXPECT_EQ(unsorted.at("ok"), true);
}

TEST(Verify, MonkRecordSkipsOverflow)
{
    const auto rec = run_check(Suite::Monk, Permutation::parse("321"));
    EXPECT_EQ(rec.at("ok"), true);
    EXPECT_FALSE(rec.at("overflow_j").empty());
}

TEST(Report, OneRecordPerPermutation)
{
    std::ostringstream one, four;
    run_report(4, 1, one);
    run_report(4, 4, four);
    EXPECT_EQ(one.str(), four.str());
    const auto lines = lines_of(one.str());
    ASSERT_EQ(lines.size(), 24u);
    EXPECT_EQ(lines[0].at("w"), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(lines[0].at("deg_groth"), 0);
    for (const auto& rec : lines) {
        EXPECT_EQ(rec.size(), 6u);
        EXPECT_LE(rec.at("deg_groth").get<int>(), rec.at("bound_prop").get<int>());
        EXPECT_LE(rec.at("deg_groth").get<int>(), rec.at("bound_cor").get<int>());
        EXPECT_EQ(rec.at("divisibility_ok"), true);
    }
}
