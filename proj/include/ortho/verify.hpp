#ifndef ORTHO_VERIFY_HPP
#define ORTHO_VERIFY_HPP

#include <atomic>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "ortho/analysis.hpp"
#include "ortho/diagram.hpp"
#include "ortho/error.hpp"
#include "ortho/grothendieck.hpp"
#include "ortho/permutation.hpp"

namespace ortho {

/// Bumped whenever a suite's record layout or semantics change; cached
/// records with a different stamp are ignored.
inline constexpr const char* kVerifyVersion = "ortho-verify-1";

enum class Suite { Main, Divisibility, Degree, Sorted, Monk, Conjecture };

inline const std::vector<Suite>& all_suites()
{
    static const std::vector<Suite> suites{Suite::Main, Suite::Divisibility, Suite::Degree,
                                           Suite::Sorted, Suite::Monk, Suite::Conjecture};
    return suites;
}

inline std::string suite_name(Suite s)
{
    switch (s) {
    case Suite::Main: return "main";
    case Suite::Divisibility: return "divisibility";
    case Suite::Degree: return "degree";
    case Suite::Sorted: return "sorted";
    case Suite::Monk: return "monk";
    case Suite::Conjecture: return "conjecture";
    }
    return "unknown";
}

inline Suite parse_suite(const std::string& name)
{
    for (Suite s : all_suites())
        if (suite_name(s) == name)
            return s;
    throw InvalidArgument("unknown suite '" + name + "'");
}

/// Experiments report observations; their failures never fail a run.
inline bool is_experiment(Suite s) { return s == Suite::Conjecture; }

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json monomial_json(const Monomial& m) { return m.exponents(); }

inline std::vector<int> fb_sizes_along_chain(const Permutation& w, std::vector<bool>& strict_steps)
{
    std::vector<int> sizes{static_cast<int>(fallen_boxes(w).size())};
    Permutation v = w;
    while (!v.is_identity()) {
        const bool sorted = is_sorted_permutation(v);
        v = os_predecessor(v);
        strict_steps.push_back(sorted);
        sizes.push_back(static_cast<int>(fallen_boxes(v).size()));
        if (sizes.size() > 100000)
            throw ContractViolation("orthodontic sort order chain does not terminate");
    }
    return sizes;
}

inline nlohmann::json check_main(const Permutation& w)
{
    const Polynomial g_rec = grothendieck_recursive(w);
    const Polynomial s_rec = schubert_recursive(w);
    const bool groth = orthodontia_grothendieck(w) == g_rec;
    const bool schub = orthodontia_schubert(w) == s_rec;
    const bool lowest = g_rec.lowest_degree_component() == s_rec;
    return {{"groth_equal", groth}, {"schub_equal", schub}, {"lowest_equal", lowest},
            {"ok", groth && schub && lowest}};
}

inline nlohmann::json check_divisibility_record(const Permutation& w)
{
    const auto r = check_divisibility(w);
    return {{"bound", monomial_json(r.bound)},
            {"witness", r.witness ? monomial_json(*r.witness) : nlohmann::json(nullptr)},
            {"ok", r.ok}};
}

inline nlohmann::json check_degree(const Permutation& w)
{
    const auto r = degree_report(w);
    return {{"deg_groth", r.deg_groth},
            {"deg_schub", r.deg_schub},
            {"ell", r.ortho_length},
            {"closure_size", r.upper_closure_size},
            {"bound_prop", r.bound_prop},
            {"bound_cor", r.bound_cor},
            {"tight_prop", r.deg_groth == r.bound_prop},
            {"tight_cor", r.deg_groth == r.bound_cor},
            {"ok", r.holds()}};
}

// Structural statements about orthodontia under sorting and under the
// sorted step down, plus fallen-box monotonicity along the sort order.
inline nlohmann::json check_sorted(const Permutation& w)
{
    nlohmann::json rec;
    bool ok = true;
    auto record = [&](const char* key, bool value) {
        rec[key] = value;
        ok = ok && value;
    };

    const auto data = primary_column_data(w);
    const Permutation ws = sort_permutation(w);
    const Permutation sig = sigma(w);
    const auto seq = orthodontia(rothe_diagram(w));
    const auto seq_sort = orthodontia(rothe_diagram(ws));
    const auto seq_sigma = orthodontia(rothe_diagram(sig));

    // Unsorted orthodontia: i and m agree with w_sort, k shifts by k(sigma).
    std::vector<int> k_expected = seq_sort.k;
    int sigma_total = 0;
    for (int v : seq_sigma.k)
        sigma_total += v;
    if (data.alpha >= 1)
        k_expected[static_cast<std::size_t>(data.alpha - 1)] -= sigma_total;
    for (int j = data.alpha + 1; j <= data.i1; ++j)
        k_expected[static_cast<std::size_t>(j - 1)] += seq_sigma.k[static_cast<std::size_t>(j - data.alpha - 1)];
    record("unsorted_i_m", seq.teeth == seq_sort.teeth && seq.m == seq_sort.m);
    record("unsorted_k", seq.k == k_expected);
    record("fb_sort_invariant", fallen_boxes(w) == fallen_boxes(ws));

    const bool sorted = sig.is_identity();
    rec["sorted"] = sorted;
    if (sorted && !w.is_identity()) {
        const int beta = data.beta;
        const int alpha = data.alpha;
        const int ell = seq.length();
        bool part1 = ell >= beta;
        for (int t = 1; part1 && t <= beta; ++t)
            part1 = seq.teeth[static_cast<std::size_t>(t - 1)] == data.i1 - t + 1;
        record("part_i", part1);
        record("part_ii", alpha == 0 || seq.k[static_cast<std::size_t>(alpha - 1)] >= beta);
        bool part3 = true;
        for (int j = alpha + 1; j <= data.i1; ++j)
            part3 = part3 && seq.k[static_cast<std::size_t>(j - 1)] == 0;
        record("part_iii", part3);
        bool part4 = true;
        for (int t = 1; t <= beta - 1 && t <= ell; ++t)
            part4 = part4 && seq.m[static_cast<std::size_t>(t - 1)] == 0;
        record("part_iv", part4);

        const Permutation down = sorted_step_down(w);
        const auto seq_down = orthodontia(rothe_diagram(down));
        bool part5 = part1;
        if (part5) {
            std::vector<int> teeth(seq.teeth.begin() + beta, seq.teeth.end());
            std::vector<int> ms(seq.m.begin() + beta, seq.m.end());
            std::vector<int> k = seq.k;
            if (alpha > 0)
                k[static_cast<std::size_t>(alpha - 1)] -= beta;
            k[static_cast<std::size_t>(alpha)] = beta + seq.m[static_cast<std::size_t>(beta - 1)];
            part5 = seq_down.teeth == teeth && seq_down.m == ms && seq_down.k == k;
        }
        record("part_v", part5);
        record("fb_strict", fallen_boxes(down).size() < fallen_boxes(w).size());
        record("exponent_change", exponent_change_check(w).ok);
    }

    std::vector<bool> strict_steps;
    const auto sizes = fb_sizes_along_chain(w, strict_steps);
    bool chain = true;
    for (std::size_t s = 0; s < strict_steps.size(); ++s) {
        if (strict_steps[s])
            chain = chain && sizes[s + 1] < sizes[s];
        else
            chain = chain && sizes[s + 1] <= sizes[s];
    }
    rec["chain_length"] = strict_steps.size();
    record("fb_chain", chain);
    rec["ok"] = ok;
    return rec;
}

inline nlohmann::json check_monk(const Permutation& w)
{
    const int n = w.size();
    nlohmann::json checked = nlohmann::json::array();
    nlohmann::json skipped = nlohmann::json::array();
    bool ok = true;
    const Polynomial g = grothendieck_recursive(w);
    for (int j = 1; j <= n; ++j) {
        std::vector<MonkTerm> terms;
        try {
            terms = monk_terms(j, w);
        } catch (const RankOverflow&) {
            skipped.push_back(j);
            continue;
        }
        Polynomial rhs(n);
        for (const auto& t : terms)
            rhs += grothendieck_recursive(t.v) * Integer(t.sign);
        const bool good = g * Monomial::variable(n, j) == rhs;
        checked.push_back(j);
        ok = ok && good;
    }
    return {{"checked_j", checked}, {"overflow_j", skipped}, {"ok", ok}};
}

inline nlohmann::json check_conjecture_record(const Permutation& w)
{
    const auto r = check_conjecture(w);
    return {{"bound", monomial_json(r.bound)},
            {"witness", r.witness ? monomial_json(*r.witness) : nlohmann::json(nullptr)},
            {"ok", r.ok}};
}

} // namespace detail

/// Runs one suite on one permutation. The record always carries "ok";
/// exceptions are captured into an "error" field.
inline nlohmann::json run_check(Suite suite, const Permutation& w)
{
    nlohmann::json rec;
    try {
        switch (suite) {
        case Suite::Main: rec = detail::check_main(w); break;
        case Suite::Divisibility: rec = detail::check_divisibility_record(w); break;
        case Suite::Degree: rec = detail::check_degree(w); break;
        case Suite::Sorted: rec = detail::check_sorted(w); break;
        case Suite::Monk: rec = detail::check_monk(w); break;
        case Suite::Conjecture: rec = detail::check_conjecture_record(w); break;
        }
    } catch (const std::exception& e) {
        rec = {{"ok", false}, {"error", e.what()}};
    }
    rec["suite"] = suite_name(suite);
    rec["w"] = w.one_line();
    return rec;
}

/// Append-only JSON-lines store of finished records keyed by (n, suite, w).
class ResultCache {
public:
    explicit ResultCache(std::string path) : path_(std::move(path))
    {
        std::ifstream in(path_);
        if (!in) {
            std::ofstream probe(path_, std::ios::app);
            if (!probe)
                throw CacheError("cannot open cache file '" + path_ + "'");
            return;
        }
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || j.value("version", "") != kVerifyVersion)
                continue;
            entries_[{j.at("n").get<int>(), j.at("suite").get<std::string>(), j.at("key").get<std::string>()}] =
                j.at("record");
        }
    }

    std::optional<nlohmann::json> find(int n, Suite s, const Permutation& w) const
    {
        auto it = entries_.find({n, suite_name(s), w.to_string()});
        if (it == entries_.end())
            return std::nullopt;
        return std::optional<nlohmann::json>(std::in_place, it->second);
    }

    void append(int n, Suite s, const Permutation& w, const nlohmann::json& record)
    {
        pending_.push_back({{"version", kVerifyVersion},
                            {"n", n},
                            {"suite", suite_name(s)},
                            {"key", w.to_string()},
                            {"record", record}});
        entries_[{n, suite_name(s), w.to_string()}] = record;
    }

    void flush()
    {
        if (pending_.empty())
            return;
        std::ofstream out(path_, std::ios::app);
        if (!out)
            throw CacheError("cannot append to cache file '" + path_ + "'");
        for (const auto& j : pending_)
            out << j.dump() << '\n';
        if (!out)
            throw CacheError("write to cache file '" + path_ + "' failed");
        pending_.clear();
    }

private:
    std::string path_;
    std::map<std::tuple<int, std::string, std::string>, nlohmann::json> entries_;
    std::vector<nlohmann::json> pending_;
};

struct VerifyOptions {
    int n = 4;
    std::vector<Suite> suites = all_suites();
    int jobs = 1;
    std::optional<std::string> cache_path;
};

struct SuiteSummary {
    Suite suite = Suite::Main;
    int passed = 0;
    int failed = 0;
    int tight_prop = 0;
    int tight_cor = 0;
    int cache_hits = 0;
};

struct VerifyResult {
    std::vector<SuiteSummary> summaries;
    bool gating_failure = false;
};

/// Evaluates `fn(index)` for every index in [0, count) on `jobs` threads and
/// returns the results in index order, independent of completion order.
template <typename Fn>
auto parallel_map(std::size_t count, int jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    std::vector<decltype(fn(std::size_t{}))> results(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
            results[i] = fn(i);
    };
    const int threads = std::max(1, jobs);
    if (threads == 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    pool.clear();
    return results;
}

/// Runs the selected suites over all of S_n, streaming one JSON line per
/// (suite, permutation) and then one summary line per suite. Output order
/// is lexicographic in w within each suite, in the order suites were given.
inline VerifyResult run_verify(const VerifyOptions& opts, std::ostream& out)
{
    if (opts.n < 1)
        throw InvalidArgument("verify: n must be positive");
    const auto perms = all_permutations(opts.n);
    std::optional<ResultCache> cache;
    if (opts.cache_path)
        cache.emplace(*opts.cache_path);

    VerifyResult result;
    for (Suite suite : opts.suites) {
        SuiteSummary summary;
        summary.suite = suite;
        std::vector<std::optional<nlohmann::json>> cached(perms.size());
        if (cache)
            for (std::size_t i = 0; i < perms.size(); ++i)
                cached[i] = cache->find(opts.n, suite, perms[i]);

        auto records = parallel_map(perms.size(), opts.jobs, [&](std::size_t i) {
            return cached[i] ? *cached[i] : run_check(suite, perms[i]);
        });

        for (std::size_t i = 0; i < perms.size(); ++i) {
            const auto& rec = records[i];
            if (cached[i])
                ++summary.cache_hits;
            else if (cache)
                cache->append(opts.n, suite, perms[i], rec);
            if (rec.at("ok").get<bool>())
                ++summary.passed;
            else
                ++summary.failed;
            if (rec.value("tight_prop", false))
                ++summary.tight_prop;
            if (rec.value("tight_cor", false))
                ++summary.tight_cor;
            out << rec.dump() << '\n';
        }
        if (cache)
            cache->flush();

        nlohmann::json line{{"summary", suite_name(suite)},
                            {"n", opts.n},
                            {"total", perms.size()},
                            {"passed", summary.passed},
                            {"failed", summary.failed},
                            {"experiment", is_experiment(suite)}};
        if (suite == Suite::Degree) {
            line["tight_prop"] = summary.tight_prop;
            line["tight_cor"] = summary.tight_cor;
        }
        out << line.dump() << '\n';
        if (summary.failed > 0 && !is_experiment(suite))
            result.gating_failure = true;
        result.summaries.push_back(summary);
    }
    return result;
}

/// One record per permutation of S_n:
/// {w, deg_groth, bound_prop, bound_cor, divisibility_ok, conjecture_ok}.
inline void run_report(int n, int jobs, std::ostream& out)
{
    const auto perms = all_permutations(n);
    auto lines = parallel_map(perms.size(), jobs, [&](std::size_t i) {
        const auto& w = perms[i];
        const auto deg = degree_report(w);
        nlohmann::json rec{{"w", w.one_line()},
                           {"deg_groth", deg.deg_groth},
                           {"bound_prop", deg.bound_prop},
                           {"bound_cor", deg.bound_cor},
                           {"divisibility_ok", check_divisibility(w).ok},
                           {"conjecture_ok", check_conjecture(w).ok}};
        return rec.dump();
    });
    for (const auto& line : lines)
        out << line << '\n';
}

} // namespace ortho

#endif // ORTHO_VERIFY_HPP
