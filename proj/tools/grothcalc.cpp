// Command-line front end: compute polynomials, trace orthodontia, draw
// diagrams, and run the exhaustive verification suites.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ortho/analysis.hpp"
#include "ortho/diagram.hpp"
#include "ortho/grothendieck.hpp"
#include "ortho/permutation.hpp"
#include "ortho/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string join(const std::vector<int>& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(v[i]);
    }
    return out + ")";
}

int cmd_compute(const std::string& perm, const std::string& method, const std::string& kind_name,
                const std::string& format)
{
    const auto w = ortho::Permutation::parse(perm);
    const auto kind = kind_name == "schubert" ? ortho::PolynomialKind::Schubert : ortho::PolynomialKind::Grothendieck;
    const ortho::Polynomial recursive = ortho::recursive_polynomial(kind, w);
    const ortho::Polynomial ortho_value = ortho::orthodontia_polynomial(kind, w);
    if (!(recursive == ortho_value)) {
        std::cerr << "error: methods disagree for " << w.to_string() << "\n"
                  << "  recursive:   " << recursive.to_string() << "\n"
                  << "  orthodontia: " << ortho_value.to_string() << "\n";
        return kExitVerifyFailed;
    }
    const ortho::Polynomial& value = method == "recursive" ? recursive : ortho_value;
    if (format == "json") {
        nlohmann::json j{{"w", w.one_line()}, {"kind", kind_name}, {"method", method}, {"polynomial", value.to_json()}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << value.to_string() << "\n";
    }
    return kExitOk;
}

int cmd_ortho(const std::string& perm, const std::string& format)
{
    const auto w = ortho::Permutation::parse(perm);
    ortho::OrthodontiaTrace trace;
    const auto seq = ortho::orthodontia(ortho::rothe_diagram(w), &trace);
    if (format == "json") {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& s : trace.steps)
            steps.push_back({{"tooth", s.tooth},
                             {"removed", s.removed},
                             {"after_swap", s.after_swap.to_json()},
                             {"after_removal", s.after_removal.to_json()}});
        nlohmann::json j{{"w", w.one_line()},
                         {"sequence", seq.to_json()},
                         {"initial", trace.initial.to_json()},
                         {"after_initial_removal", trace.after_initial_removal.to_json()},
                         {"steps", steps}};
        std::cout << j.dump() << "\n";
        return kExitOk;
    }
    std::cout << "i = " << join(seq.teeth) << "\n"
              << "k = " << join(seq.k) << "\n"
              << "m = " << join(seq.m) << "\n\n";
    std::cout << "D(" << w.to_string() << ")\n" << trace.initial.to_ascii() << "\n";
    std::cout << "remove standard intervals, k = " << join(seq.k) << "\n"
              << trace.after_initial_removal.to_ascii();
    int t = 1;
    for (const auto& s : trace.steps) {
        std::cout << "\nstep " << t << ": swap rows " << s.tooth << " and " << s.tooth + 1 << "\n"
                  << s.after_swap.to_ascii();
        std::cout << "remove " << s.removed << " column(s) [" << s.tooth << "]\n" << s.after_removal.to_ascii();
        ++t;
    }
    return kExitOk;
}

int cmd_diagram(const std::string& perm, bool closure, const std::string& format)
{
    const auto w = ortho::Permutation::parse(perm);
    ortho::Diagram d = ortho::rothe_diagram(w);
    if (closure)
        d = ortho::upper_closure(d);
    if (format == "json")
        std::cout << d.to_json().dump() << "\n";
    else
        std::cout << d.to_ascii();
    return kExitOk;
}

int cmd_verify(int n, const std::vector<std::string>& suite_names, int jobs, std::string cache, int max_n)
{
    if (n < 1 || n > max_n) {
        std::cerr << "error: n = " << n << " outside [1," << max_n << "] (raise with --max-n)\n";
        return kExitUsage;
    }
    if (n >= 7)
        std::cerr << "warning: n = " << n << " sweeps " << (n == 7 ? "5040" : "many")
                  << " permutations and may take a long time\n";
    ortho::VerifyOptions opts;
    opts.n = n;
    opts.jobs = jobs;
    if (!suite_names.empty()) {
        opts.suites.clear();
        for (const auto& name : suite_names) {
            if (name == "all") {
                opts.suites = ortho::all_suites();
                break;
            }
            opts.suites.push_back(ortho::parse_suite(name));
        }
    }
    if (cache.empty())
        if (const char* env = std::getenv("GROTHCALC_CACHE"))
            cache = env;
    if (!cache.empty())
        opts.cache_path = cache;

    const auto result = ortho::run_verify(opts, std::cout);
    for (const auto& s : result.summaries) {
        if (ortho::is_experiment(s.suite) && s.failed > 0)
            std::cerr << "NOTE: experiment '" << ortho::suite_name(s.suite) << "' found " << s.failed
                      << " counterexample(s); see the records with \"ok\":false\n";
    }
    return result.gating_failure ? kExitVerifyFailed : kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Schubert and Grothendieck polynomials via orthodontia"};
    app.require_subcommand(1);

    std::string perm, method = "orthodontia", kind = "grothendieck", format = "text";
    auto* compute = app.add_subcommand("compute", "Compute a Schubert or Grothendieck polynomial");
    compute->add_option("w", perm, "Permutation, e.g. 31542 or 10,1,2,...")->required();
    compute->add_option("--method", method, "recursive or orthodontia")
        ->check(CLI::IsMember({"recursive", "orthodontia"}));
    compute->add_option("--kind", kind, "schubert or grothendieck")->check(CLI::IsMember({"schubert", "grothendieck"}));
    compute->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* ortho_cmd = app.add_subcommand("ortho", "Orthodontic sequence with a diagram trace");
    ortho_cmd->add_option("w", perm, "Permutation")->required();
    ortho_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    bool closure = false;
    auto* diagram = app.add_subcommand("diagram", "Draw the Rothe diagram");
    diagram->add_option("w", perm, "Permutation")->required();
    diagram->add_flag("--closure", closure, "Draw the upper closure instead");
    diagram->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    int n = 4, jobs = 1, max_n = 7;
    std::vector<std::string> suites;
    std::string cache;
    auto* verify = app.add_subcommand("verify", "Run verification suites over all of S_n");
    verify->add_option("--n", n, "Rank")->required();
    verify->add_option("--suite", suites, "main, divisibility, degree, sorted, monk, conjecture, all");
    verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--cache", cache, "JSON-lines result cache (default: $GROTHCALC_CACHE)");
    verify->add_option("--max-n", max_n, "Largest accepted rank");

    auto* report = app.add_subcommand("report", "Degree and support report for all of S_n");
    report->add_option("--n", n, "Rank")->required();
    report->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    report->add_option("--max-n", max_n, "Largest accepted rank");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*compute)
            return cmd_compute(perm, method, kind, format);
        if (*ortho_cmd)
            return cmd_ortho(perm, format);
        if (*diagram)
            return cmd_diagram(perm, closure, format);
        if (*verify)
            return cmd_verify(n, suites, jobs, cache, max_n);
        if (*report) {
            if (n < 1 || n > max_n) {
                std::cerr << "error: n = " << n << " outside [1," << max_n << "]\n";
                return kExitUsage;
            }
            ortho::run_report(n, jobs, std::cout);
            return kExitOk;
        }
    } catch (const ortho::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ortho::CacheError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    return kExitUsage;
}
