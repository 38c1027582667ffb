// Conjecture experiment: theta + xi divisibility over S_1..S_5 (S_6 with
// ORTHO_EXPERIMENT_N6=1). Writes one JSON line per permutation and always
// exits 0; counterexamples are reported on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ortho/analysis.hpp"

int main(int argc, char** argv)
{
    const std::string path = argc > 1 ? argv[1] : "conjecture_report.jsonl";
    const int top = std::getenv("ORTHO_EXPERIMENT_N6") ? 6 : 5;
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 0;
    }
    int checked = 0, counterexamples = 0;
    for (int n = 1; n <= top; ++n)
        for (const auto& w : ortho::all_permutations(n)) {
            const auto r = ortho::check_conjecture(w);
            const auto sv = ortho::support_vectors(w);
            ++checked;
            nlohmann::json rec{{"w", w.one_line()},
                               {"theta", sv.theta},
                               {"xi", sv.xi},
                               {"ok", r.ok},
                               {"witness", r.witness ? nlohmann::json(r.witness->exponents()) : nlohmann::json(nullptr)}};
            out << rec.dump() << '\n';
            if (!r.ok) {
                ++counterexamples;
                std::cerr << "!! COUNTEREXAMPLE w = " << w.to_string() << ": " << r.witness->to_string()
                          << " does not divide " << r.bound.to_string() << "\n";
            }
        }
    std::cout << "conjecture experiment: " << checked << " permutations of S_1..S_" << top << ", " << counterexamples
              << " counterexamples; report " << path << "\n";
    return 0;
}
