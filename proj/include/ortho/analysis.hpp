#ifndef ORTHO_ANALYSIS_HPP
#define ORTHO_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ortho/diagram.hpp"
#include "ortho/grothendieck.hpp"
#include "ortho/permutation.hpp"
#include "ortho/polynomial.hpp"

namespace ortho {

/// Outcome of a support check: `ok` with no witness, or the first monomial
/// (in canonical order) that fails to divide the bound.
struct DivisibilityResult {
    bool ok = true;
    Monomial bound{0};
    std::optional<Monomial> witness;
};

/// Checks that every monomial of `f` divides `bound`.
inline DivisibilityResult check_support(const Polynomial& f, const Monomial& bound)
{
    DivisibilityResult result;
    result.bound = bound;
    for (const auto& [m, c] : f.terms()) {
        if (!m.divides(bound)) {
            result.ok = false;
            result.witness = m;
            break;
        }
    }
    return result;
}

/// x^{upper closure of D(w)}.
inline Monomial upper_closure_monomial(const Permutation& w)
{
    return diagram_monomial(upper_closure(rothe_diagram(w)));
}

/// Every monomial of G_w divides x^{upper closure of D(w)}.
inline DivisibilityResult check_divisibility(const Permutation& w)
{
    return check_support(grothendieck_recursive(w), upper_closure_monomial(w));
}

struct DegreeReport {
    int deg_groth = 0;
    int deg_schub = 0;
    int ortho_length = 0;
    int upper_closure_size = 0;
    int bound_prop = 0;
    int bound_cor = 0;

    bool holds() const { return deg_groth <= bound_prop && deg_groth <= bound_cor; }
};

inline DegreeReport degree_report(const Permutation& w)
{
    DegreeReport r;
    r.deg_groth = grothendieck_recursive(w).degree();
    r.deg_schub = schubert_recursive(w).degree();
    r.ortho_length = orthodontia(rothe_diagram(w)).length();
    r.upper_closure_size = upper_closure(rothe_diagram(w)).box_count();
    r.bound_prop = r.deg_schub + r.ortho_length;
    r.bound_cor = r.upper_closure_size;
    return r;
}

/// Details of the exponent-change relation between w and its sorted step down.
struct ExponentChange {
    bool ok = false;
    int gamma = 0;
    Monomial closure_w{0};
    Monomial closure_down{0};
    std::string failure;
};

/// For sorted nonidentity w with w' = w s_{i_1} ... s_{alpha+1}, verifies
///   x^{closure D(w)} * x_{alpha+1}^beta = x^{closure D(w')} * (x_{alpha+2} ... x_{i_1+1})^gamma
/// and that c_{alpha+1} = c_p + gamma for p in [alpha+2, i_1+1], where c is the
/// exponent vector of x^{closure D(w')} x_{alpha+1}^{-beta}.
inline ExponentChange exponent_change_check(const Permutation& w)
{
    if (w.is_identity() || !is_sorted_permutation(w))
        throw InvalidArgument("exponent_change_check: needs a sorted nonidentity permutation");
    const int n = w.size();
    const auto data = primary_column_data(w);
    const Diagram d = rothe_diagram(w);
    const Permutation down = sorted_step_down(w);

    ExponentChange out;
    for (int j = data.h + 1; j <= n; ++j)
        if (column_max(d.column(j)) == data.i1 + 1)
            ++out.gamma;
    out.closure_w = upper_closure_monomial(w);
    out.closure_down = upper_closure_monomial(down);

    Monomial lhs = out.closure_w * Monomial::variable(n, data.alpha + 1, data.beta);
    Monomial rhs = out.closure_down;
    for (int p = data.alpha + 2; p <= data.i1 + 1; ++p)
        rhs = rhs * Monomial::variable(n, p, out.gamma);
    if (!(lhs == rhs)) {
        out.failure = "monomial relation: " + lhs.to_string() + " != " + rhs.to_string();
        return out;
    }

    std::vector<int> c = out.closure_down.exponents();
    c[static_cast<std::size_t>(data.alpha)] -= data.beta;
    const int top = c[static_cast<std::size_t>(data.alpha)];
    for (int p = data.alpha + 2; p <= data.i1 + 1; ++p) {
        if (c[static_cast<std::size_t>(p - 1)] + out.gamma != top) {
            out.failure = "exponent chain breaks at x" + std::to_string(p);
            return out;
        }
    }
    out.ok = true;
    return out;
}

struct SupportVectors {
    std::vector<int> theta;
    std::vector<int> xi;
};

/// theta_j counts the columns of D(w) reaching row j; xi_j counts the
/// occurrences of j among the teeth of the orthodontic sequence.
inline SupportVectors support_vectors(const Permutation& w)
{
    const int n = w.size();
    const Diagram d = rothe_diagram(w);
    SupportVectors out;
    out.theta.assign(static_cast<std::size_t>(n), 0);
    out.xi.assign(static_cast<std::size_t>(n), 0);
    for (int j = 1; j <= n; ++j)
        for (const auto& col : d.columns())
            if (j <= column_max(col))
                ++out.theta[static_cast<std::size_t>(j - 1)];
    for (int tooth : orthodontia(d).teeth)
        ++out.xi[static_cast<std::size_t>(tooth - 1)];
    return out;
}

/// Tests whether every monomial of G_w divides x^{theta(w) + xi(w)}. A
/// failure is an experimental observation, not an error.
inline DivisibilityResult check_conjecture(const Permutation& w)
{
    const int n = w.size();
    const auto sv = support_vectors(w);
    std::vector<int> exps(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        exps[static_cast<std::size_t>(j)] = sv.theta[static_cast<std::size_t>(j)] + sv.xi[static_cast<std::size_t>(j)];
    return check_support(grothendieck_recursive(w), Monomial(n, exps));
}

} // namespace ortho

#endif // ORTHO_ANALYSIS_HPP
