#ifndef ORTHO_GROTHENDIECK_HPP
#define ORTHO_GROTHENDIECK_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ortho/diagram.hpp"
#include "ortho/error.hpp"
#include "ortho/operators.hpp"
#include "ortho/permutation.hpp"
#include "ortho/polynomial.hpp"

namespace ortho {

enum class PolynomialKind { Schubert, Grothendieck };

/// x_1^{n-1} x_2^{n-2} ... x_{n-1}, the value at the longest element.
inline Polynomial staircase(int n)
{
    std::vector<int> exps(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        exps[static_cast<std::size_t>(j)] = n - 1 - j;
    return Polynomial::from_monomial(Monomial(n, exps));
}

/// Memo table for the recursive definitions, shared between threads.
///
/// Each entry is computed outside the lock and inserted only if still
/// absent; two workers may duplicate a computation but never observe a
/// partially built value.
class RecursiveCache {
public:
    explicit RecursiveCache(PolynomialKind kind) : kind_(kind) {}

    std::shared_ptr<const Polynomial> get(const Permutation& w)
    {
        {
            std::lock_guard lock(mutex_);
            auto it = table_.find(w);
            if (it != table_.end())
                return it->second;
        }
        std::shared_ptr<const Polynomial> value;
        const int n = w.size();
        if (w == Permutation::longest_element(n)) {
            value = std::make_shared<const Polynomial>(staircase(n));
        } else {
            // Any ascent works; the smallest one keeps the walk deterministic.
            const int j = w.ascents().front();
            const auto parent = get(w.right_multiply_adjacent(j));
            value = std::make_shared<const Polynomial>(kind_ == PolynomialKind::Schubert
                                                           ? divided_difference(j, *parent)
                                                           : isobaric(j, *parent));
        }
        std::lock_guard lock(mutex_);
        return table_.try_emplace(w, std::move(value)).first->second;
    }

    std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return table_.size();
    }

    void clear()
    {
        std::lock_guard lock(mutex_);
        table_.clear();
    }

private:
    PolynomialKind kind_;
    mutable std::mutex mutex_;
    std::unordered_map<Permutation, std::shared_ptr<const Polynomial>, PermutationHash> table_;
};

inline RecursiveCache& recursive_cache(PolynomialKind kind)
{
    static RecursiveCache schubert(PolynomialKind::Schubert);
    static RecursiveCache grothendieck(PolynomialKind::Grothendieck);
    return kind == PolynomialKind::Schubert ? schubert : grothendieck;
}

/// Schubert polynomial from the divided-difference recursion on weak order.
inline Polynomial schubert_recursive(const Permutation& w)
{
    return *recursive_cache(PolynomialKind::Schubert).get(w);
}

/// Grothendieck polynomial from the isobaric recursion on weak order.
inline Polynomial grothendieck_recursive(const Permutation& w)
{
    return *recursive_cache(PolynomialKind::Grothendieck).get(w);
}

inline Polynomial recursive_polynomial(PolynomialKind kind, const Permutation& w)
{
    return *recursive_cache(kind).get(w);
}

/// Evaluates
///   omega_1^{k_1} ... omega_n^{k_n} op_{i_1}(omega_{i_1}^{m_1} op_{i_2}( ... op_{i_l}(omega_{i_l}^{m_l}) ... ))
/// from the innermost operator outwards, with op = pi for Schubert and
/// pi-bar for Grothendieck.
inline Polynomial evaluate_orthodontic_formula(const OrthodonticSequence& seq, int n, PolynomialKind kind)
{
    if (static_cast<int>(seq.k.size()) != n || seq.teeth.size() != seq.m.size())
        throw InvalidArgument("orthodontic formula: malformed sequence");
    auto weight_power = [n](int j, int e) {
        Monomial out(n);
        const Monomial w = fundamental_weight(j, n);
        for (int p = 0; p < e; ++p)
            out = out * w;
        return out;
    };

    Polynomial acc = Polynomial::constant(n, 1);
    for (std::size_t t = seq.teeth.size(); t-- > 0;) {
        const int i = seq.teeth[t];
        if (seq.m[t] > 0)
            acc = acc * weight_power(i, seq.m[t]);
        acc = kind == PolynomialKind::Schubert ? demazure(i, acc) : demazure_lascoux(i, acc);
    }
    Monomial prefix(n);
    for (int j = 1; j <= n; ++j)
        if (seq.k[static_cast<std::size_t>(j - 1)] > 0)
            prefix = prefix * weight_power(j, seq.k[static_cast<std::size_t>(j - 1)]);
    return acc * prefix;
}

/// S_D for a strongly separated diagram with ordered columns.
inline Polynomial orthodontia_schubert(const Diagram& d)
{
    return evaluate_orthodontic_formula(orthodontia(d), d.size(), PolynomialKind::Schubert);
}

/// G_D for a strongly separated diagram with ordered columns.
inline Polynomial orthodontia_grothendieck(const Diagram& d)
{
    return evaluate_orthodontic_formula(orthodontia(d), d.size(), PolynomialKind::Grothendieck);
}

inline Polynomial orthodontia_schubert(const Permutation& w) { return orthodontia_schubert(rothe_diagram(w)); }

inline Polynomial orthodontia_grothendieck(const Permutation& w)
{
    return orthodontia_grothendieck(rothe_diagram(w));
}

inline Polynomial orthodontia_polynomial(PolynomialKind kind, const Permutation& w)
{
    return kind == PolynomialKind::Schubert ? orthodontia_schubert(w) : orthodontia_grothendieck(w);
}

/// 132-avoidance.
inline bool is_dominant(const Permutation& w)
{
    const int n = w.size();
    for (int j = 2; j < n; ++j) {
        int smallest_left = n + 1;
        for (int i = 1; i < j; ++i)
            smallest_left = std::min(smallest_left, w(i));
        if (smallest_left > w(j))
            continue;
        for (int k = j + 1; k <= n; ++k)
            if (smallest_left < w(k) && w(k) < w(j))
                return false;
    }
    return true;
}

/// Dominance read off the Rothe diagram: every column is a standard interval.
inline bool has_standard_columns(const Permutation& w)
{
    const Diagram d = rothe_diagram(w);
    return std::all_of(d.columns().begin(), d.columns().end(),
                       [](const Column& c) { return is_standard_interval(c); });
}

/// For dominant w the Grothendieck polynomial is the single monomial x^{D(w)}.
inline Polynomial dominant_grothendieck(const Permutation& w)
{
    if (!is_dominant(w))
        throw InvalidArgument("dominant_grothendieck: " + w.to_string() + " contains a 132 pattern");
    return Polynomial::from_monomial(diagram_monomial(rothe_diagram(w)));
}

/// (h, C, alpha, i_1, beta): the leftmost non-standard column of D(w) and
/// the shape of its uppermost gap.
struct PrimaryColumnData {
    int h = 0;
    Column column;
    int alpha = 0;
    int i1 = 0;
    int beta = 0;

    friend bool operator==(const PrimaryColumnData&, const PrimaryColumnData&) = default;
};

inline PrimaryColumnData primary_column_data(const Permutation& w)
{
    const int n = w.size();
    const Diagram d = rothe_diagram(w);
    for (int h = 0; h < n; ++h) {
        const Column& c = d.column(h + 1);
        if (is_standard_interval(c))
            continue;
        PrimaryColumnData data;
        data.h = h;
        data.column = c;
        while (std::binary_search(c.begin(), c.end(), data.alpha + 1))
            ++data.alpha;
        const auto tooth = missing_tooth(c);
        if (!tooth)
            throw ContractViolation("primary_column_data: non-standard column without a missing tooth");
        data.i1 = *tooth;
        data.beta = data.i1 - data.alpha;
        return data;
    }
    return PrimaryColumnData{n, {}, 0, n, n};
}

/// The permutation in S_beta that w induces from positions [alpha+1, i_1]
/// onto values [h-beta+1, h]. For dominant w this is w itself.
inline Permutation sigma(const Permutation& w)
{
    const auto data = primary_column_data(w);
    const int low = data.h - data.beta + 1;
    std::vector<int> word;
    for (int p = data.alpha + 1; p <= data.i1; ++p) {
        const int v = w(p);
        if (v < low || v > data.h)
            throw ContractViolation("sigma: w(" + std::to_string(p) + ") = " + std::to_string(v) +
                                    " falls outside [" + std::to_string(low) + "," + std::to_string(data.h) + "]");
        word.push_back(v - low + 1);
    }
    Permutation s = Permutation::from_one_line(word);
    if (!is_dominant(s))
        throw ContractViolation("sigma: induced permutation " + s.to_string() + " is not dominant");
    return s;
}

inline bool is_sorted_permutation(const Permutation& w) { return sigma(w).is_identity(); }

/// w_sort: w with the entries in positions alpha+1..i_1 put in increasing order.
inline Permutation sort_permutation(const Permutation& w)
{
    const auto data = primary_column_data(w);
    std::vector<int> word = w.one_line();
    std::sort(word.begin() + data.alpha, word.begin() + data.i1);
    return Permutation::from_one_line(word);
}

/// x_{alpha+1}^{lambda_1} ... x_{i_1}^{lambda_beta}, where lambda is the
/// shape of D(sigma(w)). Satisfies G_w = unsort_factor(w) * G_{w_sort}.
inline Monomial unsort_factor(const Permutation& w)
{
    const auto data = primary_column_data(w);
    const Monomial shape = diagram_monomial(rothe_diagram(sigma(w)));
    Monomial out(w.size());
    for (int r = 1; r <= data.beta; ++r)
        out = out.with_exponent(data.alpha + r, shape[r]);
    return out;
}

/// w s_{i_1} s_{i_1 - 1} ... s_{alpha+1} for a sorted nonidentity w.
inline Permutation sorted_step_down(const Permutation& w)
{
    if (w.is_identity())
        throw InvalidArgument("sorted_step_down: identity has no predecessor");
    const auto data = primary_column_data(w);
    if (!sigma(w).is_identity())
        throw InvalidArgument("sorted_step_down: " + w.to_string() + " is not sorted");
    Permutation v = w;
    for (int j = data.i1; j >= data.alpha + 1; --j)
        v = v.right_multiply_adjacent(j);
    return v;
}

/// One step down the orthodontic sort order: w_sort when w is unsorted,
/// otherwise w s_{i_1} ... s_{alpha+1}.
inline Permutation os_predecessor(const Permutation& w)
{
    if (w.is_identity())
        throw InvalidArgument("os_predecessor: the identity is the minimum");
    if (!is_sorted_permutation(w))
        return sort_permutation(w);
    return sorted_step_down(w);
}

/// A box (row, column) of a diagram.
using Box = std::pair<int, int>;

/// Boxes of D(w) that would move up if each column were top-aligned: the
/// box in row i of column j is fallen when i exceeds its rank among the
/// boxes of that column.
inline std::vector<Box> fallen_boxes(const Permutation& w)
{
    const Diagram d = rothe_diagram(w);
    std::vector<Box> out;
    for (int j = 1; j <= d.size(); ++j) {
        const Column& c = d.column(j);
        for (std::size_t r = 0; r < c.size(); ++r)
            if (c[r] > static_cast<int>(r) + 1)
                out.emplace_back(c[r], j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// A signed term xi_j(w, v) G_v of the K-theoretic Monk expansion.
struct MonkTerm {
    Permutation v;
    int sign;
};

namespace detail {

// v * (a b) with a < b has length l(v) + 1.
inline bool is_bruhat_cover(const Permutation& v, int a, int b)
{
    if (v(a) > v(b))
        return false;
    for (int c = a + 1; c < b; ++c)
        if (v(a) < v(c) && v(c) < v(b))
            return false;
    return true;
}

} // namespace detail

/// Enumerates P_j(w): every v = w (a_1 j) ... (a_p j) (j b_1) ... (j b_q)
/// with a_p < ... < a_1 < j < b_q < ... < b_1, p + q >= 1, and each
/// transposition raising the length by exactly one. Each term carries the
/// sign (-1)^{q+1}. Throws RankOverflow when some chain would need b = n+1.
inline std::vector<MonkTerm> monk_terms(int j, const Permutation& w)
{
    const int n = w.size();
    if (j < 1 || j > n)
        throw InvalidArgument("monk_terms: index " + std::to_string(j) + " out of range");
    std::vector<MonkTerm> out;

    std::function<void(const Permutation&, int, int)> walk_b = [&](const Permutation& v, int last_b, int q) {
        for (int b = last_b - 1; b > j; --b) {
            if (!detail::is_bruhat_cover(v, j, b))
                continue;
            Permutation next = v.right_multiply_transposition(j, b);
            out.push_back({next, (q + 1) % 2 == 1 ? 1 : -1});
            walk_b(next, b, q + 1);
        }
    };
    std::function<void(const Permutation&, int)> walk_a = [&](const Permutation& v, int last_a) {
        bool escapes = true;
        for (int k = j + 1; k <= n && escapes; ++k)
            escapes = v(k) < v(j);
        if (escapes)
            throw RankOverflow("monk_terms: x_" + std::to_string(j) + " * G_" + w.to_string() +
                               " needs a transposition with position " + std::to_string(n + 1));
        walk_b(v, n + 1, 0);
        for (int a = last_a - 1; a >= 1; --a) {
            if (!detail::is_bruhat_cover(v, a, j))
                continue;
            Permutation next = v.right_multiply_transposition(a, j);
            out.push_back({next, -1});
            walk_a(next, a);
        }
    };
    walk_a(w, j);
    return out;
}

} // namespace ortho

#endif // ORTHO_GROTHENDIECK_HPP
