#ifndef ORTHO_DIAGRAM_HPP
#define ORTHO_DIAGRAM_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ortho/error.hpp"
#include "ortho/permutation.hpp"
#include "ortho/polynomial.hpp"

namespace ortho {

/// A column of a diagram: a sorted set of row indices in [n].
using Column = std::vector<int>;

/// A set of boxes in the n x n grid, stored column by column.
///
/// Column j holds the rows i with (i, j) in the diagram. Empty columns are
/// kept so column indices stay stable.
class Diagram {
public:
    explicit Diagram(int n) : n_(n), columns_(static_cast<std::size_t>(n))
    {
        if (n < 0)
            throw InvalidArgument("diagram: negative size");
    }

    Diagram(int n, std::vector<Column> columns) : n_(n), columns_(std::move(columns))
    {
        if (static_cast<int>(columns_.size()) != n)
            throw InvalidArgument("diagram: expected " + std::to_string(n) + " columns");
        for (auto& col : columns_) {
            std::sort(col.begin(), col.end());
            if (std::adjacent_find(col.begin(), col.end()) != col.end())
                throw InvalidArgument("diagram: repeated row in a column");
            for (int r : col)
                if (r < 1 || r > n)
                    throw InvalidArgument("diagram: row " + std::to_string(r) + " outside [1," +
                                          std::to_string(n) + "]");
        }
    }

    int size() const { return n_; }
    const std::vector<Column>& columns() const { return columns_; }

    /// Column j, 1-based.
    const Column& column(int j) const { return columns_[static_cast<std::size_t>(j - 1)]; }

    bool contains(int row, int col) const
    {
        const auto& c = column(col);
        return std::binary_search(c.begin(), c.end(), row);
    }

    int box_count() const
    {
        int total = 0;
        for (const auto& c : columns_)
            total += static_cast<int>(c.size());
        return total;
    }

    bool empty() const { return box_count() == 0; }

    /// Number of columns equal to `col`.
    int multiplicity(const Column& col) const
    {
        return static_cast<int>(std::count(columns_.begin(), columns_.end(), col));
    }

    /// Exchanges rows r and r+1 in every column.
    Diagram swap_rows(int r) const
    {
        Diagram out = *this;
        for (auto& col : out.columns_) {
            for (auto& x : col) {
                if (x == r)
                    x = r + 1;
                else if (x == r + 1)
                    x = r;
            }
            std::sort(col.begin(), col.end());
        }
        return out;
    }

    Diagram with_column(int j, Column col) const
    {
        std::vector<Column> cols = columns_;
        cols[static_cast<std::size_t>(j - 1)] = std::move(col);
        return Diagram(n_, std::move(cols));
    }

    /// Rows top to bottom, one character per cell.
    std::string to_ascii() const
    {
        std::string out;
        for (int i = 1; i <= n_; ++i) {
            for (int j = 1; j <= n_; ++j)
                out += contains(i, j) ? "□" : "·";
            out += '\n';
        }
        return out;
    }

    nlohmann::json to_json() const { return nlohmann::json{{"n", n_}, {"columns", columns_}}; }

    static Diagram from_json(const nlohmann::json& j)
    {
        if (!j.is_object() || !j.contains("n") || !j.contains("columns"))
            throw InvalidArgument("diagram json: expected object with 'n' and 'columns'");
        return Diagram(j.at("n").get<int>(), j.at("columns").get<std::vector<Column>>());
    }

    friend bool operator==(const Diagram&, const Diagram&) = default;

private:
    int n_;
    std::vector<Column> columns_;
};

/// The standard interval [j] = {1, ..., j}.
inline Column standard_interval(int j)
{
    Column c(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i)
        c[static_cast<std::size_t>(i)] = i + 1;
    return c;
}

inline bool is_standard_interval(const Column& c)
{
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != static_cast<int>(i) + 1)
            return false;
    return true;
}

/// max(C), with max of the empty column taken to be 0.
inline int column_max(const Column& c) { return c.empty() ? 0 : c.back(); }

/// D(w) = {(i, j) : i < w^{-1}(j) and j < w(i)}.
inline Diagram rothe_diagram(const Permutation& w)
{
    const int n = w.size();
    const Permutation inv = w.inverse();
    std::vector<Column> cols(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i < inv(j); ++i)
            if (j < w(i))
                cols[static_cast<std::size_t>(j - 1)].push_back(i);
    return Diagram(n, std::move(cols));
}

/// Smallest i with i not in C and i+1 in C; empty for [j] and for the empty column.
inline std::optional<int> missing_tooth(const Column& c)
{
    for (std::size_t p = 0; p < c.size(); ++p) {
        const int row = c[p];
        if (row > 1 && (p == 0 || c[p - 1] != row - 1))
            return row - 1;
    }
    return std::nullopt;
}

/// Each nonempty column C_j becomes [max(C_j)].
inline Diagram upper_closure(const Diagram& d)
{
    std::vector<Column> cols;
    cols.reserve(d.columns().size());
    for (const auto& c : d.columns())
        cols.push_back(standard_interval(column_max(c)));
    return Diagram(d.size(), std::move(cols));
}

/// x^D: the exponent of x_i is the number of boxes in row i.
inline Monomial diagram_monomial(const Diagram& d)
{
    std::vector<int> rows(static_cast<std::size_t>(d.size()), 0);
    for (const auto& c : d.columns())
        for (int r : c)
            ++rows[static_cast<std::size_t>(r - 1)];
    return Monomial(d.size(), rows);
}

namespace detail {

inline Column set_difference(const Column& a, const Column& b)
{
    Column out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// R <= S element-wise: every r in R is at most every s in S.
inline bool elementwise_le(const Column& r, const Column& s)
{
    if (r.empty() || s.empty())
        return true;
    return r.back() <= s.front();
}

// C \ C' <= C' \ C.
inline bool column_precedes(const Column& a, const Column& b)
{
    return elementwise_le(set_difference(a, b), set_difference(b, a));
}

} // namespace detail

/// Every pair of columns is comparable under the element-wise order of
/// their set differences.
inline bool is_strongly_separated(const Diagram& d)
{
    const auto& cols = d.columns();
    for (std::size_t a = 0; a < cols.size(); ++a)
        for (std::size_t b = a + 1; b < cols.size(); ++b)
            if (!detail::column_precedes(cols[a], cols[b]) && !detail::column_precedes(cols[b], cols[a]))
                return false;
    return true;
}

/// True iff D_i \ D_j <= D_j \ D_i whenever i < j.
inline bool columns_ordered(const Diagram& d)
{
    const auto& cols = d.columns();
    for (std::size_t a = 0; a < cols.size(); ++a)
        for (std::size_t b = a + 1; b < cols.size(); ++b)
            if (!detail::column_precedes(cols[a], cols[b]))
                return false;
    return true;
}

/// Reorders the columns of a strongly separated diagram so that
/// D_i \ D_j <= D_j \ D_i whenever i < j. Among admissible choices the
/// column with the smallest original index is placed first, so an already
/// ordered diagram comes back unchanged.
inline Diagram sort_columns(const Diagram& d)
{
    if (!is_strongly_separated(d))
        throw InvalidArgument("sort_columns: diagram is not strongly separated");
    std::vector<Column> remaining = d.columns();
    std::vector<Column> ordered;
    ordered.reserve(remaining.size());
    while (!remaining.empty()) {
        std::size_t pick = remaining.size();
        for (std::size_t a = 0; a < remaining.size() && pick == remaining.size(); ++a) {
            bool minimal = true;
            for (std::size_t b = 0; b < remaining.size() && minimal; ++b)
                if (a != b && !detail::column_precedes(remaining[a], remaining[b]))
                    minimal = false;
            if (minimal)
                pick = a;
        }
        if (pick == remaining.size())
            throw OrthodontiaFailure("sort_columns: no admissible column order exists");
        ordered.push_back(std::move(remaining[pick]));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return Diagram(d.size(), std::move(ordered));
}

/// The triple (i, k, m) read off by the orthodontia algorithm.
///
/// `teeth` are the row swaps i_1..i_l, `k[j-1]` counts the columns [j]
/// removed before the first swap, and `m[t]` counts the columns [i_{t+1}]
/// removed right after swap t+1.
struct OrthodonticSequence {
    std::vector<int> teeth;
    std::vector<int> k;
    std::vector<int> m;

    int length() const { return static_cast<int>(teeth.size()); }

    nlohmann::json to_json() const { return nlohmann::json{{"i", teeth}, {"k", k}, {"m", m}}; }

    friend bool operator==(const OrthodonticSequence&, const OrthodonticSequence&) = default;
};

/// One row swap of the orthodontia algorithm, for tracing.
struct OrthodontiaStep {
    int tooth = 0;
    int removed = 0;
    Diagram after_swap{0};
    Diagram after_removal{0};
};

struct OrthodontiaTrace {
    Diagram initial{0};
    Diagram after_initial_removal{0};
    std::vector<OrthodontiaStep> steps;
};

namespace detail {

// Replaces every column equal to [j] by the empty column; returns how many.
inline int remove_interval_columns(std::vector<Column>& cols, int j)
{
    const Column target = standard_interval(j);
    int count = 0;
    for (auto& c : cols) {
        if (!c.empty() && c == target) {
            c.clear();
            ++count;
        }
    }
    return count;
}

} // namespace detail

/// Runs the orthodontia algorithm on a Rothe diagram or on a strongly
/// separated diagram whose columns are already ordered. When `trace` is
/// non-null it receives the intermediate diagrams.
inline OrthodonticSequence orthodontia(const Diagram& d, OrthodontiaTrace* trace = nullptr)
{
    const int n = d.size();
    OrthodonticSequence seq;
    seq.k.assign(static_cast<std::size_t>(n), 0);

    std::vector<Column> cols = d.columns();
    for (int j = 1; j <= n; ++j)
        seq.k[static_cast<std::size_t>(j - 1)] = detail::remove_interval_columns(cols, j);

    if (trace) {
        trace->initial = d;
        trace->after_initial_removal = Diagram(n, cols);
        trace->steps.clear();
    }

    const long max_steps = static_cast<long>(n) * static_cast<long>(n) + d.box_count() + 1;
    for (long step = 0;; ++step) {
        auto first = std::find_if(cols.begin(), cols.end(), [](const Column& c) { return !c.empty(); });
        if (first == cols.end())
            break;
        if (step >= max_steps)
            throw OrthodontiaFailure("orthodontia: step bound exceeded");
        const auto tooth = missing_tooth(*first);
        if (!tooth)
            throw OrthodontiaFailure("orthodontia: column " +
                                     std::to_string(std::distance(cols.begin(), first) + 1) +
                                     " is nonempty but has no missing tooth");
        const int r = *tooth;
        if (r + 1 > n)
            throw ContractViolation("orthodontia: tooth outside the grid");
        for (auto& c : cols) {
            for (auto& x : c) {
                if (x == r)
                    x = r + 1;
                else if (x == r + 1)
                    x = r;
            }
            std::sort(c.begin(), c.end());
        }
        Diagram swapped(n, cols);
        const int removed = detail::remove_interval_columns(cols, r);
        seq.teeth.push_back(r);
        seq.m.push_back(removed);
        if (trace)
            trace->steps.push_back({r, removed, std::move(swapped), Diagram(n, cols)});
    }
    return seq;
}

inline OrthodonticSequence orthodontia(const Permutation& w) { return orthodontia(rothe_diagram(w)); }

} // namespace ortho

#endif // ORTHO_DIAGRAM_HPP
