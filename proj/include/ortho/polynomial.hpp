#ifndef ORTHO_POLYNOMIAL_HPP
#define ORTHO_POLYNOMIAL_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "ortho/error.hpp"

namespace ortho {

using Integer = boost::multiprecision::cpp_int;

/// Upper bound on the number of variables a monomial can carry.
inline constexpr int kMaxVariables = 16;

/// A monomial x_1^{e_1} ... x_n^{e_n} with nonnegative exponents.
///
/// Exponents are stored densely; variables are indexed from 1 to match the
/// x_j naming used throughout the library.
class Monomial {
public:
    /// The constant monomial 1 in n variables.
    explicit Monomial(int n) : n_(check_rank(n)) {}

    Monomial(int n, std::span<const int> exponents) : n_(check_rank(n))
    {
        if (static_cast<int>(exponents.size()) != n)
            throw InvalidArgument("monomial: expected " + std::to_string(n) + " exponents, got " +
                                  std::to_string(exponents.size()));
        for (int j = 0; j < n; ++j) {
            const int e = exponents[static_cast<std::size_t>(j)];
            if (e < 0)
                throw InvalidArgument("monomial: negative exponent");
            if (e > 0xffff)
                throw InvalidArgument("monomial: exponent too large");
            exps_[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(e);
            degree_ += e;
        }
    }

    Monomial(int n, std::initializer_list<int> exponents)
        : Monomial(n, std::span<const int>(exponents.begin(), exponents.size()))
    {
    }

    /// x_j^power.
    static Monomial variable(int n, int j, int power = 1)
    {
        Monomial m(n);
        m.check_index(j);
        m.set(j, power);
        return m;
    }

    int size() const { return n_; }
    int degree() const { return degree_; }

    /// Exponent of x_j (1-based).
    int operator[](int j) const { return exps_[static_cast<std::size_t>(j - 1)]; }

    std::vector<int> exponents() const
    {
        return std::vector<int>(exps_.begin(), exps_.begin() + n_);
    }

    bool is_one() const { return degree_ == 0; }

    Monomial operator*(const Monomial& other) const
    {
        check_same_rank(other);
        Monomial out(n_);
        for (int j = 1; j <= n_; ++j)
            out.set(j, (*this)[j] + other[j]);
        return out;
    }

    /// True iff this monomial divides `other`.
    bool divides(const Monomial& other) const
    {
        check_same_rank(other);
        for (int j = 0; j < n_; ++j)
            if (exps_[static_cast<std::size_t>(j)] > other.exps_[static_cast<std::size_t>(j)])
                return false;
        return true;
    }

    /// Exact quotient this / divisor; the divisor must divide this monomial.
    Monomial divide(const Monomial& divisor) const
    {
        if (!divisor.divides(*this))
            throw ContractViolation("monomial: inexact division");
        Monomial out(n_);
        for (int j = 1; j <= n_; ++j)
            out.set(j, (*this)[j] - divisor[j]);
        return out;
    }

    /// Exchanges the exponents of x_j and x_{j+1}.
    Monomial swap_variables(int j) const
    {
        if (j < 1 || j >= n_)
            throw InvalidArgument("monomial: swap index " + std::to_string(j) + " out of range");
        Monomial out = *this;
        std::swap(out.exps_[static_cast<std::size_t>(j - 1)], out.exps_[static_cast<std::size_t>(j)]);
        return out;
    }

    Monomial with_exponent(int j, int e) const
    {
        check_index(j);
        Monomial out = *this;
        out.set(j, e);
        return out;
    }

    /// Entrywise maximum.
    Monomial lcm(const Monomial& other) const
    {
        check_same_rank(other);
        Monomial out(n_);
        for (int j = 1; j <= n_; ++j)
            out.set(j, std::max((*this)[j], other[j]));
        return out;
    }

    std::string to_string() const
    {
        if (degree_ == 0)
            return "1";
        std::string out;
        for (int j = 1; j <= n_; ++j) {
            const int e = (*this)[j];
            if (e == 0)
                continue;
            if (!out.empty())
                out += '*';
            out += "x" + std::to_string(j);
            if (e > 1)
                out += "^" + std::to_string(e);
        }
        return out;
    }

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.n_ == b.n_ && a.exps_ == b.exps_;
    }

    void check_same_rank(const Monomial& other) const
    {
        if (other.n_ != n_)
            throw InvalidArgument("monomial: rank mismatch (" + std::to_string(n_) + " vs " +
                                  std::to_string(other.n_) + ")");
    }

private:
    friend struct CanonicalOrder;

    static int check_rank(int n)
    {
        if (n < 0 || n > kMaxVariables)
            throw InvalidArgument("monomial: rank " + std::to_string(n) + " outside [0," +
                                  std::to_string(kMaxVariables) + "]");
        return n;
    }

    void check_index(int j) const
    {
        if (j < 1 || j > n_)
            throw InvalidArgument("monomial: variable index " + std::to_string(j) + " out of range");
    }

    void set(int j, int e)
    {
        if (e < 0)
            throw ContractViolation("monomial: negative exponent");
        if (e > 0xffff)
            throw InvalidArgument("monomial: exponent too large");
        auto& slot = exps_[static_cast<std::size_t>(j - 1)];
        degree_ += e - slot;
        slot = static_cast<std::uint16_t>(e);
    }

    std::array<std::uint16_t, kMaxVariables> exps_{};
    int n_ = 0;
    int degree_ = 0;
};

/// Graded-lex, leading term first: higher total degree precedes lower; within
/// a degree, the exponent vectors compare lexicographically from x_1, larger first.
struct CanonicalOrder {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        if (a.degree_ != b.degree_)
            return a.degree_ > b.degree_;
        return b.exps_ < a.exps_;
    }
};

/// omega_j = x_1 ... x_j; omega_0 is the constant monomial.
inline Monomial fundamental_weight(int j, int n)
{
    if (j < 0 || j > n)
        throw InvalidArgument("fundamental_weight: index " + std::to_string(j) + " outside [0," +
                              std::to_string(n) + "]");
    Monomial m(n);
    for (int p = 1; p <= j; ++p)
        m = m.with_exponent(p, 1);
    return m;
}

/// Sparse polynomial with unbounded integer coefficients in x_1..x_n.
///
/// Terms are kept in canonical order with zero coefficients pruned, so two
/// equal polynomials have identical term sequences and renderings.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Integer, CanonicalOrder>;

    /// The zero polynomial in n variables.
    explicit Polynomial(int n) : n_(n)
    {
        if (n < 0 || n > kMaxVariables)
            throw InvalidArgument("polynomial: rank " + std::to_string(n) + " unsupported");
    }

    static Polynomial constant(int n, const Integer& c)
    {
        Polynomial p(n);
        p.accumulate(Monomial(n), c);
        return p;
    }

    static Polynomial from_monomial(const Monomial& m, const Integer& c = 1)
    {
        Polynomial p(m.size());
        p.accumulate(m, c);
        return p;
    }

    static Polynomial variable(int n, int j) { return from_monomial(Monomial::variable(n, j)); }

    int size() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Integer coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// Largest total degree of a term; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

    /// Smallest total degree of a term; -1 for the zero polynomial.
    int min_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

    bool is_homogeneous() const { return degree() == min_degree(); }

    Polynomial operator-() const
    {
        Polynomial out = *this;
        for (auto& [m, c] : out.terms_)
            c = -c;
        return out;
    }

    Polynomial& operator+=(const Polynomial& g)
    {
        check_same_rank(g);
        for (const auto& [m, c] : g.terms_)
            accumulate(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& g)
    {
        check_same_rank(g);
        for (const auto& [m, c] : g.terms_)
            accumulate(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
    friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }

    friend Polynomial operator*(const Polynomial& f, const Polynomial& g)
    {
        f.check_same_rank(g);
        Polynomial out(f.n_);
        for (const auto& [a, ca] : f.terms_)
            for (const auto& [b, cb] : g.terms_)
                out.accumulate(a * b, ca * cb);
        return out;
    }

    friend Polynomial operator*(const Polynomial& f, const Monomial& m)
    {
        f.check_rank(m.size());
        Polynomial out(f.n_);
        for (const auto& [a, c] : f.terms_)
            out.terms_.emplace_hint(out.terms_.end(), a * m, c);
        return out;
    }

    friend Polynomial operator*(const Monomial& m, const Polynomial& f) { return f * m; }

    friend Polynomial operator*(const Polynomial& f, const Integer& k)
    {
        Polynomial out(f.n_);
        if (k == 0)
            return out;
        for (const auto& [a, c] : f.terms_)
            out.terms_.emplace_hint(out.terms_.end(), a, c * k);
        return out;
    }

    /// s_j . f: exchanges x_j and x_{j+1}.
    Polynomial swap_variables(int j) const
    {
        if (j < 1 || j >= n_)
            throw InvalidArgument("swap_variables: index " + std::to_string(j) + " out of range [1," +
                                  std::to_string(n_ - 1) + "]");
        Polynomial out(n_);
        for (const auto& [m, c] : terms_)
            out.terms_.emplace(m.swap_variables(j), c);
        return out;
    }

    /// Exact division by a monomial that divides every term.
    Polynomial divide_monomial(const Monomial& m) const
    {
        check_rank(m.size());
        Polynomial out(n_);
        for (const auto& [a, c] : terms_) {
            if (!m.divides(a))
                throw ContractViolation("divide_monomial: " + m.to_string() + " does not divide term " +
                                        a.to_string());
            out.terms_.emplace_hint(out.terms_.end(), a.divide(m), c);
        }
        return out;
    }

    /// Sum of the terms of minimal total degree.
    Polynomial lowest_degree_component() const
    {
        if (terms_.empty())
            throw InvalidArgument("lowest_degree_component: zero polynomial");
        return homogeneous_component(min_degree());
    }

    Polynomial homogeneous_component(int d) const
    {
        Polynomial out(n_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == d)
                out.terms_.emplace_hint(out.terms_.end(), m, c);
        return out;
    }

    /// Human-readable form, e.g. "3*x1^2*x2 - x3".
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const bool negative = c < 0;
            Integer mag = negative ? Integer(-c) : c;
            if (first)
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            first = false;
            if (m.is_one()) {
                out += mag.str();
            } else {
                if (mag != 1)
                    out += mag.str() + "*";
                out += m.to_string();
            }
        }
        return out;
    }

    /// {"n": n, "terms": [[coeff, [e1, ..., en]], ...]}. Coefficients that do
    /// not fit a signed 64-bit integer are written as decimal strings.
    nlohmann::json to_json() const
    {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, c] : terms_) {
            nlohmann::json coeff;
            if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
                coeff = static_cast<std::int64_t>(c);
            else
                coeff = c.str();
            terms.push_back(nlohmann::json::array({coeff, m.exponents()}));
        }
        return nlohmann::json{{"n", n_}, {"terms", terms}};
    }

    static Polynomial from_json(const nlohmann::json& j)
    {
        if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
            throw InvalidArgument("polynomial json: expected object with 'n' and 'terms'");
        const int n = j.at("n").get<int>();
        Polynomial out(n);
        for (const auto& term : j.at("terms")) {
            if (!term.is_array() || term.size() != 2)
                throw InvalidArgument("polynomial json: each term must be [coeff, exponents]");
            Integer c = term[0].is_string() ? Integer(term[0].get<std::string>())
                                            : Integer(term[0].get<std::int64_t>());
            const auto exps = term[1].get<std::vector<int>>();
            out.accumulate(Monomial(n, exps), c);
        }
        return out;
    }

    /// Parses the text form produced by to_string().
    static Polynomial parse(std::string_view text, int n)
    {
        Polynomial out(n);
        std::size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
        };
        auto fail = [&](const std::string& why) {
            throw InvalidArgument("polynomial parse: " + why + " at offset " + std::to_string(pos) + " in '" +
                                  std::string(text) + "'");
        };
        auto read_uint = [&]() -> std::string {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            if (start == pos)
                fail("expected digits");
            return std::string(text.substr(start, pos - start));
        };

        skip_ws();
        if (pos == text.size())
            fail("empty input");
        bool first = true;
        while (true) {
            skip_ws();
            if (pos == text.size())
                break;
            int sign = 1;
            if (text[pos] == '+' || text[pos] == '-') {
                sign = text[pos] == '-' ? -1 : 1;
                ++pos;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;

            Integer coeff = 1;
            bool have_coeff = false;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                coeff = Integer(read_uint());
                have_coeff = true;
                skip_ws();
                if (pos < text.size() && text[pos] == '*') {
                    ++pos;
                    skip_ws();
                } else {
                    out.accumulate(Monomial(n), coeff * sign);
                    continue;
                }
            }
            Monomial m(n);
            while (true) {
                if (pos >= text.size() || text[pos] != 'x')
                    fail(have_coeff ? "expected variable after '*'" : "expected term");
                ++pos;
                const int j = std::stoi(read_uint());
                if (j < 1 || j > n)
                    fail("variable x" + std::to_string(j) + " out of range");
                int e = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = std::stoi(read_uint());
                }
                m = m.with_exponent(j, m[j] + e);
                skip_ws();
                if (pos < text.size() && text[pos] == '*') {
                    ++pos;
                    skip_ws();
                    continue;
                }
                break;
            }
            out.accumulate(m, coeff * sign);
        }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// Adds c * m in place, pruning a zero result.
    void accumulate(const Monomial& m, const Integer& c)
    {
        check_rank(m.size());
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    void check_same_rank(const Polynomial& g) const { check_rank(g.n_); }

private:
    void check_rank(int n) const
    {
        if (n != n_)
            throw InvalidArgument("polynomial: rank mismatch (" + std::to_string(n_) + " vs " +
                                  std::to_string(n) + ")");
    }

    int n_;
    TermMap terms_;
};

inline bool monomial_divides(const Monomial& a, const Monomial& b) { return a.divides(b); }

/// Exact quotient f / (x_j - x_{j+1}).
///
/// Writes f = sum_d c_d x_j^d with c_d free of x_j and runs synthetic
/// division at x_j = x_{j+1}. A nonzero remainder means the caller passed a
/// polynomial that is not divisible, which is reported as ContractViolation.
inline Polynomial exact_divide_linear(const Polynomial& f, int j)
{
    const int n = f.size();
    if (j < 1 || j >= n)
        throw InvalidArgument("exact_divide_linear: index " + std::to_string(j) + " out of range [1," +
                              std::to_string(n - 1) + "]");
    if (f.is_zero())
        return Polynomial(n);

    int top = 0;
    for (const auto& [m, c] : f.terms())
        top = std::max(top, m[j]);
    std::vector<Polynomial> by_power(static_cast<std::size_t>(top) + 1, Polynomial(n));
    for (const auto& [m, c] : f.terms())
        by_power[static_cast<std::size_t>(m[j])].accumulate(m.with_exponent(j, 0), c);

    const Monomial next = Monomial::variable(n, j + 1);
    Polynomial quotient(n);
    Polynomial carry(n);
    for (int d = top; d >= 1; --d) {
        carry = by_power[static_cast<std::size_t>(d)] + carry * next;
        const Monomial shift = Monomial::variable(n, j, d - 1);
        for (const auto& [m, c] : carry.terms())
            quotient.accumulate(m * shift, c);
    }
    const Polynomial remainder = by_power[0] + carry * next;
    if (!remainder.is_zero())
        throw ContractViolation("exact_divide_linear: nonzero remainder " + remainder.to_string() +
                                " dividing by (x" + std::to_string(j) + " - x" + std::to_string(j + 1) + ")");
    return quotient;
}

} // namespace ortho

#endif // ORTHO_POLYNOMIAL_HPP
