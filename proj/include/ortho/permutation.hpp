#ifndef ORTHO_PERMUTATION_HPP
#define ORTHO_PERMUTATION_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ortho/error.hpp"

namespace ortho {

/// An element of the symmetric group S_n in one-line notation.
///
/// Positions and values are 1-based, matching the usual combinatorial
/// convention: `w(i)` is the value in position `i`. Permutations act on the
/// right, so right multiplication by a transposition swaps positions.
/// Instances are immutable; every group operation returns a new value.
class Permutation {
public:
    static Permutation from_one_line(std::span<const int> seq)
    {
        if (seq.empty())
            throw InvalidArgument("permutation: empty one-line sequence");
        const int n = static_cast<int>(seq.size());
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (int v : seq) {
            if (v < 1 || v > n)
                throw InvalidArgument("permutation: value " + std::to_string(v) +
                                      " out of range for length " + std::to_string(n));
            if (seen[static_cast<std::size_t>(v)])
                throw InvalidArgument("permutation: repeated value " + std::to_string(v));
            seen[static_cast<std::size_t>(v)] = true;
        }
        return Permutation(std::vector<int>(seq.begin(), seq.end()));
    }

    static Permutation from_one_line(std::initializer_list<int> seq)
    {
        return from_one_line(std::span<const int>(seq.begin(), seq.size()));
    }

    /// Parses the command-line syntax: a digit string such as "31542" when
    /// n <= 9, or a comma-separated list such as "10,1,2,3,4,5,6,7,8,9".
    static Permutation parse(std::string_view text)
    {
        std::vector<int> seq;
        if (text.find(',') != std::string_view::npos) {
            std::size_t pos = 0;
            while (pos <= text.size()) {
                auto next = text.find(',', pos);
                if (next == std::string_view::npos)
                    next = text.size();
                auto token = text.substr(pos, next - pos);
                while (!token.empty() && token.front() == ' ')
                    token.remove_prefix(1);
                while (!token.empty() && token.back() == ' ')
                    token.remove_suffix(1);
                if (token.empty())
                    throw InvalidArgument("permutation: empty entry in '" + std::string(text) + "'");
                int value = 0;
                for (char c : token) {
                    if (c < '0' || c > '9')
                        throw InvalidArgument("permutation: bad character in '" + std::string(text) + "'");
                    value = value * 10 + (c - '0');
                    if (value > 1000)
                        throw InvalidArgument("permutation: entry too large in '" + std::string(text) + "'");
                }
                seq.push_back(value);
                pos = next + 1;
            }
        } else {
            for (char c : text) {
                if (c < '0' || c > '9')
                    throw InvalidArgument("permutation: bad character in '" + std::string(text) + "'");
                seq.push_back(c - '0');
            }
            if (seq.size() > 9)
                throw InvalidArgument("permutation: use comma-separated entries when n >= 10");
        }
        return from_one_line(seq);
    }

    static Permutation identity(int n)
    {
        if (n < 1)
            throw InvalidArgument("permutation: rank must be positive");
        std::vector<int> word(static_cast<std::size_t>(n));
        std::iota(word.begin(), word.end(), 1);
        return Permutation(std::move(word));
    }

    /// The longest element n n-1 ... 1.
    static Permutation longest_element(int n)
    {
        if (n < 1)
            throw InvalidArgument("permutation: rank must be positive");
        std::vector<int> word(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            word[static_cast<std::size_t>(i)] = n - i;
        return Permutation(std::move(word));
    }

    int size() const { return static_cast<int>(word_.size()); }

    int operator()(int position) const { return word_[static_cast<std::size_t>(position - 1)]; }

    const std::vector<int>& one_line() const { return word_; }

    Permutation inverse() const
    {
        std::vector<int> inv(word_.size());
        for (std::size_t i = 0; i < word_.size(); ++i)
            inv[static_cast<std::size_t>(word_[i] - 1)] = static_cast<int>(i) + 1;
        return Permutation(std::move(inv));
    }

    bool is_identity() const
    {
        for (std::size_t i = 0; i < word_.size(); ++i)
            if (word_[i] != static_cast<int>(i) + 1)
                return false;
        return true;
    }

    /// w * s_j: swaps the entries in positions j and j+1.
    Permutation right_multiply_adjacent(int j) const
    {
        if (j < 1 || j >= size())
            throw InvalidArgument("permutation: adjacent index " + std::to_string(j) +
                                  " out of range [1," + std::to_string(size() - 1) + "]");
        auto word = word_;
        std::swap(word[static_cast<std::size_t>(j - 1)], word[static_cast<std::size_t>(j)]);
        return Permutation(std::move(word));
    }

    /// w * (a b): swaps the entries in positions a and b.
    Permutation right_multiply_transposition(int a, int b) const
    {
        if (a == b)
            throw InvalidArgument("permutation: transposition needs two distinct positions");
        if (a < 1 || b < 1 || a > size() || b > size())
            throw InvalidArgument("permutation: transposition position out of range");
        auto word = word_;
        std::swap(word[static_cast<std::size_t>(a - 1)], word[static_cast<std::size_t>(b - 1)]);
        return Permutation(std::move(word));
    }

    /// Number of inversions.
    int length() const
    {
        int count = 0;
        for (std::size_t i = 0; i < word_.size(); ++i)
            for (std::size_t j = i + 1; j < word_.size(); ++j)
                if (word_[i] > word_[j])
                    ++count;
        return count;
    }

    std::vector<int> descents() const
    {
        std::vector<int> out;
        for (int j = 1; j < size(); ++j)
            if ((*this)(j) > (*this)(j + 1))
                out.push_back(j);
        return out;
    }

    std::vector<int> ascents() const
    {
        std::vector<int> out;
        for (int j = 1; j < size(); ++j)
            if ((*this)(j) < (*this)(j + 1))
                out.push_back(j);
        return out;
    }

    bool is_ascent(int j) const { return (*this)(j) < (*this)(j + 1); }

    /// Digit string for n <= 9, comma separated otherwise.
    std::string to_string() const
    {
        std::string out;
        const bool commas = size() >= 10;
        for (std::size_t i = 0; i < word_.size(); ++i) {
            if (commas && i > 0)
                out += ',';
            out += std::to_string(word_[i]);
        }
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    explicit Permutation(std::vector<int> word) : word_(std::move(word)) {}

    std::vector<int> word_;
};

/// All of S_n in lexicographic order of one-line notation.
inline std::vector<Permutation> all_permutations(int n)
{
    std::vector<int> word(static_cast<std::size_t>(n));
    std::iota(word.begin(), word.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_one_line(word));
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

struct PermutationHash {
    std::size_t operator()(const Permutation& w) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (int v : w.one_line()) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace ortho

#endif // ORTHO_PERMUTATION_HPP
