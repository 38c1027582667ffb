#ifndef ORTHO_OPERATORS_HPP
#define ORTHO_OPERATORS_HPP

#include <string>

#include "ortho/polynomial.hpp"

namespace ortho {

namespace detail {

inline void check_operator_index(int j, const Polynomial& f, const char* name)
{
    if (j < 1 || j >= f.size())
        throw InvalidArgument(std::string(name) + ": index " + std::to_string(j) + " out of range [1," +
                              std::to_string(f.size() - 1) + "]");
}

// 1 - x_{j+1}
inline Polynomial one_minus(int n, int j)
{
    return Polynomial::constant(n, 1) - Polynomial::variable(n, j);
}

} // namespace detail

/// Divided difference: (f - s_j f) / (x_j - x_{j+1}).
inline Polynomial divided_difference(int j, const Polynomial& f)
{
    detail::check_operator_index(j, f, "divided_difference");
    return exact_divide_linear(f - f.swap_variables(j), j);
}

/// Demazure operator pi_j(f) = d_j(x_j f).
inline Polynomial demazure(int j, const Polynomial& f)
{
    detail::check_operator_index(j, f, "demazure");
    return divided_difference(j, f * Monomial::variable(f.size(), j));
}

/// Isobaric divided difference d_j((1 - x_{j+1}) f).
inline Polynomial isobaric(int j, const Polynomial& f)
{
    detail::check_operator_index(j, f, "isobaric");
    return divided_difference(j, detail::one_minus(f.size(), j + 1) * f);
}

/// Demazure-Lascoux operator d_j(x_j (1 - x_{j+1}) f).
inline Polynomial demazure_lascoux(int j, const Polynomial& f)
{
    detail::check_operator_index(j, f, "demazure_lascoux");
    return divided_difference(j, detail::one_minus(f.size(), j + 1) * (f * Monomial::variable(f.size(), j)));
}

} // namespace ortho

#endif // ORTHO_OPERATORS_HPP
