#pragma once

#include <random>

#include "hglue/algebra.hpp"

namespace testing {

inline hglue::cplx gauss_c(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

inline hglue::Mat2 random_mat2(std::mt19937_64& rng)
{
    hglue::Mat2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m(i, j) = gauss_c(rng);
    return m;
}

inline hglue::Mat2 random_traceless(std::mt19937_64& rng)
{
    hglue::Mat2 m = random_mat2(rng);
    m(1, 1) = -m(0, 0);
    return m;
}

inline hglue::Mat2 random_unimodular(std::mt19937_64& rng)
{
    for (;;) {
        const hglue::Mat2 g = random_mat2(rng);
        const hglue::cplx d = g.determinant();
        if (std::abs(d) > 0.1)
            return g / std::sqrt(d);
    }
}

inline hglue::Mat4 random_mat4(std::mt19937_64& rng)
{
    hglue::Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) = gauss_c(rng);
    return m;
}

// x -> (x + J x^T J) / 2 lands in sp(4,C)
inline hglue::Mat4 random_sp4(std::mt19937_64& rng)
{
    const hglue::Mat4& J = hglue::symplectic_form();
    const hglue::Mat4 x = random_mat4(rng);
    return 0.5 * (x + J * x.transpose() * J);
}

inline hglue::Mat4 random_hermitian_sp4(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    hglue::Mat4 x = hglue::Mat4::Zero();
    for (const auto& b : hglue::hermitian_basis())
        x += n(rng) * b;
    return x;
}

} // namespace testing
