#pragma once

#include "glsim/linalg.hpp"

#include <random>

namespace glsim::test {

inline Matrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

inline Matrix random_density(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline Matrix random_matrix(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
    return a;
}

}  // namespace glsim::test
