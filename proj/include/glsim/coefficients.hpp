#pragma once

#include "glsim/linalg.hpp"
#include "glsim/spectral.hpp"

#include <variant>
#include <vector>

namespace glsim {

// Gaussian filter at inverse temperature beta: gamma(w) = exp(-(beta w + 1)^2 / 2),
// window f(t) = exp(-t^2/beta^2) sqrt(beta^-1 sqrt(2/pi)).
struct GaussianFilter {
    double beta = 1.0;
};

// Metropolis-like filter gamma(w) = exp(-beta max(w + beta sigma^2 / 2, 0)).
// sigma_E <= 0 selects the default 1/beta.
struct MetropolisFilter {
    double beta = 1.0;
    double sigma_E = 0.0;
    double sigma() const;
};

using FilterSpec = std::variant<GaussianFilter, MetropolisFilter>;

double filter_beta(const FilterSpec& f);
void validate_filter(const FilterSpec& f);

// exp(z^2) erfc(z), stable for large positive z.
double erfcx(double z);

double gaussian_gamma(double omega, double beta);
double gaussian_window(double t, double beta);
double gaussian_window_hat(double omega, double beta);  // (2 pi)^-1/2 int f(t) e^{-i w t} dt

// int gamma(w) fhat(w - nu1) conj(fhat(w - nu2)) dw in closed form.
double gaussian_c(double nu1, double nu2, double beta);

// Coherent coefficient required for detailed balance: (i/2) tanh(beta (nu1 - nu2) / 4) c.
cplx coherent_b(double nu1, double nu2, double beta, cplx c);

// Fourier transforms int g(t) e^{-i x t} dt of the two time kernels in the coherent-term
// display (closed forms). Their product at (beta(nu1-nu2), beta(nu1+nu2)) is half of coherent_b.
cplx b1_hat(double x);
cplx b2_hat(double y);

double metropolis_gamma(double omega, double beta, double sigma);
double metropolis_alpha(double nu1, double nu2, double beta, double sigma);

// Coefficients over the Bohr set of a spectrum:
// L(rho) = -i[B, rho] + sum c(n1, n2) (A_n1 rho A_n2^+ - 1/2 {A_n2^+ A_n1, rho}),
// B = sum b(n1, n2) A_n2^+ A_n1.
struct CoefficientTable {
    std::vector<double> bohr;
    Matrix c;  // indexed by positions in `bohr`
    Matrix b;
    double tol = 0.0;

    int index(double nu) const;  // throws when nu is not in the table
    cplx c_at(double nu1, double nu2) const;
    cplx b_at(double nu1, double nu2) const;
};

CoefficientTable gaussian_coefficients(const SpectralData& s, double beta);
CoefficientTable metropolis_coefficients(const SpectralData& s, const MetropolisFilter& f);
CoefficientTable coefficients(const SpectralData& s, const FilterSpec& f);

}  // namespace glsim
