#include "glsim/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace glsim {

using std::numbers::pi;

double MetropolisFilter::sigma() const { return sigma_E > 0 ? sigma_E : 1.0 / beta; }

double filter_beta(const FilterSpec& f) {
    return std::visit([](const auto& x) { return x.beta; }, f);
}

void validate_filter(const FilterSpec& f) {
    const double beta = filter_beta(f);
    if (!std::isfinite(beta) || beta < 0) throw InvalidArgument("beta must be finite and non-negative");
    if (const auto* m = std::get_if<MetropolisFilter>(&f)) {
        if (beta <= 0) throw InvalidArgument("Metropolis filter needs beta > 0");
        if (!std::isfinite(m->sigma_E) || m->sigma_E < 0) throw InvalidArgument("sigma_E must be >= 0");
    }
}

double erfcx(double z) {
    if (z < 5.0) return std::exp(z * z) * std::erfc(z);
    // Continued fraction erfc(z) = e^{-z^2}/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))).
    double f = z;
    for (int k = 80; k >= 1; --k) f = z + 0.5 * k / f;
    return 1.0 / (std::sqrt(pi) * f);
}

double gaussian_gamma(double omega, double beta) {
    const double x = beta * omega + 1.0;
    return std::exp(-0.5 * x * x);
}

double gaussian_window(double t, double beta) {
    return std::exp(-t * t / (beta * beta)) * std::sqrt(std::sqrt(2.0 / pi) / beta);
}

double gaussian_window_hat(double omega, double beta) {
    // (2pi)^-1/2 * norm * beta sqrt(pi) exp(-beta^2 w^2 / 4)
    const double norm = std::sqrt(std::sqrt(2.0 / pi) / beta);
    return norm * beta / std::sqrt(2.0) * std::exp(-beta * beta * omega * omega / 4.0);
}

double gaussian_c(double nu1, double nu2, double beta) {
    const double d = beta * (nu1 - nu2);
    const double s = 1.0 + 0.5 * beta * (nu1 + nu2);
    return std::exp(-d * d / 8.0 - s * s / 4.0) / std::sqrt(2.0);
}

cplx coherent_b(double nu1, double nu2, double beta, cplx c) {
    return 0.5 * I_UNIT * std::tanh(beta * (nu1 - nu2) / 4.0) * c;
}

cplx b1_hat(double x) {
    return I_UNIT * (pi / std::sqrt(2.0)) * std::tanh(x / 4.0) * std::exp(-x * x / 8.0);
}

cplx b2_hat(double y) {
    const double u = y + 2.0;
    return std::exp(-u * u / 16.0) / (4.0 * pi);
}

double metropolis_gamma(double omega, double beta, double sigma) {
    return std::exp(-beta * std::max(omega + 0.5 * beta * sigma * sigma, 0.0));
}

double metropolis_alpha(double nu1, double nu2, double beta, double sigma) {
    // 1/4 e^{-D^2/(8 s^2)} [ e^{-beta S/2} erfc(-u) + erfc(w) ], the e^{+beta S/2} factor of the
    // second term having cancelled against the prefactor.
    const double S = nu1 + nu2, D = nu1 - nu2;
    const double r = 2.0 * std::sqrt(2.0) * sigma;
    const double u = (S - beta * sigma * sigma) / r;
    const double w = (S + beta * sigma * sigma) / r;
    const double gauss = -D * D / (8.0 * sigma * sigma);
    const double z = -u;
    double first;
    if (z > 0)
        first = std::exp(gauss - 0.5 * beta * S - z * z) * erfcx(z);
    else
        first = std::exp(gauss - 0.5 * beta * S) * std::erfc(z);
    return 0.25 * (first + std::exp(gauss) * std::erfc(w));
}

int CoefficientTable::index(double nu) const {
    auto it = std::lower_bound(bohr.begin(), bohr.end(), nu - tol);
    if (it == bohr.end() || std::abs(*it - nu) > tol) {
        std::ostringstream os;
        os << "coefficient table has no Bohr frequency " << nu;
        throw InvalidArgument(os.str());
    }
    return static_cast<int>(it - bohr.begin());
}

cplx CoefficientTable::c_at(double nu1, double nu2) const { return c(index(nu1), index(nu2)); }
cplx CoefficientTable::b_at(double nu1, double nu2) const { return b(index(nu1), index(nu2)); }

namespace {
template <class F>
CoefficientTable tabulate(const SpectralData& s, double beta, F&& cfun) {
    CoefficientTable t;
    t.bohr = s.bohr;
    t.tol = s.tol;
    const auto k = static_cast<Eigen::Index>(s.bohr.size());
    t.c.resize(k, k);
    t.b.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            const double c = cfun(s.bohr[i], s.bohr[j]);
            if (!std::isfinite(c)) throw NumericalError("non-finite filter coefficient");
            t.c(i, j) = c;
            t.b(i, j) = coherent_b(s.bohr[i], s.bohr[j], beta, c);
        }
    return t;
}
}  // namespace

CoefficientTable gaussian_coefficients(const SpectralData& s, double beta) {
    validate_filter(GaussianFilter{beta});
    return tabulate(s, beta, [beta](double a, double b) { return gaussian_c(a, b, beta); });
}

CoefficientTable metropolis_coefficients(const SpectralData& s, const MetropolisFilter& f) {
    validate_filter(f);
    const double sig = f.sigma();
    return tabulate(s, f.beta, [&](double a, double b) { return metropolis_alpha(a, b, f.beta, sig); });
}

CoefficientTable coefficients(const SpectralData& s, const FilterSpec& f) {
    if (const auto* g = std::get_if<GaussianFilter>(&f)) return gaussian_coefficients(s, g->beta);
    return metropolis_coefficients(s, std::get<MetropolisFilter>(f));
}

}  // namespace glsim
