#include "glsim/adiabatic.hpp"

#include <algorithm>
#include <cmath>

namespace glsim {

Vector bell_initial_state(int n) {
    if (n < 1) throw InvalidArgument("bell_initial_state: n must be >= 1");
    const Eigen::Index d = Eigen::Index(1) << n;
    return vec(Matrix::Identity(d, d)) / std::sqrt(double(d));
}

Vector purified_gibbs(const Matrix& h, double beta) {
    const SpectralData s = diagonalize(h);
    const Eigen::Index d = s.dim();
    RVector p(d);
    for (Eigen::Index i = 0; i < d; ++i) p(i) = std::exp(-beta * (s.energies(i) - s.levels(0)));
    p /= p.sum();
    const Matrix root = s.eigenvectors * p.cwiseSqrt().cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
    return vec(root);
}

AdiabaticPath::AdiabaticPath(const InteractionList& list, double beta, int grid_points, double weight)
    : n_(list.sites()), beta_(beta), h_(build_hamiltonian(list)) {
    if (grid_points < 4) throw InvalidArgument("AdiabaticPath: need at least 4 grid points");
    if (!(beta >= 0)) throw InvalidArgument("AdiabaticPath: beta must be >= 0");
    const JumpSet jumps = pauli_jumps(n_, weight);
    const SpectralData s = diagonalize(h_);
    for (int k = 0; k < grid_points; ++k) {
        const double b = beta * k / double(grid_points - 1);
        grid_.push_back(-tilde_generator(s, jumps, gaussian_coefficients(s, b), b).matrix);
    }
}

namespace {
// Catmull-Rom weights; ghost points beyond the ends are linear extrapolations.
std::vector<std::pair<int, double>> stencil(double s, int g) {
    s = std::clamp(s, 0.0, 1.0);
    const double x = s * (g - 1);
    int k = std::min(static_cast<int>(std::floor(x)), g - 2);
    const double u = x - k;
    const double w[4] = {0.5 * (-u * u * u + 2 * u * u - u), 0.5 * (3 * u * u * u - 5 * u * u + 2),
                         0.5 * (-3 * u * u * u + 4 * u * u + u), 0.5 * (u * u * u - u * u)};
    std::vector<std::pair<int, double>> out;
    for (int m = 0; m < 4; ++m) {
        const int j = k - 1 + m;
        if (j < 0) {
            out.emplace_back(0, 2 * w[m]);
            out.emplace_back(1, -w[m]);
        } else if (j > g - 1) {
            out.emplace_back(g - 1, 2 * w[m]);
            out.emplace_back(g - 2, -w[m]);
        } else {
            out.emplace_back(j, w[m]);
        }
    }
    return out;
}
}  // namespace

Matrix AdiabaticPath::at(double s) const {
    Matrix out = Matrix::Zero(grid_[0].rows(), grid_[0].cols());
    for (auto [j, w] : stencil(s, static_cast<int>(grid_.size()))) out += w * grid_[j];
    return out;
}

Vector AdiabaticPath::apply(double s, const Vector& psi) const {
    Vector out = Vector::Zero(psi.size());
    for (auto [j, w] : stencil(s, static_cast<int>(grid_.size())))
        if (w != 0.0) out.noalias() += w * (grid_[j] * psi);
    return out;
}

AdiabaticResult evolve_adiabatic(const AdiabaticPath& path, double T_ad, int steps, int samples) {
    if (!(T_ad > 0)) throw InvalidArgument("evolve_adiabatic: T_ad must be positive");
    if (steps < 100) throw InvalidArgument("evolve_adiabatic: need at least 100 steps");
    AdiabaticResult res;
    res.T_ad = T_ad;
    res.steps = steps;
    Vector psi = bell_initial_state(path.sites());
    const double dt = T_ad / steps;
    auto rhs = [&](double tau, const Vector& v) -> Vector { return -I_UNIT * path.apply(tau / T_ad, v); };
    auto record = [&](double s) {
        const Vector target = purified_gibbs(path.hamiltonian(), s * path.beta());
        res.s.push_back(s);
        res.fidelity.push_back(std::norm(target.dot(psi)));
    };
    const int every = std::max(1, steps / std::max(1, samples));
    record(0.0);
    for (int k = 0; k < steps; ++k) {
        const double tau = k * dt;
        const Vector k1 = rhs(tau, psi);
        const Vector k2 = rhs(tau + 0.5 * dt, psi + 0.5 * dt * k1);
        const Vector k3 = rhs(tau + 0.5 * dt, psi + 0.5 * dt * k2);
        const Vector k4 = rhs(tau + dt, psi + dt * k3);
        psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((k + 1) % every == 0 || k + 1 == steps) {
            if (k + 1 == steps || res.s.back() < double(k + 1) / steps) record(double(k + 1) / steps);
        }
    }
    res.norm_drift = std::abs(psi.norm() - 1.0);
    if (res.norm_drift > 1e-6)
        throw NumericalError("evolve_adiabatic: norm drift " + std::to_string(res.norm_drift) + " exceeds 1e-6; increase steps");
    res.final_fidelity = res.fidelity.back();
    return res;
}

DerivativeNorms derivative_norms(const InteractionList& list, double beta, double s, double delta, double weight) {
    if (delta < 1e-5 || delta > 1e-3) throw InvalidArgument("derivative_norms: delta must lie in [1e-5, 1e-3]");
    if (s - delta < 0 || s + delta > 1) throw InvalidArgument("derivative_norms: s +- delta must stay in [0, 1]");
    const int n = list.sites();
    const Matrix h = build_hamiltonian(list);
    const SpectralData sd = diagonalize(h);
    const JumpSet jumps = pauli_jumps(n, weight);
    auto lt = [&](double x) {
        const double b = x * beta;
        return tilde_generator(sd, jumps, gaussian_coefficients(sd, b), b).matrix;
    };
    const Matrix l0 = lt(s);
    auto diffs = [&](double d, double& first, double& second) {
        const Matrix lp = lt(s + d), lm = lt(s - d);
        first = op_norm((lp - lm) / (2 * d));
        second = op_norm((lp - 2.0 * l0 + lm) / (d * d));
    };
    DerivativeNorms out;
    double f2 = 0, s2 = 0;
    diffs(delta, out.first, out.second);
    diffs(0.5 * delta, f2, s2);
    auto unstable = [](double a, double b) { return std::abs(a - b) > 0.01 * std::max({std::abs(a), std::abs(b), 1e-12}); };
    if (unstable(out.first, f2) || unstable(out.second, s2))
        throw NumericalError("derivative_norms: finite differences disagree between step sizes");

    for (const auto& j : jumps.jumps) {
        const Matrix c1 = commutator(h, j.op);
        out.comm1 = std::max(out.comm1, op_norm(c1));
        out.comm2 = std::max(out.comm2, op_norm(commutator(h, c1)));
    }
    const Locality loc = locality(list);
    out.comm1_locality = 2.0 * loc.h * loc.l;
    out.comm2_locality = 4.0 * loc.h * loc.h * loc.l * loc.l * loc.k;
    out.first_bound = 61.0 * beta * n * out.comm1;
    const double structure = beta * beta * n * (out.comm2 + out.comm1 * out.comm1);
    out.second_bound = kSecondDerivativeC * structure;
    out.fitted_C = structure > 0 ? out.second / structure : 0.0;
    return out;
}

double adiabatic_time_bound(double epsilon, double d1, double d2, double gap) {
    if (!(epsilon > 0) || !(gap > 0)) throw InvalidArgument("adiabatic_time_bound: epsilon and gap must be positive");
    return 10.0 / (epsilon * epsilon) * std::max(d1 * d1 * d1 / std::pow(gap, 4), d1 * d2 / std::pow(gap, 3));
}

}  // namespace glsim
