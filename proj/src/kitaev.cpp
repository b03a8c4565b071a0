#include "glsim/kitaev.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace glsim {

namespace {
// |ket><bra| on clock positions (1-based, first listed = most significant), identity elsewhere.
Matrix clock_op(const std::vector<int>& positions, const std::string& ket, const std::string& bra, int T) {
    const int k = static_cast<int>(positions.size());
    Matrix local = Matrix::Zero(Eigen::Index(1) << k, Eigen::Index(1) << k);
    local(std::stoi(ket, nullptr, 2), std::stoi(bra, nullptr, 2)) = 1.0;
    std::vector<int> q;
    for (int p : positions) q.push_back(p - 1);
    return embed(local, q, T);
}

Matrix full(const Matrix& data, const Matrix& clock) { return kron(data, clock); }

std::uint64_t clock_index(int t, int T) { return unary_clock(t, T); }
}  // namespace

HistoryStates history_states(const QuantumCircuit& c) {
    c.validate();
    const int T = c.T();
    const Eigen::Index dd = Eigen::Index(1) << c.n, dc = Eigen::Index(1) << T;
    HistoryStates hs;
    hs.eta_prime = Vector::Zero(dd * dc);
    hs.eta = Vector::Zero(dd * dc);
    Vector psi = Vector::Zero(dd);
    psi(0) = 1.0;
    for (int t = 0; t <= T; ++t) {
        if (t > 0) psi = c.gate_matrix(t) * psi;
        const double wb = std::sqrt(double(binomial(T, t)) / std::pow(2.0, T));
        const double wu = 1.0 / std::sqrt(T + 1.0);
        const auto ci = static_cast<Eigen::Index>(clock_index(t, T));
        for (Eigen::Index x = 0; x < dd; ++x) {
            hs.eta_prime(x * dc + ci) += wb * psi(x);
            hs.eta(x * dc + ci) += wu * psi(x);
        }
    }
    return hs;
}

double history_overlap_closed_form(int T) {
    double s = 0;
    for (int t = 0; t <= T; ++t) s += std::sqrt(double(binomial(T, t)));
    return s * s / (std::pow(2.0, T) * (T + 1.0));
}

ClockBundle build_kitaev(const QuantumCircuit& c, double lambda, KitaevVariant variant) {
    c.validate();
    if (!(lambda > 0)) throw InvalidArgument("build_kitaev: lambda must be positive");
    const int T = c.T(), n = c.n;
    if (T < 2) throw InvalidArgument("build_kitaev: need T >= 2");
    if (n + T > 12)
        throw InvalidArgument("build_kitaev: n + T = " + std::to_string(n + T) + " exceeds the dense limit 12 (one dense operator needs " +
                              std::to_string(std::pow(4.0, n + T) * 16.0 / 1e9) + " GB)");
    ClockBundle b;
    b.circuit = c;
    b.variant = variant;
    b.lambda = lambda;
    b.n = n;
    b.T = T;
    const Eigen::Index dd = Eigen::Index(1) << n, dc = Eigen::Index(1) << T, d = dd * dc;
    const Matrix idd = Matrix::Identity(dd, dd), id = Matrix::Identity(d, d);
    const bool ff = variant == KitaevVariant::FrustrationFree;

    b.h_clock = build_clock(T, n);
    if (ff) {
        for (int t = 1; t < T; ++t) {
            b.projectors.push_back(full(idd, clock_op({t, t + 1}, "01", "01", T)));
            b.projector_labels.push_back("clock " + std::to_string(t));
        }
    }

    b.h_in = Matrix::Zero(d, d);
    const std::vector<int> touch = c.first_touch();
    for (int q = 0; q < n; ++q) {
        Matrix one = Matrix::Zero(2, 2);
        one(1, 1) = 1.0;
        const Matrix data = embed(one, {q}, n);
        const int tj = touch[q];
        Matrix marker;
        if (tj == 0)
            marker = clock_op({T}, "1", "1", T);  // never acted on: checked at the final time
        else if (tj == 1)
            marker = clock_op({1}, "0", "0", T);
        else
            marker = clock_op({tj - 1, tj}, "10", "10", T);
        const Matrix term = full(data, marker);
        b.h_in += term;
        if (ff) {
            b.projectors.push_back(term);
            b.projector_labels.push_back("input " + std::to_string(q));
        }
    }

    b.h_prop = Matrix::Zero(d, d);
    for (int t = 1; t <= T; ++t) {
        const double ht = std::sqrt(double(t) * (T - t + 1));
        b.h.push_back(ht);
        const Matrix u = c.gate_matrix(t);
        std::vector<int> pos;
        std::string from, to;
        if (t == 1) {
            pos = {1, 2};
            from = "00";
            to = "10";
        } else if (t == T) {
            pos = {T - 1, T};
            from = "10";
            to = "11";
        } else {
            pos = {t - 1, t, t + 1};
            from = "100";
            to = "110";
        }
        const Matrix hop = full(u, clock_op(pos, to, from, T));
        Matrix term;
        if (ff) {
            term = full(idd, clock_op(pos, from, from, T) + clock_op(pos, to, to, T)) - (hop + hop.adjoint());
            b.projectors.push_back(0.5 * term);
            b.projector_labels.push_back("prop " + std::to_string(t));
        } else {
            term = id - ht * (hop + hop.adjoint());
        }
        b.h_prop += 0.5 * term;
    }
    b.hamiltonian = b.h_clock + lambda * (b.h_in + b.h_prop);
    const HistoryStates hs = history_states(c);
    b.eta_prime = hs.eta_prime;
    b.eta = hs.eta;
    return b;
}

MeasurementResult measure_ff_terms(const Matrix& rho, const ClockBundle& b) {
    if (b.variant != KitaevVariant::FrustrationFree) throw InvalidArgument("measure_ff_terms: bundle is not frustration-free");
    const Eigen::Index d = b.hamiltonian.rows();
    if (rho.rows() != d || rho.cols() != d) throw InvalidArgument("measure_ff_terms: state dimension mismatch");
    const Matrix id = Matrix::Identity(d, d);
    Matrix k = id;
    for (const Matrix& p : b.projectors) k = (id - p) * k;

    MeasurementResult r;
    r.eta_population = b.eta.dot(rho * b.eta).real();
    auto outcome = [&](const Matrix& kk, double& prob, double& fid) {
        const Matrix post = kk * rho * kk.adjoint();
        prob = post.trace().real();
        fid = prob > 0 ? b.eta.dot(post * b.eta).real() / prob : 0.0;
        return post;
    };
    outcome(k, r.accept_single, r.fidelity_single);

    // Alternating projections converge to the projector onto the common kernel, which is the
    // kernel of the (positive) sum of the terms.
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& p : b.projectors) sum += p;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sum + sum.adjoint()));
    Matrix kp = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        if (es.eigenvalues()(i) < 1e-9) kp += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    Matrix power = k;
    r.sweeps = 1;
    while ((power - kp).cwiseAbs().maxCoeff() > 1e-10 && r.sweeps < (std::uint64_t(1) << 40)) {
        power = power * power;
        r.sweeps *= 2;
    }
    r.sweeps_converged = (power - kp).cwiseAbs().maxCoeff() <= 1e-10;
    const Matrix post = outcome(kp, r.accept_limit, r.fidelity_limit);
    r.post_state = r.accept_limit > 0 ? Matrix(post / r.accept_limit) : Matrix(Matrix::Zero(d, d));
    return r;
}

SampledMeasurement sample_ff_terms(const Matrix& rho, const ClockBundle& b, int shots, std::uint64_t seed) {
    if (b.variant != KitaevVariant::FrustrationFree) throw InvalidArgument("sample_ff_terms: bundle is not frustration-free");
    if (shots < 1) throw InvalidArgument("sample_ff_terms: shots must be positive");
    const Eigen::Index d = b.hamiltonian.rows();
    const Matrix id = Matrix::Identity(d, d);
    std::vector<Matrix> q;
    for (const Matrix& p : b.projectors) q.push_back(id - p);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SampledMeasurement s;
    s.shots = shots;
    s.first_reject.assign(q.size(), 0);
    for (int shot = 0; shot < shots; ++shot) {
        Matrix state = rho;
        bool ok = true;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const Matrix next = q[i] * state * q[i];
            const double p = next.trace().real();
            if (u(rng) >= p) {
                ++s.first_reject[i];
                ok = false;
                break;
            }
            state = next / p;
        }
        s.accepted += ok;
    }
    return s;
}

OverlapCurve ground_overlap_experiment(const QuantumCircuit& c, double lambda, double beta, double t_final,
                                       int doublings, double theta) {
    c.validate();
    const int n = c.n, T = c.T();
    if (n + T > kOverlapMaxQubits) {
        const double bytes = std::pow(4.0, n + T) * std::pow(4.0, n + T) * 8.0;
        throw InvalidArgument("ground_overlap_experiment: n + T = " + std::to_string(n + T) + " exceeds the cap " +
                              std::to_string(kOverlapMaxQubits) + " (generator alone would need " +
                              std::to_string(bytes / 1e9) + " GB)");
    }
    if (!(lambda >= 0)) throw InvalidArgument("ground_overlap_experiment: lambda must be >= 0");
    if (!(beta > 0)) throw InvalidArgument("ground_overlap_experiment: beta must be positive");
    if (!(t_final > 0) || doublings < 0 || doublings > 40)
        throw InvalidArgument("ground_overlap_experiment: need t_final > 0 and 0 <= doublings <= 40");

    const Matrix h = lambda > 0 ? build_kitaev(c, lambda, KitaevVariant::Standard).hamiltonian : build_clock(T, n);
    const HistoryStates hs = history_states(c);
    const SpectralData s = diagonalize(h);
    const Eigen::Index d = s.dim();
    const JumpSet jumps = clock_jump_set(T, n);
    const SuperOperator l = assemble_lindbladian(s, jumps, metropolis_coefficients(s, MetropolisFilter{beta, 1.0 / beta}));

    OverlapCurve out;
    out.n = n;
    out.T = T;
    out.lambda = lambda;
    out.beta = beta;
    out.theta = theta;
    out.E1 = s.num_levels() > 1 ? s.levels(1) - s.levels(0) : 0.0;
    const Matrix pgs = s.projector(0);
    out.gs_eta_prime = hs.eta_prime.dot(pgs * hs.eta_prime).real();
    Matrix pclock = Matrix::Zero(d, d);
    const Eigen::Index dc = Eigen::Index(1) << T;
    for (Eigen::Index x = 0; x < d; ++x)
        if (clock_energy(std::uint64_t(x % dc), T) == 0) pclock(x, x) = 1.0;
    RVector w(d);
    for (Eigen::Index i = 0; i < d; ++i) w(i) = std::exp(theta * (s.energies(i) - s.levels(0)));
    const Matrix laplace_op = s.eigenvectors * w.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();

    auto record = [&](double t, const RVector& x) {
        const Matrix rho = from_hermitian_coords(x, d);
        out.t.push_back(t);
        out.eta_prime_overlap.push_back(hs.eta_prime.dot(rho * hs.eta_prime).real());
        out.clock_ground.push_back((pclock * rho).trace().real());
        out.gs_population.push_back((pgs * rho).trace().real());
        out.herbst.push_back(std::exp(-theta * out.E1) * (laplace_op * rho).trace().real());
    };

    // exp(tau L) once, then repeated squaring to reach t_final on a doubling grid.
    const Eigen::MatrixXd r = hermitian_real_form(l.matrix);
    const RVector x0 = hermitian_coords(Matrix::Identity(d, d) / double(d));
    const double tau = t_final / std::pow(2.0, doublings);
    Eigen::MatrixXd e = (tau * r).exp();
    record(0.0, x0);
    for (int k = 0; k <= doublings; ++k) {
        if (k > 0) e = e * e;
        record(tau * std::pow(2.0, k), e * x0);
    }
    return out;
}

}  // namespace glsim
