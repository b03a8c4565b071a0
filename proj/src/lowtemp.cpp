#include "glsim/lowtemp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace glsim {

namespace {
double alpha_zero() { return 0.5 * std::erfc(1.0 / (2.0 * std::sqrt(2.0))); }

Matrix random_unit(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
    return v.normalized();
}
}  // namespace

CoefficientTable zero_temp_coefficients(const SpectralData& s) {
    CoefficientTable t;
    t.bohr = s.bohr;
    t.tol = s.tol;
    const auto k = static_cast<Eigen::Index>(s.bohr.size());
    t.c = Matrix::Zero(k, k);
    t.b = Matrix::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double nu = s.bohr[i];
        if (std::abs(nu) <= s.tol)
            t.c(i, i) = alpha_zero();
        else if (nu < 0)
            t.c(i, i) = 0.5;
    }
    return t;
}

SuperOperator zero_temp_generator(const SpectralData& s, const JumpSet& jumps) {
    for (const auto& j : jumps.jumps)
        if (!is_hermitian(j.op, 1e-10)) throw InvalidArgument("zero_temp_generator: jump '" + j.label + "' is not Hermitian");
    return assemble_lindbladian(s, jumps, zero_temp_coefficients(s));
}

NormKind parse_norm_kind(const std::string& s) {
    if (s == "1->1" || s == "1") return NormKind::OneToOne;
    if (s == "inf->inf" || s == "inf") return NormKind::InfToInf;
    if (s == "2->2" || s == "2") return NormKind::TwoToTwo;
    throw InvalidArgument("unknown norm '" + s + "' (expected 1->1, inf->inf or 2->2)");
}

const char* norm_kind_name(NormKind k) {
    switch (k) {
        case NormKind::OneToOne: return "1->1";
        case NormKind::InfToInf: return "inf->inf";
        case NormKind::TwoToTwo: return "2->2";
    }
    return "?";
}

DistanceEstimate induced_norm(const Matrix& s, NormKind kind, int restarts, std::uint64_t seed) {
    DistanceEstimate out;
    if (kind == NormKind::TwoToTwo) {
        out.lower_bound = norm_2to2(s);
        out.method = "exact: top singular value";
        return out;
    }
    // ||Phi||_{inf->inf} = ||Phi^dagger||_{1->1}
    const Matrix phi = kind == NormKind::OneToOne ? s : Matrix(s.adjoint());
    const Matrix adj = phi.adjoint();
    Eigen::Index d2 = phi.rows(), d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(d2))));
    if (d * d != d2) throw InvalidArgument("induced_norm: not a superoperator matrix");
    if (phi.cwiseAbs().maxCoeff() == 0.0) {
        out.method = "zero map";
        return out;
    }
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        Vector psi = random_unit(d, rng), phiv = random_unit(d, rng);
        double val = 0.0;
        for (int it = 0; it < 50; ++it) {
            const Matrix y = unvec(phi * vec(psi * phiv.adjoint()), d);
            Eigen::JacobiSVD<Matrix> sy(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const double cur = sy.singularValues().sum();
            if (it > 0 && cur <= val * (1 + 1e-13)) {
                val = std::max(val, cur);
                break;
            }
            val = cur;
            // Polar factor U of Y; then maximise Re <phi| Phi^dag(U)^dag |psi> over unit psi, phi.
            const Matrix u = sy.matrixU() * sy.matrixV().adjoint();
            const Matrix g = unvec(adj * vec(u), d).adjoint();
            Eigen::JacobiSVD<Matrix> sg(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
            phiv = sg.matrixU().col(0);
            psi = sg.matrixV().col(0);
        }
        best = std::max(best, val);
    }
    out.lower_bound = best;
    out.method = std::string("rank-one search, ") + std::to_string(std::max(1, restarts)) + " restarts" +
                 (kind == NormKind::InfToInf ? " on the adjoint" : "");
    return out;
}

DistanceEstimate generator_distance(const SuperOperator& a, const SuperOperator& b, NormKind kind, int restarts,
                                    std::uint64_t seed) {
    if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols())
        throw InvalidArgument("generator_distance: dimension mismatch");
    if (a.picture != b.picture) throw InvalidArgument("generator_distance: pictures differ");
    return induced_norm(a.matrix - b.matrix, kind, restarts, seed);
}

double zero_temp_distance_bound(int m, int M, double beta, double delta_E, double delta_nu) {
    const double x = beta * delta_E;
    if (!(2 * x > 1)) throw InvalidArgument("zero_temp_distance_bound: requires 2 beta dE > 1");
    const double a = std::exp(-beta * beta * delta_nu * delta_nu / 8.0);
    const double b = 4.0 * x / (2.0 * x - 1.0) * std::exp(-x / 4.0);
    return 3.0 * m * std::pow(double(M), 4) * std::max(a, b);
}

bool MetropolisBounds::ok() const {
    return zero_zero <= 1e-12 && diag_negative <= diag_negative_bound && diag_positive <= diag_positive_bound &&
           off_diag_ratio <= 1.0 && coherent_ratio <= 1.0 + 1e-12;
}

MetropolisBounds metropolis_coefficient_bounds(const SpectralData& s, double beta) {
    const double dE = s.delta_E;
    if (!(2 * beta * dE > 1)) throw InvalidArgument("metropolis_coefficient_bounds: requires 2 beta dE > 1");
    const CoefficientTable t = metropolis_coefficients(s, MetropolisFilter{beta, 1.0 / beta});
    MetropolisBounds out;
    out.diag_negative_bound = std::exp(-beta * dE / 4.0) * 2 * beta * dE / (2 * beta * dE - 1);
    out.diag_positive_bound = 2.0 * std::exp(-beta * dE / 2.0);
    const auto k = static_cast<Eigen::Index>(t.bohr.size());
    for (Eigen::Index i = 0; i < k; ++i) {
        const double nu = t.bohr[i];
        const double a = t.c(i, i).real();
        if (std::abs(nu) <= s.tol)
            out.zero_zero = std::abs(a - alpha_zero());
        else if (nu < 0)
            out.diag_negative = std::max(out.diag_negative, std::abs(a - 0.5));
        else
            out.diag_positive = std::max(out.diag_positive, a);
        for (Eigen::Index j = 0; j < k; ++j) {
            if (i == j) continue;
            const double dn = t.bohr[i] - t.bohr[j];
            const double al = std::abs(t.c(i, j));
            out.off_diag_ratio = std::max(out.off_diag_ratio, al / std::exp(-beta * beta * dn * dn / 8.0));
            if (al > 0) out.coherent_ratio = std::max(out.coherent_ratio, std::abs(t.b(i, j)) / (0.5 * al));
        }
    }
    return out;
}

double perturbation_rhs(int m, double beta, double h0_norm, double v_norm, double eta, double C1, double C2) {
    if (!(eta > 0 && eta < 1)) throw InvalidArgument("perturbation_rhs: eta must lie in (0, 1)");
    return m * beta * (C1 * eta * (h0_norm + v_norm) + C2 * v_norm * (1.0 + std::log(1.0 / eta)));
}

PerturbationBound perturbation_bound(int m, double beta, double h0_norm, double v_norm, double C1, double C2) {
    PerturbationBound best;
    best.C1 = C1;
    best.C2 = C2;
    best.value = std::numeric_limits<double>::infinity();
    const int pts = 241;
    for (int i = 0; i < pts; ++i) {
        const double eta = std::pow(10.0, -12.0 + 12.0 * i / double(pts));
        const double v = perturbation_rhs(m, beta, h0_norm, v_norm, eta, C1, C2);
        if (v < best.value) {
            best.value = v;
            best.eta = eta;
        }
    }
    return best;
}

double laplace_transform(const Matrix& rho, const Matrix& h, double theta) {
    if (!(theta >= 0)) throw InvalidArgument("laplace_transform: theta must be >= 0");
    if (rho.rows() != h.rows()) throw InvalidArgument("laplace_transform: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    const RVector& e = es.eigenvalues();
    const double emax = e.maxCoeff();
    const Matrix r = es.eigenvectors().adjoint() * rho * es.eigenvectors();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i) acc += r(i, i).real() * std::exp(theta * (e(i) - emax));
    const double logv = std::log(std::max(acc, 0.0)) + theta * emax;
    if (logv > 700) throw NumericalError("laplace_transform: value overflows double precision");
    return acc <= 0 ? 0.0 : std::exp(logv);
}

RVector LevelChain::evolve(const RVector& p0, double t) const {
    if (t < 0) throw InvalidArgument("LevelChain::evolve: negative time");
    const Eigen::MatrixXd m = (t * rates).exp();
    return m * p0;
}

RVector LevelChain::level_populations(const RVector& p) const {
    RVector out = RVector::Zero(levels.size());
    for (Eigen::Index x = 0; x < p.size(); ++x) out(level_of[x]) += p(x);
    return out;
}

LevelChain level_chain(const Matrix& h0, const JumpSet& jumps) {
    const Eigen::Index d = h0.rows();
    const Matrix off = h0 - Matrix(h0.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("level_chain: H0 must be diagonal in the computational basis");
    const SpectralData s = diagonalize(h0);
    LevelChain ch;
    ch.levels = s.levels;
    ch.energies.resize(d);
    ch.level_of.resize(d);
    for (Eigen::Index x = 0; x < d; ++x) {
        const double e = h0(x, x).real();
        int best = 0;
        for (int l = 1; l < s.num_levels(); ++l)
            if (std::abs(s.levels(l) - e) < std::abs(s.levels(best) - e)) best = l;
        ch.level_of[x] = best;
        ch.energies(x) = s.levels(best);
    }
    const CoefficientTable t = zero_temp_coefficients(s);
    ch.rates = Eigen::MatrixXd::Zero(d, d);
    for (const auto& j : jumps.jumps) {
        if (j.op.rows() != d) throw InvalidArgument("level_chain: jump dimension mismatch");
        for (Eigen::Index x = 0; x < d; ++x) {
            int nz = 0;
            for (Eigen::Index y = 0; y < d; ++y) {
                const double a2 = std::norm(j.op(y, x));
                if (a2 < 1e-24) continue;
                ++nz;
                if (y == x) continue;
                const double c = t.c_at(ch.energies(y) - ch.energies(x), ch.energies(y) - ch.energies(x)).real();
                ch.rates(y, x) += j.weight * c * a2;
            }
            if (nz > 1) throw InvalidArgument("level_chain: jump '" + j.label + "' is not monomial in the computational basis");
        }
    }
    for (Eigen::Index x = 0; x < d; ++x) ch.rates(x, x) = -(ch.rates.col(x).sum() - ch.rates(x, x));
    return ch;
}

double laplace_lemma_bound(double theta, double C, double delta_E, double h0_norm, double t) {
    const double rate = 0.5 * C * theta * delta_E * std::exp(-delta_E * theta);
    return 1.0 + std::exp(-rate * t + theta * h0_norm);
}

LaplaceCurve laplace_curve(const Matrix& h0_in, const JumpSet& jumps, double theta, const std::vector<double>& times,
                           double C, const LaplaceOptions& opt) {
    if (!(C > 0)) throw InvalidArgument("laplace_curve: Cheeger constant must be positive");
    if (!(theta >= 0)) throw InvalidArgument("laplace_curve: theta must be >= 0");
    const Eigen::Index d = h0_in.rows();
    const SpectralData s0 = diagonalize(h0_in);
    Matrix h0 = h0_in - s0.levels(0) * Matrix::Identity(d, d);
    const SpectralData s = diagonalize(h0);
    jumps.validate(d);

    LaplaceCurve cv;
    cv.theta = theta;
    cv.C = C;
    cv.delta_E = s.delta_E;
    cv.h0_norm = std::max(std::abs(s.levels(0)), std::abs(s.levels(s.num_levels() - 1)));
    cv.E1 = s.num_levels() > 1 ? s.levels(1) : 0.0;
    const Matrix rho0 = opt.rho0 ? *opt.rho0 : Matrix(Matrix::Identity(d, d) / double(d));
    if (rho0.rows() != d) throw InvalidArgument("laplace_curve: rho0 dimension mismatch");
    const Matrix p0 = s.projector(0);

    std::vector<double> sorted = times;
    for (double t : sorted)
        if (t < 0) throw InvalidArgument("laplace_curve: negative time");

    const bool chain = opt.dynamics == Dynamics::ZeroTemperature && opt.use_level_chain;
    if (chain) {
        const Matrix rd = rho0 - Matrix(rho0.diagonal().asDiagonal());
        if (rd.cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("laplace_curve: level-chain path needs a diagonal rho0");
        const LevelChain ch = level_chain(h0, jumps);
        const RVector pin = rho0.diagonal().real();
        for (double t : sorted) {
            const RVector p = ch.evolve(pin, t);
            double val = 0, g = 0;
            for (Eigen::Index x = 0; x < d; ++x) {
                val += p(x) * std::exp(theta * ch.energies(x));
                if (ch.level_of[x] == 0) g += p(x);
            }
            cv.t.push_back(t);
            cv.value.push_back(val);
            cv.ground_population.push_back(g);
            cv.bound.push_back(laplace_lemma_bound(theta, C, cv.delta_E, cv.h0_norm, t));
        }
        return cv;
    }

    SuperOperator l = opt.dynamics == Dynamics::ZeroTemperature
                          ? zero_temp_generator(s, jumps)
                          : assemble_lindbladian(s, jumps, metropolis_coefficients(s, MetropolisFilter{opt.beta, 0.0}));
    const Vector v0 = vec(rho0);
    for (double t : sorted) {
        const Matrix rho = unvec(expm(t * l.matrix) * v0, d);
        cv.t.push_back(t);
        cv.value.push_back(laplace_transform(rho, h0, theta));
        cv.ground_population.push_back((p0 * rho).trace().real());
        cv.bound.push_back(laplace_lemma_bound(theta, C, cv.delta_E, cv.h0_norm, t));
    }
    return cv;
}

std::vector<double> herbst_overlap_bound(const LaplaceCurve& curve, double E1) {
    if (!(E1 > 0)) throw InvalidArgument("herbst_overlap_bound: E1 must be positive");
    std::vector<double> out;
    for (double v : curve.value) out.push_back(std::exp(-curve.theta * E1) * v);
    return out;
}

}  // namespace glsim
