#include "glsim/circuit.hpp"
#include "glsim/kitaev.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace glsim;

namespace {
QuantumCircuit single_x() { return parse_circuit("qubits 1\n1 X 0\n2 I 0\n3 I 0\n4 I 0\n"); }

double closed_form_oracle(int T) {
    double s = 0;
    for (int t = 0; t <= T; ++t) s += std::sqrt(std::tgamma(T + 1.0) / (std::tgamma(t + 1.0) * std::tgamma(T - t + 1.0)));
    return s * s / (std::pow(2.0, T) * (T + 1));
}
}  // namespace

TEST(Circuit, ParsesNamedAndDefinedGates) {
    const QuantumCircuit c = parse_circuit(
        "# comment\nqubits 2\ndefine SX 1\n0.5:0.5 0.5:-0.5\n0.5:-0.5 0.5:0.5\n1 H 0\n2 CNOT 0 1\n3 SX 1 # tail\n4 RZ(0.3) 0\n");
    EXPECT_EQ(c.n, 2);
    EXPECT_EQ(c.T(), 4);
    EXPECT_EQ(c.first_touch(), (std::vector<int>{1, 2}));
    // SX squared is X.
    EXPECT_LT((c.gates[2].u * c.gates[2].u - pauli(1)).norm(), 1e-14);
}

TEST(Circuit, ErrorsCarryLineNumbers) {
    auto expect_line = [](const std::string& text, const std::string& line) {
        try {
            parse_circuit(text);
            FAIL() << "no error for:\n" << text;
        } catch (const InvalidArgument& e) {
            EXPECT_NE(std::string(e.what()).find(line), std::string::npos) << e.what();
        }
    };
    expect_line("qubits 2\n1 X 0\n3 X 1\n", "line 3");
    expect_line("qubits 3\n1 CNOT 0 2\n", "line 2");
    expect_line("qubits 1\ndefine BAD 1\n1 0\n1 1\n1 BAD 0\n", "line");
    expect_line("1 X 0\n", "line 1");
    expect_line("qubits 1\n1 FOO 0\n", "line 2");
}

TEST(Circuit, PrefixComposesGates) {
    const QuantumCircuit c = parse_circuit("qubits 2\n1 H 0\n2 CNOT 0 1\n");
    const Vector psi = c.prefix(2).col(0);
    EXPECT_NEAR(std::abs(psi(0)), 1 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(std::abs(psi(3)), 1 / std::sqrt(2.0), 1e-14);
}

TEST(Kitaev, FrustrationFreeTermsAnnihilateHistoryState) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const int n = 1 + int(seed % 2), T = 2 + int(seed % 3);
        const ClockBundle b = build_kitaev(random_circuit(n, T, seed), 1e-3, KitaevVariant::FrustrationFree);
        EXPECT_LT((b.hamiltonian * b.eta).norm(), 1e-12);
        for (const auto& p : b.projectors) {
            EXPECT_LT((p * p - p).norm(), 1e-12);
            EXPECT_LT((p * b.eta).norm(), 1e-12);
        }
        // The history state is the unique zero-energy state.
        Eigen::SelfAdjointEigenSolver<Matrix> es(b.hamiltonian, Eigen::EigenvaluesOnly);
        EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-10);
        EXPECT_GT(es.eigenvalues()(1), 1e-8);
    }
}

TEST(Kitaev, HistoryOverlapClosedForm) {
    for (int T = 2; T <= 5; ++T) {
        const QuantumCircuit c = random_circuit(1, T, 40 + T);
        const HistoryStates h = history_states(c);
        EXPECT_NEAR(h.eta.norm(), 1.0, 1e-14);
        EXPECT_NEAR(h.eta_prime.norm(), 1.0, 1e-14);
        const double ov = std::norm(h.eta_prime.dot(h.eta));
        EXPECT_NEAR(ov, closed_form_oracle(T), 1e-12);
        EXPECT_NEAR(history_overlap_closed_form(T), closed_form_oracle(T), 1e-14);
        EXPECT_GE(ov, 1.0 / (T + 1));
    }
    EXPECT_NEAR(closed_form_oracle(4), 0.8924, 1e-4);
}

TEST(Kitaev, StandardGroundStateIsBinomialHistory) {
    const ClockBundle b = build_kitaev(single_x(), 1e-3, KitaevVariant::Standard);
    Eigen::SelfAdjointEigenSolver<Matrix> es(b.hamiltonian);
    EXPECT_NEAR(std::norm(es.eigenvectors().col(0).dot(b.eta_prime)), 1.0, 1e-10);
}

TEST(Kitaev, MeasurementProtocol) {
    const ClockBundle b = build_kitaev(single_x(), 1e-3, KitaevVariant::FrustrationFree);
    const Eigen::Index d = b.hamiltonian.rows();
    std::mt19937_64 rng(17);
    for (int k = 0; k < 3; ++k) {
        const Matrix rho = test::random_density(d, rng);
        const MeasurementResult m = measure_ff_terms(rho, b);
        EXPECT_NEAR(m.accept_limit, m.eta_population, 1e-10);
        EXPECT_GE(m.accept_single, m.eta_population - 1e-12);
        EXPECT_NEAR(m.fidelity_limit, 1.0, 1e-8);
        EXPECT_TRUE(m.sweeps_converged);
    }
    const Matrix pure = b.eta * b.eta.adjoint();
    const MeasurementResult m = measure_ff_terms(pure, b);
    EXPECT_NEAR(m.accept_single, 1.0, 1e-12);
    EXPECT_NEAR(m.accept_limit, 1.0, 1e-10);
}

TEST(Kitaev, SampledMeasurementIsSeededAndConsistent) {
    const ClockBundle b = build_kitaev(single_x(), 1e-3, KitaevVariant::FrustrationFree);
    const Matrix rho = Matrix::Identity(b.hamiltonian.rows(), b.hamiltonian.cols()) / double(b.hamiltonian.rows());
    const SampledMeasurement a = sample_ff_terms(rho, b, 4000, 99), c = sample_ff_terms(rho, b, 4000, 99);
    EXPECT_EQ(a.accepted, c.accepted);
    EXPECT_EQ(a.first_reject, c.first_reject);
    const double p = measure_ff_terms(rho, b).accept_single;
    EXPECT_NEAR(double(a.accepted) / a.shots, p, 5 * std::sqrt(p * (1 - p) / a.shots));
}

TEST(Kitaev, SizeCapsAreReported) {
    try {
        build_kitaev(random_circuit(4, 9, 1), 1e-3, KitaevVariant::Standard);
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("GB"), std::string::npos) << e.what();
    }
    try {
        ground_overlap_experiment(random_circuit(2, 5, 1), 1e-3, 20, 1.0);
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("GB"), std::string::npos) << e.what();
    }
}

TEST(Kitaev, OverlapExperimentSmall) {
    const QuantumCircuit c = parse_circuit("qubits 1\n1 X 0\n2 I 0\n");
    const OverlapCurve oc = ground_overlap_experiment(c, 1e-3, 20, 100.0, 6);
    ASSERT_EQ(oc.t.size(), 8u);
    EXPECT_NEAR(oc.eta_prime_overlap.front(), 1.0 / 8.0, 1e-12);
    for (std::size_t i = 1; i < oc.t.size(); ++i) EXPECT_GE(oc.clock_ground[i], oc.clock_ground[i - 1] - 1e-9);
    for (std::size_t i = 0; i < oc.t.size(); ++i) EXPECT_LE(1 - oc.gs_population[i], oc.herbst[i] + 1e-12);
}
