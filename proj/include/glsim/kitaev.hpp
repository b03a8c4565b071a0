#pragma once

#include "glsim/circuit.hpp"
#include "glsim/clock.hpp"
#include "glsim/lowtemp.hpp"

#include <cstdint>
#include <vector>

namespace glsim {

enum class KitaevVariant { Standard, FrustrationFree };

// Register: n data qubits, then T clock qubits. Time t is encoded as the clock string 1^t 0^(T-t),
// the zero-energy strings of H_clock that the propagation terms hop between.
struct ClockBundle {
    QuantumCircuit circuit;
    KitaevVariant variant = KitaevVariant::Standard;
    double lambda = 0.0;
    int n = 0;
    int T = 0;
    std::vector<double> h;   // h_t = sqrt(t (T - t + 1)), index t - 1
    Matrix h_clock;
    Matrix h_in;
    Matrix h_prop;           // (1/2) sum_t H_prop(t), standard or FF form
    Matrix hamiltonian;      // h_clock + lambda (h_in + h_prop)
    std::vector<Matrix> projectors;  // FF only: every term as a projector, in measurement order
    std::vector<std::string> projector_labels;
    Vector eta_prime;        // binomial history state
    Vector eta;              // uniform history state

    int qubits() const { return n + T; }
};

struct HistoryStates {
    Vector eta_prime;
    Vector eta;
};

HistoryStates history_states(const QuantumCircuit& c);
ClockBundle build_kitaev(const QuantumCircuit& c, double lambda, KitaevVariant variant);

// (sum_t sqrt(binom(T, t)))^2 / (2^T (T + 1)); independent of the gates.
double history_overlap_closed_form(int T);

struct MeasurementResult {
    double eta_population = 0.0;      // <eta|rho|eta>
    double accept_single = 0.0;       // one sweep over all terms
    double fidelity_single = 0.0;     // <eta|post|eta> after one accepted sweep
    double accept_limit = 0.0;        // sweeps repeated until the product of projectors converges
    double fidelity_limit = 0.0;
    std::uint64_t sweeps = 0;         // sweeps until the product is within 1e-10 of the limit (power of two)
    bool sweeps_converged = false;
    Matrix post_state;                // after the converged accepted sequence
};

// Exact probabilities of the all-accept outcome when the FF terms are measured in order.
MeasurementResult measure_ff_terms(const Matrix& rho, const ClockBundle& b);

struct SampledMeasurement {
    int shots = 0;
    int accepted = 0;                 // shots where every term of a single sweep accepted
    std::vector<int> first_reject;    // per term, how many shots were first rejected there
};

SampledMeasurement sample_ff_terms(const Matrix& rho, const ClockBundle& b, int shots, std::uint64_t seed);

struct OverlapCurve {
    int n = 0;
    int T = 0;
    double lambda = 0.0;
    double beta = 0.0;
    double theta = 0.0;
    double E1 = 0.0;                      // first excited energy of H, ground energy shifted to 0
    double gs_eta_prime = 0.0;            // <eta'|P_gs|eta'>
    std::vector<double> t;
    std::vector<double> eta_prime_overlap;  // <eta'|rho_t|eta'>
    std::vector<double> clock_ground;       // tr(P_0(H_clock) rho_t)
    std::vector<double> gs_population;      // tr(P_gs rho_t)
    std::vector<double> herbst;             // exp(-theta E1) tr(rho_t exp(theta H))
};

inline constexpr int kOverlapMaxQubits = 6;

// Metropolis dynamics (sigma_E = 1/beta) of H_{C,lambda} with the clock jump set, from the
// maximally mixed state. Samples t_final 2^-k for k = doublings..0, plus t = 0.
OverlapCurve ground_overlap_experiment(const QuantumCircuit& c, double lambda, double beta, double t_final,
                                       int doublings = 14, double theta = 0.1);

}  // namespace glsim
