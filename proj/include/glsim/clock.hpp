#pragma once

#include "glsim/lindbladian.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace glsim {

// Clock strings: position t = 1..T is bit T - t of the integer, so position 1 is the most
// significant bit, matching the qubit order of the register (data qubits first, then clock).
int clock_energy(std::uint64_t s, int T);  // number of "01" substrings
std::string clock_string(std::uint64_t s, int T);
std::uint64_t unary_clock(int t, int T);   // 1^t 0^(T-t)

// H_clock = sum_t |01><01|_{t,t+1} on n data qubits followed by T clock qubits.
Matrix build_clock(int T, int n = 0);

// {X_t} and {X_t X_{t+1}} on the clock register, unit weight.
JumpSet clock_jump_set(int T, int n = 0);

std::vector<std::uint64_t> clock_level_dims(int T);   // by enumeration, n = 0
std::uint64_t clock_level_dim_formula(int T, int i);  // binom(T+1, 2i+1)
std::uint64_t binomial(int n, int k);

struct MoveLemmaReport {
    int T = 0;
    std::uint64_t checked = 0;
    std::uint64_t raising = 0;   // strings with energy < T/4 that have a +1 single flip
    std::uint64_t lowering = 0;  // strings with energy >= T/4 that have a -1 single or double flip
    std::uint64_t failures = 0;
    std::string counterexample;  // first failing string, empty when none
    bool ok() const { return failures == 0 && checked > 0; }
};

MoveLemmaReport verify_move_lemma(int T);

struct CheegerReport {
    int T = 0;
    std::vector<std::uint64_t> level_dims;
    std::vector<std::uint64_t> downhill;  // sum_a tr(P_i A P_{i-1} A), n = 0
    std::vector<double> conductance;      // downhill / dim; entry 0 unused (0)
    double C = 0.0;                       // min over i >= 1
    double lemma_bound = 0.0;             // min{1, 6 / (T-1)^2}
    bool ok() const { return C >= lemma_bound; }
};

CheegerReport cheeger_constant(int T);
double cheeger_lemma_bound(int T);

}  // namespace glsim
