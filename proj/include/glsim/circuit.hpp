#pragma once

#include "glsim/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace glsim {

struct Gate {
    std::string name;
    Matrix u;                  // 2x2 or 4x4, unitary
    std::vector<int> targets;  // one qubit, or two adjacent qubits (first is the more significant)
};

// Gate t (1-based) is gates[t - 1]. Data qubits 0..n-1 start in |0>.
struct QuantumCircuit {
    int n = 0;
    std::vector<Gate> gates;

    int T() const { return static_cast<int>(gates.size()); }
    void validate() const;
    // First time (1-based) each qubit is acted on; 0 when never touched.
    std::vector<int> first_touch() const;
    // U_t ... U_1 embedded on the n data qubits.
    Matrix prefix(int t) const;
    Matrix gate_matrix(int t) const;
};

Matrix named_gate(const std::string& name);  // X, Y, Z, H, I, S, T, CNOT, CZ, SWAP, RZ(a), RX(a)

// Line format:
//   qubits <n>
//   define <NAME> <k>            followed by 2^k rows of entries re or re:im
//   <time> <GATE> <q> [<q>]      times must run 1, 2, ..., T
// '#' starts a comment. Errors carry the line number.
QuantumCircuit parse_circuit(const std::string& text);
QuantumCircuit load_circuit(const std::string& path);

// Random circuit on n qubits with T gates drawn from {X, H, RZ, CNOT}.
QuantumCircuit random_circuit(int n, int T, std::uint64_t seed);

}  // namespace glsim
