#pragma once

#include "glsim/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace glsim {

struct Term {
    std::vector<int> support;  // sorted, distinct sites
    Matrix local;              // 2^|support| square, Hermitian
};

// 1D chain of qubits. Distance is |u - v| (or the ring distance when periodic).
struct ChainGeometry {
    int sites = 0;
    bool periodic = false;

    int distance(int u, int v) const;
};

struct InteractionList {
    ChainGeometry geometry;
    std::vector<Term> terms;

    int sites() const { return geometry.sites; }
    void validate() const;
};

struct Locality {
    int k = 0;         // max support size
    int l = 0;         // max number of terms touching a site
    double h = 0.0;    // max term norm
};

struct LiebRobinson {
    double J = 0.0;       // max_u sum_{Z containing u} |Z| ||h_Z||
    double coarse = 0.0;  // 2 h k l, an upper bound on 2J
};

Matrix build_hamiltonian(const InteractionList& list);
Locality locality(const InteractionList& list);
LiebRobinson lieb_robinson_velocity(const InteractionList& list);
double lieb_robinson_bound(double J, double t, int r);

// Keeps the terms whose support lies in the ball of radius r around `center`.
InteractionList restrict_to_ball(const InteractionList& list, int center, int r);
std::vector<int> ball(const ChainGeometry& g, int center, int r);

// Term that is coef * (product of Paulis), e.g. "Z0 Z1".
Term pauli_term(double coef, const std::string& pauli_string);

// H = J sum Z_i Z_{i+1} + g sum X_i on an open chain.
InteractionList tfim(int n, double g = 1.0, double J = 1.0);

// Nearest-neighbour chain with random Hermitian bond terms of unit operator norm.
InteractionList random_two_local_chain(int n, std::uint64_t seed);

// Text model format, one directive per line:
//   sites <n> [periodic]
//   pauli <coef> <P><site> <P><site> ...
//   matrix <site> [<site> ...]   followed by 2^k rows of entries re or re:im
// Shared by the text formats: 're' or 're:im'; errors name the line.
cplx parse_entry(const std::string& tok, int line);
std::string strip_comment(const std::string& s);

InteractionList parse_model(const std::string& text);
InteractionList load_model(const std::string& path);

}  // namespace glsim
