#pragma once

#include "glsim/gap.hpp"
#include "glsim/interaction.hpp"

#include <vector>

namespace glsim {

// vec(I)/sqrt(2^n): a product of Bell pairs up to a reordering of the doubled register.
Vector bell_initial_state(int n);
Vector purified_gibbs(const Matrix& h, double beta);  // vec(sqrt(sigma_beta))

struct Schedule {
    double beta = 0.0;
    int grid_points = 64;
    double T_ad = 1.0;
    int steps = 1000;
};

// Precomputed -L~_{s beta} on a uniform s-grid with cubic (Catmull-Rom) interpolation.
class AdiabaticPath {
public:
    AdiabaticPath(const InteractionList& list, double beta, int grid_points = 64,
                  double weight = kPauliTwirlWeight);

    Matrix at(double s) const;
    Vector apply(double s, const Vector& psi) const;
    int sites() const { return n_; }
    double beta() const { return beta_; }
    const Matrix& hamiltonian() const { return h_; }

private:
    int n_;
    double beta_;
    Matrix h_;
    std::vector<Matrix> grid_;
};

struct AdiabaticResult {
    double T_ad = 0.0;
    int steps = 0;
    std::vector<double> s;
    std::vector<double> fidelity;  // |<sqrt(sigma_{s beta}) | psi>|^2 on the output grid
    double final_fidelity = 0.0;
    double norm_drift = 0.0;
};

// RK4 for i dpsi/dtau = H(tau / T_ad) psi with H(s) = -L~_{s beta}.
AdiabaticResult evolve_adiabatic(const AdiabaticPath& path, double T_ad, int steps, int samples = 8);

struct DerivativeNorms {
    double first = 0.0;   // || d/ds L~_{s beta} ||_{2->2}
    double second = 0.0;
    double first_bound = 0.0;
    double second_bound = 0.0;
    double comm1 = 0.0;   // max ||[H, A]||
    double comm2 = 0.0;   // max ||[H, [H, A]]||
    double comm1_locality = 0.0;  // 2 h l
    double comm2_locality = 0.0;  // 4 h^2 l^2 k
    double fitted_C = 0.0;        // second / (beta^2 n (comm2 + comm1^2))
};

// Constant used for the second-derivative bound; not fixed by the analysis, see README.
inline constexpr double kSecondDerivativeC = 61.0;

DerivativeNorms derivative_norms(const InteractionList& list, double beta, double s, double delta,
                                 double weight = kPauliTwirlWeight);

double adiabatic_time_bound(double epsilon, double d1, double d2, double gap);

}  // namespace glsim
