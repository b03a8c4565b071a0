#include "glsim/clock.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace glsim {

namespace {
void check_T(int T, int lo, int hi, const char* who) {
    if (T < lo || T > hi)
        throw InvalidArgument(std::string(who) + ": T must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::uint64_t flip1(std::uint64_t s, int t, int T) { return s ^ (std::uint64_t(1) << (T - t)); }
std::uint64_t flip2(std::uint64_t s, int t, int T) { return s ^ (std::uint64_t(3) << (T - t - 1)); }
}  // namespace

int clock_energy(std::uint64_t s, int T) {
    if (T < 2) return 0;
    const std::uint64_t mask = (std::uint64_t(1) << (T - 1)) - 1;
    return std::popcount(s & ~(s >> 1) & mask);
}

std::string clock_string(std::uint64_t s, int T) {
    std::string out;
    for (int t = 1; t <= T; ++t) out.push_back(((s >> (T - t)) & 1) ? '1' : '0');
    return out;
}

std::uint64_t unary_clock(int t, int T) {
    if (t < 0 || t > T) throw InvalidArgument("unary_clock: t out of range");
    const std::uint64_t ones = (std::uint64_t(1) << t) - 1;
    return ones << (T - t);
}

Matrix build_clock(int T, int n) {
    check_T(T, 2, 20, "build_clock");
    if (n < 0 || n + T > 14) throw InvalidArgument("build_clock: register too large for a dense matrix");
    const std::uint64_t dc = std::uint64_t(1) << T;
    const Eigen::Index d = Eigen::Index(1) << (n + T);
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index x = 0; x < d; ++x) h(x, x) = clock_energy(std::uint64_t(x) % dc, T);
    return h;
}

JumpSet clock_jump_set(int T, int n) {
    check_T(T, 2, 20, "clock_jump_set");
    JumpSet js;
    const int N = n + T;
    for (int t = 1; t <= T; ++t)
        js.jumps.push_back(Jump{embed(pauli(1), {n + t - 1}, N), 1.0, "X" + std::to_string(t), n + t - 1});
    for (int t = 1; t < T; ++t) {
        const Matrix xx = kron(pauli(1), pauli(1));
        js.jumps.push_back(Jump{embed(xx, {n + t - 1, n + t}, N), 1.0,
                                "X" + std::to_string(t) + "X" + std::to_string(t + 1), n + t - 1});
    }
    return js;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
    return r;
}

std::vector<std::uint64_t> clock_level_dims(int T) {
    check_T(T, 2, 20, "clock_level_dims");
    std::vector<std::uint64_t> dims;
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << T); ++s) {
        const auto e = static_cast<std::size_t>(clock_energy(s, T));
        if (dims.size() <= e) dims.resize(e + 1, 0);
        ++dims[e];
    }
    return dims;
}

std::uint64_t clock_level_dim_formula(int T, int i) { return binomial(T + 1, 2 * i + 1); }

MoveLemmaReport verify_move_lemma(int T) {
    check_T(T, 4, 20, "verify_move_lemma");
    if (T % 4 != 0) throw InvalidArgument("verify_move_lemma: T must be divisible by 4");
    MoveLemmaReport rep;
    rep.T = T;
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << T); ++s) {
        const int e = clock_energy(s, T);
        bool found = false;
        if (4 * e < T) {
            for (int t = 1; t <= T && !found; ++t) found = clock_energy(flip1(s, t, T), T) == e + 1;
            if (found) ++rep.raising;
        } else {
            for (int t = 1; t <= T && !found; ++t) found = clock_energy(flip1(s, t, T), T) == e - 1;
            for (int t = 1; t < T && !found; ++t) found = clock_energy(flip2(s, t, T), T) == e - 1;
            if (found) ++rep.lowering;
        }
        ++rep.checked;
        if (!found) {
            if (rep.failures == 0) rep.counterexample = clock_string(s, T);
            ++rep.failures;
        }
    }
    return rep;
}

double cheeger_lemma_bound(int T) {
    const double d = T - 1.0;
    return std::min(1.0, 6.0 / (d * d));
}

CheegerReport cheeger_constant(int T) {
    check_T(T, 2, 20, "cheeger_constant");
    CheegerReport rep;
    rep.T = T;
    rep.level_dims = clock_level_dims(T);
    rep.downhill.assign(rep.level_dims.size(), 0);
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << T); ++s) {
        const int e = clock_energy(s, T);
        if (e == 0) continue;
        std::uint64_t c = 0;
        for (int t = 1; t <= T; ++t) c += clock_energy(flip1(s, t, T), T) == e - 1;
        for (int t = 1; t < T; ++t) c += clock_energy(flip2(s, t, T), T) == e - 1;
        rep.downhill[e] += c;
    }
    rep.conductance.assign(rep.level_dims.size(), 0.0);
    rep.C = rep.level_dims.size() > 1 ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t i = 1; i < rep.level_dims.size(); ++i) {
        rep.conductance[i] = double(rep.downhill[i]) / double(rep.level_dims[i]);
        rep.C = std::min(rep.C, rep.conductance[i]);
    }
    rep.lemma_bound = cheeger_lemma_bound(T);
    return rep;
}

}  // namespace glsim
