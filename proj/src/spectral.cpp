#include "glsim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace glsim {

Matrix SpectralData::projector(int level) const {
    if (level < 0 || level >= num_levels()) throw InvalidArgument("projector: level out of range");
    Matrix p = Matrix::Zero(dim(), dim());
    for (Eigen::Index c = 0; c < eigenvectors.cols(); ++c)
        if (level_of[c] == level) p += eigenvectors.col(c) * eigenvectors.col(c).adjoint();
    return p;
}

int SpectralData::find_bohr(double nu) const {
    auto it = std::lower_bound(bohr.begin(), bohr.end(), nu - tol);
    if (it != bohr.end() && std::abs(*it - nu) <= tol) return static_cast<int>(it - bohr.begin());
    return -1;
}

SpectralData diagonalize(const Matrix& h, double tol) {
    if (h.rows() != h.cols() || h.rows() == 0) throw InvalidArgument("diagonalize: matrix must be square and non-empty");
    if (!h.allFinite()) throw InvalidArgument("diagonalize: non-finite entries");
    if (!is_hermitian(h, 1e-9)) throw InvalidArgument("diagonalize: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("diagonalize: eigensolver did not converge");

    SpectralData s;
    const RVector& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    s.tol = tol < 0 ? 1e-9 * scale : tol;
    s.eigenvectors = es.eigenvectors();
    const Eigen::Index d = ev.size();

    std::vector<double> lv;
    s.level_of.assign(d, 0);
    std::size_t start = 0;
    for (Eigen::Index i = 1; i <= d; ++i) {
        if (i == d || ev(i) - ev(i - 1) > s.tol) {
            double mean = 0;
            for (Eigen::Index j = start; j < i; ++j) mean += ev(j);
            mean /= double(i - start);
            for (Eigen::Index j = start; j < i; ++j) s.level_of[j] = static_cast<int>(lv.size());
            s.degeneracy.push_back(static_cast<int>(i - start));
            lv.push_back(mean);
            start = i;
        }
    }
    const int m = static_cast<int>(lv.size());
    s.levels = Eigen::Map<RVector>(lv.data(), m);
    s.energies.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) s.energies(i) = lv[s.level_of[i]];
    for (int i = 1; i < m; ++i) s.delta_E = std::min(s.delta_E, lv[i] - lv[i - 1]);

    // Positive differences are clustered, then mirrored so that the set is exactly symmetric.
    std::vector<std::tuple<double, int, int>> diffs;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j) diffs.emplace_back(lv[i] - lv[j], i, j);
    std::sort(diffs.begin(), diffs.end());
    std::vector<double> pos;
    std::vector<int> group(diffs.size());
    for (std::size_t k = 0; k < diffs.size();) {
        std::size_t e = k + 1;
        while (e < diffs.size() && std::get<0>(diffs[e]) - std::get<0>(diffs[e - 1]) <= s.tol) ++e;
        double mean = 0;
        for (std::size_t q = k; q < e; ++q) {
            mean += std::get<0>(diffs[q]);
            group[q] = static_cast<int>(pos.size());
        }
        pos.push_back(mean / double(e - k));
        k = e;
    }
    const int np = static_cast<int>(pos.size());
    s.bohr.reserve(2 * np + 1);
    for (int k = np - 1; k >= 0; --k) s.bohr.push_back(-pos[k]);
    s.bohr.push_back(0.0);
    for (int k = 0; k < np; ++k) s.bohr.push_back(pos[k]);
    s.bohr_index = Eigen::MatrixXi::Constant(m, m, np);
    for (std::size_t q = 0; q < diffs.size(); ++q) {
        const int i = std::get<1>(diffs[q]), j = std::get<2>(diffs[q]);
        s.bohr_index(i, j) = np + 1 + group[q];
        s.bohr_index(j, i) = np - 1 - group[q];
    }
    for (std::size_t k = 1; k < s.bohr.size(); ++k) s.delta_nu = std::min(s.delta_nu, s.bohr[k] - s.bohr[k - 1]);
    return s;
}

std::vector<BohrComponent> bohr_decompose(const Matrix& a, const SpectralData& s) {
    if (a.rows() != s.dim() || a.cols() != s.dim()) throw InvalidArgument("bohr_decompose: dimension mismatch");
    const Matrix& v = s.eigenvectors;
    const Matrix ae = v.adjoint() * a * v;
    const Eigen::Index d = s.dim();
    std::vector<Matrix> parts(s.bohr.size());
    std::vector<bool> used(s.bohr.size(), false);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            if (std::abs(ae(i, j)) < 1e-14) continue;
            const int b = s.bohr_index(s.level_of[i], s.level_of[j]);
            if (!used[b]) {
                parts[b] = Matrix::Zero(d, d);
                used[b] = true;
            }
            parts[b](i, j) = ae(i, j);
        }
    std::vector<BohrComponent> out;
    for (std::size_t b = 0; b < parts.size(); ++b) {
        if (!used[b]) continue;
        Matrix op = v * parts[b] * v.adjoint();
        if (op.norm() < 1e-14) continue;
        out.push_back({s.bohr[b], std::move(op)});
    }
    return out;
}

}  // namespace glsim
