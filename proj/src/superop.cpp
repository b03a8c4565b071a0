#include "glsim/superop.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace glsim {

namespace {
constexpr char kMagic[8] = {'G', 'L', 'S', 'I', 'M', 'S', 'O', 'P'};
constexpr std::uint32_t kVersion = 1;
constexpr char kConvention[16] = "vec-row-major";

Eigen::Index isqrt_exact(Eigen::Index n) {
    auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
    if (d * d != n) throw InvalidArgument("superoperator size is not a perfect square");
    return d;
}
}  // namespace

const char* picture_name(Picture p) { return p == Picture::Schrodinger ? "schrodinger" : "heisenberg"; }

Eigen::Index SuperOperator::dim() const { return isqrt_exact(matrix.rows()); }

Vector vec(const Matrix& rho) {
    const Eigen::Index d = rho.rows();
    Vector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
    return v;
}

Matrix unvec(const Vector& v, Eigen::Index d) {
    if (v.size() != d * d) throw InvalidArgument("unvec: size mismatch");
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = v(i * d + j);
    return m;
}

Matrix sandwich(const Matrix& a, const Matrix& b) { return kron(a, b.transpose()); }

Matrix apply(const Matrix& s, const Matrix& rho) {
    if (s.cols() != rho.size()) throw InvalidArgument("apply: dimension mismatch");
    return unvec(s * vec(rho), rho.rows());
}

namespace {
// Left-multiplies by V kron conj(V) one column at a time: O(d^5) instead of O(d^6).
Matrix left_kron(const Matrix& s, const Matrix& v) {
    const Eigen::Index d = v.rows();
    Matrix out(s.rows(), s.cols());
    const Matrix vh = v.adjoint();
    for (Eigen::Index c = 0; c < s.cols(); ++c) {
        Matrix x = unvec(s.col(c), d);
        out.col(c) = vec(v * x * vh);
    }
    return out;
}
}  // namespace

Matrix change_basis(const Matrix& s, const Matrix& v) {
    if (s.rows() != v.rows() * v.rows()) throw InvalidArgument("change_basis: dimension mismatch");
    Matrix half = left_kron(s, v);
    return left_kron(half.adjoint(), v).adjoint();
}

Matrix choi(const Matrix& s) {
    const Eigen::Index d = isqrt_exact(s.rows());
    Matrix j(d * d, d * d);
    // Phi(|i><j|)(k, l) = S(k d + l, i d + j); Choi entry ((i,k),(j,l)).
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index jj = 0; jj < d; ++jj)
            for (Eigen::Index k = 0; k < d; ++k)
                for (Eigen::Index l = 0; l < d; ++l) j(i * d + k, jj * d + l) = s(k * d + l, i * d + jj);
    return j;
}

double norm_2to2(const Matrix& s) { return op_norm(s); }

namespace {
struct BasisElement {
    Eigen::Index idx[2];
    cplx val[2];
    int count;
};

std::vector<BasisElement> hermitian_basis(Eigen::Index d) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<BasisElement> out;
    out.reserve(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out.push_back({{i * d + i, 0}, {1.0, 0.0}, 1});
        for (Eigen::Index j = i + 1; j < d; ++j) {
            out.push_back({{i * d + j, j * d + i}, {r, r}, 2});
            out.push_back({{i * d + j, j * d + i}, {cplx(0, r), cplx(0, -r)}, 2});
        }
    }
    return out;
}
}  // namespace

Eigen::MatrixXd hermitian_real_form(const Matrix& s) {
    const Eigen::Index d = isqrt_exact(s.rows());
    const auto basis = hermitian_basis(d);
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd out(n, n);
    Vector y(d * d);
    for (Eigen::Index b = 0; b < n; ++b) {
        const BasisElement& gb = basis[b];
        y = gb.val[0] * s.col(gb.idx[0]);
        if (gb.count == 2) y += gb.val[1] * s.col(gb.idx[1]);
        for (Eigen::Index a = 0; a < n; ++a) {
            const BasisElement& ga = basis[a];
            cplx acc = std::conj(ga.val[0]) * y(ga.idx[0]);
            if (ga.count == 2) acc += std::conj(ga.val[1]) * y(ga.idx[1]);
            out(a, b) = acc.real();
        }
    }
    return out;
}

RVector hermitian_coords(const Matrix& x) {
    const Eigen::Index d = x.rows();
    const Vector v = vec(x);
    const auto basis = hermitian_basis(d);
    RVector c(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        cplx acc = std::conj(basis[a].val[0]) * v(basis[a].idx[0]);
        if (basis[a].count == 2) acc += std::conj(basis[a].val[1]) * v(basis[a].idx[1]);
        c(a) = acc.real();
    }
    return c;
}

Matrix from_hermitian_coords(const RVector& c, Eigen::Index d) {
    if (c.size() != d * d) throw InvalidArgument("from_hermitian_coords: size mismatch");
    const auto basis = hermitian_basis(d);
    Vector v = Vector::Zero(d * d);
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (int k = 0; k < basis[a].count; ++k) v(basis[a].idx[k]) += c(a) * basis[a].val[k];
    return unvec(v, d);
}

void save_superop(const SuperOperator& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const std::uint64_t d = static_cast<std::uint64_t>(s.dim());
    const std::uint32_t pic = s.picture == Picture::Schrodinger ? 0 : 1;
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&kVersion), sizeof kVersion);
    out.write(reinterpret_cast<const char*>(&pic), sizeof pic);
    out.write(reinterpret_cast<const char*>(&d), sizeof d);
    out.write(kConvention, sizeof kConvention);
    for (Eigen::Index r = 0; r < s.matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < s.matrix.cols(); ++c) {
            const double re = s.matrix(r, c).real(), im = s.matrix(r, c).imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof re);
            out.write(reinterpret_cast<const char*>(&im), sizeof im);
        }
    if (!out) throw std::runtime_error("write failed for " + path);
}

SuperOperator load_superop(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8];
    std::uint32_t version = 0, pic = 0;
    std::uint64_t d = 0;
    char conv[16];
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&pic), sizeof pic);
    in.read(reinterpret_cast<char*>(&d), sizeof d);
    in.read(conv, sizeof conv);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) throw std::runtime_error(path + ": not a superoperator cache");
    if (version != kVersion) throw std::runtime_error(path + ": unsupported cache version");
    if (std::memcmp(conv, kConvention, sizeof conv) != 0) throw std::runtime_error(path + ": vectorization convention mismatch");
    if (pic > 1 || d == 0 || d > (1u << 10)) throw std::runtime_error(path + ": corrupt header");
    SuperOperator s;
    s.picture = pic == 0 ? Picture::Schrodinger : Picture::Heisenberg;
    const auto n = static_cast<Eigen::Index>(d * d);
    s.matrix.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            double re = 0, im = 0;
            in.read(reinterpret_cast<char*>(&re), sizeof re);
            in.read(reinterpret_cast<char*>(&im), sizeof im);
            s.matrix(r, c) = cplx(re, im);
        }
    if (!in) throw std::runtime_error(path + ": truncated");
    return s;
}

}  // namespace glsim
