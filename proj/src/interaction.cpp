#include "glsim/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace glsim {

int ChainGeometry::distance(int u, int v) const {
    int d = std::abs(u - v);
    if (periodic) d = std::min(d, sites - d);
    return d;
}

void InteractionList::validate() const {
    if (geometry.sites <= 0) throw InvalidArgument("interaction list has no sites");
    for (const auto& t : terms) {
        if (t.support.empty()) throw InvalidArgument("term with empty support");
        for (std::size_t i = 0; i < t.support.size(); ++i) {
            if (t.support[i] < 0 || t.support[i] >= geometry.sites)
                throw InvalidArgument("term support site " + std::to_string(t.support[i]) + " out of range");
            if (i && t.support[i] <= t.support[i - 1]) throw InvalidArgument("term support must be sorted and distinct");
        }
        const Eigen::Index dim = Eigen::Index(1) << t.support.size();
        if (t.local.rows() != dim || t.local.cols() != dim)
            throw InvalidArgument("term matrix is not 2^|support| square");
        if (!is_hermitian(t.local, 1e-10)) throw InvalidArgument("term matrix is not Hermitian");
    }
}

Matrix build_hamiltonian(const InteractionList& list) {
    list.validate();
    const Eigen::Index dim = Eigen::Index(1) << list.sites();
    Matrix h = Matrix::Zero(dim, dim);
    for (const auto& t : list.terms) h += embed(t.local, t.support, list.sites());
    return 0.5 * (h + h.adjoint());
}

Locality locality(const InteractionList& list) {
    Locality loc;
    std::vector<int> count(list.sites(), 0);
    for (const auto& t : list.terms) {
        loc.k = std::max<int>(loc.k, static_cast<int>(t.support.size()));
        loc.h = std::max(loc.h, op_norm(t.local));
        for (int s : t.support) ++count[s];
    }
    for (int c : count) loc.l = std::max(loc.l, c);
    return loc;
}

LiebRobinson lieb_robinson_velocity(const InteractionList& list) {
    std::vector<double> per_site(list.sites(), 0.0);
    for (const auto& t : list.terms) {
        const double w = static_cast<double>(t.support.size()) * op_norm(t.local);
        for (int s : t.support) per_site[s] += w;
    }
    LiebRobinson lr;
    for (double v : per_site) lr.J = std::max(lr.J, v);
    const Locality loc = locality(list);
    lr.coarse = 2.0 * loc.h * loc.k * loc.l;
    return lr;
}

double lieb_robinson_bound(double J, double t, int r) {
    if (r == 0) return 1.0;
    if (J == 0.0 || t == 0.0) return 0.0;
    return std::exp(r * std::log(2.0 * J * std::abs(t)) - std::lgamma(r + 1.0));
}

std::vector<int> ball(const ChainGeometry& g, int center, int r) {
    std::vector<int> out;
    for (int s = 0; s < g.sites; ++s)
        if (g.distance(center, s) <= r) out.push_back(s);
    return out;
}

InteractionList restrict_to_ball(const InteractionList& list, int center, int r) {
    if (center < 0 || center >= list.sites()) throw InvalidArgument("ball center out of range");
    InteractionList out;
    out.geometry = list.geometry;
    for (const auto& t : list.terms) {
        bool inside = true;
        for (int s : t.support) inside = inside && list.geometry.distance(center, s) <= r;
        if (inside) out.terms.push_back(t);
    }
    return out;
}

Term pauli_term(double coef, const std::string& pauli_string) {
    std::istringstream in(pauli_string);
    std::string tok;
    std::vector<std::pair<int, int>> ops;
    while (in >> tok) {
        if (tok.size() < 2) throw InvalidArgument("bad Pauli token '" + tok + "'");
        const int p = pauli_index(tok[0]);
        std::size_t used = 0;
        int site = 0;
        try {
            site = std::stoi(tok.substr(1), &used);
        } catch (const std::exception&) {
            throw InvalidArgument("bad Pauli site in '" + tok + "'");
        }
        if (used != tok.size() - 1 || site < 0) throw InvalidArgument("bad Pauli site in '" + tok + "'");
        ops.emplace_back(site, p);
    }
    if (ops.empty()) throw InvalidArgument("empty Pauli string");
    std::sort(ops.begin(), ops.end());
    Term t;
    Matrix m = Matrix::Identity(1, 1);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i && ops[i].first == ops[i - 1].first) throw InvalidArgument("repeated site in Pauli string");
        t.support.push_back(ops[i].first);
        m = kron(m, pauli(ops[i].second));
    }
    t.local = coef * m;
    return t;
}

InteractionList tfim(int n, double g, double J) {
    if (n < 1) throw InvalidArgument("tfim: need at least one site");
    InteractionList list;
    list.geometry.sites = n;
    for (int i = 0; i + 1 < n; ++i)
        list.terms.push_back(pauli_term(J, "Z" + std::to_string(i) + " Z" + std::to_string(i + 1)));
    for (int i = 0; i < n; ++i) list.terms.push_back(pauli_term(g, "X" + std::to_string(i)));
    return list;
}

InteractionList random_two_local_chain(int n, std::uint64_t seed) {
    if (n < 2) throw InvalidArgument("random chain needs n >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    InteractionList list;
    list.geometry.sites = n;
    for (int i = 0; i + 1 < n; ++i) {
        Matrix g(4, 4);
        for (Eigen::Index r = 0; r < 4; ++r)
            for (Eigen::Index c = 0; c < 4; ++c) g(r, c) = cplx(gauss(rng), gauss(rng));
        Matrix h = 0.5 * (g + g.adjoint());
        h /= op_norm(h);
        list.terms.push_back(Term{{i, i + 1}, h});
    }
    return list;
}

cplx parse_entry(const std::string& tok, int line) {
    const auto colon = tok.find(':');
    try {
        std::size_t used = 0;
        if (colon == std::string::npos) {
            double re = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return {re, 0.0};
        }
        const std::string a = tok.substr(0, colon), b = tok.substr(colon + 1);
        double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(tok);
        double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(tok);
        return {re, im};
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("line " + std::to_string(line) + ": bad matrix entry '" + tok + "'");
    } catch (const std::out_of_range&) {
        throw InvalidArgument("line " + std::to_string(line) + ": matrix entry out of range '" + tok + "'");
    }
}

std::string strip_comment(const std::string& s) {
    const auto pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

InteractionList parse_model(const std::string& text) {
    InteractionList list;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool have_sites = false;
    auto fail = [&](const std::string& msg) { throw InvalidArgument("line " + std::to_string(line) + ": " + msg); };
    auto check_support = [&](const Term& t) {
        for (int s : t.support)
            if (s < 0 || s >= list.geometry.sites)
                fail("site " + std::to_string(s) + " outside the chain of " + std::to_string(list.geometry.sites));
    };
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(strip_comment(raw));
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "sites") {
            if (have_sites) fail("duplicate 'sites'");
            if (!(ls >> list.geometry.sites) || list.geometry.sites <= 0) fail("expected positive site count");
            std::string opt;
            if (ls >> opt) {
                if (opt != "periodic" && opt != "open") fail("unknown boundary '" + opt + "'");
                list.geometry.periodic = opt == "periodic";
            }
            have_sites = true;
        } else if (kw == "pauli") {
            if (!have_sites) fail("'sites' must come first");
            double coef = 0;
            if (!(ls >> coef)) fail("expected coefficient");
            std::string rest;
            std::getline(ls, rest);
            try {
                list.terms.push_back(pauli_term(coef, rest));
            } catch (const InvalidArgument& e) {
                fail(e.what());
            }
            check_support(list.terms.back());
        } else if (kw == "matrix") {
            if (!have_sites) fail("'sites' must come first");
            Term t;
            int s = 0;
            while (ls >> s) t.support.push_back(s);
            if (t.support.empty()) fail("matrix needs a support");
            if (std::adjacent_find(t.support.begin(), t.support.end(), std::greater_equal<int>()) != t.support.end())
                fail("matrix support must be strictly increasing");
            check_support(t);
            const int header = line;
            const int dim = 1 << t.support.size();
            t.local.resize(dim, dim);
            for (int r = 0; r < dim; ++r) {
                if (!std::getline(in, raw)) fail("unexpected end of file inside matrix");
                ++line;
                std::istringstream rs(strip_comment(raw));
                std::string tok;
                int c = 0;
                while (rs >> tok) {
                    if (c >= dim) fail("too many entries in matrix row");
                    t.local(r, c++) = parse_entry(tok, line);
                }
                if (c != dim) fail("matrix row has " + std::to_string(c) + " entries, expected " + std::to_string(dim));
            }
            if (!is_hermitian(t.local, 1e-12)) {
                line = header;
                fail("matrix is not Hermitian");
            }
            list.terms.push_back(std::move(t));
        } else {
            fail("unknown directive '" + kw + "'");
        }
    }
    if (!have_sites) throw InvalidArgument("model has no 'sites' directive");
    try {
        list.validate();
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string("invalid model: ") + e.what());
    }
    return list;
}

InteractionList load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open model file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

}  // namespace glsim
