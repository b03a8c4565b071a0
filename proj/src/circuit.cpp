#include "glsim/circuit.hpp"

#include "glsim/interaction.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace glsim {

namespace {
void check_gate(const Gate& g, int n) {
    const auto k = g.targets.size();
    if (k != 1 && k != 2) throw InvalidArgument("gates act on one or two qubits");
    if (g.u.rows() != (Eigen::Index(1) << k) || g.u.cols() != g.u.rows())
        throw InvalidArgument("matrix size does not match target count");
    for (int q : g.targets)
        if (q < 0 || q >= n) throw InvalidArgument("target " + std::to_string(q) + " out of range");
    if (k == 2 && std::abs(g.targets[0] - g.targets[1]) != 1)
        throw InvalidArgument("two-qubit gates must act on adjacent qubits");
    const Matrix id = Matrix::Identity(g.u.rows(), g.u.cols());
    if ((g.u.adjoint() * g.u - id).cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("matrix is not unitary");
}
}  // namespace

void QuantumCircuit::validate() const {
    if (n < 1) throw InvalidArgument("circuit: need at least one data qubit");
    if (gates.empty()) throw InvalidArgument("circuit: need at least one gate");
    for (std::size_t t = 0; t < gates.size(); ++t) {
        try {
            check_gate(gates[t], n);
        } catch (const InvalidArgument& e) {
            throw InvalidArgument("gate " + std::to_string(t + 1) + " (" + gates[t].name + "): " + e.what());
        }
    }
}

std::vector<int> QuantumCircuit::first_touch() const {
    std::vector<int> out(n, 0);
    for (int t = T(); t >= 1; --t)
        for (int q : gates[t - 1].targets) out[q] = t;
    return out;
}

Matrix QuantumCircuit::gate_matrix(int t) const {
    if (t < 1 || t > T()) throw InvalidArgument("gate index out of range");
    return embed(gates[t - 1].u, gates[t - 1].targets, n);
}

Matrix QuantumCircuit::prefix(int t) const {
    if (t < 0 || t > T()) throw InvalidArgument("prefix index out of range");
    const Eigen::Index d = Eigen::Index(1) << n;
    Matrix u = Matrix::Identity(d, d);
    for (int s = 1; s <= t; ++s) u = gate_matrix(s) * u;
    return u;
}

namespace {
bool parse_angle(const std::string& name, const std::string& head, double& angle) {
    if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return false;
    const std::string arg = name.substr(head.size() + 1, name.size() - head.size() - 2);
    std::size_t used = 0;
    angle = std::stod(arg, &used);
    if (used != arg.size()) throw InvalidArgument("bad angle in '" + name + "'");
    return true;
}
}  // namespace

Matrix named_gate(const std::string& name) {
    double a = 0;
    if (name == "I") return Matrix::Identity(2, 2);
    if (name == "X") return pauli(1);
    if (name == "Y") return pauli(2);
    if (name == "Z") return pauli(3);
    if (name == "H") return (pauli(1) + pauli(3)) / std::sqrt(2.0);
    if (name == "S") {
        Matrix m = Matrix::Identity(2, 2);
        m(1, 1) = I_UNIT;
        return m;
    }
    if (name == "T") {
        Matrix m = Matrix::Identity(2, 2);
        m(1, 1) = std::exp(I_UNIT * (std::numbers::pi / 4.0));
        return m;
    }
    if (name == "CNOT" || name == "CZ" || name == "SWAP") {
        Matrix m = Matrix::Zero(4, 4);
        if (name == "CNOT") {
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
        } else if (name == "CZ") {
            m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
            m(3, 3) = -1.0;
        } else {
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
        }
        return m;
    }
    try {
        if (parse_angle(name, "RZ", a)) {
            Matrix m = Matrix::Zero(2, 2);
            m(0, 0) = std::exp(-0.5 * I_UNIT * a);
            m(1, 1) = std::exp(0.5 * I_UNIT * a);
            return m;
        }
        if (parse_angle(name, "RX", a))
            return std::cos(0.5 * a) * Matrix(Matrix::Identity(2, 2)) - I_UNIT * std::sin(0.5 * a) * pauli(1);
    } catch (const std::logic_error&) {
        throw InvalidArgument("bad angle in '" + name + "'");
    }
    throw InvalidArgument("unknown gate '" + name + "'");
}

QuantumCircuit parse_circuit(const std::string& text) {
    QuantumCircuit c;
    std::map<std::string, Matrix> defs;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    auto fail = [&](const std::string& msg) { throw InvalidArgument("line " + std::to_string(line) + ": " + msg); };
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(strip_comment(raw));
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "qubits") {
            if (c.n != 0) fail("duplicate 'qubits'");
            if (!(ls >> c.n) || c.n <= 0) fail("expected positive qubit count");
        } else if (kw == "define") {
            std::string name;
            int k = 0;
            if (!(ls >> name >> k) || (k != 1 && k != 2)) fail("expected 'define <NAME> <1|2>'");
            const int dim = 1 << k;
            Matrix m(dim, dim);
            for (int r = 0; r < dim; ++r) {
                if (!std::getline(in, raw)) fail("unexpected end of file inside definition");
                ++line;
                std::istringstream rs(strip_comment(raw));
                std::string tok;
                int col = 0;
                while (rs >> tok) {
                    if (col >= dim) fail("too many entries in row");
                    m(r, col++) = parse_entry(tok, line);
                }
                if (col != dim) fail("row has " + std::to_string(col) + " entries, expected " + std::to_string(dim));
            }
            defs[name] = m;
        } else {
            if (c.n == 0) fail("'qubits' must come first");
            int time = 0;
            std::size_t used = 0;
            try {
                time = std::stoi(kw, &used);
            } catch (const std::logic_error&) {
                used = 0;
            }
            if (used == 0 || used != kw.size()) fail("expected a time index or directive, got '" + kw + "'");
            if (time != c.T() + 1) fail("time indices must run 1, 2, ... (got " + std::to_string(time) + ")");
            Gate g;
            if (!(ls >> g.name)) fail("missing gate name");
            int q = 0;
            while (ls >> q) g.targets.push_back(q);
            if (!ls.eof()) fail("bad target list");
            if (auto it = defs.find(g.name); it != defs.end()) {
                g.u = it->second;
            } else {
                try {
                    g.u = named_gate(g.name);
                } catch (const InvalidArgument& e) {
                    fail(e.what());
                }
            }
            try {
                check_gate(g, c.n);
            } catch (const InvalidArgument& e) {
                fail(g.name + ": " + e.what());
            }
            c.gates.push_back(std::move(g));
        }
    }
    if (c.n == 0) throw InvalidArgument("circuit has no 'qubits' directive");
    c.validate();
    return c;
}

QuantumCircuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open circuit file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str());
}

QuantumCircuit random_circuit(int n, int T, std::uint64_t seed) {
    if (n < 1 || T < 1) throw InvalidArgument("random_circuit: need n >= 1 and T >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n > 1 ? 3 : 2);
    std::uniform_int_distribution<int> site(0, n - 1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    QuantumCircuit c;
    c.n = n;
    for (int t = 0; t < T; ++t) {
        Gate g;
        switch (pick(rng)) {
            case 0: g.name = "X"; break;
            case 1: g.name = "H"; break;
            case 2: {
                std::ostringstream os;
                os.precision(17);
                os << "RZ(" << angle(rng) << ")";
                g.name = os.str();
                break;
            }
            default: g.name = "CNOT";
        }
        g.u = named_gate(g.name);
        if (g.name == "CNOT") {
            const int a = std::uniform_int_distribution<int>(0, n - 2)(rng);
            g.targets = rng() % 2 ? std::vector<int>{a, a + 1} : std::vector<int>{a + 1, a};
        } else {
            g.targets = {site(rng)};
        }
        c.gates.push_back(std::move(g));
    }
    c.validate();
    return c;
}

}  // namespace glsim
