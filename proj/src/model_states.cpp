#include "sptwire/model_states.hpp"

namespace sptwire {

double OnsiteSymmetry::linearity_defect() const {
    double worst = 0;
    for (int g = 0; g < group.size(); ++g)
        for (int h = 0; h < group.size(); ++h)
            worst = std::max(worst, (at(g) * at(h) - at(group.add(g, h))).norm());
    return worst;
}

double OnsiteSymmetry::commutation_defect() const {
    double worst = 0;
    for (int g = 0; g < group.size(); ++g)
        for (int h = 0; h < group.size(); ++h)
            worst = std::max(worst, (at(g) * at(h) - at(h) * at(g)).norm());
    return worst;
}

WireState aklt_mps(int n_sites) {
    const double s = 1.0 / std::sqrt(3.0);
    std::vector<Matrix> bulk{s * pauli_x(), s * pauli_y(), s * pauli_z()};
    Mps psi = Mps::uniform(3, std::move(bulk), n_sites, Mps::Gauge::right_canonical);

    FiniteAbelianGroup g({2, 2});
    auto rot = [](int a, int b, int c) {
        Matrix m = Matrix::Zero(3, 3);
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = c;
        return m;
    };
    // Flat order {1, x, y, z}: u(alpha)|beta> = +|beta> iff alpha == beta.
    OnsiteSymmetry sym{g, {Matrix::Identity(3, 3), rot(1, -1, -1), rot(-1, 1, -1), rot(-1, -1, 1)}};
    return {std::move(psi), std::move(sym)};
}

namespace {

/// Single-qudit cluster tensor B[s]_{b,a} = delta_{b,s} zeta^{s a} / sqrt(d).
std::vector<Matrix> qudit_chain_tensor(int d) {
    std::vector<Matrix> b(static_cast<std::size_t>(d), Matrix::Zero(d, d));
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int s = 0; s < d; ++s)
        for (int a = 0; a < d; ++a)
            b[static_cast<std::size_t>(s)](s, a) =
                norm * std::polar(1.0, 2.0 * kPi * (static_cast<double>(s) * a) / d);
    return b;
}

/// Blocked 2-qudit site tensor A[(s,t)] = B[t] B[s]; site index k = s*d + t.
std::vector<Matrix> blocked_cluster_tensor(int d) {
    auto b = qudit_chain_tensor(d);
    std::vector<Matrix> site;
    site.reserve(static_cast<std::size_t>(d) * d);
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t)
            site.push_back(b[static_cast<std::size_t>(t)] * b[static_cast<std::size_t>(s)]);
    return site;
}

Vector qudit_left_boundary(int d) {
    Vector l = Vector::Zero(d);
    l(0) = 1;
    return l;
}

Vector qudit_right_boundary(int d) {
    return Vector::Constant(d, cxd(1.0 / std::sqrt(static_cast<double>(d)), 0));
}

}  // namespace

WireState cluster1d_mps(int n_sites) { return qudit_cluster_mps(2, n_sites); }

WireState qudit_cluster_mps(int d, int n_sites) {
    require(d >= 2, "qudit_cluster_mps: d must be >= 2");
    Mps psi = Mps::uniform(d * d, blocked_cluster_tensor(d), n_sites, qudit_left_boundary(d),
                           qudit_right_boundary(d), Mps::Gauge::right_canonical);

    FiniteAbelianGroup g({d, d});
    Matrix x = clock_shift_x(d);
    Matrix z2 = clock_z(d) * clock_z(d);
    Matrix g1 = kron(x, z2);  // product over odd-sublattice stabilizers
    Matrix g2 = kron(z2, x);  // product over even-sublattice stabilizers
    std::vector<Matrix> u;
    u.reserve(static_cast<std::size_t>(g.size()));
    for (int e = 0; e < g.size(); ++e) {
        auto t = g.tuple(e);
        Matrix m = Matrix::Identity(d * d, d * d);
        for (int k = 0; k < t[0]; ++k) m = m * g1;
        for (int k = 0; k < t[1]; ++k) m = m * g2;
        u.push_back(std::move(m));
    }
    return {std::move(psi), OnsiteSymmetry{g, std::move(u)}};
}

WireState cluster_ladder_mps(int n, int n_sites) {
    require(n >= 1 && n <= 2, "cluster_ladder_mps: N in {1, 2}");
    const int rows = 2 * n;
    const int site_qubits = 2 * rows;
    const int d_site = 1 << site_qubits;
    const int d_bond = 1 << rows;

    auto row_site = blocked_cluster_tensor(2);  // per-row blocked tensor, index s*2 + t

    // Site qubits ordered [col0 row0..row_{R-1}, col1 row0..row_{R-1}], MSB
    // first; bond space is the tensor product over rows.
    std::vector<Matrix> site;
    site.reserve(static_cast<std::size_t>(d_site));
    for (int k = 0; k < d_site; ++k) {
        std::vector<Matrix> factors;
        factors.reserve(static_cast<std::size_t>(rows));
        for (int r = 0; r < rows; ++r) {
            int s = (k >> (site_qubits - 1 - r)) & 1;
            int t = (k >> (rows - 1 - r)) & 1;
            factors.push_back(row_site[static_cast<std::size_t>(s * 2 + t)]);
        }
        site.push_back(kron_all(factors));
    }

    Vector left = Vector::Zero(d_bond);
    left(0) = 1;
    Vector right = Vector::Constant(d_bond, cxd(std::pow(2.0, -rows / 2.0), 0));
    Mps psi = Mps::uniform(d_site, std::move(site), n_sites, left, right,
                           Mps::Gauge::right_canonical);

    FiniteAbelianGroup g(std::vector<int>(static_cast<std::size_t>(site_qubits), 2));
    std::vector<Matrix> u;
    u.reserve(static_cast<std::size_t>(g.size()));
    Matrix x = pauli_x(), id2 = Matrix::Identity(2, 2);
    for (int e = 0; e < g.size(); ++e) {
        std::vector<Matrix> factors;
        for (int q = 0; q < site_qubits; ++q)
            factors.push_back(((e >> (site_qubits - 1 - q)) & 1) ? x : id2);
        u.push_back(kron_all(factors));
    }
    return {std::move(psi), OnsiteSymmetry{g, std::move(u)}};
}

ProtectedBase aklt_protected_base() {
    WireState base = aklt_mps();
    ProjectiveRep pauli{base.sym.group, 2,
                        {Matrix::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()}};
    const cxd a(1.0 / std::sqrt(3.0), 0);
    return ProtectedBase{base.sym, std::move(pauli),
                         {pauli_x(), pauli_y(), pauli_z()}, {a, a, a}};
}

Mps product_wire_state(const std::vector<Matrix>& byproducts, const std::vector<Matrix>& junk,
                       int n_sites) {
    require(byproducts.size() == junk.size(), "product_wire_state: count mismatch");
    std::vector<Matrix> bulk;
    bulk.reserve(byproducts.size());
    for (std::size_t i = 0; i < byproducts.size(); ++i) bulk.push_back(kron(byproducts[i], junk[i]));
    Mps raw = Mps::uniform(static_cast<int>(bulk.size()), std::move(bulk), n_sites);
    return canonicalize(raw);
}

PerturbedState perturbed_family(const ProtectedBase& base, double epsilon, int junk_dim,
                                std::uint64_t seed, int n_sites) {
    require(junk_dim >= 1, "perturbed_family: junk_dim must be >= 1");
    const int d = static_cast<int>(base.byproducts.size());
    const int d_prot = static_cast<int>(base.byproducts[0].rows());
    const int d_total = d_prot * junk_dim;

    for (std::uint64_t salt = 0; salt < 5; ++salt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + salt + 1);
        std::vector<Matrix> junk;
        junk.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            Matrix j = base.junk_scalars[static_cast<std::size_t>(i)] *
                       Matrix::Identity(junk_dim, junk_dim);
            if (epsilon > 0) j += epsilon * random_gaussian(junk_dim, junk_dim, rng);
            junk.push_back(std::move(j));
        }
        Matrix hide = (epsilon == 0 && junk_dim == 1) ? Matrix(Matrix::Identity(d_total, d_total))
                                                      : random_unitary(d_total, rng);

        Mps canonical = [&]() -> Mps {
            std::vector<Matrix> bulk;
            bulk.reserve(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                bulk.push_back(kron(base.byproducts[static_cast<std::size_t>(i)],
                                    junk[static_cast<std::size_t>(i)]));
            return canonicalize(Mps::uniform(d, std::move(bulk), n_sites));
        }();
        auto report = injectivity_check(canonical);
        if (!report.injective) continue;  // degenerate draw, redraw

        Mps hidden = gauge_transform(canonical, hide);
        ProjectiveRep v{base.sym.group, d_total, {}};
        for (int g = 0; g < base.sym.group.size(); ++g)
            v.mats.push_back(hide * kron(base.v.at(g), Matrix::Identity(junk_dim, junk_dim)) *
                             hide.adjoint());
        return PerturbedState{std::move(hidden), std::move(hide), std::move(v), base.sym,
                              base.byproducts};
    }
    throw std::runtime_error("perturbed_family: no injective draw after 5 attempts");
}

}  // namespace sptwire
