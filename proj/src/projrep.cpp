#include "sptwire/projrep.hpp"

namespace sptwire {

double ProjectiveRep::unitarity_residual() const {
    double worst = 0;
    for (const auto& m : mats) worst = std::max(worst, unitarity_defect(m));
    return worst;
}

double ProjectiveRep::cocycle_residual(const FactorSystem& omega) const {
    double worst = 0;
    for (int g = 0; g < group.size(); ++g)
        for (int h = 0; h < group.size(); ++h)
            worst = std::max(
                worst, (at(g) * at(h) - omega.at(g, h).value() * at(group.add(g, h))).norm());
    return worst;
}

double ProjectiveRep::irreducibility_index() const {
    double s = 0;
    for (const auto& m : mats) s += std::norm(m.trace());
    return s / group.size();
}

ProjectiveRep heisenberg_rep(const FiniteAbelianGroup& h) {
    FiniteAbelianGroup g = direct_product(h, h);
    const int d = h.size();
    ProjectiveRep rep{g, d, {}};
    rep.mats.reserve(g.size());
    const int k = h.rank();
    for (int p = 0; p < g.size(); ++p) {
        auto pt = g.tuple(p);
        std::vector<int> a(pt.begin(), pt.begin() + k);
        std::vector<int> x(pt.begin() + k, pt.end());
        const int ai = h.index(a);
        Character chi(h, x);
        Matrix m = Matrix::Zero(d, d);
        for (int b = 0; b < d; ++b) m(h.add(ai, b), b) = chi.eval(b).value();
        rep.mats.push_back(std::move(m));
    }
    return rep;
}

FactorSystem rep_factor_system(const ProjectiveRep& v, double tol) {
    const auto& grp = v.group;
    FactorSystem omega(grp);
    // Cocycle values may have order beyond exponent(G) (the Pauli omega on
    // Z2 x Z2 contains i), but 2|G| covers every case in scope.
    const std::int64_t max_order = 2 * static_cast<std::int64_t>(grp.size());
    for (int g = 0; g < grp.size(); ++g)
        for (int h = 0; h < grp.size(); ++h) {
            cxd w = (v.at(g) * v.at(h) * v.at(grp.add(g, h)).adjoint()).trace() /
                    static_cast<double>(v.dim);
            ensure(std::abs(std::abs(w) - 1.0) < tol,
                   "rep_factor_system: not projective (|omega| != 1)");
            double defect = 0;
            omega.set(g, h, round_phase(w, max_order, &defect));
            ensure(defect < tol, "rep_factor_system: phase is not a root of unity in range");
        }
    ensure(v.cocycle_residual(omega) <= tol * v.dim,
           "rep_factor_system: Eq.-(5) residual exceeds tolerance");
    return omega;
}

CommutatorForm rep_commutator_form(const ProjectiveRep& v, double* defect) {
    const auto& grp = v.group;
    CommutatorForm kappa(grp);
    double worst = 0;
    for (int g = 0; g < grp.size(); ++g)
        for (int h = 0; h < grp.size(); ++h) {
            cxd w = (v.at(g) * v.at(h) * v.at(g).adjoint() * v.at(h).adjoint()).trace() /
                    static_cast<double>(v.dim);
            const std::int64_t q = std::gcd(grp.order_of(g), grp.order_of(h));
            double d = 0;
            kappa.set(g, h, round_phase(w, q, &d));
            worst = std::max(worst, d);
        }
    if (defect) *defect = worst;
    ensure(kappa.is_bicharacter(), "rep_commutator_form: rounded table is not a bicharacter");
    return kappa;
}

NormalizedRep gauge_normalize(const ProjectiveRep& v, const CommutatorForm& kappa,
                              const SymplecticBasis& basis) {
    const auto& grp = v.group;
    const int d = v.dim;
    const int r = static_cast<int>(basis.e.size());

    // Rescale generator images so V(gen)^n = I, principal root.
    auto normalize_gen = [&](int gen, int n) {
        Matrix m = v.at(gen);
        Matrix p = Matrix::Identity(d, d);
        for (int k = 0; k < n; ++k) p = p * m;
        cxd c = p.trace() / static_cast<double>(d);
        ensure((p - c * Matrix::Identity(d, d)).norm() < 1e-6 * d,
               "gauge_normalize: generator power is not scalar (rep not isotypic)");
        ensure(std::abs(std::abs(c) - 1.0) < 1e-6, "gauge_normalize: generator power not unitary");
        c /= std::abs(c);
        return Matrix(principal_root(std::conj(c), n) * m);
    };

    std::vector<Matrix> egen(r), fgen(r);
    for (int j = 0; j < r; ++j) {
        egen[j] = normalize_gen(basis.e[j], basis.pair_orders[j]);
        fgen[j] = normalize_gen(basis.f[j], basis.pair_orders[j]);
    }

    NormalizedRep out{ProjectiveRep{grp, d, {}}, normal_form_cocycle(grp, kappa, basis), kappa,
                      basis};
    out.rep.mats.resize(grp.size());
    for (int g = 0; g < grp.size(); ++g) {
        auto c = symplectic_coords(kappa, basis, g);
        Matrix m = Matrix::Identity(d, d);
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < c.a[j]; ++k) m = m * egen[j];
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < c.b[j]; ++k) m = m * fgen[j];
        out.rep.mats[g] = std::move(m);
    }
    return out;
}

NormalizedRep gauge_normalize(const ProjectiveRep& v) {
    CommutatorForm kappa = rep_commutator_form(v);
    return gauge_normalize(v, kappa, symplectic_basis(kappa));
}

double lemma1_check(const ProjectiveRep& v, const Character& chi, int h_chi_elem) {
    double worst = 0;
    const Matrix& vh = v.at(h_chi_elem);
    for (int g = 0; g < v.group.size(); ++g)
        worst = std::max(worst, (vh * v.at(g) - chi.eval(g).value() * v.at(g) * vh).norm());
    return worst;
}

}  // namespace sptwire
