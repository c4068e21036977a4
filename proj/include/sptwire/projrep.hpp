#pragma once

#include "sptwire/abelian_group.hpp"
#include "sptwire/linalg.hpp"
#include "sptwire/types.hpp"

#include <vector>

namespace sptwire {

/// Family of unitaries V(g) with V(g) V(h) = omega(g,h) V(g+h).
struct ProjectiveRep {
    FiniteAbelianGroup group;
    int dim = 0;
    std::vector<Matrix> mats;  // indexed by flat group element

    const Matrix& at(int g) const { return mats[static_cast<std::size_t>(g)]; }

    /// Max unitarity defect over all elements.
    double unitarity_residual() const;

    /// Max over pairs of || V(g) V(h) - omega(g,h) V(g+h) ||.
    double cocycle_residual(const FactorSystem& omega) const;

    /// (1/|G|) sum_g |Tr V(g)|^2; equals 1 iff irreducible.
    double irreducibility_index() const;
};

/// The unique irreducible projective representation with the standard factor
/// system on G = H x H*: V(a,x) = X_a Z_x on C^{|H|} with X_a |b> = |a+b> and
/// Z_x |b> = x(b) |b>.
ProjectiveRep heisenberg_rep(const FiniteAbelianGroup& h);

/// Recover omega(g,h) = Tr(V(g) V(h) V(g+h)^dagger) / dim, rounded to an
/// exact root of unity. Throws if the matrices are not projective within
/// `tol` (Eq.-(5) residual and |omega| checks).
FactorSystem rep_factor_system(const ProjectiveRep& v, double tol = 1e-8);

/// Gauge-invariant commutator form directly from commutators
/// kappa(g,h) I = V(g) V(h) V(g)^dagger V(h)^dagger; works for any phase
/// gauge of the matrices. `defect` (if non-null) receives the max rounding
/// distance.
CommutatorForm rep_commutator_form(const ProjectiveRep& v, double* defect = nullptr);

/// A representation together with the exact cocycle its phase convention
/// realises.
struct NormalizedRep {
    ProjectiveRep rep;
    FactorSystem omega;     // exact; depends only on kappa and the basis
    CommutatorForm kappa;   // exact
    SymplecticBasis basis;
};

/// Fix the rephasing freedom: generator images are rescaled so
/// V(e_j)^{n_j} = V(f_j)^{n_j} = I (principal root), every other element is
/// the normal-form word V(g) = prod_j V(e_j)^{a_j} * prod_j V(f_j)^{b_j}.
/// Two representations with equal kappa get identical omega tables.
NormalizedRep gauge_normalize(const ProjectiveRep& v, const CommutatorForm& kappa,
                              const SymplecticBasis& basis);
NormalizedRep gauge_normalize(const ProjectiveRep& v);

/// max_g || V(h_chi) V(g) - chi(g) V(g) V(h_chi) ||.
double lemma1_check(const ProjectiveRep& v, const Character& chi, int h_chi_elem);

}  // namespace sptwire
