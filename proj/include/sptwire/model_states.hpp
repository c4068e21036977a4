#pragma once

#include "sptwire/abelian_group.hpp"
#include "sptwire/mps.hpp"
#include "sptwire/projrep.hpp"
#include "sptwire/types.hpp"

#include <cstdint>
#include <vector>

namespace sptwire {

/// On-site linear unitary representation u(g) of a finite abelian group
/// (any one-dimensional beta(g) already absorbed, so u(g) u(h) = u(g+h)
/// holds exactly).
struct OnsiteSymmetry {
    FiniteAbelianGroup group;
    std::vector<Matrix> u;

    const Matrix& at(int g) const { return u[static_cast<std::size_t>(g)]; }
    /// max over pairs of || u(g) u(h) - u(g+h) ||.
    double linearity_defect() const;
    /// max over pairs of || [u(g), u(h)] ||.
    double commutation_defect() const;
};

struct WireState {
    Mps mps;
    OnsiteSymmetry sym;
};

/// Spin-1 AKLT chain in the { |x>, |y>, |z> } basis: A[alpha] = sigma_alpha /
/// sqrt(3), with the Z2 x Z2 pi-rotation symmetry diagonal in that basis.
/// Flat group order is {1, x, y, z}.
WireState aklt_mps(int n_sites = 8);

/// 1-D cluster state with pairs of qubits blocked into sites (d = 4, D = 2),
/// built by exact contraction of the CZ circuit. The Z2 x Z2 symmetry acts as
/// {I, X (x) I, I (x) X, X (x) X} per site.
WireState cluster1d_mps(int n_sites = 8);

/// Qudit cluster state, blocked 2-qudit sites (site dim d^2, D = d). The
/// Z_d x Z_d generators carry the Z^2 dressing required to act on-site:
/// u(1,0) = X (x) Z^2, u(0,1) = Z^2 (x) X (trivial dressing at d = 2).
WireState qudit_cluster_mps(int d, int n_sites = 6);

/// Quasi-1D cluster ladder: 2N rows with vertical couplings arranged as N
/// period-2 vertical rings, so each vertical CZ pair cancels (CZ^2 = I) and
/// the rows decouple into independent chains; a site is a pair of adjacent
/// columns over all rows (dim 2^{4N}, D = 2^{2N}). The symmetry group
/// (Z2 x Z2)^{2N} is generated by single-qubit X patterns per (row, column
/// parity); site qubits are ordered column-major (col 0 rows top-down, then
/// col 1).
WireState cluster_ladder_mps(int n, int n_sites = 6);

/// A reference wire whose correlation space is fully protected: measurement
/// basis outcomes i carry byproducts B_i and scalar junk factors.
struct ProtectedBase {
    OnsiteSymmetry sym;
    ProjectiveRep v;                 // correlation-space rep (dim = d_prot)
    std::vector<Matrix> byproducts;  // per outcome, d_prot x d_prot unitary
    std::vector<cxd> junk_scalars;   // per outcome (1x1 junk of the base)
};

ProtectedBase aklt_protected_base();

struct PerturbedState {
    Mps state;                       // right-canonical, hidden by the gauge
    Matrix gauge;                    // the hiding unitary (ground truth)
    ProjectiveRep v;                 // V(g) the state satisfies (ground truth)
    OnsiteSymmetry sym;
    std::vector<Matrix> byproducts;  // ground truth (= base byproducts)
};

/// Generic in-phase state A[i] = B_i (x) (a_i I_m + eps R_i) with a seeded
/// random junk perturbation, re-canonicalised and hidden behind a seeded
/// random gauge. Deterministic given the seed; degenerate draws are redrawn.
PerturbedState perturbed_family(const ProtectedBase& base, double epsilon, int junk_dim,
                                std::uint64_t seed, int n_sites = 8);

/// A[i] = B_i (x) junk[i] for explicit junk tensors, canonicalised; used for
/// the junk-freedom property tests.
Mps product_wire_state(const std::vector<Matrix>& byproducts, const std::vector<Matrix>& junk,
                       int n_sites = 8);

}  // namespace sptwire
