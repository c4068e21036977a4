#pragma once

#include "sptwire/linalg.hpp"
#include "sptwire/types.hpp"

#include <optional>
#include <vector>

namespace sptwire {

/// Matrix-product state  |Psi> = sum <R| A_N[k_N] ... A_1[k_1] |L> |k_1..k_N>.
/// Site tensor A_t[k] maps the bond space on its left to the one on its
/// right (a D_t x D_{t-1} matrix), so a measurement with outcome |psi>
/// evolves a correlation vector as |v> -> A[psi] |v>. A uniform bulk stores
/// one tensor with an explicit length.
class Mps {
public:
    enum class Gauge { none, right_canonical, left_canonical };

    static Mps uniform(int site_dim, std::vector<Matrix> bulk, int length, Vector left,
                       Vector right, Gauge gauge = Gauge::none);
    /// Uniform with the default boundary choice (leading right singular
    /// vector of sum_k A[k], phase-fixed).
    static Mps uniform(int site_dim, std::vector<Matrix> bulk, int length,
                       Gauge gauge = Gauge::none);
    static Mps finite(int site_dim, std::vector<std::vector<Matrix>> tensors, Vector left,
                      Vector right, Gauge gauge = Gauge::none);

    int site_dim() const { return site_dim_; }
    int length() const { return length_; }
    bool is_uniform() const { return uniform_; }
    Gauge gauge() const { return gauge_; }

    /// Site tensors, 0-based; returns the bulk for a uniform state.
    const std::vector<Matrix>& site(int t) const;
    const std::vector<Matrix>& bulk() const;

    int bond_in(int t) const { return static_cast<int>(site(t)[0].cols()); }
    int bond_out(int t) const { return static_cast<int>(site(t)[0].rows()); }
    int max_bond() const;

    const Vector& left() const { return left_; }
    const Vector& right() const { return right_; }

    /// A[psi] = sum_k A[k] <psi|k> at site t.
    Matrix contracted(int t, const Vector& psi) const;

    /// max_t || sum_k A_t[k] A_t[k]^dagger - I ||.
    double right_canonical_defect() const;

private:
    int site_dim_ = 0;
    bool uniform_ = false;
    int length_ = 0;
    std::vector<std::vector<Matrix>> tensors_;
    Vector left_, right_;
    Gauge gauge_ = Gauge::none;
};

/// Completely positive transfer map E(X) = sum_k A[k] X A[k]^dagger for a
/// square bulk tensor, optionally twisted by an on-site unitary:
/// E_u(X) = sum_{k,j} u_{kj} A[j] X A[k]^dagger.
class TransferOperator {
public:
    explicit TransferOperator(std::vector<Matrix> bulk, std::optional<Matrix> twist = {});

    int bond_dim() const { return d_bond_; }
    Matrix apply(const Matrix& x) const;
    /// Dense superoperator on vec(X), column-major.
    Matrix dense() const;

private:
    std::vector<Matrix> bulk_;
    std::optional<Matrix> twist_;
    int d_bond_ = 0;
};

struct EigPair {
    cxd value;
    Matrix fixed_point;  // devectorised eigenvector, unit Frobenius norm
};

/// Eigenvalues of largest modulus with their fixed points, sorted by modulus
/// (deterministic tie-breaking). Dense solve for bond dimension <= 64,
/// orthogonal iteration beyond (residual-checked).
std::vector<EigPair> leading_eigs(const TransferOperator& op, int count);

struct InjectivityReport {
    bool injective = false;
    double gap = 0;           // lambda_1 - |lambda_2| after normalisation
    double fixed_point_rank_ratio = 0;  // smallest/largest eigenvalue of the fixed point
};

/// A uniform bulk is injective when the leading transfer eigenvalue is
/// simple with gap > tol_gap and the leading fixed point has full rank.
InjectivityReport injectivity_check(const Mps& psi, double tol_gap = 1e-6);

/// For a uniform bulk whose transfer operator has a (near-)degenerate
/// leading eigenvalue (a superposition over decoupled sectors), extract one
/// invariant block: a spectral projector of a Hermitian fixed-point
/// combination that the site tensors leave invariant. `cluster_tol` decides
/// which eigenvalues count as part of the unit cluster; `invariance_tol`
/// bounds the accepted invariance residual. Returns the restricted uniform
/// state (default boundaries), or nullopt when no invariant block verifies.
std::optional<Mps> injective_block(const Mps& psi, double invariance_tol = 1e-8,
                                   double cluster_tol = 1e-8);

/// Gauge-equivalent state with the requested canonical property. The
/// physical state is preserved exactly (up to overall scale for uniform
/// input, where the transfer operator is also normalised to spectral
/// radius 1).
Mps canonicalize(const Mps& psi, Mps::Gauge side = Mps::Gauge::right_canonical);

/// Exact contraction to a d^N statevector, index k_1 most significant.
Vector to_statevector(const Mps& psi);

/// A[k] -> W A[k] W^dagger with matching boundary rotation; W unitary.
Mps gauge_transform(const Mps& psi, const Matrix& w);

double norm(const Mps& psi);
cxd overlap(const Mps& a, const Mps& b);  // <a|b>, unnormalised

/// <psi| O_{t,t+1} |psi> / <psi|psi> for a two-site operator with basis
/// index k_t * d + k_{t+1}.
cxd expectation_two_site(const Mps& psi, int t, const Matrix& op);

/// Right environments E_t = sum_k A_t[k]^dagger E_{t+1} A_t[k] seeded with
/// E_{N+1} = |R><R|; environments[t] is E_{t+1} for 0-based site t, i.e.
/// environments[N] is the seed.
std::vector<Matrix> right_environments(const Mps& psi);

}  // namespace sptwire
