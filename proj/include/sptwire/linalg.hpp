#pragma once

#include "sptwire/types.hpp"

#include <random>
#include <vector>

namespace sptwire {

/// Kronecker product a (x) b.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix kron_all(const std::vector<Matrix>& factors);

/// Unitary polar factor U of m = U P (P positive semidefinite), via SVD.
Matrix polar_unitary(const Matrix& m);

/// ||m - unitary||: distance of m from its own polar factor.
double unitarity_defect(const Matrix& m);

/// min over unit phases of ||a - e^{i phi} b||_F, and the minimiser if wanted.
double phase_adjusted_distance(const Matrix& a, const Matrix& b, cxd* best_phase = nullptr);

/// Rescale so the first entry (row-major scan) with |entry| > tol is positive real.
Matrix fix_phase_convention(const Matrix& m, double tol = 1e-8);
Vector fix_phase_convention(const Vector& v, double tol = 1e-8);

/// exp(scale * h) for Hermitian h, via eigendecomposition.
Matrix hermitian_exp(const Matrix& h, double scale);

/// Seeded complex matrix with iid standard-normal real/imag parts.
Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

/// Seeded Haar-ish unitary (QR of a Gaussian with phase-fixed R diagonal).
Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng);

/// Seeded random density matrix (normalised g g^dagger).
Matrix random_density(Eigen::Index n, std::mt19937_64& rng);

/// Schmidt rank of a vector on C^{da} (x) C^{db} (da the slower index).
int schmidt_rank(const Vector& v, Eigen::Index da, Eigen::Index db, double rel_tol = 1e-10);

/// Principal n-th root of a unit-modulus scalar c: the root of c with the
/// smallest non-negative argument. Tie-broken deterministically.
cxd principal_root(cxd c, int n);

// Pauli matrices.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Generalised shift X |b> = |b+1 mod d>.
Matrix clock_shift_x(int d);
/// Generalised clock Z |b> = exp(2 pi i b / d) |b>.
Matrix clock_z(int d);

}  // namespace sptwire
