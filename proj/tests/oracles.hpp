#pragma once

// Brute-force reference implementations used by the test suites. Everything
// here is computed independently of the library code paths it checks.

#include "sptwire/abelian_group.hpp"
#include "sptwire/linalg.hpp"
#include "sptwire/types.hpp"

#include <vector>

namespace oracles {

using namespace sptwire;

/// Statevector of CZ-entangled qudits: |+>^M followed by a phase
/// zeta^{s_i s_j} per edge (zeta = exp(2 pi i / d)). Qubit 0 owns the most
/// significant digit.
Vector cz_graph_state(int d, int n_qudits, const std::vector<std::pair<int, int>>& edges);

/// Edge list of an open 1-D chain of m qudits.
std::vector<std::pair<int, int>> chain_edges(int m);

/// Apply a single-qudit unitary to qudit q of a statevector (MSB-first digits).
Vector apply_site(const Vector& psi, int d, int n, int q, const Matrix& u);

/// Pauli projective representation of Z2 x Z2 ({I, sx, sy, sz}), element
/// order (0,0),(0,1),(1,0),(1,1) -> I, sz, sx, sy... indexed to match the
/// group's flat order; see the definition for the exact assignment.
std::vector<Matrix> pauli_rep_matrices();

/// First violated cocycle triple, or (-1,-1,-1) when the table is a cocycle.
std::array<int, 3> find_cocycle_violation(const FactorSystem& omega);

/// Ground energy of sum_t h2(t, t+1) on an open chain of n sites with local
/// dimension d, by Lanczos on a matrix-free operator. h2 acts on
/// C^d (x) C^d with two-site basis index k_left * d + k_right.
double ed_ground_energy(const Matrix& h2, int d, int n, int iters = 200);

}  // namespace oracles
