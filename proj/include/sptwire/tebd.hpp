#pragma once

#include "sptwire/model_states.hpp"
#include "sptwire/mps.hpp"
#include "sptwire/types.hpp"

#include <vector>

namespace sptwire {

/// Two-site Hamiltonian families whose ground states trace paths through the
/// phases under study. Both commute with the corresponding on-site symmetry
/// bond by bond.
struct HamiltonianSpec {
    enum class Family { bilinear_biquadratic, cluster_field };

    Family family = Family::bilinear_biquadratic;
    double param = 0;  // biquadratic coefficient b, or transverse field h

    int site_dim() const;
    /// Bulk two-site term on C^d (x) C^d, basis index k_left * d + k_right.
    /// On-site pieces (transverse field) are attached to the left site; the
    /// final bond additionally absorbs the last site's field.
    Matrix bond_term(int bond, int n_sites) const;
    OnsiteSymmetry symmetry() const;
    /// Seed for the imaginary-time evolution: the exact reference state of
    /// the phase (cluster or AKLT). A symmetric product seed would project
    /// onto the reflection-degenerate edge multiplet and converge to a
    /// long-range-entangled superposition with a non-injective bulk; seeding
    /// inside one edge sector keeps the evolved state injective.
    Mps initial_state(int n_sites) const;
};

struct TebdSchedule {
    std::vector<double> dts{0.1, 0.01, 0.001};
    int max_sweeps_per_dt = 500;
    double conv_tol = 1e-9;    // energy change per sweep
    double sv_rel_cutoff = 1e-12;
};

struct TebdLogRow {
    int sweep = 0;
    double dt = 0;
    double energy = 0;
    double delta = 0;
    double max_truncation = 0;  // discarded weight, worst bond of the sweep
};

struct TebdResult {
    Mps state;  // right-canonical
    double energy = 0;
    bool converged = false;
    std::vector<TebdLogRow> log;
};

/// Imaginary-time second-order Trotter evolution with singular-value
/// truncation, run per time step until the energy change per sweep drops
/// below the tolerance.
TebdResult tebd_ground(const HamiltonianSpec& spec, int n_sites, int chi_max,
                       const TebdSchedule& schedule = {});

}  // namespace sptwire
