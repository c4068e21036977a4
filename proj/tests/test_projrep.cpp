#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sptwire/projrep.hpp"

#include <random>

using namespace sptwire;

namespace {

ProjectiveRep pauli_rep() {
    return ProjectiveRep{FiniteAbelianGroup({2, 2}), 2, oracles::pauli_rep_matrices()};
}

}  // namespace

TEST_CASE("heisenberg_rep(Z2) is the Pauli representation up to phase") {
    ProjectiveRep rep = heisenberg_rep(FiniteAbelianGroup({2}));
    REQUIRE(rep.dim == 2);
    // Flat order on Z2 x Z2*: (0,0), (0,1), (1,0), (1,1) -> I, Z, X, XZ.
    CHECK((rep.at(0) - Matrix::Identity(2, 2)).norm() < 1e-14);
    CHECK((rep.at(1) - pauli_z()).norm() < 1e-14);
    CHECK((rep.at(2) - pauli_x()).norm() < 1e-14);
    CHECK(phase_adjusted_distance(rep.at(3), pauli_y()) < 1e-14);
    CHECK(rep.unitarity_residual() < 1e-14);
}

TEST_CASE("heisenberg_rep(Z3): clock and shift, ninth powers scalar") {
    ProjectiveRep rep = heisenberg_rep(FiniteAbelianGroup({3}));
    REQUIRE(rep.dim == 3);
    CHECK((rep.at(rep.group.index({1, 0})) - clock_shift_x(3)).norm() < 1e-14);
    CHECK((rep.at(rep.group.index({0, 1})) - clock_z(3)).norm() < 1e-14);
    for (int g = 0; g < rep.group.size(); ++g) {
        Matrix p = Matrix::Identity(3, 3);
        for (int k = 0; k < 9; ++k) p = p * rep.at(g);
        CHECK((p - p(0, 0) * Matrix::Identity(3, 3)).norm() < 1e-12);
        CHECK(std::abs(std::abs(p(0, 0)) - 1.0) < 1e-12);
    }
}

TEST_CASE("heisenberg reps are irreducible with dimension sqrt(|G|)") {
    for (auto orders : {std::vector<int>{2}, {3}, {2, 2}}) {
        FiniteAbelianGroup h(orders);
        ProjectiveRep rep = heisenberg_rep(h);
        CHECK(rep.dim * rep.dim == rep.group.size());
        CHECK(rep.irreducibility_index() == doctest::Approx(1.0).epsilon(1e-12));
        for (int g = 1; g < rep.group.size(); ++g)
            CHECK(std::abs(rep.at(g).trace()) < 1e-12);
    }
}

TEST_CASE("rep_factor_system: Pauli, Heisenberg vs standard, identity rep") {
    FactorSystem pw = rep_factor_system(pauli_rep());
    CommutatorForm kp = commutator_form(pw);
    // kappa(x, z) = -1.
    CHECK(kp.at(1, 3) == PhaseFrac::of(1, 2));

    for (auto orders : {std::vector<int>{2}, {3}, {4}, {2, 2}}) {
        FiniteAbelianGroup h(orders);
        CHECK(rep_factor_system(heisenberg_rep(h)) == standard_cocycle(h));
    }

    FiniteAbelianGroup g({2, 2});
    ProjectiveRep ident{g, 3, std::vector<Matrix>(4, Matrix::Identity(3, 3))};
    FactorSystem triv = rep_factor_system(ident);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(triv.at(a, b).is_one());
}

TEST_CASE("rep_factor_system rejects non-projective input") {
    FiniteAbelianGroup g({2});
    std::mt19937_64 rng(3);
    ProjectiveRep bad{g, 2, {Matrix::Identity(2, 2), random_unitary(2, rng)}};
    CHECK_THROWS(rep_factor_system(bad));
}

TEST_CASE("gauge_normalize: Pauli and Heisenberg produce the same omega table") {
    NormalizedRep np = gauge_normalize(pauli_rep());
    NormalizedRep nh = gauge_normalize(heisenberg_rep(FiniteAbelianGroup({2})));
    CHECK(np.kappa == nh.kappa);
    CHECK(np.omega == nh.omega);
    CHECK(np.rep.cocycle_residual(np.omega) < 1e-12);
    CHECK(nh.rep.cocycle_residual(nh.omega) < 1e-12);
}

TEST_CASE("gauge_normalize is idempotent, bitwise") {
    NormalizedRep n1 = gauge_normalize(heisenberg_rep(FiniteAbelianGroup({3})));
    NormalizedRep n2 = gauge_normalize(n1.rep, n1.kappa, n1.basis);
    CHECK(n1.omega == n2.omega);
    for (int g = 0; g < n1.rep.group.size(); ++g)
        CHECK((n1.rep.at(g) - n2.rep.at(g)).norm() == 0.0);
}

TEST_CASE("gauge_normalize kills random rephasings up to per-generator roots") {
    ProjectiveRep base = heisenberg_rep(FiniteAbelianGroup({3}));
    NormalizedRep nb = gauge_normalize(base);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 50; ++trial) {
        ProjectiveRep re = base;
        for (auto& m : re.mats) m *= std::polar(1.0, angle(rng));
        NormalizedRep nr = gauge_normalize(re, nb.kappa, nb.basis);
        CHECK(nr.omega == nb.omega);
        for (int g = 0; g < base.group.size(); ++g)
            CHECK(phase_adjusted_distance(nr.rep.at(g), nb.rep.at(g)) < 1e-10);
    }
}

TEST_CASE("lemma1_check residuals") {
    SUBCASE("trivial character commutes") {
        ProjectiveRep rep = pauli_rep();
        Character triv(rep.group, {0, 0});
        CHECK(lemma1_check(rep, triv, 0) < 1e-14);
    }
    SUBCASE("all characters, Pauli rep") {
        ProjectiveRep rep = pauli_rep();
        CommutatorForm kappa = rep_commutator_form(rep);
        for (int c = 0; c < 4; ++c) {
            Character chi = Character::from_index(rep.group, c);
            CHECK(lemma1_check(rep, chi, h_chi(kappa, chi)) < 1e-12);
        }
    }
    SUBCASE("all characters, Heisenberg Z3") {
        ProjectiveRep rep = heisenberg_rep(FiniteAbelianGroup({3}));
        CommutatorForm kappa = rep_commutator_form(rep);
        for (int c = 0; c < 9; ++c) {
            Character chi = Character::from_index(rep.group, c);
            CHECK(lemma1_check(rep, chi, h_chi(kappa, chi)) < 1e-12);
        }
    }
}

TEST_CASE("commutant of an irreducible Heisenberg rep is scalar") {
    ProjectiveRep rep = heisenberg_rep(FiniteAbelianGroup({2, 2}));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix x = random_gaussian(rep.dim, rep.dim, rng);
        Matrix avg = Matrix::Zero(rep.dim, rep.dim);
        for (int g = 0; g < rep.group.size(); ++g)
            avg += rep.at(g) * x * rep.at(g).adjoint();
        avg /= static_cast<double>(rep.group.size());
        // Group averaging projects onto the commutant; for an irrep that is
        // the scalars.
        cxd s = avg.trace() / static_cast<double>(rep.dim);
        CHECK((avg - s * Matrix::Identity(rep.dim, rep.dim)).norm() < 1e-10);
    }
}
