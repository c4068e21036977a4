#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sptwire/model_states.hpp"
#include "sptwire/symmetry_extract.hpp"
#include "sptwire/tebd.hpp"

#include <random>

using namespace sptwire;

namespace {

CommutatorForm pauli_kappa() {
    ProjectiveRep rep{FiniteAbelianGroup({2, 2}), 2, oracles::pauli_rep_matrices()};
    return rep_commutator_form(rep);
}

}  // namespace

TEST_CASE("twisted transfer: AKLT fixed points are the Pauli matrices") {
    WireState aklt = aklt_mps();
    SUBCASE("identity element gives the plain transfer operator") {
        TwistedEig e = twisted_transfer_leading(aklt.mps.bulk(), aklt.sym.at(0));
        CHECK(std::abs(e.lambda - cxd(1, 0)) < 1e-12);
        CHECK(phase_adjusted_distance(e.fixed_point, Matrix(Matrix::Identity(2, 2) / std::sqrt(2.0))) <
              1e-10);
    }
    SUBCASE("x rotation gives sigma_x") {
        TwistedEig e = twisted_transfer_leading(aklt.mps.bulk(), aklt.sym.at(1));
        CHECK(std::abs(std::abs(e.lambda) - 1.0) < 1e-12);
        CHECK(phase_adjusted_distance(e.fixed_point, Matrix(pauli_x() / std::sqrt(2.0))) < 1e-10);
        CHECK(e.unitarity_defect < 1e-10);
    }
}

TEST_CASE("extract: AKLT gives the Pauli class") {
    WireState aklt = aklt_mps();
    ExtractionOutcome out = extract(aklt.mps, aklt.sym);
    REQUIRE(out.ok());
    const SymmetryData& data = *out.data;
    CHECK(data.max_noncommutative);
    CHECK(data.kappa == pauli_kappa());
    CHECK(data.class_label == "nondegenerate(Z2)");
    for (auto b : data.beta) CHECK(std::abs(b - cxd(1, 0)) < 1e-10);
    for (double r : data.residuals) CHECK(r < 1e-10);
    // The normalised V matches the gauge-normalised Pauli rep element-wise up
    // to a global phase per element.
    NormalizedRep np = gauge_normalize(
        ProjectiveRep{aklt.sym.group, 2, oracles::pauli_rep_matrices()}, data.kappa, data.basis);
    CHECK(np.omega == data.omega);
    for (int g = 0; g < 4; ++g)
        CHECK(phase_adjusted_distance(data.rep.at(g), np.rep.at(g)) < 1e-9);
}

TEST_CASE("extract: cluster1d and qudit clusters") {
    SUBCASE("cluster1d lands in the AKLT class") {
        WireState cl = cluster1d_mps();
        ExtractionOutcome out = extract(cl.mps, cl.sym);
        REQUIRE(out.ok());
        CHECK(out.data->class_label == "nondegenerate(Z2)");
        CHECK(out.data->kappa == pauli_kappa());
    }
    SUBCASE("qudit d=3 gives the Z3 class with a 3-dimensional rep") {
        WireState q = qudit_cluster_mps(3);
        ExtractionOutcome out = extract(q.mps, q.sym);
        REQUIRE(out.ok());
        CHECK(out.data->class_label == "nondegenerate(Z3)");
        CHECK(out.data->rep.dim == 3);
        CHECK(out.data->rep.dim * out.data->rep.dim == q.sym.group.size());
    }
}

TEST_CASE("extract: ladder N=1 gives (Z2xZ2)^2 with protected dimension 4") {
    WireState lad = cluster_ladder_mps(1);
    ExtractionOutcome out = extract(lad.mps, lad.sym);
    REQUIRE(out.ok());
    CHECK(out.data->class_label == "nondegenerate(Z2xZ2)");
    CHECK(out.data->rep.dim == 4);
    CHECK(out.data->basis.pair_orders == std::vector<int>{2, 2});
}

TEST_CASE("extract: hidden perturbed state reproduces the AKLT kappa bitwise") {
    ProtectedBase base = aklt_protected_base();
    PerturbedState p = perturbed_family(base, 0.3, 3, 7);
    ExtractionOutcome out = extract(p.state, p.sym);
    REQUIRE(out.ok());
    CHECK(out.data->kappa == pauli_kappa());
    CHECK(out.data->class_label == "nondegenerate(Z2)");
    for (double r : out.data->residuals) CHECK(r < 1e-9);
}

TEST_CASE("extract: trivial symmetry action on a product state") {
    FiniteAbelianGroup g({2, 2});
    std::vector<Matrix> bulk{Matrix::Constant(1, 1, cxd(1, 0)), Matrix::Zero(1, 1),
                             Matrix::Zero(1, 1)};
    Mps psi = Mps::uniform(3, bulk, 6, Vector::Ones(1), Vector::Ones(1));
    OnsiteSymmetry sym{g, std::vector<Matrix>(4, Matrix::Identity(3, 3))};
    ExtractionOutcome out = extract(psi, sym);
    CHECK(out.verdict == ExtractVerdict::class_degenerate);
    REQUIRE(out.data.has_value());
    CHECK(out.data->class_label == "trivial");
    CHECK_FALSE(out.data->max_noncommutative);
}

TEST_CASE("extract: symmetry-broken state reports not_symmetric") {
    // A product state polarised along z is not invariant under the x flip.
    FiniteAbelianGroup g({2});
    std::vector<Matrix> bulk{Matrix::Constant(1, 1, cxd(1, 0)), Matrix::Zero(1, 1)};
    Mps psi = Mps::uniform(2, bulk, 6, Vector::Ones(1), Vector::Ones(1));
    OnsiteSymmetry sym{g, {Matrix::Identity(2, 2), pauli_x()}};
    ExtractionOutcome out = extract(psi, sym);
    CHECK(out.verdict == ExtractVerdict::not_symmetric);
}

TEST_CASE("extract: symmetry-broken GHZ tensor splits into asymmetric blocks") {
    // The degenerate transfer operator is split into injective sectors; each
    // sector breaks the X symmetry, so the verdict is not_symmetric.
    Matrix a0 = Matrix::Zero(2, 2), a1 = Matrix::Zero(2, 2);
    a0(0, 0) = 1;
    a1(1, 1) = 1;
    Mps ghz = Mps::uniform(2, {a0, a1}, 6, Vector::Ones(2), Vector::Ones(2));
    FiniteAbelianGroup g({2});
    OnsiteSymmetry sym{g, {Matrix::Identity(2, 2), pauli_x()}};
    ExtractionOutcome out = extract(ghz, sym);
    CHECK(out.verdict == ExtractVerdict::not_symmetric);
    CHECK_FALSE(injectivity_check(ghz).injective);
}

TEST_CASE("gauge covariance: label, kappa and omega are bitwise invariant") {
    WireState aklt = aklt_mps();
    ExtractionOutcome ref = extract(aklt.mps, aklt.sym);
    REQUIRE(ref.ok());
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix w = random_unitary(2, rng);
        ExtractionOutcome rot = extract(gauge_transform(aklt.mps, w), aklt.sym);
        REQUIRE(rot.ok());
        CHECK(rot.data->kappa == ref.data->kappa);
        CHECK(rot.data->omega == ref.data->omega);
        CHECK(rot.data->class_label == ref.data->class_label);
        // V transforms by conjugation: W V W^dag, up to the normal-form phase.
        for (int g = 0; g < 4; ++g)
            CHECK(phase_adjusted_distance(rot.data->rep.at(g),
                                          Matrix(w * ref.data->rep.at(g) * w.adjoint())) < 1e-9);
    }
}

TEST_CASE("uniform_bulk_tensor: finite AKLT chain extracts cleanly") {
    WireState aklt = aklt_mps();
    std::vector<std::vector<Matrix>> tensors(10, aklt.mps.bulk());
    Mps chain = Mps::finite(3, tensors, Vector::Ones(2) / std::sqrt(2.0),
                            Vector::Ones(2) / std::sqrt(2.0));
    Mps bulk = uniform_bulk_tensor(chain);
    ExtractionOutcome out = extract(bulk, aklt.sym);
    REQUIRE(out.ok());
    CHECK(out.data->class_label == "nondegenerate(Z2)");
    for (double r : out.data->residuals) CHECK(r < 1e-9);
}

TEST_CASE("TEBD ground states extract with residuals improving in chi") {
    // Long enough that the edge sectors decouple cleanly at every chi.
    HamiltonianSpec spec{HamiltonianSpec::Family::cluster_field, 0.25};
    TebdSchedule light;
    light.dts = {0.1, 0.01};
    light.max_sweeps_per_dt = 400;
    std::vector<double> residuals;
    for (int chi : {4, 8, 16}) {
        TebdResult res = tebd_ground(spec, 28, chi, light);
        Mps bulk = uniform_bulk_tensor(res.state);
        ExtractionOutcome out = extract(bulk, spec.symmetry(), ExtractTolerances::tebd());
        REQUIRE(out.ok());
        CHECK(out.data->class_label == "nondegenerate(Z2)");
        double worst = 0;
        for (double r : out.data->residuals) worst = std::max(worst, r);
        residuals.push_back(worst);
        CHECK(worst < 1e-3);
    }
    CHECK(residuals[1] <= residuals[0] + 1e-6);
    CHECK(residuals[2] <= residuals[1] + 1e-6);
}
