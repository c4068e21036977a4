#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sptwire/abelian_group.hpp"
#include "sptwire/projrep.hpp"

#include <random>
#include <set>

using namespace sptwire;

namespace {

FiniteAbelianGroup z2z2() { return FiniteAbelianGroup({2, 2}); }

ProjectiveRep pauli_rep() {
    return ProjectiveRep{z2z2(), 2, oracles::pauli_rep_matrices()};
}

FactorSystem pauli_omega() { return rep_factor_system(pauli_rep()); }

/// omega1 lifted to G1 x G2, trivial on the second factor.
FactorSystem product_with_trivial(const FactorSystem& o1, const FiniteAbelianGroup& g2) {
    FiniteAbelianGroup g = direct_product(o1.group(), g2);
    const int r1 = o1.group().rank();
    FactorSystem out(g);
    for (int p = 0; p < g.size(); ++p)
        for (int q = 0; q < g.size(); ++q) {
            auto pt = g.tuple(p);
            auto qt = g.tuple(q);
            std::vector<int> p1(pt.begin(), pt.begin() + r1), q1(qt.begin(), qt.begin() + r1);
            out.set(p, q, o1.at(o1.group().index(p1), o1.group().index(q1)));
        }
    return out;
}

std::vector<PhaseFrac> random_rational_rephasing(const FiniteAbelianGroup& g,
                                                 std::mt19937_64& rng) {
    const std::int64_t den = 2 * g.exponent();
    std::uniform_int_distribution<std::int64_t> dist(0, den - 1);
    std::vector<PhaseFrac> lambda(g.size());
    for (auto& l : lambda) l = PhaseFrac::of(dist(rng), den);
    return lambda;
}

}  // namespace

TEST_CASE("group arithmetic basics") {
    FiniteAbelianGroup g({2, 3});
    CHECK(g.size() == 6);
    CHECK(g.exponent() == 6);
    CHECK(g.add(g.index({1, 2}), g.index({1, 2})) == g.index({0, 1}));
    CHECK(g.neg(g.index({1, 1})) == g.index({1, 2}));
    CHECK(g.order_of(g.index({1, 1})) == 6);
    CHECK(g.order_of(g.index({0, 2})) == 3);
    for (int a = 0; a < g.size(); ++a) CHECK(g.scale(g.exponent(), a) == g.identity());
}

TEST_CASE("characters multiply and have unit modulus") {
    FiniteAbelianGroup g({2, 3});
    for (int i = 0; i < g.size(); ++i) {
        Character chi = Character::from_index(g, i);
        for (int a = 0; a < g.size(); ++a)
            for (int b = 0; b < g.size(); ++b)
                CHECK(chi.eval(g.add(a, b)) == chi.eval(a) * chi.eval(b));
    }
}

TEST_CASE("cocycle_check: trivial, Pauli, corrupted") {
    FactorSystem trivial(z2z2());
    CHECK(cocycle_check(trivial));

    FactorSystem pw = pauli_omega();
    CHECK(cocycle_check(pw));

    // All-ones table with a single -1 entry cannot satisfy the cocycle identity.
    FactorSystem bad(z2z2());
    bad.set(1, 2, PhaseFrac::of(1, 2));
    CHECK_FALSE(cocycle_check(bad));
    auto viol = oracles::find_cocycle_violation(bad);
    CHECK(viol[0] >= 0);
}

TEST_CASE("commutator form of the Pauli cocycle matches matrix commutators") {
    FactorSystem pw = pauli_omega();
    CommutatorForm kappa = commutator_form(pw);
    auto mats = oracles::pauli_rep_matrices();
    auto g = z2z2();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Matrix c = mats[a] * mats[b] * mats[a].adjoint() * mats[b].adjoint();
            cxd expect = c(0, 0);
            CHECK(std::abs(kappa.at(a, b).value() - expect) < 1e-12);
            bool off_diag = a != b && a != 0 && b != 0;
            CHECK(kappa.at(a, b).is_one() == !off_diag);
        }
}

TEST_CASE("commutator form is gauge invariant, exactly") {
    FactorSystem pw = pauli_omega();
    CommutatorForm kappa = commutator_form(pw);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        FactorSystem re = pw.rephased(random_rational_rephasing(pw.group(), rng));
        CHECK(cocycle_check(re));
        CHECK(commutator_form(re) == kappa);
    }
}

TEST_CASE("radical: trivial cocycle, Pauli, product with Z3") {
    FactorSystem trivial(z2z2());
    CHECK(radical(trivial).size() == 4);

    FactorSystem pw = pauli_omega();
    auto rad = radical(pw);
    REQUIRE(rad.size() == 1);
    CHECK(rad[0] == 0);

    FiniteAbelianGroup z3({3});
    FactorSystem prod = product_with_trivial(pw, z3);
    auto rad2 = radical(prod);
    REQUIRE(rad2.size() == 3);
    for (int r : rad2) {
        auto t = prod.group().tuple(r);
        CHECK(t[0] == 0);
        CHECK(t[1] == 0);
    }
}

TEST_CASE("maximal non-commutativity") {
    CHECK(is_maximally_noncommutative(pauli_omega()));
    CHECK_FALSE(is_maximally_noncommutative(FactorSystem(z2z2())));
    CHECK(is_maximally_noncommutative(standard_cocycle(FiniteAbelianGroup({3}))));
}

TEST_CASE("phi is an isomorphism and h_chi inverts it") {
    for (auto orders : {std::vector<int>{2}, {3}, {4}, {2, 2}}) {
        FiniteAbelianGroup h(orders);
        FactorSystem omega = standard_cocycle(h);
        CommutatorForm kappa = commutator_form(omega);
        auto phi = phi_map(kappa);
        const auto& g = kappa.group();
        REQUIRE(g.size() <= 36);

        std::set<int> image(phi.begin(), phi.end());
        CHECK(static_cast<int>(image.size()) == g.size());
        for (int a = 0; a < g.size(); ++a)
            for (int b = 0; b < g.size(); ++b) {
                Character ca = Character::from_index(g, phi[a]);
                Character cb = Character::from_index(g, phi[b]);
                Character cab = Character::from_index(g, phi[g.add(a, b)]);
                for (int x = 0; x < g.size(); ++x)
                    CHECK(cab.eval(x) == ca.eval(x) * cb.eval(x));
            }
        for (int a = 0; a < g.size(); ++a)
            CHECK(h_chi(kappa, Character::from_index(g, phi[a])) == a);
    }
}

TEST_CASE("h_chi for the Pauli class: kernel {1,x} picks out x") {
    CommutatorForm kappa = commutator_form(pauli_omega());
    // chi(x) = +1, chi(y) = chi(z) = -1 for x = (0,1), y = (1,0). That is
    // exponent tuple (1, 0).
    Character chi(z2z2(), {1, 0});
    CHECK(chi.eval(1).is_one());
    CHECK(h_chi(kappa, chi) == 1);

    Character triv(z2z2(), {0, 0});
    CHECK(h_chi(kappa, triv) == 0);
}

TEST_CASE("h_chi distinct and Eq.-(7)-consistent for Z3 x Z3*") {
    FiniteAbelianGroup h({3});
    FactorSystem omega = standard_cocycle(h);
    CommutatorForm kappa = commutator_form(omega);
    ProjectiveRep rep = heisenberg_rep(h);
    std::set<int> seen;
    for (int c = 0; c < 9; ++c) {
        Character chi = Character::from_index(kappa.group(), c);
        int hc = h_chi(kappa, chi);
        seen.insert(hc);
        CHECK(lemma1_check(rep, chi, hc) < 1e-12);
    }
    CHECK(seen.size() == 9);
}

TEST_CASE("standard cocycle: checks, Pauli equivalence, Lemma-2 dimension") {
    FiniteAbelianGroup z2({2});
    FactorSystem std2 = standard_cocycle(z2);
    CHECK(cocycle_check(std2));
    CHECK(is_maximally_noncommutative(std2));

    // kappa of the standard cocycle on Z2 x Z2* matches the Pauli kappa under
    // some group automorphism (here in fact the identity relabeling).
    CommutatorForm ks = commutator_form(std2);
    CommutatorForm kp = commutator_form(pauli_omega());
    auto g = z2z2();
    bool any_match = false;
    // GL(2, F2): images of the two generators.
    for (int img1 = 1; img1 < 4 && !any_match; ++img1)
        for (int img2 = 1; img2 < 4 && !any_match; ++img2) {
            if (img1 == img2) continue;
            auto map = [&](int a) {
                auto t = g.tuple(a);
                int out = g.identity();
                if (t[0]) out = g.add(out, img1);
                if (t[1]) out = g.add(out, img2);
                return out;
            };
            bool ok = true;
            for (int a = 0; a < 4 && ok; ++a)
                for (int b = 0; b < 4 && ok; ++b) ok = ks.at(map(a), map(b)) == kp.at(a, b);
            any_match = ok;
        }
    CHECK(any_match);

    FactorSystem std22 = standard_cocycle(z2z2());
    CHECK(std22.group().size() == 16);
    CHECK(is_maximally_noncommutative(std22));
    CHECK(heisenberg_rep(z2z2()).dim == 4);
}

TEST_CASE("symplectic basis: Pauli, Z3 standard, ladder-type double pair") {
    SUBCASE("pauli") {
        CommutatorForm kappa = commutator_form(pauli_omega());
        SymplecticBasis basis = symplectic_basis(kappa);
        REQUIRE(basis.e.size() == 1);
        CHECK(basis.pair_orders[0] == 2);
        CHECK(kappa.at(basis.e[0], basis.f[0]) == PhaseFrac::of(1, 2));
        CHECK(rebuild_kappa(kappa.group(), basis) == kappa);
    }
    SUBCASE("z3 standard") {
        CommutatorForm kappa = commutator_form(standard_cocycle(FiniteAbelianGroup({3})));
        SymplecticBasis basis = symplectic_basis(kappa);
        REQUIRE(basis.e.size() == 1);
        CHECK(basis.pair_orders[0] == 3);
        CHECK(kappa.at(basis.e[0], basis.f[0]) == PhaseFrac::of(2, 3));
        CHECK(rebuild_kappa(kappa.group(), basis) == kappa);
    }
    SUBCASE("two hyperbolic pairs for (Z2xZ2)^2") {
        CommutatorForm kappa = commutator_form(standard_cocycle(z2z2()));
        SymplecticBasis basis = symplectic_basis(kappa);
        REQUIRE(basis.e.size() == 2);
        CHECK(basis.pair_orders == std::vector<int>{2, 2});
        CHECK(rebuild_kappa(kappa.group(), basis) == kappa);
    }
    SUBCASE("mixed orders Z2 x Z6 pairing") {
        CommutatorForm kappa = commutator_form(standard_cocycle(FiniteAbelianGroup({2, 6})));
        SymplecticBasis basis = symplectic_basis(kappa);
        CHECK(rebuild_kappa(kappa.group(), basis) == kappa);
        FactorSystem nf = normal_form_cocycle(kappa.group(), kappa, basis);
        CHECK(cocycle_check(nf));
        CHECK(commutator_form(nf) == kappa);
    }
    SUBCASE("degenerate input rejected") {
        CommutatorForm trivial(z2z2());
        CHECK_THROWS(symplectic_basis(trivial));
    }
}

TEST_CASE("normal-form cocycle reproduces kappa and passes the cocycle check") {
    for (auto orders : {std::vector<int>{2}, {3}, {2, 2}}) {
        FiniteAbelianGroup h(orders);
        CommutatorForm kappa = commutator_form(standard_cocycle(h));
        SymplecticBasis basis = symplectic_basis(kappa);
        FactorSystem nf = normal_form_cocycle(kappa.group(), kappa, basis);
        CHECK(cocycle_check(nf));
        CHECK(commutator_form(nf) == kappa);
    }
}

TEST_CASE("subgroup invariant factors") {
    FiniteAbelianGroup g({2, 2, 3});
    CHECK(subgroup_invariant_factors(g, {}).empty());
    CHECK(subgroup_invariant_factors(g, {g.index({1, 0, 0})}) == std::vector<int>{2});
    CHECK(subgroup_invariant_factors(g, {g.index({1, 0, 0}), g.index({0, 1, 0})}) ==
          std::vector<int>{2, 2});
    CHECK(subgroup_invariant_factors(g, {g.index({1, 0, 1})}) == std::vector<int>{6});
    CHECK(subgroup_invariant_factors(g, {g.index({1, 0, 1}), g.index({0, 1, 0})}) ==
          std::vector<int>{6, 2});
}
