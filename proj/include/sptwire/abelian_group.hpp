#pragma once

#include "sptwire/types.hpp"

#include <optional>
#include <vector>

namespace sptwire {

/// Finite abelian group Z_{n1} x ... x Z_{nk} with elements addressed by a
/// flat index (mixed radix over the cyclic orders, last component fastest).
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<int> orders);

    const std::vector<int>& orders() const { return orders_; }
    int rank() const { return static_cast<int>(orders_.size()); }
    int size() const { return size_; }
    int exponent() const { return exponent_; }

    int identity() const { return 0; }
    int add(int a, int b) const;
    int neg(int a) const;
    int scale(int k, int a) const;  // k-fold sum of a
    int order_of(int a) const;

    std::vector<int> tuple(int a) const;
    int index(const std::vector<int>& t) const;

    /// Flat indices of the unit tuples (one generator per cyclic factor).
    std::vector<int> factor_generators() const;

    bool operator==(const FiniteAbelianGroup& o) const { return orders_ == o.orders_; }

private:
    std::vector<int> orders_;
    std::vector<int> strides_;
    int size_ = 1;
    int exponent_ = 1;
};

/// Direct product, components of a first.
FiniteAbelianGroup direct_product(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

/// Linear character chi(g) = exp(2 pi i sum_j a_j g_j / n_j). The character
/// group is indexed by the same mixed radix as the group itself.
class Character {
public:
    Character(const FiniteAbelianGroup& group, std::vector<int> exponents);

    /// Character with flat dual index `idx`.
    static Character from_index(const FiniteAbelianGroup& group, int idx);

    PhaseFrac eval(int g) const;
    cxd operator()(int g) const { return eval(g).value(); }

    const std::vector<int>& exponents() const { return exponents_; }
    int index() const;
    const FiniteAbelianGroup& group() const { return group_; }

private:
    FiniteAbelianGroup group_;
    std::vector<int> exponents_;
};

/// Factor system omega: G x G -> U(1), stored exactly as roots of unity.
class FactorSystem {
public:
    explicit FactorSystem(FiniteAbelianGroup group);  // trivial omega == 1

    const FiniteAbelianGroup& group() const { return group_; }
    const PhaseFrac& at(int g, int h) const { return table_[flat(g, h)]; }
    void set(int g, int h, PhaseFrac v) { table_[flat(g, h)] = v; }

    /// omega(g,h) * lambda(g) lambda(h) / lambda(g+h) for a rephasing table.
    FactorSystem rephased(const std::vector<PhaseFrac>& lambda) const;

    bool operator==(const FactorSystem& o) const {
        return group_ == o.group_ && table_ == o.table_;
    }

private:
    std::size_t flat(int g, int h) const {
        return static_cast<std::size_t>(g) * group_.size() + h;
    }
    FiniteAbelianGroup group_;
    std::vector<PhaseFrac> table_;
};

/// Gauge-invariant commutator form kappa(g,h) = omega(g,h) / omega(h,g).
class CommutatorForm {
public:
    explicit CommutatorForm(FiniteAbelianGroup group);  // kappa == 1

    const FiniteAbelianGroup& group() const { return group_; }
    const PhaseFrac& at(int g, int h) const { return table_[flat(g, h)]; }
    void set(int g, int h, PhaseFrac v) { table_[flat(g, h)] = v; }

    bool is_bicharacter() const;

    bool operator==(const CommutatorForm& o) const {
        return group_ == o.group_ && table_ == o.table_;
    }

private:
    std::size_t flat(int g, int h) const {
        return static_cast<std::size_t>(g) * group_.size() + h;
    }
    FiniteAbelianGroup group_;
    std::vector<PhaseFrac> table_;
};

/// Exhaustive 2-cocycle condition omega(g,h) omega(g+h,k) == omega(h,k) omega(g,h+k).
bool cocycle_check(const FactorSystem& omega);

/// kappa from omega. Rejects non-cocycle input.
CommutatorForm commutator_form(const FactorSystem& omega);

/// The radical { g : kappa(g,h) = 1 for all h }, as a sorted element list.
std::vector<int> radical(const CommutatorForm& kappa);
std::vector<int> radical(const FactorSystem& omega);

bool is_maximally_noncommutative(const CommutatorForm& kappa);
bool is_maximally_noncommutative(const FactorSystem& omega);

/// The isomorphism phi : G -> G*, phi(h) = kappa(h, .), as a table of dual
/// indices. Throws if kappa is degenerate (phi not injective).
std::vector<int> phi_map(const CommutatorForm& kappa);

/// The element h_chi with V(h_chi) V(g) = chi(g) V(g) V(h_chi); the inverse
/// image of chi under phi.
int h_chi(const CommutatorForm& kappa, const Character& chi);

/// Canonical nondegenerate factor system on G = H x H*:
/// omega((a,x),(b,y)) = x(b). Elements (a,x) are flat-indexed with the H part
/// first.
FactorSystem standard_cocycle(const FiniteAbelianGroup& h);

/// A hyperbolic basis for a nondegenerate kappa: pairs (e_j, f_j) of orders
/// n_j with kappa(e_j, f_j) = exp(-2 pi i / n_j), kappa trivial on all other
/// generator pairs. Coordinates of any element in this basis are recovered
/// exactly from the pairing.
struct SymplecticBasis {
    std::vector<int> e;
    std::vector<int> f;
    std::vector<int> pair_orders;  // n_j

    /// Orders of the base group H with G ~ H x H*.
    const std::vector<int>& h_orders() const { return pair_orders; }
};

SymplecticBasis symplectic_basis(const CommutatorForm& kappa);

/// Coefficients (a_j, b_j) with g = sum_j (a_j e_j + b_j f_j), recovered from
/// the kappa pairing. Exact.
struct SymplecticCoords {
    std::vector<int> a;
    std::vector<int> b;
};
SymplecticCoords symplectic_coords(const CommutatorForm& kappa, const SymplecticBasis& basis, int g);

/// kappa rebuilt from basis coordinates; equals the input kappa exactly for a
/// valid basis (round-trip check).
CommutatorForm rebuild_kappa(const FiniteAbelianGroup& group, const SymplecticBasis& basis);

/// The factor system produced by the frozen normal-form convention
/// (e-generators before f-generators): omega(g,h) = prod_j exp(2 pi i b_j(g) a_j(h) / n_j).
FactorSystem normal_form_cocycle(const FiniteAbelianGroup& group, const CommutatorForm& kappa,
                                 const SymplecticBasis& basis);

/// Invariant factors of the subgroup generated by `elements`, recovered from
/// the order statistics of the generated subgroup. Used for phase labels.
std::vector<int> subgroup_invariant_factors(const FiniteAbelianGroup& group,
                                            const std::vector<int>& elements);

}  // namespace sptwire
