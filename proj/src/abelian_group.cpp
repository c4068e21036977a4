#include "sptwire/abelian_group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sptwire {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    require(!orders_.empty(), "group: at least one cyclic factor required");
    for (int n : orders_) require(n >= 2, "group: cyclic orders must be >= 2");
    strides_.assign(orders_.size(), 1);
    for (int j = static_cast<int>(orders_.size()) - 2; j >= 0; --j)
        strides_[j] = strides_[j + 1] * orders_[j + 1];
    for (int n : orders_) {
        size_ *= n;
        exponent_ = std::lcm(exponent_, n);
    }
    require(size_ <= (1 << 20), "group: too large");
}

int FiniteAbelianGroup::add(int a, int b) const {
    int out = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        int aj = (a / strides_[j]) % orders_[j];
        int bj = (b / strides_[j]) % orders_[j];
        out += ((aj + bj) % orders_[j]) * strides_[j];
    }
    return out;
}

int FiniteAbelianGroup::neg(int a) const {
    int out = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        int aj = (a / strides_[j]) % orders_[j];
        out += ((orders_[j] - aj) % orders_[j]) * strides_[j];
    }
    return out;
}

int FiniteAbelianGroup::scale(int k, int a) const {
    int out = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        int aj = (a / strides_[j]) % orders_[j];
        long long v = (static_cast<long long>(k % orders_[j]) + orders_[j]) % orders_[j];
        out += static_cast<int>((v * aj) % orders_[j]) * strides_[j];
    }
    return out;
}

int FiniteAbelianGroup::order_of(int a) const {
    int ord = 1;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        int aj = (a / strides_[j]) % orders_[j];
        ord = std::lcm(ord, orders_[j] / std::gcd(orders_[j], aj == 0 ? orders_[j] : aj));
    }
    return ord;
}

std::vector<int> FiniteAbelianGroup::tuple(int a) const {
    std::vector<int> t(orders_.size());
    for (std::size_t j = 0; j < orders_.size(); ++j) t[j] = (a / strides_[j]) % orders_[j];
    return t;
}

int FiniteAbelianGroup::index(const std::vector<int>& t) const {
    require(t.size() == orders_.size(), "group: tuple rank mismatch");
    int a = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        int v = t[j] % orders_[j];
        if (v < 0) v += orders_[j];
        a += v * strides_[j];
    }
    return a;
}

std::vector<int> FiniteAbelianGroup::factor_generators() const {
    std::vector<int> gens(orders_.size());
    for (std::size_t j = 0; j < orders_.size(); ++j) gens[j] = strides_[j];
    return gens;
}

FiniteAbelianGroup direct_product(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    std::vector<int> orders = a.orders();
    orders.insert(orders.end(), b.orders().begin(), b.orders().end());
    return FiniteAbelianGroup(orders);
}

Character::Character(const FiniteAbelianGroup& group, std::vector<int> exponents)
    : group_(group), exponents_(std::move(exponents)) {
    require(static_cast<int>(exponents_.size()) == group_.rank(), "character: rank mismatch");
    for (int j = 0; j < group_.rank(); ++j) {
        exponents_[j] %= group_.orders()[j];
        if (exponents_[j] < 0) exponents_[j] += group_.orders()[j];
    }
}

Character Character::from_index(const FiniteAbelianGroup& group, int idx) {
    return Character(group, group.tuple(idx));
}

PhaseFrac Character::eval(int g) const {
    auto t = group_.tuple(g);
    PhaseFrac p = PhaseFrac::one();
    for (int j = 0; j < group_.rank(); ++j)
        p = p * PhaseFrac::of(static_cast<std::int64_t>(exponents_[j]) * t[j], group_.orders()[j]);
    return p;
}

int Character::index() const { return group_.index(exponents_); }

FactorSystem::FactorSystem(FiniteAbelianGroup group)
    : group_(std::move(group)),
      table_(static_cast<std::size_t>(group_.size()) * group_.size(), PhaseFrac::one()) {}

FactorSystem FactorSystem::rephased(const std::vector<PhaseFrac>& lambda) const {
    require(static_cast<int>(lambda.size()) == group_.size(), "rephased: lambda size mismatch");
    FactorSystem out(group_);
    for (int g = 0; g < group_.size(); ++g)
        for (int h = 0; h < group_.size(); ++h)
            out.set(g, h, at(g, h) * lambda[g] * lambda[h] * lambda[group_.add(g, h)].inverse());
    return out;
}

CommutatorForm::CommutatorForm(FiniteAbelianGroup group)
    : group_(std::move(group)),
      table_(static_cast<std::size_t>(group_.size()) * group_.size(), PhaseFrac::one()) {}

bool CommutatorForm::is_bicharacter() const {
    const int n = group_.size();
    for (int g = 0; g < n; ++g) {
        if (!at(g, g).is_one()) return false;
        for (int h = 0; h < n; ++h) {
            if (at(g, h) != at(h, g).inverse()) return false;
            for (int g2 = 0; g2 < n; ++g2)
                if (at(group_.add(g, g2), h) != at(g, h) * at(g2, h)) return false;
        }
    }
    return true;
}

bool cocycle_check(const FactorSystem& omega) {
    const auto& grp = omega.group();
    const int n = grp.size();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int k = 0; k < n; ++k)
                if (omega.at(g, h) * omega.at(grp.add(g, h), k) !=
                    omega.at(h, k) * omega.at(g, grp.add(h, k)))
                    return false;
    return true;
}

CommutatorForm commutator_form(const FactorSystem& omega) {
    require(cocycle_check(omega), "commutator_form: input is not a 2-cocycle");
    CommutatorForm kappa(omega.group());
    const int n = omega.group().size();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) kappa.set(g, h, omega.at(g, h) * omega.at(h, g).inverse());
    ensure(kappa.is_bicharacter(), "commutator_form: bicharacter invariants violated");
    return kappa;
}

std::vector<int> radical(const CommutatorForm& kappa) {
    std::vector<int> rad;
    const int n = kappa.group().size();
    for (int g = 0; g < n; ++g) {
        bool central = true;
        for (int h = 0; h < n && central; ++h) central = kappa.at(g, h).is_one();
        if (central) rad.push_back(g);
    }
    return rad;
}

std::vector<int> radical(const FactorSystem& omega) { return radical(commutator_form(omega)); }

bool is_maximally_noncommutative(const CommutatorForm& kappa) { return radical(kappa).size() == 1; }

bool is_maximally_noncommutative(const FactorSystem& omega) {
    return is_maximally_noncommutative(commutator_form(omega));
}

std::vector<int> phi_map(const CommutatorForm& kappa) {
    const auto& grp = kappa.group();
    std::vector<int> phi(grp.size());
    std::vector<bool> hit(grp.size(), false);
    auto gens = grp.factor_generators();
    for (int h = 0; h < grp.size(); ++h) {
        std::vector<int> exps(grp.rank());
        for (int j = 0; j < grp.rank(); ++j) {
            PhaseFrac v = kappa.at(h, gens[j]);
            const int nj = grp.orders()[j];
            ensure(nj % v.order() == 0, "phi_map: kappa value order incompatible with factor");
            exps[j] = static_cast<int>((v.num * (nj / v.den)) % nj);
        }
        phi[h] = grp.index(exps);
        require(!hit[phi[h]], "phi_map: kappa is degenerate (phi not injective)");
        hit[phi[h]] = true;
    }
    return phi;
}

int h_chi(const CommutatorForm& kappa, const Character& chi) {
    auto phi = phi_map(kappa);
    const int target = chi.index();
    for (int h = 0; h < kappa.group().size(); ++h)
        if (phi[h] == target) return h;
    throw std::runtime_error("h_chi: character not in the image of phi");
}

FactorSystem standard_cocycle(const FiniteAbelianGroup& h) {
    FiniteAbelianGroup g = direct_product(h, h);
    FactorSystem omega(g);
    const int k = h.rank();
    for (int p = 0; p < g.size(); ++p) {
        auto pt = g.tuple(p);
        std::vector<int> x(pt.begin() + k, pt.end());
        Character chi(h, x);
        for (int q = 0; q < g.size(); ++q) {
            auto qt = g.tuple(q);
            std::vector<int> b(qt.begin(), qt.begin() + k);
            omega.set(p, q, chi.eval(h.index(b)));
        }
    }
    return omega;
}

namespace {

// kappa-order of g restricted to the subgroup `sub`.
int kappa_order_in(const CommutatorForm& kappa, int g, const std::vector<int>& sub) {
    std::int64_t ord = 1;
    for (int h : sub) ord = std::lcm(ord, kappa.at(g, h).order());
    return static_cast<int>(ord);
}

}  // namespace

SymplecticBasis symplectic_basis(const CommutatorForm& kappa) {
    const auto& grp = kappa.group();
    require(is_maximally_noncommutative(kappa), "symplectic_basis: kappa is degenerate");

    SymplecticBasis basis;
    std::vector<int> sub(grp.size());
    for (int g = 0; g < grp.size(); ++g) sub[g] = g;

    while (sub.size() > 1) {
        // Generator of maximal kappa-order within the current subgroup;
        // smallest flat index breaks ties so the basis is reproducible.
        int e = -1, n = 1;
        for (int g : sub) {
            int o = kappa_order_in(kappa, g, sub);
            if (o > n) {
                n = o;
                e = g;
            }
        }
        ensure(e >= 0 && n > 1, "symplectic_basis: no pairing found (degenerate restriction)");
        ensure(grp.order_of(e) == n, "symplectic_basis: kappa-order differs from group order");

        // Partner with kappa(e, f) = exp(-2 pi i / n).
        int f = -1;
        for (int h : sub) {
            PhaseFrac v = kappa.at(e, h);
            if (v.order() != n) continue;
            // v = exp(2 pi i k / n), gcd(k, n) = 1; rescale h so the pairing
            // becomes the primitive root with exponent -1.
            std::int64_t k = v.num * (n / v.den) % n;
            for (int m = 1; m < n; ++m)
                if ((k * m) % n == static_cast<std::int64_t>(n - 1)) {
                    f = grp.scale(m, h);
                    break;
                }
            if (f >= 0) break;
        }
        ensure(f >= 0, "symplectic_basis: no hyperbolic partner found");

        basis.e.push_back(e);
        basis.f.push_back(f);
        basis.pair_orders.push_back(n);

        std::vector<int> next;
        for (int g : sub)
            if (kappa.at(g, e).is_one() && kappa.at(g, f).is_one()) next.push_back(g);
        ensure(static_cast<std::size_t>(n) * n * next.size() == sub.size(),
               "symplectic_basis: subgroup split has wrong order");
        sub = std::move(next);
    }

    // Completeness: every element must be reproduced by its coordinates.
    for (int g = 0; g < grp.size(); ++g) {
        auto c = symplectic_coords(kappa, basis, g);
        int rebuilt = grp.identity();
        for (std::size_t j = 0; j < basis.e.size(); ++j) {
            rebuilt = grp.add(rebuilt, grp.scale(c.a[j], basis.e[j]));
            rebuilt = grp.add(rebuilt, grp.scale(c.b[j], basis.f[j]));
        }
        ensure(rebuilt == g, "symplectic_basis: coordinates fail to reconstruct element");
    }
    return basis;
}

SymplecticCoords symplectic_coords(const CommutatorForm& kappa, const SymplecticBasis& basis,
                                   int g) {
    SymplecticCoords c;
    for (std::size_t j = 0; j < basis.e.size(); ++j) {
        const int n = basis.pair_orders[j];
        // kappa(g, f_j) = exp(-2 pi i a_j / n), kappa(g, e_j) = exp(2 pi i b_j / n).
        PhaseFrac vf = kappa.at(g, basis.f[j]);
        PhaseFrac ve = kappa.at(g, basis.e[j]);
        ensure(n % vf.order() == 0 && n % ve.order() == 0,
               "symplectic_coords: pairing value of unexpected order");
        std::int64_t tf = vf.num * (n / vf.den) % n;
        std::int64_t te = ve.num * (n / ve.den) % n;
        c.a.push_back(static_cast<int>((n - tf) % n));
        c.b.push_back(static_cast<int>(te));
    }
    return c;
}

CommutatorForm rebuild_kappa(const FiniteAbelianGroup& group, const SymplecticBasis& basis) {
    CommutatorForm kappa(group);
    // Precompute coordinates via the basis elements themselves: pairing table
    // of the basis is canonical, so coordinates follow from group arithmetic.
    // Build kappa(g,h) = prod_j exp(-2 pi i (a_j(g) b_j(h) - b_j(g) a_j(h)) / n_j)
    // using coordinates recovered from a kappa built inductively; instead we
    // decompose each element by brute force over the basis span.
    const int r = static_cast<int>(basis.e.size());
    std::vector<SymplecticCoords> coords(group.size());
    std::vector<bool> seen(group.size(), false);
    std::vector<int> radix;
    for (int j = 0; j < r; ++j) {
        radix.push_back(basis.pair_orders[j]);
        radix.push_back(basis.pair_orders[j]);
    }
    long long total = 1;
    for (int v : radix) total *= v;
    require(total == group.size(), "rebuild_kappa: basis does not span the group");
    std::vector<int> digits(radix.size(), 0);
    for (long long it = 0; it < total; ++it) {
        int g = group.identity();
        SymplecticCoords c;
        for (int j = 0; j < r; ++j) {
            c.a.push_back(digits[2 * j]);
            c.b.push_back(digits[2 * j + 1]);
            g = group.add(g, group.scale(digits[2 * j], basis.e[j]));
            g = group.add(g, group.scale(digits[2 * j + 1], basis.f[j]));
        }
        require(!seen[g], "rebuild_kappa: basis span collision");
        seen[g] = true;
        coords[g] = std::move(c);
        for (std::size_t p = 0; p < digits.size(); ++p) {
            if (++digits[p] < radix[p]) break;
            digits[p] = 0;
        }
    }
    for (int g = 0; g < group.size(); ++g)
        for (int h = 0; h < group.size(); ++h) {
            PhaseFrac v = PhaseFrac::one();
            for (int j = 0; j < r; ++j) {
                const int n = basis.pair_orders[j];
                std::int64_t t = static_cast<std::int64_t>(coords[g].a[j]) * coords[h].b[j] -
                                 static_cast<std::int64_t>(coords[g].b[j]) * coords[h].a[j];
                v = v * PhaseFrac::of(-t, n);
            }
            kappa.set(g, h, v);
        }
    return kappa;
}

FactorSystem normal_form_cocycle(const FiniteAbelianGroup& group, const CommutatorForm& kappa,
                                 const SymplecticBasis& basis) {
    FactorSystem omega(group);
    std::vector<SymplecticCoords> coords(group.size());
    for (int g = 0; g < group.size(); ++g) coords[g] = symplectic_coords(kappa, basis, g);
    for (int g = 0; g < group.size(); ++g)
        for (int h = 0; h < group.size(); ++h) {
            PhaseFrac v = PhaseFrac::one();
            for (std::size_t j = 0; j < basis.e.size(); ++j)
                v = v * PhaseFrac::of(
                            static_cast<std::int64_t>(coords[g].b[j]) * coords[h].a[j],
                            basis.pair_orders[j]);
            omega.set(g, h, v);
        }
    return omega;
}

std::vector<int> subgroup_invariant_factors(const FiniteAbelianGroup& group,
                                            const std::vector<int>& elements) {
    // Closure of the generating set.
    std::set<int> sub{group.identity()};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(sub.begin(), sub.end());
        for (int s : cur)
            for (int e : elements) {
                int t = group.add(s, e);
                if (sub.insert(t).second) grew = true;
            }
    }
    const long long size = static_cast<long long>(sub.size());
    if (size == 1) return {};

    std::vector<long long> primes;
    long long rem = size;
    for (long long p = 2; p * p <= rem; ++p)
        if (rem % p == 0) {
            primes.push_back(p);
            while (rem % p == 0) rem /= p;
        }
    if (rem > 1) primes.push_back(rem);

    // For each prime, the counts c_k = #{s : p^k s = 0} determine the
    // exponent partition: c_k / c_{k-1} = p^{#factors with exponent >= k}.
    std::map<long long, std::vector<int>> per_prime;  // prime -> exponents, descending
    for (long long p : primes) {
        std::vector<long long> counts{1};
        long long pk = 1;
        while (true) {
            pk *= p;
            const int mult = static_cast<int>(pk % group.exponent());
            long long c = 0;
            for (int s : sub)
                if (group.scale(mult, s) == group.identity()) ++c;
            if (c == counts.back()) break;
            counts.push_back(c);
        }
        std::vector<int> exps;
        for (std::size_t k = 1; k < counts.size(); ++k) {
            long long ratio = counts[k] / counts[k - 1];
            int nk = 0;
            while (ratio > 1) {
                ratio /= p;
                ++nk;
            }
            for (int i = 0; i < nk; ++i) {
                if (static_cast<int>(exps.size()) <= i) exps.push_back(0);
                exps[i] = static_cast<int>(k);
            }
        }
        per_prime[p] = exps;
    }

    std::size_t nfac = 0;
    for (auto& [p, exps] : per_prime) nfac = std::max(nfac, exps.size());
    std::vector<long long> factors(nfac, 1);
    for (auto& [p, exps] : per_prime)
        for (std::size_t i = 0; i < exps.size(); ++i) {
            long long v = 1;
            for (int k = 0; k < exps[i]; ++k) v *= p;
            factors[i] *= v;
        }
    std::sort(factors.begin(), factors.end(), std::greater<>());
    std::vector<int> out;
    for (long long f : factors) out.push_back(static_cast<int>(f));
    return out;
}

}  // namespace sptwire
