#include "sptwire/tebd.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace sptwire {

namespace {

/// Spin-1 operators in the { |x>, |y>, |z> } basis: (S_a)_{bc} = -i eps_{abc}.
std::vector<Matrix> spin1_xyz() {
    std::vector<Matrix> s(3, Matrix::Zero(3, 3));
    const int eps[3][3][3] = {};
    (void)eps;
    auto set = [&](int a, int b, int c, double sign) { s[static_cast<std::size_t>(a)](b, c) = cxd(0, -sign); };
    // eps_{012} = +1 and cyclic.
    set(0, 1, 2, 1);
    set(0, 2, 1, -1);
    set(1, 2, 0, 1);
    set(1, 0, 2, -1);
    set(2, 0, 1, 1);
    set(2, 1, 0, -1);
    return s;
}

}  // namespace

int HamiltonianSpec::site_dim() const {
    return family == Family::bilinear_biquadratic ? 3 : 4;
}

Matrix HamiltonianSpec::bond_term(int bond, int n_sites) const {
    if (family == Family::bilinear_biquadratic) {
        auto s = spin1_xyz();
        Matrix ss = Matrix::Zero(9, 9);
        for (int a = 0; a < 3; ++a)
            ss += kron(s[static_cast<std::size_t>(a)], s[static_cast<std::size_t>(a)]);
        return ss + param * ss * ss;
    }
    // Blocked cluster chain with transverse field: qubit pair per site.
    Matrix x = pauli_x(), z = pauli_z(), id = Matrix::Identity(2, 2);
    Matrix zxz_odd = kron(kron(z, x), kron(z, id));   // X on the left site's 2nd qubit
    Matrix zxz_even = kron(kron(id, z), kron(x, z));  // X on the right site's 1st qubit
    Matrix field_site = kron(x, id) + kron(id, x);
    Matrix id4 = Matrix::Identity(4, 4);
    Matrix h2 = -zxz_odd - zxz_even - param * kron(field_site, id4);
    if (bond == n_sites - 2) h2 -= param * kron(id4, field_site);
    return h2;
}

OnsiteSymmetry HamiltonianSpec::symmetry() const {
    if (family == Family::bilinear_biquadratic) return aklt_mps(2).sym;
    return cluster1d_mps(2).sym;
}

Mps HamiltonianSpec::initial_state(int n_sites) const {
    if (family == Family::bilinear_biquadratic) return aklt_mps(n_sites).mps;
    return cluster1d_mps(n_sites).mps;
}

namespace {

using SiteTensors = std::vector<std::vector<Matrix>>;  // [site][k]: D_out x D_in

/// Bring every site to the incoming-isometry form sum_k A^dag A = I by a
/// right-to-left sweep (right environments become proportional to identity).
void sweep_incoming(SiteTensors& a, int d) {
    const int n = static_cast<int>(a.size());
    Matrix carry;  // absorbed into the site to the left
    for (int t = n - 1; t >= 0; --t) {
        if (t < n - 1)
            for (auto& m : a[static_cast<std::size_t>(t)]) m = carry * m;
        const int rows = static_cast<int>(a[static_cast<std::size_t>(t)][0].rows());
        const int cols = static_cast<int>(a[static_cast<std::size_t>(t)][0].cols());
        Matrix m(d * rows, cols);  // stack over physical index
        for (int k = 0; k < d; ++k)
            m.block(k * rows, 0, rows, cols) = a[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
        Eigen::HouseholderQR<Matrix> qr(m);
        const int r = std::min<int>(d * rows, cols);
        Matrix q = Matrix(qr.householderQ()).leftCols(r);          // (d*rows) x r
        Matrix rf = Matrix(qr.matrixQR().topRows(r).triangularView<Eigen::Upper>());  // r x cols
        for (int k = 0; k < d; ++k)
            a[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = q.block(k * rows, 0, rows, r);
        carry = rf;
    }
    // carry is 1x1 for product boundaries; its scale is the state norm.
}

/// Move the orthogonality centre from site t to site t+1 by making site t an
/// outgoing isometry (sum_k A A^dag = I).
void shift_center_right(SiteTensors& a, int d, int t) {
    const int rows = static_cast<int>(a[static_cast<std::size_t>(t)][0].rows());
    const int cols = static_cast<int>(a[static_cast<std::size_t>(t)][0].cols());
    Matrix m(rows, d * cols);
    for (int k = 0; k < d; ++k)
        m.block(0, k * cols, rows, cols) = a[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
    Eigen::HouseholderQR<Matrix> qr(m.adjoint());
    const int r = std::min<int>(rows, d * cols);
    Matrix q = Matrix(qr.householderQ()).leftCols(r).adjoint();  // r x (d*cols)
    Matrix l = Matrix(qr.matrixQR().topRows(r).triangularView<Eigen::Upper>()).adjoint();  // rows x r
    for (int k = 0; k < d; ++k)
        a[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = q.block(0, k * cols, r, cols);
    for (auto& m2 : a[static_cast<std::size_t>(t) + 1]) m2 = m2 * l;
}

/// Apply a two-site gate at bond (t, t+1) with the centre at site t; leaves
/// the centre at site t+1. Returns the discarded relative weight.
double apply_gate(SiteTensors& a, int d, int t, const Matrix& gate, int chi_max,
                  double sv_rel_cutoff) {
    const auto& al = a[static_cast<std::size_t>(t)];
    const auto& ar = a[static_cast<std::size_t>(t) + 1];
    const int dl = static_cast<int>(al[0].cols());
    const int dr = static_cast<int>(ar[0].rows());

    // theta[kl, kr] = A_{t+1}[kr] * A_t[kl], gathered into a matrix with
    // rows (kr, out-bond) and cols (kl, in-bond).
    std::vector<Matrix> theta(static_cast<std::size_t>(d) * d);
    for (int kl = 0; kl < d; ++kl)
        for (int kr = 0; kr < d; ++kr)
            theta[static_cast<std::size_t>(kl * d + kr)] =
                ar[static_cast<std::size_t>(kr)] * al[static_cast<std::size_t>(kl)];

    std::vector<Matrix> rotated(static_cast<std::size_t>(d) * d);
    for (int jl = 0; jl < d; ++jl)
        for (int jr = 0; jr < d; ++jr) {
            Matrix acc = Matrix::Zero(dr, dl);
            for (int kl = 0; kl < d; ++kl)
                for (int kr = 0; kr < d; ++kr) {
                    const cxd gcoef = gate(jl * d + jr, kl * d + kr);
                    if (gcoef != cxd(0, 0)) acc += gcoef * theta[static_cast<std::size_t>(kl * d + kr)];
                }
            rotated[static_cast<std::size_t>(jl * d + jr)] = std::move(acc);
        }

    Matrix psi(d * dr, d * dl);
    for (int jl = 0; jl < d; ++jl)
        for (int jr = 0; jr < d; ++jr)
            psi.block(jr * dr, jl * dl, dr, dl) = rotated[static_cast<std::size_t>(jl * d + jr)];

    Eigen::JacobiSVD<Matrix> svd(psi, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double total = sv.squaredNorm();
    int keep = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (i < chi_max && sv(i) > sv_rel_cutoff * sv(0)) ++keep;
    keep = std::max(keep, 1);
    double kept = sv.head(keep).squaredNorm();

    Matrix u = svd.matrixU().leftCols(keep);
    Matrix v = svd.matrixV().leftCols(keep);
    Vector s = sv.head(keep).cast<cxd>();

    // Right site becomes an incoming isometry; centre (singular values) goes
    // to the left site, ready to be shifted onward.
    Matrix center = s.asDiagonal() * v.adjoint();  // keep x (d*dl)
    for (int kr = 0; kr < d; ++kr)
        a[static_cast<std::size_t>(t) + 1][static_cast<std::size_t>(kr)] = u.block(kr * dr, 0, dr, keep);
    for (int kl = 0; kl < d; ++kl)
        a[static_cast<std::size_t>(t)][static_cast<std::size_t>(kl)] = center.block(0, kl * dl, keep, dl);

    shift_center_right(a, d, t);
    return total > 0 ? (total - kept) / total : 0.0;
}

/// One pass over the chain applying `gates[b]` at every bond b where it is
/// non-empty; starts from an all-incoming-isometry chain and returns it to
/// that form. The centre walks left to right.
double gate_sweep(SiteTensors& a, int d, const std::vector<const Matrix*>& gates, int chi_max,
                  double sv_rel_cutoff) {
    const int n = static_cast<int>(a.size());
    double worst = 0;
    for (int b = 0; b < n - 1; ++b) {
        if (gates[static_cast<std::size_t>(b)])
            worst = std::max(worst, apply_gate(a, d, b, *gates[static_cast<std::size_t>(b)],
                                               chi_max, sv_rel_cutoff));
        else
            shift_center_right(a, d, b);
    }
    sweep_incoming(a, d);
    return worst;
}

Mps chain_to_mps(const SiteTensors& a, int d) {
    Vector one = Vector::Ones(1);
    return Mps::finite(d, a, one, one);
}

double chain_energy(const SiteTensors& a, int d, const HamiltonianSpec& spec) {
    Mps psi = chain_to_mps(a, d);
    const int n = psi.length();
    // Left environments in one pass, right environments cached.
    auto renvs = right_environments(psi);
    Matrix lenv = psi.left() * psi.left().adjoint();
    double energy = 0;
    for (int b = 0; b < n - 1; ++b) {
        Matrix h2 = spec.bond_term(b, n);
        const auto& s1 = psi.site(b);
        const auto& s2 = psi.site(b + 1);
        const Matrix& renv = renvs[static_cast<std::size_t>(b) + 2];
        cxd val(0, 0), nrm(0, 0);
        for (int kl = 0; kl < d; ++kl)
            for (int kr = 0; kr < d; ++kr) {
                Matrix ket = s2[static_cast<std::size_t>(kr)] * s1[static_cast<std::size_t>(kl)] * lenv;
                nrm += (ket * (s2[static_cast<std::size_t>(kr)] * s1[static_cast<std::size_t>(kl)]).adjoint() *
                        renv)
                           .trace();
                for (int jl = 0; jl < d; ++jl)
                    for (int jr = 0; jr < d; ++jr) {
                        const cxd o = h2(jl * d + jr, kl * d + kr);
                        if (o == cxd(0, 0)) continue;
                        val += o * (ket *
                                    (s2[static_cast<std::size_t>(jr)] *
                                     s1[static_cast<std::size_t>(jl)])
                                        .adjoint() *
                                    renv)
                                       .trace();
                    }
            }
        energy += (val / nrm).real();
        // advance the left environment past site b
        Matrix next = Matrix::Zero(s1[0].rows(), s1[0].rows());
        for (const auto& m : s1) next += m * lenv * m.adjoint();
        double sc = next.trace().real();
        lenv = next / sc;
    }
    return energy;
}

}  // namespace

TebdResult tebd_ground(const HamiltonianSpec& spec, int n_sites, int chi_max,
                       const TebdSchedule& schedule) {
    require(n_sites >= 3, "tebd_ground: need at least 3 sites");
    require(chi_max >= 1, "tebd_ground: chi_max must be >= 1");
    const int d = spec.site_dim();

    // Seed chain with the boundary vectors folded into the edge tensors.
    SiteTensors a(static_cast<std::size_t>(n_sites));
    Mps seed = spec.initial_state(n_sites);
    for (int t = 0; t < n_sites; ++t) {
        a[static_cast<std::size_t>(t)].resize(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            Matrix m = seed.site(t)[static_cast<std::size_t>(k)];
            if (t == 0) m = m * seed.left();
            if (t == n_sites - 1) m = seed.right().adjoint() * m;
            a[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = m;
        }
    }

    TebdResult result;
    const int nb = n_sites - 1;
    for (double dt : schedule.dts) {
        // Second-order split: half step on even bonds, full on odd, half on even.
        std::vector<Matrix> even_half(static_cast<std::size_t>(nb)), odd_full(static_cast<std::size_t>(nb));
        std::vector<const Matrix*> even_ptr(static_cast<std::size_t>(nb), nullptr),
            odd_ptr(static_cast<std::size_t>(nb), nullptr);
        for (int b = 0; b < nb; ++b) {
            Matrix h2 = spec.bond_term(b, n_sites);
            if (b % 2 == 0) {
                even_half[static_cast<std::size_t>(b)] = hermitian_exp(h2, -dt / 2);
                even_ptr[static_cast<std::size_t>(b)] = &even_half[static_cast<std::size_t>(b)];
            } else {
                odd_full[static_cast<std::size_t>(b)] = hermitian_exp(h2, -dt);
                odd_ptr[static_cast<std::size_t>(b)] = &odd_full[static_cast<std::size_t>(b)];
            }
        }

        double prev_energy = chain_energy(a, d, spec);
        for (int sweep = 0; sweep < schedule.max_sweeps_per_dt; ++sweep) {
            double trunc = 0;
            trunc = std::max(trunc, gate_sweep(a, d, even_ptr, chi_max, schedule.sv_rel_cutoff));
            trunc = std::max(trunc, gate_sweep(a, d, odd_ptr, chi_max, schedule.sv_rel_cutoff));
            trunc = std::max(trunc, gate_sweep(a, d, even_ptr, chi_max, schedule.sv_rel_cutoff));
            double energy = chain_energy(a, d, spec);
            double delta = std::abs(energy - prev_energy);
            result.log.push_back(TebdLogRow{sweep, dt, energy, delta, trunc});
            prev_energy = energy;
            if (delta < schedule.conv_tol) break;
        }
    }

    Mps state = canonicalize(chain_to_mps(a, d));
    result.energy = chain_energy(a, d, spec);
    result.converged = !result.log.empty() && result.log.back().delta < schedule.conv_tol;
    result.state = std::move(state);
    return result;
}

}  // namespace sptwire
