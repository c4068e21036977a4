#include "sptwire/mps.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>

namespace sptwire {

namespace {

Vector default_boundary(const std::vector<Matrix>& bulk) {
    Matrix sum = Matrix::Zero(bulk[0].rows(), bulk[0].cols());
    for (const auto& a : bulk) sum += a;
    Eigen::JacobiSVD<Matrix> svd(sum, Eigen::ComputeThinV);
    Vector v = svd.matrixV().col(0);
    return fix_phase_convention(v);
}

void check_tensor_shapes(int site_dim, const std::vector<std::vector<Matrix>>& tensors) {
    require(!tensors.empty(), "mps: no site tensors");
    for (std::size_t t = 0; t < tensors.size(); ++t) {
        require(static_cast<int>(tensors[t].size()) == site_dim, "mps: tensor count != site_dim");
        for (const auto& m : tensors[t]) {
            require(m.rows() == tensors[t][0].rows() && m.cols() == tensors[t][0].cols(),
                    "mps: ragged tensor");
        }
        if (t > 0)
            require(tensors[t][0].cols() == tensors[t - 1][0].rows(), "mps: bond mismatch");
    }
}

}  // namespace

Mps Mps::uniform(int site_dim, std::vector<Matrix> bulk, int length, Vector left, Vector right,
                 Gauge gauge) {
    require(length >= 1, "mps: length must be >= 1");
    require(bulk[0].rows() == bulk[0].cols(), "mps: uniform bulk must be square");
    Mps psi;
    psi.site_dim_ = site_dim;
    psi.uniform_ = true;
    psi.length_ = length;
    psi.tensors_ = {std::move(bulk)};
    check_tensor_shapes(site_dim, psi.tensors_);
    require(left.size() == psi.tensors_[0][0].cols(), "mps: left boundary dimension");
    require(right.size() == psi.tensors_[0][0].rows(), "mps: right boundary dimension");
    psi.left_ = std::move(left);
    psi.right_ = std::move(right);
    psi.gauge_ = gauge;
    return psi;
}

Mps Mps::uniform(int site_dim, std::vector<Matrix> bulk, int length, Gauge gauge) {
    Vector b = default_boundary(bulk);
    return uniform(site_dim, std::move(bulk), length, b, b, gauge);
}

Mps Mps::finite(int site_dim, std::vector<std::vector<Matrix>> tensors, Vector left, Vector right,
                Gauge gauge) {
    Mps psi;
    psi.site_dim_ = site_dim;
    psi.uniform_ = false;
    psi.length_ = static_cast<int>(tensors.size());
    psi.tensors_ = std::move(tensors);
    check_tensor_shapes(site_dim, psi.tensors_);
    require(left.size() == psi.tensors_.front()[0].cols(), "mps: left boundary dimension");
    require(right.size() == psi.tensors_.back()[0].rows(), "mps: right boundary dimension");
    psi.left_ = std::move(left);
    psi.right_ = std::move(right);
    psi.gauge_ = gauge;
    return psi;
}

const std::vector<Matrix>& Mps::site(int t) const {
    require(t >= 0 && t < length_, "mps: site index out of range");
    return uniform_ ? tensors_[0] : tensors_[static_cast<std::size_t>(t)];
}

const std::vector<Matrix>& Mps::bulk() const {
    require(uniform_, "mps: bulk() needs a uniform state");
    return tensors_[0];
}

int Mps::max_bond() const {
    int d = 0;
    for (const auto& site : tensors_)
        d = std::max(d, static_cast<int>(std::max(site[0].rows(), site[0].cols())));
    return d;
}

Matrix Mps::contracted(int t, const Vector& psi) const {
    const auto& a = site(t);
    require(psi.size() == site_dim_, "mps: contracted() vector dimension");
    Matrix out = Matrix::Zero(a[0].rows(), a[0].cols());
    for (int k = 0; k < site_dim_; ++k) out += std::conj(psi(k)) * a[static_cast<std::size_t>(k)];
    return out;
}

double Mps::right_canonical_defect() const {
    double worst = 0;
    const std::size_t nt = tensors_.size();
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& a = tensors_[t];
        Matrix s = Matrix::Zero(a[0].rows(), a[0].rows());
        for (const auto& m : a) s += m * m.adjoint();
        worst = std::max(worst, (s - Matrix::Identity(s.rows(), s.cols())).norm());
    }
    return worst;
}

TransferOperator::TransferOperator(std::vector<Matrix> bulk, std::optional<Matrix> twist)
    : bulk_(std::move(bulk)), twist_(std::move(twist)) {
    require(!bulk_.empty() && bulk_[0].rows() == bulk_[0].cols(),
            "transfer: square bulk tensor required");
    d_bond_ = static_cast<int>(bulk_[0].rows());
    if (twist_)
        require(twist_->rows() == static_cast<Eigen::Index>(bulk_.size()) &&
                    twist_->cols() == twist_->rows(),
                "transfer: twist must be d x d");
}

Matrix TransferOperator::apply(const Matrix& x) const {
    Matrix out = Matrix::Zero(d_bond_, d_bond_);
    const int d = static_cast<int>(bulk_.size());
    if (!twist_) {
        for (const auto& a : bulk_) out += a * x * a.adjoint();
    } else {
        for (int k = 0; k < d; ++k) {
            Matrix acc = Matrix::Zero(d_bond_, d_bond_);
            for (int j = 0; j < d; ++j) {
                const cxd u = (*twist_)(k, j);
                if (u != cxd(0, 0)) acc += u * bulk_[static_cast<std::size_t>(j)];
            }
            out += acc * x * bulk_[static_cast<std::size_t>(k)].adjoint();
        }
    }
    return out;
}

Matrix TransferOperator::dense() const {
    const int n = d_bond_ * d_bond_;
    Matrix out = Matrix::Zero(n, n);
    const int d = static_cast<int>(bulk_.size());
    if (!twist_) {
        for (const auto& a : bulk_) out += kron(a.conjugate(), a);
    } else {
        for (int k = 0; k < d; ++k) {
            Matrix acc = Matrix::Zero(d_bond_, d_bond_);
            for (int j = 0; j < d; ++j) {
                const cxd u = (*twist_)(k, j);
                if (u != cxd(0, 0)) acc += u * bulk_[static_cast<std::size_t>(j)];
            }
            out += kron(bulk_[static_cast<std::size_t>(k)].conjugate(), acc);
        }
    }
    return out;
}

std::vector<EigPair> leading_eigs(const TransferOperator& op, int count) {
    const int db = op.bond_dim();
    const int n = db * db;
    count = std::min(count, n);
    std::vector<std::pair<cxd, Vector>> pairs;

    if (db <= 64) {
        Matrix dense = op.dense();
        Eigen::ComplexEigenSolver<Matrix> es(dense);
        ensure(es.info() == Eigen::Success, "leading_eigs: dense eigensolver failed");
        for (int i = 0; i < n; ++i)
            pairs.emplace_back(es.eigenvalues()(i), es.eigenvectors().col(i));
    } else {
        // Orthogonal (block power) iteration on the top block of the spectrum.
        const int block = std::min(n, count + 4);
        std::mt19937_64 rng(20240817);
        Matrix q = random_gaussian(n, block, rng);
        Eigen::HouseholderQR<Matrix> qr0(q);
        q = Matrix(qr0.householderQ()).leftCols(block);
        auto apply_vec = [&](const Vector& v) {
            Matrix x = Eigen::Map<const Matrix>(v.data(), db, db);
            Matrix y = op.apply(x);
            return Vector(Eigen::Map<Vector>(y.data(), n));
        };
        for (int it = 0; it < 5000; ++it) {
            Matrix z(n, block);
            for (int c = 0; c < block; ++c) z.col(c) = apply_vec(q.col(c));
            Eigen::HouseholderQR<Matrix> qr(z);
            Matrix qn = Matrix(qr.householderQ()).leftCols(block);
            double delta = (qn - q * (q.adjoint() * qn)).norm();
            q = qn;
            if (it > 10 && delta < 1e-13) break;
        }
        Matrix proj(n, block);
        for (int c = 0; c < block; ++c) proj.col(c) = apply_vec(q.col(c));
        Matrix small = q.adjoint() * proj;
        Eigen::ComplexEigenSolver<Matrix> es(small);
        ensure(es.info() == Eigen::Success, "leading_eigs: projected eigensolver failed");
        for (int i = 0; i < block; ++i) {
            Vector v = q * es.eigenvectors().col(i);
            cxd lam = es.eigenvalues()(i);
            double resid = (apply_vec(v) - lam * v).norm();
            ensure(i >= count || resid < 1e-8 * std::max(1.0, std::abs(lam)),
                   "leading_eigs: iterative eigenpair residual too large");
            pairs.emplace_back(lam, v);
        }
    }

    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        double ma = std::abs(a.first), mb = std::abs(b.first);
        if (std::abs(ma - mb) > 1e-14 * std::max(1.0, std::max(ma, mb))) return ma > mb;
        if (a.first.real() != b.first.real()) return a.first.real() > b.first.real();
        return a.first.imag() > b.first.imag();
    });

    std::vector<EigPair> out;
    for (int i = 0; i < count; ++i) {
        Vector v = pairs[static_cast<std::size_t>(i)].second;
        v /= v.norm();
        Matrix fp = Eigen::Map<const Matrix>(v.data(), db, db);
        out.push_back(EigPair{pairs[static_cast<std::size_t>(i)].first, fp});
    }
    return out;
}

InjectivityReport injectivity_check(const Mps& psi, double tol_gap) {
    const auto& bulk = psi.bulk();
    TransferOperator e(bulk);
    auto eigs = leading_eigs(e, 2);
    InjectivityReport rep;
    const double l1 = std::abs(eigs[0].value);
    ensure(l1 > 0, "injectivity_check: zero transfer operator");
    rep.gap = (l1 - (eigs.size() > 1 ? std::abs(eigs[1].value) : 0.0)) / l1;

    Matrix x = eigs[0].fixed_point;
    x = (x + Matrix(x.adjoint())) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    double lo = es.eigenvalues().cwiseAbs().minCoeff();
    double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    rep.fixed_point_rank_ratio = hi > 0 ? lo / hi : 0.0;
    rep.injective = rep.gap > tol_gap && rep.fixed_point_rank_ratio > 1e-10;
    return rep;
}

std::optional<Mps> injective_block(const Mps& psi, double invariance_tol, double cluster_tol) {
    Mps canon = canonicalize(psi);
    const auto& bulk = canon.bulk();
    const int db = static_cast<int>(bulk[0].rows());
    TransferOperator e(bulk);
    auto eigs = leading_eigs(e, std::min(db * db, std::max(8, db)));

    // Fixed points in the unit cluster. Candidates are ranked by their
    // distance from 1; the cluster ends at the largest multiplicative jump,
    // which separates exact (fp-noise) fixed points from rotating or
    // truncation-split peripheral modes.
    std::vector<std::pair<double, const EigPair*>> cand;
    for (const auto& p : eigs)
        if (std::abs(p.value - cxd(1, 0)) < cluster_tol)
            cand.emplace_back(std::max(std::abs(p.value - cxd(1, 0)), 1e-8), &p);
    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t cluster_end = cand.size();
    double best_jump = 10.0;  // only cut at jumps above an order of magnitude
    for (std::size_t i = 1; i < cand.size(); ++i) {
        double jump = cand[i].first / cand[i - 1].first;
        if (jump > best_jump) {
            best_jump = jump;
            cluster_end = i;
        }
    }
    std::vector<Matrix> fixed;
    for (std::size_t i = 0; i < cluster_end; ++i) fixed.push_back(cand[i].second->fixed_point);
    if (fixed.size() < 2) return std::nullopt;  // nothing to split

    // Hermitian combinations of the fixed points generically have spectral
    // projectors aligned with the sector decomposition; a few deterministic
    // coefficient draws guard against accidental degeneracies.
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int attempt = 0; attempt < 4; ++attempt) {
        Matrix x = Matrix::Zero(db, db);
        for (const auto& f : fixed) {
            x += coef(rng) * (f + Matrix(f.adjoint()));
            x += coef(rng) * (cxd(0, 1) * (f - Matrix(f.adjoint())));
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(x);

        std::vector<std::pair<int, int>> clusters;  // [begin, end)
        int begin = 0;
        const double scale = std::max(1e-12, es.eigenvalues().cwiseAbs().maxCoeff());
        for (int i = 1; i <= db; ++i) {
            if (i == db || es.eigenvalues()(i) - es.eigenvalues()(i - 1) > 1e-3 * scale) {
                clusters.emplace_back(begin, i);
                begin = i;
            }
        }
        if (clusters.size() < 2) continue;

        for (auto [lo, hi] : clusters) {
            const int r = hi - lo;
            if (r == db) continue;
            Matrix q = es.eigenvectors().middleCols(lo, r);  // db x r isometry
            bool invariant = true;
            for (const auto& a : bulk) {
                Matrix residual = a * q - q * (q.adjoint() * a * q);
                if (residual.norm() > invariance_tol * std::sqrt(static_cast<double>(db))) {
                    invariant = false;
                    break;
                }
            }
            if (!invariant) continue;
            std::vector<Matrix> restricted;
            restricted.reserve(bulk.size());
            for (const auto& a : bulk) restricted.push_back(q.adjoint() * a * q);
            Mps block;
            try {
                block = canonicalize(
                    Mps::uniform(canon.site_dim(), std::move(restricted), canon.length()));
            } catch (const std::exception&) {
                continue;
            }
            if (injectivity_check(block, cluster_tol).injective) return block;
            if (auto deeper = injective_block(block, invariance_tol, cluster_tol)) return deeper;
        }
    }
    return std::nullopt;
}

namespace {

Mps canonicalize_uniform_right(const Mps& psi) {
    const auto& bulk = psi.bulk();
    TransferOperator e(bulk);
    auto eigs = leading_eigs(e, 1);
    double lambda = std::abs(eigs[0].value);
    ensure(lambda > 1e-14, "canonicalize: zero-norm uniform state");
    ensure(std::abs(eigs[0].value.imag()) < 1e-9 * lambda,
           "canonicalize: leading transfer eigenvalue is not positive");

    Matrix x = eigs[0].fixed_point;
    x = (x + Matrix(x.adjoint())) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    if (es.eigenvalues().sum() < 0) {
        x = -x;
        es.compute(x);
    }
    ensure(es.eigenvalues().minCoeff() > -1e-9,
           "canonicalize: leading fixed point not positive semidefinite");
    RealVector ev = es.eigenvalues().cwiseMax(1e-14);
    Matrix w_inv_sqrt = es.eigenvectors() *
                        ev.cwiseSqrt().cwiseInverse().cast<cxd>().asDiagonal() *
                        es.eigenvectors().adjoint();
    Matrix w_sqrt = es.eigenvectors() * ev.cwiseSqrt().cast<cxd>().asDiagonal() *
                    es.eigenvectors().adjoint();

    std::vector<Matrix> out;
    out.reserve(bulk.size());
    for (const auto& a : bulk) out.push_back(w_inv_sqrt * a * w_sqrt / std::sqrt(lambda));

    Vector l = w_inv_sqrt * psi.left();
    Vector r = w_sqrt * psi.right();
    if (l.norm() > 0) l /= l.norm();
    if (r.norm() > 0) r /= r.norm();
    Mps res = Mps::uniform(psi.site_dim(), std::move(out), psi.length(), l, r,
                           Mps::Gauge::right_canonical);
    ensure(res.right_canonical_defect() < 1e-9, "canonicalize: uniform gauge fix failed");
    return res;
}

Mps canonicalize_finite_right(const Mps& psi) {
    const int n = psi.length();
    const int d = psi.site_dim();
    std::vector<std::vector<Matrix>> tensors;
    tensors.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) tensors.push_back(psi.site(t));
    Vector left = psi.left();
    Vector right = psi.right();

    Matrix carry;  // lower-triangular factor to absorb into the next site
    for (int t = 0; t < n; ++t) {
        if (t > 0)
            for (auto& m : tensors[static_cast<std::size_t>(t)]) m = m * carry;
        const int rows = static_cast<int>(tensors[static_cast<std::size_t>(t)][0].rows());
        const int cols = static_cast<int>(tensors[static_cast<std::size_t>(t)][0].cols());
        Matrix m(rows, d * cols);
        for (int k = 0; k < d; ++k)
            m.block(0, k * cols, rows, cols) = tensors[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
        // LQ via QR of the adjoint: M = L Q with Q Q^dagger = I.
        Eigen::HouseholderQR<Matrix> qr(m.adjoint());
        const int r = std::min<int>(rows, d * cols);
        Matrix qthin = Matrix(qr.householderQ()).leftCols(r);
        Matrix rfac = Matrix(qr.matrixQR().topRows(r).triangularView<Eigen::Upper>());
        Matrix q = qthin.adjoint();  // r x (d*cols)
        Matrix l = rfac.adjoint();   // rows x r
        for (int k = 0; k < d; ++k)
            tensors[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = q.block(0, k * cols, r, cols);
        carry = l;
    }
    right = carry.adjoint() * right;
    ensure(right.norm() > 1e-300, "canonicalize: zero-norm state");

    Mps res = Mps::finite(d, std::move(tensors), left, right, Mps::Gauge::right_canonical);
    ensure(res.right_canonical_defect() < 1e-9, "canonicalize: sweep failed");
    return res;
}

Mps mirror(const Mps& psi) {
    // Reverse the chain and transpose each tensor; the boundary vectors swap.
    std::vector<std::vector<Matrix>> tensors;
    for (int t = psi.length() - 1; t >= 0; --t) {
        std::vector<Matrix> site;
        for (const auto& m : psi.site(t)) site.push_back(m.transpose());
        tensors.push_back(std::move(site));
    }
    return Mps::finite(psi.site_dim(), std::move(tensors), psi.right().conjugate(),
                       psi.left().conjugate());
}

}  // namespace

Mps canonicalize(const Mps& psi, Mps::Gauge side) {
    require(side != Mps::Gauge::none, "canonicalize: pick a side");
    if (side == Mps::Gauge::right_canonical)
        return psi.is_uniform() ? canonicalize_uniform_right(psi) : canonicalize_finite_right(psi);
    require(!psi.is_uniform(), "canonicalize: left-canonical only for finite chains");
    Mps m = canonicalize(mirror(psi), Mps::Gauge::right_canonical);
    Mps out = mirror(m);
    std::vector<std::vector<Matrix>> ts;
    for (int t = 0; t < out.length(); ++t) ts.push_back(out.site(t));
    return Mps::finite(out.site_dim(), std::move(ts), out.left(), out.right(),
                       Mps::Gauge::left_canonical);
}

Vector to_statevector(const Mps& psi) {
    const int n = psi.length();
    const int d = psi.site_dim();
    double logdim = n * std::log2(static_cast<double>(d));
    require(logdim <= 20.0 + 1e-9, "to_statevector: d^N exceeds the 2^20 guard");

    Eigen::Index dim = 1;
    for (int t = 0; t < n; ++t) dim *= d;

    Matrix m = psi.left().transpose();  // rows: prefix strings, cols: bond
    for (int t = 0; t < n; ++t) {
        const auto& site = psi.site(t);
        const Eigen::Index rows = m.rows();
        Matrix next(rows * d, site[0].rows());
        for (int k = 0; k < d; ++k) {
            Matrix blk = m * site[static_cast<std::size_t>(k)].transpose();
            for (Eigen::Index p = 0; p < rows; ++p) next.row(p * d + k) = blk.row(p);
        }
        m = std::move(next);
    }
    ensure(m.rows() == dim, "to_statevector: contraction shape error");
    return m * psi.right().conjugate();
}

Mps gauge_transform(const Mps& psi, const Matrix& w) {
    require(unitarity_defect(w) < 1e-10, "gauge_transform: W must be unitary");
    auto rot = [&](const std::vector<Matrix>& site) {
        std::vector<Matrix> out;
        out.reserve(site.size());
        for (const auto& m : site) {
            require(m.rows() == w.rows() && m.cols() == w.rows(),
                    "gauge_transform: bond dimension mismatch");
            out.push_back(w * m * w.adjoint());
        }
        return out;
    };
    if (psi.is_uniform())
        return Mps::uniform(psi.site_dim(), rot(psi.bulk()), psi.length(), w * psi.left(),
                            w * psi.right(), psi.gauge());
    std::vector<std::vector<Matrix>> tensors;
    for (int t = 0; t < psi.length(); ++t) tensors.push_back(rot(psi.site(t)));
    return Mps::finite(psi.site_dim(), std::move(tensors), w * psi.left(), w * psi.right(),
                       psi.gauge());
}

std::vector<Matrix> right_environments(const Mps& psi) {
    const int n = psi.length();
    std::vector<Matrix> envs(static_cast<std::size_t>(n) + 1);
    envs[static_cast<std::size_t>(n)] = psi.right() * psi.right().adjoint();
    for (int t = n - 1; t >= 0; --t) {
        const auto& site = psi.site(t);
        Matrix e = Matrix::Zero(site[0].cols(), site[0].cols());
        for (const auto& a : site) e += a.adjoint() * envs[static_cast<std::size_t>(t) + 1] * a;
        envs[static_cast<std::size_t>(t)] = std::move(e);
    }
    return envs;
}

double norm(const Mps& psi) {
    auto envs = right_environments(psi);
    cxd n2 = psi.left().adjoint() * envs[0] * psi.left();
    return std::sqrt(std::max(0.0, n2.real()));
}

cxd overlap(const Mps& a, const Mps& b) {
    require(a.length() == b.length() && a.site_dim() == b.site_dim(),
            "overlap: incompatible states");
    Matrix env = a.right() * b.right().adjoint();  // D_a x D_b
    for (int t = a.length() - 1; t >= 0; --t) {
        const auto& sa = a.site(t);
        const auto& sb = b.site(t);
        Matrix next = Matrix::Zero(sa[0].cols(), sb[0].cols());
        for (int k = 0; k < a.site_dim(); ++k)
            next += sa[static_cast<std::size_t>(k)].adjoint() * env *
                    sb[static_cast<std::size_t>(k)];
        env = std::move(next);
    }
    return (a.left().adjoint() * env * b.left()).value();
}

cxd expectation_two_site(const Mps& psi, int t, const Matrix& op) {
    const int d = psi.site_dim();
    require(op.rows() == d * d && op.cols() == d * d, "expectation_two_site: operator shape");
    require(t >= 0 && t + 1 < psi.length(), "expectation_two_site: bond out of range");

    Matrix lenv = psi.left() * psi.left().adjoint();
    for (int s = 0; s < t; ++s) {
        const auto& site = psi.site(s);
        Matrix next = Matrix::Zero(site[0].rows(), site[0].rows());
        for (const auto& a : site) next += a * lenv * a.adjoint();
        lenv = std::move(next);
    }
    Matrix renv = psi.right() * psi.right().adjoint();
    for (int s = psi.length() - 1; s > t + 1; --s) {
        const auto& site = psi.site(s);
        Matrix next = Matrix::Zero(site[0].cols(), site[0].cols());
        for (const auto& a : site) next += a.adjoint() * renv * a;
        renv = std::move(next);
    }

    const auto& s1 = psi.site(t);
    const auto& s2 = psi.site(t + 1);
    cxd val(0, 0), nrm(0, 0);
    for (int kl = 0; kl < d; ++kl)
        for (int kr = 0; kr < d; ++kr) {
            Matrix ket =
                s2[static_cast<std::size_t>(kr)] * s1[static_cast<std::size_t>(kl)] * lenv;
            nrm += (ket *
                    (s2[static_cast<std::size_t>(kr)] * s1[static_cast<std::size_t>(kl)]).adjoint() *
                    renv)
                       .trace();
            for (int jl = 0; jl < d; ++jl)
                for (int jr = 0; jr < d; ++jr) {
                    const cxd o = op(jl * d + jr, kl * d + kr);
                    if (o == cxd(0, 0)) continue;
                    val += o *
                           (ket *
                            (s2[static_cast<std::size_t>(jr)] * s1[static_cast<std::size_t>(jl)])
                                .adjoint() *
                            renv)
                               .trace();
                }
        }
    ensure(std::abs(nrm) > 1e-300, "expectation_two_site: zero norm");
    return val / nrm;
}

}  // namespace sptwire
