#include "sptwire/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sptwire {

Matrix kron_all(const std::vector<Matrix>& factors) {
    require(!factors.empty(), "kron_all: empty factor list");
    Matrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
    return out;
}

Matrix polar_unitary(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

double unitarity_defect(const Matrix& m) {
    return (m - polar_unitary(m)).norm();
}

double phase_adjusted_distance(const Matrix& a, const Matrix& b, cxd* best_phase) {
    const cxd ip = (b.adjoint() * a).trace();  // <b, a>; minimiser is its phase
    cxd phase = std::abs(ip) > 0 ? ip / std::abs(ip) : cxd(1, 0);
    if (best_phase) *best_phase = phase;
    return (a - phase * b).norm();
}

Matrix fix_phase_convention(const Matrix& m, double tol) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j)) > tol) {
                cxd ph = m(i, j) / std::abs(m(i, j));
                return m / ph;
            }
    return m;
}

Vector fix_phase_convention(const Vector& v, double tol) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > tol) return v / (v(i) / std::abs(v(i)));
    return v;
}

Matrix hermitian_exp(const Matrix& h, double scale) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    ensure(es.info() == Eigen::Success, "hermitian_exp: eigendecomposition failed");
    Vector ev = (scale * es.eigenvalues().array()).exp().matrix().cast<cxd>();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cxd(dist(rng), dist(rng));
    return m;
}

Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    Matrix g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        cxd d = r(i, i);
        q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : cxd(1, 0);
    }
    return q;
}

Matrix random_density(Eigen::Index n, std::mt19937_64& rng) {
    Matrix g = random_gaussian(n, n, rng);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace();
}

int schmidt_rank(const Vector& v, Eigen::Index da, Eigen::Index db, double rel_tol) {
    require(v.size() == da * db, "schmidt_rank: dimension mismatch");
    Matrix m = Eigen::Map<const Matrix>(v.data(), db, da).transpose();  // row = a index
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++rank;
    return rank;
}

cxd principal_root(cxd c, int n) {
    require(n >= 1, "principal_root: n must be >= 1");
    double theta = std::arg(c);  // (-pi, pi]
    if (theta < 0) theta += 2.0 * kPi;
    double best = 0.0;
    bool found = false;
    for (int k = 0; k < n; ++k) {
        double a = (theta + 2.0 * kPi * k) / n;
        a = std::fmod(a, 2.0 * kPi);
        if (a < 0) a += 2.0 * kPi;
        if (!found || a < best) {
            best = a;
            found = true;
        }
    }
    return std::polar(1.0, best);
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, cxd(0, -1), cxd(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix clock_shift_x(int d) {
    Matrix m = Matrix::Zero(d, d);
    for (int b = 0; b < d; ++b) m((b + 1) % d, b) = 1;
    return m;
}

Matrix clock_z(int d) {
    Matrix m = Matrix::Zero(d, d);
    for (int b = 0; b < d; ++b) m(b, b) = std::polar(1.0, 2.0 * kPi * b / d);
    return m;
}

}  // namespace sptwire
