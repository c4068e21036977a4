#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sptwire {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Throwing assertion for API preconditions.
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

/// Throwing check for internal invariants that indicate a numerical failure
/// rather than a caller error.
inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

/// A root of unity exp(2*pi*i * num/den), kept in lowest terms with
/// 0 <= num < den. Cocycle tables, commutator forms and characters are
/// stored in this form so that the exhaustive group-theoretic checks are
/// exact integer arithmetic instead of float comparisons.
struct PhaseFrac {
    std::int64_t num = 0;
    std::int64_t den = 1;

    PhaseFrac() = default;

    static PhaseFrac of(std::int64_t n, std::int64_t d) {
        require(d > 0, "PhaseFrac: denominator must be positive");
        n %= d;
        if (n < 0) n += d;
        const std::int64_t g = std::gcd(n, d);
        PhaseFrac p;
        p.num = n / g;
        p.den = d / g;
        if (p.num == 0) p.den = 1;
        return p;
    }

    static PhaseFrac one() { return PhaseFrac{}; }

    PhaseFrac operator*(const PhaseFrac& o) const {
        // angles add: num/den + o.num/o.den (mod 1)
        const std::int64_t d = std::lcm(den, o.den);
        return of(num * (d / den) + o.num * (d / o.den), d);
    }

    PhaseFrac inverse() const { return of(-num, den); }

    PhaseFrac pow(std::int64_t k) const {
        std::int64_t e = k % den;
        if (e < 0) e += den;
        return of(num * e, den);
    }

    bool operator==(const PhaseFrac& o) const { return num == o.num && den == o.den; }
    bool operator!=(const PhaseFrac& o) const { return !(*this == o); }

    bool is_one() const { return num == 0; }

    /// Multiplicative order as a root of unity.
    std::int64_t order() const { return den; }

    double angle() const { return 2.0 * kPi * static_cast<double>(num) / static_cast<double>(den); }

    cxd value() const { return std::polar(1.0, angle()); }
};

/// Round a unit-modulus complex number to the nearest root of unity of order
/// dividing max_order. Returns the fraction; *defect (if non-null) receives
/// the absolute distance |z - rounded|.
inline PhaseFrac round_phase(cxd z, std::int64_t max_order, double* defect = nullptr) {
    require(max_order >= 1, "round_phase: max_order must be >= 1");
    double a = std::arg(z) / (2.0 * kPi);  // in (-1/2, 1/2]
    std::int64_t n = static_cast<std::int64_t>(std::llround(a * static_cast<double>(max_order)));
    PhaseFrac p = PhaseFrac::of(n, max_order);
    if (defect) *defect = std::abs(z - p.value());
    return p;
}

}  // namespace sptwire
