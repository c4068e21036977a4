#pragma once

#include "sptwire/model_states.hpp"
#include "sptwire/mps.hpp"
#include "sptwire/projrep.hpp"
#include "sptwire/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sptwire {

/// || V(g)^dag A[k] V(g) - beta sum_j [u(g)]_{kj} A[j] ||, Frobenius over the
/// stacked physical index.
double eq2_residual(const std::vector<Matrix>& bulk, const OnsiteSymmetry& sym,
                    const ProjectiveRep& v, int g, cxd beta = cxd(1, 0));

struct TwistedEig {
    cxd lambda;
    Matrix fixed_point;       // Frobenius-normalised
    double unitarity_defect;  // distance of sqrt(D) * X^dag from unitary
};

/// Leading eigenpair of E_g(X) = sum_{k,j} [u(g)]_{kj} A[j] X A[k]^dag. For a
/// right-canonical symmetric bulk the fixed point is V(g)^dag up to phase and
/// |lambda| = 1.
TwistedEig twisted_transfer_leading(const std::vector<Matrix>& bulk, const Matrix& u);

struct ExtractTolerances {
    double tol_sym = 1e-8;          // |lambda_g| shortfall treated as asymmetry
    double tol_unitary = 1e-8;      // fixed-point unitarity defect
    double tol_gap = 1e-6;          // injectivity gap
    double tol_round = 1e-8;        // kappa rounding distance
    double near_degenerate = 1e-8;  // transfer eigenvalues this close to 1 form
                                    // one sector cluster (block splitting)
    static ExtractTolerances exact() { return {}; }
    static ExtractTolerances tebd() { return {1e-4, 1e-3, 1e-6, 1e-4, 0.05}; }
};

enum class ExtractVerdict {
    ok,                // maximally non-commutative class, full data
    class_degenerate,  // symmetric but kappa has a non-trivial radical
    not_symmetric,     // some |lambda_g| < 1 - tol_sym
    not_injective,
};

const char* to_string(ExtractVerdict v);

struct SymmetryData {
    ProjectiveRep rep;               // gauge-normalised V (raw polar factors if degenerate)
    std::vector<cxd> beta;           // per g
    FactorSystem omega;              // exact normal-form table (trivial if degenerate)
    CommutatorForm kappa;            // exact
    SymplecticBasis basis;           // empty if degenerate
    bool max_noncommutative = false;
    std::string class_label;
    std::vector<double> residuals;   // Eq.-(2) residual per g, with the final V
    std::vector<cxd> lambda;         // twisted leading eigenvalues
    double unitarity_defect = 0;     // worst fixed-point defect
    double round_defect = 0;         // worst kappa rounding distance
};

struct ExtractionOutcome {
    ExtractVerdict verdict = ExtractVerdict::not_injective;
    std::string message;
    InjectivityReport injectivity;
    std::optional<SymmetryData> data;  // present for ok / class_degenerate

    bool ok() const { return verdict == ExtractVerdict::ok; }
};

/// Recover V(g), beta(g), omega, kappa and the class verdict from a uniform
/// symmetric MPS (Eq. (2) realised through twisted transfer fixed points).
/// The input is re-canonicalised internally.
ExtractionOutcome extract(const Mps& psi, const OnsiteSymmetry& sym,
                          const ExtractTolerances& tol = {});

/// Phase label from the commutator form: "trivial", "nondegenerate(...)" with
/// the invariant factors of the base group H (kappa ~ H x H*), or
/// "partial(...)" with the invariant factors of the image of g -> kappa(g,.).
std::string classify(const CommutatorForm& kappa);

/// Uniform right-canonical bulk representative of a finite chain: the
/// right-canonical site tensors over the middle third (matching square
/// shapes) are averaged and the result re-canonicalised. Boundary and
/// averaging error surfaces in the downstream Eq.-(2) residual.
Mps uniform_bulk_tensor(const Mps& finite_chain);

}  // namespace sptwire
