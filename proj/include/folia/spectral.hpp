// Finite-dimensional realization of the horizontal Laplacian on invariant
// (constant-coefficient) forms over homogeneous models: heat semigroup,
// Garding constant, decay of closed forms, and cohomology-vanishing verdicts.

#pragma once

#include "folia/laplacians.hpp"

namespace folia {

struct InvariantOperator {
    int k = 0;
    Epsilon eps;
    std::vector<Mask> basis; // ascending mask order
    QMatrix mat;             // Delta_{H,eps} columns over the basis, exact
    QMatrix gram;            // g_eps Gram (diagonal), finite eps only
};

// Requires a homogeneous spec; the constant-structure generator preserves
// constant-coefficient forms, which is checked during assembly.
InvariantOperator invariant_matrix(const FrameSpec& spec, const Epsilon& eps, int k);

// d restricted to invariant forms, as a matrix from degree k to k+1.
QMatrix invariant_d_matrix(const FrameSpec& spec, int k);

// e^{tA} by eigendecomposition, falling back to scaling-and-squaring when the
// eigenbasis is ill-conditioned.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

// Heat action on coefficient vectors; t >= 0.
Eigen::VectorXd heat_apply(const InvariantOperator& op, double t, const Eigen::VectorXd& a);

// Largest eigenvalue of the g_eps-symmetrized operator.
double garding_constant(const InvariantOperator& op);

// <Delta a, b>_eps symmetric as a matrix statement: A^T G = G A, exact.
bool symmetric_in_geps(const InvariantOperator& op);

// Curvature-data lower bound for closed one-forms: minimum generalized
// eigenvalue of the quadratic form
//   <Ric_H a,a> + (1/eps)<J^2 a,a> - <delta_H T a,a>_V - 1/4 Tr_H(J^2_a)
// against |a|^2_eps on the covector fiber.
double one_form_curvature_constant(const FrameSpec& spec, const Epsilon& eps);

// Operator-norm constants M_j of C_{B_j + B_j-check} on the full fiber.
struct MjConstants {
    double m1, m2, m3;
};
MjConstants mj_constants(const FrameSpec& spec);

// k-form gate constant c1 - M1/sqrt(eps) - (M2+M3)/eps from the fiber
// positivity and the scaling bound; meaningful for m < k < n.
double kform_gate_constant(const FrameSpec& spec, const Epsilon& eps);

// Doubling sweep from eps = 1 until the relevant gate constant is positive;
// nullopt when the cap 2^20 is reached.
std::optional<Epsilon> auto_epsilon(const FrameSpec& spec, int k);

struct DecayReport {
    bool gate_passed = false;
    std::string gate; // which bound produced the constant
    Epsilon eps;
    double rate = 0.0;          // c_eps, the certified decay rate
    int closed_dim = 0;         // dimension of ker d on invariant k-forms
    double max_violation = 0.0; // max over the t-grid of |a_t|_eps - e^{-ct}|a|_eps
    double exactness_residual = 0.0;
    double spectral_gap = 0.0;  // measured gap of -sym(Delta) on the closed subspace
};
DecayReport closed_form_decay(const FrameSpec& spec, const Epsilon& eps, int k,
                              const std::vector<double>& t_grid = {1, 2, 5, 10});

enum class VerdictStatus { VANISHES, NO_CONCLUSION };

struct DegreeVerdict {
    int k = 0;
    VerdictStatus status = VerdictStatus::NO_CONCLUSION;
    std::string certificate; // which statement and constants carried the verdict
};

struct CohomologyVerdict {
    std::vector<DegreeVerdict> degrees;
    double q_min_eig = 0.0;
    double rh_min_eig = 0.0;
    bool vertical_parallel = false;
    bool compact_claim = false;
    bool valid = false;
    std::string assumptions; // standing analytic assumptions quoted in reports
};
CohomologyVerdict cohomology_verdict(const FrameSpec& spec);

} // namespace folia
