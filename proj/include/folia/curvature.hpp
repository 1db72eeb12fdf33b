// Curvature tensors, the Weitzenboeck Ricci terms, the Q tensor, the
// horizontal curvature operator, the scaling expansion of the adjoint
// curvature, the canonical-variation Ricci table, and the adjoint-connection
// identities used to cross-check all of it.

#pragma once

#include "folia/connections.hpp"
#include "folia/linalg.hpp"

namespace folia {

struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

// comp[a][b][c][d] = <R(E_a,E_b) E_c, E_d>, jet-valued
struct CurvatureTensor {
    std::vector<std::vector<std::vector<std::vector<Jet>>>> comp;

    static CurvatureTensor zeros(int t) {
        CurvatureTensor r;
        r.comp.assign(
            t, std::vector<std::vector<std::vector<Jet>>>(
                   t, std::vector<std::vector<Jet>>(t, std::vector<Jet>(t, Jet::zero()))));
        return r;
    }
    const Jet& at(int a, int b, int c, int d) const { return comp[a][b][c][d]; }
};

CurvatureTensor curvature(const ConnectionCoeffs& conn, const FrameSpec& spec);

// Adjoint curvature of nabla^eps, computed three ways and cross-checked:
// from the adjoint connection coefficients, from the adjoint-curvature
// identity applied to nabla^eps, and from the 1/eps scaling expansion in Bott
// data.  A mismatch is an implementation fault and throws.
CurvatureTensor adjoint_curvature(const FrameSpec& spec, const Epsilon& eps);

// First Bianchi residual for a connection: cyclic R(a,b)c minus cyclic
// T(T(a,b),c) minus cyclic (nabla_a T)(b,c); zero for every connection.
Jet bianchi_residual(const FrameSpec& spec, const ConnectionCoeffs& conn,
                     const CurvatureTensor& r, const TorsionTensor& t, int a, int b, int c, int d);
// Table-sharing variant for tuple sweeps.
Jet bianchi_residual(const CurvatureTensor& r, const TorsionTensor& t, const Tensor4& nabla_t,
                     int total, int a, int b, int c, int d);

struct RicTerms {
    MixedJet ric11;
    MixedJet ric22;
    MixedJet total; // ric11 + ric22
};

// Weitzenboeck terms from the adjoint curvature of nabla^eps; eps = inf gives Ric_H.
RicTerms ric_terms(const FrameSpec& spec, const Epsilon& eps);
RicTerms ric_terms_from_curvature(const FrameSpec& spec, const CurvatureTensor& rhat);

struct QTensor {
    QMatrix op;         // (n+m)^2, rows/cols over covector frame
    bool symmetric;     // exceptional unless Yang-Mills
    double min_eig_sym; // positivity gate for the one-form vanishing criterion
};
QTensor q_tensor(const FrameSpec& spec);

struct HorizontalCurvatureOperator {
    std::vector<std::pair<int, int>> basis; // pairs i<j indexing theta_i ^ theta_j
    QMatrix op;
    double min_eig_sym;
    Q max_asym; // largest |op - op^T| entry, exact
};
HorizontalCurvatureOperator horizontal_curvature_operator(const FrameSpec& spec);

struct VerticalParallelTorsion {
    bool parallel;        // nabla_Z T = 0 at the point for all vertical Z
    Q equivalence_residual; // max |<(nabla_Z T)(X,Y),W> - <R(X,Y)Z,W>|
};
VerticalParallelTorsion vertical_parallel_torsion(const FrameSpec& spec);

// B_1(a,b) = (nabla_a J)_b - (nabla_b J)_a, B_2(a,b) = J_{T(a,b)},
// B_3(a,b) = [J_a, J_b]; elements of Psi_(2,2) normalized so that
// Ric^eps = Ric_H + (1/eps)(B1 + B2 + B1v + B2v) + (1/eps^2) B3 exactly,
// with the checked (1,1) parts Bjv built the same way as Ric_{1,1}.
using OpBox = std::vector<std::vector<std::vector<std::vector<Jet>>>>; // [t][t][n][n or t]

struct ScalingExpansion {
    MixedJet b1, b2, b3;    // Psi_(2,2) elements
    MixedJet b1v, b2v, b3v; // checked Psi_(1,1) parts; b3v is identically zero
    OpBox op1, op2, op3;    // operator tables B_j(a,b): H -> H
};
ScalingExpansion scaling_expansion(const FrameSpec& spec);

// Full Ricci table of g_eps via the constant-structure Levi-Civita Koszul
// oracle (values at the point).  Requires a homogeneous spec.
QMatrix ricci_canonical_variation(const FrameSpec& spec, const Epsilon& eps);
// The same table assembled from engine tensors through the canonical-variation
// block formula; defined for any spec.
QMatrix ricci_blocks_from_engine(const FrameSpec& spec, const Epsilon& eps);
// Ricci curvature of the leaves through the leaf-frame Koszul oracle.
QMatrix ricci_vertical(const FrameSpec& spec);

// Residual of the adjoint-pair commutation identity for a metric connection,
// evaluated on the frame 4-tuple (a,b,c,d); also works for the Bott case.
struct MetricCommutationData {
    CurvatureTensor r;
    TorsionTensor tt;
    TorsionTensor a_map; // A(x,y) = T(x,y) - J_x y - J_y x
    Tensor4 nabla_a;
};
MetricCommutationData metric_commutation_data(const FrameSpec& spec, const ConnectionCoeffs& conn);
Jet metric_connection_commutation(const MetricCommutationData& data, int total, int a, int b,
                                  int c, int d);
Jet metric_connection_commutation(const FrameSpec& spec, const ConnectionCoeffs& conn, int a,
                                  int b, int c, int d);

// Minimum Rayleigh quotient of C_{Ric_H} on each (i,j) fiber with 0 < i < n;
// the vanishing criteria consume the minimum as their computed constant.
struct FiberPositivity {
    std::map<std::pair<int, int>, double> fiber_min;
    double c1; // min over fibers
};
FiberPositivity ric_fiber_positivity(const FrameSpec& spec);

// nu_0 from the positivity proof; its C operator vanishes on horizontal forms.
MixedJet nu0_element(const FrameSpec& spec);

// Matrix of C_nu on the full exterior fiber in the monomial basis (values).
QMatrix c_operator_matrix(const FrameSpec& spec, const MixedJet& nu);

} // namespace folia
