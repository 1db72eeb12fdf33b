// The Bott connection, the epsilon family and its adjoints, torsion, the
// J-map, the horizontal divergence of torsion, and covariant differentiation
// of jet-valued forms and tensors.  Connections are materialized coefficient
// tables so curvature and Weitzenboeck terms can reuse them exactly.

#pragma once

#include "folia/frames.hpp"

namespace folia {

using FormField = Form<Jet>;
using MixedJet = MixedTensor<Jet>;

// nabla_{E_a} E_b = sum_c coeff[a][b][c] E_c
struct ConnectionCoeffs {
    std::vector<std::vector<std::vector<Jet>>> coeff;

    static ConnectionCoeffs zeros(int total) {
        ConnectionCoeffs c;
        c.coeff.assign(total, std::vector<std::vector<Jet>>(total, std::vector<Jet>(total, Jet::zero())));
        return c;
    }
    const Jet& at(int a, int b, int c) const { return coeff[a][b][c]; }
};

// T(E_a, E_b) = sum_c comp[a][b][c] E_c
struct TorsionTensor {
    std::vector<std::vector<std::vector<Jet>>> comp;

    static TorsionTensor zeros(int total) {
        TorsionTensor t;
        t.comp.assign(total, std::vector<std::vector<Jet>>(total, std::vector<Jet>(total, Jet::zero())));
        return t;
    }
    const Jet& at(int a, int b, int c) const { return comp[a][b][c]; }
};

// J_{Z_l} X_i = sum_j comp[l][i][j] X_j, skew in (i,j); zero on horizontal
// subscripts and on vertical arguments.
struct JMap {
    std::vector<std::vector<std::vector<Jet>>> comp; // [m][n][n]
    const Jet& at(int l, int i, int j) const { return comp[l][i][j]; }
};

ConnectionCoeffs bott_connection(const FrameSpec& spec);
TorsionTensor torsion(const ConnectionCoeffs& conn, const FrameSpec& spec);
JMap j_map(const FrameSpec& spec);

// nabla^eps_X Y = nabla_X Y - T(X,Y) + (1/eps) J_Y X
ConnectionCoeffs epsilon_connection(const FrameSpec& spec, const Epsilon& eps);
// hat nabla^eps_X Y = nabla_X Y + (1/eps) J_X Y
ConnectionCoeffs adjoint_connection(const FrameSpec& spec, const Epsilon& eps);

// delta_H T as a (1,1) tensor: X_i |-> sum_c comp[i][c] E_c (values land in V
// for the Bott connection).  Computed with Bott data.
struct DivTorsion {
    std::vector<std::vector<Jet>> comp; // [n][n+m]
};
DivTorsion horizontal_divergence_torsion(const FrameSpec& spec);
bool yang_mills(const FrameSpec& spec);

// Everything Bott-derived that downstream modules reuse.
struct BottPackage {
    ConnectionCoeffs conn;
    TorsionTensor tor;
    JMap j;
    DivTorsion div_t;
};
BottPackage bott_package(const FrameSpec& spec);

// Covariant derivative of a jet-coefficient form along frame direction a.
FormField covariant_derivative(const FrameAlgebra& fa, const ConnectionCoeffs& conn, int a,
                               const FormField& f);
// Along a vector with jet components.
FormField covariant_derivative(const FrameAlgebra& fa, const ConnectionCoeffs& conn,
                               const std::vector<Jet>& dir, const FormField& f);
// Multivector variant (coframe replaced by frame, sign flipped).
MultiVector<Jet> covariant_derivative_vecfield(const FrameAlgebra& fa, const ConnectionCoeffs& conn,
                                               int a, const MultiVector<Jet>& f);
// Mixed tensors, Leibniz over both factors.
MixedJet covariant_derivative_mixed(const FrameAlgebra& fa, const ConnectionCoeffs& conn, int a,
                                    const MixedJet& nu);

// (nabla_a T)(b, c) components of a vector-valued 2-tensor.
std::vector<Jet> nabla_tensor12(const FrameAlgebra& fa, const ConnectionCoeffs& conn,
                                const TorsionTensor& t, int a, int b, int c);

// Full table [a][b][c][d] of (nabla_a T)(b,c)^d; shares the frame derivatives
// across the identity checks that sweep every tuple.
using Tensor4 = std::vector<std::vector<std::vector<std::vector<Jet>>>>;
Tensor4 nabla_tensor12_table(const FrameAlgebra& fa, const ConnectionCoeffs& conn,
                             const TorsionTensor& t);

// Metricity residuals; all components must vanish for valid input.
// For g: coeff[a][b][c] + coeff[a][c][b].
Jet metric_residual_g(const ConnectionCoeffs& conn, int a, int b, int c);
// For g_eps: weights 1 on H, 1/eps on V.
Jet metric_residual_geps(const ConnectionCoeffs& conn, const Dims& d, const Epsilon& eps, int a,
                         int b, int c);

} // namespace folia
