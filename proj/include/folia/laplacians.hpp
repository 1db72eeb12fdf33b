// The exterior derivative in frame form, the horizontal codifferential, the
// two constructions of the horizontal Laplacian on forms, and the pointwise
// identity and inequality checks built on them.
//
// Everything expensive that depends only on (spec, eps) lives in a
// LaplacianContext so identity trials can share it.

#pragma once

#include "folia/curvature.hpp"

namespace folia {

struct LaplacianContext {
    FrameSpec spec;
    Epsilon eps;
    FrameAlgebra fa;
    BottPackage bott;
    ConnectionCoeffs eps_conn;
    MixedJet torsion_element; // T as a Psi_(2,1) element, drives C_T in d
    RicTerms ric_eps;         // Weitzenboeck term of nabla^eps
    RicTerms ric_h;           // the adiabatic-limit value Ric_H

    LaplacianContext(const FrameSpec& s, const Epsilon& e);
};

// d = C_T + sum_a theta^a ^ nabla^{Bott}_{E_a}; degree +1, jet order -1.
FormField exterior_derivative(const LaplacianContext& ctx, const FormField& a);
// delta_{H,eps} = -sum_i iota_{X_i} nabla^eps_{X_i}; degree -1, jet order -1.
FormField codifferential(const LaplacianContext& ctx, const FormField& a);
// -d delta - delta d
FormField hodge_laplacian(const LaplacianContext& ctx, const FormField& a);
// sum_i (nabla^eps_{X_i})^2 - nabla^eps_{nabla^eps_{X_i} X_i}
FormField connection_laplacian(const LaplacianContext& ctx, const FormField& a);
// connection laplacian minus C_{Ric^eps}
FormField bochner_laplacian(const LaplacianContext& ctx, const FormField& a);

// Convenience wrappers building a one-shot context.
FormField exterior_derivative(const FrameSpec& spec, const FormField& a);
FormField hodge_laplacian(const FrameSpec& spec, const Epsilon& eps, const FormField& a);
FormField bochner_laplacian(const FrameSpec& spec, const Epsilon& eps, const FormField& a);

// d Delta_H f - Delta_{H,eps} df as a one-form field; zero when the
// commutator constraints hold.
FormField commutation_check(const LaplacianContext& ctx, const Jet& f);

// One-form operator reconciliation: hodge laplacian minus the first-order
// formula -(nabla_H^eps)^* nabla_H^eps + (1/eps) delta_H T - (1/eps) J^2 - Ric_H.
FormField oneform_formula_residual(const LaplacianContext& ctx, const FormField& a);

struct BochnerReport {
    Q lhs;              // 1/2 Delta_H |a|^2_eps - <Delta a, a>_eps at the point
    Q grad_sq;          // |nabla^eps_H a|^2_eps
    Q ric_term;         // <Ric_H a, a>_H
    Q div_term;         // <delta_H T a, a>_V
    Q j_term;           // (1/eps) <J^2 a, a>_H
    Q equality_residual; // lhs - (grad_sq + ric_term - div_term + j_term)
    Q quarter_tr_j2;    // -1/4 Tr_H (J^2_a), the closed-form lower bound
    bool closed_at_point;
};
BochnerReport bochner_inequality_check(const LaplacianContext& ctx, const FormField& a);

// Deterministic random form fields; closure solves the first-order components.
FormField random_form_field(const FrameAlgebra& fa, int degree, int order, uint64_t seed);
FormField random_closed_one_form(const LaplacianContext& ctx, int order, uint64_t seed);

// value-at-point form of a jet-coefficient field
Form<Q> value_form(const FormField& a);

} // namespace folia
