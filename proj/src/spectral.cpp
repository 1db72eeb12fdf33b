#include "folia/spectral.hpp"

#include <Eigen/Eigenvalues>

namespace folia {

namespace {

FormField basis_field(Mask w, int k) {
    FormField f(k);
    f.add_term(w, Jet(1));
    return f;
}

Q eps_weight(Mask w, const Dims& d, const Epsilon& eps) {
    Q wgt(1);
    int j = mono_vdeg(w, d);
    for (int t = 0; t < j; ++t) wgt *= eps.value;
    return wgt;
}

} // namespace

InvariantOperator invariant_matrix(const FrameSpec& spec, const Epsilon& eps, int k) {
    if (!spec.homogeneous)
        throw std::invalid_argument("invariant matrix needs a homogeneous spec");
    const Dims d = spec.dims();
    LaplacianContext ctx(spec, eps);
    InvariantOperator op;
    op.k = k;
    op.eps = eps;
    op.basis = basis_monomials(k, d);
    int dim = static_cast<int>(op.basis.size());
    op.mat = qmatrix(dim, dim);
    for (int col = 0; col < dim; ++col) {
        FormField img = hodge_laplacian(ctx, basis_field(op.basis[col], k));
        for (const auto& [w, c] : img.coeffs) {
            if (!c.is_constant())
                throw consistency_error("invariant subspace not preserved");
            auto it = std::lower_bound(op.basis.begin(), op.basis.end(), w);
            if (it == op.basis.end() || *it != w)
                throw consistency_error("invariant image outside degree fiber");
            op.mat[it - op.basis.begin()][col] = c.value();
        }
    }
    op.gram = qmatrix(dim, dim);
    for (int i = 0; i < dim; ++i)
        op.gram[i][i] = eps.infinite ? Q(1) : eps_weight(op.basis[i], d, eps);
    return op;
}

QMatrix invariant_d_matrix(const FrameSpec& spec, int k) {
    const Dims d = spec.dims();
    LaplacianContext ctx(spec, Epsilon::of(Q(1)));
    auto from = basis_monomials(k, d);
    auto to = basis_monomials(k + 1, d);
    QMatrix mat = qmatrix(static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (size_t col = 0; col < from.size(); ++col) {
        FormField img = exterior_derivative(ctx, basis_field(from[col], k));
        for (const auto& [w, c] : img.coeffs) {
            auto it = std::lower_bound(to.begin(), to.end(), w);
            if (it == to.end() || *it != w) throw consistency_error("d image outside fiber");
            mat[it - to.begin()][col] = c.value();
        }
    }
    return mat;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return a;
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    double cond = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    if (std::isfinite(cond) && cond < 1e8) {
        Eigen::VectorXcd ew = es.eigenvalues();
        Eigen::MatrixXcd diag = ew.array().exp().matrix().asDiagonal();
        Eigen::MatrixXcd r = v * diag * v.inverse();
        return r.real();
    }
    // scaling and squaring with a Taylor core; operators here are tiny
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    while (norm > 0.5) { norm /= 2; ++s; }
    Eigen::MatrixXd b = a / std::pow(2.0, s);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

Eigen::VectorXd heat_apply(const InvariantOperator& op, double t, const Eigen::VectorXd& a) {
    if (t < 0) throw std::invalid_argument("heat_apply: negative time");
    Eigen::MatrixXd m = to_eigen(op.mat);
    return expm(m * t) * a;
}

double garding_constant(const InvariantOperator& op) {
    if (op.eps.infinite) throw std::invalid_argument("garding constant needs finite eps");
    int dim = static_cast<int>(op.basis.size());
    if (dim == 0) return 0.0;
    Eigen::MatrixXd g = to_eigen(op.gram);
    Eigen::MatrixXd ga = g * to_eigen(op.mat);
    Eigen::MatrixXd s = 0.5 * (ga + ga.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(s, g);
    return es.eigenvalues().maxCoeff();
}

bool symmetric_in_geps(const InvariantOperator& op) {
    int dim = static_cast<int>(op.basis.size());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Q lhs(0), rhs(0);
            // (A^T G)_{ij} vs (G A)_{ij}, exact
            lhs = op.mat[j][i] * op.gram[j][j];
            rhs = op.gram[i][i] * op.mat[i][j];
            if (lhs != rhs) return false;
        }
    return true;
}

double one_form_curvature_constant(const FrameSpec& spec, const Epsilon& eps) {
    const int n = spec.n, m = spec.m, t = n + m;
    BottPackage bott = bott_package(spec);
    RicTerms rh = ric_terms(spec, Epsilon::inf());
    QMatrix a = qmatrix(t, t);
    // <Ric_H alpha, alpha>_H
    for (const auto& term : rh.ric11.terms) {
        int col = std::countr_zero(term.fmask);
        int row = std::countr_zero(term.vmask);
        if (row < n) a[row][col] += term.weight.value();
    }
    // + (1/eps) <J^2 alpha, alpha>_H
    Q inv = eps.inv();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Q j2(0);
            for (int l = 0; l < m; ++l)
                for (int k = 0; k < n; ++k)
                    j2 += bott.j.comp[l][x][k].value() * bott.j.comp[l][k][y].value();
            a[y][x] += inv * j2;
        }
    // - <delta_H T alpha, alpha>_V
    for (int b = 0; b < n; ++b)
        for (int c = n; c < t; ++c) a[c][b] -= bott.div_t.comp[b][c].value();
    // - 1/4 Tr_H(J^2_alpha)
    for (int l = 0; l < m; ++l)
        for (int p = 0; p < m; ++p) {
            Q tr(0);
            for (int x = 0; x < n; ++x)
                for (int k = 0; k < n; ++k)
                    tr += bott.j.comp[p][x][k].value() * bott.j.comp[l][k][x].value();
            a[n + l][n + p] -= tr * Q(1, 4);
        }
    Eigen::MatrixXd sa = to_eigen(sym_part(a));
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(t, t);
    for (int c = n; c < t; ++c) g(c, c) = eps.infinite ? 1.0 : eps.value.to_double();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(sa, g);
    return es.eigenvalues().minCoeff();
}

MjConstants mj_constants(const FrameSpec& spec) {
    ScalingExpansion se = scaling_expansion(spec);
    auto norm_of = [&](const MixedJet& b22, const MixedJet& b11) {
        MixedJet nu = b22;
        nu.add(b11);
        return operator_norm(to_eigen(c_operator_matrix(spec, nu.normalized())));
    };
    MjConstants out;
    out.m1 = norm_of(se.b1, se.b1v);
    out.m2 = norm_of(se.b2, se.b2v);
    out.m3 = norm_of(se.b3, se.b3v);
    return out;
}

double kform_gate_constant(const FrameSpec& spec, const Epsilon& eps) {
    FiberPositivity fp = ric_fiber_positivity(spec);
    MjConstants mj = mj_constants(spec);
    double ev = eps.infinite ? std::numeric_limits<double>::infinity() : eps.value.to_double();
    if (std::isinf(ev)) return fp.c1;
    return fp.c1 - mj.m1 / std::sqrt(ev) - (mj.m2 + mj.m3) / ev;
}

std::optional<Epsilon> auto_epsilon(const FrameSpec& spec, int k) {
    for (long long e = 1; e <= (1ll << 20); e *= 2) {
        Epsilon eps = Epsilon::of(Q(e));
        double c = k <= 1 ? one_form_curvature_constant(spec, eps) : kform_gate_constant(spec, eps);
        if (c > 0) return eps;
    }
    return std::nullopt;
}

DecayReport closed_form_decay(const FrameSpec& spec, const Epsilon& eps, int k,
                              const std::vector<double>& t_grid) {
    DecayReport rep;
    rep.eps = eps;
    if (k == 1) {
        rep.gate = "one-form curvature bound";
        rep.rate = one_form_curvature_constant(spec, eps);
        rep.gate_passed = rep.rate > 0;
    } else if (k > spec.m && k < spec.n) {
        VerticalParallelTorsion vp = vertical_parallel_torsion(spec);
        rep.gate = "curvature-operator bound";
        rep.rate = vp.parallel ? kform_gate_constant(spec, eps) : 0.0;
        rep.gate_passed = rep.rate > 0;
    } else {
        // outside the theorems' degree range the measured invariant gap is the
        // only certificate on offer
        rep.gate = "measured invariant spectral gap";
        rep.gate_passed = false; // decided below once the gap is known
    }

    InvariantOperator op = invariant_matrix(spec, eps, k);
    QMatrix dk = invariant_d_matrix(spec, k);
    int dim = static_cast<int>(op.basis.size());
    auto kernel = rational_kernel(dk, dim);
    rep.closed_dim = static_cast<int>(kernel.size());
    if (rep.closed_dim == 0) return rep;

    Eigen::MatrixXd g = to_eigen(op.gram);
    Eigen::MatrixXd kbasis(dim, rep.closed_dim);
    for (int c = 0; c < rep.closed_dim; ++c)
        for (int r = 0; r < dim; ++r) kbasis(r, c) = kernel[c][r].to_double();

    // measured gap of -sym(Delta) restricted to the closed subspace
    {
        Eigen::MatrixXd ga = g * to_eigen(op.mat);
        Eigen::MatrixXd s = -0.5 * (ga + ga.transpose());
        Eigen::MatrixXd sk = kbasis.transpose() * s * kbasis;
        Eigen::MatrixXd gk = kbasis.transpose() * g * kbasis;
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(sk, gk);
        rep.spectral_gap = es.eigenvalues().minCoeff();
    }
    if (rep.gate == "measured invariant spectral gap") {
        rep.rate = std::max(rep.spectral_gap - 1e-9, 0.0);
        rep.gate_passed = rep.rate > 0;
    }
    if (!rep.gate_passed) return rep;

    auto norm_eps = [&](const Eigen::VectorXd& v) { return std::sqrt(v.dot(g * v)); };
    rep.max_violation = 0.0;
    rep.exactness_residual = 0.0;
    Eigen::MatrixXd dprev = k >= 1 ? to_eigen(invariant_d_matrix(spec, k - 1))
                                   : Eigen::MatrixXd::Zero(dim, 0);
    for (int c = 0; c < rep.closed_dim; ++c) {
        Eigen::VectorXd a0 = kbasis.col(c);
        double n0 = norm_eps(a0);
        for (double t : t_grid) {
            Eigen::VectorXd at = heat_apply(op, t, a0);
            double v = norm_eps(at) - std::exp(-rep.rate * t) * n0;
            rep.max_violation = std::max(rep.max_violation, v);
            if (dprev.cols() > 0) {
                Eigen::VectorXd rhs = at - a0;
                Eigen::VectorXd x = dprev.colPivHouseholderQr().solve(rhs);
                double res = (dprev * x - rhs).norm();
                rep.exactness_residual = std::max(rep.exactness_residual, res);
            }
        }
    }
    return rep;
}

CohomologyVerdict cohomology_verdict(const FrameSpec& spec) {
    const int n = spec.n, m = spec.m;
    CohomologyVerdict out;
    out.compact_claim = spec.compact_claim;
    out.valid = validate(spec).all_passed();
    QTensor q = q_tensor(spec);
    HorizontalCurvatureOperator rh = horizontal_curvature_operator(spec);
    VerticalParallelTorsion vp = vertical_parallel_torsion(spec);
    out.q_min_eig = q.min_eig_sym;
    out.rh_min_eig = rh.min_eig_sym;
    out.vertical_parallel = vp.parallel;
    out.assumptions =
        "vanishing statements assume the asserted compact, connected, oriented model and the "
        "L2-continuity of the Hodge projection; hypotheses are verified at the anchor point";

    bool base = out.valid && out.compact_claim;
    bool q_pos = base && q.min_eig_sym > 0;
    bool rh_pos = base && rh.min_eig_sym > 0 && vp.parallel;

    for (int k = 0; k <= n + m; ++k) {
        DegreeVerdict dv;
        dv.k = k;
        dv.status = VerdictStatus::NO_CONCLUSION;
        if (k == 1 && q_pos) {
            dv.status = VerdictStatus::VANISHES;
            dv.certificate = "one-form positivity: min eig sym(Q) = " + std::to_string(q.min_eig_sym);
        } else if (k > m && k < n && rh_pos) {
            dv.status = VerdictStatus::VANISHES;
            dv.certificate = "curvature operator: min eig R_H = " + std::to_string(rh.min_eig_sym) +
                             ", torsion vertically parallel";
        } else if (k == n && m == 1 && q_pos && k != 1) {
            dv.status = VerdictStatus::VANISHES;
            dv.certificate = "Poincare duality from degree 1 (dim = n+1)";
        } else if (k == 0) {
            dv.certificate = "constants: never vanishes";
        } else if (k == n + m) {
            dv.certificate = "top degree: not covered";
        } else if (!out.compact_claim) {
            dv.certificate = "compactness not asserted";
        } else {
            dv.certificate = "positivity gate failed";
        }
        out.degrees.push_back(dv);
    }
    return out;
}

} // namespace folia
