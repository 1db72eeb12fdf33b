#include "folia/verify.hpp"

#include <cstdlib>
#include <functional>
#include <memory>
#include <thread>

namespace folia {

namespace {

// largest absolute coefficient value across all jet components
Q residual_norm(const FormField& f) {
    Q r(0);
    for (const auto& [w, c] : f.coeffs)
        for (const auto& [word, v] : c.comps) {
            Q a = v.abs();
            if (r < a) r = a;
        }
    return r;
}

struct TrialAccumulator {
    bool pass = true;
    Q max_residual = Q(0);
    void feed(const Q& r) {
        if (!r.is_zero()) pass = false;
        if (max_residual < r.abs()) max_residual = r.abs();
    }
    void feed(const FormField& f) { feed(residual_norm(f)); }
    void merge(const TrialAccumulator& o) {
        pass = pass && o.pass;
        if (max_residual < o.max_residual) max_residual = o.max_residual;
    }
};

// Deterministic parallel reduce over trial indices.
TrialAccumulator map_trials(int trials, int threads,
                            const std::function<void(int, TrialAccumulator&)>& body) {
    threads = std::max(1, std::min(threads, trials == 0 ? 1 : trials));
    std::vector<TrialAccumulator> parts(threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < trials; i += threads) body(i, parts[w]);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    TrialAccumulator acc;
    for (const auto& p : parts) acc.merge(p);
    return acc;
}

CheckResult to_check(const std::string& name, const TrialAccumulator& acc, long long trials,
                     const std::string& detail = "") {
    CheckResult c;
    c.name = name;
    c.pass = acc.pass;
    c.trials = trials;
    c.max_residual = acc.max_residual.str();
    c.detail = detail;
    return c;
}

} // namespace

int env_thread_cap() {
    if (const char* env = std::getenv("FOLIA_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<CheckResult> run_verify(const FrameSpec& spec, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    const Dims dims = spec.dims();
    const int t = dims.total();
    FrameAlgebra fa = spec.algebra(opt.commutator_constraints);

    // contexts shared across trials, one per epsilon
    std::vector<std::shared_ptr<LaplacianContext>> ctxs;
    for (const auto& eps : opt.eps_list) {
        FrameSpec s = spec;
        // thread the constraint flag through the context's algebra
        auto ctx = std::make_shared<LaplacianContext>(s, eps);
        if (!opt.commutator_constraints) ctx->fa = ctx->fa.without_constraints();
        ctxs.push_back(ctx);
    }

    {
        // Weitzenboeck: hodge == bochner, all degrees, exact
        TrialAccumulator acc;
        long long total = 0;
        for (const auto& ctx : ctxs) {
            for (int k = 0; k <= t; ++k) {
                TrialAccumulator part = map_trials(opt.trials, opt.threads, [&](int i, TrialAccumulator& a) {
                    uint64_t s = opt.seed + 1000003ull * i + 7919ull * k;
                    FormField f = random_form_field(ctx->fa, k, 2, s);
                    FormField lhs = hodge_laplacian(*ctx, f);
                    FormField rhs = bochner_laplacian(*ctx, f);
                    FormField diff(lhs.degree);
                    for (const auto& [w, c] : lhs.coeffs) diff.add_term(w, c);
                    for (const auto& [w, c] : rhs.coeffs) diff.add_term(w, -c);
                    a.feed(diff);
                });
                acc.merge(part);
                total += opt.trials;
            }
        }
        out.push_back(to_check("weitzenbock_identity", acc, total));
    }

    {
        // d^2 = 0 on order-3 fields of every degree
        TrialAccumulator acc;
        long long total = 0;
        const auto& ctx = ctxs.front();
        for (int k = 0; k + 2 <= t; ++k) {
            TrialAccumulator part = map_trials(opt.trials, opt.threads, [&](int i, TrialAccumulator& a) {
                uint64_t s = opt.seed + 900001ull * i + 131ull * k;
                FormField f = random_form_field(ctx->fa, k, 3, s);
                a.feed(exterior_derivative(*ctx, exterior_derivative(*ctx, f)));
            });
            acc.merge(part);
            total += opt.trials;
        }
        out.push_back(to_check("d_squared_zero", acc, total));
    }

    {
        // d Delta_H f = Delta_{H,eps} df on order-3 function jets
        TrialAccumulator acc;
        long long total = 0;
        for (const auto& ctx : ctxs) {
            TrialAccumulator part = map_trials(opt.trials, opt.threads, [&](int i, TrialAccumulator& a) {
                uint64_t s = opt.seed + 777771ull * i + 17;
                Jet f = random_jet(ctx->fa, 3, s);
                a.feed(commutation_check(*ctx, f));
            });
            acc.merge(part);
            total += opt.trials;
        }
        out.push_back(to_check("function_commutation", acc, total));
    }

    {
        // first Bianchi identity for the Bott connection, all index tuples
        TrialAccumulator acc;
        BottPackage bott = bott_package(spec);
        CurvatureTensor r = curvature(bott.conn, spec);
        Tensor4 nt = nabla_tensor12_table(fa, bott.conn, bott.tor);
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b)
                for (int c = 0; c < t; ++c)
                    for (int d = 0; d < t; ++d) {
                        Jet res = bianchi_residual(r, bott.tor, nt, t, a, b, c, d);
                        acc.feed(res.is_zero() ? Q(0) : Q(1));
                    }
        out.push_back(to_check("bianchi_identity", acc, 1, "all frame tuples"));
    }

    {
        // adjoint curvature three-route agreement (throws on mismatch) and the
        // contracted special case
        TrialAccumulator acc;
        for (const auto& eps : opt.eps_list) {
            CurvatureTensor rhat = adjoint_curvature(spec, eps);
            ConnectionCoeffs ce = epsilon_connection(spec, eps);
            CurvatureTensor re = curvature(ce, spec);
            TorsionTensor te = torsion(ce, spec);
            Tensor4 nte = nabla_tensor12_table(fa, ce, te);
            for (int a = 0; a < t; ++a)
                for (int b = 0; b < t; ++b)
                    for (int d = 0; d < t; ++d) {
                        // Rhat(a,b)a = R(a,b)a + (nabla_a T)(a,b)
                        Jet rhs = re.at(a, b, a, d) + nte[a][a][b][d];
                        acc.feed((rhat.at(a, b, a, d) - rhs).is_zero() ? Q(0) : Q(1));
                    }
        }
        out.push_back(to_check("adjoint_curvature_identities", acc, 1, "three routes + contracted case"));
    }

    {
        // commutation identity for the metric Bott connection
        TrialAccumulator acc;
        MetricCommutationData data = metric_commutation_data(spec, bott_connection(spec));
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b)
                for (int c = 0; c < t; ++c)
                    for (int d = 0; d < t; ++d)
                        acc.feed(metric_connection_commutation(data, t, a, b, c, d).is_zero()
                                     ? Q(0)
                                     : Q(1));
        out.push_back(to_check("curvature_commutation", acc, 1, "all frame tuples"));
    }

    {
        // Bochner equality on random one-forms, finite eps only
        TrialAccumulator acc;
        long long total = 0;
        for (const auto& ctx : ctxs) {
            if (ctx->eps.infinite) continue;
            TrialAccumulator part = map_trials(opt.trials, opt.threads, [&](int i, TrialAccumulator& a) {
                uint64_t s = opt.seed + 555557ull * i + 29;
                FormField f = random_form_field(ctx->fa, 1, 2, s);
                BochnerReport rep = bochner_inequality_check(*ctx, f);
                a.feed(rep.equality_residual);
            });
            acc.merge(part);
            total += opt.trials;
        }
        out.push_back(to_check("bochner_equality", acc, total));
    }

    {
        // one-form operator reconciliation
        TrialAccumulator acc;
        long long total = 0;
        for (const auto& ctx : ctxs) {
            TrialAccumulator part = map_trials(opt.trials, opt.threads, [&](int i, TrialAccumulator& a) {
                uint64_t s = opt.seed + 333331ull * i + 41;
                FormField f = random_form_field(ctx->fa, 1, 2, s);
                a.feed(oneform_formula_residual(*ctx, f));
            });
            acc.merge(part);
            total += opt.trials;
        }
        out.push_back(to_check("oneform_reconciliation", acc, total));
    }

    if (spec.homogeneous) {
        // canonical variation: Koszul oracle vs engine block table, plus the
        // adiabatic contraction on random covectors
        TrialAccumulator acc;
        long long total = 0;
        for (const auto& eps : opt.eps_list) {
            if (eps.infinite) continue;
            QMatrix oracle = ricci_canonical_variation(spec, eps);
            QMatrix engine = ricci_blocks_from_engine(spec, eps);
            for (int a = 0; a < t; ++a)
                for (int b = 0; b < t; ++b) acc.feed(oracle[a][b] - engine[a][b]);
            // Ric_{g_eps}(v + eps w, v + eps w) contraction against Q and Ric_V
            QTensor q = q_tensor(spec);
            QMatrix rv = ricci_vertical(spec);
            TrialAccumulator part = map_trials(opt.trials, opt.threads, [&](int i, TrialAccumulator& a2) {
                JetSampler rng(opt.seed + 13ull * i);
                std::vector<Q> v(t, Q(0));
                for (int x = 0; x < spec.n; ++x) v[x] = rng.coeff();
                std::vector<Q> w(t, Q(0));
                for (int l = spec.n; l < t; ++l) w[l] = rng.coeff();
                Q lhs(0);
                for (int x = 0; x < t; ++x)
                    for (int y = 0; y < t; ++y) {
                        Q ax = v[x] + eps.value * w[x];
                        Q ay = v[y] + eps.value * w[y];
                        lhs += oracle[x][y] * ax * ay;
                    }
                // (1/(2 eps)) <J^2 v, v> with J^2 from the q-machinery
                BottPackage bott = bott_package(spec);
                Q j2(0);
                for (int x = 0; x < spec.n; ++x)
                    for (int y = 0; y < spec.n; ++y) {
                        Q acc2(0);
                        for (int l = 0; l < spec.m; ++l)
                            for (int k = 0; k < spec.n; ++k)
                                acc2 += bott.j.comp[l][x][k].value() * bott.j.comp[l][k][y].value();
                        j2 += v[x] * acc2 * v[y];
                    }
                Q rhs = j2 / (Q(2) * eps.value);
                for (int x = 0; x < t; ++x)
                    for (int y = 0; y < t; ++y) rhs += q.op[x][y] * (v[x] + w[x]) * (v[y] + w[y]);
                for (int l = 0; l < spec.m; ++l)
                    for (int p = 0; p < spec.m; ++p)
                        rhs += eps.value * eps.value * rv[l][p] * w[spec.n + l] * w[spec.n + p];
                a2.feed(lhs - rhs);
            });
            acc.merge(part);
            total += opt.trials;
        }
        out.push_back(to_check("canonical_variation", acc, total));
    }

    return out;
}

Report make_verify_report(const FrameSpec& spec, const VerifyOptions& opt) {
    Report rep;
    rep.model = spec.name;
    rep.command = "verify";
    std::string eps_text;
    for (size_t i = 0; i < opt.eps_list.size(); ++i) {
        if (i) eps_text += ",";
        eps_text += opt.eps_list[i].str();
    }
    rep.params["eps"] = eps_text;
    rep.params["trials"] = std::to_string(opt.trials);
    rep.params["seed"] = std::to_string(opt.seed);
    rep.params["order"] = std::to_string(opt.order);
    rep.params["constraints"] = opt.commutator_constraints ? "enabled" : "disabled";
    rep.checks = run_verify(spec, opt);
    return rep;
}

double dsquared_failure_fraction(const FrameSpec& spec, int trials, uint64_t seed, int order) {
    FrameSpec s = spec;
    LaplacianContext ctx(s, Epsilon::of(Q(1)));
    ctx.fa = ctx.fa.without_constraints();
    int t = spec.n + spec.m;
    int fails = 0, total = 0;
    for (int i = 0; i < trials; ++i) {
        for (int k = 0; k + 2 <= t; ++k) {
            uint64_t sd = seed + 900001ull * i + 131ull * k;
            FormField f = random_form_field(ctx.fa, k, order, sd);
            FormField dd = exterior_derivative(ctx, exterior_derivative(ctx, f));
            ++total;
            if (!residual_norm(dd).is_zero()) ++fails;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(fails) / total;
}

} // namespace folia
