// folia: validity checks, identity verification, curvature reports, verdicts,
// and heat-decay curves for totally geodesic foliation models.

#include "folia/frames_io.hpp"
#include "folia/models.hpp"
#include "folia/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace folia;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

FrameSpec load_model(const std::string& model, const std::string& file) {
    if (!file.empty()) return frame_spec_from_file(file);
    return builtin_model(model);
}

std::vector<Epsilon> parse_eps_list(const std::string& text) {
    std::vector<Epsilon> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        if (cur == "inf") out.push_back(Epsilon::inf());
        else out.push_back(Epsilon::of(Q::from_string(cur)));
    }
    if (out.empty()) throw parse_error("empty eps list");
    return out;
}

void emit(const Report& rep, const std::string& json_path) {
    std::cout << rep.to_text();
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << rep.to_json();
    }
}

int cmd_validate(const std::string& model, const std::string& file, const std::string& json_path) {
    FrameSpec spec = load_model(model, file);
    ValidityReport vr = validate(spec);
    Report rep;
    rep.model = spec.name;
    rep.command = "validate";
    for (const auto& c : vr.checks) {
        CheckResult cr;
        cr.name = c.name;
        cr.pass = c.passed;
        cr.detail = c.note;
        cr.max_residual = "0";
        rep.checks.push_back(cr);
    }
    emit(rep, json_path);
    return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const std::string& model, const std::string& file, const std::string& eps,
               int trials, uint64_t seed, int order, bool no_constraints,
               const std::string& json_path) {
    FrameSpec spec = load_model(model, file);
    auto t0 = std::chrono::steady_clock::now();
    VerifyOptions opt;
    opt.eps_list = parse_eps_list(eps);
    opt.trials = trials;
    opt.seed = seed;
    opt.order = order;
    opt.commutator_constraints = !no_constraints;
    opt.threads = env_thread_cap();
    Report rep = make_verify_report(spec, opt);
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    emit(rep, json_path);
    return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_report(const std::string& model, const std::string& file, const std::string& eps_text,
               const std::string& json_path) {
    FrameSpec spec = load_model(model, file);
    Epsilon eps = eps_text == "inf" ? Epsilon::inf() : Epsilon::of(Q::from_string(eps_text));
    Report rep;
    rep.model = spec.name;
    rep.command = "report";
    rep.params["eps"] = eps.str();
    QTensor q = q_tensor(spec);
    HorizontalCurvatureOperator rh = horizontal_curvature_operator(spec);
    VerticalParallelTorsion vp = vertical_parallel_torsion(spec);
    FiberPositivity fp = ric_fiber_positivity(spec);
    CheckResult qc{"q_tensor", true, 0, format_double(q.min_eig_sym),
                   std::string("symmetric=") + (q.symmetric ? "yes" : "no")};
    rep.checks.push_back(qc);
    rep.checks.push_back(CheckResult{"horizontal_curvature_operator", true, 0,
                                     format_double(rh.min_eig_sym),
                                     "max_asym=" + rh.max_asym.str()});
    rep.checks.push_back(CheckResult{"vertical_parallel_torsion", vp.parallel, 0,
                                     vp.equivalence_residual.str(), ""});
    rep.checks.push_back(CheckResult{"ric_fiber_positivity", true, 0, format_double(fp.c1), ""});
    rep.checks.push_back(
        CheckResult{"yang_mills", true, 0, "0", yang_mills(spec) ? "yes" : "no"});
    if (spec.homogeneous && !eps.infinite) {
        QMatrix table = ricci_canonical_variation(spec, eps);
        std::string rows;
        for (const auto& r : table) {
            for (const auto& v : r) rows += v.str() + " ";
            rows += "; ";
        }
        rep.checks.push_back(CheckResult{"ricci_canonical_variation", true, 0, "0", rows});
    }
    emit(rep, json_path);
    return kExitOk;
}

int cmd_verdict(const std::string& model, const std::string& file, const std::string& json_path) {
    FrameSpec spec = load_model(model, file);
    CohomologyVerdict v = cohomology_verdict(spec);
    Report rep;
    rep.model = spec.name;
    rep.command = "verdict";
    rep.params["compact_claim"] = spec.compact_claim ? "true" : "false";
    for (const auto& dv : v.degrees) {
        CheckResult c;
        c.name = "H^" + std::to_string(dv.k);
        c.pass = true;
        c.detail = (dv.status == VerdictStatus::VANISHES ? "VANISHES: " : "NO_CONCLUSION: ") +
                   dv.certificate;
        c.max_residual = "0";
        rep.checks.push_back(c);
    }
    rep.notes.push_back(v.assumptions);
    if (!spec.compact_claim) rep.notes.push_back("compactness not asserted");
    emit(rep, json_path);
    return kExitOk;
}

int cmd_heat(const std::string& model, const std::string& file, int k, const std::string& eps_text,
             const std::string& tspec, const std::string& csv_path, const std::string& json_path) {
    FrameSpec spec = load_model(model, file);
    Epsilon eps = Epsilon::of(Q(1));
    if (eps_text == "auto") {
        auto pick = auto_epsilon(spec, k);
        if (!pick) {
            std::cerr << "no epsilon in the sweep made the curvature bound positive\n";
            return kExitCheckFailed;
        }
        eps = *pick;
    } else {
        eps = Epsilon::of(Q::from_string(eps_text));
    }
    double t0 = 0, t1 = 10, dt = 0.5;
    if (!tspec.empty()) {
        if (std::sscanf(tspec.c_str(), "%lf:%lf:%lf", &t0, &t1, &dt) != 3 || dt <= 0)
            throw parse_error("bad t grid, expected start:end:step");
    }
    std::vector<double> grid;
    for (double t = t0; t <= t1 + 1e-12; t += dt) grid.push_back(t);

    DecayReport dr = closed_form_decay(spec, eps, k, grid);
    InvariantOperator op = invariant_matrix(spec, eps, k);
    Report rep;
    rep.model = spec.name;
    rep.command = "heat";
    rep.params["k"] = std::to_string(k);
    rep.params["eps"] = eps.str();
    rep.params["t"] = tspec.empty() ? "0:10:0.5" : tspec;
    rep.checks.push_back(CheckResult{"gate", dr.gate_passed, 0, format_double(dr.rate), dr.gate});
    rep.checks.push_back(CheckResult{"closed_subspace", true, 0, std::to_string(dr.closed_dim),
                                     "dimension of ker d on invariant forms"});
    if (dr.gate_passed && dr.closed_dim > 0) {
        rep.checks.push_back(CheckResult{"decay_bound", dr.max_violation <= 1e-6, 0,
                                         format_double(dr.max_violation), ""});
        rep.checks.push_back(CheckResult{"exactness", dr.exactness_residual <= 1e-10, 0,
                                         format_double(dr.exactness_residual), ""});
    }

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        csv << "t";
        int dim = static_cast<int>(op.basis.size());
        for (int c = 0; c < dim; ++c) csv << ",norm_e" << c;
        csv << "\n";
        Eigen::MatrixXd g = to_eigen(op.gram);
        for (double t : grid) {
            csv << format_double(t);
            for (int c = 0; c < dim; ++c) {
                Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
                e(c) = 1.0;
                Eigen::VectorXd at = heat_apply(op, t, e);
                csv << "," << format_double(std::sqrt(at.dot(g * at)));
            }
            csv << "\n";
        }
    }
    emit(rep, json_path);
    return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"horizontal Laplacian verification engine for totally geodesic foliations"};
    app.require_subcommand(1);

    std::string model = "heisenberg3", file, json_path, eps_list = "1", eps_one = "1";
    std::string tspec, csv_path;
    int trials = 50, order = 3, k = 1;
    uint64_t seed = 1;
    bool no_constraints = false;

    auto add_model_opts = [&](CLI::App* cmd) {
        cmd->add_option("--model", model, "builtin model name");
        cmd->add_option("--file", file, "frame spec JSON file");
        cmd->add_option("--json", json_path, "write the JSON report here");
    };

    CLI::App* v = app.add_subcommand("validate", "frame validity checks");
    add_model_opts(v);

    CLI::App* ver = app.add_subcommand("verify", "run the identity battery");
    add_model_opts(ver);
    ver->add_option("--eps", eps_list, "comma list, e.g. 1,4,inf");
    ver->add_option("--trials", trials, "random trials per check");
    ver->add_option("--seed", seed, "base seed");
    ver->add_option("--order", order, "jet truncation order");
    ver->add_flag("--no-commutator-constraints", no_constraints,
                  "debug: treat frame derivatives as commuting");
    ver->add_flag("--exact", [](int64_t) {}, "exact rational mode (always on)");

    CLI::App* rep = app.add_subcommand("report", "curvature tables and eigenvalues");
    add_model_opts(rep);
    rep->add_option("--eps", eps_one, "epsilon or inf");

    CLI::App* verd = app.add_subcommand("verdict", "cohomology-vanishing verdicts");
    add_model_opts(verd);

    CLI::App* heat = app.add_subcommand("heat", "heat semigroup decay on invariant forms");
    add_model_opts(heat);
    heat->add_option("--k", k, "form degree");
    heat->add_option("--eps", eps_one, "epsilon, or auto to sweep");
    heat->add_option("--t", tspec, "time grid start:end:step");
    heat->add_option("--csv", csv_path, "write decay curves here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInputError;
    }

    try {
        if (v->parsed()) return cmd_validate(model, file, json_path);
        if (ver->parsed())
            return cmd_verify(model, file, eps_list, trials, seed, order, no_constraints, json_path);
        if (rep->parsed()) return cmd_report(model, file, eps_one, json_path);
        if (verd->parsed()) return cmd_verdict(model, file, json_path);
        if (heat->parsed()) return cmd_heat(model, file, k, eps_one, tspec, csv_path, json_path);
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const unknown_model& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitInputError;
}
