// The identity battery driven by `verify`: Weitzenboeck, d^2 = 0, function
// commutation, the appendix curvature identities, the Bochner equality, the
// canonical-variation table, and the one-form operator reconciliation.
// Trials are pure and deterministic per seed, so they parallelize with a
// deterministic merge.

#pragma once

#include "folia/report.hpp"
#include "folia/spectral.hpp"

namespace folia {

struct VerifyOptions {
    std::vector<Epsilon> eps_list{Epsilon::of(Q(1))};
    int trials = 50;
    uint64_t seed = 1;
    int order = 3;
    bool commutator_constraints = true;
    int threads = 1;
};

std::vector<CheckResult> run_verify(const FrameSpec& spec, const VerifyOptions& opt);

// The full `verify` report as the CLI emits it; wall time is left at zero so
// the JSON bytes depend only on (model, parameters, seed).
Report make_verify_report(const FrameSpec& spec, const VerifyOptions& opt);

// Negative control: fraction of trials with d.d != 0 once the commutator
// constraints are disabled.
double dsquared_failure_fraction(const FrameSpec& spec, int trials, uint64_t seed, int order);

int env_thread_cap();

} // namespace folia
