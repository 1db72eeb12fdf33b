// Built-in model foliations and adversarial test fixtures.

#pragma once

#include "folia/frames.hpp"

#include <string>
#include <vector>

namespace folia {

struct unknown_model : std::runtime_error {
    explicit unknown_model(const std::string& name)
        : std::runtime_error("unknown model: " + name) {}
};

// heisenberg3, heisenberg5, hopf_s3, hopf_s5, berger_s3, plus the
// compact-claimed nilmanifold aliases heisenberg3_nilmanifold /
// heisenberg5_nilmanifold.
FrameSpec builtin_model(const std::string& name);

std::vector<std::string> builtin_model_names();

// Fixtures used by tests: not reachable from the CLI model list.
namespace fixtures {

// heisenberg3 with gamma perturbed by a linear jet; valid, non-Yang-Mills.
FrameSpec non_yang_mills();

// n=3, m=2 frame with nonconstant beta and gamma jets; the torsion is not
// vertically parallel, exercising the equivalence check with the flag false.
FrameSpec m2_nonconstant();

} // namespace fixtures

} // namespace folia
