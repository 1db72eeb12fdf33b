// FrameSpec: the entire geometric input.  An adapted orthonormal frame of a
// totally geodesic Riemannian foliation, described by its structure function
// jets at one anchor point, plus user-asserted global flags.

#pragma once

#include "folia/jet.hpp"

#include <optional>
#include <string>
#include <vector>

namespace folia {

struct FrameSpec {
    std::string name;
    int n = 0;
    int m = 0;
    StructureFunctions structure;
    bool homogeneous = false;  // structure functions constant (validated)
    bool compact_claim = false; // user-asserted: compact, connected, oriented

    Dims dims() const { return Dims{n, m}; }
    FrameAlgebra algebra(bool constraints = true) const {
        return FrameAlgebra(dims(), structure, constraints);
    }
};

struct ValidityCheck {
    std::string name;
    bool passed = true;
    std::string note;
};

struct ValidityReport {
    std::vector<ValidityCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const ValidityCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Validity conditions, reported rather than thrown:
//  - antisymmetry of omega and gamma in (i,j), of beta in its vertical pair
//    (the totally geodesic half of the taming criterion),
//  - skew-symmetry of sigma in its horizontal pair (the bundle-like half),
//  - homogeneous flag consistency (constant structure jets),
//  - Jacobi identity for constant structure; rewrite confluence to the stored
//    order otherwise (reported, not rejected),
//  - step-2 bracket generation: the gamma matrix over pairs (i<j) x l has rank m.
ValidityReport validate(const FrameSpec& spec);

// Structure constants of the full frame bracket table at the point, as a
// (n+m)^3 value table; convenience for Jacobi checks and Koszul oracles.
std::vector<std::vector<std::vector<Q>>> bracket_table(const FrameSpec& spec);

} // namespace folia
