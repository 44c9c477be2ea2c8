#pragma once

#include "tva/symcalc.hpp"

#include <string>
#include <vector>

namespace tva::weak {

struct VerifyResult {
    std::string identity;
    bool pass = false;
    std::string detail;  // per-step or per-parity notes
    std::string residual; // printable residual of the first failing instance
};

/// Identities addressable from the CLI.
std::vector<std::string> identity_list();

/// Runs the named identity over every parity assignment of its arguments.
/// pentagon-stokes additionally asserts the six displayed boundary terms
/// term by term; prop3.3-derivation replays the term rearrangement and
/// asserts the exact cancellation of every m-containing term.
VerifyResult verify_identity(const std::string& name, const Regime& regime);

struct FacetReport {
    int block_l = 0;
    int block_s = 0;
    bool cross_section_product = false; // facet is combinatorially K_s x K_{n-s+1}
    std::vector<int> partial_fields;    // indices of the fields hit by the boundary
    bool all_hits_inside_block = false;
    int term_count = 0;
    bool matched = false;
    std::string note;
};

struct BoundaryExpandReport {
    int n = 0;
    bool well_formed = false;
    std::vector<FacetReport> facets;
    std::vector<std::string> matched_terms;
    std::vector<std::string> unmatched_terms;
    std::string summary() const;
};

/// Applies Q to mu'_n over the K_n realization, classifies the boundary terms
/// facet by facet, and reports which A-infinity-relation shapes are matched.
/// The corrections D_s, D'_s beyond n = 4 are open in the source material, so
/// for n >= 5 the unmatched list is reported without any correctness claim.
BoundaryExpandReport boundary_expand(int n, const Regime& regime);

} // namespace tva::weak
