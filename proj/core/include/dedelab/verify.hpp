#pragma once

#include <string>
#include <vector>

#include "dedelab/numt.hpp"

namespace dedelab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Dedekind-sum invariants.
CheckResult check_fast_naive_equivalence(u64 d_limit, unsigned threads);
CheckResult check_reciprocity(u64 d_limit, unsigned threads);
CheckResult check_three_term(u64 triples, unsigned threads);
CheckResult check_inversion(u64 d_limit);
CheckResult check_sign_rules(u64 d_limit);
CheckResult check_s_bound(u64 d_limit);

// Mean-square formula coherence.
CheckResult check_trivial_product_forms(u64 f_limit);
CheckResult check_two_path(u64 p_full, u64 p_sample_limit, u64 samples, unsigned threads);
CheckResult check_n_identities(unsigned threads);
CheckResult check_n_integrality(u64 p_limit);
CheckResult check_pi_formula(u64 f_limit, unsigned threads);
CheckResult check_pi_bounds(u64 p_limit);
CheckResult check_a_values();
CheckResult check_restriction_identity();
CheckResult check_twisted_reductions(u64 p_limit);

// Mersenne / power-form families.
CheckResult check_mersenne_tables(unsigned threads);
CheckResult check_power_family(unsigned threads);

// Order-3 subgroup families.
CheckResult check_d3_family(u64 f_limit);
CheckResult check_d3_tables(long a_limit, unsigned threads);
CheckResult check_d3_growth(long a_limit, unsigned threads);

// Oracle cross-checks.
CheckResult check_orthogonality(u64 p_limit);
CheckResult check_kernel_recovery(u64 p_limit);
CheckResult check_meansquare_oracle(u64 p_limit, const std::vector<u64>& d0s, double rel_tol,
                                    unsigned threads);
CheckResult check_l1_two_ways(u64 f_limit);
CheckResult check_charsum(u64 f_limit, unsigned threads);
CheckResult check_u_fa();
CheckResult check_maxsum(u64 big_p);
CheckResult check_twisted_oracle(u64 p_limit);

struct VerifyOptions {
    unsigned threads = 0;
    bool extended = false; // full-depth grids
};

/// Named suites: reciprocity | formulas | mersenne | d3 | oracle | all.
std::vector<CheckResult> verify_suite(const std::string& suite, const VerifyOptions& opts);

} // namespace dedelab
