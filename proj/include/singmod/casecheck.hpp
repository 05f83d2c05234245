#pragma once

#include <string>
#include <vector>

#include "singmod/ball.hpp"
#include "singmod/quadforms.hpp"

namespace singmod::cases {

using std::int64_t;

enum class RowKind {
    PairFold,  // two unknowns (m', n'), n' = r' folded; two sigma equations
    Triple,    // three unknowns (m', n', r'); three sigma equations
};

struct SigmaSpec {
    // PairFold: fixed a(x^sigma); the pair {a(y^sigma), a(z^sigma)} ranges over
    // multisets from pair_options.
    int64_t a_x = 0;
    std::vector<int64_t> pair_options;
    // Triple: independent option lists per coordinate.
    std::vector<int64_t> x_options, y_options, z_options;
};

struct CaseRow {
    std::string case_id;
    std::string congruence;  // display label
    RowKind kind;
    int64_t e_x, e_y, e_z;
    int64_t ell;
    int64_t cong_residue, cong_modulus;  // core discriminant class
    std::vector<int64_t> az_options;     // Triple: single entry
    std::vector<Rat> lhs_n_extra;        // Triple: fixed lhs coefficients (m', n', r')
    std::vector<SigmaSpec> sigmas;
    int expected_total;
    bool audit_flag = false;  // rows whose constraint scope needed a reading
    bool feasibility_context = false;  // Table 4: sign/ratio constraints proved nearby
};

struct CaseSystem {
    std::string provenance;
    std::vector<std::string> unknowns;
    std::vector<std::vector<Rat>> equations;  // lhs - rhs, one row per sigma
    // Option values used, with the discriminant class they must be
    // denominators for: (value, residue, modulus).
    struct UsedDenominator {
        int64_t value;
        int64_t residue;
        int64_t modulus;
    };
    std::vector<UsedDenominator> used;
    int64_t a_z = 0;
    bool feasibility_context = false;
};

struct KernelDescription {
    int dimension;
    std::vector<std::vector<Rat>> basis;
};

/// Exact kernel by fraction-free (Bareiss) elimination.
KernelDescription solve_homogeneous(const CaseSystem& system);

/// The rows of Tables 3-5 and the section-5.4 lambda systems, as printed.
const std::vector<CaseRow>& builtin_case_tables();

/// Table 2: the possible (e, degree, congruence) configurations.
struct DiscriminantConfig {
    int64_t e_x;
    int deg_x;  // [L : K(x)]
    int64_t e_y;
    int deg_y;
    int64_t e_z;
    int deg_z;
    std::string congruence;
    std::string remark;
};
const std::vector<DiscriminantConfig>& builtin_discriminant_configs();

/// Cartesian/multiset expansion; count matches the row's printed total.
std::vector<CaseSystem> generate_systems(const CaseRow& row);

/// Can v be the denominator of some (large) discriminant = residue mod modulus?
/// Exact decision over congruence classes (primitivity included).
bool denominator_possible_for_class(int64_t v, int64_t residue, int64_t modulus);

enum class SystemVerdict {
    TrivialKernel,
    VacuousConfiguration,   // an option value is not a denominator for its class
    InfeasibleKernel,       // kernel direction violates the proved sign/ratio bounds
    NontrivialKernel,       // genuine failure
};

struct SystemResult {
    std::string provenance;
    SystemVerdict verdict;
    KernelDescription kernel;
    std::string note;
};

struct RowReport {
    std::string case_id;
    int systems = 0;
    int trivial = 0;
    int vacuous = 0;
    int infeasible = 0;
    int failed = 0;
};

struct CaseReport {
    std::vector<RowReport> rows;
    std::vector<SystemResult> exceptions;  // every non-trivial-kernel system
    int total_systems = 0;
    int table3_core_systems = 0;  // the four rows the paper counts as "390"
    bool counts_match = false;
    bool pass = false;         // every system trivial or excluded
    bool strict_pass = false;  // every system trivial
};

CaseReport check_all_cases();

/// Certified upper bound of 10^cap_exponent |delta|^(1/2) e^{-pi |delta|^(1/2)/4};
/// below_threshold certifies < 10^-900. Requires |delta| >= 10^7.
struct MarginResult {
    ball::BallReal value;
    bool below_threshold;
};
MarginResult qexpansion_contradiction_margin(int64_t abs_delta, int cap_exponent = 17,
                                             mpfr_prec_t prec = 256);

/// Eighth-root variant of 5.3.3: 10^10 t^3 with t = e^{-pi |delta|^(1/2)/8},
/// certified negligible against pi/12.
MarginResult qexpansion_margin_eighth(int64_t abs_delta, mpfr_prec_t prec = 256);

}  // namespace singmod::cases
