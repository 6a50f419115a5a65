#ifndef BILAB_CHECKS_HPP
#define BILAB_CHECKS_HPP

// The property-based verification suite: one callable per checkable claim,
// shared by the CLI `report` subcommand and the acceptance test binary.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bilab {

struct CheckResult {
    std::string name;
    bool pass = false;
    double runtime_seconds = 0;
    nlohmann::json details;
};

CheckResult check_slicing_identity(std::uint64_t seed);      // direct vs sliced routes
CheckResult check_pointwise_domination(std::uint64_t seed);  // M(f,g) <= Mbar f * S g
CheckResult check_knapp_scaling();                           // probe slope 2d-1
CheckResult check_annulus_scaling();                         // probe slope 1
CheckResult check_holder_scaling(std::uint64_t seed);        // dyadic norm-ratio law
CheckResult check_plancherel_square(std::uint64_t seed);     // ||S_delta f||_2 bound
CheckResult check_profile_reconstruction();                  // dyadic profile residual
CheckResult check_partition_identity();                      // multiplier partition
CheckResult check_kernel_decay();                            // normalized sup constants
CheckResult check_exponent_calculus();                       // classifiers + alpha*
CheckResult check_br_oracle(std::uint64_t seed);             // pair sum vs spatial sum
CheckResult check_mixed_square_slope(std::uint64_t seed);    // sup_k D_k delta-sweep

std::vector<CheckResult> run_all_checks(std::uint64_t seed);

} // namespace bilab

#endif
