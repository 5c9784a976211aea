#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "resolvent/green_kernel.hpp"
#include "resolvent/model.hpp"
#include "resolvent/oracle.hpp"

namespace resolvent {

/// Produces the kernel used by the kernel-level checks (jump, resolvent identity,
/// limit equivalence). Swappable so a corrupted kernel can be fed through the suite.
using KernelFactory = std::function<GreenKernel(const SquareBarrier&, ComplexEnergy, Direction)>;

GreenKernel closed_form_kernel(const SquareBarrier& p, ComplexEnergy e, Direction d);

/// Closed-form kernel whose J4 is scaled by (1 + relative_error). Negative control only.
KernelFactory corrupted_j4_kernel(double relative_error);

struct RandomInstance {
    SquareBarrier barrier;
    double energy;  ///< real, positive, clear of V0
};

/// V0 in [-5, 10], 0 < a < b <= 5 (a, b - a >= 0.1), E in [0.1, max(2 V0 + 5, 5)]
/// with |E - V0| >= 0.05.
RandomInstance sample_instance(std::mt19937_64& rng);

struct VerificationConfig {
    SquareBarrier barrier{5.0, 1.0, 2.0};
    double energy = 1.0;            ///< real energy for the formal / limit checks
    cplx complex_energy{1.0, 1.0};  ///< energy for the resolvent identity
    std::uint64_t seed = 1;
    int random_instances = 4;
};

struct VerificationReport {
    SquareBarrier instance;
    double energy;
    std::uint64_t seed;
    std::vector<oracle::ResidualReport> checks;
    bool pass;
};

/// Continuity, Wronskian, jump, Schroedinger residual, resolvent identity,
/// engine equivalence and limit equivalence on the configured barrier plus
/// `random_instances` seeded random barriers.
VerificationReport run_verification(const VerificationConfig& config,
                                    const KernelFactory& factory = closed_form_kernel);

}  // namespace resolvent
