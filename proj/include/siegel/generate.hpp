#pragma once

#include <random>

#include "siegel/lattice.hpp"

namespace siegel {

/// Deterministic seeded randomness. mt19937_64 has a fully specified
/// algorithm, and the helpers below avoid std::uniform_int_distribution,
/// whose output is implementation-defined; identical seeds therefore give
/// identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t u64() { return engine_(); }

    /// Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);

    /// Uniform in [lo, hi] inclusive.
    long range(long lo, long hi);

    /// Independent child stream (for parallel trials).
    Rng fork(std::uint64_t stream) const;

private:
    std::mt19937_64 engine_;
};

struct RandomValueOptions {
    long coeff_bound = 5;   // integer coefficients drawn from [-bound, bound]
    int num_degree = 1;     // ratfunc numerator degree bound
    int den_degree = 1;     // ratfunc denominator degree bound
    int den_percent = 25;   // chance (in %) of a non-trivial denominator
};

FieldValue random_value(Rng& rng, const FieldPtr& field, const RandomValueOptions& opts);
Mat random_mat(Rng& rng, const FieldPtr& field, int rows, int cols, const RandomValueOptions& opts);

/// Random composition of r into m+1 non-negative parts (balls into boxes);
/// zero parts occur naturally.
std::vector<int> random_shape(Rng& rng, int m, int r);

SiegelObject random_siegel(Rng& rng, const FieldPtr& field, int m, const std::vector<int>& k,
                           const RandomValueOptions& opts);

/// Random partition with zeroes: `length` parts, each in [0, max_part],
/// sorted decreasingly.
PartitionWithZeroes random_partition(Rng& rng, int length, int max_part);

/// Random Jordan data with d_1 = m exactly (so the nilpotency degree is m),
/// n <= n_max and r <= r_max.
JordanData random_lattice_jordan(Rng& rng, int m, int n_max, int r_max);

/// Random basis vectors, retried until the span condition holds.
/// Throws SpanFailure when the retry budget is exhausted.
LatticeInstance random_lattice_instance(Rng& rng, const FieldPtr& field, const JordanData& jd,
                                        const RandomValueOptions& opts, int max_retries = 64);

}  // namespace siegel
