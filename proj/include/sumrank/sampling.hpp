#pragma once

// Uniform sampling of rank-t matrices and Monte Carlo estimation of the
// full-sum-rank probability.

#include "sumrank/counting.hpp"
#include "sumrank/exact.hpp"
#include "sumrank/field.hpp"
#include "sumrank/matrix.hpp"

#include <cstdint>
#include <limits>

namespace sumrank {

/// SplitMix64 stream. Trial k of a run seeded with s uses TrialRng(s, k), so
/// results do not depend on the order trials are executed in.
class TrialRng {
public:
    using result_type = std::uint64_t;

    explicit TrialRng(std::uint64_t seed, std::uint64_t trial = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept;

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    /// Worker threads; 0 picks hardware concurrency. Never affects results.
    unsigned threads = 0;
    /// Recompute the rank of every sample and throw if it differs from t.
    bool verify_rank = false;
};

struct EstimateResult {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    ExactRatio estimate;
    double std_error = 0.0; ///< sqrt(p(1-p)/trials) at the estimate

    friend bool operator==(const EstimateResult&, const EstimateResult&) = default;
};

/// Uniform m x t matrix of rank t. Column j is drawn uniformly from the
/// complement of the span of the previous columns by indexing that
/// complement directly, so every call uses a fixed number of draws.
/// Throws InvalidDimension unless m >= t >= 1 and q^m < 2^64.
[[nodiscard]] FqMatrix sample_full_column_rank(std::size_t m, std::size_t t, const FieldPtr& field, TrialRng& rng);

/// Uniform m x n matrix of rank t, as L * R with L uniform of full column
/// rank and R uniform of full row rank. Each rank-t matrix has the same
/// number of such factorisations, so the product is uniform too.
/// t = 0 gives the zero matrix.
[[nodiscard]] FqMatrix sample_rank_t(std::size_t m, std::size_t n, std::size_t t, const FieldPtr& field,
                                     TrialRng& rng);

/// Fraction of cfg.trials uniform rank-t samples whose sum-rank weight is l*t.
[[nodiscard]] EstimateResult estimate_prob(const Scenario& s, const SamplerConfig& cfg);

} // namespace sumrank
