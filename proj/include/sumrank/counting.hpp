#pragma once

// Exact counts and probabilities for rank-t matrices over GF(q).
//
// Everything here takes q as a plain integer: the formulas are polynomial in
// q and never touch field arithmetic. q must still be a prime power.
//
// Notation used in comments: Q_t(x) = (x - 1)(x - q)...(x - q^{t-1}).

#include "sumrank/exact.hpp"
#include "sumrank/matrix.hpp"

#include <cstdint>
#include <string>

namespace sumrank {

/// A rank-t, m-row sampling scenario over GF(q) with a column partition.
struct Scenario {
    std::uint64_t q = 2;
    std::int64_t m = 1;
    std::int64_t t = 0;
    OrderedPartition partition{std::vector<std::size_t>{1}};

    [[nodiscard]] std::int64_t n() const noexcept { return static_cast<std::int64_t>(partition.total()); }
    [[nodiscard]] std::int64_t ell() const noexcept { return static_cast<std::int64_t>(partition.length()); }
};

/// Throws NotAPrimePower or InvalidDimension unless m >= t >= 0 and every
/// part is at least t.
void validate_scenario(const Scenario& s);

/// Q_t(q^r) = prod_{i=0}^{t-1} (q^r - q^i). Returns 1 for t = 0. For r < t the
/// literal product is returned (zero or negative); no error is raised.
[[nodiscard]] ExactInt q_falling_product(std::uint64_t q, std::int64_t r, std::int64_t t);

/// Number of t-dimensional subspaces of GF(q)^m.
[[nodiscard]] ExactInt gaussian_binomial(std::int64_t m, std::int64_t t, std::uint64_t q);

/// Number of m x n matrices whose column space is a fixed t-dimensional
/// subspace (independent of m and of the subspace).
[[nodiscard]] ExactInt count_fixed_colspace(std::int64_t n, std::int64_t t, std::uint64_t q);

[[nodiscard]] ExactInt count_rank_t(std::int64_t m, std::int64_t n, std::int64_t t, std::uint64_t q);

/// Number of rank-t m x n matrices whose every block has rank t.
[[nodiscard]] ExactInt count_full_sumrank(const Scenario& s);

/// Pr[sum-rank weight = l*t | rank = t] = prod_i Q_t(q^{n_i}) / Q_t(q^n).
/// Independent of m; equals 1 for t = 0.
[[nodiscard]] ExactRatio exact_prob_full_sumrank(const Scenario& s);

/// Q_t(q^t)^{l-1} Q_t(q^{n-(l-1)t}) / Q_t(q^n): the probability at the
/// extremal partition (t, ..., t, n-(l-1)t), which is the minimum over all
/// partitions with parts >= t.
[[nodiscard]] ExactRatio lower_bound_prob(std::int64_t n, std::int64_t ell, std::int64_t t, std::uint64_t q);

/// The same bound written factor by factor:
///   prod_{i=first_index}^{t-1} (1 - q^{i-t})^{l-1} (1 - q^{i-n+(l-1)t}) / (1 - q^{i-n}).
/// With first_index = 0 this equals lower_bound_prob exactly. With
/// first_index = 1 the i = 0 factor is dropped and the product no longer
/// matches (at t = 1 it is the empty product, 1).
[[nodiscard]] ExactRatio lower_bound_product(std::int64_t n, std::int64_t ell, std::int64_t t, std::uint64_t q,
                                             std::int64_t first_index = 0);

struct PochhammerEnclosure {
    std::uint64_t q = 2;
    std::uint64_t terms = 0;
    ExactRatio partial; ///< prod_{j=1}^{terms} (1 - q^{-j}), also the upper end
    ExactRatio lower;   ///< partial * (1 - q^{-terms} / (q - 1))
    std::string partial_decimal; ///< 30 significant digits
    std::string lower_decimal;

    [[nodiscard]] bool contains(const ExactRatio& x) const { return lower <= x && x <= partial; }
};

/// Partial product for (1/q; 1/q)_inf with a rigorous enclosure of the
/// infinite product. Throws InvalidDimension for terms == 0.
[[nodiscard]] PochhammerEnclosure pochhammer_partial(std::uint64_t q, std::uint64_t terms);

/// sum_{k=-K}^{K} (-1)^k q^{-k(3k-1)/2}: the pentagonal-number expansion of
/// (1/q; 1/q)_inf truncated to 2K + 1 terms.
[[nodiscard]] ExactRatio pentagonal_series(std::uint64_t q, std::int64_t K);

/// 1 - 1/q - 1/q^2.
[[nodiscard]] ExactRatio pentagonal_lower_bound(std::uint64_t q);

/// (1 - 1/q - 1/q^2)^l.
[[nodiscard]] ExactRatio corollary_bound(std::uint64_t q, std::int64_t ell);

/// True when l <= q - 1, where the full-sum-rank probability exceeds 1/4.
[[nodiscard]] bool quarter_threshold_applies(std::uint64_t q, std::int64_t ell);

} // namespace sumrank
