#pragma once

// Brute-force ground truth by exhaustive enumeration over tiny fields.
//
// Nothing in here calls the closed-form counting code; the point is to have
// a second, independent route to every count and probability.

#include "sumrank/counting.hpp"
#include "sumrank/exact.hpp"
#include "sumrank/field.hpp"
#include "sumrank/matrix.hpp"

#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace sumrank {

struct EnumerationBudget {
    /// Largest number of points (matrices) a single enumeration may visit.
    ExactInt max_points = ExactInt(1) << 22;
    /// Worker threads for the counting routines; 0 picks hardware concurrency.
    unsigned threads = 0;
};

/// All q^{mn} matrices exactly once, in odometer order: the row-major entry
/// index k is digit k (least significant first) of a base-q counter.
class MatrixEnumerator {
public:
    /// Throws BudgetExceeded when q^{mn} > budget.max_points.
    MatrixEnumerator(std::size_t m, std::size_t n, FieldPtr field, const EnumerationBudget& budget = {});

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = FqMatrix;
        using difference_type = std::ptrdiff_t;
        using pointer = const FqMatrix*;
        using reference = const FqMatrix&;

        iterator() = default;
        explicit iterator(MatrixEnumerator* owner) : owner_(owner) {}
        reference operator*() const { return *owner_->current_; }
        pointer operator->() const { return &*owner_->current_; }
        iterator& operator++() {
            owner_->advance();
            return *this;
        }
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& it, std::default_sentinel_t) {
            return it.owner_ == nullptr || it.owner_->done();
        }

    private:
        MatrixEnumerator* owner_ = nullptr;
    };

    iterator begin() { return iterator(this); }
    std::default_sentinel_t end() { return {}; }

    [[nodiscard]] std::uint64_t size() const noexcept { return total_; }
    [[nodiscard]] bool done() const noexcept { return !current_; }

private:
    void advance();

    std::size_t m_;
    std::size_t n_;
    FieldPtr field_;
    std::uint64_t total_ = 0;
    std::vector<FqElem> digits_;
    std::optional<FqMatrix> current_;
};

[[nodiscard]] MatrixEnumerator enumerate_matrices(std::size_t m, std::size_t n, FieldPtr field,
                                                  const EnumerationBudget& budget = {});

/// Number of m x n matrices of each rank, indexed by rank.
[[nodiscard]] std::vector<ExactInt> brute_rank_distribution(std::size_t m, std::size_t n, const FieldPtr& field,
                                                            const EnumerationBudget& budget = {});

[[nodiscard]] ExactInt brute_count_rank_t(std::size_t m, std::size_t n, std::size_t t, const FieldPtr& field,
                                          const EnumerationBudget& budget = {});

/// Distinct t-dimensional subspaces of F_q^m, found by canonicalising the
/// column space of every full-rank m x t matrix (reduced column echelon form).
/// Needs q^{mt} <= budget.
[[nodiscard]] ExactInt brute_count_subspaces(std::size_t m, std::size_t t, const FieldPtr& field,
                                             const EnumerationBudget& budget = {});

/// (rank, sum-rank weight) -> number of m x n matrices.
using WeightHistogram = std::map<std::pair<std::size_t, std::size_t>, ExactInt>;

[[nodiscard]] WeightHistogram brute_weight_histogram(std::size_t m, const OrderedPartition& p, const FieldPtr& field,
                                                     const EnumerationBudget& budget = {});
/// Histogram over all m x n matrices for the scenario's q, m and partition (t is not used).
[[nodiscard]] WeightHistogram brute_weight_histogram(const Scenario& s, const EnumerationBudget& budget = {});

/// #{rank t, weight l*t} / #{rank t}. Throws DegenerateCondition when no
/// matrix of rank t exists, BudgetExceeded when q^{mn} is too large.
[[nodiscard]] ExactRatio brute_conditional_prob(const Scenario& s, const EnumerationBudget& budget = {});

} // namespace sumrank
