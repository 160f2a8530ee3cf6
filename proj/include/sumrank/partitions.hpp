#pragma once

// Ordered partitions of n with a lower bound on each part, and the product
// prod_i Q_t(q^{n_i}) that the full-sum-rank probability is proportional to.

#include "sumrank/exact.hpp"
#include "sumrank/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

namespace sumrank {

/// Lazily enumerates all (n_1, ..., n_l) with n_i >= min_part and sum n,
/// in lexicographic order. Single pass.
class PartitionStream {
public:
    PartitionStream(std::size_t n, std::size_t ell, std::size_t min_part);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = OrderedPartition;
        using difference_type = std::ptrdiff_t;
        using pointer = const OrderedPartition*;
        using reference = const OrderedPartition&;

        iterator() = default;
        explicit iterator(PartitionStream* owner) : owner_(owner) {}

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
        PartitionStream* owner_ = nullptr;
    };

    iterator begin() { return iterator(this); }
    std::default_sentinel_t end() { return {}; }

    /// Current partition and step, or nullopt when exhausted.
    std::optional<OrderedPartition> next();
    [[nodiscard]] bool done() const noexcept { return !current_; }

private:
    void advance();

    std::size_t n_;
    std::size_t ell_;
    std::size_t min_part_;
    std::optional<OrderedPartition> current_;
};

[[nodiscard]] PartitionStream enumerate_partitions(std::size_t n, std::size_t ell, std::size_t min_part);

/// Stars-and-bars count C(n - l*min_part + l - 1, l - 1); zero when infeasible.
[[nodiscard]] ExactInt partition_count(std::size_t n, std::size_t ell, std::size_t min_part);

/// prod_i Q_t(q^{n_i}). Throws InvalidDimension when some part is below t.
[[nodiscard]] ExactInt product_Q(const OrderedPartition& p, std::int64_t t, std::uint64_t q);

/// (t, ..., t, n - (l-1)t). Throws InvalidDimension when n < l*t or t < 1.
[[nodiscard]] OrderedPartition extremal_partition(std::size_t n, std::size_t ell, std::size_t t);

[[nodiscard]] bool is_extremal(const OrderedPartition& p, std::size_t t);

struct MinimizedProduct {
    OrderedPartition partition;
    ExactInt value;
};

enum class MinimizeMode {
    formula,    ///< return the extremal partition directly
    exhaustive, ///< scan every admissible partition; ties go to the lexicographically first
};

[[nodiscard]] MinimizedProduct minimize_product(std::size_t n, std::size_t ell, std::int64_t t, std::uint64_t q,
                                                MinimizeMode mode = MinimizeMode::formula);

/// Q_t(q^a) Q_t(q^b) - Q_t(q^{a+1}) Q_t(q^{b-1}) for a >= b >= t + 1.
/// Shifting one unit from the smaller part to the larger one strictly
/// decreases the product, so this is always positive.
[[nodiscard]] ExactInt exchange_inequality_margin(std::int64_t a, std::int64_t b, std::int64_t t, std::uint64_t q);

} // namespace sumrank
