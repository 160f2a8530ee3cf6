#include "sumrank/partitions.hpp"

#include "sumrank/counting.hpp"
#include "sumrank/errors.hpp"

namespace sumrank {

PartitionStream::PartitionStream(std::size_t n, std::size_t ell, std::size_t min_part)
    : n_(n), ell_(ell), min_part_(min_part) {
    if (n == 0 || ell == 0 || min_part == 0) throw InvalidDimension("n, l and min_part must be positive");
    if (n < ell * min_part) return;
    std::vector<std::size_t> parts(ell, min_part);
    parts.back() = n - (ell - 1) * min_part;
    current_.emplace(std::move(parts));
}

void PartitionStream::advance() {
    if (!current_) return;
    auto parts = current_->parts();
    // Rightmost position (excluding the last) whose suffix can give up a unit.
    std::size_t suffix = parts.back();
    for (std::size_t i = ell_ - 1; i-- > 0;) {
        const std::size_t slots = ell_ - 1 - i;
        if (suffix > slots * min_part_) {
            ++parts[i];
            const std::size_t rest = suffix - 1;
            for (std::size_t k = i + 1; k + 1 < ell_; ++k) parts[k] = min_part_;
            parts.back() = rest - (slots - 1) * min_part_;
            current_.emplace(std::move(parts));
            return;
        }
        suffix += parts[i];
    }
    current_.reset();
}

std::optional<OrderedPartition> PartitionStream::next() {
    auto out = current_;
    advance();
    return out;
}

PartitionStream enumerate_partitions(std::size_t n, std::size_t ell, std::size_t min_part) {
    return PartitionStream(n, ell, min_part);
}

ExactInt partition_count(std::size_t n, std::size_t ell, std::size_t min_part) {
    if (ell == 0 || n < ell * min_part) return 0;
    const std::size_t top = n - ell * min_part + ell - 1;
    const std::size_t k = ell - 1;
    ExactInt result = 1;
    for (std::size_t i = 1; i <= k; ++i) result = result * (top - k + i) / i;
    return result;
}

ExactInt product_Q(const OrderedPartition& p, std::int64_t t, std::uint64_t q) {
    if (t < 0) throw InvalidDimension("t must be nonnegative");
    ExactInt result = 1;
    for (const auto part : p.parts()) {
        if (static_cast<std::int64_t>(part) < t) throw InvalidDimension("partition part smaller than t");
        result *= q_falling_product(q, static_cast<std::int64_t>(part), t);
    }
    return result;
}

OrderedPartition extremal_partition(std::size_t n, std::size_t ell, std::size_t t) {
    if (t == 0 || ell == 0) throw InvalidDimension("t and l must be positive");
    if (n < ell * t) throw InvalidDimension("n must be at least l*t");
    std::vector<std::size_t> parts(ell, t);
    parts.back() = n - (ell - 1) * t;
    return OrderedPartition(std::move(parts));
}

bool is_extremal(const OrderedPartition& p, std::size_t t) {
    // Multiset equality with {t x (l-1), n-(l-1)t}: at most one part differs from t.
    std::size_t off = 0;
    for (const auto part : p.parts())
        if (part != t) ++off;
    return off <= 1;
}

MinimizedProduct minimize_product(std::size_t n, std::size_t ell, std::int64_t t, std::uint64_t q,
                                  MinimizeMode mode) {
    if (t < 1) throw InvalidDimension("t must be at least 1");
    const auto tt = static_cast<std::size_t>(t);
    if (ell == 0 || n < ell * tt) throw InvalidDimension("n must be at least l*t");
    if (mode == MinimizeMode::formula) {
        auto p = extremal_partition(n, ell, tt);
        auto value = product_Q(p, t, q);
        return {std::move(p), std::move(value)};
    }
    std::optional<MinimizedProduct> best;
    for (const auto& p : enumerate_partitions(n, ell, tt)) {
        auto value = product_Q(p, t, q);
        if (!best || value < best->value) best = MinimizedProduct{p, std::move(value)};
    }
    return *best;
}

ExactInt exchange_inequality_margin(std::int64_t a, std::int64_t b, std::int64_t t, std::uint64_t q) {
    if (t < 0) throw InvalidDimension("t must be nonnegative");
    if (b <= t) throw InvalidDimension("b must exceed t");
    if (a < b) throw InvalidDimension("a must be at least b");
    return q_falling_product(q, a, t) * q_falling_product(q, b, t) -
           q_falling_product(q, a + 1, t) * q_falling_product(q, b - 1, t);
}

} // namespace sumrank
