#include "sumrank/oracle.hpp"

#include "sumrank/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <exception>
#include <set>
#include <thread>

namespace sumrank {

namespace {

constexpr std::uint64_t kMaxIndex = std::uint64_t{1} << 62;

// q^k as uint64 after checking it against the budget.
std::uint64_t checked_space(std::uint64_t q, std::size_t k, const EnumerationBudget& budget) {
    const ExactInt points = ipow(q, k);
    if (points > budget.max_points || points > kMaxIndex)
        throw BudgetExceeded("enumeration of " + points.str() + " points exceeds the budget of " +
                             budget.max_points.str());
    return static_cast<std::uint64_t>(points);
}

// Runs body(first, last) over a split of [0, total) and returns the results in
// worker order. The combined result does not depend on the split.
template <class Result, class Body>
std::vector<Result> parallel_ranges(std::uint64_t total, unsigned threads, Body body) {
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    if (total < (std::uint64_t{1} << 14)) workers = 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
    std::vector<Result> results(workers);
    if (workers <= 1) {
        results[0] = body(0, total);
        return results;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t first = std::min(total, w * chunk);
        const std::uint64_t last = std::min(total, first + chunk);
        pool.emplace_back([&, w, first, last] {
            try {
                results[w] = body(first, last);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

// Rank over GF(2) of rows packed as words, restricted to the columns in mask.
std::size_t rank_gf2(const std::uint64_t* rows, std::size_t m, std::uint64_t mask) {
    std::array<std::uint64_t, 64> basis{};
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t x = rows[i] & mask;
        while (x) {
            const int top = std::bit_width(x) - 1;
            if (basis[static_cast<std::size_t>(top)] == 0) {
                basis[static_cast<std::size_t>(top)] = x;
                ++r;
                break;
            }
            x ^= basis[static_cast<std::size_t>(top)];
        }
    }
    return r;
}

// Flat (rank, weight) counts: index rank * (max_weight + 1) + weight.
using FlatCounts = std::vector<std::uint64_t>;

struct HistogramShape {
    std::size_t m;
    std::size_t n;
    std::vector<std::size_t> parts; // block widths; a single block means weight = rank
    std::size_t stride;             // max weight + 1
};

FlatCounts scan_gf2(const HistogramShape& shape, std::uint64_t first, std::uint64_t last) {
    const std::size_t m = shape.m, n = shape.n;
    FlatCounts counts((std::min(m, n) + 1) * shape.stride, 0);
    std::vector<std::uint64_t> masks;
    std::size_t offset = 0;
    for (const auto w : shape.parts) {
        masks.push_back((w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1) << offset);
        offset += w;
    }
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> rows(m);
    for (std::uint64_t u = first; u < last; ++u) {
        // Entry (i, j) is bit i*n + j of the counter.
        for (std::size_t i = 0; i < m; ++i) rows[i] = (u >> (i * n)) & full;
        const std::size_t r = rank_gf2(rows.data(), m, full);
        std::size_t w = r;
        if (masks.size() > 1) {
            w = 0;
            for (const auto mask : masks) w += rank_gf2(rows.data(), m, mask);
        }
        ++counts[r * shape.stride + w];
    }
    return counts;
}

FlatCounts scan_generic(const HistogramShape& shape, const FieldSpec& f, std::uint64_t first, std::uint64_t last) {
    const std::size_t m = shape.m, n = shape.n;
    FlatCounts counts((std::min(m, n) + 1) * shape.stride, 0);
    const std::uint32_t q = f.q();
    std::vector<FqElem> digits(m * n);
    std::uint64_t u = first;
    for (auto& d : digits) {
        d.value = static_cast<std::uint32_t>(u % q);
        u /= q;
    }
    std::vector<FqElem> work;
    for (std::uint64_t idx = first; idx < last; ++idx) {
        work = digits;
        const std::size_t r = reduce_row_echelon(f, work, m, n).size();
        std::size_t w = r;
        if (shape.parts.size() > 1) {
            w = 0;
            std::size_t col = 0;
            for (const auto width : shape.parts) {
                work.assign(m * width, FqElem{});
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < width; ++j) work[i * width + j] = digits[i * n + col + j];
                w += reduce_row_echelon(f, work, m, width).size();
                col += width;
            }
        }
        ++counts[r * shape.stride + w];
        for (auto& d : digits) { // odometer step
            if (++d.value < q) break;
            d.value = 0;
        }
    }
    return counts;
}

FlatCounts scan(const HistogramShape& shape, const FieldPtr& field, const EnumerationBudget& budget) {
    const std::uint64_t total = checked_space(field->q(), shape.m * shape.n, budget);
    const bool packed = field->q() == 2 && shape.n <= 64;
    auto parts = parallel_ranges<FlatCounts>(total, budget.threads, [&](std::uint64_t first, std::uint64_t last) {
        return packed ? scan_gf2(shape, first, last) : scan_generic(shape, *field, first, last);
    });
    FlatCounts sum = parts.front();
    for (std::size_t w = 1; w < parts.size(); ++w)
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += parts[w][i];
    return sum;
}

void require_positive(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) throw InvalidDimension("matrix dimensions must be positive");
}

} // namespace

MatrixEnumerator::MatrixEnumerator(std::size_t m, std::size_t n, FieldPtr field, const EnumerationBudget& budget)
    : m_(m), n_(n), field_(std::move(field)) {
    require_positive(m, n);
    total_ = checked_space(field_->q(), m * n, budget);
    digits_.assign(m * n, FqElem{});
    current_.emplace(field_, m_, n_, digits_);
}

void MatrixEnumerator::advance() {
    if (!current_) return;
    const std::uint32_t q = field_->q();
    for (auto& d : digits_) {
        if (++d.value < q) {
            current_.emplace(field_, m_, n_, digits_);
            return;
        }
        d.value = 0;
    }
    current_.reset(); // wrapped around: every matrix has been produced
}

MatrixEnumerator enumerate_matrices(std::size_t m, std::size_t n, FieldPtr field, const EnumerationBudget& budget) {
    return MatrixEnumerator(m, n, std::move(field), budget);
}

std::vector<ExactInt> brute_rank_distribution(std::size_t m, std::size_t n, const FieldPtr& field,
                                              const EnumerationBudget& budget) {
    require_positive(m, n);
    const HistogramShape shape{m, n, {n}, std::min(m, n) + 1};
    const auto counts = scan(shape, field, budget);
    std::vector<ExactInt> out(std::min(m, n) + 1, 0);
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = counts[r * shape.stride + r];
    return out;
}

ExactInt brute_count_rank_t(std::size_t m, std::size_t n, std::size_t t, const FieldPtr& field,
                            const EnumerationBudget& budget) {
    const auto dist = brute_rank_distribution(m, n, field, budget);
    return t < dist.size() ? dist[t] : ExactInt(0);
}

ExactInt brute_count_subspaces(std::size_t m, std::size_t t, const FieldPtr& field, const EnumerationBudget& budget) {
    if (m == 0) throw InvalidDimension("ambient dimension must be positive");
    if (t == 0) return 1;
    if (t > m) return 0;
    const std::uint64_t total = checked_space(field->q(), m * t, budget);
    const FieldSpec& f = *field;
    const std::uint32_t q = f.q();

    // Key: the t x m reduced row echelon form of the transposed spanning
    // matrix, i.e. the reduced column echelon form of the m x t matrix.
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<FqElem> digits(m * t); // row-major m x t, odometer order
    std::vector<FqElem> work(t * m);
    std::vector<std::uint32_t> key(t * m);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < t; ++j) work[j * m + i] = digits[i * t + j];
        if (reduce_row_echelon(f, work, t, m).size() == t) {
            std::transform(work.begin(), work.end(), key.begin(), [](FqElem e) { return e.value; });
            seen.insert(key);
        }
        for (auto& d : digits) {
            if (++d.value < q) break;
            d.value = 0;
        }
    }
    return ExactInt(seen.size());
}

WeightHistogram brute_weight_histogram(std::size_t m, const OrderedPartition& p, const FieldPtr& field,
                                       const EnumerationBudget& budget) {
    const std::size_t n = p.total();
    require_positive(m, n);
    const HistogramShape shape{m, n, p.parts(), p.length() * std::min(m, n) + 1};
    const auto counts = scan(shape, field, budget);
    WeightHistogram out;
    for (std::size_t r = 0; r <= std::min(m, n); ++r)
        for (std::size_t w = 0; w < shape.stride; ++w)
            if (const auto c = counts[r * shape.stride + w]; c != 0) out[{r, w}] = c;
    return out;
}

WeightHistogram brute_weight_histogram(const Scenario& s, const EnumerationBudget& budget) {
    if (s.m < 1) throw InvalidDimension("m must be positive");
    return brute_weight_histogram(static_cast<std::size_t>(s.m), s.partition, FieldSpec::make(s.q), budget);
}

ExactRatio brute_conditional_prob(const Scenario& s, const EnumerationBudget& budget) {
    if (s.t < 0) throw InvalidDimension("t must be nonnegative");
    const auto hist = brute_weight_histogram(s, budget);
    const auto t = static_cast<std::size_t>(s.t);
    const std::size_t full = t * s.partition.length();
    ExactInt with_rank = 0, hits = 0;
    for (const auto& [key, count] : hist) {
        if (key.first != t) continue;
        with_rank += count;
        if (key.second == full) hits += count;
    }
    if (with_rank == 0)
        throw DegenerateCondition("no " + std::to_string(s.m) + "x" + std::to_string(s.n()) + " matrix has rank " +
                                  std::to_string(t));
    return ExactRatio(hits, with_rank);
}

} // namespace sumrank
