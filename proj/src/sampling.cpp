#include "sumrank/sampling.hpp"

#include "sumrank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace sumrank {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// q^k, or 0 when it does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t q, std::size_t k) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / q) return 0;
        r *= q;
    }
    return r;
}

} // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) noexcept
    : state_(mix(seed + kGolden) ^ mix(trial * kGolden + 0x632be59bd9b4e019ULL)) {}

TrialRng::result_type TrialRng::operator()() noexcept {
    state_ += kGolden;
    return mix(state_);
}

std::uint64_t TrialRng::below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(*this);
}

FqMatrix sample_full_column_rank(std::size_t m, std::size_t t, const FieldPtr& field, TrialRng& rng) {
    if (t < 1 || m < t) throw InvalidDimension("full column rank sampling needs m >= t >= 1");
    const FieldSpec& f = *field;
    const std::uint64_t q = f.q();
    if (checked_pow(q, m) == 0) throw InvalidDimension("q^m does not fit in 64 bits");

    std::vector<FqElem> columns; // column j occupies [j*m, (j+1)*m)
    columns.reserve(m * t);
    std::vector<FqElem> echelon; // reduced row echelon form of the columns drawn so far, as rows
    std::vector<std::size_t> pivots;

    for (std::size_t j = 0; j < t; ++j) {
        // Basis of F_q^m: the echelon rows of the current span, plus the unit
        // vectors at non-pivot positions. A vector lies outside the span iff
        // its coordinate on some unit vector is nonzero. Index u in
        // [0, q^m - q^j) splits as (span digits, nonzero complement index).
        const std::uint64_t span_size = checked_pow(q, j);
        const std::uint64_t u = rng.below(checked_pow(q, m) - span_size);
        std::uint64_t span_index = u % span_size;
        std::uint64_t complement_index = u / span_size + 1; // in [1, q^{m-j})

        FqVector v(m, FieldSpec::zero());
        for (std::size_t r = 0; r < j; ++r) {
            const FqElem c{static_cast<std::uint32_t>(span_index % q)};
            span_index /= q;
            if (c.value == 0) continue;
            for (std::size_t k = 0; k < m; ++k) v[k] = f.add(v[k], f.mul(c, echelon[r * m + k]));
        }
        std::size_t next_pivot = 0;
        for (std::size_t k = 0; k < m; ++k) {
            if (next_pivot < pivots.size() && pivots[next_pivot] == k) {
                ++next_pivot;
                continue;
            }
            const FqElem c{static_cast<std::uint32_t>(complement_index % q)};
            complement_index /= q;
            v[k] = f.add(v[k], c);
        }

        columns.insert(columns.end(), v.begin(), v.end());
        echelon.insert(echelon.end(), v.begin(), v.end());
        pivots = reduce_row_echelon(f, echelon, j + 1, m);
    }

    std::vector<FqElem> out(m * t);
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t i = 0; i < m; ++i) out[i * t + j] = columns[j * m + i];
    return FqMatrix(field, m, t, std::move(out));
}

FqMatrix sample_rank_t(std::size_t m, std::size_t n, std::size_t t, const FieldPtr& field, TrialRng& rng) {
    if (m == 0 || n == 0) throw InvalidDimension("matrix dimensions must be positive");
    if (t > m || t > n) throw InvalidDimension("rank t exceeds a matrix dimension");
    if (t == 0) return FqMatrix(field, m, n);
    const FqMatrix left = sample_full_column_rank(m, t, field, rng);
    const FqMatrix right = sample_full_column_rank(n, t, field, rng).transpose();
    return left * right;
}

EstimateResult estimate_prob(const Scenario& s, const SamplerConfig& cfg) {
    validate_scenario(s);
    if (cfg.trials == 0) throw InvalidDimension("trials must be at least 1");
    const auto field = FieldSpec::make(s.q);
    const auto m = static_cast<std::size_t>(s.m);
    const auto n = static_cast<std::size_t>(s.n());
    const auto t = static_cast<std::size_t>(s.t);
    const std::size_t target = static_cast<std::size_t>(s.ell()) * t;

    auto run_range = [&](std::uint64_t first, std::uint64_t last) {
        std::uint64_t hits = 0;
        for (std::uint64_t k = first; k < last; ++k) {
            TrialRng rng(cfg.seed, k);
            const FqMatrix a = sample_rank_t(m, n, t, field, rng);
            if (cfg.verify_rank && rank(a) != t) throw Error("sampler produced a matrix of the wrong rank");
            if (sum_rank_weight(a, s.partition) == target) ++hits;
        }
        return hits;
    };

    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, cfg.trials));
    std::uint64_t hits = 0;
    if (workers <= 1) {
        hits = run_range(0, cfg.trials);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = std::min(cfg.trials, w * chunk);
            const std::uint64_t last = std::min(cfg.trials, first + chunk);
            pool.emplace_back([&, w, first, last] {
                try {
                    partial[w] = run_range(first, last);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (const auto h : partial) hits += h;
    }

    EstimateResult out;
    out.hits = hits;
    out.trials = cfg.trials;
    out.estimate = ExactRatio(ExactInt(hits), ExactInt(cfg.trials));
    const double p = static_cast<double>(hits) / static_cast<double>(cfg.trials);
    out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials));
    return out;
}

} // namespace sumrank
