#include "sumrank/counting.hpp"
#include "sumrank/errors.hpp"
#include "sumrank/oracle.hpp"
#include "sumrank/sampling.hpp"

#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <map>

using namespace sumrank;

namespace {

std::vector<std::uint32_t> key(const FqMatrix& a) {
    std::vector<std::uint32_t> k;
    for (const auto e : a.entries()) k.push_back(e.value);
    return k;
}

// Chi-square goodness of fit of the sampler against the uniform law on the
// oracle's list of rank-t matrices. Returns the p-value.
double uniformity_p_value(std::uint64_t q, std::size_t m, std::size_t n, std::size_t t, std::uint64_t seed) {
    auto f = FieldSpec::make(q);
    std::map<std::vector<std::uint32_t>, std::uint64_t> observed;
    for (const auto& a : enumerate_matrices(m, n, f))
        if (rank(a) == t) observed[key(a)] = 0;
    const std::uint64_t cells = observed.size();
    const std::uint64_t draws = 100 * cells;
    for (std::uint64_t k = 0; k < draws; ++k) {
        TrialRng rng(seed, k);
        const auto a = sample_rank_t(m, n, t, f, rng);
        REQUIRE(rank(a) == t);
        auto it = observed.find(key(a));
        REQUIRE(it != observed.end());
        ++it->second;
    }
    const double expected = static_cast<double>(draws) / static_cast<double>(cells);
    double stat = 0;
    for (const auto& [k, c] : observed) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    if (cells == 1) return 1.0;
    const boost::math::chi_squared dist(static_cast<double>(cells - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

} // namespace

TEST_CASE("full column rank sampler examples") {
    auto f2 = FieldSpec::make(2);
    for (std::uint64_t k = 0; k < 20; ++k) {
        TrialRng rng(1, k);
        CHECK(sample_full_column_rank(1, 1, f2, rng) == FqMatrix(f2, {{1}}));
    }
    // m = 2, t = 1 over F_2: the three nonzero columns, each about 1/3 of the time
    std::map<std::vector<std::uint32_t>, int> freq;
    for (std::uint64_t k = 0; k < 3000; ++k) {
        TrialRng rng(2, k);
        ++freq[key(sample_full_column_rank(2, 1, f2, rng))];
    }
    CHECK(freq.size() == 3);
    for (const auto& [k, c] : freq) CHECK(std::abs(c - 1000) < 120);

    TrialRng rng(0);
    CHECK_THROWS_AS(sample_full_column_rank(2, 3, f2, rng), InvalidDimension);
    CHECK_THROWS_AS(sample_full_column_rank(2, 0, f2, rng), InvalidDimension);
    CHECK_THROWS_AS(sample_full_column_rank(70, 1, f2, rng), InvalidDimension);
}

TEST_CASE("GL_2(F_2) frequencies") {
    auto f2 = FieldSpec::make(2);
    std::map<std::vector<std::uint32_t>, int> freq;
    for (std::uint64_t k = 0; k < 6000; ++k) {
        TrialRng rng(3, k);
        ++freq[key(sample_full_column_rank(2, 2, f2, rng))];
    }
    CHECK(freq.size() == 6);
    for (const auto& [k, c] : freq) CHECK(std::abs(c - 1000) < 130);
}

TEST_CASE("rank-t sampler always hits rank t") {
    for (std::uint64_t q : {2, 3, 4, 5, 9, 13}) {
        auto f = FieldSpec::make(q);
        for (std::size_t m = 1; m <= 5; ++m)
            for (std::size_t n = 1; n <= 5; ++n)
                for (std::size_t t = 0; t <= std::min(m, n); ++t)
                    for (std::uint64_t k = 0; k < 10; ++k) {
                        TrialRng rng(q * 1000 + m * 100 + n * 10 + t, k);
                        const auto a = sample_rank_t(m, n, t, f, rng);
                        CHECK(a.rows() == m);
                        CHECK(a.cols() == n);
                        CHECK(rank(a) == t);
                    }
    }
    auto f2 = FieldSpec::make(2);
    TrialRng rng(0);
    CHECK(sample_rank_t(3, 4, 0, f2, rng) == FqMatrix(f2, 3, 4));
    CHECK_THROWS_AS(sample_rank_t(2, 4, 3, f2, rng), InvalidDimension);
}

TEST_CASE("rank-t sampler is uniform (chi-square, alpha = 0.001)") {
    struct Case {
        std::uint64_t q;
        std::size_t m, n, t;
    };
    for (const auto c : {Case{2, 2, 2, 1}, Case{2, 2, 2, 2}, Case{3, 2, 2, 1}, Case{2, 3, 2, 1}, Case{2, 2, 3, 2},
                         Case{4, 2, 2, 1}, Case{3, 2, 2, 2}}) {
        const double count = count_rank_t(static_cast<std::int64_t>(c.m), static_cast<std::int64_t>(c.n),
                                          static_cast<std::int64_t>(c.t), c.q)
                                 .convert_to<double>();
        if (count > 512) continue;
        CAPTURE(c.q);
        CAPTURE(c.m);
        CAPTURE(c.n);
        CAPTURE(c.t);
        CHECK(uniformity_p_value(c.q, c.m, c.n, c.t, 11) > 0.001);
    }
}

TEST_CASE("estimator examples") {
    Scenario anchor{2, 2, 1, OrderedPartition({2, 2})};
    SamplerConfig cfg;
    cfg.seed = 0;
    cfg.trials = 100000;
    const auto est = estimate_prob(anchor, cfg);
    CHECK(est.trials == 100000);
    const double diff = std::abs(est.estimate.convert_to<double>() - 0.6);
    CHECK(diff <= 3 * est.std_error);

    Scenario single{3, 3, 2, OrderedPartition({4})};
    cfg.trials = 500;
    const auto one = estimate_prob(single, cfg);
    CHECK(one.hits == one.trials);
    CHECK(one.estimate == 1);
    CHECK(one.std_error == 0.0);

    Scenario zero{5, 2, 0, OrderedPartition({1, 2, 3})};
    CHECK(estimate_prob(zero, cfg).hits == 500);

    cfg.trials = 0;
    CHECK_THROWS_AS(estimate_prob(anchor, cfg), InvalidDimension);
    cfg.trials = 10;
    CHECK_THROWS_AS(estimate_prob(Scenario{2, 2, 2, OrderedPartition({1, 3})}, cfg), InvalidDimension);
}

TEST_CASE("estimates are reproducible and independent of thread count") {
    Scenario s{3, 3, 2, OrderedPartition({2, 3})};
    SamplerConfig cfg;
    cfg.seed = 42;
    cfg.trials = 4000;
    cfg.verify_rank = true;
    cfg.threads = 1;
    const auto a = estimate_prob(s, cfg);
    cfg.threads = 3;
    const auto b = estimate_prob(s, cfg);
    cfg.threads = 8;
    const auto c = estimate_prob(s, cfg);
    CHECK(a == b);
    CHECK(a == c);
    cfg.seed = 43;
    CHECK(estimate_prob(s, cfg).hits != a.hits); // different stream (overwhelmingly likely)
}

TEST_CASE("estimator agrees with exact value across a small grid") {
    for (std::uint64_t q : {2, 3, 4}) {
        for (const auto& parts : {std::vector<std::size_t>{1, 3}, {2, 2}, {1, 1, 2}, {2, 3}}) {
            Scenario s{q, 2, 1, OrderedPartition(parts)};
            SamplerConfig cfg;
            cfg.seed = q;
            cfg.trials = 20000;
            const auto est = estimate_prob(s, cfg);
            const double exact = exact_prob_full_sumrank(s).convert_to<double>();
            CAPTURE(q);
            CHECK(std::abs(est.estimate.convert_to<double>() - exact) <= 4 * est.std_error);
        }
    }
}
