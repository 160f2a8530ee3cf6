// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include "cli_contract.hpp"

#include "sumrank/counting.hpp"
#include "sumrank/oracle.hpp"
#include "sumrank/partitions.hpp"
#include "sumrank/sampling.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

using namespace sumrank;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why; // keep the first failure
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }

bool fits(std::uint64_t q, std::size_t points_exp, std::uint64_t limit_log2) {
    return ipow(q, points_exp) <= ExactInt(1) << limit_log2;
}

// Criterion 3's grid: q in {2,3,4}, t in {1,2,3}, l in {2,3,4}, l*t <= n <= 12.
template <class F> void for_each_grid_point(F&& f) {
    for (std::uint64_t q : {2, 3, 4})
        for (std::size_t t = 1; t <= 3; ++t)
            for (std::size_t ell = 2; ell <= 4; ++ell)
                for (std::size_t n = ell * t; n <= 12; ++n) f(q, t, ell, n);
}

Outcome criterion1() {
    Outcome o;
    std::size_t cases = 0;
    const auto start = Clock::now();
    for (std::uint64_t q : {2, 3}) {
        const auto field = FieldSpec::make(q);
        for (std::size_t m = 1; m <= 5; ++m)
            for (std::size_t n = 1; n <= 5; ++n) {
                if (!fits(q, m * n, 20)) continue;
                const auto dist = brute_rank_distribution(m, n, field);
                for (std::size_t t = 0; t <= std::min(m, n); ++t) {
                    ++cases;
                    const ExactInt brute = t < dist.size() ? dist[t] : ExactInt(0);
                    if (brute != count_rank_t(i64(m), i64(n), i64(t), q))
                        o.fail("rank count mismatch at q=" + std::to_string(q) + " m=" + std::to_string(m) +
                               " n=" + std::to_string(n) + " t=" + std::to_string(t));
                    if (brute_count_rank_t(m, n, t, field) != brute)
                        o.fail("per-rank oracle disagrees with rank distribution");
                    if (fits(q, m * t, 20) &&
                        brute_count_subspaces(m, t, field) != gaussian_binomial(i64(m), i64(t), q))
                        o.fail("subspace count mismatch at q=" + std::to_string(q) + " m=" + std::to_string(m) +
                               " t=" + std::to_string(t));
                }
            }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > 60) o.fail("took " + std::to_string(secs) + " s (limit 60 s)");
    if (o.pass) o.detail = std::to_string(cases) + " (q,m,n,t) cases";
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::size_t cases = 0;
    bool anchor_seen = false;
    for (std::uint64_t q : {2, 3})
        for (std::int64_t t = 1; t <= 2; ++t)
            for (std::int64_t m : {t, t + 1})
                for (std::size_t ell = 2; ell <= 3; ++ell)
                    for (std::size_t n = ell * static_cast<std::size_t>(t); n <= 8; ++n) {
                        if (!fits(q, static_cast<std::size_t>(m) * n, 20)) continue;
                        for (const auto& p : enumerate_partitions(n, ell, static_cast<std::size_t>(t))) {
                            const Scenario s{q, m, t, p};
                            const auto brute = brute_conditional_prob(s);
                            ++cases;
                            if (brute != exact_prob_full_sumrank(s))
                                o.fail("mismatch at q=" + std::to_string(q) + " m=" + std::to_string(m) +
                                       " t=" + std::to_string(t) + " P=" + p.to_string());
                            if (q == 2 && m == 2 && t == 1 && p == OrderedPartition({2, 2})) {
                                anchor_seen = true;
                                if (brute != ExactRatio(3, 5)) o.fail("anchor is " + ratio_string(brute));
                            }
                        }
                    }
    if (!anchor_seen) o.fail("anchor scenario not covered");
    if (o.pass) o.detail = std::to_string(cases) + " scenarios, anchor = 3/5";
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::size_t cases = 0;
    const auto start = Clock::now();
    for_each_grid_point([&](std::uint64_t q, std::size_t t, std::size_t ell, std::size_t n) {
        const auto ti = i64(t);
        const auto scan = minimize_product(n, ell, ti, q, MinimizeMode::exhaustive);
        const ExactInt closed = boost::multiprecision::pow(q_falling_product(q, ti, ti), static_cast<unsigned>(ell - 1)) *
                                q_falling_product(q, i64(n - (ell - 1) * t), ti);
        const ExactRatio via_bound = lower_bound_prob(i64(n), i64(ell), ti, q) * q_falling_product(q, i64(n), ti);
        ++cases;
        const std::string where =
            " at q=" + std::to_string(q) + " t=" + std::to_string(t) + " l=" + std::to_string(ell) + " n=" + std::to_string(n);
        if (scan.value != closed || ExactRatio(scan.value) != via_bound) o.fail("minimum differs" + where);
        for (const auto& p : enumerate_partitions(n, ell, t))
            if ((product_Q(p, ti, q) == scan.value) != is_extremal(p, t))
                o.fail("minimizer set differs from extremal permutations" + where + " P=" + p.to_string());
    });
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > 30) o.fail("took " + std::to_string(secs) + " s (limit 30 s)");
    if (o.pass) {
        std::ostringstream os;
        os.precision(2);
        os << std::fixed << cases << " grid points in " << secs << " s";
        o.detail = os.str();
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::size_t cases = 0;
    for_each_grid_point([&](std::uint64_t q, std::size_t t, std::size_t ell, std::size_t n) {
        const auto ti = i64(t);
        const ExactRatio bound = lower_bound_prob(i64(n), i64(ell), ti, q);
        if (lower_bound_product(i64(n), i64(ell), ti, q, 0) != bound) o.fail("factorwise product (i from 0) differs");
        for (const auto& p : enumerate_partitions(n, ell, t)) {
            ++cases;
            if (exact_prob_full_sumrank(Scenario{q, ti, ti, p}) < bound)
                o.fail("exact below bound at q=" + std::to_string(q) + " P=" + p.to_string());
        }
    });
    // The i-from-1 display variant collapses to 1 at t = 1, above every attainable value.
    const ExactRatio shifted = lower_bound_product(4, 2, 1, 2, 1);
    const ExactRatio ratio = lower_bound_prob(4, 2, 1, 2);
    if (shifted == ratio) o.fail("i-from-1 product unexpectedly equals the ratio at t=1");
    if (o.pass)
        o.detail = std::to_string(cases) + " scenarios; at q=2 n=4 l=2 t=1 the ratio is " + ratio_string(ratio) +
                   ", the i-from-1 product gives " + ratio_string(shifted);
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::size_t cases = 0, quarter = 0;
    for_each_grid_point([&](std::uint64_t q, std::size_t t, std::size_t ell, std::size_t n) {
        const ExactRatio corollary = corollary_bound(q, i64(ell));
        ExactRatio expected = 1;
        for (std::size_t i = 0; i < ell; ++i) expected *= ExactRatio(1) - ExactRatio(1, q) - ExactRatio(1, q * q);
        if (corollary != expected)
            o.fail("corollary_bound does not match its definition");
        for (const auto& p : enumerate_partitions(n, ell, t)) {
            const ExactRatio exact = exact_prob_full_sumrank(Scenario{q, i64(t), i64(t), p});
            ++cases;
            if (!(exact > corollary)) o.fail("not above corollary bound at q=" + std::to_string(q) + " P=" + p.to_string());
            if (ell + 1 <= q) {
                ++quarter;
                if (!(exact > ExactRatio(1, 4))) o.fail("not above 1/4 at q=" + std::to_string(q) + " P=" + p.to_string());
            }
        }
    });
    if (o.pass)
        o.detail = std::to_string(cases) + " scenarios above the corollary bound, " + std::to_string(quarter) +
                   " above 1/4";
    return o;
}

Outcome criterion6() {
    Outcome o;
    const std::map<std::uint64_t, double> printed{{2, 0.289}, {3, 0.560}, {7, 0.837}, {13, 0.917}};
    std::ostringstream os;
    for (const auto& [q, value] : printed) {
        const auto enc = pochhammer_partial(q, 40);
        const double lo = enc.lower.convert_to<double>();
        const double hi = enc.partial.convert_to<double>();
        if (!(lo - 5e-4 <= value && value <= hi + 5e-4))
            o.fail("q=" + std::to_string(q) + ": " + std::to_string(value) + " not within 5e-4 of [" +
                   enc.lower_decimal + ", " + enc.partial_decimal + "]");
        os << " q=" << q << ":" << enc.partial_decimal.substr(0, 8);
    }
    if (o.pass) o.detail = "J=40 enclosures" + os.str();
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto start = Clock::now();
    struct Case {
        std::uint64_t q;
        std::size_t m, n, t;
    };
    std::ostringstream os;
    os.precision(3);
    for (const auto c : {Case{2, 2, 2, 1}, Case{2, 2, 2, 2}, Case{3, 2, 2, 1}}) {
        const auto field = FieldSpec::make(c.q);
        std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
        for (const auto& a : enumerate_matrices(c.m, c.n, field)) {
            if (rank(a) != c.t) continue;
            std::vector<std::uint32_t> key;
            for (const auto e : a.entries()) key.push_back(e.value);
            counts[key] = 0;
        }
        const std::uint64_t cells = count_rank_t(i64(c.m), i64(c.n), i64(c.t), c.q).convert_to<std::uint64_t>();
        if (counts.size() != cells) o.fail("oracle and formula disagree on the number of rank-t matrices");
        const std::uint64_t draws = 100 * cells;
        for (std::uint64_t k = 0; k < draws; ++k) {
            TrialRng rng(7, k);
            const auto a = sample_rank_t(c.m, c.n, c.t, field, rng);
            if (rank(a) != c.t) {
                o.fail("draw of wrong rank");
                continue;
            }
            std::vector<std::uint32_t> key;
            for (const auto e : a.entries()) key.push_back(e.value);
            ++counts[key];
        }
        const double expected = 100.0;
        double stat = 0;
        for (const auto& [k, v] : counts) stat += (static_cast<double>(v) - expected) * (static_cast<double>(v) - expected) / expected;
        const boost::math::chi_squared dist(static_cast<double>(cells - 1));
        const double p_value = boost::math::cdf(boost::math::complement(dist, stat));
        if (p_value < 0.001) o.fail("uniformity rejected (p=" + std::to_string(p_value) + ")");
        os << " (" << c.q << "," << c.m << "," << c.n << "," << c.t << ") p=" << p_value;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > 10) o.fail("took " + std::to_string(secs) + " s (limit 10 s)");
    if (o.pass) o.detail = "chi-square at alpha=0.001:" + os.str();
    return o;
}

Outcome criterion8() {
    Outcome o;
    const Scenario anchor{2, 2, 1, OrderedPartition({2, 2})};
    SamplerConfig cfg;
    cfg.seed = 0;
    cfg.trials = 100000;
    const auto first = estimate_prob(anchor, cfg);
    const auto second = estimate_prob(anchor, cfg);
    const double est = first.estimate.convert_to<double>();
    const double diff = std::abs(est - 0.6);
    if (diff > 4 * first.std_error) o.fail("|estimate - 3/5| = " + std::to_string(diff) + " > 4*stderr");
    if (!(first == second)) o.fail("rerun with the same seed differs");
    if (o.pass) {
        std::ostringstream os;
        os << "hits=" << first.hits << "/" << first.trials << " estimate=" << est << " stderr=" << first.std_error
           << " rerun identical";
        o.detail = os.str();
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::size_t cases = 0;
    for (const auto& c : testing::cli_contract()) {
        ++cases;
        const auto why = testing::run_contract_case(c);
        if (!why.empty()) o.fail(c.name + ": " + why);
    }
    if (o.pass) o.detail = std::to_string(cases) + " example invocations, JSON schema-valid";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"counting formulas match exhaustive enumeration", criterion1},
        {"full sum-rank probability matches exhaustive enumeration", criterion2},
        {"partition minimum and minimizers", criterion3},
        {"probability at or above the lower bound; index-0 product", criterion4},
        {"corollary bound and 1/4 threshold", criterion5},
        {"Pochhammer reference values", criterion6},
        {"rank-t sampler uniformity", criterion7},
        {"Monte Carlo concordance and determinism", criterion8},
        {"CLI examples and JSON schemas", criterion9},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("[%s] criterion %zu: %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
