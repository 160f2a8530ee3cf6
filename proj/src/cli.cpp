#include "sumrank/cli.hpp"

#include "sumrank/counting.hpp"
#include "sumrank/errors.hpp"
#include "sumrank/exact.hpp"
#include "sumrank/field.hpp"
#include "sumrank/matrix.hpp"
#include "sumrank/oracle.hpp"
#include "sumrank/partitions.hpp"
#include "sumrank/sampling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace sumrank::cli {

namespace {

using nlohmann::ordered_json;

constexpr unsigned kDecimalDigits = 12;
constexpr std::uint64_t kPochhammerTerms = 40;

struct RunConfig {
    std::uint64_t q = 0;
    std::optional<std::int64_t> m;
    std::optional<std::int64_t> n;
    std::int64_t t = 0;
    std::int64_t ell = 0;
    std::string partition;
    std::string matrix_path;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool verify = false;
    bool subspaces = false;
    std::string format = "text";
    std::string out_path;
    std::string budget = std::to_string(std::uint64_t{1} << 22);
};

// One flat record (scalar reports) or a header plus rows (scan).
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    ordered_json json;
    Table table;
};

std::string decimal(const ExactRatio& r) { return to_decimal(r, kDecimalDigits); }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string scalar_text(const ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += scalar_text(v[i]);
        }
        return out;
    }
    return v.dump();
}

void flatten(const ordered_json& v, const std::string& prefix, Table& table) {
    if (v.is_object() && !v.empty()) {
        for (const auto& [key, child] : v.items()) flatten(child, prefix.empty() ? key : prefix + "." + key, table);
        return;
    }
    table.header.push_back(prefix);
    table.rows.front().push_back(scalar_text(v));
}

Table flat_table(const ordered_json& json) {
    Table table;
    table.rows.emplace_back();
    flatten(json, "", table);
    return table;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << csv_field(row[i]);
    }
    os << '\n';
}

void render(const Report& report, const std::string& format, std::ostream& os) {
    if (format == "json") {
        os << report.json.dump(2) << '\n';
    } else if (format == "csv") {
        write_csv_row(os, report.table.header);
        for (const auto& row : report.table.rows) write_csv_row(os, row);
    } else if (report.table.rows.size() == 1 && report.table.header.size() > 1 &&
               report.json.value("command", "") != "scan") {
        for (std::size_t i = 0; i < report.table.header.size(); ++i)
            os << report.table.header[i] << " = " << report.table.rows.front()[i] << '\n';
    } else {
        std::vector<std::size_t> width(report.table.header.size(), 0);
        for (std::size_t i = 0; i < width.size(); ++i) {
            width[i] = report.table.header[i].size();
            for (const auto& row : report.table.rows) width[i] = std::max(width[i], row[i].size());
        }
        auto line = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << row[i];
                if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
            }
            os << '\n';
        };
        line(report.table.header);
        for (const auto& row : report.table.rows) line(row);
    }
}

EnumerationBudget parse_budget(const RunConfig& cfg) {
    EnumerationBudget budget;
    try {
        budget.max_points = ExactInt(cfg.budget);
    } catch (const std::exception&) {
        throw ParseError("invalid --budget '" + cfg.budget + "'");
    }
    if (budget.max_points < 1) throw ParseError("--budget must be at least 1");
    budget.threads = cfg.threads;
    return budget;
}

ordered_json pochhammer_json(std::uint64_t q) {
    const auto enc = pochhammer_partial(q, kPochhammerTerms);
    return ordered_json{{"terms", enc.terms},
                        {"partial", enc.partial_decimal},
                        {"lower", enc.lower_decimal},
                        {"upper", enc.partial_decimal}};
}

Report cmd_count(const RunConfig& cfg) {
    require_prime_power(cfg.q);
    if (!cfg.m) throw InvalidDimension("--m is required");
    if (!cfg.n && !cfg.subspaces) throw InvalidDimension("--n is required unless --subspaces is given");
    const std::int64_t m = *cfg.m, t = cfg.t;
    if (t < 0 || m < t) throw InvalidDimension("need m >= t >= 0");
    if (cfg.n && *cfg.n < t) throw InvalidDimension("need n >= t");
    if (m < 1 || (cfg.n && *cfg.n < 1)) throw InvalidDimension("dimensions must be positive");

    ordered_json j;
    j["command"] = "count";
    j["q"] = cfg.q;
    j["m"] = m;
    j["n"] = cfg.n ? ordered_json(*cfg.n) : ordered_json(nullptr);
    j["t"] = t;
    j["q_product_m"] = q_falling_product(cfg.q, m, t).str();
    j["q_product_t"] = q_falling_product(cfg.q, t, t).str();
    j["gaussian_binomial"] = gaussian_binomial(m, t, cfg.q).str();
    if (cfg.n) {
        j["q_product_n"] = q_falling_product(cfg.q, *cfg.n, t).str();
        j["count_fixed_colspace"] = count_fixed_colspace(*cfg.n, t, cfg.q).str();
        j["count_rank_t"] = count_rank_t(m, *cfg.n, t, cfg.q).str();
    }
    if (cfg.subspaces) j["subspaces"] = j["gaussian_binomial"];
    if (cfg.verify) {
        const auto budget = parse_budget(cfg);
        const auto field = FieldSpec::make(cfg.q);
        ordered_json oracle;
        bool matches = true;
        if (cfg.n) {
            const auto brute = brute_count_rank_t(static_cast<std::size_t>(m), static_cast<std::size_t>(*cfg.n),
                                                  static_cast<std::size_t>(t), field, budget);
            oracle["count_rank_t"] = brute.str();
            matches = matches && brute.str() == j["count_rank_t"].get<std::string>();
        }
        if (cfg.subspaces) {
            const auto brute =
                brute_count_subspaces(static_cast<std::size_t>(m), static_cast<std::size_t>(t), field, budget);
            oracle["subspaces"] = brute.str();
            matches = matches && brute.str() == j["subspaces"].get<std::string>();
        }
        j["oracle"] = oracle;
        j["oracle_matches"] = matches;
    }
    return {j, flat_table(j)};
}

Report cmd_prob(const RunConfig& cfg) {
    require_prime_power(cfg.q);
    Scenario s;
    s.q = cfg.q;
    s.t = cfg.t;
    s.partition = OrderedPartition::parse(cfg.partition);
    s.m = cfg.m ? *cfg.m : std::max<std::int64_t>(cfg.t, static_cast<std::int64_t>(s.partition.max_part()));
    if (s.m < 1) throw InvalidDimension("m must be positive");
    validate_scenario(s);

    const ExactRatio exact = exact_prob_full_sumrank(s);
    const ExactRatio lower = s.t >= 1 ? lower_bound_prob(s.n(), s.ell(), s.t, s.q) : ExactRatio(1);
    const ExactRatio corollary = corollary_bound(s.q, s.ell());

    ordered_json j;
    j["command"] = "prob";
    ordered_json partition = ordered_json::array();
    for (const auto p : s.partition.parts()) partition.push_back(p);
    j["scenario"] = ordered_json{{"q", s.q}, {"m", s.m},     {"n", s.n()},
                                 {"t", s.t}, {"ell", s.ell()}, {"partition", partition}};
    j["exact"] = ratio_string(exact);
    j["exact_decimal"] = decimal(exact);
    j["lower_bound"] = ratio_string(lower);
    j["lower_bound_decimal"] = decimal(lower);
    j["is_extremal"] = s.t == 0 || is_extremal(s.partition, static_cast<std::size_t>(s.t));
    j["corollary_bound"] = ratio_string(corollary);
    j["corollary_bound_decimal"] = decimal(corollary);
    j["quarter_threshold"] = quarter_threshold_applies(s.q, s.ell());
    j["pochhammer"] = pochhammer_json(s.q);

    if (cfg.trials > 0) {
        SamplerConfig sc;
        sc.seed = cfg.seed;
        sc.trials = cfg.trials;
        sc.threads = cfg.threads;
        const auto est = estimate_prob(s, sc);
        const ExactRatio diff = est.estimate > exact ? ExactRatio(est.estimate - exact) : ExactRatio(exact - est.estimate);
        j["estimate"] = ordered_json{{"hits", est.hits},
                                     {"trials", est.trials},
                                     {"estimate", ratio_string(est.estimate)},
                                     {"estimate_decimal", decimal(est.estimate)},
                                     {"stderr", est.std_error},
                                     {"abs_error", decimal(diff)}};
    } else {
        j["estimate"] = nullptr;
    }

    if (cfg.verify) {
        const ExactRatio oracle = brute_conditional_prob(s, parse_budget(cfg));
        j["oracle"] = ratio_string(oracle);
        j["oracle_matches"] = oracle == exact;
    } else {
        j["oracle"] = nullptr;
        j["oracle_matches"] = nullptr;
    }
    j["timestamp"] = utc_timestamp();
    j["seed"] = cfg.seed;
    return {j, flat_table(j)};
}

Report cmd_scan(const RunConfig& cfg) {
    require_prime_power(cfg.q);
    if (!cfg.n) throw InvalidDimension("--n is required");
    const std::int64_t n = *cfg.n;
    if (cfg.ell < 1) throw InvalidDimension("--ell must be at least 1");
    if (cfg.t < 1) throw InvalidDimension("--t must be at least 1");
    if (n < cfg.ell * cfg.t) throw InvalidDimension("need n >= ell * t");

    const ExactRatio lower = lower_bound_prob(n, cfg.ell, cfg.t, cfg.q);
    struct Row {
        OrderedPartition partition;
        ExactRatio exact;
    };
    std::vector<Row> rows;
    for (const auto& p : enumerate_partitions(static_cast<std::size_t>(n), static_cast<std::size_t>(cfg.ell),
                                              static_cast<std::size_t>(cfg.t))) {
        Scenario s{cfg.q, cfg.t, cfg.t, p};
        rows.push_back({p, exact_prob_full_sumrank(s)});
    }
    // Stream order is lexicographic, so a stable sort keeps ties in that order.
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.exact < b.exact; });

    ordered_json j;
    j["command"] = "scan";
    j["q"] = cfg.q;
    j["n"] = n;
    j["ell"] = cfg.ell;
    j["t"] = cfg.t;
    j["lower_bound"] = ratio_string(lower);
    j["rows"] = ordered_json::array();
    Table table{{"partition", "exact", "lower_bound", "is_extremal"}, {}};
    for (const auto& row : rows) {
        ordered_json parts = ordered_json::array();
        for (const auto p : row.partition.parts()) parts.push_back(p);
        const bool extremal = is_extremal(row.partition, static_cast<std::size_t>(cfg.t));
        j["rows"].push_back(ordered_json{{"partition", parts},
                                         {"exact", ratio_string(row.exact)},
                                         {"exact_decimal", decimal(row.exact)},
                                         {"lower_bound", ratio_string(lower)},
                                         {"is_extremal", extremal}});
        table.rows.push_back(
            {row.partition.to_string(), ratio_string(row.exact), ratio_string(lower), extremal ? "true" : "false"});
    }
    return {j, table};
}

Report cmd_bounds(const RunConfig& cfg) {
    require_prime_power(cfg.q);
    if (cfg.ell < 1) throw InvalidDimension("--ell must be at least 1");
    const ExactRatio pentagonal = pentagonal_lower_bound(cfg.q);
    const ExactRatio corollary = corollary_bound(cfg.q, cfg.ell);
    const auto enc = pochhammer_partial(cfg.q, kPochhammerTerms);
    ExactRatio power_lower = 1;
    for (std::int64_t i = 0; i < cfg.ell; ++i) power_lower *= enc.lower;

    ordered_json j;
    j["command"] = "bounds";
    j["q"] = cfg.q;
    j["ell"] = cfg.ell;
    j["pentagonal_lower_bound"] = ratio_string(pentagonal);
    j["pentagonal_lower_bound_decimal"] = decimal(pentagonal);
    j["corollary_bound"] = ratio_string(corollary);
    j["corollary_bound_decimal"] = decimal(corollary);
    j["pochhammer"] = pochhammer_json(cfg.q);
    j["pochhammer_power_lower"] = to_decimal(power_lower, kDecimalDigits);
    j["pentagonal_below_pochhammer"] = pentagonal < enc.lower;
    j["quarter_threshold"] = quarter_threshold_applies(cfg.q, cfg.ell);
    return {j, flat_table(j)};
}

Report cmd_weight(const RunConfig& cfg) {
    std::ifstream in(cfg.matrix_path);
    if (!in) throw ParseError("cannot open matrix file '" + cfg.matrix_path + "'");
    const FqMatrix a = read_matrix(in);
    const auto p = cfg.partition.empty() ? OrderedPartition({a.cols()}) : OrderedPartition::parse(cfg.partition);
    const std::size_t r = rank(a);
    const std::size_t w = sum_rank_weight(a, p);
    ordered_json j;
    j["command"] = "weight";
    j["q"] = a.field().q();
    j["m"] = a.rows();
    j["n"] = a.cols();
    j["ell"] = p.length();
    j["rank"] = r;
    j["sum_rank_weight"] = w;
    j["is_full"] = w == p.length() * r;
    return {j, flat_table(j)};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact and simulated sum-rank weight statistics of random rank-t matrices over GF(q)"};
    app.require_subcommand(1);

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", cfg.out_path, "Write the report to PATH instead of stdout");
    };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--budget", cfg.budget, "Maximum number of matrices the oracle may enumerate");
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)");
    };

    auto* count = app.add_subcommand("count", "Q_t values, Gaussian binomials and rank-t matrix counts");
    count->add_option("--q", cfg.q, "Field size (prime power)")->required();
    count->add_option("--m", cfg.m, "Rows");
    count->add_option("--n", cfg.n, "Columns");
    count->add_option("--t", cfg.t, "Rank")->required();
    count->add_flag("--subspaces", cfg.subspaces, "Report the number of t-dim subspaces of F_q^m");
    count->add_flag("--verify", cfg.verify, "Cross-check against exhaustive enumeration");
    add_budget(count);
    add_format(count);

    auto* prob = app.add_subcommand("prob", "Probability that a random rank-t matrix has sum-rank weight l*t");
    prob->add_option("--q", cfg.q, "Field size (prime power)")->required();
    prob->add_option("--m", cfg.m, "Rows (default: max(t, largest part))");
    prob->add_option("--t", cfg.t, "Rank")->required();
    prob->add_option("--partition", cfg.partition, "Block widths, e.g. 2,2")->required();
    prob->add_option("--trials", cfg.trials, "Monte Carlo trials (0 = no simulation)");
    prob->add_option("--seed", cfg.seed, "Seed for the simulation");
    prob->add_flag("--verify", cfg.verify, "Cross-check against exhaustive enumeration");
    add_budget(prob);
    add_format(prob);

    auto* scan = app.add_subcommand("scan", "Exact probability for every partition with parts >= t");
    scan->add_option("--q", cfg.q, "Field size (prime power)")->required();
    scan->add_option("--n", cfg.n, "Total number of columns")->required();
    scan->add_option("--ell", cfg.ell, "Number of blocks")->required();
    scan->add_option("--t", cfg.t, "Rank")->required();
    add_format(scan);

    auto* bounds = app.add_subcommand("bounds", "Pentagonal and Pochhammer lower bounds");
    bounds->add_option("--q", cfg.q, "Field size (prime power)")->required();
    bounds->add_option("--ell", cfg.ell, "Number of blocks")->required();
    add_format(bounds);

    auto* weight = app.add_subcommand("weight", "Rank and sum-rank weight of a matrix read from a file");
    weight->add_option("--matrix", cfg.matrix_path, "Matrix file ('q m n' header, then rows)")->required();
    weight->add_option("--partition", cfg.partition, "Block widths (default: one block)");
    add_format(weight);

    std::vector<std::string> argv_storage{"sumrank"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }

    try {
        Report report;
        if (count->parsed()) report = cmd_count(cfg);
        else if (prob->parsed()) report = cmd_prob(cfg);
        else if (scan->parsed()) report = cmd_scan(cfg);
        else if (bounds->parsed()) report = cmd_bounds(cfg);
        else report = cmd_weight(cfg);

        if (cfg.out_path.empty()) {
            render(report, cfg.format, out);
        } else {
            std::ofstream file(cfg.out_path);
            if (!file) {
                err << "error: cannot write '" << cfg.out_path << "'\n";
                return kValidationError;
            }
            render(report, cfg.format, file);
        }
        return kSuccess;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudgetError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace sumrank::cli
