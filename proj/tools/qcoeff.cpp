#include <CLI11.hpp>

#include "qcoeff/arith.hpp"
#include "qcoeff/congruence.hpp"
#include "qcoeff/errors.hpp"
#include "qcoeff/expand.hpp"
#include "qcoeff/output.hpp"
#include "qcoeff/series.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace qcoeff;

constexpr std::size_t kDefaultMaxOrder = 100000;

std::size_t max_order_cap() {
    const char* env = std::getenv("QCOEFF_MAX_ORDER");
    if (env == nullptr) return kDefaultMaxOrder;
    try {
        const long long cap = std::stoll(env);
        if (cap >= 0) return static_cast<std::size_t>(cap);
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("QCOEFF_MAX_ORDER must be a nonnegative integer, got '") + env +
                     "'");
}

void check_order_cap(std::size_t order) {
    const std::size_t cap = max_order_cap();
    if (order > cap) {
        throw ParseError("order " + std::to_string(order) + " exceeds the QCOEFF_MAX_ORDER cap of " +
                         std::to_string(cap));
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

std::string format_seconds(double seconds) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", seconds);
    return buffer;
}

struct CommonOpts {
    std::string format = "human";
    bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"human", "csv", "jsonl"}));
    cmd->add_flag("--no-timestamp", opts.no_timestamp,
                  "Omit the timestamp and wall-clock fields (byte-stable output)");
}

void finish(OutputRecord& record, const CommonOpts& opts) {
    if (!opts.no_timestamp) record.add_meta("timestamp", utc_timestamp());
    record.emit(std::cout, parse_format(opts.format));
}

template <typename F>
double time_best(int repeats, F&& body) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        best = std::min(best, elapsed.count());
    }
    return best;
}

SeriesExpansion run_engine(const std::string& engine, const Rat& r, std::size_t order) {
    if (engine == "sparse") return expand_sparse(r, order);
    if (engine == "lemma") return expand_lemma(r, Rat(-3), jacobi_expansion(order), order);
    if (engine == "oracle") {
        if (!is_integral(r)) {
            throw ParseError("the oracle engine expands integer exponents only, got r = " +
                             to_string(r));
        }
        if (!r.get_num().fits_slong_p()) {
            throw ParseError("exponent too large for the oracle engine: " + to_string(r));
        }
        std::uint64_t ops = 0;
        TruncatedSeries series = product_power_oracle(-r.get_num().get_si(), order, &ops);
        return oracle_expansion(r, series, ops);
    }
    throw ParseError("unknown engine '" + engine + "' (expected sparse, lemma or oracle)");
}

struct ExpandOpts {
    std::string r_text;
    std::size_t order = 0;
    std::optional<long> modulus;
    std::string engine = "sparse";
    CommonOpts common;
};

int cmd_expand(const ExpandOpts& opts) {
    const Rat r = parse_rational(opts.r_text);
    check_order_cap(opts.order);
    if (opts.modulus && *opts.modulus < 2) throw ParseError("--mod must be at least 2");
    const SeriesExpansion expansion = run_engine(opts.engine, r, opts.order);

    OutputRecord record;
    record.add_meta("command", "expand");
    record.add_meta("engine", std::string(engine_name(expansion.engine)));
    record.add_meta("r", to_string(r));
    record.add_meta("order", std::to_string(opts.order));
    if (opts.modulus) {
        record.add_meta("mod", std::to_string(*opts.modulus));
        record.columns = {"n", "residue"};
        for (std::size_t n = 0; n <= opts.order; ++n) {
            long value = 0;
            try {
                value = reduce_mod(expansion.coefficients[n], *opts.modulus).value;
            } catch (const DenominatorNotInvertible& e) {
                throw DenominatorNotInvertible("coefficient at index " + std::to_string(n) + ": " +
                                               e.what());
            }
            record.rows.push_back({std::to_string(n), std::to_string(value)});
        }
    } else {
        record.columns = {"n", "value"};
        for (std::size_t n = 0; n <= opts.order; ++n) {
            record.rows.push_back({std::to_string(n), to_string(expansion.coefficients[n])});
        }
    }
    finish(record, opts.common);
    return 0;
}

struct VerifyOpts {
    std::string family = "all";
    std::string r_text;
    std::size_t m_max = 0;
    CommonOpts common;
};

int cmd_verify(const VerifyOpts& opts) {
    const Rat r = parse_rational(opts.r_text);
    const CongruenceFamily family =
        opts.family == "all" ? preset_for_exponent(r) : preset_by_name(opts.family);
    // Check the exponent's residue class before paying for the expansion.
    const Residue r_residue = reduce_mod(r, family.modulus);
    if (r_residue.value != family.r_residue.value) {
        throw ResidueMismatch("exponent residue " + std::to_string(r_residue.value) + " (mod " +
                              std::to_string(family.modulus) + ") does not match family " +
                              family.name() + ", which requires residue " +
                              std::to_string(family.r_residue.value));
    }
    const std::size_t order =
        static_cast<std::size_t>(family.modulus) * opts.m_max +
        static_cast<std::size_t>(family.n_residue.value);
    check_order_cap(order);

    const auto start = std::chrono::steady_clock::now();
    const SeriesExpansion expansion = expand_sparse(r, order);
    const VerificationReport report = scan_family(family, r, opts.m_max, expansion);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    OutputRecord record;
    record.add_meta("command", "verify");
    record.add_meta("family", family.name());
    record.add_meta("r", to_string(r));
    record.add_meta("m_max", std::to_string(opts.m_max));
    record.add_meta("order", std::to_string(order));
    record.add_meta("engine", report.engine);
    record.add_meta("checked", std::to_string(opts.m_max + 1));
    record.add_meta("counterexamples", std::to_string(report.counterexamples.size()));
    record.add_meta("result", report.passed() ? "pass" : "fail");
    if (!opts.common.no_timestamp) record.add_meta("seconds", format_seconds(elapsed.count()));

    record.columns = {"m", "n", "residue"};
    for (const Counterexample& ce : report.counterexamples) {
        const std::size_t m = (ce.index - static_cast<std::size_t>(family.n_residue.value)) /
                              static_cast<std::size_t>(family.modulus);
        record.rows.push_back({std::to_string(m), std::to_string(ce.index), ce.observed});
    }
    if (report.passed()) {
        record.footer.push_back("PASS: P_r(" + family.name() + ") = 0 (mod " +
                                std::to_string(family.modulus) + ") for r = " + to_string(r) +
                                ", m = 0.." + std::to_string(opts.m_max));
    } else {
        record.footer.push_back("FAIL: " + std::to_string(report.counterexamples.size()) +
                                " nonzero residue(s) in class " + family.name());
    }
    finish(record, opts.common);
    return report.passed() ? 0 : 1;
}

struct TauOpts {
    long long n_max = 1;
    CommonOpts common;
};

int cmd_tau(const TauOpts& opts) {
    if (opts.n_max < 1) throw ParseError("--n-max must be at least 1");
    check_order_cap(static_cast<std::size_t>(opts.n_max));
    const std::vector<Int> values = tau_table(opts.n_max);

    OutputRecord record;
    record.add_meta("command", "tau");
    record.add_meta("engine", "sparse");
    record.add_meta("n_max", std::to_string(opts.n_max));
    record.columns = {"n", "tau"};
    for (long long n = 1; n <= opts.n_max; ++n) {
        record.rows.push_back({std::to_string(n), values[static_cast<std::size_t>(n - 1)].get_str()});
    }
    finish(record, opts.common);
    return 0;
}

struct TraceOpts {
    long long n = 1;
    std::string r_text;
    CommonOpts common;
};

int cmd_trace(const TraceOpts& opts) {
    if (opts.n < 1) throw ParseError("--n must be at least 1");
    const Rat r = parse_rational(opts.r_text);
    check_order_cap(static_cast<std::size_t>(opts.n));
    const SeriesExpansion expansion = expand_sparse(r, static_cast<std::size_t>(opts.n));
    const ProofTrace trace = trace_proof_step(opts.n, r, expansion);

    OutputRecord record;
    record.add_meta("command", "trace");
    record.add_meta("n", std::to_string(opts.n));
    record.add_meta("r", to_string(r));
    record.add_meta("coefficient", to_string(expansion.coefficients[static_cast<std::size_t>(opts.n)]));
    record.add_meta("reconstruction", trace.reconstruction_ok ? "ok" : "failed");
    record.add_meta("classification", trace.classification_applicable
                                          ? (trace.classification_ok ? "ok" : "failed")
                                          : "n/a");
    record.columns = {"j", "T_j", "sign", "factor", "factor_mod_5", "case", "argument"};
    for (const TraceTerm& term : trace.terms) {
        record.rows.push_back({std::to_string(term.j), std::to_string(term.t_j),
                               term.sign > 0 ? "+1" : "-1", to_string(term.factor_value),
                               std::to_string(term.factor_residue.value),
                               std::string(case_label_name(term.label)),
                               std::to_string(term.argument_index)});
    }
    record.footer.push_back(std::string("reconstruction: signed terms sum to n*P_r(n) — ") +
                            (trace.reconstruction_ok ? "ok" : "FAILED"));
    if (trace.classification_applicable) {
        record.footer.push_back(std::string("classification: every term has factor residue 0 or "
                                            "argument in the 5m+4 class — ") +
                                (trace.classification_ok ? "ok" : "FAILED"));
    }
    finish(record, opts.common);
    return trace.reconstruction_ok ? 0 : 1;
}

struct CheckOpts {
    std::string which = "all";
    std::size_t order = 1;
    CommonOpts common;
};

VerificationReport jacobi_check(std::size_t N) {
    VerificationReport report;
    report.description = "cube of the Euler product vs the closed form";
    report.range_min = 0;
    report.range_max = N;
    report.engine = "oracle";
    const TruncatedSeries product = product_power_oracle(3, N);
    for (std::size_t n = 0; n <= N; ++n) {
        const long expected = static_cast<long>(jacobi_coefficient(static_cast<long long>(n)));
        if (product[n] != expected) report.counterexamples.push_back({n, to_string(product[n])});
    }
    return report;
}

int cmd_check_identities(const CheckOpts& opts) {
    if (opts.order < 1) throw ParseError("--order must be at least 1");
    check_order_cap(opts.order);
    const std::size_t N = opts.order;
    const bool all = opts.which == "all";

    std::vector<std::pair<std::string, VerificationReport>> runs;
    if (all || opts.which == "lemma") {
        const std::vector<std::pair<Rat, Rat>> pairs = {
            {Rat(1), Rat(-3)},
            {Rat(-24), Rat(1)},
            {make_rational(5, 2), make_rational(-7, 3)},
        };
        for (const auto& [r, s] : pairs) {
            runs.emplace_back(
                "lemma r=" + to_string(r) + " s=" + to_string(s),
                verify_lemma_identity(r, s, expand_sparse(r, N), expand_sparse(s, N), N));
        }
    }
    if (all || opts.which == "sigma") {
        runs.emplace_back("sigma", verify_sigma_identity(N));
    }
    if (all || opts.which == "taup") {
        // tau from the sparse engine, p from the DP oracle: independent tables.
        const SeriesExpansion tau_table_exp = expand_sparse(Rat(-24), N);
        const SeriesExpansion p_table = oracle_expansion(Rat(1), partition_series_oracle(N));
        runs.emplace_back("taup",
                          verify_lemma_identity(Rat(-24), Rat(1), tau_table_exp, p_table, N));
    }
    if (all || opts.which == "jacobi") {
        runs.emplace_back("jacobi", jacobi_check(N));
    }

    OutputRecord record;
    record.add_meta("command", "check-identities");
    record.add_meta("which", opts.which);
    record.add_meta("order", std::to_string(N));
    record.columns = {"identity", "range", "status"};
    bool all_pass = true;
    for (const auto& [name, report] : runs) {
        all_pass = all_pass && report.passed();
        const std::string status =
            report.passed() ? "pass"
                            : "fail at n=" + std::to_string(report.counterexamples.front().index);
        record.rows.push_back({name,
                               std::to_string(report.range_min) + ".." +
                                   std::to_string(report.range_max),
                               status});
    }
    record.add_meta("result", all_pass ? "pass" : "fail");
    record.footer.push_back(all_pass ? "PASS: all requested identities hold exactly"
                                     : "FAIL: at least one identity has a nonzero defect");
    finish(record, opts.common);
    return all_pass ? 0 : 1;
}

struct BenchOpts {
    std::size_t order = 1;
    int repeats = 1;
    CommonOpts common;
};

int cmd_bench(const BenchOpts& opts) {
    if (opts.order < 1) throw ParseError("--order must be at least 1");
    if (opts.repeats < 1) throw ParseError("--repeats must be at least 1");
    check_order_cap(opts.order);
    const std::size_t N = opts.order;

    SeriesExpansion sparse;
    const double sparse_seconds = time_best(opts.repeats, [&] { sparse = expand_sparse(Rat(1), N); });

    const SeriesExpansion base = oracle_expansion(Rat(1), partition_series_oracle(N));
    SeriesExpansion lemma;
    const double lemma_seconds =
        time_best(opts.repeats, [&] { lemma = expand_lemma(Rat(1), Rat(1), base, N); });

    std::uint64_t oracle_ops = 0;
    TruncatedSeries oracle_series(0);
    const double oracle_seconds = time_best(opts.repeats, [&] {
        oracle_ops = 0;
        oracle_series = product_power_oracle(-1, N, &oracle_ops);
    });

    for (std::size_t n = 0; n <= N; ++n) {
        if (sparse.coefficients[n] != lemma.coefficients[n]) {
            throw AgreementFailure("sparse and lemma engines disagree at index " +
                                   std::to_string(n));
        }
        if (sparse.coefficients[n] != oracle_series[n]) {
            throw AgreementFailure("sparse and oracle engines disagree at index " +
                                   std::to_string(n));
        }
    }

    const std::uint64_t naive_terms =
        static_cast<std::uint64_t>(N) * (static_cast<std::uint64_t>(N) + 1) / 2;

    OutputRecord record;
    record.add_meta("command", "bench");
    record.add_meta("order", std::to_string(N));
    record.add_meta("repeats", std::to_string(opts.repeats));
    record.add_meta("agreement", "ok");
    record.add_meta("sparse_terms", std::to_string(sparse.inner_terms));
    record.add_meta("naive_terms", std::to_string(naive_terms));
    record.add_meta("term_ratio", to_string(make_rational(Int(static_cast<unsigned long>(sparse.inner_terms)),
                                                          Int(static_cast<unsigned long>(naive_terms)))));

    record.columns = {"engine", "inner_terms", "seconds"};
    const auto seconds_cell = [&](double s) {
        return opts.common.no_timestamp ? std::string("-") : format_seconds(s);
    };
    record.rows.push_back({"sparse", std::to_string(sparse.inner_terms), seconds_cell(sparse_seconds)});
    record.rows.push_back({"lemma", std::to_string(lemma.inner_terms), seconds_cell(lemma_seconds)});
    record.rows.push_back({"oracle", std::to_string(oracle_ops), seconds_cell(oracle_seconds)});

    record.footer.push_back("all three engines agree on " + std::to_string(N + 1) + " coefficients");
    char ratio[64];
    std::snprintf(ratio, sizeof ratio, "sparse/naive term ratio: %.4f%%",
                  100.0 * static_cast<double>(sparse.inner_terms) / static_cast<double>(naive_terms));
    record.footer.push_back(ratio);
    finish(record, opts.common);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact coefficients of rational powers of the partition generating function, "
                 "with mod-5 congruence verification and proof traces"};
    app.require_subcommand(1);

    int exit_code = 0;

    ExpandOpts expand_opts;
    CLI::App* expand_cmd =
        app.add_subcommand("expand", "Print P_r(0..N), optionally reduced mod m");
    expand_cmd->add_option("--r", expand_opts.r_text, "Exponent r as 'a/b' or an integer")
        ->required();
    expand_cmd->add_option("--order", expand_opts.order, "Truncation order N")->required();
    expand_cmd->add_option("--mod", expand_opts.modulus, "Reduce each coefficient modulo m");
    expand_cmd->add_option("--engine", expand_opts.engine, "Coefficient engine")
        ->check(CLI::IsMember({"sparse", "lemma", "oracle"}));
    add_common(expand_cmd, expand_opts.common);
    expand_cmd->callback([&] { exit_code = cmd_expand(expand_opts); });

    VerifyOpts verify_opts;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Scan a mod-5 congruence family for counterexamples");
    verify_cmd->add_option("--family", verify_opts.family, "Index class, or 'all' to match r")
        ->check(CLI::IsMember({"5m+4", "5m+1", "5m+2", "5m+3", "all"}));
    verify_cmd->add_option("--r", verify_opts.r_text, "Exponent r as 'a/b' or an integer")
        ->required();
    verify_cmd->add_option("--m-max", verify_opts.m_max, "Largest m to check")->required();
    add_common(verify_cmd, verify_opts.common);
    verify_cmd->callback([&] { exit_code = cmd_verify(verify_opts); });

    TauOpts tau_opts;
    CLI::App* tau_cmd = app.add_subcommand("tau", "Print tau(1..n_max) via the sparse recurrence");
    tau_cmd->add_option("--n-max", tau_opts.n_max, "Largest argument")->required();
    add_common(tau_cmd, tau_opts.common);
    tau_cmd->callback([&] { exit_code = cmd_tau(tau_opts); });

    TraceOpts trace_opts;
    CLI::App* trace_cmd =
        app.add_subcommand("trace", "Term-by-term decomposition of n*P_r(n) with mod-5 bookkeeping");
    trace_cmd->add_option("--n", trace_opts.n, "Coefficient index")->required();
    trace_cmd->add_option("--r", trace_opts.r_text, "Exponent r as 'a/b' or an integer")
        ->required();
    add_common(trace_cmd, trace_opts.common);
    trace_cmd->callback([&] { exit_code = cmd_trace(trace_opts); });

    CheckOpts check_opts;
    CLI::App* check_cmd =
        app.add_subcommand("check-identities", "Exact verification of the underlying identities");
    check_cmd->add_option("--which", check_opts.which, "Identity to check")
        ->check(CLI::IsMember({"lemma", "sigma", "taup", "jacobi", "all"}));
    check_cmd->add_option("--order", check_opts.order, "Verify up to this order")->required();
    add_common(check_cmd, check_opts.common);
    check_cmd->callback([&] { exit_code = cmd_check_identities(check_opts); });

    BenchOpts bench_opts;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Compare the engines on P_1 and report term counts");
    bench_cmd->add_option("--order", bench_opts.order, "Truncation order N")->required();
    bench_cmd->add_option("--repeats", bench_opts.repeats, "Timing repetitions (best of)");
    add_common(bench_cmd, bench_opts.common);
    bench_cmd->callback([&] { exit_code = cmd_bench(bench_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DenominatorNotInvertible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ResidueMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const IntegralityViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
