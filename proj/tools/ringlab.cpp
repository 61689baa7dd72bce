#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "ringlab/dsl.hpp"
#include "ringlab/kernels.hpp"
#include "ringlab/report.hpp"
#include "ringlab/theorems.hpp"

using namespace ringlab;

namespace {

// exit codes: 0 pass, 1 counterexample/predicate-false, 2 usage or parse
// error, 3 resource cap exceeded
constexpr int kOk = 0, kCounterexample = 1, kUsage = 2, kCapExceeded = 3;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::size_overflow:
        case ErrorCode::cap_exceeded: return kCapExceeded;
        case ErrorCode::engine_bug: return kCounterexample;
        default: return kUsage;
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::bad_argument, "cannot write " + path);
    out << text;
}

void print_subset(const FiniteRing& r, const char* name, const Subset& s) {
    std::cout << name << " (" << s.count() << "): ";
    std::cout << s.to_string(24) << "\n";
}

int cmd_invariants(const std::string& expr_text, const std::string& set_name,
                   const std::string& json_path) {
    FiniteRing r = eval_ring(expr_text);
    const InvariantBundle& b = invariants_of(r);
    std::cout << "ring: " << r.name() << "  (" << r.size() << " elements)\n";
    bool all = set_name == "all";
    if (all) {
        std::cout << "element labels:\n";
        for (std::size_t i = 0; i < r.size(); ++i)
            std::cout << "  #" << i << " = " << r.label(Elem(i)) << "\n";
    }
    if (all || set_name == "units") print_subset(r, "units", b.units);
    if (all || set_name == "jacobson") print_subset(r, "jacobson", b.jacobson);
    if (all || set_name == "delta") print_subset(r, "delta", b.delta);
    if (all || set_name == "nil") print_subset(r, "nilpotents", b.nilpotents);
    if (all || set_name == "id") print_subset(r, "idempotents", b.idempotents);
    if (all || set_name == "center") print_subset(r, "center", b.center);
    if (all || set_name == "prime-radical") print_subset(r, "prime_radical", b.prime_radical);
    if (all) {
        DeltaUExponent e = delta_u_exponent(r);
        std::cout << "delta_u_exponent: n_min = " << e.n_min << ", L = " << e.limit
                  << ", valid n up to L:";
        for (auto n : e.valid_exponents) std::cout << " " << n;
        std::cout << "\n";
    }
    if (!json_path.empty()) write_text(json_path, invariants_report_json(r));
    return kOk;
}

int cmd_check(const std::string& expr_text, const std::string& pred, std::optional<int> n) {
    FiniteRing r = eval_ring(expr_text);
    PredicateResult res = eval_predicate(r, pred, n);
    std::cout << res.name;
    if (res.param) std::cout << "(n = " << *res.param << ")";
    std::cout << " on " << r.name() << ": " << (res.value ? "true" : "false") << "\n";
    if (res.witness) std::cout << "witness: " << *res.witness << "\n";
    return res.value ? kOk : kCounterexample;
}

int cmd_theorems(const std::string& corpus_path, const std::string& only_csv, int jobs,
                 const std::string& json_path, bool with_timing) {
    CorpusSpec spec = corpus_path.empty() ? default_corpus() : parse_corpus_file(corpus_path);
    SuiteOptions opts;
    opts.jobs = jobs;
    if (!only_csv.empty()) {
        std::stringstream ss(only_csv);
        std::string id;
        while (std::getline(ss, id, ','))
            if (!id.empty()) opts.only.push_back(id);
    }
    auto t0 = std::chrono::steady_clock::now();
    SuiteRun run = run_suite(spec, opts);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

    std::map<std::string, std::array<std::uint32_t, 4>> per_check;
    for (const auto& r : run.results) {
        auto& c = per_check[r.check_id];
        c[std::size_t(r.status)]++;
    }
    for (const auto& [id, c] : per_check) {
        std::cout << id << ": pass " << c[0] << ", fail " << c[1] << ", vacuous " << c[2]
                  << ", flagged " << c[3] << "\n";
    }
    for (const auto& r : run.results) {
        if (r.status == CheckStatus::fail)
            std::cout << "FAIL " << r.check_id << " on " << r.ring << ": "
                      << (r.witness ? *r.witness : "") << "\n";
        if (r.status == CheckStatus::flagged)
            std::cout << "FLAG " << r.check_id << " on " << r.ring << ": "
                      << (r.witness ? *r.witness : "") << "\n";
    }
    std::cout << "rings: " << run.corpus.size() << ", results: " << run.results.size()
              << ", pass " << run.pass << ", fail " << run.fail << ", vacuous " << run.vacuous
              << ", flagged " << run.flagged << " (" << ms << " ms)\n";
    if (!json_path.empty())
        write_text(json_path, suite_report_json(run, with_timing ? ms : -1));
    return run.fail == 0 ? kOk : kCounterexample;
}

int cmd_search(const std::string& corpus_path, const std::string& formula, std::size_t limit,
               bool assert_empty, const std::string& json_path) {
    CorpusSpec spec = corpus_path.empty() ? default_corpus() : parse_corpus_file(corpus_path);
    SearchResult res = search_counterexamples(spec, formula, limit);
    std::cout << "scanned " << res.scanned << " rings, " << res.matches.size()
              << " match(es)\n";
    for (const auto& m : res.matches) std::cout << "  " << m << "\n";
    if (!json_path.empty()) write_text(json_path, search_report_json(res, formula));
    if (assert_empty && !res.matches.empty()) return kCounterexample;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ringlab: exact computation over small finite rings"};
    app.require_subcommand(1);

    std::string expr_text, set_name = "all", json_path, pred, corpus_path, only_csv, formula;
    int n_param = -1, jobs = 0;
    std::size_t limit = 0;
    bool assert_empty = false, with_timing = false;

    auto* inv = app.add_subcommand("invariants", "compute the distinguished subsets");
    inv->add_option("expr", expr_text, "ring expression, e.g. \"Zmod(6)\"")->required();
    inv->add_option("--set", set_name,
                    "units|jacobson|delta|nil|id|center|prime-radical|all");
    inv->add_option("--json", json_path, "write a JSON report");

    auto* chk = app.add_subcommand("check", "evaluate one ring-class predicate");
    chk->add_option("expr", expr_text, "ring expression")->required();
    chk->add_option("--pred", pred, "predicate name, e.g. n-delta-u, clean")->required();
    chk->add_option("--n", n_param, "parameter for n-indexed predicates");

    auto* thm = app.add_subcommand("theorems", "run the theorem suite over a corpus");
    thm->add_option("--corpus", corpus_path, "corpus file (default: built-in corpus)");
    thm->add_option("--only", only_csv, "comma-separated check ids");
    thm->add_option("--jobs", jobs, "parallel workers (default: all cores)");
    thm->add_option("--json", json_path, "write the canonical JSON report");
    thm->add_flag("--with-timing", with_timing,
                  "embed wall-clock timing in the JSON report (breaks byte-reproducibility)");

    auto* srch = app.add_subcommand("search", "search the corpus with a predicate formula");
    srch->add_option("--corpus", corpus_path, "corpus file (default: built-in corpus)");
    srch->add_option("--formula", formula, "e.g. \"n_delta_u(2) & !n_uj(2)\"")->required();
    srch->add_option("--limit", limit, "stop after this many matches");
    srch->add_flag("--assert-empty", assert_empty, "exit 1 if any ring matches");
    srch->add_option("--json", json_path, "write a JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed()) return cmd_invariants(expr_text, set_name, json_path);
        if (chk->parsed())
            return cmd_check(expr_text, pred,
                             n_param >= 0 ? std::optional<int>(n_param) : std::nullopt);
        if (thm->parsed())
            return cmd_theorems(corpus_path, only_csv, jobs, json_path, with_timing);
        if (srch->parsed())
            return cmd_search(corpus_path, formula, limit, assert_empty, json_path);
    } catch (const Error& e) {
        std::cerr << "error[" << e.code_name() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
