#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/corpus.hpp"
#include "ringlab/predicates.hpp"

namespace ringlab {

enum class CheckStatus { pass, fail, vacuous, flagged };
const char* check_status_name(CheckStatus s);

// Outcome of one registry check over one corpus ring.
struct CheckResult {
    std::string check_id;
    std::string ring;  // canonical expression string
    std::vector<int> params;  // the n values exercised (empty if none)
    CheckStatus status = CheckStatus::pass;
    std::optional<std::string> witness;
    std::uint32_t checked = 0;  // non-vacuous instances
    std::uint32_t vacuous = 0;  // instances where the hypothesis filtered everything
};

enum class CheckTier { discriminating, consistency };

struct TheoremCheck {
    std::string id;       // "P2.3", "T2.13", ...
    std::string summary;  // one-line statement
    CheckTier tier = CheckTier::discriminating;
    // Top-level constructor kinds the check applies to; empty = every ring.
    // Lets restricted runs skip evaluating rings no active check wants.
    std::vector<ExprKind> kinds;
    // Evaluate over one ring; nullopt when the ring is not applicable.
    std::function<std::optional<CheckResult>(const FiniteRing&, const std::vector<int>& ns)>
        run;
};

const std::vector<TheoremCheck>& theorem_registry();
const TheoremCheck& find_check(const std::string& id);  // unknown_name if absent

struct SuiteOptions {
    std::vector<std::string> only;  // empty = all registry ids
    int jobs = 0;                   // 0 = library default
};

struct SuiteRun {
    std::vector<std::string> corpus;        // canonical expression strings
    std::vector<int> n_range;
    std::vector<CheckResult> results;       // sorted by (check_id, ring)
    std::uint32_t pass = 0, fail = 0, vacuous = 0, flagged = 0;
};

// Run registry checks over an expanded corpus. Result order is canonical
// regardless of the job count.
SuiteRun run_suite(const CorpusSpec& spec, const SuiteOptions& opts = {});

// One check against one already-built ring (unit tests / cmd_check plumbing).
std::optional<CheckResult> run_check_on(const std::string& id, const FiniteRing& ring,
                                        const std::vector<int>& ns);

// Boolean formula over predicate names: atoms "clean", "n_delta_u(2)", with
// '!', '&', '|' and parentheses.
struct SearchResult {
    std::vector<std::string> matches;  // corpus expressions satisfying the formula
    std::size_t scanned = 0;
};
SearchResult search_counterexamples(const CorpusSpec& spec, const std::string& formula,
                                    std::size_t limit = 0);

}  // namespace ringlab
