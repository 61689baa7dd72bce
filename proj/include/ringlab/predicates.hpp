#pragma once

#include <optional>
#include <string>

#include "ringlab/invariants.hpp"

namespace ringlab {

struct PredicateResult {
    std::string name;
    std::optional<int> param;
    bool value = false;
    std::optional<std::string> witness;  // set iff value is false and the
                                         // predicate is universally quantified

    explicit operator bool() const { return value; }
};

// Ring-class decision procedures, definitional scans throughout. Results are
// cached per (predicate, parameter) on the ring.

PredicateResult is_n_delta_u(const FiniteRing& r, int n);
PredicateResult is_delta_u(const FiniteRing& r);  // == is_n_delta_u(r, 1)
PredicateResult is_n_uj(const FiniteRing& r, int n);
PredicateResult is_n_uu(const FiniteRing& r, int n);

PredicateResult is_clean(const FiniteRing& r);
PredicateResult is_exchange(const FiniteRing& r);
PredicateResult is_regular(const FiniteRing& r);
PredicateResult is_strongly_regular(const FiniteRing& r);
PredicateResult is_unit_regular(const FiniteRing& r);
PredicateResult is_pi_regular(const FiniteRing& r);
PredicateResult is_strongly_pi_regular(const FiniteRing& r);
PredicateResult is_semiregular(const FiniteRing& r);
PredicateResult is_reduced(const FiniteRing& r);
PredicateResult is_abelian(const FiniteRing& r);
PredicateResult is_2_primal(const FiniteRing& r);
PredicateResult is_dedekind_finite(const FiniteRing& r);
PredicateResult satisfies_power_identity(const FiniteRing& r, int m);
PredicateResult right_ideals_have_idempotents(const FiniteRing& r);

// Every unit of R/I has a unit preimage in R; I must be a two-sided ideal.
PredicateResult units_lift(const FiniteRing& r, const Subset& ideal);

// Commutative and every nonzero element invertible.
bool is_field(const FiniteRing& r);

// Lookup by predicate name as used by the CLI and the search formulas
// ("n_delta_u", "clean", ...; '-' and '_' interchangeable). Throws
// unknown_name / bad_argument for unknown names or missing parameters.
PredicateResult eval_predicate(const FiniteRing& r, const std::string& name,
                               std::optional<int> n);
bool predicate_needs_param(const std::string& name);

}  // namespace ringlab
