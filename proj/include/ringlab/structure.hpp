#pragma once

#include <vector>

#include "ringlab/ring.hpp"

namespace ringlab {

// Ideal, quotient, corner and subring machinery on one ring.

bool is_ideal(const FiniteRing& r, const Subset& s);

// Smallest two-sided ideal containing gens (closure of R.gens.R under the
// additive subgroup operations).
Subset ideal_generated(const FiniteRing& r, const std::vector<Elem>& gens);

// Every two-sided ideal; principal ideals closed under pairwise sum.
// Throws cap_exceeded above the cap.
std::vector<Subset> all_ideals(const FiniteRing& r, std::size_t cap = caps::ideal_cap);

// Every two-sided ideal contained in the given ideal (used with J(R); exact
// for any ring size since only elements of the bound set seed closures).
std::vector<Subset> ideals_within(const FiniteRing& r, const Subset& bound);

struct QuotientRing {
    FiniteRing ring;
    RingHom projection;
};

// Coset ring R/I with canonical projection; cosets ordered by their minimal
// representative id. I must be a two-sided ideal.
QuotientRing quotient(const FiniteRing& r, const Subset& ideal);

// Corner ring eRe for an idempotent e; elements sorted by parent id, so
// corner(R, 1) reproduces R's tables exactly.
FiniteRing corner(const FiniteRing& r, Elem e);

struct SubringView {
    FiniteRing ring;
    std::vector<Elem> inclusion;  // subring id -> parent id
};

// Smallest unital subring containing U(R). Since sums of units are closed
// under multiplication, this is the additive closure of U(R) u {0}.
SubringView unit_subring(const FiniteRing& r, const Bits& units);

// Subring on an explicit element set (must contain 0 and 1 and be closed
// under add/neg/mul; checked).
SubringView subring_from(const FiniteRing& r, const std::vector<Elem>& elems);

// All unital subrings, smallest first; throws cap_exceeded if |R| > cap.
std::vector<SubringView> unital_subrings(const FiniteRing& r,
                                         std::size_t cap = caps::subring_cap);

// Corner rings at a complete orthogonal set of primitive central idempotents
// of a ring with J = 0; throws if J(S) != 0 (caller passes jacobson mask).
std::vector<FiniteRing> semisimple_decomposition(const FiniteRing& s, const Bits& jacobson);

}  // namespace ringlab
