#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ringlab/structure.hpp"

namespace ringlab {

// Distinguished subsets and numeric invariants of one finite ring, computed
// once per ring and cached on it. Construction runs the engine cross-checks:
//   - units: left-bijectivity must yield a two-sided inverse;
//   - jacobson: left and right quasi-regularity scans must agree;
//   - delta: the (1-ua) and (1-au) scans must agree, and the definitional set
//     must equal the pullback of J(T) along T = subring generated by units;
//   - prime radical: equals J (finite rings are artinian); for rings at or
//     below ideal_cap also matched against the literal intersection of the
//     prime ideals.
// Any mismatch throws an engine_bug error.
struct InvariantBundle {
    Subset units, idempotents, nilpotents, center, jacobson, delta, prime_radical;
    std::map<Elem, std::uint32_t> unit_orders;
    std::uint64_t exponent_lcm = 1;        // L = lcm of unit orders
    std::uint32_t delta_u_exponent = 1;    // least n >= 1 with u^n - 1 in delta for all u
    std::vector<std::uint8_t> valid_exponents;  // index n-1, for n in 1..L
    SubringView unit_subring;
    Bits unit_subring_jacobson;  // J(T) over the subring's own ids

    bool exponent_valid(std::uint64_t n) const {
        if (n == 0) return false;
        std::uint64_t rem = n % exponent_lcm;
        if (rem == 0) rem = exponent_lcm;
        return valid_exponents[rem - 1] != 0;
    }
};

const InvariantBundle& invariants_of(const FiniteRing& r);

// Individual spec-facing accessors (thin views over the cached bundle).
Subset units(const FiniteRing& r);
Subset jacobson(const FiniteRing& r);
Subset delta(const FiniteRing& r);
Subset nilpotents(const FiniteRing& r);
Subset idempotents(const FiniteRing& r);
Subset center(const FiniteRing& r);
Subset prime_radical(const FiniteRing& r);
std::map<Elem, std::uint32_t> unit_orders(const FiniteRing& r);

struct DeltaUExponent {
    std::uint32_t n_min;
    std::uint64_t limit;                       // L
    std::vector<std::uint32_t> valid_exponents;  // all valid n <= L
};
DeltaUExponent delta_u_exponent(const FiniteRing& r);

// Literal prime-ideal-intersection oracle (requires size <= ideal_cap).
Subset prime_radical_oracle(const FiniteRing& r, std::size_t cap = caps::ideal_cap);

// R/J(R) with its projection, built once per ring and cached.
const QuotientRing& quotient_by_j(const FiniteRing& r);

}  // namespace ringlab
