#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/ring.hpp"

namespace ringlab {

struct AxiomViolation {
    std::string axiom;
    std::array<Elem, 3> witness{0, 0, 0};
};

struct AxiomReport {
    bool pass = true;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t triples_checked = 0;
    std::vector<AxiomViolation> violations;  // at most one per axiom family
};

namespace kernels {

// Data-parallel scan kernels (OpenMP). Each has a serial twin under
// kernels::serial used as the reference in tests and the benchmark; the two
// must produce identical results for every ring.

AxiomReport check_axioms(const FiniteRing& r, std::size_t full_cap = caps::axiom_cap,
                         std::uint64_t seed = caps::axiom_sample_seed,
                         std::size_t samples = caps::axiom_sample_triples);

// a is a unit iff x -> ax is a bijection; the two-sided inverse is located
// and verified, a mismatch is an engine bug.
Bits units(const FiniteRing& r);

// { r : forall a, 1 - ar is a unit }; computed on both sides, a left/right
// mismatch is an engine bug.
Bits jacobson(const FiniteRing& r, const Bits& units);

// { a : forall units u, 1 - ua is a unit }, cross-checked against the
// right-handed variant.
Bits delta(const FiniteRing& r, const Bits& units);

Bits nilpotents(const FiniteRing& r);
Bits idempotents(const FiniteRing& r);
Bits center(const FiniteRing& r);

namespace serial {
AxiomReport check_axioms(const FiniteRing& r, std::size_t full_cap = caps::axiom_cap,
                         std::uint64_t seed = caps::axiom_sample_seed,
                         std::size_t samples = caps::axiom_sample_triples);
Bits units(const FiniteRing& r);
Bits jacobson(const FiniteRing& r, const Bits& units);
Bits delta(const FiniteRing& r, const Bits& units);
Bits nilpotents(const FiniteRing& r);
Bits idempotents(const FiniteRing& r);
Bits center(const FiniteRing& r);
}  // namespace serial

}  // namespace kernels

// Spec-facing wrapper for the axiom check.
inline AxiomReport verify_axioms(const FiniteRing& r, std::size_t cap = caps::axiom_cap) {
    return kernels::check_axioms(r, cap);
}

}  // namespace ringlab
