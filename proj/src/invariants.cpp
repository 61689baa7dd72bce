#include "ringlab/invariants.hpp"

#include <algorithm>

#include "ringlab/kernels.hpp"

namespace ringlab {

namespace {

std::uint32_t order_of(const FiniteRing& r, Elem u) {
    Elem x = u;
    std::uint32_t ord = 1;
    while (x != r.one()) {
        x = r.mul(x, u);
        ++ord;
        if (ord > r.size())
            fail(ErrorCode::engine_bug, "unit power never reaches 1 in " + r.name());
    }
    return ord;
}

// Prime ideals as kernels of the quotient being a prime ring: in Q = R/P,
// aQb != 0 for all nonzero a, b.
bool is_prime_ideal(const FiniteRing& r, const Subset& p) {
    if (p.count() == r.size()) return false;  // proper ideals only
    QuotientRing q = quotient(r, p);
    const FiniteRing& Q = q.ring;
    const std::size_t m = Q.size();
    for (std::size_t a = 0; a < m; ++a) {
        if (Elem(a) == Q.zero()) continue;
        for (std::size_t b = 0; b < m; ++b) {
            if (Elem(b) == Q.zero()) continue;
            bool hit = false;
            for (std::size_t x = 0; x < m; ++x)
                if (Q.mul(Q.mul(Elem(a), Elem(x)), Elem(b)) != Q.zero()) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
    }
    return true;
}

InvariantBundle compute_bundle(const FiniteRing& r) {
    InvariantBundle b;
    Bits u = kernels::units(r);
    Bits j = kernels::jacobson(r, u);
    Bits d = kernels::delta(r, u);

    // delta must equal the pullback of J(T) along T = subring generated by units
    b.unit_subring = unit_subring(r, u);
    {
        const FiniteRing& t = b.unit_subring.ring;
        Bits ut = kernels::units(t);
        b.unit_subring_jacobson = kernels::jacobson(t, ut);
        Bits pullback(r.size());
        for (std::size_t i = 0; i < b.unit_subring.inclusion.size(); ++i)
            if (b.unit_subring_jacobson.test(i)) pullback.set(b.unit_subring.inclusion[i]);
        if (!(pullback == d))
            fail(ErrorCode::engine_bug,
                 "delta scan disagrees with J(unit subring) pullback on " + r.name());
    }
    if (!j.is_subset_of(d))
        fail(ErrorCode::engine_bug, "J(R) not contained in delta(R) on " + r.name());

    Bits nil = kernels::nilpotents(r);
    if (r.size() > 1) {
        Bits bad = nil & u;
        if (bad.any())
            fail(ErrorCode::engine_bug, "nilpotent unit found on " + r.name());
    }
    if (!u.test(r.one())) fail(ErrorCode::engine_bug, "1 is not a unit on " + r.name());

    b.units = Subset(r, u);
    b.jacobson = Subset(r, j);
    b.delta = Subset(r, d);
    b.nilpotents = Subset(r, nil);
    b.idempotents = Subset(r, kernels::idempotents(r));
    b.center = Subset(r, kernels::center(r));

    // finite => artinian => Nil_*(R) = J(R); the literal prime-ideal oracle
    // stays on as a cross-check at or below ideal_cap
    b.prime_radical = b.jacobson;
    if (r.size() <= caps::ideal_cap) {
        Bits meet(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) meet.set(i);
        for (const Subset& p : all_ideals(r))
            if (is_prime_ideal(r, p)) meet &= p.bits();
        if (!(meet == j))
            fail(ErrorCode::engine_bug,
                 "prime radical oracle disagrees with J(R) on " + r.name());
    }

    // unit orders, their lcm, and the set of valid n-delta-u exponents up to it
    std::uint64_t L = 1;
    for (Elem x : b.units.to_list()) {
        std::uint32_t ord = order_of(r, x);
        b.unit_orders[x] = ord;
        L = lcm_u64(L, ord);
    }
    b.exponent_lcm = L;
    b.valid_exponents.assign(std::size_t(L), 1);
    for (const auto& [x, ord] : b.unit_orders) {
        // u^n cycles with period ord; test one period, mark the bad residues
        std::vector<std::uint8_t> good(ord);
        Elem p = x;
        for (std::uint32_t i = 1; i <= ord; ++i) {
            good[i % ord] = d.test(r.sub(p, r.one())) ? 1 : 0;
            p = r.mul(p, x);
        }
        for (std::uint64_t n = 1; n <= L; ++n)
            if (!good[n % ord]) b.valid_exponents[n - 1] = 0;
    }
    b.delta_u_exponent = 0;
    for (std::uint64_t n = 1; n <= L; ++n)
        if (b.valid_exponents[n - 1]) {
            b.delta_u_exponent = std::uint32_t(n);
            break;
        }
    if (b.delta_u_exponent == 0)
        fail(ErrorCode::engine_bug, "no valid exponent at L = lcm of unit orders");
    return b;
}

}  // namespace

const InvariantBundle& invariants_of(const FiniteRing& r) {
    return r.cache().get_or<InvariantBundle>(kSlotInvariants, [&] { return compute_bundle(r); });
}

Subset units(const FiniteRing& r) { return invariants_of(r).units; }
Subset jacobson(const FiniteRing& r) { return invariants_of(r).jacobson; }
Subset delta(const FiniteRing& r) { return invariants_of(r).delta; }
Subset nilpotents(const FiniteRing& r) { return invariants_of(r).nilpotents; }
Subset idempotents(const FiniteRing& r) { return invariants_of(r).idempotents; }
Subset center(const FiniteRing& r) { return invariants_of(r).center; }
Subset prime_radical(const FiniteRing& r) { return invariants_of(r).prime_radical; }
std::map<Elem, std::uint32_t> unit_orders(const FiniteRing& r) {
    return invariants_of(r).unit_orders;
}

DeltaUExponent delta_u_exponent(const FiniteRing& r) {
    const InvariantBundle& b = invariants_of(r);
    DeltaUExponent e;
    e.n_min = b.delta_u_exponent;
    e.limit = b.exponent_lcm;
    for (std::uint64_t n = 1; n <= b.exponent_lcm; ++n)
        if (b.valid_exponents[n - 1]) e.valid_exponents.push_back(std::uint32_t(n));
    return e;
}

Subset prime_radical_oracle(const FiniteRing& r, std::size_t cap) {
    Bits meet(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) meet.set(i);
    for (const Subset& p : all_ideals(r, cap))
        if (is_prime_ideal(r, p)) meet &= p.bits();
    return Subset(r, meet);
}

const QuotientRing& quotient_by_j(const FiniteRing& r) {
    return r.cache().get_or<QuotientRing>(kSlotQuotByJ, [&] {
        return quotient(r, invariants_of(r).jacobson);
    });
}

}  // namespace ringlab
