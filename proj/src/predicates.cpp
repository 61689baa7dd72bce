#include "ringlab/predicates.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ringlab {

namespace {

enum PredId : int {
    kNDeltaU,
    kNUJ,
    kNUU,
    kClean,
    kExchange,
    kRegular,
    kStronglyRegular,
    kUnitRegular,
    kPiRegular,
    kStronglyPiRegular,
    kSemiregular,
    kReduced,
    kAbelian,
    k2Primal,
    kDedekindFinite,
    kPowerIdentity,
    kRightIdealsIdem,
};

struct PredCache {
    mutable std::mutex m;
    mutable std::map<std::pair<int, int>, PredicateResult> entries;
};

template <class F>
PredicateResult cached(const FiniteRing& r, PredId id, int param, F&& compute) {
    const PredCache& c =
        r.cache().get_or<PredCache>(kSlotPredicates, [] { return PredCache{}; });
    std::lock_guard<std::mutex> lk(c.m);
    auto key = std::make_pair(int(id), param);
    auto it = c.entries.find(key);
    if (it == c.entries.end()) it = c.entries.emplace(key, compute()).first;
    return it->second;
}

PredicateResult make(std::string name, std::optional<int> param, bool value,
                     std::optional<std::string> witness = std::nullopt) {
    return PredicateResult{std::move(name), param, value, std::move(witness)};
}

Bits orbit_right(const FiniteRing& r, Elem a) {
    Bits out(r.size());
    for (std::size_t x = 0; x < r.size(); ++x) out.set(r.mul(a, Elem(x)));
    return out;
}

}  // namespace

PredicateResult is_n_delta_u(const FiniteRing& r, int n) {
    if (n < 1) fail(ErrorCode::bad_argument, "n-delta-u requires n >= 1");
    return cached(r, kNDeltaU, n, [&] {
        const InvariantBundle& b = invariants_of(r);
        // 1 + delta is always inside U; a violation is an engine bug, not a result
        for (Elem d : b.delta.to_list())
            if (!b.units.test(r.add(r.one(), d)))
                fail(ErrorCode::engine_bug, "1 + delta escapes U(R) on " + r.name());
        bool ok = b.exponent_valid(std::uint64_t(n));
        std::optional<std::string> witness;
        if (!ok) {
            for (Elem u : b.units.to_list())
                if (!b.delta.test(r.sub(r.pow(u, std::uint64_t(n)), r.one()))) {
                    witness = "u = " + r.label(u);
                    break;
                }
        }
        return make("n_delta_u", n, ok, witness);
    });
}

PredicateResult is_delta_u(const FiniteRing& r) {
    PredicateResult res = is_n_delta_u(r, 1);
    res.name = "delta_u";
    res.param.reset();
    return res;
}

PredicateResult is_n_uj(const FiniteRing& r, int n) {
    if (n < 1) fail(ErrorCode::bad_argument, "n-uj requires n >= 1");
    return cached(r, kNUJ, n, [&] {
        const InvariantBundle& b = invariants_of(r);
        for (Elem u : b.units.to_list())
            if (!b.jacobson.test(r.sub(r.pow(u, std::uint64_t(n)), r.one())))
                return make("n_uj", n, false, "u = " + r.label(u));
        return make("n_uj", n, true);
    });
}

PredicateResult is_n_uu(const FiniteRing& r, int n) {
    if (n < 1) fail(ErrorCode::bad_argument, "n-uu requires n >= 1");
    return cached(r, kNUU, n, [&] {
        const InvariantBundle& b = invariants_of(r);
        for (Elem u : b.units.to_list())
            if (!b.nilpotents.test(r.sub(r.pow(u, std::uint64_t(n)), r.one())))
                return make("n_uu", n, false, "u = " + r.label(u));
        return make("n_uu", n, true);
    });
}

PredicateResult is_clean(const FiniteRing& r) {
    return cached(r, kClean, 0, [&] {
        const InvariantBundle& b = invariants_of(r);
        const std::vector<Elem> idem = b.idempotents.to_list();
        for (std::size_t a = 0; a < r.size(); ++a) {
            bool found = false;
            for (Elem e : idem)
                if (b.units.test(r.sub(Elem(a), e))) {
                    found = true;
                    break;
                }
            if (!found) return make("clean", {}, false, "a = " + r.label(Elem(a)));
        }
        return make("clean", {}, true);
    });
}

PredicateResult is_exchange(const FiniteRing& r) {
    return cached(r, kExchange, 0, [&] {
        const InvariantBundle& b = invariants_of(r);
        const std::vector<Elem> idem = b.idempotents.to_list();
        for (std::size_t a = 0; a < r.size(); ++a) {
            Bits ar = orbit_right(r, Elem(a));
            Bits oar = orbit_right(r, r.sub(r.one(), Elem(a)));
            bool found = false;
            for (Elem e : idem)
                if (ar.test(e) && oar.test(r.sub(r.one(), e))) {
                    found = true;
                    break;
                }
            if (!found) return make("exchange", {}, false, "a = " + r.label(Elem(a)));
        }
        return make("exchange", {}, true);
    });
}

PredicateResult is_regular(const FiniteRing& r) {
    return cached(r, kRegular, 0, [&] {
        for (std::size_t a = 0; a < r.size(); ++a) {
            bool found = false;
            for (std::size_t x = 0; x < r.size(); ++x)
                if (r.mul(r.mul(Elem(a), Elem(x)), Elem(a)) == Elem(a)) {
                    found = true;
                    break;
                }
            if (!found) return make("regular", {}, false, "a = " + r.label(Elem(a)));
        }
        return make("regular", {}, true);
    });
}

PredicateResult is_strongly_regular(const FiniteRing& r) {
    return cached(r, kStronglyRegular, 0, [&] {
        for (std::size_t a = 0; a < r.size(); ++a) {
            Elem a2 = r.mul(Elem(a), Elem(a));
            bool found = false;
            for (std::size_t x = 0; x < r.size(); ++x)
                if (r.mul(a2, Elem(x)) == Elem(a)) {
                    found = true;
                    break;
                }
            if (!found) return make("strongly_regular", {}, false, "a = " + r.label(Elem(a)));
        }
        return make("strongly_regular", {}, true);
    });
}

PredicateResult is_unit_regular(const FiniteRing& r) {
    return cached(r, kUnitRegular, 0, [&] {
        const InvariantBundle& b = invariants_of(r);
        const std::vector<Elem> units = b.units.to_list();
        for (std::size_t a = 0; a < r.size(); ++a) {
            bool found = false;
            for (Elem x : units)
                if (r.mul(r.mul(Elem(a), x), Elem(a)) == Elem(a)) {
                    found = true;
                    break;
                }
            if (!found) return make("unit_regular", {}, false, "a = " + r.label(Elem(a)));
        }
        return make("unit_regular", {}, true);
    });
}

PredicateResult is_pi_regular(const FiniteRing& r) {
    return cached(r, kPiRegular, 0, [&] {
        for (std::size_t a = 0; a < r.size(); ++a) {
            Elem an = Elem(a);
            bool found = false;
            for (std::size_t n = 1; n <= r.size() + 1 && !found; ++n) {
                for (std::size_t x = 0; x < r.size(); ++x)
                    if (r.mul(r.mul(an, Elem(x)), an) == an) {
                        found = true;
                        break;
                    }
                an = r.mul(an, Elem(a));
            }
            if (!found) return make("pi_regular", {}, false, "a = " + r.label(Elem(a)));
        }
        return make("pi_regular", {}, true);
    });
}

PredicateResult is_strongly_pi_regular(const FiniteRing& r) {
    return cached(r, kStronglyPiRegular, 0, [&] {
        for (std::size_t a = 0; a < r.size(); ++a) {
            Elem an = Elem(a);  // a^n, starting at n = 1
            bool found = false;
            for (std::size_t n = 1; n <= r.size() + 1 && !found; ++n) {
                Elem an1 = r.mul(an, Elem(a));
                for (std::size_t x = 0; x < r.size(); ++x)
                    if (r.mul(an1, Elem(x)) == an) {
                        found = true;
                        break;
                    }
                an = an1;
            }
            if (!found)
                return make("strongly_pi_regular", {}, false, "a = " + r.label(Elem(a)));
        }
        return make("strongly_pi_regular", {}, true);
    });
}

PredicateResult is_semiregular(const FiniteRing& r) {
    return cached(r, kSemiregular, 0, [&] {
        const InvariantBundle& b = invariants_of(r);
        const QuotientRing& q = quotient_by_j(r);
        PredicateResult reg = is_regular(q.ring);
        if (!reg.value)
            return make("semiregular", {}, false, "R/J not regular at " + *reg.witness);
        // idempotents lift: every idempotent coset contains an idempotent of R
        Bits lifted(q.ring.size());
        for (Elem e : b.idempotents.to_list()) lifted.set(q.projection(e));
        for (std::size_t x = 0; x < q.ring.size(); ++x)
            if (q.ring.mul(Elem(x), Elem(x)) == Elem(x) && !lifted.test(x))
                return make("semiregular", {}, false,
                            "idempotent coset " + q.ring.label(Elem(x)) + " does not lift");
        return make("semiregular", {}, true);
    });
}

PredicateResult is_reduced(const FiniteRing& r) {
    return cached(r, kReduced, 0, [&] {
        const InvariantBundle& b = invariants_of(r);
        for (Elem x : b.nilpotents.to_list())
            if (x != r.zero()) return make("reduced", {}, false, "a = " + r.label(x));
        return make("reduced", {}, true);
    });
}

PredicateResult is_abelian(const FiniteRing& r) {
    return cached(r, kAbelian, 0, [&] {
        const InvariantBundle& b = invariants_of(r);
        for (Elem e : b.idempotents.to_list())
            if (!b.center.test(e)) return make("abelian", {}, false, "e = " + r.label(e));
        return make("abelian", {}, true);
    });
}

PredicateResult is_2_primal(const FiniteRing& r) {
    return cached(r, k2Primal, 0, [&] {
        const InvariantBundle& b = invariants_of(r);
        if (b.prime_radical == b.nilpotents) return make("2_primal", {}, true);
        Bits diff = b.nilpotents.bits();
        std::optional<std::string> witness;
        diff.for_each([&](Elem x) {
            if (!witness && !b.prime_radical.test(x)) witness = "a = " + r.label(x);
        });
        return make("2_primal", {}, false, witness);
    });
}

PredicateResult is_dedekind_finite(const FiniteRing& r) {
    return cached(r, kDedekindFinite, 0, [&] {
        for (std::size_t a = 0; a < r.size(); ++a)
            for (std::size_t x = 0; x < r.size(); ++x)
                if (r.mul(Elem(a), Elem(x)) == r.one() && r.mul(Elem(x), Elem(a)) != r.one())
                    return make("dedekind_finite", {}, false,
                                "ab = 1, ba != 1 at a = " + r.label(Elem(a)));
        return make("dedekind_finite", {}, true);
    });
}

PredicateResult satisfies_power_identity(const FiniteRing& r, int m) {
    if (m < 2) fail(ErrorCode::bad_argument, "power identity requires m >= 2");
    return cached(r, kPowerIdentity, m, [&] {
        for (std::size_t x = 0; x < r.size(); ++x)
            if (r.pow(Elem(x), std::uint64_t(m)) != Elem(x))
                return make("power_identity", m, false, "x = " + r.label(Elem(x)));
        return make("power_identity", m, true);
    });
}

PredicateResult right_ideals_have_idempotents(const FiniteRing& r) {
    return cached(r, kRightIdealsIdem, 0, [&] {
        const InvariantBundle& b = invariants_of(r);
        std::vector<Elem> idem = b.idempotents.to_list();
        idem.erase(std::remove(idem.begin(), idem.end(), r.zero()), idem.end());
        // nonzero principal right ideals suffice: every nonzero right ideal
        // contains one
        for (std::size_t a = 0; a < r.size(); ++a) {
            if (Elem(a) == r.zero()) continue;
            Bits ar = orbit_right(r, Elem(a));
            bool found = false;
            for (Elem e : idem)
                if (ar.test(e)) {
                    found = true;
                    break;
                }
            if (!found)
                return make("right_ideals_have_idempotents", {}, false,
                            "aR with a = " + r.label(Elem(a)));
        }
        return make("right_ideals_have_idempotents", {}, true);
    });
}

PredicateResult units_lift(const FiniteRing& r, const Subset& ideal) {
    QuotientRing q = quotient(r, ideal);
    const InvariantBundle& bq = invariants_of(q.ring);
    Bits hit(q.ring.size());
    for (Elem u : units(r).to_list()) hit.set(q.projection(u));
    for (Elem v : bq.units.to_list())
        if (!hit.test(v))
            return make("units_lift", {}, false, "v = " + q.ring.label(v));
    return make("units_lift", {}, true);
}

bool is_field(const FiniteRing& r) {
    if (r.size() < 2) return false;
    const InvariantBundle& b = invariants_of(r);
    return b.center.count() == r.size() && b.units.count() == r.size() - 1;
}

namespace {

std::string normalize(std::string s) {
    for (char& c : s)
        if (c == '-') c = '_';
    return s;
}

}  // namespace

bool predicate_needs_param(const std::string& raw) {
    std::string s = normalize(raw);
    return s == "n_delta_u" || s == "n_uj" || s == "n_uu" || s == "power_identity";
}

PredicateResult eval_predicate(const FiniteRing& r, const std::string& raw,
                               std::optional<int> n) {
    std::string s = normalize(raw);
    if (predicate_needs_param(s) && !n)
        fail(ErrorCode::bad_argument, "predicate " + s + " requires a parameter n");
    if (s == "n_delta_u") return is_n_delta_u(r, *n);
    if (s == "delta_u") return is_delta_u(r);
    if (s == "n_uj") return is_n_uj(r, *n);
    if (s == "n_uu") return is_n_uu(r, *n);
    if (s == "clean") return is_clean(r);
    if (s == "exchange") return is_exchange(r);
    if (s == "regular") return is_regular(r);
    if (s == "strongly_regular") return is_strongly_regular(r);
    if (s == "unit_regular") return is_unit_regular(r);
    if (s == "pi_regular") return is_pi_regular(r);
    if (s == "strongly_pi_regular") return is_strongly_pi_regular(r);
    if (s == "semiregular") return is_semiregular(r);
    if (s == "reduced") return is_reduced(r);
    if (s == "abelian") return is_abelian(r);
    if (s == "2_primal") return is_2_primal(r);
    if (s == "dedekind_finite") return is_dedekind_finite(r);
    if (s == "power_identity") return satisfies_power_identity(r, *n);
    if (s == "right_ideals_have_idempotents") return right_ideals_have_idempotents(r);
    fail(ErrorCode::unknown_name, "unknown predicate: " + raw);
}

}  // namespace ringlab
