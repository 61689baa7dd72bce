#include "ringlab/theorems.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <unordered_map>

#include "ringlab/construct.hpp"
#include "ringlab/dsl.hpp"
#include "ringlab/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ringlab {

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::vacuous: return "vacuous";
        case CheckStatus::flagged: return "flagged";
    }
    return "?";
}

namespace {

// Builder for one check over one ring: accumulates checked/vacuous counts and
// the first failure witness.
struct Outcome {
    CheckResult res;

    explicit Outcome(std::string id, const FiniteRing& r, const std::vector<int>& ns) {
        res.check_id = std::move(id);
        res.ring = r.name();
        res.params = ns;
    }
    void tested() { ++res.checked; }
    void vacuous() { ++res.vacuous; }
    void fail(std::string witness) {
        if (res.status != CheckStatus::fail) {
            res.status = CheckStatus::fail;
            res.witness = std::move(witness);
        }
    }
    void flag(std::string note) {
        if (res.status == CheckStatus::pass) {
            res.status = CheckStatus::flagged;
            res.witness = std::move(note);
        }
    }
    CheckResult done() {
        if (res.status == CheckStatus::pass && res.checked == 0)
            res.status = CheckStatus::vacuous;
        return res;
    }
};

bool ndu(const FiniteRing& r, int n) { return is_n_delta_u(r, n).value; }

std::string nstr(int n) { return "n = " + std::to_string(n); }

const FiniteRing& base_of(const FiniteRing& r) { return *r.provenance().children[0]; }

bool has_ctor(const FiniteRing& r, ExprKind k) {
    return r.provenance().ctor == k && !r.provenance().children.empty();
}

// n-delta-u equivalence of a construction against its base ring
std::optional<CheckResult> transfer_check(const std::string& id, ExprKind kind,
                                          const FiniteRing& r, const std::vector<int>& ns) {
    if (!has_ctor(r, kind)) return std::nullopt;
    const FiniteRing& base = base_of(r);
    Outcome out(id, r, ns);
    for (int n : ns) {
        out.tested();
        bool lhs = ndu(r, n), rhs = ndu(base, n);
        if (lhs != rhs)
            out.fail(nstr(n) + ": extension " + (lhs ? "is" : "is not") + " n-delta-u, base " +
                     (rhs ? "is" : "is not"));
    }
    return out.done();
}

Elem int_in_ring(const FiniteRing& r, int k) {
    Elem acc = r.zero();
    for (int i = 0; i < k; ++i) acc = r.add(acc, r.one());
    return acc;
}

bool trace_in_jacobson(const MoritaBlocks& mb, const FiniteRing& a, const FiniteRing& b) {
    const Subset ja = jacobson(a), jb = jacobson(b);
    for (std::size_t m = 0; m < mb.m_size; ++m)
        for (std::size_t n = 0; n < mb.n_size; ++n) {
            if (!ja.test(mb.phi(Elem(m), Elem(n)))) return false;
            if (!jb.test(mb.psi(Elem(n), Elem(m)))) return false;
        }
    return true;
}

struct FieldComponents {
    bool all_fields = true;
    std::vector<std::size_t> orders;  // |F_i| per component
};

FieldComponents decompose_mod_j(const FiniteRing& r) {
    const QuotientRing& q = quotient_by_j(r);
    FieldComponents fc;
    for (const FiniteRing& comp : semisimple_decomposition(q.ring, jacobson(q.ring).bits())) {
        if (!is_field(comp)) fc.all_fields = false;
        fc.orders.push_back(comp.size());
    }
    return fc;
}

bool invariant_match(const FiniteRing& a, const FiniteRing& b, const std::vector<int>& ns,
                     std::string& why) {
    if (a.size() != b.size()) {
        why = "sizes differ";
        return false;
    }
    const InvariantBundle& ia = invariants_of(a);
    const InvariantBundle& ib = invariants_of(b);
    if (ia.units.count() != ib.units.count()) {
        why = "unit counts differ";
        return false;
    }
    if (ia.jacobson.count() != ib.jacobson.count()) {
        why = "|J| differs";
        return false;
    }
    if (ia.delta.count() != ib.delta.count()) {
        why = "|delta| differs";
        return false;
    }
    for (int n : ns)
        if (ndu(a, n) != ndu(b, n)) {
            why = "n-delta-u differs at " + nstr(n);
            return false;
        }
    return true;
}

// deterministic sampled table comparison for rings too large to scan fully
bool tables_agree(const FiniteRing& a, const FiniteRing& b) {
    if (a.size() != b.size()) return false;
    if (a.size() <= caps::table_cap) return a.table_equal(b);
    std::mt19937_64 rng(caps::axiom_sample_seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, a.size() - 1);
    if (a.zero() != b.zero() || a.one() != b.one()) return false;
    for (int i = 0; i < 200000; ++i) {
        Elem x = Elem(dist(rng)), y = Elem(dist(rng));
        if (a.add(x, y) != b.add(x, y) || a.mul(x, y) != b.mul(x, y)) return false;
    }
    return true;
}

std::vector<TheoremCheck> build_registry() {
    std::vector<TheoremCheck> reg;
    auto add = [&](std::string id, std::string summary, CheckTier tier, auto fn,
                   std::vector<ExprKind> kinds = {}) {
        reg.push_back(TheoremCheck{std::move(id), std::move(summary), tier, std::move(kinds),
                                   std::move(fn)});
    };

    add("P2.3", "a finite product is n-delta-u iff every component is",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::Prod)) return std::nullopt;
            Outcome out("P2.3", r, ns);
            for (int n : ns) {
                out.tested();
                bool lhs = ndu(r, n);
                bool rhs = true;
                for (const auto& comp : r.provenance().children)
                    rhs = rhs && ndu(*comp, n);
                if (lhs != rhs) out.fail(nstr(n));
            }
            return out.done();
        },
        {ExprKind::Prod});

    add("P2.4", "odd n and n-delta-u force 2 into delta(R)", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("P2.4", r, ns);
            const InvariantBundle& b = invariants_of(r);
            Elem two = int_in_ring(r, 2);
            for (int n : ns) {
                if (n % 2 == 0) continue;
                if (!ndu(r, n)) {
                    out.vacuous();
                    continue;
                }
                out.tested();
                if (!b.delta.test(two)) out.fail(nstr(n) + ": 2 not in delta");
            }
            if (r.provenance().expr && to_string(r.provenance().expr) == "Zmod(6)") {
                // the Remark: Z6 is 2-delta-u yet 2 is outside delta(Z6)
                out.tested();
                if (!ndu(r, 2) || b.delta.test(two))
                    out.fail("Z6 remark: expected 2-delta-u with 2 outside delta");
            }
            return out.done();
        });

    add("P2.5", "n-delta-u passes to quotients whose units lift", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (r.size() > caps::ideal_cap) return std::nullopt;
            Outcome out("P2.5", r, ns);
            for (const Subset& ideal : all_ideals(r)) {
                if (!units_lift(r, ideal).value) {
                    out.vacuous();
                    continue;
                }
                QuotientRing q = quotient(r, ideal);
                for (int n : ns) {
                    if (!ndu(r, n)) {
                        out.vacuous();
                        continue;
                    }
                    out.tested();
                    if (!ndu(q.ring, n))
                        out.fail(nstr(n) + ", |I| = " + std::to_string(ideal.count()));
                }
            }
            return out.done();
        });

    add("P2.6", "unital subrings with S^delta(R) inside delta(S) inherit n-delta-u",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("P2.6", r, ns);
            const InvariantBundle& b = invariants_of(r);
            if (b.center.count() == r.size() && r.size() > caps::subring_cap) {
                // commutative: the center clause is R itself
                for (int n : ns)
                    if (ndu(r, n))
                        out.tested();
                    else
                        out.vacuous();
                return out.done();
            }
            std::vector<std::pair<SubringView, bool>> subrings;  // (view, hyp_required)
            subrings.emplace_back(subring_from(r, b.center.to_list()), true);
            if (r.size() <= caps::subring_cap)
                for (auto& s : unital_subrings(r)) subrings.emplace_back(std::move(s), false);
            for (auto& [view, must_hold] : subrings) {
                const InvariantBundle& bs = invariants_of(view.ring);
                bool hyp = true;
                for (std::size_t i = 0; i < view.inclusion.size(); ++i)
                    if (b.delta.test(view.inclusion[i]) && !bs.delta.test(Elem(i))) {
                        hyp = false;
                        break;
                    }
                if (!hyp) {
                    if (must_hold) out.fail("center fails S^delta(R) within delta(S)");
                    out.vacuous();
                    continue;
                }
                for (int n : ns) {
                    if (!ndu(r, n)) {
                        out.vacuous();
                        continue;
                    }
                    out.tested();
                    if (!ndu(view.ring, n))
                        out.fail(nstr(n) + ", subring of size " +
                                 std::to_string(view.ring.size()));
                }
            }
            return out.done();
        });

    add("T2.7", "for ideals I inside J(R): R n-delta-u iff R/I is", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("T2.7", r, ns);
            const InvariantBundle& b = invariants_of(r);
            for (const Subset& ideal : ideals_within(r, b.jacobson)) {
                QuotientRing q = quotient(r, ideal);
                for (int n : ns) {
                    out.tested();
                    if (ndu(r, n) != ndu(q.ring, n))
                        out.fail(nstr(n) + ", |I| = " + std::to_string(ideal.count()));
                }
            }
            return out.done();
        });

    add("C2.8", "R n-delta-u iff R/J(R) is", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("C2.8", r, ns);
            const QuotientRing& q = quotient_by_j(r);
            for (int n : ns) {
                out.tested();
                if (ndu(r, n) != ndu(q.ring, n)) out.fail(nstr(n));
            }
            return out.done();
        });

    add("P2.9", "corners eRe of an n-delta-u ring are n-delta-u", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("P2.9", r, ns);
            const InvariantBundle& b = invariants_of(r);
            for (Elem e : b.idempotents.to_list()) {
                FiniteRing c = corner(r, e);
                for (int n : ns) {
                    if (!ndu(r, n)) {
                        out.vacuous();
                        continue;
                    }
                    out.tested();
                    if (!ndu(c, n)) out.fail(nstr(n) + ", e = " + r.label(e));
                }
            }
            return out.done();
        });

    add("P2.10", "M_k(R), k >= 2, is never (2k-1)-delta-u", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::Mat) || r.provenance().k < 2) return std::nullopt;
            Outcome out("P2.10", r, ns);
            for (int n : {1, 3, 5, 7}) {
                out.tested();
                if (ndu(r, n)) out.fail("matrix ring is " + std::to_string(n) + "-delta-u");
            }
            return out.done();
        },
        {ExprKind::Mat});

    add("P2.11", "(2k-1)-delta-u rings are Dedekind-finite", CheckTier::consistency,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("P2.11", r, ns);
            bool hyp = false;
            for (int n : ns)
                if (n % 2 == 1 && ndu(r, n)) hyp = true;
            if (!hyp) {
                out.vacuous();
                return out.done();
            }
            out.tested();
            if (!is_dedekind_finite(r).value) out.fail("not Dedekind-finite");
            return out.done();
        });

    add("P2.SL",
        "semilocal: (2n-1)-delta-u iff R/J is a product of fields F_q; the stated divisor "
        "(q-1)|n is tested against the proof's (q-1)|(2n-1)",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("P2.SL", r, ns);
            FieldComponents fc = decompose_mod_j(r);
            for (int n : ns) {
                out.tested();
                bool actual = ndu(r, 2 * n - 1);
                bool literal = fc.all_fields, variant = fc.all_fields;
                for (std::size_t q : fc.orders) {
                    literal = literal && (n % int(q - 1) == 0);
                    variant = variant && ((2 * n - 1) % int(q - 1) == 0);
                }
                if (actual != variant) {
                    out.fail(nstr(n) + ": proof-form divisor (q-1)|(2n-1) disagrees");
                    continue;
                }
                if (actual != literal)
                    out.flag(nstr(n) + ": literal divisor (q-1)|n refuted, (q-1)|(2n-1) "
                             "confirmed");
            }
            return out.done();
        });

    add("L2.12", "J = 0 + idempotents in right ideals + (2n-1)-delta-u forces reduced",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("L2.12", r, ns);
            const InvariantBundle& b = invariants_of(r);
            bool hyp = b.jacobson.count() == 1 && right_ideals_have_idempotents(r).value;
            bool odd = false;
            for (int n : ns)
                if (n % 2 == 1 && ndu(r, n)) odd = true;
            if (!(hyp && odd)) {
                out.vacuous();
                return out.done();
            }
            out.tested();
            if (!is_reduced(r).value) out.fail("not reduced");
            return out.done();
        });

    add("T2.13",
        "regular+(2n-1)-delta-u == pi-regular+reduced+(2n-1)-delta-u == identity x^{2n} = x",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("T2.13", r, ns);
            for (int n : ns) {
                if (n > 4) continue;
                out.tested();
                bool du = ndu(r, 2 * n - 1);
                bool c1 = is_regular(r).value && du;
                bool c2 = is_pi_regular(r).value && is_reduced(r).value && du;
                bool c3 = satisfies_power_identity(r, 2 * n).value;
                if (c1 != c2 || c2 != c3)
                    out.fail(nstr(n) + ": clauses " + std::to_string(c1) + "/" +
                             std::to_string(c2) + "/" + std::to_string(c3));
            }
            return out.done();
        });

    add("C2.14",
        "regular == strongly regular == unit-regular == x^{2n} = x, under (2n-1)-delta-u",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("C2.14", r, ns);
            for (int n : ns) {
                if (n > 4) continue;
                out.tested();
                bool du = ndu(r, 2 * n - 1);
                bool c1 = is_regular(r).value && du;
                bool c2 = is_strongly_regular(r).value && du;
                bool c3 = is_unit_regular(r).value && du;
                bool c4 = satisfies_power_identity(r, 2 * n).value;
                if (c1 != c2 || c2 != c3 || c3 != c4)
                    out.fail(nstr(n) + ": clauses " + std::to_string(c1) +
                             std::to_string(c2) + std::to_string(c3) + std::to_string(c4));
            }
            return out.done();
        });

    add("P2.15",
        "delta-u iff 2 in delta, 2^k-delta-u, and x^{2^k} in delta pulls x into delta",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("P2.15", r, ns);
            const InvariantBundle& b = invariants_of(r);
            bool lhs = is_delta_u(r).value;
            Elem two = int_in_ring(r, 2);
            for (int k : {1, 2, 3}) {
                out.tested();
                int pk = 1 << k;
                bool cond3 = true;
                for (std::size_t x = 0; x < r.size() && cond3; ++x)
                    if (b.delta.test(r.pow(Elem(x), pk)) && !b.delta.test(Elem(x)))
                        cond3 = false;
                bool rhs = b.delta.test(two) && ndu(r, pk) && cond3;
                if (lhs != rhs) out.fail("k = " + std::to_string(k));
            }
            return out.done();
        });

    add("T2.16", "exchange iff clean on (2n-1)-delta-u rings", CheckTier::consistency,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("T2.16", r, ns);
            bool hyp = false;
            for (int n : ns)
                if (n % 2 == 1 && ndu(r, n)) hyp = true;
            if (!hyp) {
                out.vacuous();
                return out.done();
            }
            out.tested();
            if (is_exchange(r).value != is_clean(r).value)
                out.fail("exchange and clean disagree");
            return out.done();
        });

    add("T2.22", "semi-regular == exchange == clean on (2^k - 1)-delta-u rings",
        CheckTier::consistency,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("T2.22", r, ns);
            bool hyp = false;
            for (int k : {1, 2, 3})
                if (ndu(r, (1 << k) - 1)) hyp = true;
            if (!hyp) {
                out.vacuous();
                return out.done();
            }
            out.tested();
            bool a = is_semiregular(r).value, b = is_exchange(r).value,
                 c = is_clean(r).value;
            if (a != b || b != c) out.fail("clauses disagree");
            return out.done();
        });

    add("P2.17", "the set of valid exponents is closed under multiples",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("P2.17", r, ns);
            const InvariantBundle& b = invariants_of(r);
            for (std::uint64_t n = 1; n <= b.exponent_lcm; ++n) {
                if (!b.valid_exponents[n - 1]) continue;
                for (std::uint64_t k = 2 * n; k <= b.exponent_lcm; k += n) {
                    out.tested();
                    if (!b.valid_exponents[k - 1])
                        out.fail(std::to_string(n) + " valid but multiple " +
                                 std::to_string(k) + " is not");
                }
            }
            return out.done();
        });

    add("L2.20", "a finite field is n-delta-u iff (q-1) | n", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!is_field(r)) return std::nullopt;
            Outcome out("L2.20", r, ns);
            int q = int(r.size());
            for (int n = 1; n <= 12; ++n) {
                out.tested();
                if (ndu(r, n) != (n % (q - 1) == 0)) out.fail(nstr(n));
            }
            return out.done();
        });

    add("L2.21", "an n-delta-u division ring is a finite field with (q-1) | n",
        CheckTier::consistency,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            const InvariantBundle& b = invariants_of(r);
            if (r.size() < 2 || b.units.count() != r.size() - 1) return std::nullopt;
            Outcome out("L2.21", r, ns);
            out.tested();
            if (b.center.count() != r.size())
                out.fail("finite division ring is not commutative");
            for (int n : ns) {
                if (n < 2 || !ndu(r, n)) {
                    out.vacuous();
                    continue;
                }
                out.tested();
                if (n % int(r.size() - 1) != 0) out.fail(nstr(n) + ": (q-1) does not divide n");
            }
            return out.done();
        });

    add("P3.4a", "trivial extension T(R, M) is n-delta-u iff R is", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) {
            return transfer_check("P3.4a", ExprKind::Triv, r, ns);
        },
        {ExprKind::Triv});

    add("P3.4b", "T_k(R) upper triangular is n-delta-u iff R is", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) {
            return transfer_check("P3.4b", ExprKind::UT, r, ns);
        },
        {ExprKind::UT});

    add("P3.3", "skew triangular T_k(R, a) is n-delta-u iff R is", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) {
            return transfer_check("P3.3", ExprKind::SkewUT, r, ns);
        },
        {ExprKind::SkewUT});

    add("C3.11", "R[x; a]/(x^k) is n-delta-u iff R is", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) {
            return transfer_check("C3.11", ExprKind::PolyQ, r, ns);
        },
        {ExprKind::PolyQ});

    add("C3.12", "R[x]/(x^k) is n-delta-u iff R is", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::PolyQ) || !r.provenance().endo ||
                !r.provenance().endo->is_identity())
                return std::nullopt;
            return transfer_check("C3.12", ExprKind::PolyQ, r, ns);
        },
        {ExprKind::PolyQ});

    add("C3.5", "DT(R, M) is n-delta-u iff R is; DT(R, R) matches T(T(R), T(R))",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::DT)) return std::nullopt;
            auto res = transfer_check("C3.5", ExprKind::DT, r, ns);
            Outcome out("C3.5", r, ns);
            out.res = *res;
            out.tested();
            FiniteRing tt = trivial_extension(trivial_extension(base_of(r)));
            if (!tables_agree(r, tt)) out.fail("DT tables differ from T(T(R), T(R))");
            return out.done();
        },
        {ExprKind::DT});

    add("P3.6", "Morita context with trace ideals in J: n-delta-u iff A and B are",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            const auto& mb = r.provenance().morita;
            if (!mb) return std::nullopt;
            Outcome out("P3.6", r, ns);
            if (!trace_in_jacobson(*mb, *mb->ring_a, *mb->ring_b)) {
                out.vacuous();
                return out.done();
            }
            for (int n : ns) {
                out.tested();
                bool rhs = ndu(*mb->ring_a, n) && ndu(*mb->ring_b, n);
                if (ndu(r, n) != rhs) out.fail(nstr(n));
            }
            return out.done();
        },
        {ExprKind::FTri, ExprKind::Ks, ExprKind::Mns, ExprKind::TrivMorita});

    add("C3.7", "formal triangular T(R, S, M) is n-delta-u iff R and S are",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::FTri)) return std::nullopt;
            Outcome out("C3.7", r, ns);
            const auto& ch = r.provenance().children;
            for (int n : ns) {
                out.tested();
                bool rhs = ndu(*ch[0], n) && ndu(*ch[1], n);
                if (ndu(r, n) != rhs) out.fail(nstr(n));
            }
            return out.done();
        },
        {ExprKind::FTri});

    add("C3.8", "K_s(R) with s central in J(R): n-delta-u iff R is",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::Ks)) return std::nullopt;
            const FiniteRing& base = base_of(r);
            if (!jacobson(base).test(*r.provenance().scalar)) return std::nullopt;
            return transfer_check("C3.8", ExprKind::Ks, r, ns);
        },
        {ExprKind::Ks});

    add("C3.9", "M_k(R; s) with s central in J(R): n-delta-u iff R is; M_2 matches K_{s^2}",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::Mns)) return std::nullopt;
            const FiniteRing& base = base_of(r);
            Elem s = *r.provenance().scalar;
            if (!jacobson(base).test(s)) return std::nullopt;
            auto res = transfer_check("C3.9", ExprKind::Mns, r, ns);
            Outcome out("C3.9", r, ns);
            out.res = *res;
            if (r.provenance().k == 2) {
                out.tested();
                FiniteRing ks = k_s(base, base.mul(s, s));
                if (!tables_agree(r, ks)) out.fail("M_2(R; s) tables differ from K_{s^2}(R)");
            }
            return out.done();
        },
        {ExprKind::Mns});

    add("C3.10", "a trivial Morita context is n-delta-u iff A and B are",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::TrivMorita)) return std::nullopt;
            Outcome out("C3.10", r, ns);
            const auto& prov = r.provenance();
            const FiniteRing &a = *prov.children[0], &b = *prov.children[1];
            for (int n : ns) {
                out.tested();
                bool rhs = ndu(a, n) && ndu(b, n);
                if (ndu(r, n) != rhs) out.fail(nstr(n));
            }
            // invariant match with T(A x B, M (+) N); the paper realizes the
            // trivial context as that trivial extension
            out.tested();
            FiniteRing prod = product({a, b});
            FiniteRing te = trivial_extension(
                prod, Bimodule::direct_sum(prod, prov.bimodule, prov.bimodule2));
            std::string why;
            if (!invariant_match(r, te, ns, why))
                out.fail("mismatch vs T(AxB, M+N): " + why);
            return out.done();
        },
        {ExprKind::TrivMorita});

    add("P3.14",
        "Morita context is (2n-1)-delta-u iff A, B are and both trace ideals sit in J",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            const auto& mb = r.provenance().morita;
            if (!mb) return std::nullopt;
            Outcome out("P3.14", r, ns);
            bool traces = trace_in_jacobson(*mb, *mb->ring_a, *mb->ring_b);
            for (int n : ns) {
                out.tested();
                int m = 2 * n - 1;
                bool lhs = ndu(r, m);
                bool rhs = ndu(*mb->ring_a, m) && ndu(*mb->ring_b, m) && traces;
                if (lhs != rhs) out.fail(nstr(n) + " (exponent " + std::to_string(m) + ")");
            }
            return out.done();
        },
        {ExprKind::FTri, ExprKind::Ks, ExprKind::Mns, ExprKind::TrivMorita});

    add("GR1", "RG n-delta-u forces R n-delta-u", CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::GrpRing)) return std::nullopt;
            Outcome out("GR1", r, ns);
            const FiniteRing& base = base_of(r);
            for (int n : ns) {
                if (!ndu(r, n)) {
                    out.vacuous();
                    continue;
                }
                out.tested();
                if (!ndu(base, n)) out.fail(nstr(n));
            }
            return out.done();
        },
        {ExprKind::GrpRing});

    add("L4.14", "p in J(R) and G a p-group put the augmentation ideal inside J(RG)",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::GrpRing)) return std::nullopt;
            std::uint64_t p;
            if (!r.provenance().group->is_p_group(p)) return std::nullopt;
            const FiniteRing& base = base_of(r);
            if (!jacobson(base).test(int_in_ring(base, int(p)))) return std::nullopt;
            Outcome out("L4.14", r, ns);
            out.tested();
            Subset eps = augmentation_ideal(r);
            if (!eps.is_subset_of(jacobson(r)))
                out.fail("augmentation ideal escapes J(RG)");
            return out.done();
        },
        {ExprKind::GrpRing});

    add("GR2", "R n-delta-u, G a p-group, p in J(R) make RG n-delta-u",
        CheckTier::discriminating,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            if (!has_ctor(r, ExprKind::GrpRing)) return std::nullopt;
            std::uint64_t p;
            if (!r.provenance().group->is_p_group(p)) return std::nullopt;
            const FiniteRing& base = base_of(r);
            if (!jacobson(base).test(int_in_ring(base, int(p)))) return std::nullopt;
            Outcome out("GR2", r, ns);
            for (int n : ns) {
                if (!ndu(base, n)) {
                    out.vacuous();
                    continue;
                }
                out.tested();
                if (!ndu(r, n)) out.fail(nstr(n));
            }
            return out.done();
        },
        {ExprKind::GrpRing});

    add("DELTA-AX",
        "delta identities: pullback of J(unit subring), J inside delta, ideal criterion, "
        "unit-stability, and the trivial-extension formulas",
        CheckTier::consistency,
        [](const FiniteRing& r, const std::vector<int>& ns) -> std::optional<CheckResult> {
            Outcome out("DELTA-AX", r, ns);
            const InvariantBundle& b = invariants_of(r);
            out.tested();
            {
                const SubringView& t = b.unit_subring;
                Bits pullback(r.size());
                for (std::size_t i = 0; i < t.inclusion.size(); ++i)
                    if (b.unit_subring_jacobson.test(Elem(i))) pullback.set(t.inclusion[i]);
                if (!(pullback == b.delta.bits()))
                    out.fail("delta != pullback of J(unit subring)");
            }
            out.tested();
            if (!b.jacobson.bits().is_subset_of(b.delta.bits()))
                out.fail("J not contained in delta");
            out.tested();
            bool ideal = is_ideal(r, b.delta);
            if (ideal != (b.delta == b.jacobson))
                out.fail("delta = J iff delta is an ideal fails");
            // closure under subtraction and multiplication
            out.tested();
            const std::vector<Elem> dl = b.delta.to_list();
            for (Elem x : dl)
                for (Elem y : dl)
                    if (!b.delta.test(r.sub(x, y)) || !b.delta.test(r.mul(x, y))) {
                        out.fail("delta not closed under subtraction/multiplication");
                        goto closure_done;
                    }
        closure_done:
            // u * delta = delta * u = delta for every unit
            out.tested();
            for (Elem u : b.units.to_list())
                for (Elem x : dl)
                    if (!b.delta.test(r.mul(u, x)) || !b.delta.test(r.mul(x, u))) {
                        out.fail("delta not stable under unit multiplication");
                        goto stability_done;
                    }
        stability_done:
            if (has_ctor(r, ExprKind::Triv)) {
                out.tested();
                const FiniteRing& base = base_of(r);
                const InvariantBundle& bb = invariants_of(base);
                const std::size_t bs = base.size();
                for (std::size_t x = 0; x < r.size(); ++x) {
                    Elem first = Elem(x % bs);
                    if (b.units.test(Elem(x)) != bb.units.test(first)) {
                        out.fail("U(T(R, M)) != T(U(R), M)");
                        break;
                    }
                    if (b.delta.test(Elem(x)) != bb.delta.test(first)) {
                        out.fail("delta(T(R, M)) != T(delta(R), M)");
                        break;
                    }
                }
            }
            return out.done();
        });

    std::sort(reg.begin(), reg.end(),
              [](const TheoremCheck& a, const TheoremCheck& b) { return a.id < b.id; });
    return reg;
}

}  // namespace

const std::vector<TheoremCheck>& theorem_registry() {
    static const std::vector<TheoremCheck> reg = build_registry();
    return reg;
}

const TheoremCheck& find_check(const std::string& id) {
    for (const auto& c : theorem_registry())
        if (c.id == id) return c;
    fail(ErrorCode::unknown_name, "unknown check id: " + id);
}

std::optional<CheckResult> run_check_on(const std::string& id, const FiniteRing& ring,
                                        const std::vector<int>& ns) {
    return find_check(id).run(ring, ns);
}

namespace {

std::vector<int> ns_for(const FiniteRing& r, const std::vector<int>& base) {
    std::set<int> ns(base.begin(), base.end());
    ns.insert(int(invariants_of(r).delta_u_exponent));
    return std::vector<int>(ns.begin(), ns.end());
}

// Evaluates corpus entries sharing ring objects (and so derived-data caches)
// where possible: a Quot(e) appended by the expander reuses the cached
// quotient-by-J of the already-evaluated base e. Entries that fail to
// evaluate leave an invalid slot; the caller reports them.
struct EvaluatedCorpus {
    std::vector<FiniteRing> rings;          // invalid() on eval failure
    std::vector<std::string> errors;        // parallel to rings, empty if ok
};

EvaluatedCorpus evaluate_corpus(const std::vector<ExprPtr>& corpus, int jobs,
                                std::vector<std::uint8_t> wanted = {}) {
    EvaluatedCorpus ec;
    ec.rings.resize(corpus.size());
    ec.errors.resize(corpus.size());
    if (wanted.empty()) wanted.assign(corpus.size(), 1);
    std::unordered_map<const RingExpr*, std::size_t> index;
    for (std::size_t i = 0; i < corpus.size(); ++i) index.emplace(corpus[i].get(), i);

    std::vector<std::size_t> direct, derived;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!wanted[i]) continue;
        const RingExpr& e = *corpus[i];
        bool shortcut = e.kind == ExprKind::Quot && e.args.size() == 1 &&
                        std::holds_alternative<ExprPtr>(e.args[0]) &&
                        index.count(std::get<ExprPtr>(e.args[0]).get());
        if (shortcut) {
            // make sure the base gets evaluated even if no check wants it
            std::size_t base = index.at(std::get<ExprPtr>(e.args[0]).get());
            if (!wanted[base]) {
                wanted[base] = 1;
                direct.push_back(base);
            }
            derived.push_back(i);
        } else {
            direct.push_back(i);
        }
    }
#ifdef _OPENMP
    int nt = jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
#endif
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
    for (std::size_t k = 0; k < direct.size(); ++k) {
        std::size_t i = direct[k];
        try {
            ec.rings[i] = eval_expr(corpus[i]);
        } catch (const Error& err) {
            ec.errors[i] = std::string("error[") + err.code_name() + "]: " + err.what();
        }
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
    for (std::size_t k = 0; k < derived.size(); ++k) {
        std::size_t i = derived[k];
        std::size_t base = index.at(std::get<ExprPtr>(corpus[i]->args[0]).get());
        try {
            if (!ec.rings[base].valid()) {
                ec.errors[i] = "base entry failed to evaluate";
                continue;
            }
            FiniteRing q = quotient_by_j(ec.rings[base]).ring;
            if (q.size() == 1) {
                ec.errors[i] = "error[zero_ring]: quotient collapses to the zero ring";
                continue;
            }
            ec.rings[i] = q;
        } catch (const Error& err) {
            ec.errors[i] = std::string("error[") + err.code_name() + "]: " + err.what();
        }
    }
    return ec;
}

}  // namespace

SuiteRun run_suite(const CorpusSpec& spec, const SuiteOptions& opts) {
    const std::vector<ExprPtr> corpus = expand_corpus(spec);
    const auto& registry = theorem_registry();
    std::vector<const TheoremCheck*> active;
    for (const auto& c : registry) {
        if (opts.only.empty() ||
            std::find(opts.only.begin(), opts.only.end(), c.id) != opts.only.end())
            active.push_back(&c);
    }
    if (!opts.only.empty() && active.size() != opts.only.size())
        for (const auto& id : opts.only) find_check(id);  // raise unknown_name

    SuiteRun run;
    run.n_range = spec.n_range;
    run.corpus.reserve(corpus.size());
    for (const auto& e : corpus) run.corpus.push_back(to_string(e));

    // skip corpus entries no active check can apply to (matters for --only)
    auto kind_wanted = [&](ExprKind k) {
        for (const TheoremCheck* c : active) {
            if (c->kinds.empty()) return true;
            if (std::find(c->kinds.begin(), c->kinds.end(), k) != c->kinds.end()) return true;
        }
        return false;
    };
    std::vector<std::uint8_t> wanted(corpus.size(), 0);
    for (std::size_t i = 0; i < corpus.size(); ++i)
        wanted[i] = kind_wanted(corpus[i]->kind) ? 1 : 0;

    EvaluatedCorpus ec = evaluate_corpus(corpus, opts.jobs, wanted);
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (ec.rings[i].valid() && !ec.rings[i].provenance().expr)
            ec.rings[i].set_provenance_expr(corpus[i]);

    std::vector<std::vector<CheckResult>> per_ring(corpus.size());
#ifdef _OPENMP
    int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
#endif
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::vector<CheckResult>& results = per_ring[i];
        if (!wanted[i]) continue;
        if (!ec.rings[i].valid()) {
            CheckResult bad;
            bad.check_id = "EVAL";
            bad.ring = run.corpus[i];
            bad.status = CheckStatus::fail;
            bad.witness = ec.errors[i];
            results.push_back(std::move(bad));
            continue;
        }
        const FiniteRing& ring = ec.rings[i];
        std::vector<int> ns = ns_for(ring, spec.n_range);
        for (const TheoremCheck* c : active) {
            try {
                if (auto res = c->run(ring, ns)) {
                    res->ring = run.corpus[i];
                    results.push_back(std::move(*res));
                }
            } catch (const Error& err) {
                CheckResult bad;
                bad.check_id = c->id;
                bad.ring = run.corpus[i];
                bad.status = CheckStatus::fail;
                bad.witness = std::string("error[") + err.code_name() + "]: " + err.what();
                results.push_back(std::move(bad));
            }
        }
    }
    for (auto& chunk : per_ring)
        for (auto& res : chunk) run.results.push_back(std::move(res));
    std::sort(run.results.begin(), run.results.end(),
              [](const CheckResult& a, const CheckResult& b) {
                  if (a.check_id != b.check_id) return a.check_id < b.check_id;
                  return a.ring < b.ring;
              });
    for (const auto& res : run.results) {
        switch (res.status) {
            case CheckStatus::pass: ++run.pass; break;
            case CheckStatus::fail: ++run.fail; break;
            case CheckStatus::vacuous: ++run.vacuous; break;
            case CheckStatus::flagged: ++run.flagged; break;
        }
    }
    return run;
}

// ------------------------------------------------------------------ search

namespace {

struct FormulaNode {
    enum Kind { Atom, Not, And, Or } kind;
    std::string name;
    std::optional<int> param;
    std::unique_ptr<FormulaNode> lhs, rhs;
};

class FormulaParser {
  public:
    explicit FormulaParser(const std::string& s) : s_(s) {}

    std::unique_ptr<FormulaNode> parse() {
        auto n = parse_or();
        skip();
        if (i_ != s_.size()) fail(ErrorCode::parse_error, "trailing input in formula");
        return n;
    }

  private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    std::unique_ptr<FormulaNode> parse_or() {
        auto lhs = parse_and();
        while (eat('|')) {
            auto n = std::make_unique<FormulaNode>();
            n->kind = FormulaNode::Or;
            n->lhs = std::move(lhs);
            n->rhs = parse_and();
            lhs = std::move(n);
        }
        return lhs;
    }
    std::unique_ptr<FormulaNode> parse_and() {
        auto lhs = parse_not();
        while (eat('&')) {
            auto n = std::make_unique<FormulaNode>();
            n->kind = FormulaNode::And;
            n->lhs = std::move(lhs);
            n->rhs = parse_not();
            lhs = std::move(n);
        }
        return lhs;
    }
    std::unique_ptr<FormulaNode> parse_not() {
        if (eat('!')) {
            auto n = std::make_unique<FormulaNode>();
            n->kind = FormulaNode::Not;
            n->lhs = parse_not();
            return n;
        }
        if (eat('(')) {
            auto n = parse_or();
            if (!eat(')')) fail(ErrorCode::parse_error, "missing ')' in formula");
            return n;
        }
        skip();
        std::size_t j = i_;
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) ||
                                 s_[j] == '_' || s_[j] == '-'))
            ++j;
        if (j == i_) fail(ErrorCode::parse_error, "expected predicate name in formula");
        auto n = std::make_unique<FormulaNode>();
        n->kind = FormulaNode::Atom;
        n->name = s_.substr(i_, j - i_);
        i_ = j;
        if (eat('(')) {
            skip();
            std::size_t k = i_;
            while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
            if (k == i_) fail(ErrorCode::parse_error, "expected integer parameter");
            n->param = std::stoi(s_.substr(i_, k - i_));
            i_ = k;
            if (!eat(')')) fail(ErrorCode::parse_error, "missing ')' after parameter");
        }
        if (predicate_needs_param(n->name) && !n->param)
            fail(ErrorCode::parse_error, "predicate " + n->name + " requires a parameter");
        eval_predicate(zmod(2), n->name, n->param);  // validate the name eagerly
        return n;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

bool eval_formula(const FormulaNode& n, const FiniteRing& r) {
    switch (n.kind) {
        case FormulaNode::Atom: return eval_predicate(r, n.name, n.param).value;
        case FormulaNode::Not: return !eval_formula(*n.lhs, r);
        case FormulaNode::And: return eval_formula(*n.lhs, r) && eval_formula(*n.rhs, r);
        case FormulaNode::Or: return eval_formula(*n.lhs, r) || eval_formula(*n.rhs, r);
    }
    return false;
}

}  // namespace

SearchResult search_counterexamples(const CorpusSpec& spec, const std::string& formula,
                                    std::size_t limit) {
    FormulaParser parser(formula);
    auto root = parser.parse();
    const std::vector<ExprPtr> corpus = expand_corpus(spec);
    SearchResult out;
    EvaluatedCorpus ec = evaluate_corpus(corpus, 0);
    std::vector<std::uint8_t> match(corpus.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!ec.rings[i].valid()) continue;
        match[i] = eval_formula(*root, ec.rings[i]) ? 1 : 0;
    }
    out.scanned = corpus.size();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!match[i]) continue;
        if (limit && out.matches.size() >= limit) break;
        out.matches.push_back(to_string(corpus[i]));
    }
    return out;
}

}  // namespace ringlab
