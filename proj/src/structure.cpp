#include "ringlab/structure.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ringlab {

namespace {

// Additive subgroup generated by seeds: BFS from 0 along +g for each seed g.
// Finite order makes negatives reachable, so this is the full subgroup.
Bits additive_closure(const FiniteRing& r, const std::vector<Elem>& seeds) {
    Bits in(r.size());
    std::vector<Elem> queue;
    auto push = [&](Elem e) {
        if (!in.test(e)) {
            in.set(e);
            queue.push_back(e);
        }
    };
    push(r.zero());
    for (Elem g : seeds) push(g);
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (Elem g : seeds) push(r.add(queue[qi], g));
    return in;
}

// Closure under add, neg and mul (subring generated by the seeds).
Bits ring_closure(const FiniteRing& r, const std::vector<Elem>& seeds) {
    Bits in(r.size());
    std::vector<Elem> queue;
    auto push = [&](Elem e) {
        if (!in.test(e)) {
            in.set(e);
            queue.push_back(e);
        }
    };
    push(r.zero());
    for (Elem g : seeds) push(g);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Elem e = queue[qi];
        push(r.neg(e));
        for (std::size_t qj = 0; qj <= qi; ++qj) {
            Elem f = queue[qj];
            push(r.add(e, f));
            push(r.mul(e, f));
            push(r.mul(f, e));
        }
    }
    return in;
}

// R a R as an element set, i.e. (Ra) * R with Ra deduplicated first.
std::vector<Elem> rar_set(const FiniteRing& r, Elem a) {
    const std::size_t n = r.size();
    Bits la(n);
    for (std::size_t x = 0; x < n; ++x) la.set(r.mul(Elem(x), a));
    Bits rar(n);
    la.for_each([&](Elem l) {
        for (std::size_t s = 0; s < n; ++s) rar.set(r.mul(l, Elem(s)));
    });
    return rar.to_list();
}

Bits principal_ideal_bits(const FiniteRing& r, Elem a) {
    return additive_closure(r, rar_set(r, a));
}

// I + J = {i + j} is already a subgroup when I and J are, so the sum needs
// one pass over the element pairs, not a closure.
Bits subgroup_sum(const FiniteRing& r, const Bits& a, const Bits& b) {
    Bits out(r.size());
    const std::vector<Elem> bl = b.to_list();
    a.for_each([&](Elem i) {
        for (Elem j : bl) out.set(r.add(i, j));
    });
    return out;
}

std::vector<Bits> close_under_sum(const FiniteRing& r, std::vector<Bits> ideals) {
    auto key = [](const Bits& b) { return b.hash(); };
    std::multimap<std::uint64_t, std::size_t> seen;
    auto contains = [&](const Bits& b) {
        auto [lo, hi] = seen.equal_range(key(b));
        for (auto it = lo; it != hi; ++it)
            if (ideals[it->second] == b) return true;
        return false;
    };
    std::vector<Bits> work = std::move(ideals);
    ideals.clear();
    for (auto& b : work)
        if (!contains(b)) {
            seen.emplace(key(b), ideals.size());
            ideals.push_back(std::move(b));
        }
    for (std::size_t i = 0; i < ideals.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (ideals[j].is_subset_of(ideals[i]) || ideals[i].is_subset_of(ideals[j]))
                continue;
            Bits sum = subgroup_sum(r, ideals[i], ideals[j]);
            if (!contains(sum)) {
                seen.emplace(key(sum), ideals.size());
                ideals.push_back(std::move(sum));
            }
        }
    return ideals;
}

void sort_ideals(std::vector<Bits>& ideals) {
    std::sort(ideals.begin(), ideals.end(), [](const Bits& a, const Bits& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a.to_list() < b.to_list();
    });
}

std::vector<Bits> distinct_principal_ideals(const FiniteRing& r,
                                            const std::vector<Elem>& gens) {
    const std::size_t n = r.size();
    // Ra determines RaR determines the ideal, so memoize on the left-ideal set
    std::vector<std::uint64_t> la_keys(gens.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Bits la(n);
        for (std::size_t x = 0; x < n; ++x) la.set(r.mul(Elem(x), gens[i]));
        la_keys[i] = la.hash();
    }
    std::vector<std::size_t> rep;  // indexes of first occurrence of each key
    std::unordered_map<std::uint64_t, std::size_t> first;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (first.emplace(la_keys[i], i).second) rep.push_back(i);
    std::vector<Bits> ideals(rep.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::size_t i = 0; i < rep.size(); ++i)
        ideals[i] = principal_ideal_bits(r, gens[rep[i]]);
    return ideals;
}

}  // namespace

bool is_ideal(const FiniteRing& r, const Subset& s) {
    s.require_ring(r);
    const Bits& b = s.bits();
    if (!b.test(r.zero())) return false;
    const std::vector<Elem> elems = b.to_list();
    for (Elem e : elems) {
        if (!b.test(r.neg(e))) return false;
        for (Elem f : elems)
            if (!b.test(r.add(e, f))) return false;
        for (std::size_t x = 0; x < r.size(); ++x)
            if (!b.test(r.mul(Elem(x), e)) || !b.test(r.mul(e, Elem(x)))) return false;
    }
    return true;
}

Subset ideal_generated(const FiniteRing& r, const std::vector<Elem>& gens) {
    Bits seeds(r.size());
    for (Elem a : gens) {
        if (a >= r.size()) fail(ErrorCode::bad_argument, "generator id out of range");
        for (Elem e : rar_set(r, a)) seeds.set(e);
    }
    return Subset(r, additive_closure(r, seeds.to_list()));
}

std::vector<Subset> all_ideals(const FiniteRing& r, std::size_t cap) {
    if (r.size() > cap)
        fail(ErrorCode::cap_exceeded,
             "all_ideals capped at " + std::to_string(cap) + " elements");
    const auto& cached = r.cache().get_or<std::vector<Bits>>(kSlotAllIdeals, [&] {
        std::vector<Elem> gens(r.size());
        for (std::size_t i = 0; i < gens.size(); ++i) gens[i] = Elem(i);
        auto ideals = close_under_sum(r, distinct_principal_ideals(r, gens));
        sort_ideals(ideals);
        return ideals;
    });
    std::vector<Subset> out;
    out.reserve(cached.size());
    for (const auto& b : cached) out.emplace_back(r, b);
    return out;
}

std::vector<Subset> ideals_within(const FiniteRing& r, const Subset& bound) {
    bound.require_ring(r);
    const auto& cached = r.cache().get_or<std::vector<Bits>>(kSlotIdealsInJ, [&] {
        auto ideals = distinct_principal_ideals(r, bound.bits().to_list());
        for (const auto& b : ideals)
            if (!b.is_subset_of(bound.bits()))
                fail(ErrorCode::engine_bug, "principal ideal escapes its ideal bound");
        ideals.push_back(Bits(r.size()));  // ensure {0}
        ideals.back().set(r.zero());
        ideals = close_under_sum(r, std::move(ideals));
        sort_ideals(ideals);
        return ideals;
    });
    std::vector<Subset> out;
    out.reserve(cached.size());
    for (const auto& b : cached) out.emplace_back(r, b);
    return out;
}

namespace {

class QuotientBackend final : public RingBackend {
  public:
    QuotientBackend(FiniteRing parent, std::vector<Elem> reps, std::vector<Elem> proj)
        : parent_(std::move(parent)), reps_(std::move(reps)), proj_(std::move(proj)) {}

    std::size_t size() const override { return reps_.size(); }
    Elem add(Elem a, Elem b) const override { return proj_[parent_.add(reps_[a], reps_[b])]; }
    Elem mul(Elem a, Elem b) const override { return proj_[parent_.mul(reps_[a], reps_[b])]; }
    Elem neg(Elem a) const override { return proj_[parent_.neg(reps_[a])]; }
    Elem zero() const override { return proj_[parent_.zero()]; }
    Elem one() const override { return proj_[parent_.one()]; }
    std::string label(Elem a) const override { return parent_.label(reps_[a]) + "+I"; }

  private:
    FiniteRing parent_;
    std::vector<Elem> reps_, proj_;
};

class SubringBackend final : public RingBackend {
  public:
    SubringBackend(FiniteRing parent, std::vector<Elem> elems)
        : parent_(std::move(parent)), elems_(std::move(elems)), index_(parent_.size(), 0) {
        for (std::size_t i = 0; i < elems_.size(); ++i) index_[elems_[i]] = Elem(i);
    }

    std::size_t size() const override { return elems_.size(); }
    Elem add(Elem a, Elem b) const override { return index_[parent_.add(elems_[a], elems_[b])]; }
    Elem mul(Elem a, Elem b) const override { return index_[parent_.mul(elems_[a], elems_[b])]; }
    Elem neg(Elem a) const override { return index_[parent_.neg(elems_[a])]; }
    Elem zero() const override { return index_[parent_.zero()]; }
    Elem one() const override { return index_[parent_.one()]; }
    std::string label(Elem a) const override { return parent_.label(elems_[a]); }

  private:
    FiniteRing parent_;
    std::vector<Elem> elems_;
    std::vector<Elem> index_;
};

SubringView make_subring(const FiniteRing& r, std::vector<Elem> elems, std::string display) {
    Provenance prov;
    prov.children.push_back(std::make_shared<const FiniteRing>(r));
    prov.display = std::move(display);
    SubringView view;
    view.inclusion = elems;
    view.ring = FiniteRing(std::make_shared<SubringBackend>(r, std::move(elems)),
                           std::move(prov));
    return view;
}

}  // namespace

QuotientRing quotient(const FiniteRing& r, const Subset& ideal) {
    ideal.require_ring(r);
    if (!is_ideal(r, ideal))
        fail(ErrorCode::not_ideal, "quotient requires a two-sided ideal");
    const std::size_t n = r.size();
    const std::vector<Elem> ilist = ideal.bits().to_list();
    std::vector<Elem> proj(n, Elem(n));
    std::vector<Elem> reps;
    for (std::size_t x = 0; x < n; ++x) {
        if (proj[x] != Elem(n)) continue;
        Elem q = Elem(reps.size());
        reps.push_back(Elem(x));
        for (Elem i : ilist) proj[r.add(Elem(x), i)] = q;
        if (proj[x] != q) fail(ErrorCode::engine_bug, "coset does not contain its root");
    }
    if (reps.size() * ilist.size() != n)
        fail(ErrorCode::engine_bug, "|R/I| * |I| != |R| during quotient construction");

    Provenance prov;
    prov.ctor = ExprKind::Quot;
    prov.children.push_back(std::make_shared<const FiniteRing>(r));
    prov.display = r.name() + "/I" + Subset(r, ideal.bits()).to_string(4);
    QuotientRing q;
    q.ring = FiniteRing(std::make_shared<QuotientBackend>(r, reps, proj), std::move(prov));
    q.projection = RingHom{r, q.ring, std::move(proj), true};
    q.projection.verify();
    return q;
}

FiniteRing corner(const FiniteRing& r, Elem e) {
    if (e >= r.size()) fail(ErrorCode::bad_argument, "corner element id out of range");
    if (r.mul(e, e) != e)
        fail(ErrorCode::not_idempotent, "corner requires an idempotent, got " + r.label(e));
    Bits in(r.size());
    for (std::size_t x = 0; x < r.size(); ++x) in.set(r.mul(e, r.mul(Elem(x), e)));
    std::vector<Elem> elems = in.to_list();  // ascending parent ids

    Provenance prov;
    prov.ctor = ExprKind::Corner;
    prov.children.push_back(std::make_shared<const FiniteRing>(r));
    prov.display = "corner(" + r.name() + ", " + r.label(e) + ")";
    // identity of the corner is e, not the parent's 1
    auto backend = std::make_shared<SubringBackend>(r, elems);
    struct CornerBackend final : RingBackend {
        std::shared_ptr<SubringBackend> inner;
        Elem e_idx;
        std::size_t size() const override { return inner->size(); }
        Elem add(Elem a, Elem b) const override { return inner->add(a, b); }
        Elem mul(Elem a, Elem b) const override { return inner->mul(a, b); }
        Elem neg(Elem a) const override { return inner->neg(a); }
        Elem zero() const override { return inner->zero(); }
        Elem one() const override { return e_idx; }
        std::string label(Elem a) const override { return inner->label(a); }
    };
    auto cb = std::make_shared<CornerBackend>();
    cb->inner = backend;
    cb->e_idx = Elem(std::lower_bound(elems.begin(), elems.end(), e) - elems.begin());
    return FiniteRing(cb, std::move(prov));
}

SubringView unit_subring(const FiniteRing& r, const Bits& units) {
    // products of sums of units are again sums of units, so the subring
    // generated by U(R) is just its additive closure
    Bits t = additive_closure(r, units.to_list());
    return make_subring(r, t.to_list(), "unit_subring(" + r.name() + ")");
}

SubringView subring_from(const FiniteRing& r, const std::vector<Elem>& elems) {
    Bits in(r.size());
    for (Elem e : elems) {
        if (e >= r.size()) fail(ErrorCode::bad_argument, "subring element id out of range");
        in.set(e);
    }
    if (!in.test(r.zero()) || !in.test(r.one()))
        fail(ErrorCode::bad_argument, "subring must contain 0 and 1");
    std::vector<Elem> sorted = in.to_list();
    for (Elem a : sorted) {
        if (!in.test(r.neg(a)))
            fail(ErrorCode::bad_argument, "subring not closed under negation");
        for (Elem b : sorted)
            if (!in.test(r.add(a, b)) || !in.test(r.mul(a, b)))
                fail(ErrorCode::bad_argument, "subring not closed under add/mul");
    }
    return make_subring(r, std::move(sorted), "subring of " + r.name());
}

std::vector<SubringView> unital_subrings(const FiniteRing& r, std::size_t cap) {
    if (r.size() > cap)
        fail(ErrorCode::cap_exceeded,
             "unital_subrings capped at " + std::to_string(cap) + " elements");
    std::vector<std::vector<Elem>> found;
    std::vector<std::size_t> queue;
    auto push = [&](Bits bits) {
        std::vector<Elem> key = bits.to_list();
        if (std::find(found.begin(), found.end(), key) == found.end()) {
            found.push_back(std::move(key));
            queue.push_back(found.size() - 1);
        }
    };
    push(ring_closure(r, {r.one()}));
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<Elem> base = found[queue[qi]];
        for (std::size_t x = 0; x < r.size(); ++x) {
            if (std::binary_search(base.begin(), base.end(), Elem(x))) continue;
            std::vector<Elem> seeds = base;
            seeds.push_back(Elem(x));
            push(ring_closure(r, seeds));
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<SubringView> out;
    for (auto& elems : found) out.push_back(make_subring(r, elems, "subring of " + r.name()));
    return out;
}

std::vector<FiniteRing> semisimple_decomposition(const FiniteRing& s, const Bits& jacobson) {
    if (jacobson.count() != 1 || !jacobson.test(s.zero()))
        fail(ErrorCode::bad_argument, "semisimple decomposition requires J(S) = 0");
    const std::size_t n = s.size();
    std::vector<Elem> central_idem;
    for (std::size_t e = 0; e < n; ++e) {
        if (s.mul(Elem(e), Elem(e)) != Elem(e) || Elem(e) == s.zero()) continue;
        bool central = true;
        for (std::size_t x = 0; x < n && central; ++x)
            central = s.mul(Elem(e), Elem(x)) == s.mul(Elem(x), Elem(e));
        if (central) central_idem.push_back(Elem(e));
    }
    // atoms of the Boolean algebra of central idempotents
    std::vector<Elem> atoms;
    for (Elem e : central_idem) {
        bool minimal = true;
        for (Elem f : central_idem)
            if (f != e && s.mul(e, f) == f) {
                minimal = false;
                break;
            }
        if (minimal) atoms.push_back(e);
    }
    Elem sum = s.zero();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (s.mul(atoms[i], atoms[j]) != s.zero())
                fail(ErrorCode::engine_bug, "primitive central idempotents not orthogonal");
        sum = s.add(sum, atoms[i]);
    }
    if (sum != s.one())
        fail(ErrorCode::engine_bug, "central idempotent atoms do not sum to 1");
    std::vector<FiniteRing> parts;
    std::size_t total = 1;
    for (Elem e : atoms) {
        parts.push_back(corner(s, e));
        total *= parts.back().size();
    }
    if (total != n)
        fail(ErrorCode::engine_bug, "component sizes do not multiply to |S|");
    return parts;
}

}  // namespace ringlab
