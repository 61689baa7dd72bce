#include "ringlab/module.hpp"

#include <algorithm>
#include <map>

#include "ringlab/construct.hpp"

namespace ringlab {

namespace {

class RegularBimodule final : public Bimodule {
  public:
    explicit RegularBimodule(const FiniteRing& r) {
        left_ = right_ = r;
        size_ = r.size();
        zero_ = r.zero();
    }
    Elem add(Elem m, Elem n) const override { return left_.add(m, n); }
    Elem neg(Elem m) const override { return left_.neg(m); }
    Elem lact(Elem r, Elem m) const override { return left_.mul(r, m); }
    Elem ract(Elem m, Elem s) const override { return left_.mul(m, s); }
    std::string label(Elem m) const override { return left_.label(m); }
};

class ZeroBimodule final : public Bimodule {
  public:
    ZeroBimodule(const FiniteRing& l, const FiniteRing& r) {
        left_ = l;
        right_ = r;
        size_ = 1;
        zero_ = 0;
    }
    Elem add(Elem, Elem) const override { return 0; }
    Elem neg(Elem) const override { return 0; }
    Elem lact(Elem, Elem) const override { return 0; }
    Elem ract(Elem, Elem) const override { return 0; }
    std::string label(Elem) const override { return "0"; }
};

// M (+) N over (A x B, A x B): (a,b).(m,n) = (a.m, b.n), (m,n).(a,b) = (m.b, n.a).
class DirectSumBimodule final : public Bimodule {
  public:
    DirectSumBimodule(const FiniteRing& prod, std::shared_ptr<const Bimodule> m,
                      std::shared_ptr<const Bimodule> n)
        : m_(std::move(m)), n_(std::move(n)) {
        left_ = right_ = prod;
        size_ = m_->size() * n_->size();
        zero_ = enc(m_->zero(), n_->zero());
        a_size_ = m_->left_ring().size();
    }
    Elem add(Elem x, Elem y) const override {
        return enc(m_->add(mm(x), mm(y)), n_->add(nn(x), nn(y)));
    }
    Elem neg(Elem x) const override { return enc(m_->neg(mm(x)), n_->neg(nn(x))); }
    Elem lact(Elem r, Elem x) const override {
        Elem a = Elem(r % a_size_), b = Elem(r / a_size_);
        return enc(m_->lact(a, mm(x)), n_->lact(b, nn(x)));
    }
    Elem ract(Elem x, Elem r) const override {
        Elem a = Elem(r % a_size_), b = Elem(r / a_size_);
        return enc(m_->ract(mm(x), b), n_->ract(nn(x), a));
    }
    std::string label(Elem x) const override {
        return "(" + m_->label(mm(x)) + "|" + n_->label(nn(x)) + ")";
    }

  private:
    Elem enc(Elem m, Elem n) const { return Elem(std::size_t(n) * m_->size() + m); }
    Elem mm(Elem x) const { return Elem(x % m_->size()); }
    Elem nn(Elem x) const { return Elem(x / m_->size()); }
    std::shared_ptr<const Bimodule> m_, n_;
    std::size_t a_size_;
};

}  // namespace

void Bimodule::verify() const {
    const std::size_t m = size_, l = left_.size(), r = right_.size();
    // keep the exhaustive check desk-scale; constructions past this bound are
    // compositions of already-verified pieces
    if (m * m * std::max(l, r) > (std::size_t(1) << 24)) return;
    for (std::size_t x = 0; x < m; ++x) {
        if (add(Elem(x), zero_) != x) fail(ErrorCode::bimodule_axiom, "module zero fails");
        if (add(Elem(x), neg(Elem(x))) != zero_)
            fail(ErrorCode::bimodule_axiom, "module negation fails");
        if (lact(left_.one(), Elem(x)) != x || ract(Elem(x), right_.one()) != x)
            fail(ErrorCode::bimodule_axiom, "unital action fails");
        for (std::size_t y = 0; y < m; ++y) {
            if (add(Elem(x), Elem(y)) != add(Elem(y), Elem(x)))
                fail(ErrorCode::bimodule_axiom, "module addition not commutative");
            for (std::size_t z = 0; z < m; ++z)
                if (add(add(Elem(x), Elem(y)), Elem(z)) != add(Elem(x), add(Elem(y), Elem(z))))
                    fail(ErrorCode::bimodule_axiom, "module addition not associative");
        }
    }
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t x = 0; x < m; ++x) {
            for (std::size_t y = 0; y < m; ++y)
                if (lact(Elem(a), add(Elem(x), Elem(y))) !=
                    add(lact(Elem(a), Elem(x)), lact(Elem(a), Elem(y))))
                    fail(ErrorCode::bimodule_axiom, "left action not additive");
            for (std::size_t b = 0; b < l; ++b) {
                if (lact(left_.add(Elem(a), Elem(b)), Elem(x)) !=
                    add(lact(Elem(a), Elem(x)), lact(Elem(b), Elem(x))))
                    fail(ErrorCode::bimodule_axiom, "left action not distributive");
                if (lact(left_.mul(Elem(a), Elem(b)), Elem(x)) !=
                    lact(Elem(a), lact(Elem(b), Elem(x))))
                    fail(ErrorCode::bimodule_axiom, "left action not associative");
            }
        }
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t x = 0; x < m; ++x) {
            for (std::size_t y = 0; y < m; ++y)
                if (ract(add(Elem(x), Elem(y)), Elem(a)) !=
                    add(ract(Elem(x), Elem(a)), ract(Elem(y), Elem(a))))
                    fail(ErrorCode::bimodule_axiom, "right action not additive");
            for (std::size_t b = 0; b < r; ++b) {
                if (ract(Elem(x), right_.add(Elem(a), Elem(b))) !=
                    add(ract(Elem(x), Elem(a)), ract(Elem(x), Elem(b))))
                    fail(ErrorCode::bimodule_axiom, "right action not distributive");
                if (ract(Elem(x), right_.mul(Elem(a), Elem(b))) !=
                    ract(ract(Elem(x), Elem(a)), Elem(b)))
                    fail(ErrorCode::bimodule_axiom, "right action not associative");
            }
        }
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t b = 0; b < r; ++b)
                if (ract(lact(Elem(a), Elem(x)), Elem(b)) !=
                    lact(Elem(a), ract(Elem(x), Elem(b))))
                    fail(ErrorCode::bimodule_axiom, "(rm)s != r(ms)");
}

std::shared_ptr<const Bimodule> Bimodule::regular(const FiniteRing& r) {
    return std::make_shared<RegularBimodule>(r);
}

std::shared_ptr<const Bimodule> Bimodule::zero_module(const FiniteRing& left,
                                                      const FiniteRing& right) {
    return std::make_shared<ZeroBimodule>(left, right);
}

std::shared_ptr<const Bimodule> Bimodule::direct_sum(const FiniteRing& product_ring,
                                                     std::shared_ptr<const Bimodule> m,
                                                     std::shared_ptr<const Bimodule> n) {
    return std::make_shared<DirectSumBimodule>(product_ring, std::move(m), std::move(n));
}

Endomorphism::Endomorphism(FiniteRing ring, std::vector<Elem> map, std::string name)
    : ring_(std::move(ring)), map_(std::move(map)), name_(std::move(name)) {
    if (map_.size() != ring_.size()) fail(ErrorCode::hom_axiom, "endomorphism map size mismatch");
}

bool Endomorphism::is_identity() const {
    for (std::size_t a = 0; a < map_.size(); ++a)
        if (map_[a] != a) return false;
    return true;
}

bool Endomorphism::alpha_compatible() const {
    const std::size_t n = ring_.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            bool ab0 = ring_.mul(Elem(a), Elem(b)) == ring_.zero();
            bool aab0 = ring_.mul(Elem(a), map_[b]) == ring_.zero();
            if (ab0 != aab0) return false;
        }
    return true;
}

void Endomorphism::verify() const {
    const std::size_t n = ring_.size();
    if (map_[ring_.zero()] != ring_.zero() || map_[ring_.one()] != ring_.one())
        fail(ErrorCode::hom_axiom, "endomorphism does not fix 0/1");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (map_[ring_.add(Elem(a), Elem(b))] != ring_.add(map_[a], map_[b]))
                fail(ErrorCode::hom_axiom, "endomorphism does not preserve addition");
            if (map_[ring_.mul(Elem(a), Elem(b))] != ring_.mul(map_[a], map_[b]))
                fail(ErrorCode::hom_axiom, "endomorphism does not preserve multiplication");
        }
}

std::shared_ptr<const Endomorphism> identity_endo(const FiniteRing& r) {
    std::vector<Elem> map(r.size());
    for (std::size_t a = 0; a < map.size(); ++a) map[a] = Elem(a);
    return std::make_shared<Endomorphism>(r, std::move(map), "id");
}

namespace {

// Closure derivation: how each ring element is first produced from 0, 1 and
// the chosen generators. Replaying it under candidate generator images gives
// the only possible extension of the assignment.
struct Derivation {
    enum Op { Zero, One, Gen, Add, Mul, Neg } op;
    Elem a = 0, b = 0;  // operands or generator index
};

struct GenClosure {
    std::vector<Elem> gens;
    std::vector<Elem> order;            // elements in derivation order
    std::vector<Derivation> derivation; // indexed by element id
};

GenClosure generating_set(const FiniteRing& r) {
    const std::size_t n = r.size();
    GenClosure gc;
    gc.derivation.resize(n);
    Bits have(n);
    std::vector<Elem> queue;
    auto push = [&](Elem e, Derivation d) {
        if (have.test(e)) return;
        have.set(e);
        gc.derivation[e] = d;
        gc.order.push_back(e);
        queue.push_back(e);
    };
    push(r.zero(), {Derivation::Zero});
    push(r.one(), {Derivation::One});
    auto close = [&] {
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            Elem e = queue[qi];
            push(r.neg(e), {Derivation::Neg, e});
            for (std::size_t qj = 0; qj <= qi; ++qj) {
                Elem f = queue[qj];
                push(r.add(e, f), {Derivation::Add, e, f});
                push(r.mul(e, f), {Derivation::Mul, e, f});
                push(r.mul(f, e), {Derivation::Mul, f, e});
            }
        }
    };
    close();
    for (std::size_t x = 0; x < n; ++x) {
        if (have.count() == n) break;
        if (!have.test(x)) {
            push(Elem(x), {Derivation::Gen, Elem(gc.gens.size())});
            gc.gens.push_back(Elem(x));
            close();
        }
    }
    return gc;
}

}  // namespace

std::vector<std::shared_ptr<const Endomorphism>> endomorphisms(const FiniteRing& r,
                                                               std::size_t cap) {
    const std::size_t n = r.size();
    if (n > cap) fail(ErrorCode::cap_exceeded, "endomorphism search capped at " +
                                                   std::to_string(cap) + " elements");
    GenClosure gc = generating_set(r);
    const std::size_t g = gc.gens.size();

    std::vector<std::vector<Elem>> found;
    std::vector<Elem> images(g, 0);
    std::vector<Elem> map(n);
    auto try_assignment = [&] {
        for (Elem e : gc.order) {
            const Derivation& d = gc.derivation[e];
            switch (d.op) {
                case Derivation::Zero: map[e] = r.zero(); break;
                case Derivation::One: map[e] = r.one(); break;
                case Derivation::Gen: map[e] = images[d.a]; break;
                case Derivation::Add: map[e] = r.add(map[d.a], map[d.b]); break;
                case Derivation::Mul: map[e] = r.mul(map[d.a], map[d.b]); break;
                case Derivation::Neg: map[e] = r.neg(map[d.a]); break;
            }
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (map[r.add(Elem(a), Elem(b))] != r.add(map[a], map[b])) return;
                if (map[r.mul(Elem(a), Elem(b))] != r.mul(map[a], map[b])) return;
            }
        found.push_back(map);
    };
    // lexicographic sweep over generator image tuples
    std::size_t total = 1;
    for (std::size_t i = 0; i < g; ++i) {
        if (total > (std::size_t(1) << 24) / n)
            fail(ErrorCode::cap_exceeded, "endomorphism search space too large");
        total *= n;
    }
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t v = t;
        for (std::size_t i = 0; i < g; ++i) {
            images[i] = Elem(v % n);
            v /= n;
        }
        try_assignment();
    }

    std::vector<Elem> ident(n);
    for (std::size_t a = 0; a < n; ++a) ident[a] = Elem(a);
    std::sort(found.begin(), found.end(), [&](const auto& x, const auto& y) {
        bool xi = x == ident, yi = y == ident;
        if (xi != yi) return xi;
        return x < y;
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());

    std::vector<std::shared_ptr<const Endomorphism>> out;
    for (std::size_t i = 0; i < found.size(); ++i) {
        std::string name = found[i] == ident ? "id" : "endo#" + std::to_string(i);
        out.push_back(std::make_shared<Endomorphism>(r, std::move(found[i]), name));
    }
    return out;
}

std::shared_ptr<const Endomorphism> frobenius_endo(const FiniteRing& r) {
    const Provenance& p = r.provenance();
    if (!p.expr || p.expr->kind != ExprKind::GF)
        fail(ErrorCode::bad_argument, "frob is only defined on GF(p, k) rings");
    std::uint64_t prime = std::uint64_t(std::get<std::int64_t>(p.expr->args[0]));
    std::vector<Elem> map(r.size());
    for (std::size_t a = 0; a < map.size(); ++a) map[a] = r.pow(Elem(a), prime);
    auto e = std::make_shared<Endomorphism>(r, std::move(map), "frob");
    e->verify();
    return e;
}

}  // namespace ringlab
