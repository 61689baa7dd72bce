#include "ringlab/construct.hpp"

#include <algorithm>
#include <sstream>

namespace ringlab {

namespace {

std::size_t checked_pow_size(std::size_t base, std::size_t exp, const char* what) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > caps::max_ring_size / base)
            fail(ErrorCode::size_overflow, std::string(what) + " would exceed the size guard");
        r *= base;
    }
    return r;
}

std::shared_ptr<const FiniteRing> child(const FiniteRing& r) {
    return std::make_shared<const FiniteRing>(r);
}

ExprPtr expr_of(const FiniteRing& r) { return r.provenance().expr; }

// Synthesize a provenance expression when every input carries one.
ExprPtr maybe_expr(ExprKind kind, const std::vector<ExprArg>& head,
                   const std::vector<FiniteRing>& rings, const std::vector<ExprArg>& tail = {}) {
    std::vector<ExprArg> args = head;
    for (const auto& r : rings) {
        ExprPtr e = expr_of(r);
        if (!e) return nullptr;
        args.emplace_back(e);
    }
    for (const auto& a : tail) args.push_back(a);
    return make_expr(kind, std::move(args));
}

std::string paren_label(const FiniteRing& r, Elem e) {
    std::string s = r.label(e);
    bool simple = s.find_first_of("+ ") == std::string::npos;
    return simple ? s : "(" + s + ")";
}

// ---------------------------------------------------------------- zmod / gf

class ZmodBackend final : public RingBackend {
  public:
    explicit ZmodBackend(std::size_t n) : n_(n) {}
    std::size_t size() const override { return n_; }
    Elem add(Elem a, Elem b) const override { return Elem((std::size_t(a) + b) % n_); }
    Elem mul(Elem a, Elem b) const override { return Elem(std::size_t(a) * b % n_); }
    Elem neg(Elem a) const override { return Elem((n_ - a) % n_); }
    Elem zero() const override { return 0; }
    Elem one() const override { return 1 % n_; }
    std::string label(Elem a) const override { return std::to_string(a); }

  private:
    std::size_t n_;
};

class GFBackend final : public RingBackend {
  public:
    GFBackend(std::size_t p, std::size_t k, std::vector<Elem> modulus)
        : p_(p), k_(k), mod_(std::move(modulus)) {
        n_ = 1;
        for (std::size_t i = 0; i < k_; ++i) n_ *= p_;
    }

    std::size_t size() const override { return n_; }
    Elem add(Elem a, Elem b) const override {
        Elem r = 0, w = 1;
        for (std::size_t i = 0; i < k_; ++i) {
            r += Elem((a % p_ + b % p_) % p_) * w;
            a /= Elem(p_);
            b /= Elem(p_);
            w *= Elem(p_);
        }
        return r;
    }
    Elem neg(Elem a) const override {
        Elem r = 0, w = 1;
        for (std::size_t i = 0; i < k_; ++i) {
            r += Elem((p_ - a % p_) % p_) * w;
            a /= Elem(p_);
            w *= Elem(p_);
        }
        return r;
    }
    Elem mul(Elem a, Elem b) const override {
        std::array<Elem, 32> prod{};
        std::array<Elem, 16> da{}, db{};
        for (std::size_t i = 0; i < k_; ++i, a /= Elem(p_)) da[i] = a % p_;
        for (std::size_t i = 0; i < k_; ++i, b /= Elem(p_)) db[i] = b % p_;
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < k_; ++j)
                prod[i + j] = Elem((prod[i + j] + std::size_t(da[i]) * db[j]) % p_);
        // reduce by the monic modulus x^k = -(low part)
        for (std::size_t d = 2 * k_ - 2; d + 1 > k_; --d) {
            Elem c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (std::size_t i = 0; i < k_; ++i)
                prod[d - k_ + i] =
                    Elem((prod[d - k_ + i] + std::size_t(c) * (p_ - mod_[i])) % p_);
        }
        Elem r = 0, w = 1;
        for (std::size_t i = 0; i < k_; ++i) {
            r += prod[i] * w;
            w *= Elem(p_);
        }
        return r;
    }
    Elem zero() const override { return 0; }
    Elem one() const override { return k_ == 0 ? 0 : 1; }
    std::string label(Elem a) const override {
        if (a == 0) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < k_; ++i, a /= Elem(p_)) {
            Elem c = a % p_;
            if (!c) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0)
                os << c;
            else {
                if (c != 1) os << c;
                os << "x";
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

  private:
    std::size_t p_, k_, n_;
    std::vector<Elem> mod_;  // low coefficients c_0..c_{k-1} of the monic modulus
};

// Least monic irreducible of degree k over F_p, coefficient tuples
// (c0,...,c_{k-1}) in lexicographic order.
std::vector<Elem> least_irreducible(std::size_t p, std::size_t k) {
    auto poly_rem = [p](std::vector<Elem> a, const std::vector<Elem>& b) {
        // b monic
        while (a.size() >= b.size()) {
            Elem lead = a.back();
            if (lead) {
                std::size_t shift = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[shift + i] =
                        Elem((a[shift + i] + std::size_t(lead) * (p - b[i])) % p);
            }
            a.pop_back();
        }
        while (a.size() > 1 && a.back() == 0) a.pop_back();
        return a;
    };

    std::vector<Elem> cand(k, 0);
    auto is_irreducible = [&](const std::vector<Elem>& low) {
        std::vector<Elem> f(low);
        f.push_back(1);  // monic degree k
        if (k == 1) return true;
        // trial division by every monic divisor of degree 1..k/2
        for (std::size_t d = 1; d <= k / 2; ++d) {
            std::size_t count = 1;
            for (std::size_t i = 0; i < d; ++i) count *= p;
            for (std::size_t t = 0; t < count; ++t) {
                std::vector<Elem> g(d + 1, 0);
                std::size_t v = t;
                for (std::size_t i = 0; i < d; ++i) {
                    g[i] = Elem(v % p);
                    v /= p;
                }
                g[d] = 1;
                std::vector<Elem> r = poly_rem(f, g);
                if (r.size() == 1 && r[0] == 0) return false;
            }
        }
        return true;
    };

    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= p;
    // lexicographic order on (c0, c1, ...): c0 is the most significant key
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t v = t;
        for (std::size_t i = k; i-- > 0;) {
            cand[i] = Elem(v % p);
            v /= p;
        }
        if (is_irreducible(cand)) return cand;
    }
    fail(ErrorCode::engine_bug, "no irreducible polynomial found");
}

// ------------------------------------------------------------------ product

class ProductBackend final : public RingBackend {
  public:
    explicit ProductBackend(std::vector<FiniteRing> factors) : f_(std::move(factors)) {
        n_ = 1;
        for (const auto& r : f_) {
            if (r.size() != 0 && n_ > caps::max_ring_size / r.size())
                fail(ErrorCode::size_overflow, "product would exceed the size guard");
            n_ *= r.size();
        }
        zero_ = encode([&](std::size_t i) { return f_[i].zero(); });
        one_ = encode([&](std::size_t i) { return f_[i].one(); });
    }

    std::size_t size() const override { return n_; }
    Elem add(Elem a, Elem b) const override {
        return zip(a, b, [&](std::size_t i, Elem x, Elem y) { return f_[i].add(x, y); });
    }
    Elem mul(Elem a, Elem b) const override {
        return zip(a, b, [&](std::size_t i, Elem x, Elem y) { return f_[i].mul(x, y); });
    }
    Elem neg(Elem a) const override {
        Elem r = 0;
        std::size_t w = 1;
        for (std::size_t i = 0; i < f_.size(); ++i) {
            std::size_t m = f_[i].size();
            r += Elem(std::size_t(f_[i].neg(Elem(a % m))) * w);
            a /= Elem(m);
            w *= m;
        }
        return r;
    }
    Elem zero() const override { return zero_; }
    Elem one() const override { return one_; }
    std::string label(Elem a) const override {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < f_.size(); ++i) {
            std::size_t m = f_[i].size();
            if (i) os << ",";
            os << f_[i].label(Elem(a % m));
            a /= Elem(m);
        }
        os << ")";
        return os.str();
    }

    const std::vector<FiniteRing>& factors() const { return f_; }

  private:
    template <class F>
    Elem encode(F&& comp) const {
        Elem r = 0;
        std::size_t w = 1;
        for (std::size_t i = 0; i < f_.size(); ++i) {
            r += Elem(std::size_t(comp(i)) * w);
            w *= f_[i].size();
        }
        return r;
    }
    template <class F>
    Elem zip(Elem a, Elem b, F&& op) const {
        Elem r = 0;
        std::size_t w = 1;
        for (std::size_t i = 0; i < f_.size(); ++i) {
            std::size_t m = f_[i].size();
            r += Elem(std::size_t(op(i, Elem(a % m), Elem(b % m))) * w);
            a /= Elem(m);
            b /= Elem(m);
            w *= m;
        }
        return r;
    }

    std::vector<FiniteRing> f_;
    std::size_t n_;
    Elem zero_, one_;
};

// -------------------------------------------------- tuple-digit ring helper

// Shared machinery for rings whose elements are fixed-length digit tuples
// over one base ring (matrix, triangular, skew, group rings, K_s, ...).
class TupleBackend : public RingBackend {
  public:
    TupleBackend(FiniteRing base, std::size_t digits, const char* what)
        : base_(std::move(base)), d_(digits) {
        n_ = checked_pow_size(base_.size(), d_, what);
    }

    std::size_t size() const override { return n_; }
    Elem zero() const override { return splat(base_.zero()); }
    Elem neg(Elem a) const override {
        std::size_t m = base_.size();
        Elem r = 0;
        std::size_t w = 1;
        for (std::size_t i = 0; i < d_; ++i) {
            r += Elem(std::size_t(base_.neg(Elem(a % m))) * w);
            a /= Elem(m);
            w *= m;
        }
        return r;
    }
    Elem add(Elem a, Elem b) const override {
        std::size_t m = base_.size();
        Elem r = 0;
        std::size_t w = 1;
        for (std::size_t i = 0; i < d_; ++i) {
            r += Elem(std::size_t(base_.add(Elem(a % m), Elem(b % m))) * w);
            a /= Elem(m);
            b /= Elem(m);
            w *= m;
        }
        return r;
    }

  protected:
    Elem splat(Elem v) const {
        Elem r = 0;
        std::size_t w = 1;
        for (std::size_t i = 0; i < d_; ++i) {
            r += Elem(std::size_t(v) * w);
            w *= base_.size();
        }
        return r;
    }
    void decode(Elem a, Elem* out) const {
        std::size_t m = base_.size();
        for (std::size_t i = 0; i < d_; ++i) {
            out[i] = Elem(a % m);
            a /= Elem(m);
        }
    }
    Elem encode(const Elem* in) const {
        Elem r = 0;
        std::size_t w = 1;
        for (std::size_t i = 0; i < d_; ++i) {
            r += Elem(std::size_t(in[i]) * w);
            w *= base_.size();
        }
        return r;
    }

    FiniteRing base_;
    std::size_t d_, n_;
};

constexpr std::size_t kMaxDigits = 64;

// ------------------------------------------------------------------- matrix

class MatrixBackend final : public TupleBackend {
  public:
    MatrixBackend(int k, FiniteRing base)
        : TupleBackend(std::move(base), std::size_t(k) * k, "matrix ring"), k_(std::size_t(k)) {}

    Elem mul(Elem a, Elem b) const override {
        Elem da[kMaxDigits], db[kMaxDigits], dc[kMaxDigits];
        decode(a, da);
        decode(b, db);
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < k_; ++j) {
                Elem acc = base_.zero();
                for (std::size_t t = 0; t < k_; ++t)
                    acc = base_.add(acc, base_.mul(da[i * k_ + t], db[t * k_ + j]));
                dc[i * k_ + j] = acc;
            }
        return encode(dc);
    }
    Elem one() const override {
        Elem d[kMaxDigits];
        for (std::size_t i = 0; i < k_ * k_; ++i) d[i] = base_.zero();
        for (std::size_t i = 0; i < k_; ++i) d[i * k_ + i] = base_.one();
        return encode(d);
    }
    std::string label(Elem a) const override {
        Elem d[kMaxDigits];
        decode(a, d);
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < k_; ++i) {
            if (i) os << ",";
            os << "[";
            for (std::size_t j = 0; j < k_; ++j) {
                if (j) os << ",";
                os << base_.label(d[i * k_ + j]);
            }
            os << "]";
        }
        os << "]";
        return os.str();
    }

  private:
    std::size_t k_;
};

// --------------------------------------------------------- upper triangular

class UTBackend final : public TupleBackend {
  public:
    UTBackend(int k, FiniteRing base)
        : TupleBackend(std::move(base), std::size_t(k) * (k + 1) / 2, "triangular ring"),
          k_(std::size_t(k)) {
        pos_.assign(k_ * k_, -1);
        int idx = 0;
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = i; j < k_; ++j) pos_[i * k_ + j] = idx++;
    }

    Elem mul(Elem a, Elem b) const override {
        Elem da[kMaxDigits], db[kMaxDigits], dc[kMaxDigits];
        decode(a, da);
        decode(b, db);
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = i; j < k_; ++j) {
                Elem acc = base_.zero();
                for (std::size_t t = i; t <= j; ++t)
                    acc = base_.add(acc, base_.mul(da[pos_[i * k_ + t]], db[pos_[t * k_ + j]]));
                dc[pos_[i * k_ + j]] = acc;
            }
        return encode(dc);
    }
    Elem one() const override {
        Elem d[kMaxDigits];
        for (std::size_t i = 0; i < d_; ++i) d[i] = base_.zero();
        for (std::size_t i = 0; i < k_; ++i) d[pos_[i * k_ + i]] = base_.one();
        return encode(d);
    }
    std::string label(Elem a) const override {
        Elem d[kMaxDigits];
        decode(a, d);
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < k_; ++i) {
            if (i) os << ",";
            os << "[";
            for (std::size_t j = 0; j < k_; ++j) {
                if (j) os << ",";
                os << (j < i ? base_.label(base_.zero()) : base_.label(d[pos_[i * k_ + j]]));
            }
            os << "]";
        }
        os << "]";
        return os.str();
    }

  private:
    std::size_t k_;
    std::vector<int> pos_;
};

// ------------------------------------------------------------ skew / polyq

class SkewBackend final : public TupleBackend {
  public:
    SkewBackend(int k, FiniteRing base, std::shared_ptr<const Endomorphism> alpha,
                bool poly_labels)
        : TupleBackend(std::move(base), std::size_t(k), "skew triangular ring"),
          poly_labels_(poly_labels) {
        // alpha^j as element maps, j < k
        const std::size_t n = base_.size();
        pow_.resize(d_);
        pow_[0].resize(n);
        for (std::size_t e = 0; e < n; ++e) pow_[0][e] = Elem(e);
        for (std::size_t j = 1; j < d_; ++j) {
            pow_[j].resize(n);
            for (std::size_t e = 0; e < n; ++e) pow_[j][e] = (*alpha)(pow_[j - 1][e]);
        }
    }

    Elem mul(Elem a, Elem b) const override {
        Elem da[kMaxDigits], db[kMaxDigits], dc[kMaxDigits];
        decode(a, da);
        decode(b, db);
        // c_i = sum_{j<=i} a_j alpha^j(b_{i-j})
        for (std::size_t i = 0; i < d_; ++i) {
            Elem acc = base_.zero();
            for (std::size_t j = 0; j <= i; ++j)
                acc = base_.add(acc, base_.mul(da[j], pow_[j][db[i - j]]));
            dc[i] = acc;
        }
        return encode(dc);
    }
    Elem one() const override {
        Elem d[kMaxDigits];
        for (std::size_t i = 0; i < d_; ++i) d[i] = base_.zero();
        d[0] = base_.one();
        return encode(d);
    }
    std::string label(Elem a) const override {
        Elem d[kMaxDigits];
        decode(a, d);
        std::ostringstream os;
        if (!poly_labels_) {
            os << "(";
            for (std::size_t i = 0; i < d_; ++i) {
                if (i) os << ",";
                os << base_.label(d[i]);
            }
            os << ")";
            return os.str();
        }
        bool first = true;
        for (std::size_t i = 0; i < d_; ++i) {
            if (d[i] == base_.zero()) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0)
                os << base_.label(d[i]);
            else {
                if (d[i] != base_.one()) os << paren_label(base_, d[i]) << "*";
                os << "t";
                if (i > 1) os << "^" << i;
            }
        }
        if (first) os << "0";
        return os.str();
    }

  private:
    std::vector<std::vector<Elem>> pow_;
    bool poly_labels_;
};

// ------------------------------------------------------------- trivial ext

class TrivBackend final : public RingBackend {
  public:
    TrivBackend(FiniteRing r, std::shared_ptr<const Bimodule> m)
        : r_(std::move(r)), m_(std::move(m)) {
        if (r_.size() != 0 && m_->size() > caps::max_ring_size / r_.size())
            fail(ErrorCode::size_overflow, "trivial extension would exceed the size guard");
        n_ = r_.size() * m_->size();
    }

    std::size_t size() const override { return n_; }
    Elem add(Elem a, Elem b) const override {
        return enc(r_.add(rr(a), rr(b)), m_->add(mm(a), mm(b)));
    }
    Elem mul(Elem a, Elem b) const override {
        // (r, m)(s, n) = (rs, rn + ms)
        return enc(r_.mul(rr(a), rr(b)),
                   m_->add(m_->lact(rr(a), mm(b)), m_->ract(mm(a), rr(b))));
    }
    Elem neg(Elem a) const override { return enc(r_.neg(rr(a)), m_->neg(mm(a))); }
    Elem zero() const override { return enc(r_.zero(), m_->zero()); }
    Elem one() const override { return enc(r_.one(), m_->zero()); }
    std::string label(Elem a) const override {
        return "(" + r_.label(rr(a)) + ";" + m_->label(mm(a)) + ")";
    }

  private:
    Elem rr(Elem a) const { return Elem(a % r_.size()); }
    Elem mm(Elem a) const { return Elem(a / r_.size()); }
    Elem enc(Elem r, Elem m) const { return Elem(std::size_t(m) * r_.size() + r); }

    FiniteRing r_;
    std::shared_ptr<const Bimodule> m_;
    std::size_t n_;
};

// --------------------------------------------------------------------- DT

class DTBackend final : public RingBackend {
  public:
    DTBackend(FiniteRing r, std::shared_ptr<const Bimodule> m)
        : r_(std::move(r)), m_(std::move(m)) {
        std::size_t rs = r_.size(), ms = m_->size();
        n_ = 1;
        for (std::size_t f : {rs, ms, rs, ms}) {
            if (f != 0 && n_ > caps::max_ring_size / f)
                fail(ErrorCode::size_overflow, "DT extension would exceed the size guard");
            n_ *= f;
        }
    }

    std::size_t size() const override { return n_; }
    Elem add(Elem x, Elem y) const override {
        Q a = dec(x), b = dec(y);
        return enc({r_.add(a.a, b.a), m_->add(a.m, b.m), r_.add(a.b, b.b), m_->add(a.n, b.n)});
    }
    Elem mul(Elem x, Elem y) const override {
        Q a = dec(x), b = dec(y);
        // (a1a2, a1m2 + m1a2, a1b2 + b1a2, a1n2 + m1b2 + b1m2 + n1a2)
        Elem n3 = m_->add(m_->add(m_->lact(a.a, b.n), m_->ract(a.m, b.b)),
                          m_->add(m_->lact(a.b, b.m), m_->ract(a.n, b.a)));
        return enc({r_.mul(a.a, b.a), m_->add(m_->lact(a.a, b.m), m_->ract(a.m, b.a)),
                    r_.add(r_.mul(a.a, b.b), r_.mul(a.b, b.a)), n3});
    }
    Elem neg(Elem x) const override {
        Q a = dec(x);
        return enc({r_.neg(a.a), m_->neg(a.m), r_.neg(a.b), m_->neg(a.n)});
    }
    Elem zero() const override { return enc({r_.zero(), m_->zero(), r_.zero(), m_->zero()}); }
    Elem one() const override { return enc({r_.one(), m_->zero(), r_.zero(), m_->zero()}); }
    std::string label(Elem x) const override {
        Q a = dec(x);
        return "(" + r_.label(a.a) + ";" + m_->label(a.m) + ";" + r_.label(a.b) + ";" +
               m_->label(a.n) + ")";
    }

  private:
    struct Q {
        Elem a, m, b, n;
    };
    Q dec(Elem x) const {
        Q q;
        q.a = Elem(x % r_.size());
        x /= Elem(r_.size());
        q.m = Elem(x % m_->size());
        x /= Elem(m_->size());
        q.b = Elem(x % r_.size());
        q.n = Elem(x / r_.size());
        return q;
    }
    Elem enc(Q q) const {
        return Elem(((std::size_t(q.n) * r_.size() + q.b) * m_->size() + q.m) * r_.size() +
                    q.a);
    }

    FiniteRing r_;
    std::shared_ptr<const Bimodule> m_;
    std::size_t n_;
};

// -------------------------------------------------------------- group ring

class GroupRingBackend final : public TupleBackend {
  public:
    GroupRingBackend(FiniteRing base, std::shared_ptr<const GroupTable> g)
        : TupleBackend(std::move(base), g->size(), "group ring"), g_(std::move(g)) {}

    Elem mul(Elem a, Elem b) const override {
        Elem da[kMaxDigits], db[kMaxDigits], dc[kMaxDigits];
        decode(a, da);
        decode(b, db);
        for (std::size_t i = 0; i < d_; ++i) dc[i] = base_.zero();
        for (std::size_t h = 0; h < d_; ++h) {
            if (da[h] == base_.zero()) continue;
            for (std::size_t k = 0; k < d_; ++k) {
                Elem g = g_->op(Elem(h), Elem(k));
                dc[g] = base_.add(dc[g], base_.mul(da[h], db[k]));
            }
        }
        return encode(dc);
    }
    Elem one() const override {
        Elem d[kMaxDigits];
        for (std::size_t i = 0; i < d_; ++i) d[i] = base_.zero();
        d[g_->identity()] = base_.one();
        return encode(d);
    }
    std::string label(Elem a) const override {
        Elem d[kMaxDigits];
        decode(a, d);
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < d_; ++i) {
            if (d[i] == base_.zero()) continue;
            if (!first) os << "+";
            first = false;
            if (d[i] != base_.one()) os << paren_label(base_, d[i]) << "*";
            os << g_->label(Elem(i));
        }
        if (first) os << "0";
        return os.str();
    }

    const GroupTable& group() const { return *g_; }

  private:
    std::shared_ptr<const GroupTable> g_;
};

// --------------------------------------------------------- formal triangle

class FTriBackend final : public RingBackend {
  public:
    FTriBackend(FiniteRing r, FiniteRing s, std::shared_ptr<const Bimodule> m)
        : r_(std::move(r)), s_(std::move(s)), m_(std::move(m)) {
        n_ = 1;
        for (std::size_t f : {r_.size(), m_->size(), s_.size()}) {
            if (f != 0 && n_ > caps::max_ring_size / f)
                fail(ErrorCode::size_overflow, "formal triangular ring exceeds the size guard");
            n_ *= f;
        }
    }

    std::size_t size() const override { return n_; }
    Elem add(Elem x, Elem y) const override {
        T a = dec(x), b = dec(y);
        return enc({r_.add(a.r, b.r), m_->add(a.m, b.m), s_.add(a.s, b.s)});
    }
    Elem mul(Elem x, Elem y) const override {
        T a = dec(x), b = dec(y);
        // (r, m, s)(r', m', s') = (rr', rm' + ms', ss')
        return enc({r_.mul(a.r, b.r), m_->add(m_->lact(a.r, b.m), m_->ract(a.m, b.s)),
                    s_.mul(a.s, b.s)});
    }
    Elem neg(Elem x) const override {
        T a = dec(x);
        return enc({r_.neg(a.r), m_->neg(a.m), s_.neg(a.s)});
    }
    Elem zero() const override { return enc({r_.zero(), m_->zero(), s_.zero()}); }
    Elem one() const override { return enc({r_.one(), m_->zero(), s_.one()}); }
    std::string label(Elem x) const override {
        T a = dec(x);
        return "[[" + r_.label(a.r) + "," + m_->label(a.m) + "],[0," + s_.label(a.s) + "]]";
    }

  private:
    struct T {
        Elem r, m, s;
    };
    T dec(Elem x) const {
        T t;
        t.r = Elem(x % r_.size());
        x /= Elem(r_.size());
        t.m = Elem(x % m_->size());
        t.s = Elem(x / m_->size());
        return t;
    }
    Elem enc(T t) const {
        return Elem((std::size_t(t.s) * m_->size() + t.m) * r_.size() + t.r);
    }

    FiniteRing r_, s_;
    std::shared_ptr<const Bimodule> m_;
    std::size_t n_;
};

// ------------------------------------------------------------------- K_s

class KsBackend final : public TupleBackend {
  public:
    KsBackend(FiniteRing base, Elem s) : TupleBackend(std::move(base), 4, "K_s ring"), s_(s) {}

    Elem mul(Elem x, Elem y) const override {
        Elem a[4], b[4], c[4];
        decode(x, a);
        decode(y, b);
        // (a, x; y, b): c = (a1a2 + s x1 y2, a1x2 + x1b2; y1a2 + b1y2, s y1x2 + b1b2)
        c[0] = base_.add(base_.mul(a[0], b[0]), base_.mul(s_, base_.mul(a[1], b[2])));
        c[1] = base_.add(base_.mul(a[0], b[1]), base_.mul(a[1], b[3]));
        c[2] = base_.add(base_.mul(a[2], b[0]), base_.mul(a[3], b[2]));
        c[3] = base_.add(base_.mul(s_, base_.mul(a[2], b[1])), base_.mul(a[3], b[3]));
        return encode(c);
    }
    Elem one() const override {
        Elem d[4] = {base_.one(), base_.zero(), base_.zero(), base_.one()};
        return encode(d);
    }
    std::string label(Elem x) const override {
        Elem a[4];
        decode(x, a);
        return "[[" + base_.label(a[0]) + "," + base_.label(a[1]) + "],[" + base_.label(a[2]) +
               "," + base_.label(a[3]) + "]]";
    }

  private:
    Elem s_;
};

// ----------------------------------------------------------------- M_n(R;s)

class MnsBackend final : public TupleBackend {
  public:
    MnsBackend(int k, FiniteRing base, Elem s)
        : TupleBackend(std::move(base), std::size_t(k) * k, "formal matrix ring"),
          k_(std::size_t(k)) {
        spow_[0] = base_.one();
        spow_[1] = s;
        spow_[2] = base_.mul(s, s);
    }

    Elem mul(Elem x, Elem y) const override {
        Elem a[kMaxDigits], b[kMaxDigits], c[kMaxDigits];
        decode(x, a);
        decode(y, b);
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < k_; ++j) {
                Elem acc = base_.zero();
                for (std::size_t t = 0; t < k_; ++t) {
                    // exponent 1 + [i==j] - [i==t] - [t==j]
                    int d = 1 + (i == j) - (i == t) - (t == j);
                    Elem term = base_.mul(a[i * k_ + t], b[t * k_ + j]);
                    acc = base_.add(acc, base_.mul(spow_[d], term));
                }
                c[i * k_ + j] = acc;
            }
        return encode(c);
    }
    Elem one() const override {
        Elem d[kMaxDigits];
        for (std::size_t i = 0; i < k_ * k_; ++i) d[i] = base_.zero();
        for (std::size_t i = 0; i < k_; ++i) d[i * k_ + i] = base_.one();
        return encode(d);
    }
    std::string label(Elem x) const override {
        Elem d[kMaxDigits];
        decode(x, d);
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < k_; ++i) {
            if (i) os << ",";
            os << "[";
            for (std::size_t j = 0; j < k_; ++j) {
                if (j) os << ",";
                os << base_.label(d[i * k_ + j]);
            }
            os << "]";
        }
        os << "]";
        return os.str();
    }

  private:
    std::size_t k_;
    Elem spow_[3];
};

// --------------------------------------------------------- trivial Morita

class TrivMoritaBackend final : public RingBackend {
  public:
    TrivMoritaBackend(FiniteRing a, FiniteRing b, std::shared_ptr<const Bimodule> m,
                      std::shared_ptr<const Bimodule> n)
        : a_(std::move(a)), b_(std::move(b)), m_(std::move(m)), n_mod_(std::move(n)) {
        n_ = 1;
        for (std::size_t f : {a_.size(), m_->size(), n_mod_->size(), b_.size()}) {
            if (f != 0 && n_ > caps::max_ring_size / f)
                fail(ErrorCode::size_overflow, "Morita context exceeds the size guard");
            n_ *= f;
        }
    }

    std::size_t size() const override { return n_; }
    Elem add(Elem x, Elem y) const override {
        Q p = dec(x), q = dec(y);
        return enc({a_.add(p.a, q.a), m_->add(p.m, q.m), n_mod_->add(p.n, q.n),
                    b_.add(p.b, q.b)});
    }
    Elem mul(Elem x, Elem y) const override {
        Q p = dec(x), q = dec(y);
        // zero pairings: diagonal products plus module actions only
        return enc({a_.mul(p.a, q.a), m_->add(m_->lact(p.a, q.m), m_->ract(p.m, q.b)),
                    n_mod_->add(n_mod_->lact(p.b, q.n), n_mod_->ract(p.n, q.a)),
                    b_.mul(p.b, q.b)});
    }
    Elem neg(Elem x) const override {
        Q p = dec(x);
        return enc({a_.neg(p.a), m_->neg(p.m), n_mod_->neg(p.n), b_.neg(p.b)});
    }
    Elem zero() const override {
        return enc({a_.zero(), m_->zero(), n_mod_->zero(), b_.zero()});
    }
    Elem one() const override { return enc({a_.one(), m_->zero(), n_mod_->zero(), b_.one()}); }
    std::string label(Elem x) const override {
        Q p = dec(x);
        return "[[" + a_.label(p.a) + "," + m_->label(p.m) + "],[" + n_mod_->label(p.n) + "," +
               b_.label(p.b) + "]]";
    }

  private:
    struct Q {
        Elem a, m, n, b;
    };
    Q dec(Elem x) const {
        Q q;
        q.a = Elem(x % a_.size());
        x /= Elem(a_.size());
        q.m = Elem(x % m_->size());
        x /= Elem(m_->size());
        q.n = Elem(x % n_mod_->size());
        q.b = Elem(x / n_mod_->size());
        return q;
    }
    Elem enc(Q q) const {
        return Elem(((std::size_t(q.b) * n_mod_->size() + q.n) * m_->size() + q.m) * a_.size() +
                    q.a);
    }

    FiniteRing a_, b_;
    std::shared_ptr<const Bimodule> m_, n_mod_;
    std::size_t n_;
};

void require_central(const FiniteRing& r, Elem s, const char* what) {
    for (std::size_t x = 0; x < r.size(); ++x)
        if (r.mul(s, Elem(x)) != r.mul(Elem(x), s))
            fail(ErrorCode::not_central,
                 std::string(what) + ": scalar " + r.label(s) + " is not central");
}

}  // namespace

// ------------------------------------------------------------- public API

FiniteRing zmod(std::int64_t n) {
    if (n < 2) fail(ErrorCode::bad_argument, "Zmod(n) requires n >= 2");
    Provenance prov;
    prov.ctor = ExprKind::Zmod;
    prov.expr = make_expr(ExprKind::Zmod, {n});
    return FiniteRing(std::make_shared<ZmodBackend>(std::size_t(n)), std::move(prov));
}

FiniteRing gf(std::int64_t p, std::int64_t k) {
    if (p < 2 || !is_prime_u64(std::uint64_t(p)))
        fail(ErrorCode::not_prime, "GF(p, k) requires a prime p");
    if (k < 1 || k > 15) fail(ErrorCode::bad_argument, "GF(p, k) requires 1 <= k <= 15");
    std::size_t q = checked_pow_size(std::size_t(p), std::size_t(k), "field");
    if (q > caps::table_cap)
        fail(ErrorCode::size_overflow, "GF(p, k) requires p^k <= table_cap");
    auto modulus = least_irreducible(std::size_t(p), std::size_t(k));
    Provenance prov;
    prov.ctor = ExprKind::GF;
    prov.expr = make_expr(ExprKind::GF, {p, k});
    return FiniteRing(std::make_shared<GFBackend>(std::size_t(p), std::size_t(k), modulus),
                      std::move(prov));
}

FiniteRing product(const std::vector<FiniteRing>& factors) {
    if (factors.empty()) fail(ErrorCode::bad_argument, "Prod() requires at least one factor");
    Provenance prov;
    prov.ctor = ExprKind::Prod;
    for (const auto& f : factors) prov.children.push_back(child(f));
    prov.expr = maybe_expr(ExprKind::Prod, {}, factors);
    return FiniteRing(std::make_shared<ProductBackend>(factors), std::move(prov));
}

FiniteRing matrix_ring(int k, const FiniteRing& r) {
    if (k < 1) fail(ErrorCode::bad_argument, "Mat(k, R) requires k >= 1");
    Provenance prov;
    prov.ctor = ExprKind::Mat;
    prov.k = k;
    prov.children.push_back(child(r));
    prov.expr = maybe_expr(ExprKind::Mat, {std::int64_t(k)}, {r});
    return FiniteRing(std::make_shared<MatrixBackend>(k, r), std::move(prov));
}

FiniteRing upper_triangular(int k, const FiniteRing& r) {
    if (k < 1) fail(ErrorCode::bad_argument, "UT(k, R) requires k >= 1");
    Provenance prov;
    prov.ctor = ExprKind::UT;
    prov.k = k;
    prov.children.push_back(child(r));
    prov.expr = maybe_expr(ExprKind::UT, {std::int64_t(k)}, {r});
    return FiniteRing(std::make_shared<UTBackend>(k, r), std::move(prov));
}

FiniteRing skew_triangular(int k, const FiniteRing& r,
                           std::shared_ptr<const Endomorphism> alpha) {
    if (k < 1) fail(ErrorCode::bad_argument, "SkewUT(k, R, a) requires k >= 1");
    if (!alpha) alpha = identity_endo(r);
    if (!alpha->ring().same_ring(r))
        fail(ErrorCode::ring_mismatch, "endomorphism belongs to a different ring");
    alpha->verify();
    Provenance prov;
    prov.ctor = ExprKind::SkewUT;
    prov.k = k;
    prov.children.push_back(child(r));
    prov.endo = alpha;
    prov.expr = maybe_expr(ExprKind::SkewUT, {std::int64_t(k)}, {r}, {EndoName{alpha->name()}});
    return FiniteRing(std::make_shared<SkewBackend>(k, r, alpha, false), std::move(prov));
}

FiniteRing poly_quot(const FiniteRing& r, std::shared_ptr<const Endomorphism> alpha, int n) {
    if (n < 1) fail(ErrorCode::bad_argument, "PolyQ(R, a, n) requires n >= 1");
    if (!alpha) alpha = identity_endo(r);
    if (!alpha->ring().same_ring(r))
        fail(ErrorCode::ring_mismatch, "endomorphism belongs to a different ring");
    alpha->verify();
    Provenance prov;
    prov.ctor = ExprKind::PolyQ;
    prov.k = n;
    prov.children.push_back(child(r));
    prov.endo = alpha;
    prov.expr =
        maybe_expr(ExprKind::PolyQ, {}, {r}, {EndoName{alpha->name()}, std::int64_t(n)});
    return FiniteRing(std::make_shared<SkewBackend>(n, r, alpha, true), std::move(prov));
}

FiniteRing trivial_extension(const FiniteRing& r, std::shared_ptr<const Bimodule> m) {
    if (!m) m = Bimodule::regular(r);
    if (!m->left_ring().same_ring(r) || !m->right_ring().same_ring(r))
        fail(ErrorCode::ring_mismatch, "Triv(R, M): M must be an (R,R)-bimodule");
    m->verify();
    Provenance prov;
    prov.ctor = ExprKind::Triv;
    prov.children.push_back(child(r));
    prov.bimodule = m;
    prov.expr = maybe_expr(ExprKind::Triv, {}, {r});
    return FiniteRing(std::make_shared<TrivBackend>(r, m), std::move(prov));
}

FiniteRing dt_extension(const FiniteRing& r, std::shared_ptr<const Bimodule> m) {
    if (!m) m = Bimodule::regular(r);
    if (!m->left_ring().same_ring(r) || !m->right_ring().same_ring(r))
        fail(ErrorCode::ring_mismatch, "DT(R, M): M must be an (R,R)-bimodule");
    m->verify();
    Provenance prov;
    prov.ctor = ExprKind::DT;
    prov.children.push_back(child(r));
    prov.bimodule = m;
    prov.expr = maybe_expr(ExprKind::DT, {}, {r});
    return FiniteRing(std::make_shared<DTBackend>(r, m), std::move(prov));
}

FiniteRing group_ring(const FiniteRing& r, std::shared_ptr<const GroupTable> g) {
    if (!g) fail(ErrorCode::bad_argument, "GrpRing requires a group");
    g->verify();
    Provenance prov;
    prov.ctor = ExprKind::GrpRing;
    prov.children.push_back(child(r));
    prov.group = g;
    if (!g->cyclic_orders().empty())
        prov.expr = maybe_expr(ExprKind::GrpRing, {}, {r}, {GroupExpr{g->cyclic_orders()}});
    return FiniteRing(std::make_shared<GroupRingBackend>(r, g), std::move(prov));
}

namespace {

void require_group_ring(const FiniteRing& rg) {
    if (rg.provenance().ctor != ExprKind::GrpRing || rg.provenance().children.empty() ||
        !rg.provenance().group)
        fail(ErrorCode::not_group_ring, "argument was not built by GrpRing");
}

}  // namespace

RingHom augmentation_map(const FiniteRing& rg) {
    require_group_ring(rg);
    const FiniteRing& base = *rg.provenance().children[0];
    const GroupTable& g = *rg.provenance().group;
    RingHom hom;
    hom.source = rg;
    hom.target = base;
    hom.surjective = true;
    hom.map.resize(rg.size());
    const std::size_t m = base.size();
    for (std::size_t x = 0; x < rg.size(); ++x) {
        Elem acc = base.zero();
        std::size_t v = x;
        for (std::size_t i = 0; i < g.size(); ++i) {
            acc = base.add(acc, Elem(v % m));
            v /= m;
        }
        hom.map[x] = acc;
    }
    return hom;
}

Subset augmentation_ideal(const FiniteRing& rg) {
    RingHom eps = augmentation_map(rg);
    Subset ker(rg);
    const Elem z = eps.target.zero();
    for (std::size_t x = 0; x < rg.size(); ++x)
        if (eps.map[x] == z) ker.set(Elem(x));
    return ker;
}

FiniteRing formal_triangular(const FiniteRing& r, const FiniteRing& s,
                             std::shared_ptr<const Bimodule> m) {
    if (!m) fail(ErrorCode::bad_argument, "FTri requires a bimodule");
    if (!m->left_ring().same_ring(r) || !m->right_ring().same_ring(s))
        fail(ErrorCode::ring_mismatch, "FTri(R, S, M): M must be an (R,S)-bimodule");
    m->verify();
    Provenance prov;
    prov.ctor = ExprKind::FTri;
    prov.children.push_back(child(r));
    prov.children.push_back(child(s));
    prov.bimodule = m;
    if (m->size() == 1)
        prov.expr = maybe_expr(ExprKind::FTri, {}, {r, s});
    else if (r.same_ring(s))
        prov.expr = maybe_expr(ExprKind::FTri, {}, {r});
    auto morita = std::make_shared<MoritaBlocks>();
    morita->ring_a = child(r);
    morita->ring_b = child(s);
    morita->m_size = m->size();
    morita->n_size = 1;
    morita->phi = [zr = r.zero()](Elem, Elem) { return zr; };
    morita->psi = [zs = s.zero()](Elem, Elem) { return zs; };
    prov.morita = morita;
    return FiniteRing(std::make_shared<FTriBackend>(r, s, m), std::move(prov));
}

FiniteRing k_s(const FiniteRing& r, Elem s) {
    if (s >= r.size()) fail(ErrorCode::bad_argument, "Ks: scalar id out of range");
    require_central(r, s, "Ks");
    Provenance prov;
    prov.ctor = ExprKind::Ks;
    prov.children.push_back(child(r));
    prov.scalar = s;
    prov.expr = maybe_expr(ExprKind::Ks, {}, {r}, {ElemLit{std::int64_t(s)}});
    auto morita = std::make_shared<MoritaBlocks>();
    morita->ring_a = morita->ring_b = child(r);
    morita->m_size = morita->n_size = r.size();
    morita->phi = [r, s](Elem m, Elem n) { return r.mul(s, r.mul(m, n)); };
    morita->psi = [r, s](Elem n, Elem m) { return r.mul(s, r.mul(n, m)); };
    prov.morita = morita;
    return FiniteRing(std::make_shared<KsBackend>(r, s), std::move(prov));
}

FiniteRing m_n_s(int k, const FiniteRing& r, Elem s) {
    if (k < 1) fail(ErrorCode::bad_argument, "Mns(k, R, s) requires k >= 1");
    if (s >= r.size()) fail(ErrorCode::bad_argument, "Mns: scalar id out of range");
    require_central(r, s, "Mns");
    Provenance prov;
    prov.ctor = ExprKind::Mns;
    prov.k = k;
    prov.children.push_back(child(r));
    prov.scalar = s;
    prov.expr = maybe_expr(ExprKind::Mns, {std::int64_t(k)}, {r}, {ElemLit{std::int64_t(s)}});
    if (k == 2) {
        // M_2(R; s) == K_{s^2}(R); expose the Morita blocks of that form
        Elem s2 = r.mul(s, s);
        auto morita = std::make_shared<MoritaBlocks>();
        morita->ring_a = morita->ring_b = child(r);
        morita->m_size = morita->n_size = r.size();
        morita->phi = [r, s2](Elem m, Elem n) { return r.mul(s2, r.mul(m, n)); };
        morita->psi = [r, s2](Elem n, Elem m) { return r.mul(s2, r.mul(n, m)); };
        prov.morita = morita;
    }
    return FiniteRing(std::make_shared<MnsBackend>(k, r, s), std::move(prov));
}

FiniteRing trivial_morita(const FiniteRing& a, const FiniteRing& b,
                          std::shared_ptr<const Bimodule> m,
                          std::shared_ptr<const Bimodule> n) {
    if (!m) m = a.same_ring(b) ? Bimodule::regular(a) : Bimodule::zero_module(a, b);
    if (!n) n = a.same_ring(b) ? Bimodule::regular(b) : Bimodule::zero_module(b, a);
    if (!m->left_ring().same_ring(a) || !m->right_ring().same_ring(b))
        fail(ErrorCode::ring_mismatch, "TrivMorita: M must be an (A,B)-bimodule");
    if (!n->left_ring().same_ring(b) || !n->right_ring().same_ring(a))
        fail(ErrorCode::ring_mismatch, "TrivMorita: N must be a (B,A)-bimodule");
    m->verify();
    n->verify();
    Provenance prov;
    prov.ctor = ExprKind::TrivMorita;
    prov.children.push_back(child(a));
    prov.children.push_back(child(b));
    prov.bimodule = m;
    prov.bimodule2 = n;
    prov.expr = maybe_expr(ExprKind::TrivMorita, {}, {a, b});
    auto morita = std::make_shared<MoritaBlocks>();
    morita->ring_a = child(a);
    morita->ring_b = child(b);
    morita->m_size = m->size();
    morita->n_size = n->size();
    morita->phi = [za = a.zero()](Elem, Elem) { return za; };
    morita->psi = [zb = b.zero()](Elem, Elem) { return zb; };
    prov.morita = morita;
    return FiniteRing(std::make_shared<TrivMoritaBackend>(a, b, m, n), std::move(prov));
}

}  // namespace ringlab
