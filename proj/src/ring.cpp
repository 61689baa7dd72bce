#include "ringlab/ring.hpp"

#include <sstream>

namespace ringlab {

FiniteRing::FiniteRing(std::shared_ptr<const RingBackend> backend, Provenance prov,
                       std::size_t table_cap) {
    auto d = std::make_shared<detail::RingData>();
    d->backend = std::move(backend);
    d->size = d->backend->size();
    if (d->size == 0) fail(ErrorCode::bad_argument, "empty ring");
    if (d->size > caps::max_ring_size)
        fail(ErrorCode::size_overflow, "ring exceeds the size guard of 2^20 elements");
    d->zero = d->backend->zero();
    d->one = d->backend->one();
    d->prov = std::move(prov);
    d->degenerate_zero = d->size == 1;
    d->neg_tab.resize(d->size);
    for (std::size_t a = 0; a < d->size; ++a) d->neg_tab[a] = d->backend->neg(Elem(a));
    if (d->size <= table_cap) {
        d->add_tab.resize(d->size * d->size);
        d->mul_tab.resize(d->size * d->size);
        for (std::size_t a = 0; a < d->size; ++a)
            for (std::size_t b = 0; b < d->size; ++b) {
                d->add_tab[a * d->size + b] = d->backend->add(Elem(a), Elem(b));
                d->mul_tab[a * d->size + b] = d->backend->mul(Elem(a), Elem(b));
            }
    }
    data_ = std::move(d);
}

Elem FiniteRing::pow(Elem a, std::uint64_t n) const {
    Elem r = one();
    Elem base = a;
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

std::string FiniteRing::name() const {
    const Provenance& p = data_->prov;
    if (p.expr) return to_string(p.expr);
    if (!p.display.empty()) return p.display;
    std::ostringstream os;
    os << "ring<" << data_->size << ">";
    return os.str();
}

bool FiniteRing::table_equal(const FiniteRing& o) const {
    if (size() != o.size()) return false;
    if (zero() != o.zero() || one() != o.one()) return false;
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a) {
        if (neg(Elem(a)) != o.neg(Elem(a))) return false;
        for (std::size_t b = 0; b < n; ++b) {
            if (add(Elem(a), Elem(b)) != o.add(Elem(a), Elem(b))) return false;
            if (mul(Elem(a), Elem(b)) != o.mul(Elem(a), Elem(b))) return false;
        }
    }
    return true;
}

Subset::Subset(FiniteRing ring, Bits bits) : ring_(std::move(ring)), bits_(std::move(bits)) {
    if (bits_.size() != ring_.size())
        fail(ErrorCode::ring_mismatch, "bitset size does not match ring size");
}

void Subset::require_ring(const FiniteRing& r) const {
    if (!ring_.same_ring(r))
        fail(ErrorCode::ring_mismatch, "subset belongs to a different ring");
}

bool Subset::operator==(const Subset& o) const {
    return ring_.same_ring(o.ring_) && bits_ == o.bits_;
}

bool Subset::is_subset_of(const Subset& o) const {
    require_ring(o.ring_);
    return bits_.is_subset_of(o.bits_);
}

std::string Subset::to_string(std::size_t max_elems) const {
    std::ostringstream os;
    os << "{";
    std::size_t shown = 0, total = count();
    for (Elem e : to_list()) {
        if (shown == max_elems) {
            os << ", ... (" << total << " total)";
            break;
        }
        if (shown) os << ", ";
        os << ring_.label(e);
        ++shown;
    }
    os << "}";
    return os.str();
}

void RingHom::verify() const {
    const std::size_t n = source.size();
    if (map.size() != n) fail(ErrorCode::hom_axiom, "hom map has wrong domain size");
    if (map[source.zero()] != target.zero()) fail(ErrorCode::hom_axiom, "hom does not fix 0");
    if (map[source.one()] != target.one()) fail(ErrorCode::hom_axiom, "hom does not fix 1");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (map[source.add(Elem(a), Elem(b))] != target.add(map[a], map[b]))
                fail(ErrorCode::hom_axiom, "hom does not preserve addition");
            if (map[source.mul(Elem(a), Elem(b))] != target.mul(map[a], map[b]))
                fail(ErrorCode::hom_axiom, "hom does not preserve multiplication");
        }
    if (surjective) {
        Bits hit(target.size());
        for (auto v : map) hit.set(v);
        if (hit.count() != target.size())
            fail(ErrorCode::hom_axiom, "hom marked surjective misses elements");
    }
}

namespace {

class TableBackend final : public RingBackend {
  public:
    TableBackend(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul, Elem zero,
                 Elem one, std::vector<std::string> labels)
        : n_(n), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one),
          labels_(std::move(labels)) {}

    std::size_t size() const override { return n_; }
    Elem add(Elem a, Elem b) const override { return add_[std::size_t(a) * n_ + b]; }
    Elem mul(Elem a, Elem b) const override { return mul_[std::size_t(a) * n_ + b]; }
    Elem neg(Elem a) const override {
        for (std::size_t b = 0; b < n_; ++b)
            if (add(a, Elem(b)) == zero_) return Elem(b);
        fail(ErrorCode::bad_argument, "element has no additive inverse");
    }
    Elem zero() const override { return zero_; }
    Elem one() const override { return one_; }
    std::string label(Elem a) const override {
        return a < labels_.size() ? labels_[a] : std::to_string(a);
    }

  private:
    std::size_t n_;
    std::vector<Elem> add_, mul_;
    Elem zero_, one_;
    std::vector<std::string> labels_;
};

}  // namespace

FiniteRing ring_from_tables(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul,
                            Elem zero, Elem one, std::vector<std::string> labels,
                            std::string display_name) {
    Provenance prov;
    prov.display = std::move(display_name);
    return FiniteRing(std::make_shared<TableBackend>(n, std::move(add), std::move(mul), zero,
                                                     one, std::move(labels)),
                      std::move(prov));
}

}  // namespace ringlab
