#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/core.hpp"
#include "ringlab/expr.hpp"

namespace ringlab {

class FiniteRing;
class Bimodule;
class GroupTable;
class Endomorphism;

// Structural evaluator behind a FiniteRing. Implementations must be pure and
// immutable after construction; the handle memoizes full tables when the ring
// is small enough.
class RingBackend {
  public:
    virtual ~RingBackend() = default;
    virtual std::size_t size() const = 0;
    virtual Elem add(Elem a, Elem b) const = 0;
    virtual Elem mul(Elem a, Elem b) const = 0;
    virtual Elem neg(Elem a) const = 0;
    virtual Elem zero() const = 0;
    virtual Elem one() const = 0;
    virtual std::string label(Elem a) const = 0;
};

// Morita-context block data attached by the 2x2 generalized-matrix
// constructors so the theorem harness can compute trace ideals.
struct MoritaBlocks {
    std::shared_ptr<const FiniteRing> ring_a, ring_b;
    std::size_t m_size = 0, n_size = 0;
    // pairings M x N -> A and N x M -> B, by module element ids
    std::function<Elem(Elem, Elem)> phi;
    std::function<Elem(Elem, Elem)> psi;
};

struct Provenance {
    ExprPtr expr;  // may be null for internally built rings
    std::optional<ExprKind> ctor;  // which constructor produced the ring
    std::vector<std::shared_ptr<const FiniteRing>> children;
    std::shared_ptr<const GroupTable> group;
    std::shared_ptr<const Endomorphism> endo;
    std::shared_ptr<const Bimodule> bimodule;
    std::shared_ptr<const Bimodule> bimodule2;  // N of a Morita context
    std::shared_ptr<const MoritaBlocks> morita;
    std::optional<Elem> scalar;  // s of Ks / Mns
    int k = 0;                   // matrix dimension / truncation order
    std::string display;         // fallback name when expr is null
};

namespace detail {

// Type-erased compute-once slots hanging off a ring; derived data (invariant
// bundle, ideal lists, predicate cache) lands here so the harness can touch
// the same ring from several threads. Distinct slots may compute through one
// another; each slot runs its producer exactly once.
class CacheBox {
  public:
    static constexpr int kSlots = 8;

    template <class T, class F>
    const T& get_or(int slot, F&& make) const {
        std::call_once(flags_[slot], [&] {
            slots_[slot] = std::shared_ptr<const void>(new T(make()));
        });
        return *static_cast<const T*>(slots_[slot].get());
    }

  private:
    mutable std::array<std::once_flag, kSlots> flags_{};
    mutable std::array<std::shared_ptr<const void>, kSlots> slots_{};
};

struct RingData {
    std::shared_ptr<const RingBackend> backend;
    std::size_t size = 0;
    Elem zero = 0, one = 0;
    std::vector<Elem> add_tab, mul_tab;  // size*size when materialized
    std::vector<Elem> neg_tab;           // always materialized
    Provenance prov;
    bool degenerate_zero = false;  // 1-element ring (corner at e = 0)
    CacheBox cache;
};

}  // namespace detail

enum CacheSlot {
    kSlotInvariants = 0,
    kSlotPredicates = 1,
    kSlotAllIdeals = 2,
    kSlotIdealsInJ = 3,
    kSlotQuotByJ = 4,
};

class FiniteRing {
  public:
    FiniteRing() = default;
    FiniteRing(std::shared_ptr<const RingBackend> backend, Provenance prov,
               std::size_t table_cap = caps::table_cap);

    bool valid() const { return data_ != nullptr; }
    std::size_t size() const { return data_->size; }
    Elem zero() const { return data_->zero; }
    Elem one() const { return data_->one; }

    Elem add(Elem a, Elem b) const {
        const auto& d = *data_;
        return d.add_tab.empty() ? d.backend->add(a, b) : d.add_tab[std::size_t(a) * d.size + b];
    }
    Elem mul(Elem a, Elem b) const {
        const auto& d = *data_;
        return d.mul_tab.empty() ? d.backend->mul(a, b) : d.mul_tab[std::size_t(a) * d.size + b];
    }
    Elem neg(Elem a) const { return data_->neg_tab[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem pow(Elem a, std::uint64_t n) const;

    bool has_tables() const { return !data_->mul_tab.empty(); }
    std::string label(Elem a) const { return data_->backend->label(a); }
    bool degenerate_zero() const { return data_->degenerate_zero; }

    const Provenance& provenance() const { return data_->prov; }
    // Canonical display string: printed provenance expression when present.
    std::string name() const;

    // Attach / replace the provenance expression; only sound right after
    // construction, before the handle is shared (eval_expr uses this to pin
    // the parsed source form on Quot/Corner results).
    void set_provenance_expr(ExprPtr e) { data_->prov.expr = std::move(e); }
    void set_display(std::string s) { data_->prov.display = std::move(s); }

    // Identity of the underlying ring object; subsets and caches key off it.
    const void* id() const { return data_.get(); }
    bool same_ring(const FiniteRing& o) const { return data_ == o.data_; }

    const detail::CacheBox& cache() const { return data_->cache; }

    // True when both rings have equal size and identical operation tables
    // (element-wise; not an isomorphism search).
    bool table_equal(const FiniteRing& o) const;

  private:
    std::shared_ptr<detail::RingData> data_;
};

// Membership bitset tied to one ring; mixing rings is an error.
class Subset {
  public:
    Subset() = default;
    explicit Subset(FiniteRing ring) : ring_(std::move(ring)), bits_(ring_.size()) {}
    Subset(FiniteRing ring, Bits bits);

    const FiniteRing& ring() const { return ring_; }
    const Bits& bits() const { return bits_; }
    std::size_t count() const { return bits_.count(); }
    bool test(Elem a) const { return bits_.test(a); }
    void set(Elem a) { bits_.set(a); }
    std::vector<Elem> to_list() const { return bits_.to_list(); }

    bool same_ring(const Subset& o) const { return ring_.same_ring(o.ring_); }
    void require_ring(const FiniteRing& r) const;

    bool operator==(const Subset& o) const;
    bool is_subset_of(const Subset& o) const;

    std::string to_string(std::size_t max_elems = 16) const;

  private:
    FiniteRing ring_;
    Bits bits_;
};

// Unital ring homomorphism given by an element-id map.
struct RingHom {
    FiniteRing source, target;
    std::vector<Elem> map;
    bool surjective = false;

    Elem operator()(Elem a) const { return map[a]; }
    // Exhaustively verifies 0, 1, add, mul preservation; throws on failure.
    void verify() const;
};

// Table-backed ring from explicit operation tables (tests, quotients, fault
// injection). Canonical ids are whatever the tables say.
FiniteRing ring_from_tables(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul,
                            Elem zero, Elem one, std::vector<std::string> labels,
                            std::string display_name);

}  // namespace ringlab
