#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ringlab/ring.hpp"

namespace ringlab {

// (L,R)-bimodule with enumerable elements. Only the regular bimodule, the
// zero bimodule, and direct sums of those are constructible; that covers
// every extension studied here.
class Bimodule {
  public:
    virtual ~Bimodule() = default;

    const FiniteRing& left_ring() const { return left_; }
    const FiniteRing& right_ring() const { return right_; }
    std::size_t size() const { return size_; }
    Elem zero() const { return zero_; }

    virtual Elem add(Elem m, Elem n) const = 0;
    virtual Elem neg(Elem m) const = 0;
    virtual Elem lact(Elem r, Elem m) const = 0;  // r.m, r in left ring
    virtual Elem ract(Elem m, Elem s) const = 0;  // m.s, s in right ring
    virtual std::string label(Elem m) const = 0;

    // Exhaustive bimodule axiom check (abelian group, distributivity,
    // associativity with ring products, (rm)s = r(ms)); throws on failure.
    void verify() const;

    static std::shared_ptr<const Bimodule> regular(const FiniteRing& r);
    static std::shared_ptr<const Bimodule> zero_module(const FiniteRing& left,
                                                       const FiniteRing& right);
    // M (+) N as a bimodule over (A x B, A x B), for the trivial-Morita
    // cross-check; product_ring must be the Prod(A,B) ring.
    static std::shared_ptr<const Bimodule> direct_sum(const FiniteRing& product_ring,
                                                      std::shared_ptr<const Bimodule> m,
                                                      std::shared_ptr<const Bimodule> n);

  protected:
    FiniteRing left_, right_;
    std::size_t size_ = 0;
    Elem zero_ = 0;
};

// Unital ring endomorphism given by an element map.
class Endomorphism {
  public:
    Endomorphism(FiniteRing ring, std::vector<Elem> map, std::string name);

    const FiniteRing& ring() const { return ring_; }
    Elem operator()(Elem a) const { return map_[a]; }
    const std::string& name() const { return name_; }
    bool is_identity() const;

    // ab = 0 <=> a*alpha(b) = 0 for all a, b.
    bool alpha_compatible() const;

    void verify() const;  // hom_axiom on failure

  private:
    FiniteRing ring_;
    std::vector<Elem> map_;
    std::string name_;
};

std::shared_ptr<const Endomorphism> identity_endo(const FiniteRing& r);

// All unital ring endomorphisms, found by exhaustive search over images of a
// small generating set; deterministic order (identity first, then by image
// tuple). Throws cap_exceeded above the cap.
std::vector<std::shared_ptr<const Endomorphism>> endomorphisms(
    const FiniteRing& r, std::size_t cap = caps::endo_cap);

// x -> x^p on GF(p,k); requires the ring to be a gf() construction.
std::shared_ptr<const Endomorphism> frobenius_endo(const FiniteRing& r);

}  // namespace ringlab
