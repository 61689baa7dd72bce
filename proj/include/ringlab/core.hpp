#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringlab {

// Dense element id inside one ring: 0..size-1, zero and one included.
using Elem = std::uint32_t;

enum class ErrorCode {
    parse_error,
    arity_mismatch,
    unknown_name,
    bad_argument,
    size_overflow,
    cap_exceeded,
    not_prime,
    not_central,
    not_idempotent,
    not_ideal,
    not_group_ring,
    ring_mismatch,
    group_axiom,
    bimodule_axiom,
    hom_axiom,
    zero_ring,
    engine_bug,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, std::string msg) { throw Error(c, std::move(msg)); }

namespace caps {
// Rings at or below table_cap precompute full add/mul tables; larger rings
// evaluate structurally. axiom_cap bounds the exhaustive O(n^3) axiom scan;
// above it verify_axioms samples a fixed number of seeded random triples.
inline constexpr std::size_t table_cap = 1024;
inline constexpr std::size_t axiom_cap = 1024;
inline constexpr std::size_t ideal_cap = 256;
inline constexpr std::size_t subring_cap = 16;
inline constexpr std::size_t endo_cap = 64;
inline constexpr std::size_t max_ring_size = std::size_t(1) << 20;
inline constexpr std::uint64_t axiom_sample_seed = 0xA5A5;
inline constexpr std::size_t axiom_sample_triples = 1'000'000;
}  // namespace caps

// Plain bitset over element ids. Subset (ring-aware) wraps this.
class Bits {
  public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    std::size_t count() const;
    bool any() const;
    bool is_subset_of(const Bits& other) const;

    Bits& operator&=(const Bits& o);
    Bits& operator|=(const Bits& o);
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }

    std::vector<Elem> to_list() const;
    std::uint64_t hash() const;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                unsigned b = __builtin_ctzll(w);
                f(Elem(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
bool is_prime_u64(std::uint64_t n);

}  // namespace ringlab
