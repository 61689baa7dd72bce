#include "ringlab/core.hpp"

#include <numeric>

namespace ringlab {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::parse_error: return "parse_error";
        case ErrorCode::arity_mismatch: return "arity_mismatch";
        case ErrorCode::unknown_name: return "unknown_name";
        case ErrorCode::bad_argument: return "bad_argument";
        case ErrorCode::size_overflow: return "size_overflow";
        case ErrorCode::cap_exceeded: return "cap_exceeded";
        case ErrorCode::not_prime: return "not_prime";
        case ErrorCode::not_central: return "not_central";
        case ErrorCode::not_idempotent: return "not_idempotent";
        case ErrorCode::not_ideal: return "not_ideal";
        case ErrorCode::not_group_ring: return "not_group_ring";
        case ErrorCode::ring_mismatch: return "ring_mismatch";
        case ErrorCode::group_axiom: return "group_axiom";
        case ErrorCode::bimodule_axiom: return "bimodule_axiom";
        case ErrorCode::hom_axiom: return "hom_axiom";
        case ErrorCode::zero_ring: return "zero_ring";
        case ErrorCode::engine_bug: return "engine_bug";
    }
    return "unknown";
}

std::size_t Bits::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::size_t(__builtin_popcountll(w));
    return c;
}

bool Bits::any() const {
    for (auto w : w_)
        if (w) return true;
    return false;
}

bool Bits::is_subset_of(const Bits& other) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~other.w_[i]) return false;
    return true;
}

Bits& Bits::operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

Bits& Bits::operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

std::vector<Elem> Bits::to_list() const {
    std::vector<Elem> out;
    out.reserve(count());
    for_each([&](Elem e) { out.push_back(e); });
    return out;
}

std::uint64_t Bits::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
    for (auto w : w_) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace ringlab
