#pragma once

#include <memory>
#include <vector>

#include "ringlab/group.hpp"
#include "ringlab/module.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

// Ring constructors. Canonical element orderings (documented per constructor)
// make ids stable across runs; tuple-like constructions uniformly encode the
// FIRST listed component as the least significant mixed-radix digit.

// Integers mod n; id k = residue k. n >= 2.
FiniteRing zmod(std::int64_t n);

// GF(p^k) as F_p[x]/(f), f the lexicographically least monic irreducible of
// degree k, coefficient tuples (c0,...,c_{k-1}) compared low-degree-first.
// Element id = sum c_i p^i.
FiniteRing gf(std::int64_t p, std::int64_t k);

// Component-wise product; id = i0 + |R0| * (i1 + |R1| * ...).
FiniteRing product(const std::vector<FiniteRing>& factors);

// Full k x k matrix ring; entries row-major, entry (0,0) least significant.
FiniteRing matrix_ring(int k, const FiniteRing& r);

// Upper triangular k x k matrices; stored entries (i,j), i <= j, row-major.
FiniteRing upper_triangular(int k, const FiniteRing& r);

// Skew triangular ring T_k(R, alpha): k-tuples (a0,...,a_{k-1}) with
// c_i = sum_{j<=i} a_j alpha^j(b_{i-j}); a0 least significant digit.
FiniteRing skew_triangular(int k, const FiniteRing& r,
                           std::shared_ptr<const Endomorphism> alpha);

// R[x; alpha]/(x^n) via the coefficient-tuple isomorphism; same tables as
// skew_triangular(n, r, alpha), polynomial labels.
FiniteRing poly_quot(const FiniteRing& r, std::shared_ptr<const Endomorphism> alpha, int n);

// Trivial extension T(R, M): pairs (r, m), (r,m)(s,n) = (rs, rn + ms).
FiniteRing trivial_extension(const FiniteRing& r, std::shared_ptr<const Bimodule> m = nullptr);

// DT(R, M): 4-tuples (a, m, b, n) with the two-variable dual-number product.
FiniteRing dt_extension(const FiniteRing& r, std::shared_ptr<const Bimodule> m = nullptr);

// Group ring RG: coefficient vectors indexed by group element, convolution
// product; coefficient of g_0 (the identity) least significant.
FiniteRing group_ring(const FiniteRing& r, std::shared_ptr<const GroupTable> g);

// Kernel of the augmentation map RG -> R; requires a group_ring ring.
Subset augmentation_ideal(const FiniteRing& rg);
RingHom augmentation_map(const FiniteRing& rg);

// Formal triangular matrix ring T(R, S, M) = [[R, M], [0, S]].
FiniteRing formal_triangular(const FiniteRing& r, const FiniteRing& s,
                             std::shared_ptr<const Bimodule> m);

// Generalized 2x2 matrix ring K_s(R); s must be central. Tuple (a, x, y, b)
// = [[a, x], [y, b]], a least significant.
FiniteRing k_s(const FiniteRing& r, Elem s);

// Formal matrix ring M_k(R; s): matrix product scaled by s^{d} where
// d = 1 + [i==j] - [i==k] - [k==j] for the summation index k. The convention
// is pinned by the table identity M_2(R;s) == K_{s^2}(R).
FiniteRing m_n_s(int k, const FiniteRing& r, Elem s);

// Trivial Morita context [[A, M], [N, B]] with zero pairings.
FiniteRing trivial_morita(const FiniteRing& a, const FiniteRing& b,
                          std::shared_ptr<const Bimodule> m, std::shared_ptr<const Bimodule> n);

}  // namespace ringlab
