#pragma once

#include "k3moduli/lattice.hpp"

namespace k3moduli {

// Fixed basis conventions used throughout:
//
//   H^2 lattice (rank 22):   E8(-1) ++ E8(-1) ++ U ++ U ++ U
//     indices  0..7   first E8(-1) block (negated Cartan matrix),
//              8..15  second E8(-1) block,
//              16,17  first hyperbolic plane U, basis e, f with gram [[0,1],[1,0]],
//              18,19  second U,
//              20,21  third U.
//   Full cohomology lattice (rank 24): index 0 is the degree-0 class, indices
//   1..22 are the H^2 block above, index 23 is the degree-4 class; the two
//   extra classes pair to -1 with each other and to 0 with everything else.
//
// E8 is stored negative definite, giving the H^2 lattice signature (3,19).
// The sign is often left implicit elsewhere; here it is fixed as E8(-1).

IntMatrix e8_cartan_matrix();
Lattice e8_minus_one();
Lattice hyperbolic_plane();
Lattice k3_lattice();     // rank 22
Lattice mukai_lattice();  // rank 24

inline constexpr size_t kH2Rank = 22;
inline constexpr size_t kMukaiRank = 24;
// first hyperbolic plane inside the H^2 lattice
inline constexpr size_t kFirstUe = 16;
inline constexpr size_t kFirstUf = 17;

// A K3 surface presented by the primitive embedding of its Neron-Severi
// lattice into the fixed H^2 lattice; the transcendental lattice is the
// orthogonal complement.
struct K3Surface {
    LatticeEmbedding ns_embedding;
    Sublattice ns;              // saturated image inside the H^2 lattice
    Sublattice transcendental;  // ns^perp, saturated

    static K3Surface from_ns_embedding(const IntMatrix& embedding_22_by_rho);
    // Picard rank one of degree 2k > 0: h = e + k f in the first U block.
    static K3Surface with_rank_one_ns(const Int& degree);

    size_t picard_rank() const { return ns.rank(); }

private:
    K3Surface(LatticeEmbedding emb, Sublattice n, Sublattice t);
};

// (r, l, s) with r the degree-0 coefficient, l the H^2 coordinates, s the
// multiple of the degree-4 generator.
struct MukaiVector {
    Int r;
    IntVec l;  // length 22
    Int s;

    MukaiVector(Int r0, IntVec l2, Int s4);
    IntVec to_ambient() const;  // length-24 coordinates
    static MukaiVector from_ambient(const IntVec& coords24);
    bool operator==(const MukaiVector&) const = default;
};

// ((r,l,s).(r',l',s')) = l.l' - r s' - r' s
Int mukai_pairing(const MukaiVector& a, const MukaiVector& b);
// chi(E, F) = -(v(E).v(F))
Int euler_pairing(const MukaiVector& a, const MukaiVector& b);

// v = (rank, c1, rank + c1^2/2 - c2); the degree-4 part is exactly integral
// because the H^2 form is even.
MukaiVector mukai_vector_of_sheaf(const Int& rank, const IntVec& c1, const Int& c2);

struct AdmissibilityFlags {
    bool algebraic = false;  // l lies in NS
    bool primitive = false;  // gcd of all 24 coordinates is 1
    bool isotropic = false;  // (v.v) = 0
    bool all() const { return algebraic && primitive && isotropic; }
};
AdmissibilityFlags is_admissible_mukai_vector(const K3Surface& x, const MukaiVector& v);

struct RationalMukaiVector {
    Rat r;
    RatVec l;  // length 22
    Rat s;

    RationalMukaiVector(Rat r0, RatVec l2, Rat s4);
    static RationalMukaiVector from_integral(const MukaiVector& v);
    bool operator==(const RationalMukaiVector&) const = default;
};

// Product in the truncated cohomology ring:
// (r a) (r' a') = (r r', r l' + r' l, r s' + r' s + l.l')
RationalMukaiVector k3_ring_multiply(const RationalMukaiVector& a,
                                     const RationalMukaiVector& b);

// (1, 0, 1): the square root of the Todd class (1, 0, 2) in the truncated ring.
RationalMukaiVector sqrt_todd();

// Change of reference bundle for twisted Chern characters: multiply by
// ch(G)/rank(G).  Rejects rank-zero G.
RationalMukaiVector twisted_chern_change(const RationalMukaiVector& ch_e,
                                         const RationalMukaiVector& ch_g);

// (c1-part . H) / r for a surface polarized by H; rejects nonpositive rank.
Rat twisted_slope(const RationalMukaiVector& ch, const IntVec& h);

// The algebraic part of the rank-24 lattice for a given surface: spanned by
// the degree-0 class, the NS image, and the degree-4 class.  Saturated.
Sublattice algebraic_sublattice(const K3Surface& x);

}  // namespace k3moduli
