#pragma once

// Shared constructions for the unit and acceptance suites.

#include "k3moduli/brauer.hpp"
#include "k3moduli/moduli.hpp"
#include "oracles.hpp"

namespace k3moduli::testing {

// Picard rank 20: NS = E8(-1) ++ E8(-1) ++ U ++ <-2> ++ <-2>, embedded
// blockwise with the <-2> vectors e - f in the second and third hyperbolic
// planes.  The transcendental lattice is rank 2, positive definite.
inline K3Surface rank20_surface() {
    IntMatrix emb(kH2Rank, 20);
    for (size_t i = 0; i < 16; ++i) emb(i, i) = 1;  // both E8 blocks
    emb(16, 16) = 1;                                // first U, e
    emb(17, 17) = 1;                                // first U, f
    emb(18, 18) = 1;                                // e - f in the second U
    emb(19, 18) = -1;
    emb(20, 19) = 1;  // e - f in the third U
    emb(21, 19) = -1;
    return K3Surface::from_ns_embedding(emb);
}

inline BrauerClass random_brauer_class(Rng& rng, const Sublattice& t, long long max_den = 6) {
    RatVec vals(t.rank());
    for (auto& v : vals) {
        Int den = rand_int(rng, 1, max_den);
        Int num = rand_int(rng, 0, 11);
        v = Rat(num, den);
    }
    return BrauerClass(t, std::move(vals));
}

// Test scaffolding for the randomized theorem suite: enumerate admissible
// Mukai vectors (r, m h, s) with small coordinates on a rank-one surface.
inline std::vector<MukaiVector> search_admissible_vectors(const K3Surface& x,
                                                          long long r_max = 6,
                                                          long long m_max = 3,
                                                          long long s_max = 9) {
    std::vector<MukaiVector> out;
    const IntVec h = x.ns_embedding.matrix.column_vec(0);
    for (long long r = 0; r <= r_max; ++r)
        for (long long m = -m_max; m <= m_max; ++m)
            for (long long s = -s_max; s <= s_max; ++s) {
                MukaiVector v(Int(r), scale(h, Int(m)), Int(s));
                if (is_admissible_mukai_vector(x, v).all()) out.push_back(v);
            }
    return out;
}

}  // namespace k3moduli::testing
