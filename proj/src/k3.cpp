#include "k3moduli/k3.hpp"

#include "k3moduli/errors.hpp"

namespace k3moduli {

IntMatrix e8_cartan_matrix() {
    // Dynkin diagram: chain 0-2-3-4-5-6-7 with node 1 attached to node 3.
    IntMatrix c(8, 8);
    for (size_t i = 0; i < 8; ++i) c(i, i) = 2;
    const std::pair<size_t, size_t> edges[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5},
                                               {5, 6}, {6, 7}, {1, 3}};
    for (auto [a, b] : edges) {
        c(a, b) = -1;
        c(b, a) = -1;
    }
    return c;
}

Lattice e8_minus_one() {
    return Lattice(-e8_cartan_matrix());
}

Lattice hyperbolic_plane() {
    return Lattice(IntMatrix{{0, 1}, {1, 0}});
}

Lattice k3_lattice() {
    Lattice u = hyperbolic_plane();
    Lattice l = direct_sum(e8_minus_one(), e8_minus_one());
    l = direct_sum(l, u);
    l = direct_sum(l, u);
    l = direct_sum(l, u);
    return l;
}

Lattice mukai_lattice() {
    IntMatrix g(kMukaiRank, kMukaiRank);
    const IntMatrix h2 = k3_lattice().gram;
    for (size_t i = 0; i < kH2Rank; ++i)
        for (size_t j = 0; j < kH2Rank; ++j) g(1 + i, 1 + j) = h2(i, j);
    g(0, 23) = -1;
    g(23, 0) = -1;
    return Lattice(std::move(g));
}

K3Surface::K3Surface(LatticeEmbedding emb, Sublattice n, Sublattice t)
    : ns_embedding(std::move(emb)), ns(std::move(n)), transcendental(std::move(t)) {}

K3Surface K3Surface::from_ns_embedding(const IntMatrix& embedding) {
    if (embedding.rows() != kH2Rank)
        throw bad_input_error("K3Surface: embedding must have 22 rows");
    const size_t rho = embedding.cols();
    if (rho < 1 || rho > 20)
        throw bad_input_error("K3Surface: Picard rank must be between 1 and 20");
    Lattice amb = k3_lattice();
    Lattice ns_abstract(embedding.transposed() * amb.gram * embedding);
    if (!is_nondegenerate(ns_abstract))
        throw bad_input_error("K3Surface: NS form is degenerate");
    Signature sig = signature(ns_abstract);
    if (!(sig.positive == 1 && sig.negative == rho - 1))
        throw bad_input_error("K3Surface: NS form must have signature (1, rho-1)");
    LatticeEmbedding emb(ns_abstract, amb, embedding);
    Sublattice ns_sub(amb, embedding, true);  // rejects non-primitive images
    Sublattice t = orthogonal_complement(ns_sub);
    Signature tsig = signature(t.as_lattice());
    if (!(tsig.positive == 2 && tsig.negative == 20 - rho))
        throw invariant_violation_error(
            "K3Surface: transcendental lattice has unexpected signature");
    return K3Surface(std::move(emb), std::move(ns_sub), std::move(t));
}

K3Surface K3Surface::with_rank_one_ns(const Int& degree) {
    if (degree <= 0 || degree % 2 != 0)
        throw bad_input_error("K3Surface: rank-one degree must be a positive even integer");
    IntMatrix emb(kH2Rank, 1);
    emb(kFirstUe, 0) = 1;
    emb(kFirstUf, 0) = degree / 2;  // h = e + k f, h^2 = 2k
    return from_ns_embedding(emb);
}

MukaiVector::MukaiVector(Int r0, IntVec l2, Int s4)
    : r(std::move(r0)), l(std::move(l2)), s(std::move(s4)) {
    if (l.size() != kH2Rank)
        throw bad_input_error("MukaiVector: H^2 part must have 22 coordinates");
}

IntVec MukaiVector::to_ambient() const {
    IntVec v(kMukaiRank);
    v[0] = r;
    for (size_t i = 0; i < kH2Rank; ++i) v[1 + i] = l[i];
    v[23] = s;
    return v;
}

MukaiVector MukaiVector::from_ambient(const IntVec& coords) {
    if (coords.size() != kMukaiRank)
        throw bad_input_error("MukaiVector: need 24 coordinates");
    IntVec l(coords.begin() + 1, coords.begin() + 23);
    return MukaiVector(coords[0], std::move(l), coords[23]);
}

Int mukai_pairing(const MukaiVector& a, const MukaiVector& b) {
    static const Lattice h2 = k3_lattice();
    return pairing(h2, a.l, b.l) - a.r * b.s - b.r * a.s;
}

Int euler_pairing(const MukaiVector& a, const MukaiVector& b) {
    return -mukai_pairing(a, b);
}

MukaiVector mukai_vector_of_sheaf(const Int& rank, const IntVec& c1, const Int& c2) {
    static const Lattice h2 = k3_lattice();
    Int c1sq = pairing(h2, c1, c1);
    return MukaiVector(rank, c1, rank + c1sq / 2 - c2);
}

AdmissibilityFlags is_admissible_mukai_vector(const K3Surface& x, const MukaiVector& v) {
    AdmissibilityFlags f;
    f.algebraic = contains(x.ns, v.l);
    IntVec all = v.to_ambient();
    f.primitive = (gcd_all(all) == 1);
    f.isotropic = (mukai_pairing(v, v) == 0);
    return f;
}

RationalMukaiVector::RationalMukaiVector(Rat r0, RatVec l2, Rat s4)
    : r(std::move(r0)), l(std::move(l2)), s(std::move(s4)) {
    if (l.size() != kH2Rank)
        throw bad_input_error("RationalMukaiVector: H^2 part must have 22 coordinates");
}

RationalMukaiVector RationalMukaiVector::from_integral(const MukaiVector& v) {
    RatVec l(kH2Rank);
    for (size_t i = 0; i < kH2Rank; ++i) l[i] = Rat(v.l[i]);
    return RationalMukaiVector(Rat(v.r), std::move(l), Rat(v.s));
}

namespace {
Rat rational_h2_pairing(const RatVec& a, const RatVec& b) {
    static const Lattice h2 = k3_lattice();
    Rat sum = 0;
    for (size_t i = 0; i < kH2Rank; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < kH2Rank; ++j) {
            const Int& g = h2.gram(i, j);
            if (g == 0) continue;
            sum += a[i] * Rat(g) * b[j];
        }
    }
    return sum;
}
}  // namespace

RationalMukaiVector k3_ring_multiply(const RationalMukaiVector& a,
                                     const RationalMukaiVector& b) {
    RatVec l(kH2Rank);
    for (size_t i = 0; i < kH2Rank; ++i) l[i] = a.r * b.l[i] + b.r * a.l[i];
    Rat s = a.r * b.s + b.r * a.s + rational_h2_pairing(a.l, b.l);
    return RationalMukaiVector(a.r * b.r, std::move(l), std::move(s));
}

RationalMukaiVector sqrt_todd() {
    return RationalMukaiVector(Rat(1), RatVec(kH2Rank, Rat(0)), Rat(1));
}

RationalMukaiVector twisted_chern_change(const RationalMukaiVector& ch_e,
                                         const RationalMukaiVector& ch_g) {
    if (ch_g.r == 0)
        throw bad_input_error("twisted_chern_change: reference bundle has rank zero");
    RationalMukaiVector prod = k3_ring_multiply(ch_e, ch_g);
    const Rat inv = Rat(1) / ch_g.r;
    RatVec l(kH2Rank);
    for (size_t i = 0; i < kH2Rank; ++i) l[i] = prod.l[i] * inv;
    return RationalMukaiVector(prod.r * inv, std::move(l), prod.s * inv);
}

Rat twisted_slope(const RationalMukaiVector& ch, const IntVec& h) {
    if (ch.r <= 0)
        throw bad_input_error("twisted_slope: rank must be positive");
    if (h.size() != kH2Rank)
        throw bad_input_error("twisted_slope: polarization needs 22 coordinates");
    RatVec hr(kH2Rank);
    for (size_t i = 0; i < kH2Rank; ++i) hr[i] = Rat(h[i]);
    return rational_h2_pairing(ch.l, hr) / ch.r;
}

Sublattice algebraic_sublattice(const K3Surface& x) {
    const size_t rho = x.picard_rank();
    IntMatrix basis(kMukaiRank, rho + 2);
    basis(0, 0) = 1;
    for (size_t j = 0; j < rho; ++j)
        for (size_t i = 0; i < kH2Rank; ++i)
            basis(1 + i, 1 + j) = x.ns_embedding.matrix(i, j);
    basis(23, rho + 1) = 1;
    return Sublattice(mukai_lattice(), std::move(basis), true);
}

}  // namespace k3moduli
