#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "k3moduli/int_matrix.hpp"

namespace k3moduli {

// Finite-rank free abelian group with a symmetric integer bilinear form.
// The form may be degenerate; operations that need nondegeneracy check it.
struct Lattice {
    IntMatrix gram;

    explicit Lattice(IntMatrix g);
    size_t rank() const { return gram.rows(); }
    bool operator==(const Lattice& other) const { return gram == other.gram; }
};

Lattice direct_sum(const Lattice& a, const Lattice& b);

struct LatticeVector {
    Lattice lattice;
    IntVec coords;

    LatticeVector(Lattice l, IntVec c);
};

Int pairing(const Lattice& l, const IntVec& a, const IntVec& b);
Int pairing(const LatticeVector& v, const LatticeVector& w);  // rejects ambient mismatch

Int determinant(const Lattice& l);
bool is_nondegenerate(const Lattice& l);

struct FormFlags {
    bool even = false;
    bool unimodular = false;
};
FormFlags classify_form(const Lattice& l);

// Exact counts of positive and negative squares, by symmetric Gaussian
// elimination over the rationals.  Zero diagonal pivots are repaired by the
// congruence move that adds a row (and column) with nonzero cross-pairing;
// pivot choices always take the lowest index.
struct Signature {
    size_t positive = 0;
    size_t negative = 0;
    bool operator==(const Signature&) const = default;
};
Signature signature(const Lattice& l);

// A finite-index-free subgroup of an ambient lattice, spanned by the columns
// of `basis` (ambient coordinates).  Bases are not canonical; equality of
// sublattices is decided by mutual membership, never by comparing bases.
struct Sublattice {
    Lattice ambient;
    IntMatrix basis;
    bool saturated = false;

    Sublattice(Lattice amb, IntMatrix basis_cols, bool saturated_claim = false);
    static Sublattice full(const Lattice& l);

    size_t rank() const { return basis.cols(); }
    // The sublattice as an abstract lattice: the restricted form on its basis.
    Lattice as_lattice() const;

    bool operator==(const Sublattice& other) const = default;
};

bool contains(const Sublattice& s, const IntVec& ambient_coords);
std::optional<IntVec> coordinates_in(const Sublattice& s, const IntVec& ambient_coords);
bool sublattice_equal(const Sublattice& a, const Sublattice& b);
Sublattice intersect(const Sublattice& a, const Sublattice& b);

// Saturated lattice of all ambient vectors pairing to zero with every basis
// vector of s.  Requires a nondegenerate ambient form.
Sublattice orthogonal_complement(const Sublattice& s);

// Smallest sublattice containing s whose quotient in the ambient lattice is
// torsion-free (the primitive closure).
Sublattice saturation(const Sublattice& s);

// Finite abelian group in invariant-factor form: d1 | d2 | ... | dk, each > 1.
struct FiniteAbelianGroup {
    IntVec invariant_factors;

    static FiniteAbelianGroup trivial_group();
    // Diagonal of a Smith form: drops 1s, rejects 0s, checks the chain.
    static FiniteAbelianGroup from_invariant_factors(IntVec d);
    // Arbitrary list of cyclic orders, canonicalized through a Smith form.
    static FiniteAbelianGroup from_cyclic_orders(const IntVec& orders);

    Int order() const;
    bool trivial() const { return invariant_factors.empty(); }
    bool cyclic() const { return invariant_factors.size() <= 1; }
    bool operator==(const FiniteAbelianGroup&) const = default;
};

// Presentation of T/S for S of finite index in T (same ambient lattice),
// with the explicit residue map T-coords -> (Z/d1, ..., Z/dk).
struct QuotientStructure {
    FiniteAbelianGroup group;
    IntMatrix to_residues;  // unimodular, from the Smith form of the inclusion
    IntVec moduli;          // full diagonal, including trivial factors

    // residues for the nontrivial factors only, matching group.invariant_factors
    IntVec residues(const IntVec& t_coords) const;
};

QuotientStructure quotient_structure(const Sublattice& s, const Sublattice& t);

// A map of lattices preserving the bilinear form, injective by construction.
struct LatticeEmbedding {
    Lattice source;
    Lattice target;
    IntMatrix matrix;  // target.rank x source.rank

    LatticeEmbedding(Lattice src, Lattice tgt, IntMatrix m);
};

// One u with pairing(u, v) = g, found through the Smith form of the row of
// basis pairings; rejects g not divisible by their gcd.
LatticeVector solve_pairing_value(const LatticeVector& v, const Int& g);

}  // namespace k3moduli
