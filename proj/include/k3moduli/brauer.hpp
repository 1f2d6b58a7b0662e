#pragma once

#include "k3moduli/k3.hpp"

namespace k3moduli {

// A finite-order functional T -> Q/Z on a transcendental-type lattice,
// stored by its values on the basis of the attached sublattice.  Values are
// kept canonical: reduced fractions in [0, 1).  Classes are attached to an
// explicit sublattice with basis; re-basing is always an explicit operation.
struct BrauerClass {
    Sublattice domain;
    RatVec values;

    BrauerClass(Sublattice t, RatVec vals);
    static BrauerClass zero(Sublattice t);

    bool is_zero() const;
    // value on a vector given in domain-basis coordinates, in [0, 1)
    Rat evaluate(const IntVec& domain_coords) const;
    // value on an ambient vector; rejects vectors outside the domain
    Rat evaluate_ambient(const IntVec& ambient_coords) const;

    bool operator==(const BrauerClass&) const = default;
};

BrauerClass operator+(const BrauerClass& a, const BrauerClass& b);
BrauerClass scaled(const BrauerClass& a, const Int& k);

// [w]: the functional t -> (w.t) mod Z on the transcendental lattice of x,
// for a rational H^2 class w.  Depends only on w modulo integral classes and
// rational NS classes.
BrauerClass brauer_from_h2_class(const K3Surface& x, const RatVec& w);

// least m >= 1 with m * alpha = 0
Int order(const BrauerClass& alpha);

// { t : alpha(t) is integral }, a finite-index sublattice of the domain
// (coordinates in the domain basis); the index equals order(alpha).
Sublattice kernel(const BrauerClass& alpha);

// Restriction along the inclusion of k (a sublattice of the domain, given in
// domain coordinates).
BrauerClass restrict_to(const BrauerClass& alpha, const Sublattice& k);

// [-c1 / rank]: the twisting needed to deform a bundle whose first Chern
// class does not stay algebraic.  Rejects rank < 1.
BrauerClass obstruction_from_bundle(const K3Surface& x, const IntVec& c1, const Int& rank);

// An element of H^2 with Z/n coefficients.
struct ModNClass {
    Int n;
    IntVec residues;  // length 22, in [0, n)

    ModNClass(Int modulus, IntVec res);
    bool operator==(const ModNClass&) const = default;
};

// -c1 mod n, the topological twisting class of the projectivization of a
// rank-n bundle with first Chern class c1.
ModNClass topological_twisting_class(const IntVec& c1, const Int& n);

// Push a mod-n class into the Brauer group: lift residues to [0, n) and take
// [lift / n].
BrauerClass p_map(const K3Surface& x, const ModNClass& t);

// Order of the n-torsion of the Brauer group of a K3 with Picard rank rho:
// n^(22 - rho), from the Kummer-sequence count.
Int kummer_torsion_order(size_t rho, const Int& n);

}  // namespace k3moduli
