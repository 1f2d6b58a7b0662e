#pragma once

#include "k3moduli/brauer.hpp"

namespace k3moduli {

// Two Brauer classes attached to the same transcendental-type lattice.
struct TwistedPair {
    Sublattice t;
    BrauerClass alpha;
    BrauerClass beta;

    TwistedPair(Sublattice lattice, BrauerClass a, BrauerClass b);
};

// Ker(alpha) meet Ker(beta) inside t; the index divides order(alpha) * order(beta).
Sublattice kernel_intersection(const TwistedPair& p);

// Checks the restriction identity: the kernel of beta restricted to
// Ker(alpha) equals Ker(alpha) meet Ker(beta), and symmetrically with the
// roles swapped.  This holds for all functionals; a failure indicates a bug
// in kernel / restrict_to / equality machinery, and the offending element is
// returned as witness (t-coordinates).
struct DpCheckResult {
    bool pass = false;
    std::optional<IntVec> witness;
};

DpCheckResult dp_identity_check(const TwistedPair& p);

}  // namespace k3moduli
