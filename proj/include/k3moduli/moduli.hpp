#pragma once

#include "k3moduli/brauer.hpp"

namespace k3moduli {

// A surface together with an algebraic, primitive, isotropic Mukai vector.
// Construction validates all three predicates.
struct ModuliProblem {
    K3Surface surface;
    MukaiVector v;

    ModuliProblem(K3Surface x, MukaiVector vec);
};

// gcd of (u.v) over a basis of the algebraic part of the rank-24 lattice.
// n = 1 exactly when a universal sheaf can exist.
Int fineness_index(const ModuliProblem& p);

// v^perp / v with its induced form, presented with an explicit projection
// from v^perp and a section back into the rank-24 lattice.
struct ModuliQuotient {
    Lattice h2m;               // rank 22, even, unimodular, signature (3,19)
    IntMatrix vperp_basis;     // 24 x 23, saturated
    IntMatrix quotient_lifts;  // 24 x 22: lifts of the quotient basis
    IntMatrix projection;      // 22 x 23: v^perp coordinates -> quotient coordinates

    // ambient 24-coordinates -> quotient coordinates; rejects vectors not in v^perp
    IntVec project(const IntVec& coords24) const;
    IntVec lift(const IntVec& coords22) const;  // section of project
};

ModuliQuotient moduli_lattice(const ModuliProblem& p);

struct NsTSplit {
    Sublattice ns_m;  // saturation of the projected algebraic part
    Sublattice t_m;   // its orthogonal complement
};

NsTSplit moduli_ns_and_t(const ModuliProblem& p, const ModuliQuotient& q);
NsTSplit moduli_ns_and_t(const ModuliProblem& p);

// lambda -> class of (0, lambda, 0), written in t_m coordinates; an isometric
// embedding with cyclic cokernel of order fineness_index(p).
LatticeEmbedding phi_transcendental(const ModuliProblem& p, const ModuliQuotient& q,
                                    const NsTSplit& split);
LatticeEmbedding phi_transcendental(const ModuliProblem& p);

// lambda in T_X with v - (0, lambda, 0) divisible by n in the rank-24
// lattice; phi(lambda)/n generates the cokernel of phi.  Coordinates are the
// canonical representatives in [0, n), which makes the choice deterministic.
struct LambdaWitness {
    IntVec t_coords;   // in the T_X basis
    IntVec h2_coords;  // length 22
};

LambdaWitness mukai_lambda(const ModuliProblem& p, const ModuliQuotient& q,
                           const NsTSplit& split, const LatticeEmbedding& phi);
LambdaWitness mukai_lambda(const ModuliProblem& p);

// All functionals on T_M vanishing on phi(T_X): a cyclic group of order n.
// The reported generators are the classes t -> k q(t)/n with gcd(k, n) = 1,
// where q is normalized by q(phi(lambda)/n) = 1; the k = 1 class is the one
// whose value on phi(lambda)/n is 1/n.  Lattice data pins the distinguished
// generator only through this normalization; all generators are returned.
struct ObstructionGroup {
    Int n;
    std::vector<BrauerClass> generators;  // classes on t_m
    BrauerClass canonical() const;        // the k = 1 generator
};

ObstructionGroup obstruction_group(const ModuliProblem& p, const ModuliQuotient& q,
                                   const NsTSplit& split, const LatticeEmbedding& phi,
                                   const LambdaWitness& lambda);
ObstructionGroup obstruction_group(const ModuliProblem& p);

// u with (u.v) = 1, found in the rank-24 lattice.
MukaiVector find_u_unit(const ModuliProblem& p);

// Pass/fail ledger, one entry per verified clause.
struct TheoremChecks {
    bool quotient_even_unimodular_3_19 = false;
    bool phi_isometric_embedding = false;
    bool cokernel_cyclic_order_n = false;
    bool lambda_divisibility = false;
    bool obstruction_generators_valid = false;
    bool rank_split_consistent = false;

    bool all_pass() const {
        return quotient_even_unimodular_3_19 && phi_isometric_embedding &&
               cokernel_cyclic_order_n && lambda_divisibility &&
               obstruction_generators_valid && rank_split_consistent;
    }
};

struct ModuliReport {
    Int n = 0;
    std::optional<ModuliQuotient> quotient;
    std::optional<Sublattice> ns_m;
    std::optional<Sublattice> t_m;
    std::optional<LatticeEmbedding> phi;
    std::optional<LambdaWitness> lambda;
    IntVec cokernel_generator;  // t_m coordinates of phi(lambda)/n
    IntVec cokernel_invariant_factors;
    std::vector<BrauerClass> obstruction_generators;
    TheoremChecks checks;
};

// Runs the whole pipeline and records a pass/fail ledger instead of throwing:
// failures here mean the implementation broke a theorem, and the report says
// exactly which clause.
ModuliReport verify_theorem_suite(const ModuliProblem& p);

}  // namespace k3moduli
