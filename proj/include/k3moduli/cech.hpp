#pragma once

#include <array>

#include "k3moduli/lattice.hpp"

namespace k3moduli {

// Finite simplicial nerve with simplices up to dimension 3.  Simplices are
// stored with strictly increasing vertex indices; orientation comes from the
// index order.  Every face of a listed simplex must be listed.
struct Nerve {
    size_t vertex_count = 0;
    std::vector<std::array<size_t, 2>> edges;
    std::vector<std::array<size_t, 3>> triangles;
    std::vector<std::array<size_t, 4>> tetrahedra;

    Nerve(size_t vertices, std::vector<std::array<size_t, 2>> e,
          std::vector<std::array<size_t, 3>> tri,
          std::vector<std::array<size_t, 4>> tet);

    // all simplices of dimension <= max_dim on the given vertices
    static Nerve complete_skeleton(size_t vertices, int max_dim);

    size_t simplex_count(int dim) const;
    // signed incidence matrix of the differential C^k -> C^{k+1}; k in [0, 2]
    IntMatrix coboundary_matrix(int k) const;

    bool operator==(const Nerve&) const = default;
};

// A k-cochain with coefficients in Z/n (modulus n >= 1, integer values in
// [0, n)) or in Q/Z (modulus 0, rational values in [0, 1)).
struct Cochain {
    int degree = 0;
    Int modulus;
    RatVec values;

    Cochain(int k, Int n, RatVec vals);
    static Cochain zero(const Nerve& nerve, int k, Int n);

    bool is_zero() const;
    bool operator==(const Cochain&) const = default;
};

Cochain operator+(const Cochain& a, const Cochain& b);
Cochain operator-(const Cochain& a, const Cochain& b);

// Alternating-sum differential; input degree at most 2.
Cochain coboundary(const Nerve& nerve, const Cochain& c);

// H^k of the nerve with Z/n coefficients (n >= 1), for k in [0, 2]; computed
// from the Smith forms of the two integer differentials around degree k.
FiniteAbelianGroup cech_cohomology(const Nerve& nerve, int degree, const Int& n);

// Decides delta x = a - b for cocycles a, b and returns x when it exists.
struct CohomologousResult {
    bool cohomologous = false;
    std::optional<Cochain> witness;  // degree k-1
};
CohomologousResult is_cohomologous(const Nerve& nerve, const Cochain& a, const Cochain& b);

// Rank-1 gluing data: transition values on edges (the abelianized transition
// isomorphisms) and a target twist on triangles.  Storing values only on
// increasing edges encodes the unit and inversion conditions by convention.
struct GluingData {
    Nerve nerve;
    Cochain transitions;  // degree 1
    Cochain twist;        // degree 2

    GluingData(Nerve n, Cochain lambda, Cochain alpha);
};

// True exactly when the triple-overlap condition holds: delta(transitions) = twist.
bool verify_gluing(const GluingData& g);

// Transition values and twists add under tensor product; hom data subtracts
// the first argument from the second.
GluingData tensor_gluing(const GluingData& a, const GluingData& b);
GluingData hom_gluing(const GluingData& from, const GluingData& to);

}  // namespace k3moduli
