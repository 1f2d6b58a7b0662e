#include "k3moduli/lattice.hpp"

#include <algorithm>

#include "k3moduli/errors.hpp"

namespace k3moduli {

Lattice::Lattice(IntMatrix g) : gram(std::move(g)) {
    if (!gram.is_symmetric())
        throw bad_input_error("Lattice: gram matrix must be symmetric");
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    const size_t n = a.rank(), m = b.rank();
    IntMatrix g(n + m, n + m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
    return Lattice(std::move(g));
}

LatticeVector::LatticeVector(Lattice l, IntVec c)
    : lattice(std::move(l)), coords(std::move(c)) {
    if (coords.size() != lattice.rank())
        throw bad_input_error("LatticeVector: coordinate length does not match rank");
}

Int pairing(const Lattice& l, const IntVec& a, const IntVec& b) {
    if (a.size() != l.rank() || b.size() != l.rank())
        throw bad_input_error("pairing: coordinate length does not match rank");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) s += a[i] * l.gram(i, j) * b[j];
    }
    return s;
}

Int pairing(const LatticeVector& v, const LatticeVector& w) {
    if (!(v.lattice == w.lattice))
        throw bad_input_error("pairing: vectors live in different lattices");
    return pairing(v.lattice, v.coords, w.coords);
}

Int determinant(const Lattice& l) {
    return determinant(l.gram);
}

bool is_nondegenerate(const Lattice& l) {
    return determinant(l.gram) != 0;
}

FormFlags classify_form(const Lattice& l) {
    FormFlags f;
    f.even = true;
    for (size_t i = 0; i < l.rank(); ++i)
        if (l.gram(i, i) % 2 != 0) {
            f.even = false;
            break;
        }
    Int d = determinant(l.gram);
    f.unimodular = (d == 1 || d == -1);
    return f;
}

Signature signature(const Lattice& l) {
    const size_t n = l.rank();
    // rational symmetric elimination on a working copy
    std::vector<RatVec> w(n, RatVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) w[i][j] = Rat(l.gram(i, j));

    auto swap_sym = [&](size_t i, size_t j) {
        if (i == j) return;
        std::swap(w[i], w[j]);
        for (size_t r = 0; r < n; ++r) std::swap(w[r][i], w[r][j]);
    };
    auto add_sym = [&](size_t dst, size_t src) {  // row+col dst += row+col src
        for (size_t c = 0; c < n; ++c) w[dst][c] += w[src][c];
        for (size_t r = 0; r < n; ++r) w[r][dst] += w[r][src];
    };

    Signature sig;
    for (size_t k = 0; k < n; ++k) {
        if (w[k][k] == 0) {
            size_t i = k;
            while (i < n && w[i][i] == 0) ++i;
            if (i < n) {
                swap_sym(k, i);
            } else {
                // all remaining diagonal entries vanish; mix in a row with
                // nonzero cross-pairing (lowest indices first)
                size_t pi = n, pj = n;
                for (size_t a = k; a < n && pi == n; ++a)
                    for (size_t b = a + 1; b < n; ++b)
                        if (w[a][b] != 0) {
                            pi = a;
                            pj = b;
                            break;
                        }
                if (pi == n)
                    throw bad_input_error("signature: form is degenerate");
                add_sym(pi, pj);  // diagonal becomes 2*w[pi][pj] != 0
                swap_sym(k, pi);
            }
        }
        const Rat p = w[k][k];
        if (p > 0)
            ++sig.positive;
        else
            ++sig.negative;
        for (size_t j = k + 1; j < n; ++j) {
            if (w[k][j] == 0) continue;
            Rat c = w[k][j] / p;
            for (size_t t = 0; t < n; ++t) w[j][t] -= c * w[k][t];
            for (size_t t = 0; t < n; ++t) w[t][j] -= c * w[t][k];
        }
    }
    return sig;
}

Sublattice::Sublattice(Lattice amb, IntMatrix basis_cols, bool saturated_claim)
    : ambient(std::move(amb)), basis(std::move(basis_cols)), saturated(saturated_claim) {
    if (basis.rows() != ambient.rank())
        throw bad_input_error("Sublattice: basis rows do not match ambient rank");
    SmithNormalForm s = smith_normal_form(basis);
    if (s.rank != basis.cols())
        throw bad_input_error("Sublattice: basis columns are dependent over Q");
    if (saturated) {
        for (const Int& d : s.nonzero_diagonal())
            if (d != 1)
                throw bad_input_error("Sublattice: claimed saturated but is not");
    }
}

Sublattice Sublattice::full(const Lattice& l) {
    return Sublattice(l, IntMatrix::identity(l.rank()), true);
}

Lattice Sublattice::as_lattice() const {
    return Lattice(basis.transposed() * ambient.gram * basis);
}

std::optional<IntVec> coordinates_in(const Sublattice& s, const IntVec& ambient_coords) {
    return solve_integer(s.basis, ambient_coords);
}

bool contains(const Sublattice& s, const IntVec& ambient_coords) {
    return coordinates_in(s, ambient_coords).has_value();
}

bool sublattice_equal(const Sublattice& a, const Sublattice& b) {
    if (!(a.ambient == b.ambient)) return false;
    for (size_t j = 0; j < a.basis.cols(); ++j)
        if (!contains(b, a.basis.column_vec(j))) return false;
    for (size_t j = 0; j < b.basis.cols(); ++j)
        if (!contains(a, b.basis.column_vec(j))) return false;
    return true;
}

Sublattice intersect(const Sublattice& a, const Sublattice& b) {
    if (!(a.ambient == b.ambient))
        throw bad_input_error("intersect: different ambient lattices");
    IntMatrix stacked = hstack(a.basis, -b.basis);
    IntMatrix ker = integer_kernel(stacked);
    IntMatrix gens(a.ambient.rank(), ker.cols());
    for (size_t c = 0; c < ker.cols(); ++c) {
        IntVec x(a.basis.cols());
        for (size_t i = 0; i < x.size(); ++i) x[i] = ker(i, c);
        IntVec g = a.basis * x;
        for (size_t i = 0; i < g.size(); ++i) gens(i, c) = g[i];
    }
    return Sublattice(a.ambient, basis_from_generators(gens), false);
}

Sublattice orthogonal_complement(const Sublattice& s) {
    if (!is_nondegenerate(s.ambient))
        throw bad_input_error("orthogonal_complement: ambient form is degenerate");
    // x is in the complement iff basis^T * gram * x = 0
    IntMatrix m = s.basis.transposed() * s.ambient.gram;
    return Sublattice(s.ambient, integer_kernel(m), true);
}

Sublattice saturation(const Sublattice& s) {
    SmithNormalForm f = smith_normal_form(s.basis);
    std::vector<size_t> idx;
    for (size_t j = 0; j < f.rank; ++j) idx.push_back(j);
    IntMatrix sat = f.u_inv.select_columns(idx);
    return Sublattice(s.ambient, basis_from_generators(sat), true);
}

FiniteAbelianGroup FiniteAbelianGroup::trivial_group() {
    return FiniteAbelianGroup{};
}

FiniteAbelianGroup FiniteAbelianGroup::from_invariant_factors(IntVec d) {
    IntVec kept;
    for (const Int& x : d) {
        if (x == 0)
            throw bad_input_error("FiniteAbelianGroup: group is infinite");
        Int a = boost::multiprecision::abs(x);
        if (a != 1) kept.push_back(a);
    }
    for (size_t i = 0; i + 1 < kept.size(); ++i)
        if (kept[i + 1] % kept[i] != 0)
            throw bad_input_error("FiniteAbelianGroup: divisibility chain violated");
    return FiniteAbelianGroup{std::move(kept)};
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const IntVec& orders) {
    IntVec pos;
    for (const Int& x : orders) {
        if (x <= 0)
            throw bad_input_error("FiniteAbelianGroup: cyclic orders must be positive");
        if (x != 1) pos.push_back(x);
    }
    IntMatrix diag(pos.size(), pos.size());
    for (size_t i = 0; i < pos.size(); ++i) diag(i, i) = pos[i];
    SmithNormalForm s = smith_normal_form(diag);
    return from_invariant_factors(s.nonzero_diagonal());
}

Int FiniteAbelianGroup::order() const {
    Int o = 1;
    for (const Int& d : invariant_factors) o *= d;
    return o;
}

IntVec QuotientStructure::residues(const IntVec& t_coords) const {
    IntVec z = to_residues * t_coords;
    IntVec out;
    for (size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] != 1) out.push_back(mod_euclid(z[i], moduli[i]));
    return out;
}

QuotientStructure quotient_structure(const Sublattice& s, const Sublattice& t) {
    if (!(s.ambient == t.ambient))
        throw bad_input_error("quotient_structure: different ambient lattices");
    if (s.rank() != t.rank())
        throw bad_input_error("quotient_structure: infinite index (ranks differ)");
    // inclusion matrix: S basis written in T coordinates
    IntMatrix c(t.rank(), s.rank());
    for (size_t j = 0; j < s.rank(); ++j) {
        auto coords = coordinates_in(t, s.basis.column_vec(j));
        if (!coords)
            throw bad_input_error("quotient_structure: S is not contained in T");
        for (size_t i = 0; i < t.rank(); ++i) c(i, j) = (*coords)[i];
    }
    SmithNormalForm f = smith_normal_form(c);
    IntVec diag(t.rank());
    for (size_t i = 0; i < t.rank(); ++i) diag[i] = f.d(i, i);
    return QuotientStructure{FiniteAbelianGroup::from_invariant_factors(diag),
                             f.u, std::move(diag)};
}

LatticeEmbedding::LatticeEmbedding(Lattice src, Lattice tgt, IntMatrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
        throw bad_input_error("LatticeEmbedding: matrix has wrong dimensions");
    if (!(matrix.transposed() * target.gram * matrix == source.gram))
        throw bad_input_error("LatticeEmbedding: map does not preserve the form");
    if (column_rank(matrix) != matrix.cols())
        throw bad_input_error("LatticeEmbedding: matrix does not have full column rank");
}

LatticeVector solve_pairing_value(const LatticeVector& v, const Int& g) {
    IntVec c = v.lattice.gram * v.coords;  // c[j] = pairing of basis vector j with v
    auto sol = solve_integer(IntMatrix::row_vector(c), IntVec{g});
    if (!sol)
        throw bad_input_error(
            "solve_pairing_value: value not divisible by the gcd of basis pairings");
    return LatticeVector(v.lattice, *sol);
}

}  // namespace k3moduli
