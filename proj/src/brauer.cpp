#include "k3moduli/brauer.hpp"

#include "k3moduli/errors.hpp"

namespace k3moduli {

BrauerClass::BrauerClass(Sublattice t, RatVec vals)
    : domain(std::move(t)), values(std::move(vals)) {
    if (values.size() != domain.rank())
        throw bad_input_error("BrauerClass: one value per domain basis vector required");
    for (Rat& v : values) v = mod_one(v);
}

BrauerClass BrauerClass::zero(Sublattice t) {
    RatVec vals(t.rank(), Rat(0));
    return BrauerClass(std::move(t), std::move(vals));
}

bool BrauerClass::is_zero() const {
    for (const Rat& v : values)
        if (v != 0) return false;
    return true;
}

Rat BrauerClass::evaluate(const IntVec& domain_coords) const {
    if (domain_coords.size() != values.size())
        throw bad_input_error("BrauerClass::evaluate: coordinate length mismatch");
    Rat s = 0;
    for (size_t i = 0; i < values.size(); ++i) s += Rat(domain_coords[i]) * values[i];
    return mod_one(s);
}

Rat BrauerClass::evaluate_ambient(const IntVec& ambient_coords) const {
    auto coords = coordinates_in(domain, ambient_coords);
    if (!coords)
        throw bad_input_error("BrauerClass::evaluate_ambient: vector not in domain");
    return evaluate(*coords);
}

BrauerClass operator+(const BrauerClass& a, const BrauerClass& b) {
    if (!(a.domain == b.domain))
        throw bad_input_error("BrauerClass: classes attached to different lattices");
    RatVec vals(a.values.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = a.values[i] + b.values[i];
    return BrauerClass(a.domain, std::move(vals));
}

BrauerClass scaled(const BrauerClass& a, const Int& k) {
    RatVec vals(a.values.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = Rat(k) * a.values[i];
    return BrauerClass(a.domain, std::move(vals));
}

BrauerClass brauer_from_h2_class(const K3Surface& x, const RatVec& w) {
    if (w.size() != kH2Rank)
        throw bad_input_error("brauer_from_h2_class: w needs 22 coordinates");
    const Sublattice& t = x.transcendental;
    static const Lattice h2 = k3_lattice();
    RatVec vals(t.rank());
    for (size_t j = 0; j < t.rank(); ++j) {
        Rat s = 0;
        for (size_t a = 0; a < kH2Rank; ++a) {
            if (w[a] == 0) continue;
            for (size_t b = 0; b < kH2Rank; ++b) {
                const Int& g = h2.gram(a, b);
                if (g == 0) continue;
                s += w[a] * Rat(g) * Rat(t.basis(b, j));
            }
        }
        vals[j] = mod_one(s);
    }
    return BrauerClass(t, std::move(vals));
}

Int order(const BrauerClass& alpha) {
    Int m = 1;
    for (const Rat& v : alpha.values)
        m = boost::multiprecision::lcm(m, boost::multiprecision::denominator(v));
    return m;
}

Sublattice kernel(const BrauerClass& alpha) {
    const Lattice t = alpha.domain.as_lattice();
    const size_t n = t.rank();
    Int m = order(alpha);
    if (m == 1) return Sublattice::full(t);
    // alpha(y) = sum c_i y_i / m with c_i integral; the kernel is the set of
    // y with sum c_i y_i = 0 mod m
    IntMatrix row(1, n + 1);
    for (size_t i = 0; i < n; ++i) {
        const Rat scaled_val = alpha.values[i] * Rat(m);
        row(0, i) = boost::multiprecision::numerator(scaled_val);
    }
    row(0, n) = m;
    IntMatrix ker = integer_kernel(row);  // (n+1) x n
    IntMatrix gens(n, ker.cols());
    for (size_t j = 0; j < ker.cols(); ++j)
        for (size_t i = 0; i < n; ++i) gens(i, j) = ker(i, j);
    return Sublattice(t, basis_from_generators(gens), false);
}

BrauerClass restrict_to(const BrauerClass& alpha, const Sublattice& k) {
    if (!(k.ambient == alpha.domain.as_lattice()))
        throw bad_input_error("restrict_to: sublattice does not live in the class domain");
    RatVec vals(k.rank());
    for (size_t j = 0; j < k.rank(); ++j) vals[j] = alpha.evaluate(k.basis.column_vec(j));
    return BrauerClass(k, std::move(vals));
}

BrauerClass obstruction_from_bundle(const K3Surface& x, const IntVec& c1, const Int& rank) {
    if (rank < 1)
        throw bad_input_error("obstruction_from_bundle: rank must be at least 1");
    if (c1.size() != kH2Rank)
        throw bad_input_error("obstruction_from_bundle: c1 needs 22 coordinates");
    RatVec w(kH2Rank);
    for (size_t i = 0; i < kH2Rank; ++i) w[i] = Rat(-c1[i], rank);
    return brauer_from_h2_class(x, w);
}

ModNClass::ModNClass(Int modulus, IntVec res) : n(std::move(modulus)), residues(std::move(res)) {
    if (n < 1) throw bad_input_error("ModNClass: modulus must be at least 1");
    if (residues.size() != kH2Rank)
        throw bad_input_error("ModNClass: needs 22 residues");
    for (Int& r : residues) r = mod_euclid(r, n);
}

ModNClass topological_twisting_class(const IntVec& c1, const Int& n) {
    if (n < 1)
        throw bad_input_error("topological_twisting_class: modulus must be at least 1");
    if (c1.size() != kH2Rank)
        throw bad_input_error("topological_twisting_class: c1 needs 22 coordinates");
    IntVec res(kH2Rank);
    for (size_t i = 0; i < kH2Rank; ++i) res[i] = mod_euclid(-c1[i], n);
    return ModNClass(n, std::move(res));
}

BrauerClass p_map(const K3Surface& x, const ModNClass& t) {
    RatVec w(kH2Rank);
    for (size_t i = 0; i < kH2Rank; ++i) w[i] = Rat(t.residues[i], t.n);
    return brauer_from_h2_class(x, w);
}

Int kummer_torsion_order(size_t rho, const Int& n) {
    if (rho < 1 || rho > 20)
        throw bad_input_error("kummer_torsion_order: Picard rank must be in [1, 20]");
    if (n < 1)
        throw bad_input_error("kummer_torsion_order: modulus must be at least 1");
    return pow_int(n, static_cast<unsigned>(22 - rho));
}

}  // namespace k3moduli
