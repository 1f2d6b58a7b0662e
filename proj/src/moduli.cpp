#include "k3moduli/moduli.hpp"

#include <string>

#include "k3moduli/errors.hpp"

namespace k3moduli {

ModuliProblem::ModuliProblem(K3Surface x, MukaiVector vec)
    : surface(std::move(x)), v(std::move(vec)) {
    AdmissibilityFlags f = is_admissible_mukai_vector(surface, v);
    if (!f.all()) {
        std::string msg = "ModuliProblem: Mukai vector fails";
        if (!f.algebraic) msg += " [algebraic]";
        if (!f.primitive) msg += " [primitive]";
        if (!f.isotropic) msg += " [isotropic]";
        throw bad_input_error(msg);
    }
}

Int fineness_index(const ModuliProblem& p) {
    Sublattice alg = algebraic_sublattice(p.surface);
    const IntVec v24 = p.v.to_ambient();
    static const Lattice mukai = mukai_lattice();
    Int g = 0;
    for (size_t j = 0; j < alg.rank(); ++j) {
        Int pr = pairing(mukai, alg.basis.column_vec(j), v24);
        g = boost::multiprecision::gcd(g, pr);
    }
    if (g == 0)
        throw invariant_violation_error("fineness_index: v pairs to zero with the algebraic part");
    return g;
}

IntVec ModuliQuotient::project(const IntVec& coords24) const {
    auto in_vperp = solve_integer(vperp_basis, coords24);
    if (!in_vperp)
        throw bad_input_error("ModuliQuotient::project: vector is not in v^perp");
    return projection * *in_vperp;
}

IntVec ModuliQuotient::lift(const IntVec& coords22) const {
    return quotient_lifts * coords22;
}

ModuliQuotient moduli_lattice(const ModuliProblem& p) {
    const Lattice mukai = mukai_lattice();
    const IntVec v24 = p.v.to_ambient();

    // v^perp: saturated kernel of pairing with v
    IntVec pairings = mukai.gram * v24;
    IntMatrix vperp = integer_kernel(IntMatrix::row_vector(pairings));  // 24 x 23
    if (vperp.cols() != kMukaiRank - 1)
        throw invariant_violation_error("moduli_lattice: v^perp has wrong rank");

    // v is isotropic, so it lies in v^perp; express it there
    auto v_in_vperp = solve_integer(vperp, v24);
    if (!v_in_vperp)
        throw invariant_violation_error("moduli_lattice: v does not lie in v^perp");

    // complete the (primitive) coordinate vector of v to a basis of Z^23
    SmithNormalForm s = smith_normal_form(IntMatrix::column(*v_in_vperp));
    if (s.d(0, 0) != 1)
        throw invariant_violation_error("moduli_lattice: v is not primitive in v^perp");
    IntMatrix w = s.u_inv;  // columns form a basis of Z^23
    if (s.v(0, 0) == -1) w.negate_col(0);
    IntMatrix w_inv = s.u;
    if (s.v(0, 0) == -1) w_inv.negate_row(0);
    // first column of w is now the coordinate vector of v

    std::vector<size_t> rest;
    for (size_t j = 1; j < w.cols(); ++j) rest.push_back(j);
    IntMatrix lifts = vperp * w.select_columns(rest);  // 24 x 22
    IntMatrix proj(kH2Rank, kMukaiRank - 1);
    for (size_t i = 0; i < kH2Rank; ++i)
        for (size_t j = 0; j < kMukaiRank - 1; ++j) proj(i, j) = w_inv(1 + i, j);

    // induced form: well defined because v lies in the radical of the form on v^perp
    Lattice h2m(lifts.transposed() * mukai.gram * lifts);

    ModuliQuotient q{std::move(h2m), std::move(vperp), std::move(lifts), std::move(proj)};

    FormFlags flags = classify_form(q.h2m);
    Signature sig = signature(q.h2m);
    if (!flags.even || !flags.unimodular || !(sig == Signature{3, 19}))
        throw invariant_violation_error(
            "moduli_lattice: quotient is not an even unimodular lattice of signature (3,19)");
    return q;
}

namespace {

// saturation of the span of the projections of the given rank-24 vectors
Sublattice projected_saturation(const ModuliQuotient& q, const IntMatrix& vectors24) {
    IntMatrix gens(kH2Rank, vectors24.cols());
    for (size_t j = 0; j < vectors24.cols(); ++j) {
        IntVec y = q.project(vectors24.column_vec(j));
        for (size_t i = 0; i < kH2Rank; ++i) gens(i, j) = y[i];
    }
    IntMatrix basis = basis_from_generators(gens);
    return saturation(Sublattice(q.h2m, basis, false));
}

// columns (0, t_i, 0) for the transcendental basis of the surface
IntMatrix transcendental_in_mukai(const K3Surface& x) {
    const Sublattice& t = x.transcendental;
    IntMatrix m(kMukaiRank, t.rank());
    for (size_t j = 0; j < t.rank(); ++j)
        for (size_t i = 0; i < kH2Rank; ++i) m(1 + i, j) = t.basis(i, j);
    return m;
}

}  // namespace

NsTSplit moduli_ns_and_t(const ModuliProblem& p, const ModuliQuotient& q) {
    const Lattice mukai = mukai_lattice();
    Sublattice alg = algebraic_sublattice(p.surface);
    const IntVec v24 = p.v.to_ambient();

    // algebraic part meets v^perp: kernel of pairing with v in algebraic coordinates
    IntVec pr(alg.rank());
    for (size_t j = 0; j < alg.rank(); ++j)
        pr[j] = pairing(mukai, alg.basis.column_vec(j), v24);
    IntMatrix ker = integer_kernel(IntMatrix::row_vector(pr));
    IntMatrix alg_cap_vperp = alg.basis * ker;  // 24 x (rho + 1)

    Sublattice ns_m = projected_saturation(q, alg_cap_vperp);
    Sublattice t_m = orthogonal_complement(ns_m);

    // cross-check the second characterization of T_M
    Sublattice t_m_from_phi = projected_saturation(q, transcendental_in_mukai(p.surface));
    if (!sublattice_equal(t_m, t_m_from_phi))
        throw invariant_violation_error(
            "moduli_ns_and_t: complement of NS_M differs from the saturated phi image");
    return NsTSplit{std::move(ns_m), std::move(t_m)};
}

NsTSplit moduli_ns_and_t(const ModuliProblem& p) {
    return moduli_ns_and_t(p, moduli_lattice(p));
}

LatticeEmbedding phi_transcendental(const ModuliProblem& p, const ModuliQuotient& q,
                                    const NsTSplit& split) {
    const Sublattice& t_x = p.surface.transcendental;
    IntMatrix t24 = transcendental_in_mukai(p.surface);
    IntMatrix phi_matrix(split.t_m.rank(), t_x.rank());
    for (size_t j = 0; j < t_x.rank(); ++j) {
        IntVec image = q.project(t24.column_vec(j));
        auto in_tm = coordinates_in(split.t_m, image);
        if (!in_tm)
            throw invariant_violation_error(
                "phi_transcendental: image of T_X does not land in T_M");
        for (size_t i = 0; i < split.t_m.rank(); ++i) phi_matrix(i, j) = (*in_tm)[i];
    }
    try {
        return LatticeEmbedding(t_x.as_lattice(), split.t_m.as_lattice(),
                                std::move(phi_matrix));
    } catch (const bad_input_error& e) {
        throw invariant_violation_error(std::string("phi_transcendental: ") + e.what());
    }
}

LatticeEmbedding phi_transcendental(const ModuliProblem& p) {
    ModuliQuotient q = moduli_lattice(p);
    NsTSplit split = moduli_ns_and_t(p, q);
    return phi_transcendental(p, q, split);
}

LambdaWitness mukai_lambda(const ModuliProblem& p, const ModuliQuotient& q,
                           const NsTSplit& split, const LatticeEmbedding& phi) {
    (void)q;
    const Int n = fineness_index(p);
    const Sublattice& t_x = p.surface.transcendental;
    const size_t tr = t_x.rank();

    // solve (0, lambda, 0) + n * mu = v over the integers
    IntMatrix t24 = transcendental_in_mukai(p.surface);
    IntMatrix n_id = IntMatrix::identity(kMukaiRank);
    for (size_t i = 0; i < kMukaiRank; ++i) n_id(i, i) = n;
    auto sol = solve_integer(hstack(t24, n_id), p.v.to_ambient());
    if (!sol)
        throw invariant_violation_error("mukai_lambda: no lambda with v - lambda divisible by n");

    IntVec x(tr);
    for (size_t i = 0; i < tr; ++i) x[i] = mod_euclid((*sol)[i], n);

    LambdaWitness lam;
    lam.t_coords = x;
    lam.h2_coords = t_x.basis * x;

    // phi(lambda) must be divisible by n and generate the cokernel
    IntVec phi_lambda = phi.matrix * x;
    for (const Int& c : phi_lambda)
        if (!divides(n, c))
            throw invariant_violation_error("mukai_lambda: phi(lambda) not divisible by n");
    const Lattice tm_abstract = split.t_m.as_lattice();
    QuotientStructure coker = quotient_structure(
        Sublattice(tm_abstract, phi.matrix, false), Sublattice::full(tm_abstract));
    if (!coker.group.cyclic() || coker.group.order() != n)
        throw invariant_violation_error("mukai_lambda: cokernel of phi is not cyclic of order n");
    if (n > 1) {
        IntVec gen(phi_lambda.size());
        for (size_t i = 0; i < gen.size(); ++i) gen[i] = phi_lambda[i] / n;
        IntVec res = coker.residues(gen);
        if (res.size() != 1 || boost::multiprecision::gcd(res[0], n) != 1)
            throw invariant_violation_error(
                "mukai_lambda: phi(lambda)/n does not generate the cokernel");
    }
    return lam;
}

LambdaWitness mukai_lambda(const ModuliProblem& p) {
    ModuliQuotient q = moduli_lattice(p);
    NsTSplit split = moduli_ns_and_t(p, q);
    LatticeEmbedding phi = phi_transcendental(p, q, split);
    return mukai_lambda(p, q, split, phi);
}

BrauerClass ObstructionGroup::canonical() const {
    if (generators.empty())
        throw invariant_violation_error("ObstructionGroup: no generators recorded");
    return generators.front();  // generators are listed by increasing k, so k = 1 first
}

ObstructionGroup obstruction_group(const ModuliProblem& p, const ModuliQuotient& q,
                                   const NsTSplit& split, const LatticeEmbedding& phi,
                                   const LambdaWitness& lambda) {
    (void)q;
    const Int n = fineness_index(p);
    const Lattice tm_abstract = split.t_m.as_lattice();
    const Sublattice phi_image(tm_abstract, phi.matrix, n == 1);
    const Sublattice tm_full = Sublattice::full(tm_abstract);

    ObstructionGroup out;
    out.n = n;
    if (n == 1) {
        out.generators.push_back(BrauerClass::zero(tm_full));
        return out;
    }

    QuotientStructure coker = quotient_structure(phi_image, tm_full);
    // locate the unique nontrivial invariant factor (the quotient is cyclic)
    size_t idx = 0;
    size_t count = 0;
    for (size_t i = 0; i < coker.moduli.size(); ++i)
        if (coker.moduli[i] != 1) {
            idx = i;
            ++count;
        }
    if (count != 1 || coker.moduli[idx] != n)
        throw invariant_violation_error("obstruction_group: cokernel is not cyclic of order n");

    // normalize the quotient map so phi(lambda)/n has residue 1
    IntVec phi_lambda = phi.matrix * lambda.t_coords;
    IntVec gen(phi_lambda.size());
    for (size_t i = 0; i < gen.size(); ++i) gen[i] = phi_lambda[i] / n;
    Int r0 = mod_euclid(dot(coker.to_residues.row_vec(idx), gen), n);
    Int scale_factor = mod_inverse(r0, n);

    IntVec q_coeffs(tm_full.rank());
    for (size_t i = 0; i < q_coeffs.size(); ++i)
        q_coeffs[i] = mod_euclid(scale_factor * coker.to_residues(idx, i), n);

    for (Int k = 0; k < n; ++k) {
        if (boost::multiprecision::gcd(k, n) != 1) continue;
        RatVec vals(q_coeffs.size());
        for (size_t i = 0; i < vals.size(); ++i) vals[i] = Rat(k * q_coeffs[i], n);
        BrauerClass alpha(tm_full, std::move(vals));
        if (order(alpha) != n)
            throw invariant_violation_error("obstruction_group: generator has wrong order");
        if (!sublattice_equal(kernel(alpha), phi_image))
            throw invariant_violation_error(
                "obstruction_group: generator kernel differs from phi(T_X)");
        if (!restrict_to(alpha, Sublattice(tm_abstract, phi.matrix, false)).is_zero())
            throw invariant_violation_error(
                "obstruction_group: generator does not vanish on phi(T_X)");
        out.generators.push_back(std::move(alpha));
    }
    return out;
}

ObstructionGroup obstruction_group(const ModuliProblem& p) {
    ModuliQuotient q = moduli_lattice(p);
    NsTSplit split = moduli_ns_and_t(p, q);
    LatticeEmbedding phi = phi_transcendental(p, q, split);
    LambdaWitness lambda = mukai_lambda(p, q, split, phi);
    return obstruction_group(p, q, split, phi, lambda);
}

MukaiVector find_u_unit(const ModuliProblem& p) {
    LatticeVector v(mukai_lattice(), p.v.to_ambient());
    LatticeVector u = solve_pairing_value(v, Int(1));
    return MukaiVector::from_ambient(u.coords);
}

ModuliReport verify_theorem_suite(const ModuliProblem& p) {
    ModuliReport rep;
    rep.n = fineness_index(p);

    try {
        rep.quotient = moduli_lattice(p);
        rep.checks.quotient_even_unimodular_3_19 = true;
    } catch (const invariant_violation_error&) {
        return rep;  // nothing downstream can run
    }

    try {
        NsTSplit split = moduli_ns_and_t(p, *rep.quotient);
        rep.ns_m = split.ns_m;
        rep.t_m = split.t_m;
        rep.checks.rank_split_consistent =
            (split.ns_m.rank() + split.t_m.rank() == kH2Rank) &&
            (split.ns_m.rank() == p.surface.picard_rank());
    } catch (const invariant_violation_error&) {
        return rep;
    }
    NsTSplit split{*rep.ns_m, *rep.t_m};

    try {
        rep.phi = phi_transcendental(p, *rep.quotient, split);
        rep.checks.phi_isometric_embedding = true;
    } catch (const invariant_violation_error&) {
        return rep;
    }

    try {
        const Lattice tm_abstract = split.t_m.as_lattice();
        QuotientStructure coker =
            quotient_structure(Sublattice(tm_abstract, rep.phi->matrix, false),
                               Sublattice::full(tm_abstract));
        rep.cokernel_invariant_factors = coker.group.invariant_factors;
        rep.checks.cokernel_cyclic_order_n =
            coker.group.cyclic() && coker.group.order() == rep.n;
    } catch (const bad_input_error&) {
        rep.checks.cokernel_cyclic_order_n = false;
    }

    try {
        rep.lambda = mukai_lambda(p, *rep.quotient, split, *rep.phi);
        rep.checks.lambda_divisibility = true;
        IntVec phi_lambda = rep.phi->matrix * rep.lambda->t_coords;
        rep.cokernel_generator.resize(phi_lambda.size());
        for (size_t i = 0; i < phi_lambda.size(); ++i)
            rep.cokernel_generator[i] = phi_lambda[i] / rep.n;
    } catch (const invariant_violation_error&) {
        return rep;
    }

    try {
        ObstructionGroup grp =
            obstruction_group(p, *rep.quotient, split, *rep.phi, *rep.lambda);
        rep.obstruction_generators = grp.generators;
        rep.checks.obstruction_generators_valid = true;
    } catch (const invariant_violation_error&) {
        rep.checks.obstruction_generators_valid = false;
    }
    return rep;
}

}  // namespace k3moduli
