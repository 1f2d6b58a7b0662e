#include "k3moduli/dp_twist.hpp"

#include "k3moduli/errors.hpp"

namespace k3moduli {

TwistedPair::TwistedPair(Sublattice lattice, BrauerClass a, BrauerClass b)
    : t(std::move(lattice)), alpha(std::move(a)), beta(std::move(b)) {
    if (!(alpha.domain == t) || !(beta.domain == t))
        throw bad_input_error("TwistedPair: classes must be attached to the given lattice");
}

Sublattice kernel_intersection(const TwistedPair& p) {
    return intersect(kernel(p.alpha), kernel(p.beta));
}

namespace {

// kernel of the restriction of `outer` to `inner_kernel`, mapped back to
// t-coordinates
Sublattice restricted_kernel_in_t(const BrauerClass& outer, const Sublattice& inner_kernel) {
    BrauerClass restricted = restrict_to(outer, inner_kernel);
    Sublattice k = kernel(restricted);  // coordinates in the inner_kernel basis
    return Sublattice(inner_kernel.ambient, inner_kernel.basis * k.basis, false);
}

std::optional<IntVec> equality_witness(const Sublattice& a, const Sublattice& b) {
    for (size_t j = 0; j < a.basis.cols(); ++j) {
        IntVec col = a.basis.column_vec(j);
        if (!contains(b, col)) return col;
    }
    for (size_t j = 0; j < b.basis.cols(); ++j) {
        IntVec col = b.basis.column_vec(j);
        if (!contains(a, col)) return col;
    }
    return std::nullopt;
}

}  // namespace

DpCheckResult dp_identity_check(const TwistedPair& p) {
    Sublattice both = kernel_intersection(p);

    Sublattice via_alpha = restricted_kernel_in_t(p.beta, kernel(p.alpha));
    if (auto w = equality_witness(via_alpha, both)) return {false, w};

    Sublattice via_beta = restricted_kernel_in_t(p.alpha, kernel(p.beta));
    if (auto w = equality_witness(via_beta, both)) return {false, w};

    return {true, std::nullopt};
}

}  // namespace k3moduli
