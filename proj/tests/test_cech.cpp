#include "k3moduli/cech.hpp"

#include "doctest.h"
#include "k3moduli/errors.hpp"
#include "oracles.hpp"

using namespace k3moduli;
using namespace k3moduli::testing;

namespace {

const Nerve kSphere = Nerve::complete_skeleton(4, 2);  // boundary of a tetrahedron
const Nerve kSolid = Nerve::complete_skeleton(4, 3);   // solid tetrahedron

Cochain random_cochain(Rng& rng, const Nerve& nerve, int degree, const Int& modulus) {
    RatVec vals(nerve.simplex_count(degree));
    for (auto& v : vals) {
        if (modulus == 0)
            v = Rat(rand_int(rng, 0, 11), rand_int(rng, 1, 6));
        else
            v = Rat(rand_int(rng, 0, 11));
    }
    return Cochain(degree, modulus, std::move(vals));
}

// random subcomplex of the complete 3-skeleton on `vertices` vertices that
// keeps the full 1-skeleton
Nerve random_nerve(Rng& rng, size_t vertices) {
    Nerve complete = Nerve::complete_skeleton(vertices, 3);
    std::vector<std::array<size_t, 3>> tris;
    for (const auto& t : complete.triangles)
        if (rand_int(rng, 0, 2) != 0) tris.push_back(t);
    auto has_tri = [&](std::array<size_t, 3> t) {
        return std::find(tris.begin(), tris.end(), t) != tris.end();
    };
    std::vector<std::array<size_t, 4>> tets;
    for (const auto& t : complete.tetrahedra) {
        if (rand_int(rng, 0, 1) != 0) continue;
        if (has_tri({t[1], t[2], t[3]}) && has_tri({t[0], t[2], t[3]}) &&
            has_tri({t[0], t[1], t[3]}) && has_tri({t[0], t[1], t[2]}))
            tets.push_back(t);
    }
    return Nerve(vertices, complete.edges, std::move(tris), std::move(tets));
}

}  // namespace

TEST_CASE("nerve validation") {
    CHECK_THROWS_AS(Nerve(3, {{0, 0}}, {}, {}), bad_input_error);       // not increasing
    CHECK_THROWS_AS(Nerve(3, {{0, 3}}, {}, {}), bad_input_error);       // out of range
    CHECK_THROWS_AS(Nerve(3, {{0, 1}}, {{0, 1, 2}}, {}), bad_input_error);  // missing edges
    CHECK_THROWS_AS(Nerve(4, {{0, 1}, {0, 1}}, {}, {}), bad_input_error);   // duplicate
    CHECK_NOTHROW(Nerve(4, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}}, {}));

    CHECK(kSphere.simplex_count(0) == 4);
    CHECK(kSphere.simplex_count(1) == 6);
    CHECK(kSphere.simplex_count(2) == 4);
    CHECK(kSphere.simplex_count(3) == 0);
    CHECK(kSolid.simplex_count(3) == 1);
}

TEST_CASE("coboundary on the sphere nerve matches the hand expansion") {
    // edges in lexicographic order: 01, 02, 03, 12, 13, 23
    Cochain lambda(1, 7, RatVec{Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)});
    Cochain d = coboundary(kSphere, lambda);
    // triangles 012, 013, 023, 123:
    //   012: l(12) - l(02) + l(01) = 4 - 2 + 1 = 3
    //   013: l(13) - l(03) + l(01) = 5 - 3 + 1 = 3
    //   023: l(23) - l(03) + l(02) = 6 - 3 + 2 = 5
    //   123: l(23) - l(13) + l(12) = 6 - 5 + 4 = 5
    CHECK(d.values == RatVec{Rat(3), Rat(3), Rat(5), Rat(5)});

    Cochain constant(0, 5, RatVec(4, Rat(3)));
    CHECK(coboundary(kSphere, constant).is_zero());
}

TEST_CASE("coboundary squares to zero") {
    Rng rng(515);
    for (int iter = 0; iter < 60; ++iter) {
        Nerve nerve = random_nerve(rng, 5);
        for (const Int& modulus : IntVec{Int(0), Int(2), Int(3), Int(4), Int(6)}) {
            for (int degree = 0; degree <= 1; ++degree) {
                Cochain c = random_cochain(rng, nerve, degree, modulus);
                CHECK(coboundary(nerve, coboundary(nerve, c)).is_zero());
            }
        }
    }
    Cochain top(3, 2, RatVec(kSolid.simplex_count(3), Rat(1)));
    CHECK_THROWS_AS(coboundary(kSolid, top), bad_input_error);
}

TEST_CASE("cohomology of the sphere and the solid tetrahedron") {
    for (long long n : {2, 3, 4, 6}) {
        FiniteAbelianGroup h2 = cech_cohomology(kSphere, 2, n);
        CHECK(h2.invariant_factors == IntVec{Int(n)});
        CHECK(cech_cohomology(kSphere, 1, n).trivial());
        CHECK(cech_cohomology(kSphere, 0, n).invariant_factors == IntVec{Int(n)});

        CHECK(cech_cohomology(kSolid, 2, n).trivial());
        CHECK(cech_cohomology(kSolid, 1, n).trivial());
        CHECK(cech_cohomology(kSolid, 0, n).invariant_factors == IntVec{Int(n)});
    }
    CHECK(cech_cohomology(kSphere, 2, 1).trivial());
    CHECK_THROWS_AS(cech_cohomology(kSphere, 2, 0), bad_input_error);
    CHECK_THROWS_AS(cech_cohomology(kSphere, 3, 2), bad_input_error);

    // the 2-skeleton of the 4-simplex collapses to a wedge of four 2-spheres
    Nerve wedge = Nerve::complete_skeleton(5, 2);
    FiniteAbelianGroup h2 = cech_cohomology(wedge, 2, 3);
    CHECK(h2.invariant_factors == IntVec(4, Int(3)));
    CHECK(cech_cohomology(wedge, 1, 3).trivial());

    // a 4-cycle is a circle: H^1 = Z/n, H^2 = 0
    Nerve circle(4, {{0, 1}, {0, 3}, {1, 2}, {2, 3}}, {}, {});
    CHECK(cech_cohomology(circle, 1, 6).invariant_factors == IntVec{Int(6)});
    CHECK(cech_cohomology(circle, 2, 6).trivial());
    CHECK(cech_cohomology(circle, 0, 6).invariant_factors == IntVec{Int(6)});
}

TEST_CASE("cohomologous cochains and witnesses") {
    Rng rng(616);

    // a = b: the zero witness
    Cochain a = coboundary(kSphere, random_cochain(rng, kSphere, 1, 5));
    CohomologousResult same = is_cohomologous(kSphere, a, a);
    CHECK(same.cohomologous);
    REQUIRE(same.witness.has_value());
    CHECK(coboundary(kSphere, *same.witness) == (a - a));

    // a = delta(lambda) against zero, over Z/n and over Q/Z
    for (const Int& modulus : IntVec{Int(0), Int(2), Int(5)}) {
        Cochain lambda = random_cochain(rng, kSphere, 1, modulus);
        Cochain da = coboundary(kSphere, lambda);
        Cochain zero = Cochain::zero(kSphere, 2, modulus);
        CohomologousResult res = is_cohomologous(kSphere, da, zero);
        CHECK(res.cohomologous);
        REQUIRE(res.witness.has_value());
        CHECK(coboundary(kSphere, *res.witness) == da);
    }

    // a generator of H^2 of the sphere is not a coboundary
    Cochain gen2(2, 2, RatVec{Rat(1), Rat(0), Rat(0), Rat(0)});
    CHECK(!is_cohomologous(kSphere, gen2, Cochain::zero(kSphere, 2, 2)).cohomologous);
    Cochain genq(2, 0, RatVec{Rat(1, 2), Rat(0), Rat(0), Rat(0)});
    CHECK(!is_cohomologous(kSphere, genq, Cochain::zero(kSphere, 2, 0)).cohomologous);
    // but its double is one over Q/Z (it equals zero mod 1)
    Cochain dblq(2, 0, RatVec{Rat(1), Rat(0), Rat(0), Rat(0)});
    CHECK(is_cohomologous(kSphere, dblq, Cochain::zero(kSphere, 2, 0)).cohomologous);

    // non-cocycles are rejected
    Cochain not_cocycle(1, 2, RatVec{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
    CHECK_THROWS_AS(is_cohomologous(kSphere, not_cocycle, Cochain::zero(kSphere, 1, 2)),
                    bad_input_error);
}

TEST_CASE("gluing data verification") {
    Rng rng(717);
    for (const Int& modulus : IntVec{Int(0), Int(2), Int(6)}) {
        // any transitions with twist := delta(transitions) glue
        Cochain lambda = random_cochain(rng, kSphere, 1, modulus);
        GluingData g(kSphere, lambda, coboundary(kSphere, lambda));
        CHECK(verify_gluing(g));

        // zero data glues
        GluingData trivial(kSphere, Cochain::zero(kSphere, 1, modulus),
                           Cochain::zero(kSphere, 2, modulus));
        CHECK(verify_gluing(trivial));
    }

    // a twist that is not even cohomologous to zero admits no transitions at
    // all; spot-check failure for a few candidate lambdas
    Cochain bad_twist(2, 2, RatVec{Rat(1), Rat(0), Rat(0), Rat(0)});
    CHECK(!is_cohomologous(kSphere, bad_twist, Cochain::zero(kSphere, 2, 2)).cohomologous);
    for (int iter = 0; iter < 20; ++iter) {
        Cochain lambda = random_cochain(rng, kSphere, 1, 2);
        CHECK(!verify_gluing(GluingData(kSphere, lambda, bad_twist)));
    }
}

TEST_CASE("tensor and hom twisting laws") {
    Rng rng(818);
    for (int iter = 0; iter < 30; ++iter) {
        const Int modulus = (iter % 2 == 0) ? Int(0) : Int(6);
        Cochain l1 = random_cochain(rng, kSphere, 1, modulus);
        Cochain l2 = random_cochain(rng, kSphere, 1, modulus);
        Cochain t1 = random_cochain(rng, kSphere, 2, modulus);
        Cochain t2 = random_cochain(rng, kSphere, 2, modulus);
        GluingData g(kSphere, l1, t1), h(kSphere, l2, t2);

        GluingData tensor = tensor_gluing(g, h);
        CHECK(tensor.twist == t1 + t2);
        CHECK(tensor.transitions == l1 + l2);

        GluingData hom = hom_gluing(g, h);
        CHECK(hom.twist == t2 - t1);
        CHECK(hom.transitions == l2 - l1);

        // tensor with the inverse kills the twist
        GluingData inverse(kSphere, Cochain::zero(kSphere, 1, modulus) - l1,
                           Cochain::zero(kSphere, 2, modulus) - t1);
        CHECK(tensor_gluing(g, inverse).twist.is_zero());
    }

    Nerve other = Nerve::complete_skeleton(5, 2);
    GluingData a(kSphere, Cochain::zero(kSphere, 1, 2), Cochain::zero(kSphere, 2, 2));
    GluingData b(other, Cochain::zero(other, 1, 2), Cochain::zero(other, 2, 2));
    CHECK_THROWS_AS(tensor_gluing(a, b), bad_input_error);
}
