#include "k3moduli/int_matrix.hpp"

#include "doctest.h"
#include "k3moduli/errors.hpp"
#include "oracles.hpp"

using namespace k3moduli;
using namespace k3moduli::testing;

namespace {

bool is_divisibility_chain(const IntVec& d) {
    for (size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i] == 0 || d[i + 1] % d[i] != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("smith normal form on small worked examples") {
    auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.d == IntMatrix{{1, 0}, {0, 6}});

    auto id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.d == IntMatrix::identity(3));

    auto twos = smith_normal_form(IntMatrix{{2, 0}, {0, 2}});
    CHECK(twos.d == IntMatrix{{2, 0}, {0, 2}});
}

TEST_CASE("smith normal form randomized against the minor-gcd oracle") {
    Rng rng(20240801);
    for (int iter = 0; iter < 250; ++iter) {
        const size_t rows = 1 + static_cast<size_t>(rand_int(rng, 0, 5).convert_to<long long>());
        const size_t cols = 1 + static_cast<size_t>(rand_int(rng, 0, 5).convert_to<long long>());
        IntMatrix a = random_matrix(rng, rows, cols, 9);
        SmithNormalForm s = smith_normal_form(a);

        CHECK(s.u * a * s.v == s.d);
        CHECK(s.u * s.u_inv == IntMatrix::identity(rows));
        CHECK(s.v * s.v_inv == IntMatrix::identity(cols));
        Int du = determinant(s.u);
        Int dv = determinant(s.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));

        IntVec diag = s.nonzero_diagonal();
        CHECK(is_divisibility_chain(diag));
        for (size_t i = 0; i < std::min(rows, cols); ++i)
            for (size_t j = 0; j < std::min(rows, cols); ++j)
                if (i != j) CHECK(s.d(i, j) == 0);

        CHECK(diag == invariant_factors_by_minors(a));
    }
}

TEST_CASE("smith normal form on larger matrices") {
    Rng rng(60601);
    for (int iter = 0; iter < 30; ++iter) {
        const size_t rows = 7 + static_cast<size_t>(rand_int(rng, 0, 5).convert_to<long long>());
        const size_t cols = 7 + static_cast<size_t>(rand_int(rng, 0, 5).convert_to<long long>());
        IntMatrix a = random_matrix(rng, rows, cols, 50);
        SmithNormalForm s = smith_normal_form(a);
        CHECK(s.u * a * s.v == s.d);
        CHECK(s.u * s.u_inv == IntMatrix::identity(rows));
        CHECK(s.v * s.v_inv == IntMatrix::identity(cols));
        CHECK(is_divisibility_chain(s.nonzero_diagonal()));
    }
}

TEST_CASE("bareiss determinant against cofactor expansion") {
    Rng rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        const size_t n = 1 + static_cast<size_t>(rand_int(rng, 0, 5).convert_to<long long>());
        IntMatrix a = random_matrix(rng, n, n, 9);
        CHECK(determinant(a) == cofactor_determinant(a));
    }
    CHECK(determinant(IntMatrix(0, 0)) == 1);
    CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), bad_input_error);
}

TEST_CASE("integer solve finds exact solutions and rejects non-solvable systems") {
    Rng rng(123);
    for (int iter = 0; iter < 200; ++iter) {
        const size_t rows = 1 + static_cast<size_t>(rand_int(rng, 0, 4).convert_to<long long>());
        const size_t cols = 1 + static_cast<size_t>(rand_int(rng, 0, 4).convert_to<long long>());
        IntMatrix a = random_matrix(rng, rows, cols, 6);
        IntVec x(cols);
        for (auto& v : x) v = rand_int(rng, -5, 5);
        IntVec b = a * x;
        auto sol = solve_integer(a, b);
        REQUIRE(sol.has_value());
        CHECK(a * *sol == b);
    }
    CHECK(!solve_integer(IntMatrix{{2}}, IntVec{Int(1)}).has_value());
    CHECK(!solve_integer(IntMatrix{{0}}, IntVec{Int(3)}).has_value());
}

TEST_CASE("integer kernel is correct and saturated") {
    Rng rng(456);
    for (int iter = 0; iter < 150; ++iter) {
        const size_t rows = 1 + static_cast<size_t>(rand_int(rng, 0, 3).convert_to<long long>());
        const size_t cols = 1 + static_cast<size_t>(rand_int(rng, 0, 4).convert_to<long long>());
        IntMatrix a = random_matrix(rng, rows, cols, 6);
        IntMatrix k = integer_kernel(a);
        CHECK((a * k).is_zero());
        CHECK(column_rank(a) + k.cols() == cols);
        if (k.cols() > 0) {
            for (const Int& d : smith_normal_form(k).nonzero_diagonal()) CHECK(d == 1);
        }
    }
}

TEST_CASE("basis_from_generators spans the same lattice with independent columns") {
    Rng rng(789);
    for (int iter = 0; iter < 150; ++iter) {
        const size_t rows = 1 + static_cast<size_t>(rand_int(rng, 0, 4).convert_to<long long>());
        const size_t cols = 1 + static_cast<size_t>(rand_int(rng, 0, 5).convert_to<long long>());
        IntMatrix gens = random_matrix(rng, rows, cols, 7);
        IntMatrix basis = basis_from_generators(gens);
        CHECK(column_rank(basis) == basis.cols());
        CHECK(basis.cols() == column_rank(gens));
        // every generator is an integer combination of the basis and conversely
        for (size_t j = 0; j < gens.cols(); ++j)
            CHECK(solve_integer(basis, gens.column_vec(j)).has_value());
        for (size_t j = 0; j < basis.cols(); ++j)
            CHECK(solve_integer(gens, basis.column_vec(j)).has_value());
    }
}
