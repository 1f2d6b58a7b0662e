#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <vector>

#include "k3moduli/numbers.hpp"

namespace k3moduli {

// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols);  // zero-filled
    IntMatrix(size_t rows, size_t cols, IntVec entries);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(size_t n);
    static IntMatrix from_columns(size_t rows, const std::vector<IntVec>& cols);
    static IntMatrix column(const IntVec& v);
    static IntMatrix row_vector(const IntVec& v);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Int& operator()(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const Int& operator()(size_t r, size_t c) const { return e_[r * cols_ + c]; }

    IntVec column_vec(size_t c) const;
    IntVec row_vec(size_t r) const;

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& other) const;
    IntVec operator*(const IntVec& v) const;
    IntMatrix operator-() const;

    bool operator==(const IntMatrix& other) const = default;

    bool is_zero() const;
    bool is_symmetric() const;

    // elementary operations (used by the normal-form algorithms)
    void swap_rows(size_t i, size_t j);
    void swap_cols(size_t i, size_t j);
    void add_row_multiple(size_t dst, size_t src, const Int& c);  // row dst += c * row src
    void add_col_multiple(size_t dst, size_t src, const Int& c);
    void negate_row(size_t i);
    void negate_col(size_t i);

    // submatrix of the given columns, in order
    IntMatrix select_columns(const std::vector<size_t>& idx) const;

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    IntVec e_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& a);

// u * a * v = d with u, v unimodular and d diagonal, diagonal entries
// nonnegative and forming a divisibility chain d1 | d2 | ... .
// The inverses of the transforms are tracked alongside, exactly.
struct SmithNormalForm {
    IntMatrix d;
    IntMatrix u, v;
    IntMatrix u_inv, v_inv;
    size_t rank = 0;

    // nonzero diagonal entries, in chain order
    IntVec nonzero_diagonal() const;
};

SmithNormalForm smith_normal_form(const IntMatrix& a);

// One integer solution x of a * x = b, if any.
std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b);

// Basis of { x : a * x = 0 } as matrix columns.  The kernel of an integer
// matrix is saturated, so this basis extends to a basis of the ambient Z^n.
IntMatrix integer_kernel(const IntMatrix& a);

// Basis (as columns, in column Hermite form) of the lattice generated by the
// columns of gens; zero columns are dropped, so the result has full column rank.
IntMatrix basis_from_generators(const IntMatrix& gens);

size_t column_rank(const IntMatrix& a);

}  // namespace k3moduli
