#include "k3moduli/int_matrix.hpp"

#include <algorithm>
#include <ostream>

#include "k3moduli/errors.hpp"

namespace k3moduli {

IntMatrix::IntMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(size_t rows, size_t cols, IntVec entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
        throw bad_input_error("IntMatrix: entry count does not match dimensions");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    e_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw bad_input_error("IntMatrix: ragged initializer");
        for (long long x : row) e_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(size_t rows, const std::vector<IntVec>& cols) {
    IntMatrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw bad_input_error("IntMatrix::from_columns: column length mismatch");
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

IntMatrix IntMatrix::column(const IntVec& v) {
    return from_columns(v.size(), {v});
}

IntMatrix IntMatrix::row_vector(const IntVec& v) {
    IntMatrix m(1, v.size());
    for (size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
    return m;
}

IntVec IntMatrix::column_vec(size_t c) const {
    IntVec v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

IntVec IntMatrix::row_vec(size_t r) const {
    IntVec v(cols_);
    for (size_t j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
    return v;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_)
        throw bad_input_error("IntMatrix: inner dimension mismatch");
    IntMatrix r(rows_, other.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
        }
    return r;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
    if (cols_ != v.size())
        throw bad_input_error("IntMatrix: vector length mismatch");
    IntVec r(rows_, Int(0));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

bool IntMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

void IntMatrix::swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(size_t dst, size_t src, const Int& c) {
    if (c == 0) return;
    for (size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col_multiple(size_t dst, size_t src, const Int& c) {
    if (c == 0) return;
    for (size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
}

void IntMatrix::negate_row(size_t i) {
    for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(size_t i) {
    for (size_t r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
}

IntMatrix IntMatrix::select_columns(const std::vector<size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (size_t j = 0; j < idx.size(); ++j)
        for (size_t i = 0; i < rows_; ++i) m(i, j) = (*this)(i, idx[j]);
    return m;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " [");
        for (size_t j = 0; j < m.cols(); ++j) {
            os << m(i, j);
            if (j + 1 < m.cols()) os << ", ";
        }
        os << "]";
        if (i + 1 < m.rows()) os << "\n";
    }
    return os << "]";
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw bad_input_error("hstack: row count mismatch");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw bad_input_error("determinant: matrix not square");
    const size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t piv = k;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = t / prev;  // exact (Bareiss)
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntVec SmithNormalForm::nonzero_diagonal() const {
    IntVec out;
    const size_t nm = std::min(d.rows(), d.cols());
    for (size_t i = 0; i < nm; ++i)
        if (d(i, i) != 0) out.push_back(d(i, i));
    return out;
}

namespace {

struct SnfWork {
    IntMatrix d, u, v, u_inv, v_inv;

    void row_swap(size_t i, size_t j) {
        d.swap_rows(i, j);
        u.swap_rows(i, j);
        u_inv.swap_cols(i, j);
    }
    void col_swap(size_t i, size_t j) {
        d.swap_cols(i, j);
        v.swap_cols(i, j);
        v_inv.swap_rows(i, j);
    }
    // row i += c * row j
    void row_add(size_t i, size_t j, const Int& c) {
        d.add_row_multiple(i, j, c);
        u.add_row_multiple(i, j, c);
        u_inv.add_col_multiple(j, i, -c);
    }
    // col i += c * col j
    void col_add(size_t i, size_t j, const Int& c) {
        d.add_col_multiple(i, j, c);
        v.add_col_multiple(i, j, c);
        v_inv.add_row_multiple(j, i, -c);
    }
    void row_negate(size_t i) {
        d.negate_row(i);
        u.negate_row(i);
        u_inv.negate_col(i);
    }
};

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& a) {
    const size_t m = a.rows(), n = a.cols();
    SnfWork w{a, IntMatrix::identity(m), IntMatrix::identity(n),
              IntMatrix::identity(m), IntMatrix::identity(n)};
    const size_t nm = std::min(m, n);
    size_t t = 0;
    while (t < nm) {
        // pick the nonzero entry of smallest absolute value in the trailing block
        size_t pi = 0, pj = 0;
        bool found = false;
        Int best = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                const Int& x = w.d(i, j);
                if (x == 0) continue;
                Int ax = boost::multiprecision::abs(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;  // trailing block is zero
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        bool reduced = true;
        for (size_t i = t + 1; i < m; ++i) {
            if (w.d(i, t) == 0) continue;
            Int q = w.d(i, t) / w.d(t, t);
            w.row_add(i, t, -q);
            if (w.d(i, t) != 0) reduced = false;
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (w.d(t, j) == 0) continue;
            Int q = w.d(t, j) / w.d(t, t);
            w.col_add(j, t, -q);
            if (w.d(t, j) != 0) reduced = false;
        }
        if (!reduced) continue;  // smaller remainders appeared; pick a new pivot

        // row and column are clear; enforce divisibility of the trailing block
        bool divides_all = true;
        for (size_t i = t + 1; i < m && divides_all; ++i)
            for (size_t j = t + 1; j < n && divides_all; ++j)
                if (w.d(i, j) % w.d(t, t) != 0) {
                    w.row_add(t, i, 1);
                    divides_all = false;
                }
        if (!divides_all) continue;

        if (w.d(t, t) < 0) w.row_negate(t);
        ++t;
    }

    SmithNormalForm out{std::move(w.d), std::move(w.u), std::move(w.v),
                        std::move(w.u_inv), std::move(w.v_inv), t};
    return out;
}

std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b) {
    if (b.size() != a.rows()) throw bad_input_error("solve_integer: length mismatch");
    SmithNormalForm s = smith_normal_form(a);
    IntVec w = s.u * b;
    IntVec t(a.cols(), Int(0));
    const size_t nm = std::min(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        const Int di = i < nm ? s.d(i, i) : Int(0);
        if (di == 0) {
            if (w[i] != 0) return std::nullopt;
        } else {
            if (w[i] % di != 0) return std::nullopt;
            t[i] = w[i] / di;
        }
    }
    return s.v * t;
}

IntMatrix integer_kernel(const IntMatrix& a) {
    SmithNormalForm s = smith_normal_form(a);
    std::vector<size_t> idx;
    for (size_t j = s.rank; j < a.cols(); ++j) idx.push_back(j);
    return s.v.select_columns(idx);
}

IntMatrix basis_from_generators(const IntMatrix& gens) {
    const size_t m = gens.rows(), n = gens.cols();
    IntMatrix h = gens;
    size_t p = 0;  // next pivot column
    std::vector<size_t> pivot_rows;
    for (size_t r = 0; r < m && p < n; ++r) {
        // gcd-reduce row r across columns p..n-1 until one nonzero entry remains
        while (true) {
            size_t jbest = n;
            Int best = 0;
            for (size_t j = p; j < n; ++j) {
                if (h(r, j) == 0) continue;
                Int ax = boost::multiprecision::abs(h(r, j));
                if (jbest == n || ax < best) {
                    jbest = j;
                    best = ax;
                }
            }
            if (jbest == n) break;  // row r empty in the active block
            h.swap_cols(p, jbest);
            bool clear = true;
            for (size_t j = p + 1; j < n; ++j) {
                if (h(r, j) == 0) continue;
                Int q = h(r, j) / h(r, p);
                h.add_col_multiple(j, p, -q);
                if (h(r, j) != 0) clear = false;
            }
            if (clear) break;
        }
        if (h(r, p) == 0) continue;
        if (h(r, p) < 0) h.negate_col(p);
        // canonical reduction of earlier columns against this pivot
        for (size_t j = 0; j < p; ++j) {
            Int q = floor_div(h(r, j), h(r, p));
            h.add_col_multiple(j, p, -q);
        }
        pivot_rows.push_back(r);
        ++p;
    }
    std::vector<size_t> keep;
    for (size_t j = 0; j < p; ++j) keep.push_back(j);
    return h.select_columns(keep);
}

size_t column_rank(const IntMatrix& a) {
    return smith_normal_form(a).rank;
}

}  // namespace k3moduli
