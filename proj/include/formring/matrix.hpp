#ifndef FORMRING_MATRIX_HPP
#define FORMRING_MATRIX_HPP

#include <gmpxx.h>

#include <vector>

#include "formring/value.hpp"

namespace formring {

/// Dense matrix over arbitrary entries; all sizes here are tiny (ranks
/// bounded by the form degree), so no effort is spent on sparsity.
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntMat = Mat<mpz_class>;
using ValueMat = Mat<Value>;

// --- matrices over a ring context ---

ValueMat value_mat(std::size_t rows, std::size_t cols, const RingPtr& ring);
ValueMat value_identity(std::size_t n, const RingPtr& ring);
ValueMat value_mul(const ValueMat& a, const ValueMat& b);
ValueMat value_add(const ValueMat& a, const ValueMat& b);
ValueMat value_sub(const ValueMat& a, const ValueMat& b);
ValueMat value_scale(const ValueMat& a, const Value& c);
std::vector<Value> value_apply(const ValueMat& a, std::span<const Value> v);
Value value_trace(const ValueMat& a);

/// Exact determinant. Uses fraction-free elimination over integral
/// contexts and a division-free expansion over Z/m.
Value value_det(const ValueMat& a, const RingPtr& ring);

/// Inverse of a matrix whose determinant is a unit (adjugate-based, so it
/// works over any context).
ValueMat value_inverse_unimodular(const ValueMat& a, const RingPtr& ring);

/// Solve a*x = b over a field; nullopt when singular/inconsistent.
std::optional<std::vector<Value>> field_solve(const ValueMat& a, std::span<const Value> b,
                                              const RingPtr& field);

// --- integer matrices and lattices ---

IntMat int_identity(std::size_t n);
IntMat int_mul(const IntMat& a, const IntMat& b);
mpz_class int_det(const IntMat& a);

struct SmithResult {
    IntMat u;  // unimodular, rows x rows
    IntMat d;  // diagonal with divisibility chain, u*a*v = d
    IntMat v;  // unimodular, cols x cols
};

/// Smith normal form with transforms: d = u*a*v, nonnegative diagonal,
/// each diagonal entry dividing the next.
SmithResult smith_normal_form(const IntMat& a);

/// Canonical row Hermite normal form of the row span: pivots positive,
/// entries above each pivot reduced into [0, pivot), zero rows dropped.
/// Equal row lattices produce identical matrices.
IntMat row_hnf(const IntMat& a);

/// Basis of the right kernel {x : a*x = 0}, as matrix columns. The basis
/// spans the full (saturated) kernel lattice.
IntMat right_kernel(const IntMat& a);

std::size_t int_rank(const IntMat& a);

/// Finitely generated subgroup of Q^n: (1/den) * rowspan(basis). Kept
/// normalized so equal subgroups compare equal.
class RatLattice {
public:
    RatLattice() : den_(1) {}
    /// rows of gens are generators with denominator den.
    RatLattice(const IntMat& gens, const mpz_class& den);

    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t rank() const { return basis_.rows(); }
    const IntMat& basis() const { return basis_; }
    const mpz_class& den() const { return den_; }

    bool operator==(const RatLattice& o) const;
    bool contains(const std::vector<mpq_class>& v) const;
    bool contains_lattice(const RatLattice& o) const;

    static RatLattice sum(const RatLattice& a, const RatLattice& b);
    static RatLattice intersect(const RatLattice& a, const RatLattice& b);

private:
    IntMat basis_;   // row HNF
    mpz_class den_;  // positive; gcd(den, content(basis)) == 1
    void normalize();
};

}  // namespace formring

#endif
