#include "formring/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace formring {

ValueMat value_mat(std::size_t rows, std::size_t cols, const RingPtr& ring) {
    return ValueMat(rows, cols, ring->zero());
}

ValueMat value_identity(std::size_t n, const RingPtr& ring) {
    ValueMat m = value_mat(n, n, ring);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring->one();
    return m;
}

ValueMat value_mul(const ValueMat& a, const ValueMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    ValueMat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Value s = a.at(i, 0) * b.at(0, j);
            for (std::size_t k = 1; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

ValueMat value_add(const ValueMat& a, const ValueMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
    ValueMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

ValueMat value_sub(const ValueMat& a, const ValueMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
    ValueMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

ValueMat value_scale(const ValueMat& a, const Value& c) {
    ValueMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) * c;
    return r;
}

std::vector<Value> value_apply(const ValueMat& a, std::span<const Value> v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix shape mismatch");
    std::vector<Value> r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Value s = a.at(i, 0) * v[0];
        for (std::size_t k = 1; k < a.cols(); ++k) s = s + a.at(i, k) * v[k];
        r[i] = s;
    }
    return r;
}

Value value_trace(const ValueMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("trace of non-square matrix");
    Value s = a.at(0, 0);
    for (std::size_t i = 1; i < a.rows(); ++i) s = s + a.at(i, i);
    return s;
}

namespace {

// Fraction-free Gaussian elimination; valid over any integral context.
Value det_bareiss(ValueMat m, const RingPtr& ring) {
    const std::size_t n = m.rows();
    Value prev = ring->one();
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k).is_zero()) ++p;
            if (p == n) return ring->zero();
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j))
                                 .exact_div(prev);
        prev = m.at(k, k);
    }
    Value d = m.at(n - 1, n - 1);
    return negate ? -d : d;
}

// Division-free determinant by expansion over column subsets; used over
// non-integral contexts. Exponential, fine for the ranks involved here.
Value det_expansion(const ValueMat& m, const RingPtr& ring) {
    const std::size_t n = m.rows();
    std::vector<Value> cur(1u << n, ring->zero());
    cur[0] = ring->one();
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Value> next(1u << n, ring->zero());
        for (std::size_t mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask))) != r)
                continue;
            if (cur[mask].is_zero()) continue;
            bool sign = false;
            for (std::size_t c = 0; c < n; ++c) {
                if (mask & (1u << c)) {
                    sign = !sign;
                    continue;
                }
                Value term = cur[mask] * m.at(r, c);
                std::size_t m2 = mask | (1u << c);
                next[m2] = sign ? next[m2] - term : next[m2] + term;
            }
        }
        cur = std::move(next);
    }
    return cur[(1u << n) - 1];
}

}  // namespace

Value value_det(const ValueMat& a, const RingPtr& ring) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (a.rows() == 0) return ring->one();
    if (ring->is_integral()) return det_bareiss(a, ring);
    return det_expansion(a, ring);
}

ValueMat value_inverse_unimodular(const ValueMat& a, const RingPtr& ring) {
    const std::size_t n = a.rows();
    Value d = value_det(a, ring);
    if (!d.is_unit()) throw std::invalid_argument("matrix determinant is not a unit");
    Value dinv = d.inv();
    ValueMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ValueMat minor_m(n - 1, n - 1);
            for (std::size_t r = 0, rm = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cm = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor_m.at(rm, cm++) = a.at(r, c);
                }
                ++rm;
            }
            Value cof = value_det(minor_m, ring);
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(i, j) = cof * dinv;
        }
    return inv;
}

std::optional<std::vector<Value>> field_solve(const ValueMat& a, std::span<const Value> b,
                                              const RingPtr& field) {
    if (a.rows() != b.size()) throw std::invalid_argument("system shape mismatch");
    const std::size_t rows = a.rows(), cols = a.cols();
    ValueMat m(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = a.at(i, j);
        m.at(i, cols) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m.at(p, c).is_zero()) ++p;
        if (p == rows) continue;
        for (std::size_t j = 0; j <= cols; ++j) std::swap(m.at(r, j), m.at(p, j));
        Value pinv = m.at(r, c).inv();
        for (std::size_t j = c; j <= cols; ++j) m.at(r, j) = m.at(r, j) * pinv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Value f = m.at(i, c);
            for (std::size_t j = c; j <= cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!m.at(i, cols).is_zero()) return std::nullopt;  // inconsistent
    std::vector<Value> x(cols, field->zero());
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m.at(i, cols);
    // verify in case of free columns (we want an exact solution, any one)
    for (std::size_t i = 0; i < rows; ++i) {
        Value s = field->zero();
        for (std::size_t j = 0; j < cols; ++j) s = s + a.at(i, j) * x[j];
        if (s != b[i]) return std::nullopt;
    }
    return x;
}

IntMat int_identity(std::size_t n) {
    IntMat m(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    IntMat r(a.rows(), b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return r;
}

mpz_class int_det(const IntMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    mpz_class prev = 1;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return negate ? mpz_class(-m.at(n - 1, n - 1)) : m.at(n - 1, n - 1);
}

namespace {

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row[a] += q * row[b]
void add_row(IntMat& m, std::size_t a, std::size_t b, const mpz_class& q) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) += q * m.at(b, j);
}
void add_col(IntMat& m, std::size_t a, std::size_t b, const mpz_class& q) {
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) += q * m.at(i, b);
}
void negate_row(IntMat& m, std::size_t a) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    SmithResult res{int_identity(rows), a, int_identity(cols)};
    IntMat& d = res.d;
    IntMat& u = res.u;
    IntMat& v = res.v;
    const std::size_t t_max = std::min(rows, cols);

    for (std::size_t t = 0; t < t_max; ++t) {
        // find a nonzero pivot of smallest absolute value in the block
        std::size_t pi = t, pj = t;
        bool found = false;
        mpz_class best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (d.at(i, j) == 0) continue;
                mpz_class av = abs(d.at(i, j));
                if (!found || av < best) {
                    found = true;
                    best = av;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) {
            swap_rows(d, t, pi);
            swap_rows(u, t, pi);
        }
        if (pj != t) {
            swap_cols(d, t, pj);
            swap_cols(v, t, pj);
        }
        // clear row and column t; restart when a remainder shrinks the pivot
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d.at(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
                add_row(d, i, t, -q);
                add_row(u, i, t, -q);
                if (d.at(i, t) != 0) {
                    swap_rows(d, t, i);
                    swap_rows(u, t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d.at(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
                add_col(d, j, t, -q);
                add_col(v, j, t, -q);
                if (d.at(t, j) != 0) {
                    swap_cols(d, t, j);
                    swap_cols(v, t, j);
                    dirty = true;
                }
            }
        }
    }
    // enforce the divisibility chain
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t + 1 < t_max; ++t) {
            if (d.at(t, t) == 0 || d.at(t + 1, t + 1) % d.at(t, t) == 0) continue;
            // fold entry (t+1,t+1) into the pivot at (t,t) and re-reduce
            add_col(d, t, t + 1, 1);
            add_col(v, t, t + 1, 1);
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (std::size_t i = t + 1; i < d.rows(); ++i) {
                    if (d.at(i, t) == 0) continue;
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
                    add_row(d, i, t, -q);
                    add_row(u, i, t, -q);
                    if (d.at(i, t) != 0) {
                        swap_rows(d, t, i);
                        swap_rows(u, t, i);
                        dirty = true;
                    }
                }
                for (std::size_t j = t + 1; j < d.cols(); ++j) {
                    if (d.at(t, j) == 0) continue;
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
                    add_col(d, j, t, -q);
                    add_col(v, j, t, -q);
                    if (d.at(t, j) != 0) {
                        swap_cols(d, t, j);
                        swap_cols(v, t, j);
                        dirty = true;
                    }
                }
            }
            changed = true;
        }
    }
    // positive diagonal
    for (std::size_t t = 0; t < t_max; ++t)
        if (d.at(t, t) < 0) {
            negate_row(d, t);
            negate_row(u, t);
        }
    return res;
}

IntMat row_hnf(const IntMat& a) {
    IntMat m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // gcd-out the column below r using row operations
        for (std::size_t i = r + 1; i < rows; ++i) {
            while (m.at(i, c) != 0) {
                if (m.at(r, c) == 0) {
                    swap_rows(m, r, i);
                    continue;
                }
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), m.at(r, c).get_mpz_t());
                add_row(m, i, r, -q);
                if (m.at(i, c) != 0) swap_rows(m, r, i);
            }
        }
        if (m.at(r, c) == 0) continue;
        if (m.at(r, c) < 0) negate_row(m, r);
        // reduce the entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), m.at(r, c).get_mpz_t());
            if (q != 0) add_row(m, i, r, -q);
        }
        pivots.push_back(c);
        ++r;
    }
    IntMat out(r, cols, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

IntMat right_kernel(const IntMat& a) {
    SmithResult s = smith_normal_form(a);
    const std::size_t cols = a.cols();
    const std::size_t t_max = std::min(a.rows(), cols);
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < cols; ++j)
        if (j >= t_max || s.d.at(j, j) == 0) free_cols.push_back(j);
    IntMat k(cols, free_cols.size(), 0);
    for (std::size_t idx = 0; idx < free_cols.size(); ++idx)
        for (std::size_t i = 0; i < cols; ++i) k.at(i, idx) = s.v.at(i, free_cols[idx]);
    return k;
}

std::size_t int_rank(const IntMat& a) {
    return row_hnf(a).rows();
}

RatLattice::RatLattice(const IntMat& gens, const mpz_class& den) : basis_(gens), den_(den) {
    if (den_ <= 0) throw std::invalid_argument("lattice denominator must be positive");
    normalize();
}

void RatLattice::normalize() {
    basis_ = row_hnf(basis_);
    mpz_class g = den_;
    for (std::size_t i = 0; i < basis_.rows() && g != 1; ++i)
        for (std::size_t j = 0; j < basis_.cols() && g != 1; ++j)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), basis_.at(i, j).get_mpz_t());
    if (g > 1) {
        for (std::size_t i = 0; i < basis_.rows(); ++i)
            for (std::size_t j = 0; j < basis_.cols(); ++j)
                mpz_divexact(basis_.at(i, j).get_mpz_t(), basis_.at(i, j).get_mpz_t(),
                             g.get_mpz_t());
        den_ /= g;
    }
}

bool RatLattice::operator==(const RatLattice& o) const {
    return den_ == o.den_ && basis_ == o.basis_;
}

bool RatLattice::contains(const std::vector<mpq_class>& v) const {
    if (v.size() != basis_.cols()) return false;
    // scale the vector by den and reduce against the HNF rows
    std::vector<mpq_class> w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = v[j] * mpq_class(den_);
    std::size_t row = 0;
    for (std::size_t c = 0; c < basis_.cols(); ++c) {
        if (row < basis_.rows() && basis_.at(row, c) != 0 &&
            [&] {  // is c the pivot column of this row?
                for (std::size_t cc = 0; cc < c; ++cc)
                    if (basis_.at(row, cc) != 0) return false;
                return true;
            }()) {
            mpq_class q = w[c] / mpq_class(basis_.at(row, c));
            if (q.get_den() != 1) return false;
            for (std::size_t j = c; j < basis_.cols(); ++j)
                w[j] -= q * mpq_class(basis_.at(row, j));
            ++row;
        }
        if (w[c] != 0) return false;
    }
    return true;
}

bool RatLattice::contains_lattice(const RatLattice& o) const {
    for (std::size_t i = 0; i < o.basis_.rows(); ++i) {
        std::vector<mpq_class> v(o.basis_.cols());
        for (std::size_t j = 0; j < o.basis_.cols(); ++j)
            v[j] = mpq_class(o.basis_.at(i, j)) / mpq_class(o.den_);
        if (!contains(v)) return false;
    }
    return true;
}

RatLattice RatLattice::sum(const RatLattice& a, const RatLattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("lattice ambient dimension mismatch");
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
    mpz_class fa = l / a.den_, fb = l / b.den_;
    IntMat gens(a.rank() + b.rank(), a.ambient_dim(), 0);
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.ambient_dim(); ++j)
            gens.at(i, j) = a.basis_.at(i, j) * fa;
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < a.ambient_dim(); ++j)
            gens.at(a.rank() + i, j) = b.basis_.at(i, j) * fb;
    return RatLattice(gens, l);
}

RatLattice RatLattice::intersect(const RatLattice& a, const RatLattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("lattice ambient dimension mismatch");
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
    mpz_class fa = l / a.den_, fb = l / b.den_;
    // solve u*Ba*fa = v*Bb*fb via the kernel of [Ba^T*fa | -Bb^T*fb]
    const std::size_t n = a.ambient_dim();
    IntMat sys(n, a.rank() + b.rank(), 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < a.rank(); ++i) sys.at(j, i) = a.basis_.at(i, j) * fa;
        for (std::size_t i = 0; i < b.rank(); ++i)
            sys.at(j, a.rank() + i) = -b.basis_.at(i, j) * fb;
    }
    IntMat ker = right_kernel(sys);
    IntMat gens(ker.cols(), n, 0);
    for (std::size_t g = 0; g < ker.cols(); ++g)
        for (std::size_t j = 0; j < n; ++j) {
            mpz_class s = 0;
            for (std::size_t i = 0; i < a.rank(); ++i)
                s += ker.at(i, g) * a.basis_.at(i, j) * fa;
            gens.at(g, j) = s;
        }
    return RatLattice(gens, l);
}

}  // namespace formring
