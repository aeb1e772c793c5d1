#include "formring/theta.hpp"

#include <algorithm>
#include <random>

namespace formring {

ThetaRing::ThetaRing(const BinaryForm& f) : f_(f) {
    if (!f.ring->is_integral())
        throw std::invalid_argument("theta model needs an integral base context");
    if (f.coeff(0).is_zero())
        throw std::invalid_argument("theta model needs f_0 != 0 (move the form first)");
    field_ = f.ring->is_field() ? f.ring : Ring::fraction_field(f.ring);
    for (const Value& c : f.coeffs)
        fc_.push_back(f.ring->is_field() ? c : c.to_fraction_field());
}

ThetaElem ThetaRing::zero() const {
    return ThetaElem{std::vector<Value>(static_cast<std::size_t>(n()), field_->zero())};
}

ThetaElem ThetaRing::one() const {
    ThetaElem e = zero();
    e.c[0] = field_->one();
    return e;
}

ThetaElem ThetaRing::theta() const {
    ThetaElem e = zero();
    e.c[1] = field_->one();
    return e;
}

ThetaElem ThetaRing::from_base(const Value& v) const {
    ThetaElem e = zero();
    e.c[0] = f_.ring->is_field() ? v : v.to_fraction_field();
    return e;
}

ThetaElem ThetaRing::from_field(const Value& v) const {
    ThetaElem e = zero();
    e.c[0] = v;
    return e;
}

void ThetaRing::reduce(std::vector<Value>& c) const {
    // rewrite theta^m for m >= n via f_0 theta^n = -(f_1 theta^(n-1)+...+f_n)
    const std::size_t deg = static_cast<std::size_t>(n());
    Value inv0 = fc_[0].inv();
    for (std::size_t m = c.size(); m-- > deg;) {
        if (c[m].is_zero()) continue;
        Value t = c[m] * inv0;
        c[m] = field_->zero();
        for (std::size_t j = 1; j <= deg; ++j)
            c[m - j] = c[m - j] - t * fc_[j];
    }
    c.resize(deg, field_->zero());
}

ThetaElem ThetaRing::theta_pow(int e) const {
    if (e >= 0) {
        std::vector<Value> c(static_cast<std::size_t>(e) + 1, field_->zero());
        c[static_cast<std::size_t>(e)] = field_->one();
        reduce(c);
        return ThetaElem{std::move(c)};
    }
    ThetaElem ti = inverse(theta());
    ThetaElem r = one();
    for (int i = 0; i < -e; ++i) r = mul(r, ti);
    return r;
}

ThetaElem ThetaRing::zeta(int i) const {
    if (i < 0 || i >= n()) throw std::invalid_argument("zeta index out of range");
    if (i == 0) return one();
    ThetaElem e = zero();
    for (int t = 1; t <= i; ++t) e.c[static_cast<std::size_t>(t)] = fc_[static_cast<std::size_t>(i - t)];
    return e;
}

ThetaElem ThetaRing::nu(int i) const {
    if (i < 0 || i >= n()) throw std::invalid_argument("nu index out of range");
    if (i == 0) return from_field(fc_[0]);
    ThetaElem e = zeta(i);
    e.c[0] = e.c[0] + fc_[static_cast<std::size_t>(i)];
    return e;
}

ThetaElem ThetaRing::add(const ThetaElem& a, const ThetaElem& b) const {
    ThetaElem r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    return r;
}

ThetaElem ThetaRing::sub(const ThetaElem& a, const ThetaElem& b) const {
    ThetaElem r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    return r;
}

ThetaElem ThetaRing::neg(const ThetaElem& a) const {
    ThetaElem r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

ThetaElem ThetaRing::mul(const ThetaElem& a, const ThetaElem& b) const {
    const std::size_t deg = static_cast<std::size_t>(n());
    std::vector<Value> c(2 * deg - 1, field_->zero());
    for (std::size_t i = 0; i < deg; ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < deg; ++j) {
            if (b.c[j].is_zero()) continue;
            c[i + j] = c[i + j] + a.c[i] * b.c[j];
        }
    }
    reduce(c);
    return ThetaElem{std::move(c)};
}

ThetaElem ThetaRing::scale(const ThetaElem& a, const Value& s) const {
    ThetaElem r = a;
    for (auto& v : r.c) v = v * s;
    return r;
}

bool ThetaRing::is_zero(const ThetaElem& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](const Value& v) { return v.is_zero(); });
}

bool ThetaRing::eq(const ThetaElem& a, const ThetaElem& b) const {
    return a.c == b.c;
}

namespace {

// polynomial helpers over a field, coefficient vectors low-to-high
using FPoly = std::vector<Value>;

std::size_t fdeg(const FPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return i;
    return static_cast<std::size_t>(-1);  // the zero polynomial
}

bool fzero(const FPoly& p) { return fdeg(p) == static_cast<std::size_t>(-1); }

FPoly fsub_scaled(const FPoly& a, const FPoly& b, const Value& s, std::size_t shift,
                  const RingPtr& k) {
    FPoly r = a;
    if (r.size() < b.size() + shift) r.resize(b.size() + shift, k->zero());
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] = r[i + shift] - s * b[i];
    return r;
}

}  // namespace

ThetaElem ThetaRing::inverse(const ThetaElem& a) const {
    // extended Euclid for gcd(a, F) in K[t] with F the defining polynomial
    const RingPtr& k = field_;
    const std::size_t deg = static_cast<std::size_t>(n());
    FPoly r0(deg + 1), r1 = a.c;
    for (std::size_t i = 0; i <= deg; ++i) r0[i] = fc_[deg - i];
    FPoly s0{k->zero()}, s1{k->one()};  // coefficients of `a` in the combination
    while (!fzero(r1)) {
        std::size_t d0 = fdeg(r0), d1 = fdeg(r1);
        if (d0 == static_cast<std::size_t>(-1) || d0 < d1) {
            std::swap(r0, r1);
            std::swap(s0, s1);
            continue;
        }
        Value q = r0[d0] * r1[d1].inv();
        r0 = fsub_scaled(r0, r1, q, d0 - d1, k);
        s0 = fsub_scaled(s0, s1, q, d0 - d1, k);
        if (fdeg(r0) < d1 || fdeg(r0) == static_cast<std::size_t>(-1)) {
            std::swap(r0, r1);
            std::swap(s0, s1);
        }
    }
    std::size_t d = fdeg(r0);
    if (d != 0)
        throw std::invalid_argument("element is not invertible in Q_f");
    Value c = r0[0].inv();
    FPoly inv = s0;
    for (auto& v : inv) v = v * c;
    inv.resize(std::max<std::size_t>(inv.size(), deg), k->zero());
    reduce(inv);
    ThetaElem e{std::move(inv)};
    return e;
}

ThetaElem ThetaRing::zeta_theta_rewrite(int i, int m) const {
    if (i < 0 || i >= n() || m < 0 || m >= n())
        throw std::invalid_argument("rewrite index out of range");
    if (i == 0) return theta_pow(m);
    if (m == 0) return zeta(i);
    ThetaElem r = zero();
    if (m + i <= n() - 1) {
        // zeta_i theta^m = zeta_{m+i} - f_i theta^m - ... - f_{m+i-1} theta
        r = zeta(m + i);
        for (int s = i; s <= m + i - 1; ++s)
            r.c[static_cast<std::size_t>(m + i - s)] =
                r.c[static_cast<std::size_t>(m + i - s)] - fc_[static_cast<std::size_t>(s)];
    } else {
        // zeta_i theta^m = -(f_i theta^m + ... + f_n theta^(m+i-n))
        for (int s = i; s <= n(); ++s)
            r.c[static_cast<std::size_t>(m + i - s)] =
                r.c[static_cast<std::size_t>(m + i - s)] - fc_[static_cast<std::size_t>(s)];
    }
    return r;
}

std::vector<ThetaElem> ThetaRing::mixed_basis(int k) const {
    if (k < -1 || k > n() - 1) throw std::invalid_argument("module level out of range");
    std::vector<ThetaElem> b;
    if (k == -1) {
        for (int i = 0; i < n(); ++i) b.push_back(nu(i));
        return b;
    }
    for (int i = 0; i <= k; ++i) b.push_back(theta_pow(i));
    for (int i = k + 1; i < n(); ++i) b.push_back(zeta(i));
    return b;
}

std::vector<ThetaElem> ThetaRing::primed_basis(int k) const {
    if (k < -1 || k > n() - 1) throw std::invalid_argument("module level out of range");
    if (k == -1) return mixed_basis(-1);
    std::vector<ThetaElem> b;
    for (int i = 0; i <= k; ++i) b.push_back(theta_pow(i));
    for (int i = k + 1; i < n(); ++i) {
        ThetaElem e = zeta(i);
        e.c[0] = e.c[0] + fc_[static_cast<std::size_t>(i)];
        b.push_back(e);
    }
    return b;
}

std::vector<ThetaElem> ThetaRing::alt_basis(int k) const {
    if (k < -1 || k > n() - 1) throw std::invalid_argument("module level out of range");
    std::vector<ThetaElem> b;
    for (int i = 0; i <= k; ++i) b.push_back(theta_pow(i));
    // remaining elements theta^(k+1) * nu_{m-1} for m = 1..n-1-k
    for (int m = 1; m <= n() - 1 - k; ++m) {
        ThetaElem e = zero();
        for (int j = 0; j <= m - 1; ++j)
            e.c[static_cast<std::size_t>(k + m - j)] = fc_[static_cast<std::size_t>(j)];
        b.push_back(e);
    }
    return b;
}

std::optional<std::vector<Value>> ThetaRing::try_coords_in(std::span<const ThetaElem> basis,
                                                           const ThetaElem& a) const {
    const std::size_t deg = static_cast<std::size_t>(n());
    ValueMat m(deg, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < deg; ++i) m.at(i, j) = basis[j].c[i];
    auto sol = field_solve(m, a.c, field_);
    if (!sol) return std::nullopt;
    std::vector<Value> out;
    out.reserve(sol->size());
    for (const Value& v : *sol) {
        if (f_.ring->is_field()) {
            out.push_back(v);
            continue;
        }
        try {
            out.push_back(v.from_fraction_field());
        } catch (const NonDivisibleError&) {
            return std::nullopt;
        }
    }
    return out;
}

std::vector<Value> ThetaRing::coords_in(std::span<const ThetaElem> basis,
                                        const ThetaElem& a) const {
    auto c = try_coords_in(basis, a);
    if (!c) throw MembershipError("element lies outside the module spanned by the basis");
    return *c;
}

std::vector<Value> ThetaRing::to_mixed_basis(const ThetaElem& a, int k) const {
    auto b = mixed_basis(k);
    return coords_in(b, a);
}

std::optional<std::vector<Value>> ThetaRing::try_to_mixed_basis(const ThetaElem& a,
                                                                int k) const {
    auto b = mixed_basis(k);
    return try_coords_in(b, a);
}

ValueMat ThetaRing::mult_matrix(const ThetaElem& a) const {
    const std::size_t deg = static_cast<std::size_t>(n());
    ValueMat m(deg, deg);
    for (std::size_t j = 0; j < deg; ++j) {
        ThetaElem col = mul(a, theta_pow(static_cast<int>(j)));
        for (std::size_t i = 0; i < deg; ++i) m.at(i, j) = col.c[i];
    }
    return m;
}

namespace {

std::vector<mpq_class> elem_to_mpq(const ThetaElem& e) {
    std::vector<mpq_class> v;
    v.reserve(e.c.size());
    for (const Value& x : e.c) v.push_back(x.as_mpq());
    return v;
}

RatLattice lattice_from_elems(std::span<const ThetaElem> gens, std::size_t dim) {
    mpz_class den = 1;
    std::vector<std::vector<mpq_class>> rows;
    for (const ThetaElem& g : gens) {
        rows.push_back(elem_to_mpq(g));
        for (const auto& q : rows.back())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    }
    IntMat m(rows.size(), dim, 0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            mpq_class scaled = rows[i][j] * mpq_class(den);
            m.at(i, j) = scaled.get_num();
        }
    return RatLattice(m, den);
}

}  // namespace

QfSpan::QfSpan(const ThetaRing& t, std::span<const ThetaElem> gens) {
    if (t.base()->kind() != RingKind::Integers)
        throw std::invalid_argument(
            "span canonicalization works over the integer context; use the "
            "specialization comparison over polynomial bases");
    lat_ = lattice_from_elems(gens, static_cast<std::size_t>(t.n()));
}

bool QfSpan::contains(const ThetaRing& t, const ThetaElem& e) const {
    (void)t;
    return lat_.contains(elem_to_mpq(e));
}

std::vector<ThetaElem> QfSpan::basis_elements(const ThetaRing& t) const {
    std::vector<ThetaElem> out;
    for (std::size_t i = 0; i < lat_.basis().rows(); ++i) {
        ThetaElem e = t.zero();
        for (std::size_t j = 0; j < lat_.basis().cols(); ++j) {
            mpq_class q(lat_.basis().at(i, j));
            q /= mpq_class(lat_.den());
            e.c[j] = Value::make(t.field(), q);
        }
        out.push_back(std::move(e));
    }
    return out;
}

QfSpan ring_span(const ThetaRing& t) { return module_span(t, 0); }

QfSpan module_span(const ThetaRing& t, int k) {
    auto b = t.mixed_basis(k);
    return QfSpan(t, b);
}

QfSpan ideal_product_span(const ThetaRing& t, std::span<const ThetaElem> a,
                          std::span<const ThetaElem> b) {
    std::vector<ThetaElem> prods;
    prods.reserve(a.size() * b.size());
    for (const ThetaElem& x : a)
        for (const ThetaElem& y : b) prods.push_back(t.mul(x, y));
    return QfSpan(t, prods);
}

QfSpan colon_span(const ThetaRing& t, const QfSpan& a, std::span<const ThetaElem> bgens) {
    const std::size_t deg = static_cast<std::size_t>(t.n());
    // start from (1/b*) A for some non-zero-divisor generator b*
    const ThetaElem* pivot = nullptr;
    ThetaElem pivot_inv = t.zero();
    for (const ThetaElem& b : bgens) {
        try {
            pivot_inv = t.inverse(b);
            pivot = &b;
            break;
        } catch (const std::invalid_argument&) {
        }
    }
    if (!pivot)
        throw std::invalid_argument("colon module needs an invertible generator on the right");
    std::vector<ThetaElem> start;
    for (const ThetaElem& e : a.basis_elements(t)) start.push_back(t.mul(e, pivot_inv));
    RatLattice cur = lattice_from_elems(start, deg);

    for (const ThetaElem& b : bgens) {
        // restrict to {x in cur : b*x in A}
        ValueMat mb = t.mult_matrix(b);
        // rational matrices: P = mb * cur_basis^T, Q = A_basis^T
        std::size_t rc = cur.rank(), ra = a.lattice().rank();
        std::vector<std::vector<mpq_class>> p(deg, std::vector<mpq_class>(rc));
        for (std::size_t i = 0; i < deg; ++i)
            for (std::size_t j = 0; j < rc; ++j) {
                mpq_class s = 0;
                for (std::size_t l = 0; l < deg; ++l) {
                    mpq_class base(cur.basis().at(j, l));
                    base /= mpq_class(cur.den());
                    s += mb.at(i, l).as_mpq() * base;
                }
                p[i][j] = s;
            }
        mpz_class den = 1;
        for (const auto& row : p)
            for (const auto& q : row)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.lattice().den().get_mpz_t());
        IntMat sys(deg, rc + ra, 0);
        for (std::size_t i = 0; i < deg; ++i) {
            for (std::size_t j = 0; j < rc; ++j) {
                mpq_class scaled = p[i][j] * mpq_class(den);
                sys.at(i, j) = scaled.get_num();
            }
            for (std::size_t j = 0; j < ra; ++j) {
                mpq_class scaled(a.lattice().basis().at(j, i));
                scaled = scaled * mpq_class(den) / mpq_class(a.lattice().den());
                sys.at(i, rc + j) = -scaled.get_num();
            }
        }
        IntMat ker = right_kernel(sys);
        IntMat gens(ker.cols(), deg, 0);
        for (std::size_t g = 0; g < ker.cols(); ++g)
            for (std::size_t l = 0; l < deg; ++l) {
                mpz_class s = 0;
                for (std::size_t j = 0; j < rc; ++j)
                    s += ker.at(j, g) * cur.basis().at(j, l);
                gens.at(g, l) = s;
            }
        cur = RatLattice(gens, cur.den());
    }
    std::vector<ThetaElem> elems;
    for (std::size_t i = 0; i < cur.basis().rows(); ++i) {
        ThetaElem e = t.zero();
        for (std::size_t j = 0; j < deg; ++j) {
            mpq_class q(cur.basis().at(i, j));
            q /= mpq_class(cur.den());
            e.c[j] = Value::make(t.field(), q);
        }
        elems.push_back(std::move(e));
    }
    return QfSpan(t, elems);
}

namespace {

// One window of the chart-image intersection: ambient basis is the set of
// monomials x^a y^(k-a) for a in [lo, hi]; both chart images are spanned by
// their visible monomials together with all multiples of f supported in the
// window. Everything is an exact integer kernel computation.
RatLattice sections_window(const BinaryForm& f, int k, int lo, int hi, const ThetaRing& t) {
    const int n = f.n;
    const int dim = hi - lo + 1;
    auto col_of = [&](int a) { return static_cast<std::size_t>(a - lo); };

    std::vector<std::vector<mpz_class>> acols, bcols;
    for (int a = std::max(0, lo); a <= hi; ++a) {
        std::vector<mpz_class> col(static_cast<std::size_t>(dim), 0);
        col[col_of(a)] = 1;
        acols.push_back(std::move(col));
    }
    for (int a = lo; a <= std::min(k, hi); ++a) {
        std::vector<mpz_class> col(static_cast<std::size_t>(dim), 0);
        col[col_of(a)] = 1;
        bcols.push_back(std::move(col));
    }
    for (int c = lo; c + n <= hi; ++c) {
        std::vector<mpz_class> col(static_cast<std::size_t>(dim), 0);
        for (int j = 0; j <= n; ++j) col[col_of(c + n - j)] = f.coeff(j).as_mpz();
        acols.push_back(col);
        bcols.push_back(std::move(col));
    }

    IntMat sys(static_cast<std::size_t>(dim), acols.size() + bcols.size(), 0);
    for (std::size_t j = 0; j < acols.size(); ++j)
        for (int i = 0; i < dim; ++i) sys.at(static_cast<std::size_t>(i), j) = acols[j][static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < bcols.size(); ++j)
        for (int i = 0; i < dim; ++i)
            sys.at(static_cast<std::size_t>(i), acols.size() + j) = -bcols[j][static_cast<std::size_t>(i)];
    IntMat ker = right_kernel(sys);

    // intersection elements, mapped into Q_f via x -> theta, y -> 1
    std::vector<ThetaElem> gens;
    std::vector<ThetaElem> powers;
    for (int a = lo; a <= hi; ++a) powers.push_back(t.theta_pow(a));
    for (std::size_t g = 0; g < ker.cols(); ++g) {
        std::vector<mpz_class> vec(static_cast<std::size_t>(dim), 0);
        for (std::size_t j = 0; j < acols.size(); ++j)
            for (int i = 0; i < dim; ++i)
                vec[static_cast<std::size_t>(i)] += ker.at(j, g) * acols[j][static_cast<std::size_t>(i)];
        ThetaElem e = t.zero();
        for (int i = 0; i < dim; ++i) {
            if (vec[static_cast<std::size_t>(i)] == 0) continue;
            Value s = Value::make(t.field(), mpq_class(vec[static_cast<std::size_t>(i)]));
            e = t.add(e, t.scale(powers[static_cast<std::size_t>(i)], s));
        }
        gens.push_back(std::move(e));
    }
    if (gens.empty()) return RatLattice(IntMat(0, static_cast<std::size_t>(n), 0), 1);
    return QfSpan(t, gens).lattice();
}

}  // namespace

std::vector<ThetaElem> global_sections(const BinaryForm& f, int k) {
    if (f.ring->kind() != RingKind::Integers)
        throw std::invalid_argument("global sections are computed over the integer context");
    if (k < -1 || k > f.n - 1) throw std::invalid_argument("level k out of range");
    if (f.coeff(0).is_zero() || f.coeff(f.n).is_zero())
        throw std::invalid_argument(
            "global sections need f_0 and f_n nonzero; apply a coordinate move first");
    ThetaRing t(f);
    int pad = 2;
    RatLattice prev = sections_window(f, k, -(f.n + pad), f.n + pad, t);
    for (int round = 0; round < 8; ++round) {
        pad += 2;
        RatLattice next = sections_window(f, k, -(f.n + pad), f.n + pad, t);
        if (next == prev && prev.rank() == static_cast<std::size_t>(f.n)) {
            std::vector<ThetaElem> gens;
            for (std::size_t i = 0; i < prev.basis().rows(); ++i) {
                ThetaElem e = t.zero();
                for (std::size_t j = 0; j < prev.basis().cols(); ++j) {
                    mpq_class q(prev.basis().at(i, j));
                    q /= mpq_class(prev.den());
                    e.c[j] = Value::make(t.field(), q);
                }
                gens.push_back(std::move(e));
            }
            return gens;
        }
        prev = next;
    }
    throw std::logic_error("global sections window failed to stabilize");
}

ThetaElem specialize_elem(const ThetaRing& src, const ThetaRing& dst, const RingHom& base_hom,
                          const ThetaElem& e) {
    ThetaElem out = dst.zero();
    for (std::size_t i = 0; i < e.c.size(); ++i) {
        const PolyFrac& pf = e.c[i].as_polyfrac();
        RingPtr srcbase = src.base();
        Value num = base_hom(Value::make(srcbase, pf.num));
        Value den = base_hom(Value::make(srcbase, pf.den));
        if (den.is_zero())
            throw std::invalid_argument("specialization hits a denominator zero");
        out.c[i] = num.to_fraction_field() * den.to_fraction_field().inv();
    }
    return out;
}

bool spans_equal_by_specialization(const ThetaRing& universal, std::span<const ThetaElem> a,
                                   std::span<const ThetaElem> b, int trials,
                                   unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-20, 20);
    const int n = universal.n();
    RingPtr z = Ring::integers();
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<Value> images;
        for (int i = 0; i <= n; ++i) {
            long v = dist(rng);
            if (i == 0)
                while (v == 0) v = dist(rng);
            images.push_back(z->from_int(v));
        }
        RingHom hom = RingHom::specialize(universal.base(), z, images);
        BinaryForm fc = make_form(n, z, images, universal.form().twist);
        ThetaRing tc(fc);
        std::vector<ThetaElem> sa, sb;
        for (const ThetaElem& e : a) sa.push_back(specialize_elem(universal, tc, hom, e));
        for (const ThetaElem& e : b) sb.push_back(specialize_elem(universal, tc, hom, e));
        if (QfSpan(tc, sa) != QfSpan(tc, sb)) return false;
    }
    return true;
}

}  // namespace formring
