#include "formring/pairs.hpp"

#include <random>

namespace formring {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

ValueMat canonical_quot(int n, const RingPtr& ring) {
    ValueMat q = value_mat(2, sz(n), ring);
    q.at(0, sz(n - 2)) = ring->one();
    q.at(1, sz(n - 1)) = ring->one();
    return q;
}

// Lift of the j-th symmetric-basis class through phi, as ring coordinates
// with zero identity component (the identity acts trivially after the
// quotient, so the lift choice is immaterial here).
std::vector<Value> phi_lift(const BinaryPair& p, int j) {
    const int n = p.n();
    std::vector<Value> r(sz(n), p.ring()->zero());
    for (int i = 1; i < n; ++i) r[sz(i)] = p.phi.at(sz(i - 1), sz(j - 1));
    return r;
}

// Action of a ring coordinate vector on a module coordinate vector.
std::vector<Value> act_coords(const BinaryPair& p, std::span<const Value> rc,
                              std::span<const Value> v) {
    const int n = p.n();
    std::vector<Value> out(sz(n), p.ring()->zero());
    for (int i = 0; i < n; ++i) {
        if (rc[sz(i)].is_zero()) continue;
        auto av = p.i.act(i, v);
        for (int k = 0; k < n; ++k) out[sz(k)] = out[sz(k)] + rc[sz(i)] * av[sz(k)];
    }
    return out;
}

std::pair<Value, Value> quot_image(const BinaryPair& p, std::span<const Value> v) {
    Value x = p.ring()->zero(), y = p.ring()->zero();
    for (std::size_t j = 0; j < v.size(); ++j) {
        x = x + p.quot.at(0, j) * v[j];
        y = y + p.quot.at(1, j) * v[j];
    }
    return {x, y};
}

}  // namespace

PairReport validate_pair(const BinaryPair& p) {
    PairReport rep;
    const int n = p.n();
    if (n < 3) {
        rep.failures.push_back("pair rank must be at least 3");
        return rep;
    }
    if (p.i.n != n || p.quot.rows() != 2 || p.quot.cols() != sz(n) ||
        p.phi.rows() != sz(n - 1) || p.phi.cols() != sz(n - 1)) {
        rep.failures.push_back("malformed dimensions");
        return rep;
    }
    if (!p.i.ring->same(*p.ring())) {
        rep.failures.push_back("module context differs from ring context");
        return rep;
    }

    for (auto& s : p.r.check_axioms()) rep.failures.push_back("ring " + s);
    for (auto& s : p.i.check_module_axiom(p.r)) rep.failures.push_back("module " + s);
    rep.axioms_ok = rep.failures.empty();

    if (!value_det(p.phi, p.ring()).is_unit())
        rep.failures.push_back("phi is not unimodular");
    for (int b = 0; b <= n - 3; ++b)
        if (!p.quot.at(0, sz(b)).is_zero() || !p.quot.at(1, sz(b)).is_zero())
            rep.failures.push_back("quotient does not kill kernel basis vector " +
                                   std::to_string(b + 1));
    ValueMat tail = value_mat(2, 2, p.ring());
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) tail.at(sz(r), sz(c)) = p.quot.at(sz(r), sz(n - 2 + c));
    if (!value_det(tail, p.ring()).is_unit())
        rep.failures.push_back("quotient lift columns are not a basis of Q");

    // coordinate criterion: the x coefficient of (phi sym_j) k_b is 1
    // exactly when j + b = n-2, the y coefficient exactly when j + b = n-1
    bool zo = true;
    for (int j = 1; j < n; ++j) {
        auto rj = phi_lift(p, j);
        for (int b = 0; b <= n - 3; ++b) {
            std::vector<Value> e(sz(n), p.ring()->zero());
            e[sz(b)] = p.ring()->one();
            auto [xc, yc] = quot_image(p, act_coords(p, rj, e));
            Value wantx = (j + b == n - 2) ? p.ring()->one() : p.ring()->zero();
            Value wanty = (j + b == n - 1) ? p.ring()->one() : p.ring()->zero();
            if (xc != wantx) {
                zo = false;
                rep.failures.push_back("coefficient criterion fails at (alpha_2, zeta_" +
                                       std::to_string(j) + ", beta_" + std::to_string(b + 1) +
                                       ")");
            }
            if (yc != wanty) {
                zo = false;
                rep.failures.push_back("coefficient criterion fails at (alpha_1, zeta_" +
                                       std::to_string(j) + ", beta_" + std::to_string(b + 1) +
                                       ")");
            }
        }
    }
    rep.zeroes_ones_ok = zo;

    if (p.ring()->kind() == RingKind::Integers) {
        rep.exact_sequence_checked = true;
        IntMat m1 = realexact_inclusion_matrix(n);
        ValueMat m2v = pair_rightmap_matrix(p);
        IntMat m2(m2v.rows(), m2v.cols(), 0);
        for (std::size_t i = 0; i < m2v.rows(); ++i)
            for (std::size_t j = 0; j < m2v.cols(); ++j) m2.at(i, j) = m2v.at(i, j).as_mpz();
        bool ok = true;
        IntMat comp = int_mul(m2, m1);
        for (std::size_t i = 0; i < comp.rows(); ++i)
            for (std::size_t j = 0; j < comp.cols(); ++j)
                if (comp.at(i, j) != 0) ok = false;
        if (!ok) rep.failures.push_back("exact sequence: composition is nonzero");
        SmithResult s1 = smith_normal_form(m1);
        for (std::size_t t = 0; t < sz(n); ++t)
            if (s1.d.at(t, t) != 1) {
                ok = false;
                rep.failures.push_back("exact sequence: left map is not a saturated injection");
                break;
            }
        SmithResult s2 = smith_normal_form(m2);
        std::size_t rank2 = 0;
        for (std::size_t t = 0; t < std::min(m2.rows(), m2.cols()); ++t)
            if (s2.d.at(t, t) != 0) ++rank2;
        bool surj = rank2 == sz(n - 2);
        if (surj)
            for (std::size_t t = 0; t < sz(n - 2); ++t)
                if (s2.d.at(t, t) != 1) surj = false;
        if (!surj) {
            ok = false;
            rep.failures.push_back("exact sequence: right map is not surjective");
        }
        if (sz(n) + rank2 != 2 * sz(n - 1)) {
            ok = false;
            rep.failures.push_back("exact sequence: ranks do not match in the middle");
        }
        rep.exact_sequence_ok = ok;
    }

    if (n == 3 && rep.axioms_ok && rep.zeroes_ones_ok) {
        try {
            cubic_module_witness(p);
        } catch (const std::exception& e) {
            rep.failures.push_back(std::string("cubic module witness: ") + e.what());
        }
    }

    rep.passed = rep.failures.empty();
    return rep;
}

ValueMat cubic_module_witness(const BinaryPair& p) {
    if (p.n() != 3) throw std::invalid_argument("witness applies to rank 3 pairs");
    const RingPtr& R = p.ring();
    ValueMat m = value_mat(3, 3, R);
    std::vector<Value> k1(3, R->zero());
    k1[0] = R->one();
    for (int i = 0; i < 3; ++i) {
        auto col = p.i.act(i, k1);
        for (int r = 0; r < 3; ++r) m.at(sz(r), sz(i)) = col[sz(r)];
    }
    if (!value_det(m, R).is_unit())
        throw std::runtime_error("module is not free over the ring");
    for (int i = 1; i < 3; ++i) {
        ValueMat lhs = value_mul(m, p.r.basis_mult_matrix(i));
        ValueMat rhs = value_mul(p.i.action_matrix(i), m);
        if (lhs != rhs) throw std::runtime_error("module witness fails to intertwine");
    }
    return m;
}

BasedPair normalize(const BinaryPair& input) {
    PairReport rep = validate_pair(input);
    if (!rep.passed) {
        std::string msg = "pair validation failed:";
        for (const auto& f : rep.failures) msg += " [" + f + "]";
        throw std::invalid_argument(msg);
    }
    BinaryPair p = input;
    const int n = p.n();
    const RingPtr& R = p.ring();

    // choose lifts mapping exactly to the chosen basis of Q
    {
        ValueMat tail = value_mat(2, 2, R);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) tail.at(sz(r), sz(c)) = p.quot.at(sz(r), sz(n - 2 + c));
        ValueMat tinv = value_inverse_unimodular(tail, R);
        ValueMat e = value_identity(sz(n), R);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) e.at(sz(n - 2 + r), sz(n - 2 + c)) = tinv.at(sz(r), sz(c));
        p.i = change_module_basis(p.i, e);
        p.quot = canonical_quot(n, R);
    }
    // absorb phi into the ring basis
    {
        ValueMat f = value_identity(sz(n), R);
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j) f.at(sz(i), sz(j)) = p.phi.at(sz(i - 1), sz(j - 1));
        for (int j = 1; j < n; ++j) f.at(0, sz(j)) = R->zero();
        p.r = change_ring_basis(p.r, f);
        p.i = change_acting_ring_basis(p.i, f);
        p.phi = value_identity(sz(n - 1), R);
    }

    auto adjust_lift = [&](int lift_col, int kernel_row, const Value& c) {
        // lift <- lift - c * k_{kernel_row+1}
        ValueMat e = value_identity(sz(n), R);
        e.at(sz(kernel_row), sz(lift_col)) = -c;
        p.i = change_module_basis(p.i, e);
    };

    // y(zeta_i x) = 0 for i >= 2, adjusting x by multiples of k_{n-i}
    for (int i = 2; i < n; ++i) {
        Value c = p.i.action_matrix(i).at(sz(n - 1), sz(n - 2));
        if (!c.is_zero()) adjust_lift(n - 2, n - 1 - i, c);
    }
    // x(zeta_i x) = 0 for i >= 1, adjusting zeta_i by multiples of 1
    {
        ValueMat f = value_identity(sz(n), R);
        bool any = false;
        for (int i = 1; i < n; ++i) {
            Value c = p.i.action_matrix(i).at(sz(n - 2), sz(n - 2));
            if (!c.is_zero()) {
                f.at(0, sz(i)) = -c;
                any = true;
            }
        }
        if (any) {
            p.r = change_ring_basis(p.r, f);
            p.i = change_acting_ring_basis(p.i, f);
        }
    }
    // y(zeta_i y) = 0 for i >= 2, adjusting y by multiples of k_{n-i}
    for (int i = 2; i < n; ++i) {
        Value c = p.i.action_matrix(i).at(sz(n - 1), sz(n - 1));
        if (!c.is_zero()) adjust_lift(n - 1, n - 1 - i, c);
    }

    BasedPair out;
    out.pair = p;
    out.a.assign(sz(n + 1), R->zero());
    out.a[0] = p.i.action_matrix(1).at(sz(n - 1), sz(n - 2));
    out.a[1] = p.i.action_matrix(1).at(sz(n - 1), sz(n - 1));
    for (int i = 1; i < n; ++i)
        out.a[sz(i + 1)] = -p.i.action_matrix(i).at(sz(n - 2), sz(n - 1));

    std::vector<std::string> why;
    if (!based_invariants_hold(out, &why)) {
        std::string msg = "normalization failed:";
        for (const auto& w : why) msg += " [" + w + "]";
        throw std::logic_error(msg);
    }
    return out;
}

bool based_invariants_hold(const BasedPair& p, std::vector<std::string>* why) {
    const int n = p.pair.n();
    const RingPtr& R = p.pair.ring();
    bool ok = true;
    auto fail = [&](const std::string& s) {
        ok = false;
        if (why) why->push_back(s);
    };
    if (p.a.size() != sz(n + 1)) {
        fail("coefficient count");
        return false;
    }
    if (p.pair.quot != canonical_quot(n, R)) fail("quotient map not in normalized shape");
    if (p.pair.phi != value_identity(sz(n - 1), R)) fail("phi not the identity");
    for (int i = 1; i < n; ++i) {
        ValueMat zi = p.pair.i.action_matrix(i);
        if (i >= 2 && !zi.at(sz(n - 1), sz(n - 2)).is_zero())
            fail("y(zeta_" + std::to_string(i) + " x) != 0");
        if (!zi.at(sz(n - 2), sz(n - 2)).is_zero())
            fail("x(zeta_" + std::to_string(i) + " x) != 0");
        if (i >= 2 && !zi.at(sz(n - 1), sz(n - 1)).is_zero())
            fail("y(zeta_" + std::to_string(i) + " y) != 0");
        if (zi.at(sz(n - 2), sz(n - 1)) != -p.a[sz(i + 1)])
            fail("x(zeta_" + std::to_string(i) + " y) != -a_" + std::to_string(i + 1));
    }
    if (p.pair.i.action_matrix(1).at(sz(n - 1), sz(n - 2)) != p.a[0]) fail("a_0 readoff");
    if (p.pair.i.action_matrix(1).at(sz(n - 1), sz(n - 1)) != p.a[1]) fail("a_1 readoff");
    return ok;
}

BasedPair form_to_pair(const BinaryForm& f) {
    if (f.n < 3) throw std::invalid_argument("pairs need degree at least 3");
    BinaryPair p;
    p.r = build_ring(f);
    p.i = build_module(f, f.n - 3);
    p.quot = canonical_quot(f.n, f.ring);
    p.phi = value_identity(sz(f.n - 1), f.ring);
    p.twist = f.twist;
    return normalize(p);
}

namespace {

// One evaluation of the degree-n map under explicit lift choices:
// xoff/yoff shift the x/y lifts by kernel vectors, roff shifts each
// zeta_i by a multiple of the identity.
std::vector<Value> form_values(const BasedPair& bp, const std::vector<Value>& xoff,
                               const std::vector<Value>& yoff,
                               const std::vector<Value>& roff) {
    const BinaryPair& p = bp.pair;
    const int n = p.n();
    const RingPtr& R = p.ring();
    std::vector<Value> xs(sz(n), R->zero()), ys(sz(n), R->zero());
    xs[sz(n - 2)] = R->one();
    ys[sz(n - 1)] = R->one();
    for (int b = 0; b <= n - 3; ++b) {
        xs[sz(b)] = xoff[sz(b)];
        ys[sz(b)] = yoff[sz(b)];
    }
    // apply zeta_i with its identity offset, then take the quotient image
    auto image = [&](int i, const std::vector<Value>& v) -> std::pair<Value, Value> {
        if (i < 1 || i > n - 1) return {R->zero(), R->zero()};
        auto av = p.i.act(i, v);
        const Value& off = roff[sz(i)];
        if (!off.is_zero())
            for (int k = 0; k < n; ++k) av[sz(k)] = av[sz(k)] + off * v[sz(k)];
        return quot_image(p, av);
    };
    std::vector<Value> a(sz(n + 1), R->zero());
    for (int k = 0; k <= n; ++k) {
        auto [x1, y1] = image(n - k + 1, xs);
        auto [x2, y2] = image(n - k, ys);
        auto [x3, y3] = image(n - k, xs);
        auto [x4, y4] = image(n - k - 1, ys);
        a[sz(n - k)] = y1 + y2 - x3 - x4;
    }
    return a;
}

}  // namespace

BinaryForm pair_to_form(const BasedPair& bp, unsigned long splitting_seed) {
    const int n = bp.pair.n();
    const RingPtr& R = bp.pair.ring();
    std::vector<Value> zero_off(sz(n), R->zero());
    std::vector<Value> a = form_values(bp, zero_off, zero_off, zero_off);

    // re-evaluate under a different splitting; the value is independent of
    // the choice, so a mismatch certifies invalid input
    std::mt19937_64 rng(splitting_seed);
    std::uniform_int_distribution<long> dist(-3, 3);
    std::vector<Value> xoff(sz(n), R->zero()), yoff(sz(n), R->zero()), roff(sz(n), R->zero());
    for (int b = 0; b <= n - 3; ++b) {
        xoff[sz(b)] = R->from_int(dist(rng));
        yoff[sz(b)] = R->from_int(dist(rng));
    }
    for (int i = 1; i < n; ++i) roff[sz(i)] = R->from_int(dist(rng));
    std::vector<Value> a2 = form_values(bp, xoff, yoff, roff);
    if (a != a2)
        throw std::runtime_error("form value depends on the splitting: invalid pair input");
    return make_form(n, R, std::move(a), bp.pair.twist);
}

BasedPair reconstruct_from_coefficients(std::span<const Value> a, int n, const RingPtr& ring) {
    if (n < 3) throw std::invalid_argument("pairs need degree at least 3");
    if (a.size() != sz(n + 1)) throw std::invalid_argument("need exactly n+1 coefficients");
    for (const Value& v : a)
        if (!v.ring()->same(*ring)) throw std::invalid_argument("coefficient context mismatch");

    // z[i] is the matrix of zeta_i on the module basis (k_1..k_{n-2}, x, y);
    // rows n-2 and n-1 are the x and y coordinate rows
    std::vector<ValueMat> z(sz(n));
    z[0] = value_identity(sz(n), ring);
    for (int i = 1; i < n; ++i) z[sz(i)] = value_mat(sz(n), sz(n), ring);

    for (int i = 1; i < n; ++i) {
        if (n - 2 - i >= 0 && n - 2 - i <= n - 3) z[sz(i)].at(sz(n - 2), sz(n - 2 - i)) = ring->one();
        if (n - 1 - i >= 0 && n - 1 - i <= n - 3) z[sz(i)].at(sz(n - 1), sz(n - 1 - i)) = ring->one();
        z[sz(i)].at(sz(n - 2), sz(n - 1)) = -a[sz(i + 1)];
        if (i == 1) {
            z[1].at(sz(n - 1), sz(n - 2)) = a[0];
            z[1].at(sz(n - 1), sz(n - 1)) = a[1];
        }
    }
    auto copy_row = [&](ValueMat& dst, int dst_row, const ValueMat& src, int src_row) {
        for (int c = 0; c < n; ++c) dst.at(sz(dst_row), sz(c)) = src.at(sz(src_row), sz(c));
    };
    // remaining rows of zeta_1 from the y-coordinate rows of the products
    // zeta_1 zeta_l = zeta_l zeta_1
    for (int l = 2; l < n; ++l)
        for (int c = 0; c < n; ++c)
            z[1].at(sz(n - 1 - l), sz(c)) = a[0] * z[sz(l)].at(sz(n - 2), sz(c)) +
                                            a[1] * z[sz(l)].at(sz(n - 1), sz(c));
    // alternate x-coordinate and y-coordinate commutator equations
    for (int i = 1; i <= n - 2; ++i) {
        for (int l = 1; l < n; ++l) {
            for (int c = 0; c < n; ++c) {
                Value v = ring->zero();
                if (n - 2 - l >= 0) v = z[sz(i)].at(sz(n - 2 - l), sz(c));
                v = v - a[sz(l + 1)] * z[sz(i)].at(sz(n - 1), sz(c)) +
                    a[sz(i + 1)] * z[sz(l)].at(sz(n - 1), sz(c));
                z[sz(l)].at(sz(n - 2 - i), sz(c)) = v;
            }
        }
        if (i + 1 < n)
            for (int l = 2; l < n; ++l) copy_row(z[sz(i + 1)], n - 1 - l, z[sz(l)], n - 2 - i);
    }

    // the multiplication table drops out of the distinguished entries
    MultTable r;
    r.n = n;
    r.ring = ring;
    r.c.assign(sz(n - 1), std::vector<std::vector<Value>>(sz(n - 1)));
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            ValueMat prod = value_mul(z[sz(i)], z[sz(j)]);
            ValueMat check = value_mul(z[sz(j)], z[sz(i)]);
            if (prod != check)
                throw std::runtime_error("reconstruction: action matrices fail to commute");
            std::vector<Value> coords(sz(n), ring->zero());
            for (int k = 1; k <= n - 2; ++k) coords[sz(k)] = prod.at(sz(n - 2), sz(n - 2 - k));
            coords[sz(n - 1)] = prod.at(sz(n - 1), 0);
            ValueMat residual = prod;
            for (int k = 1; k < n; ++k)
                residual = value_sub(residual, value_scale(z[sz(k)], coords[sz(k)]));
            coords[0] = residual.at(sz(n - 1), sz(n - 1));
            if (residual != value_scale(value_identity(sz(n), ring), coords[0]))
                throw std::runtime_error(
                    "reconstruction: product is not a combination of the actions");
            r.c[sz(i - 1)][sz(j - 1)] = std::move(coords);
        }

    ActionTable it;
    it.n = n;
    it.level = n - 3;
    it.twist = -1;
    it.ring = ring;
    it.d.assign(sz(n - 1), std::vector<std::vector<Value>>(sz(n)));
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Value> col(sz(n));
            for (int k = 0; k < n; ++k) col[sz(k)] = z[sz(i)].at(sz(k), sz(j));
            it.d[sz(i - 1)][sz(j)] = std::move(col);
        }

    BasedPair out;
    out.pair = BinaryPair{std::move(r), std::move(it), canonical_quot(n, ring),
                          value_identity(sz(n - 1), ring), -1};
    out.a.assign(a.begin(), a.end());
    return out;
}

IntMat realexact_inclusion_matrix(int n) {
    IntMat m(2 * sz(n - 1), sz(n), 0);
    for (int p = 0; p < n; ++p) {
        // sym(x^p y^(n-1-p)) = x (x) sym(x^(p-1) y^(n-1-p)) + y (x) sym(x^p y^(n-2-p))
        if (p >= 1) m.at(sz(p - 1), sz(p)) = 1;
        if (p <= n - 2) m.at(sz(n - 1 + p), sz(p)) = 1;
    }
    return m;
}

IntMat realexact_wedge_matrix(int n) {
    IntMat m(sz(n - 2), 2 * sz(n - 1), 0);
    for (int a = 0; a <= n - 2; ++a) {
        // x (x) sym(x^a y^(n-2-a)) -> -sym(x^a y^(n-3-a))
        if (a <= n - 3) m.at(sz(a), sz(a)) = -1;
        // y (x) sym(x^a y^(n-2-a)) -> +sym(x^(a-1) y^(n-2-a))
        if (a >= 1) m.at(sz(a - 1), sz(n - 1 + a)) = 1;
    }
    return m;
}

ValueMat pair_rightmap_matrix(const BinaryPair& p) {
    const int n = p.n();
    const RingPtr& R = p.ring();
    ValueMat m = value_mat(sz(n - 2), 2 * sz(n - 1), R);
    for (int a = 0; a <= n - 2; ++a) {
        int j = n - 1 - a;  // phi(sym(x^a y^(n-2-a))) corresponds to zeta_j
        auto rj = phi_lift(p, j);
        for (int b = 0; b <= n - 3; ++b) {
            std::vector<Value> e(sz(n), R->zero());
            e[sz(b)] = R->one();
            auto [xc, yc] = quot_image(p, act_coords(p, rj, e));
            // column (x, a): x ^ (xc x + yc y) = yc (x ^ y)
            m.at(sz(b), sz(a)) = yc;
            // column (y, a): y ^ (xc x + yc y) = -xc (x ^ y)
            m.at(sz(b), sz(n - 1 + a)) = -xc;
        }
    }
    return m;
}

}  // namespace formring
