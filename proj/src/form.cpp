#include "formring/form.hpp"

#include <mutex>
#include <map>

namespace formring {

bool BinaryForm::is_zero() const {
    for (const Value& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

std::string BinaryForm::str() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += (i ? "," : "") + coeffs[i].str();
    return s;
}

BinaryForm make_form(int n, RingPtr ring, std::vector<Value> coeffs, int twist) {
    if (n < 2) throw std::invalid_argument("binary form degree must be at least 2");
    if (coeffs.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("a degree n form needs exactly n+1 coefficients");
    for (const Value& c : coeffs)
        if (!c.ring()->same(*ring))
            throw std::invalid_argument("form coefficient from another context");
    return BinaryForm{n, std::move(ring), std::move(coeffs), twist};
}

BinaryForm make_int_form(int n, const std::vector<long>& coeffs, int twist) {
    RingPtr z = Ring::integers();
    std::vector<Value> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.push_back(z->from_int(v));
    return make_form(n, z, std::move(c), twist);
}

std::vector<std::string> universal_var_names(int n, const std::string& stem) {
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) names.push_back(stem + "_" + std::to_string(i));
    return names;
}

BinaryForm universal_form(int n, int twist) {
    RingPtr r = Ring::polynomials(universal_var_names(n));
    std::vector<Value> c;
    for (int i = 0; i <= n; ++i) c.push_back(r->var(static_cast<std::size_t>(i)));
    return make_form(n, r, std::move(c), twist);
}

GL2Matrix gl2(const RingPtr& ring, long a, long b, long c, long d) {
    GL2Matrix g{ring->from_int(a), ring->from_int(b), ring->from_int(c), ring->from_int(d),
                ring};
    if (!g.det().is_unit()) throw std::invalid_argument("matrix determinant is not a unit");
    return g;
}

GL2Matrix gl2_identity(const RingPtr& ring) { return gl2(ring, 1, 0, 0, 1); }
GL2Matrix gl2_swap(const RingPtr& ring) { return gl2(ring, 0, 1, 1, 0); }
GL2Matrix gl2_shear(const RingPtr& ring) { return gl2(ring, 1, 0, 1, 1); }

BinaryForm gl2_act(const BinaryForm& f, const GL2Matrix& g) {
    if (!f.ring->same(*g.ring)) throw std::invalid_argument("matrix from another context");
    const int n = f.n;
    const RingPtr& R = f.ring;
    // coefficient vectors of (a x + c y)^k, built incrementally
    std::vector<std::vector<Value>> xpow(static_cast<std::size_t>(n) + 1);
    std::vector<std::vector<Value>> ypow(static_cast<std::size_t>(n) + 1);
    xpow[0] = {R->one()};
    ypow[0] = {R->one()};
    auto step = [&](const std::vector<Value>& p, const Value& hi, const Value& lo) {
        std::vector<Value> q(p.size() + 1, R->zero());
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] = q[i] + p[i] * hi;
            q[i + 1] = q[i + 1] + p[i] * lo;
        }
        return q;
    };
    for (int k = 1; k <= n; ++k) {
        xpow[k] = step(xpow[k - 1], g.a, g.c);
        ypow[k] = step(ypow[k - 1], g.b, g.d);
    }
    std::vector<Value> out(static_cast<std::size_t>(n) + 1, R->zero());
    for (int i = 0; i <= n; ++i) {
        if (f.coeff(i).is_zero()) continue;
        const auto& xs = xpow[n - i];
        const auto& ys = ypow[i];
        for (std::size_t p = 0; p < xs.size(); ++p)
            for (std::size_t q = 0; q < ys.size(); ++q)
                out[p + q] = out[p + q] + f.coeff(i) * xs[p] * ys[q];
    }
    Value scale = R->one();
    Value det = g.det();
    if (f.twist >= 0)
        scale = det.pow(static_cast<unsigned>(f.twist));
    else
        scale = det.inv().pow(static_cast<unsigned>(-f.twist));
    for (Value& v : out) v = v * scale;
    return make_form(n, R, std::move(out), f.twist);
}

GL2Matrix gl2_compose(const GL2Matrix& first, const GL2Matrix& second) {
    if (!first.ring->same(*second.ring))
        throw std::invalid_argument("matrices from different contexts");
    // acting by `first` then `second` substitutes with the matrix product
    // M(second) * M(first) in the row presentation ((a, b), (c, d))
    const GL2Matrix &g1 = first, &g2 = second;
    GL2Matrix g{g2.a * g1.a + g2.b * g1.c, g2.a * g1.b + g2.b * g1.d,
                g2.c * g1.a + g2.d * g1.c, g2.c * g1.b + g2.d * g1.d, first.ring};
    return g;
}

bool is_primitive(const BinaryForm& f) {
    return content(f.coeffs, f.ring).is_unit;
}

namespace {

// Sylvester resultant of the dehomogenization and its derivative, divided
// by the leading coefficient and signed so that n=2 yields f_1^2-4f_0f_2.
Value disc_by_resultant(const std::vector<Value>& fc, const RingPtr& ring, int n) {
    const std::size_t size = 2 * static_cast<std::size_t>(n) - 1;
    ValueMat syl = value_mat(size, size, ring);
    for (std::size_t r = 0; r + 1 < static_cast<std::size_t>(n); ++r)
        for (int i = 0; i <= n; ++i) syl.at(r, r + static_cast<std::size_t>(i)) = fc[i];
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r)
        for (int i = 0; i < n; ++i)
            syl.at(static_cast<std::size_t>(n) - 1 + r, r + static_cast<std::size_t>(i)) =
                fc[i] * ring->from_int(n - i);
    Value res = value_det(syl, ring);
    Value d = res.exact_div(fc[0]);
    return (n % 4 == 2 || n % 4 == 3) ? -d : d;
}

std::map<int, Poly> disc_cache;
std::mutex disc_mutex;

}  // namespace

const Poly& universal_disc_poly(int n) {
    std::lock_guard<std::mutex> lock(disc_mutex);
    auto it = disc_cache.find(n);
    if (it != disc_cache.end()) return it->second;
    BinaryForm u = universal_form(n);
    Value d = disc_by_resultant(u.coeffs, u.ring, n);
    return disc_cache.emplace(n, d.as_poly()).first->second;
}

RingHom universal_specialization(const BinaryForm& f) {
    RingPtr u = Ring::polynomials(universal_var_names(f.n));
    return RingHom::specialize(u, f.ring, f.coeffs);
}

Value disc_form(const BinaryForm& f) {
    if (f.n < 2) throw std::invalid_argument("discriminant needs degree at least 2");
    if (f.ring->kind() == RingKind::IntegersMod) {
        // lift, compute over Z, reduce: the discriminant is polynomial in
        // the coefficients so this agrees with any direct computation
        std::vector<Value> lifted;
        RingPtr z = Ring::integers();
        for (const Value& c : f.coeffs) lifted.push_back(z->from_mpz(c.as_mpz()));
        Value d = disc_form(make_form(f.n, z, std::move(lifted), f.twist));
        return f.ring->from_mpz(d.as_mpz());
    }
    if (f.n <= 6 || f.ring->kind() == RingKind::Polynomials) {
        const Poly& p = universal_disc_poly(f.n);
        RingPtr u = Ring::polynomials(universal_var_names(f.n));
        return universal_specialization(f)(Value::make(u, p));
    }
    // large-degree concrete forms: evaluate the resultant directly after a
    // determinant-one move making f_0 nonzero
    if (f.is_zero()) return f.ring->zero();
    BinaryForm g = f;
    if (g.coeff(0).is_zero()) g = gl2_act(f, gl2_move_nonzero(f, false));
    return disc_by_resultant(g.coeffs, g.ring, g.n);
}

GL2Matrix gl2_move_nonzero(const BinaryForm& f, bool both_ends) {
    if (f.is_zero()) throw std::invalid_argument("the zero form cannot be moved");
    const RingPtr& R = f.ring;
    auto eval_at = [&](const BinaryForm& h, long t) {
        // h(1, t)
        Value tv = R->from_int(t);
        Value acc = R->zero();
        Value p = R->one();
        for (int i = 0; i <= h.n; ++i) {
            acc = acc + h.coeff(i) * p;
            p = p * tv;
        }
        return acc;
    };
    GL2Matrix move = gl2_identity(R);
    BinaryForm g = f;
    if (g.coeff(0).is_zero()) {
        for (long t = 1;; ++t) {
            if (!eval_at(f, t).is_zero()) {
                move = gl2(R, 1, t, 0, 1);
                break;
            }
            if (!eval_at(f, -t).is_zero()) {
                move = gl2(R, 1, -t, 0, 1);
                break;
            }
            if (t > f.n + 1) throw std::logic_error("nonzero form with too many roots");
        }
        g = gl2_act(f, move);
    }
    if (both_ends && g.coeff(g.n).is_zero()) {
        // g(x + s y, y) has last coefficient g(s, 1) and unchanged f_0
        auto eval_rev = [&](long s) {
            Value acc = R->zero();
            Value sv = R->from_int(s);
            Value p = R->one();
            for (int i = g.n; i >= 0; --i) {
                acc = acc + g.coeff(i) * p;
                p = p * sv;
            }
            return acc;
        };
        for (long s = 1;; ++s) {
            if (!eval_rev(s).is_zero()) {
                move = gl2_compose(move, gl2(R, 1, 0, s, 1));
                break;
            }
            if (!eval_rev(-s).is_zero()) {
                move = gl2_compose(move, gl2(R, 1, 0, -s, 1));
                break;
            }
            if (s > g.n + 1) throw std::logic_error("nonzero form with too many roots");
        }
    }
    return move;
}

}  // namespace formring
