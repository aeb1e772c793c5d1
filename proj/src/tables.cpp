#include "formring/tables.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace formring {

const std::vector<Value>& MultTable::product(int i, int j) const {
    return c.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1));
}

std::vector<Value> MultTable::mult_coords(std::span<const Value> a,
                                          std::span<const Value> b) const {
    std::vector<Value> out(static_cast<std::size_t>(n), ring->zero());
    for (int i = 0; i < n; ++i) {
        if (a[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (b[static_cast<std::size_t>(j)].is_zero()) continue;
            Value coeff = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
            if (i == 0 || j == 0) {
                std::size_t idx = static_cast<std::size_t>(i == 0 ? j : i);
                out[idx] = out[idx] + coeff;
            } else {
                const auto& prod = product(i, j);
                for (int k = 0; k < n; ++k)
                    out[static_cast<std::size_t>(k)] =
                        out[static_cast<std::size_t>(k)] + coeff * prod[static_cast<std::size_t>(k)];
            }
        }
    }
    return out;
}

ValueMat MultTable::mult_matrix(std::span<const Value> coords) const {
    ValueMat m = value_mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ring);
    for (int j = 0; j < n; ++j) {
        std::vector<Value> e(static_cast<std::size_t>(n), ring->zero());
        e[static_cast<std::size_t>(j)] = ring->one();
        auto col = mult_coords(coords, e);
        for (int i = 0; i < n; ++i) m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = col[static_cast<std::size_t>(i)];
    }
    return m;
}

ValueMat MultTable::basis_mult_matrix(int i) const {
    std::vector<Value> e(static_cast<std::size_t>(n), ring->zero());
    e[static_cast<std::size_t>(i)] = ring->one();
    return mult_matrix(e);
}

std::vector<std::string> MultTable::check_axioms() const {
    std::vector<std::string> bad;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (product(i, j) != product(j, i))
                bad.push_back("commutativity fails at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    auto basis_vec = [&](int i) {
        std::vector<Value> e(static_cast<std::size_t>(n), ring->zero());
        e[static_cast<std::size_t>(i)] = ring->one();
        return e;
    };
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            for (int k = 1; k < n; ++k) {
                auto left = mult_coords(product(i, j), basis_vec(k));
                auto right = mult_coords(basis_vec(i), product(j, k));
                if (left != right)
                    bad.push_back("associativity fails at (" + std::to_string(i) + "," +
                                  std::to_string(j) + "," + std::to_string(k) + ")");
            }
    return bad;
}

bool MultTable::operator==(const MultTable& o) const {
    return n == o.n && ring->same(*o.ring) && c == o.c;
}

ValueMat ActionTable::action_matrix(int i) const {
    if (i == 0) return value_identity(static_cast<std::size_t>(n), ring);
    ValueMat m = value_mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ring);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) =
                d.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(k));
    return m;
}

std::vector<Value> ActionTable::act(int i, std::span<const Value> v) const {
    std::vector<Value> out(static_cast<std::size_t>(n), ring->zero());
    if (i == 0) {
        for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)];
        return out;
    }
    for (int j = 0; j < n; ++j) {
        if (v[static_cast<std::size_t>(j)].is_zero()) continue;
        const auto& col = d.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j));
        for (int k = 0; k < n; ++k)
            out[static_cast<std::size_t>(k)] =
                out[static_cast<std::size_t>(k)] + v[static_cast<std::size_t>(j)] * col[static_cast<std::size_t>(k)];
    }
    return out;
}

std::vector<std::string> ActionTable::check_module_axiom(const MultTable& r) const {
    std::vector<std::string> bad;
    for (int i = 1; i < n; ++i) {
        ValueMat ai = action_matrix(i);
        for (int j = 1; j < n; ++j) {
            ValueMat prod_action = value_mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ring);
            const auto& pc = r.product(i, j);
            prod_action = value_scale(value_identity(static_cast<std::size_t>(n), ring), pc[0]);
            for (int k = 1; k < n; ++k)
                prod_action = value_add(prod_action,
                                        value_scale(action_matrix(k), pc[static_cast<std::size_t>(k)]));
            ValueMat lhs = value_mul(ai, action_matrix(j));
            if (lhs != prod_action)
                bad.push_back("module axiom fails at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
        }
    }
    return bad;
}

bool ActionTable::operator==(const ActionTable& o) const {
    return n == o.n && level == o.level && twist == o.twist && ring->same(*o.ring) && d == o.d;
}

MultTable build_ring(const BinaryForm& f) {
    const int n = f.n;
    MultTable t;
    t.n = n;
    t.ring = f.ring;
    t.c.assign(static_cast<std::size_t>(n - 1),
               std::vector<std::vector<Value>>(static_cast<std::size_t>(n - 1),
                                               std::vector<Value>(static_cast<std::size_t>(n), f.ring->zero())));
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            auto& coords = t.c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            for (int k = std::max(i + j - n, 1); k <= i; ++k)
                coords[static_cast<std::size_t>(k)] =
                    coords[static_cast<std::size_t>(k)] - f.coeff(i + j - k);
            for (int k = j + 1; k <= std::min(i + j, n); ++k) {
                if (k == n)  // zeta_n = -f_n contributes to the identity coordinate
                    coords[0] = coords[0] - f.coeff(i + j - n) * f.coeff(n);
                else
                    coords[static_cast<std::size_t>(k)] =
                        coords[static_cast<std::size_t>(k)] + f.coeff(i + j - k);
            }
        }
    return t;
}

namespace {

std::map<std::tuple<int, int, bool>, ActionTable> module_cache;
std::map<std::pair<int, int>, ValueMat> pairing_cache;
std::map<int, ValueMat> invdiff_cache;
std::mutex table_mutex;

ActionTable universal_module_table(int n, int k, bool primed) {
    std::lock_guard<std::mutex> lock(table_mutex);
    auto key = std::make_tuple(n, k, primed);
    auto it = module_cache.find(key);
    if (it != module_cache.end()) return it->second;

    BinaryForm u = universal_form(n);
    ThetaRing t(u);
    auto basis = primed ? t.primed_basis(k) : t.mixed_basis(k);
    ActionTable at;
    at.n = n;
    at.level = k;
    at.twist = u.twist;
    at.ring = u.ring;
    at.d.assign(static_cast<std::size_t>(n - 1),
                std::vector<std::vector<Value>>(static_cast<std::size_t>(n)));
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ThetaElem prod = t.mul(t.zeta(i), basis[static_cast<std::size_t>(j)]);
            at.d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] =
                t.coords_in(basis, prod);
        }
    return module_cache.emplace(key, std::move(at)).first->second;
}

}  // namespace

ActionTable build_module(const BinaryForm& f, int k) {
    if (k < -1 || k > f.n - 1) throw std::invalid_argument("module level out of range");
    ActionTable t = specialize_table(universal_module_table(f.n, k, false),
                                     universal_specialization(f));
    t.twist = f.twist;
    return t;
}

ActionTable build_primed_module(const BinaryForm& f, int k) {
    if (k < -1 || k > f.n - 1) throw std::invalid_argument("module level out of range");
    ActionTable t = specialize_table(universal_module_table(f.n, k, true),
                                     universal_specialization(f));
    t.twist = f.twist;
    return t;
}

MultTable specialize_table(const MultTable& t, const RingHom& hom) {
    if (!t.ring->same(*hom.src()))
        throw std::invalid_argument("homomorphism source does not match table context");
    MultTable o;
    o.n = t.n;
    o.ring = hom.dst();
    o.c = t.c;
    for (auto& row : o.c)
        for (auto& cell : row)
            for (auto& v : cell) v = hom(v);
    return o;
}

ActionTable specialize_table(const ActionTable& t, const RingHom& hom) {
    if (!t.ring->same(*hom.src()))
        throw std::invalid_argument("homomorphism source does not match table context");
    ActionTable o = t;
    o.ring = hom.dst();
    for (auto& row : o.d)
        for (auto& cell : row)
            for (auto& v : cell) v = hom(v);
    return o;
}

Value ring_disc(const MultTable& r) {
    const int n = r.n;
    std::vector<Value> tr(static_cast<std::size_t>(n));
    tr[0] = r.ring->from_int(n);
    for (int k = 1; k < n; ++k) tr[static_cast<std::size_t>(k)] = value_trace(r.basis_mult_matrix(k));
    auto trace_of = [&](std::span<const Value> coords) {
        Value s = r.ring->zero();
        for (int k = 0; k < n; ++k) s = s + coords[static_cast<std::size_t>(k)] * tr[static_cast<std::size_t>(k)];
        return s;
    };
    ValueMat gram = value_mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n), r.ring);
    for (int i = 0; i < n; ++i) {
        std::vector<Value> ei(static_cast<std::size_t>(n), r.ring->zero());
        ei[static_cast<std::size_t>(i)] = r.ring->one();
        for (int j = 0; j < n; ++j) {
            std::vector<Value> ej(static_cast<std::size_t>(n), r.ring->zero());
            ej[static_cast<std::size_t>(j)] = r.ring->one();
            gram.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                trace_of(r.mult_coords(ei, ej));
        }
    }
    return value_det(gram, r.ring);
}

namespace {

ValueMat universal_pairing_matrix(int n, int k) {
    std::lock_guard<std::mutex> lock(table_mutex);
    auto key = std::make_pair(n, k);
    auto it = pairing_cache.find(key);
    if (it != pairing_cache.end()) return it->second;
    BinaryForm u = universal_form(n);
    ThetaRing t(u);
    auto ub = t.primed_basis(k);
    auto vb = t.alt_basis(n - 2 - k);
    std::reverse(vb.begin(), vb.end());
    ValueMat m = value_mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n), u.ring);
    for (std::size_t i = 0; i < ub.size(); ++i)
        for (std::size_t j = 0; j < vb.size(); ++j) {
            auto coords = t.to_mixed_basis(t.mul(ub[i], vb[j]), n - 2);
            m.at(i, j) = coords[static_cast<std::size_t>(n - 1)];
        }
    return pairing_cache.emplace(key, std::move(m)).first->second;
}

}  // namespace

ValueMat dual_pairing_matrix(const BinaryForm& f, int k) {
    if (k < -1 || k > f.n - 1) throw std::invalid_argument("module level out of range");
    if (f.ring->is_integral() && !f.coeff(0).is_zero()) {
        ThetaRing t(f);
        auto ub = t.primed_basis(k);
        auto vb = t.alt_basis(f.n - 2 - k);
        std::reverse(vb.begin(), vb.end());
        ValueMat m = value_mat(static_cast<std::size_t>(f.n), static_cast<std::size_t>(f.n), f.ring);
        for (std::size_t i = 0; i < ub.size(); ++i)
            for (std::size_t j = 0; j < vb.size(); ++j) {
                auto coords = t.to_mixed_basis(t.mul(ub[i], vb[j]), f.n - 2);
                m.at(i, j) = coords[static_cast<std::size_t>(f.n - 1)];
            }
        return m;
    }
    ValueMat m = universal_pairing_matrix(f.n, k);
    RingHom hom = universal_specialization(f);
    ValueMat out = value_mat(m.rows(), m.cols(), f.ring);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = hom(m.at(i, j));
    return out;
}

ValueMat inverse_different_map(const BinaryForm& f) {
    ValueMat m;
    {
        std::lock_guard<std::mutex> lock(table_mutex);
        auto it = invdiff_cache.find(f.n);
        if (it == invdiff_cache.end()) {
            BinaryForm u = universal_form(f.n);
            ThetaRing t(u);
            auto w = t.primed_basis(f.n - 2);
            ValueMat um = value_mat(static_cast<std::size_t>(f.n), static_cast<std::size_t>(f.n), u.ring);
            for (int a = 0; a < f.n; ++a)
                for (std::size_t b = 0; b < w.size(); ++b) {
                    auto coords = t.to_mixed_basis(t.mul(t.zeta(a), w[b]), f.n - 2);
                    um.at(static_cast<std::size_t>(a), b) = coords[static_cast<std::size_t>(f.n - 1)];
                }
            it = invdiff_cache.emplace(f.n, std::move(um)).first;
        }
        m = it->second;
    }
    RingHom hom = universal_specialization(f);
    ValueMat out = value_mat(m.rows(), m.cols(), f.ring);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = hom(m.at(i, j));
    return out;
}

namespace {

// Detour through a determinant-one move when f_0 = 0; the module classes
// and primitivity are invariant under it.
BinaryForm moved_nonzero_f0(const BinaryForm& f) {
    if (!f.coeff(0).is_zero()) return f;
    return gl2_act(f, gl2_move_nonzero(f, false));
}

}  // namespace

bool is_invertible_family(const BinaryForm& f) {
    if (f.ring->kind() != RingKind::Integers)
        throw std::invalid_argument("invertibility decision runs over the integer context");
    if (f.is_zero()) throw std::invalid_argument("the zero form has no invertibility test");
    BinaryForm g = moved_nonzero_f0(f);
    ThetaRing t(g);
    auto a = t.mixed_basis(1);
    auto b = t.mixed_basis(-1);
    return ideal_product_span(t, a, b) == ring_span(t);
}

bool is_gorenstein(const BinaryForm& f) {
    if (f.n < 3) throw std::invalid_argument("the Gorenstein test requires degree at least 3");
    if (f.ring->kind() != RingKind::Integers)
        throw std::invalid_argument("the Gorenstein test runs over the integer context");
    if (f.is_zero()) throw std::invalid_argument("the zero form has no Gorenstein test");
    BinaryForm g = moved_nonzero_f0(f);
    ThetaRing t(g);
    QfSpan r = ring_span(t);
    QfSpan j = module_span(t, g.n - 2);
    auto jb = j.basis_elements(t);
    QfSpan jinv = colon_span(t, r, jb);
    auto jib = jinv.basis_elements(t);
    return ideal_product_span(t, jb, jib) == r;
}

bool module_power_matches_level(const BinaryForm& f, int k) {
    if (k < 1 || k > f.n - 1) throw std::invalid_argument("module level out of range");
    BinaryForm g = moved_nonzero_f0(f);
    ThetaRing t(g);
    auto gens = t.mixed_basis(1);
    QfSpan power(t, gens);
    for (int i = 1; i < k; ++i) {
        auto cur = power.basis_elements(t);
        power = ideal_product_span(t, cur, gens);
    }
    return power == module_span(t, k);
}

GL2Witness gl2_invariance_witness(const BinaryForm& f, const GL2Matrix& g) {
    if (!f.ring->is_integral())
        throw std::invalid_argument("the invariance witness needs an integral context");
    if (f.is_zero()) throw std::invalid_argument("the zero form has no invariance witness");
    BinaryForm fp = gl2_act(f, g);
    if (f.coeff(0).is_zero() || fp.coeff(0).is_zero())
        throw std::invalid_argument(
            "invariance witness needs f_0 nonzero on both sides; move the form first");
    ThetaRing t(f);
    Value ak = g.a.to_fraction_field(), bk = g.b.to_fraction_field();
    Value ck = g.c.to_fraction_field(), dk = g.d.to_fraction_field();
    // image of the new root: (d*theta - c) / (a - b*theta)
    ThetaElem denom = t.sub(t.from_field(ak), t.scale(t.theta(), bk));
    ThetaElem tau;
    try {
        tau = t.mul(t.sub(t.scale(t.theta(), dk), t.from_field(ck)), t.inverse(denom));
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("singular intermediate in the invariance witness");
    }

    const int n = f.n;
    auto tau_pow = [&](int e) {
        ThetaElem r = t.one();
        for (int i = 0; i < e; ++i) r = t.mul(r, tau);
        return r;
    };
    auto zeta_prime = [&](int i) {
        ThetaElem r = t.zero();
        for (int s = 0; s < i; ++s)
            r = t.add(r, t.scale(tau_pow(i - s), fp.coeff(s).to_fraction_field()));
        return i == 0 ? t.one() : r;
    };

    auto zbasis = t.mixed_basis(0);
    ValueMat cmat = value_mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n), f.ring);
    for (int i = 0; i < n; ++i) {
        auto coords = t.coords_in(zbasis, zeta_prime(i));
        for (int r = 0; r < n; ++r)
            cmat.at(static_cast<std::size_t>(r), static_cast<std::size_t>(i)) = coords[static_cast<std::size_t>(r)];
    }
    if (!value_det(cmat, f.ring).is_unit())
        throw std::runtime_error("ring change of basis is not unimodular");

    MultTable rf = build_ring(f);
    MultTable rfp = build_ring(fp);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            std::vector<Value> ci(static_cast<std::size_t>(n)), cj(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r) {
                ci[static_cast<std::size_t>(r)] = cmat.at(static_cast<std::size_t>(r), static_cast<std::size_t>(i));
                cj[static_cast<std::size_t>(r)] = cmat.at(static_cast<std::size_t>(r), static_cast<std::size_t>(j));
            }
            auto lhs = rf.mult_coords(ci, cj);
            auto rhs = value_apply(cmat, rfp.product(i, j));
            if (lhs != rhs) throw std::runtime_error("ring change of basis fails to intertwine");
        }

    // module side: multiplication by (a - b*theta) carries the new level-1
    // basis into the old level-1 module
    auto mixed1 = t.mixed_basis(1);
    ValueMat wmat = value_mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n), f.ring);
    for (int j = 0; j < n; ++j) {
        ThetaElem bj = j == 0 ? t.one() : (j == 1 ? tau : zeta_prime(j));
        ThetaElem w = t.mul(denom, bj);
        auto coords = t.coords_in(mixed1, w);
        for (int r = 0; r < n; ++r)
            wmat.at(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) = coords[static_cast<std::size_t>(r)];
    }
    if (!value_det(wmat, f.ring).is_unit())
        throw std::runtime_error("module change of basis is not unimodular");

    ActionTable af = build_module(f, 1);
    ActionTable afp = build_module(fp, 1);
    for (int i = 1; i < n; ++i) {
        ValueMat lhs = value_mul(wmat, afp.action_matrix(i));
        ValueMat acted = value_scale(value_identity(static_cast<std::size_t>(n), f.ring),
                                     cmat.at(0, static_cast<std::size_t>(i)));
        for (int k = 1; k < n; ++k)
            acted = value_add(acted, value_scale(af.action_matrix(k),
                                                 cmat.at(static_cast<std::size_t>(k), static_cast<std::size_t>(i))));
        ValueMat rhs = value_mul(acted, wmat);
        if (lhs != rhs) throw std::runtime_error("module change of basis fails to intertwine");
    }
    return GL2Witness{cmat, wmat};
}

MultTable change_ring_basis(const MultTable& r, const ValueMat& f_cols) {
    const int n = r.n;
    for (int i = 0; i < n; ++i) {
        bool expected = (i == 0);
        if (f_cols.at(static_cast<std::size_t>(i), 0).is_one() != expected ||
            (!expected && !f_cols.at(static_cast<std::size_t>(i), 0).is_zero()))
            throw std::invalid_argument("ring basis change must fix the identity");
    }
    ValueMat inv = value_inverse_unimodular(f_cols, r.ring);
    MultTable out;
    out.n = n;
    out.ring = r.ring;
    out.c.assign(static_cast<std::size_t>(n - 1),
                 std::vector<std::vector<Value>>(static_cast<std::size_t>(n - 1)));
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            std::vector<Value> fi(static_cast<std::size_t>(n)), fj(static_cast<std::size_t>(n));
            for (int t2 = 0; t2 < n; ++t2) {
                fi[static_cast<std::size_t>(t2)] = f_cols.at(static_cast<std::size_t>(t2), static_cast<std::size_t>(i));
                fj[static_cast<std::size_t>(t2)] = f_cols.at(static_cast<std::size_t>(t2), static_cast<std::size_t>(j));
            }
            auto prod_old = r.mult_coords(fi, fj);
            out.c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                value_apply(inv, prod_old);
        }
    return out;
}

ActionTable change_module_basis(const ActionTable& a, const ValueMat& e_cols) {
    ValueMat inv = value_inverse_unimodular(e_cols, a.ring);
    ActionTable out = a;
    for (int i = 1; i < a.n; ++i) {
        ValueMat m = value_mul(inv, value_mul(a.action_matrix(i), e_cols));
        for (int j = 0; j < a.n; ++j)
            for (int k = 0; k < a.n; ++k)
                out.d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
    }
    return out;
}

ActionTable change_acting_ring_basis(const ActionTable& a, const ValueMat& f_cols) {
    ActionTable out = a;
    for (int i = 1; i < a.n; ++i) {
        ValueMat m = value_scale(value_identity(static_cast<std::size_t>(a.n), a.ring),
                                 f_cols.at(0, static_cast<std::size_t>(i)));
        for (int k = 1; k < a.n; ++k)
            m = value_add(m, value_scale(a.action_matrix(k),
                                         f_cols.at(static_cast<std::size_t>(k), static_cast<std::size_t>(i))));
        for (int j = 0; j < a.n; ++j)
            for (int k = 0; k < a.n; ++k)
                out.d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
    }
    return out;
}

}  // namespace formring
