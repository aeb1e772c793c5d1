#include <doctest.h>

#include "formring/json_io.hpp"
#include "formring/sampling.hpp"
#include "formring/tables.hpp"

using namespace formring;

TEST_CASE("universal multiplication table entries") {
    auto u = universal_form(3);
    auto r = build_ring(u);
    const RingPtr& R = u.ring;
    // zeta_1 zeta_2 = -f_2 zeta_1 - f_0 f_3, checked against the oracle
    {
        const auto& p = r.product(1, 2);
        CHECK(p[0] == -(R->var(0) * R->var(3)));
        CHECK(p[1] == -R->var(2));
        CHECK(p[2] == R->zero());
        ThetaRing t(u);
        CHECK(t.to_mixed_basis(t.mul(t.zeta(1), t.zeta(2)), 0) == p);
    }
    // zeta_1^2 = -f_1 zeta_1 + f_0 zeta_2
    {
        const auto& p = r.product(1, 1);
        CHECK(p[0] == R->zero());
        CHECK(p[1] == -R->var(1));
        CHECK(p[2] == R->var(0));
        ThetaRing t(u);
        CHECK(t.to_mixed_basis(t.mul(t.zeta(1), t.zeta(1)), 0) == p);
    }
}

TEST_CASE("zero form: all products of non-identity basis vectors vanish") {
    for (int n : {2, 3, 4, 5}) {
        auto f = make_int_form(n, std::vector<long>(static_cast<std::size_t>(n) + 1, 0));
        auto r = build_ring(f);
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                for (const Value& v : r.product(i, j)) CHECK(v.is_zero());
        CHECK(r.check_axioms().empty());
    }
}

TEST_CASE("universal tables satisfy the axioms symbolically") {
    for (int n : {3, 4}) {
        auto u = universal_form(n);
        auto r = build_ring(u);
        CHECK(r.check_axioms().empty());
        for (int k = -1; k <= n - 1; ++k) {
            auto m = build_module(u, k);
            CHECK(m.check_module_axiom(r).empty());
        }
    }
}

TEST_CASE("random integer tables satisfy the axioms") {
    FormSampler sampler(53);
    for (int trial = 0; trial < 200; ++trial) {
        int n = static_cast<int>(sampler.pick(2, 8));
        auto f = sampler.form(n, 30);
        CHECK(build_ring(f).check_axioms().empty());
    }
}

TEST_CASE("module tables on the stated examples") {
    SUBCASE("level 1 action for n=3: zeta_1 . theta = zeta_2 - f_1 theta") {
        auto u = universal_form(3);
        auto m = build_module(u, 1);
        const auto& col = m.d[0][1];  // zeta_1 acting on basis vector theta
        CHECK(col[0] == u.ring->zero());
        CHECK(col[1] == -u.ring->var(1));
        CHECK(col[2] == u.ring->one());
    }
    SUBCASE("level 0 is the regular representation") {
        FormSampler sampler(59);
        for (int trial = 0; trial < 20; ++trial) {
            int n = static_cast<int>(sampler.pick(2, 6));
            auto f = sampler.form(n, 20);
            auto r = build_ring(f);
            auto m = build_module(f, 0);
            for (int i = 1; i < n; ++i) {
                CHECK(m.action_matrix(i) == r.basis_mult_matrix(i));
                // the action of zeta_i on 1 is zeta_i itself
                std::vector<Value> e(static_cast<std::size_t>(n), f.ring->zero());
                e[0] = f.ring->one();
                auto img = m.act(i, e);
                for (int k = 0; k < n; ++k)
                    CHECK(img[static_cast<std::size_t>(k)] ==
                          (k == i ? f.ring->one() : f.ring->zero()));
            }
        }
    }
    SUBCASE("monogenic case: every level is the regular representation up to basis") {
        // with f_0 = 1 the change of basis between the theta-power basis
        // and the zeta basis is integral and triangular with unit diagonal
        FormSampler sampler(61);
        for (int trial = 0; trial < 10; ++trial) {
            int n = static_cast<int>(sampler.pick(2, 5));
            auto f = sampler.form(n, 10);
            f.coeffs[0] = f.ring->one();
            ThetaRing t(f);
            auto r = build_ring(f);
            auto zb = t.mixed_basis(0);
            for (int k = -1; k <= n - 1; ++k) {
                auto m = build_module(f, k);
                auto basis = t.mixed_basis(k);
                ValueMat change = value_mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n), f.ring);
                for (int j = 0; j < n; ++j) {
                    auto coords = t.coords_in(zb, basis[static_cast<std::size_t>(j)]);
                    for (int i = 0; i < n; ++i)
                        change.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                            coords[static_cast<std::size_t>(i)];
                }
                CHECK(value_det(change, f.ring).is_unit());
                ValueMat inv = value_inverse_unimodular(change, f.ring);
                for (int i = 1; i < n; ++i)
                    CHECK(value_mul(inv, value_mul(r.basis_mult_matrix(i), change)) ==
                          m.action_matrix(i));
            }
        }
    }
}

TEST_CASE("module tables agree with the oracle for nonzero f_0") {
    FormSampler sampler(67);
    for (int trial = 0; trial < 40; ++trial) {
        int n = static_cast<int>(sampler.pick(2, 6));
        auto f = sampler.form_f0(n, 25);
        ThetaRing t(f);
        for (int k = -1; k <= n - 1; ++k) {
            auto m = build_module(f, k);
            auto basis = t.mixed_basis(k);
            for (int i = 1; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    CHECK(t.to_mixed_basis(t.mul(t.zeta(i), basis[static_cast<std::size_t>(j)]), k) ==
                          m.d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
        }
    }
}

TEST_CASE("trace-form discriminant equals the form discriminant") {
    SUBCASE("stated values") {
        CHECK(ring_disc(build_ring(make_int_form(2, {1, 1, 1}))) ==
              Ring::integers()->from_int(-3));
        CHECK(ring_disc(build_ring(make_int_form(3, {1, 0, 0, 1}))) ==
              Ring::integers()->from_int(-27));
        auto z = make_int_form(3, {0, 0, 0, 0});
        CHECK(ring_disc(build_ring(z)).is_zero());
    }
    SUBCASE("polynomial identity for small degrees") {
        for (int n : {2, 3, 4}) {
            auto u = universal_form(n);
            CHECK(ring_disc(build_ring(u)) == disc_form(u));
        }
    }
    SUBCASE("random forms up to degree 6") {
        FormSampler sampler(71);
        for (int trial = 0; trial < 60; ++trial) {
            int n = static_cast<int>(sampler.pick(2, 6));
            auto f = sampler.form(n, 40);
            CHECK(ring_disc(build_ring(f)) == disc_form(f));
        }
    }
}

TEST_CASE("dual pairing matrix is the identity") {
    FormSampler sampler(73);
    for (int trial = 0; trial < 25; ++trial) {
        int n = static_cast<int>(sampler.pick(2, 6));
        auto f = sampler.form_f0(n, 20);
        for (int k = -1; k <= n - 1; ++k)
            CHECK(dual_pairing_matrix(f, k) == value_identity(static_cast<std::size_t>(n), f.ring));
    }
    SUBCASE("table route covers f_0 = 0 and modular contexts") {
        auto f = make_int_form(3, {0, 2, 1, 5});
        CHECK(dual_pairing_matrix(f, 1) == value_identity(3, f.ring));
        RingPtr z4 = Ring::integers_mod(4);
        std::vector<Value> c{z4->from_int(2), z4->from_int(1), z4->from_int(0), z4->from_int(3)};
        auto fm = make_form(3, z4, c);
        CHECK(dual_pairing_matrix(fm, 0) == value_identity(3, z4));
    }
    SUBCASE("pairing spot values") {
        // a middle-range shifted basis vector pairs to zero against a
        // high-slot second-form vector, and theta^i pairs to one when the
        // indices are complementary
        auto u = universal_form(4);
        ThetaRing t(u);
        int k = 1;
        auto ub = t.primed_basis(k);    // {1, theta, zeta_2+f_2, zeta_3+f_3}
        auto vb = t.alt_basis(4 - 2 - k);
        std::reverse(vb.begin(), vb.end());
        // (zeta_2 + f_2) * (f_0 theta^3 + f_1 theta^2 + f_2 theta) -> 0
        auto coords = t.to_mixed_basis(t.mul(ub[2], vb[0]), 2);
        CHECK(coords[3].is_zero());
        // theta^i * v with complementary degree pairs to 1
        auto c2 = t.to_mixed_basis(t.mul(ub[1], vb[1]), 2);
        CHECK(c2[3] == u.ring->one());
    }
}

TEST_CASE("the inverse different map is a verified module isomorphism") {
    FormSampler sampler(79);
    for (int trial = 0; trial < 30; ++trial) {
        int n = static_cast<int>(sampler.pick(2, 5));
        auto f = sampler.form(n, 25);
        ValueMat m = inverse_different_map(f);
        CHECK(value_det(m, f.ring).is_unit());
        auto prim = build_primed_module(f, n - 2);
        auto r = build_ring(f);
        for (int i = 1; i < n; ++i)
            CHECK(value_mul(m, prim.action_matrix(i)) ==
                  value_mul(r.basis_mult_matrix(i).transposed(), m));
    }
    // the zero form is covered by specialization
    auto z = make_int_form(4, {0, 0, 0, 0, 0});
    CHECK(value_det(inverse_different_map(z), z.ring).is_unit());
}

TEST_CASE("invertibility and Gorenstein agree with primitivity") {
    CHECK(is_invertible_family(make_int_form(3, {1, 2, 3, 4})));
    CHECK_FALSE(is_invertible_family(make_int_form(2, {2, 4, 6})));
    CHECK(is_invertible_family(make_int_form(2, {3, 6, 4})));
    CHECK(is_gorenstein(make_int_form(3, {1, 0, 0, 1})));
    CHECK_FALSE(is_gorenstein(make_int_form(3, {2, 0, 0, 2})));
    CHECK(is_gorenstein(make_int_form(4, {1, 1, 1, 1, 1})));

    CHECK_THROWS_AS(is_invertible_family(make_int_form(3, {0, 0, 0, 0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_gorenstein(make_int_form(2, {1, 1, 1})), std::invalid_argument);

    FormSampler sampler(83);
    for (int n = 3; n <= 5; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            auto p = sampler.primitive_form(n, 15);
            CHECK(is_invertible_family(p));
            CHECK(is_gorenstein(p));
            auto q = sampler.imprimitive_form(n, 15);
            CHECK_FALSE(is_invertible_family(q));
            CHECK_FALSE(is_gorenstein(q));
        }
    }
}

TEST_CASE("table construction commutes with base change") {
    FormSampler sampler(89);
    for (int trial = 0; trial < 50; ++trial) {
        int n = static_cast<int>(sampler.pick(2, 5));
        auto f = sampler.form(n, 30);
        long mods[] = {2, 3, 4, 5, 12};
        long m = mods[sampler.pick(0, 4)];
        RingHom hom = RingHom::reduce_mod(f.ring, m);
        RingPtr zm = Ring::integers_mod(m);
        std::vector<Value> cm;
        for (const Value& c : f.coeffs) cm.push_back(zm->from_mpz(c.as_mpz()));
        BinaryForm fm = make_form(n, zm, cm, f.twist);
        CHECK(specialize_table(build_ring(f), hom) == build_ring(fm));
        for (int k = -1; k <= n - 1; ++k)
            CHECK(specialize_table(build_module(f, k), hom) == build_module(fm, k));
    }
    SUBCASE("forms with all coefficients divisible reduce to the degenerate table") {
        auto f = make_int_form(3, {6, -12, 18, 6});
        RingHom hom = RingHom::reduce_mod(f.ring, 3);
        auto reduced = specialize_table(build_ring(f), hom);
        for (int i = 1; i < 3; ++i)
            for (int j = 1; j < 3; ++j)
                for (const Value& v : reduced.product(i, j)) CHECK(v.is_zero());
    }
    SUBCASE("universal specializes to the concrete table") {
        auto u = universal_form(3);
        auto f = make_int_form(3, {1, 0, 0, 1});
        CHECK(specialize_table(build_ring(u), universal_specialization(f)) == build_ring(f));
        CHECK(specialize_table(build_module(u, 1), universal_specialization(f)) ==
              build_module(f, 1));
    }
    SUBCASE("reducing mod 6 then mod 2 equals reducing mod 2") {
        auto f = make_int_form(3, {5, 4, 3, 2});
        auto via6 = specialize_table(
            specialize_table(build_ring(f), RingHom::reduce_mod(f.ring, 6)),
            RingHom::reduce_mod(Ring::integers_mod(6), 2));
        auto direct = specialize_table(build_ring(f), RingHom::reduce_mod(f.ring, 2));
        CHECK(via6 == direct);
    }
}

TEST_CASE("group generators admit verified table intertwiners") {
    RingPtr z = Ring::integers();
    SUBCASE("identity gives identity matrices") {
        auto f = make_int_form(3, {1, 2, 3, 4});
        auto w = gl2_invariance_witness(f, gl2_identity(z));
        CHECK(w.ring_change == value_identity(3, z));
        CHECK(w.module_change == value_identity(3, z));
    }
    SUBCASE("swap on the stated quadratic") {
        auto f = make_int_form(2, {1, 1, 1});
        auto w = gl2_invariance_witness(f, gl2_swap(z));
        CHECK(value_det(w.ring_change, z).is_unit());
    }
    SUBCASE("random forms, both generators") {
        FormSampler sampler(97);
        for (int trial = 0; trial < 40; ++trial) {
            int n = static_cast<int>(sampler.pick(2, 5));
            auto f = sampler.form_ends(n, 12);
            gl2_invariance_witness(f, gl2_swap(z));
            gl2_invariance_witness(f, gl2_shear(z));
            // the discriminant is untouched by a shear
            CHECK(disc_form(gl2_act(f, gl2_shear(z))) == disc_form(f));
        }
    }
}

TEST_CASE("module powers: the exposed experiment") {
    // for primitive forms invertibility makes class powers and module
    // powers coincide, so equality is a theorem there; for imprimitive
    // forms the comparison is informational and nothing is asserted
    FormSampler sampler(211);
    for (int trial = 0; trial < 10; ++trial) {
        int n = static_cast<int>(sampler.pick(3, 5));
        auto p = sampler.primitive_form(n, 12);
        for (int k = 1; k < n; ++k) CHECK(module_power_matches_level(p, k));
        auto q = sampler.imprimitive_form(n, 12);
        (void)module_power_matches_level(q, 2);
    }
}

TEST_CASE("tables serialize to stable JSON and round-trip") {
    auto f = make_int_form(3, {1, -2, 0, 9});
    auto r = build_ring(f);
    Json j = mult_table_to_json(r);
    CHECK(j.begin().key() == "n");
    CHECK(mult_table_from_json(Json::parse(j.dump())) == r);
    auto m = build_module(f, -1);
    CHECK(action_table_from_json(Json::parse(action_table_to_json(m).dump())) == m);
    auto u = universal_form(3);
    auto ru = build_ring(u);
    CHECK(mult_table_from_json(Json::parse(mult_table_to_json(ru).dump())) == ru);
}
