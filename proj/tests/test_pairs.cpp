#include <doctest.h>

#include "formring/json_io.hpp"
#include "formring/pairs.hpp"
#include "formring/sampling.hpp"

using namespace formring;

TEST_CASE("pairs built from forms validate") {
    FormSampler sampler(103);
    for (int trial = 0; trial < 25; ++trial) {
        int n = static_cast<int>(sampler.pick(3, 6));
        auto f = sampler.form(n, 20);
        auto bp = form_to_pair(f);
        auto rep = validate_pair(bp.pair);
        CHECK(rep.passed);
        CHECK(rep.zeroes_ones_ok);
        CHECK(rep.exact_sequence_ok);
    }
}

TEST_CASE("perturbing an action entry is caught and cited") {
    auto f = make_int_form(4, {1, 2, -1, 0, 3});
    auto bp = form_to_pair(f);
    FormSampler sampler(107);
    for (int trial = 0; trial < 30; ++trial) {
        BinaryPair p = bp.pair;
        std::size_t i = static_cast<std::size_t>(sampler.pick(0, 2));
        std::size_t j = static_cast<std::size_t>(sampler.pick(0, 3));
        std::size_t k = static_cast<std::size_t>(sampler.pick(0, 3));
        p.i.d[i][j][k] = p.i.d[i][j][k] + p.ring()->one();
        auto rep = validate_pair(p);
        CHECK_FALSE(rep.passed);
        CHECK_FALSE(rep.failures.empty());
    }
    // a perturbation in the coordinate slice names the violated equation
    BinaryPair p = bp.pair;
    p.i.d[1][0][3] = p.i.d[1][0][3] + p.ring()->one();  // y-coordinate of zeta_2 k_1
    auto rep = validate_pair(p);
    CHECK_FALSE(rep.passed);
    bool cited = false;
    for (const auto& s : rep.failures)
        if (s.find("zeta_2") != std::string::npos && s.find("beta_1") != std::string::npos)
            cited = true;
    CHECK(cited);
}

TEST_CASE("for rank 3 the module is free over the ring") {
    FormSampler sampler(109);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = sampler.form(3, 25);
        auto bp = form_to_pair(f);
        ValueMat w = cubic_module_witness(bp.pair);
        CHECK(value_det(w, f.ring).is_unit());
    }
}

TEST_CASE("normalization") {
    SUBCASE("idempotence") {
        auto f = make_int_form(4, {2, -1, 3, 1, -2});
        auto bp = form_to_pair(f);
        auto again = normalize(bp.pair);
        CHECK(again == bp);
    }
    SUBCASE("output independent of the incoming lifts") {
        FormSampler sampler(113);
        for (int trial = 0; trial < 20; ++trial) {
            int n = static_cast<int>(sampler.pick(3, 5));
            auto f = sampler.form(n, 15);
            auto bp = form_to_pair(f);
            // scramble the lifts: x += random kernel vector, y += random
            // kernel vector, zeta_i += random multiple of 1
            BinaryPair p = bp.pair;
            ValueMat e = value_identity(static_cast<std::size_t>(n), f.ring);
            for (int b = 0; b <= n - 3; ++b) {
                e.at(static_cast<std::size_t>(b), static_cast<std::size_t>(n - 2)) =
                    f.ring->from_int(sampler.pick(-4, 4));
                e.at(static_cast<std::size_t>(b), static_cast<std::size_t>(n - 1)) =
                    f.ring->from_int(sampler.pick(-4, 4));
            }
            p.i = change_module_basis(p.i, e);
            ValueMat fc = value_identity(static_cast<std::size_t>(n), f.ring);
            for (int i = 1; i < n; ++i)
                fc.at(0, static_cast<std::size_t>(i)) = f.ring->from_int(sampler.pick(-4, 4));
            p.r = change_ring_basis(p.r, fc);
            p.i = change_acting_ring_basis(p.i, fc);
            CHECK(normalize(p) == bp);
        }
    }
    SUBCASE("the monogenic cubic normalizes to its own coefficients") {
        auto f = make_int_form(3, {1, 0, 0, 1});
        auto bp = form_to_pair(f);
        CHECK(bp.a == f.coeffs);
    }
}

TEST_CASE("pair to form on stated examples") {
    SUBCASE("universal cubic gives back the universal coefficients") {
        auto u = universal_form(3);
        auto bp = form_to_pair(u);
        auto back = pair_to_form(bp);
        CHECK(back.coeffs == u.coeffs);
    }
    SUBCASE("universal quartic action has the 0/1 coordinate pattern") {
        auto u = universal_form(4);
        auto bp = form_to_pair(u);
        // the x/y coordinates of zeta_j acting on kernel vectors are the
        // constants 0 and 1 even though entries are universal polynomials
        for (int j = 1; j < 4; ++j) {
            ValueMat zj = bp.pair.i.action_matrix(j);
            for (int b = 0; b <= 1; ++b) {
                Value xc = zj.at(2, static_cast<std::size_t>(b));
                Value yc = zj.at(3, static_cast<std::size_t>(b));
                CHECK(xc == (j + b == 2 ? u.ring->one() : u.ring->zero()));
                CHECK(yc == (j + b == 3 ? u.ring->one() : u.ring->zero()));
            }
        }
    }
    SUBCASE("zero pair gives the zero form") {
        auto z = make_int_form(4, {0, 0, 0, 0, 0});
        auto bp = form_to_pair(z);
        CHECK(pair_to_form(bp).is_zero());
        CHECK(validate_pair(bp.pair).passed);
        for (const Value& v : bp.a) CHECK(v.is_zero());
    }
    SUBCASE("evaluation is independent of the splitting seed") {
        auto f = make_int_form(4, {3, 1, -2, 0, 5});
        auto bp = form_to_pair(f);
        CHECK(pair_to_form(bp, 1).coeffs == pair_to_form(bp, 999).coeffs);
    }
}

TEST_CASE("round trip A: form -> pair -> form") {
    FormSampler sampler(127);
    for (int n = 3; n <= 8; ++n) {
        for (int trial = 0; trial < 12; ++trial) {
            auto f = sampler.form(n, 30);
            auto bp = form_to_pair(f);
            CHECK(pair_to_form(bp).coeffs == f.coeffs);
            CHECK(bp.a == f.coeffs);
        }
    }
}

TEST_CASE("round trip B: coefficients determine the tables") {
    FormSampler sampler(131);
    for (int n = 3; n <= 8; ++n) {
        for (int trial = 0; trial < 8; ++trial) {
            auto f = sampler.form(n, 30);
            auto bp = form_to_pair(f);
            auto rec = reconstruct_from_coefficients(bp.a, n, f.ring);
            CHECK(rec == bp);
        }
    }
    SUBCASE("stated example (1,0,0,1)") {
        auto f = make_int_form(3, {1, 0, 0, 1});
        auto rec = reconstruct_from_coefficients(f.coeffs, 3, f.ring);
        CHECK(rec.pair.r == build_ring(f));
        CHECK(rec.pair.i == build_module(f, 0));
    }
    SUBCASE("all-zero coefficients give zero tables") {
        RingPtr z = Ring::integers();
        std::vector<Value> a(5, z->zero());
        auto rec = reconstruct_from_coefficients(a, 4, z);
        for (int i = 1; i < 4; ++i)
            for (int j = 1; j < 4; ++j)
                for (const Value& v : rec.pair.r.product(i, j)) CHECK(v.is_zero());
    }
}

TEST_CASE("round trips hold symbolically on the universal form") {
    for (int n : {3, 4}) {
        auto u = universal_form(n);
        auto bp = form_to_pair(u);
        CHECK(pair_to_form(bp).coeffs == u.coeffs);
        auto rec = reconstruct_from_coefficients(bp.a, n, u.ring);
        CHECK(rec == bp);
    }
}

TEST_CASE("reconstruction from universal coefficient variables commutes") {
    // build the tables over Z[a_0..a_n] and check the commutators vanish
    // identically, then specialize and compare with the direct route
    for (int n : {3, 4, 5}) {
        RingPtr ring = Ring::polynomials(universal_var_names(n, "a"));
        std::vector<Value> a;
        for (int i = 0; i <= n; ++i) a.push_back(ring->var(static_cast<std::size_t>(i)));
        auto rec = reconstruct_from_coefficients(a, n, ring);
        CHECK(validate_pair(rec.pair).zeroes_ones_ok);
        CHECK(rec.pair.r.check_axioms().empty());
        CHECK(rec.pair.i.check_module_axiom(rec.pair.r).empty());

        FormSampler sampler(137);
        std::vector<Value> images;
        RingPtr z = Ring::integers();
        for (int i = 0; i <= n; ++i) images.push_back(z->from_int(sampler.pick(-9, 9)));
        RingHom spec = RingHom::specialize(ring, z, images);
        BinaryForm f = make_form(n, z, images);
        auto direct = form_to_pair(f);
        CHECK(specialize_table(rec.pair.r, spec) == direct.pair.r);
        ActionTable si = specialize_table(rec.pair.i, spec);
        si.twist = direct.pair.i.twist;
        CHECK(si == direct.pair.i);
    }
}

TEST_CASE("splitting independence of the form value") {
    FormSampler sampler(139);
    for (int trial = 0; trial < 20; ++trial) {
        int n = static_cast<int>(sampler.pick(3, 6));
        auto f = sampler.form(n, 25);
        auto bp = form_to_pair(f);
        auto f1 = pair_to_form(bp, 11);
        auto f2 = pair_to_form(bp, 5077);
        CHECK(f1.coeffs == f2.coeffs);
    }
}

TEST_CASE("three-term sequence of symmetric powers is exact over Z") {
    for (int n = 3; n <= 8; ++n) {
        IntMat m1 = realexact_inclusion_matrix(n);
        IntMat m2 = realexact_wedge_matrix(n);
        IntMat comp = int_mul(m2, m1);
        for (std::size_t i = 0; i < comp.rows(); ++i)
            for (std::size_t j = 0; j < comp.cols(); ++j) CHECK(comp.at(i, j) == 0);
        auto s1 = smith_normal_form(m1);
        for (int t = 0; t < n; ++t)
            CHECK(s1.d.at(static_cast<std::size_t>(t), static_cast<std::size_t>(t)) == 1);
        auto s2 = smith_normal_form(m2);
        for (int t = 0; t < n - 2; ++t)
            CHECK(s2.d.at(static_cast<std::size_t>(t), static_cast<std::size_t>(t)) == 1);
        CHECK(int_rank(m1) + int_rank(m2) == 2 * static_cast<std::size_t>(n - 1));
    }
}

TEST_CASE("the two validation criteria accept the same fuzzed tables") {
    FormSampler sampler(149);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        int n = static_cast<int>(sampler.pick(3, 5));
        auto f = sampler.form(n, 10);
        auto bp = form_to_pair(f);
        BinaryPair p = bp.pair;
        // perturb a random action-table entry
        std::size_t i = static_cast<std::size_t>(sampler.pick(1, n - 1));
        std::size_t j = static_cast<std::size_t>(sampler.pick(0, n - 1));
        std::size_t k = static_cast<std::size_t>(sampler.pick(0, n - 1));
        long delta = sampler.pick(0, 1) ? 1 : -1;
        p.i.d[i - 1][j][k] = p.i.d[i - 1][j][k] + p.ring()->from_int(delta);
        auto rep = validate_pair(p);
        REQUIRE(rep.exact_sequence_checked);
        CHECK(rep.zeroes_ones_ok == rep.exact_sequence_ok);
        ++checked;
    }
    CHECK(checked == 150);
}

TEST_CASE("pair JSON round trip") {
    auto f = make_int_form(4, {1, 2, 3, 4, 5});
    auto bp = form_to_pair(f);
    Json j = pair_to_json(bp.pair);
    CHECK(j.at("twist").get<int>() == -1);
    BinaryPair back = pair_from_json(Json::parse(j.dump()));
    CHECK(back == bp.pair);
}

TEST_CASE("twist tags ride along unchanged") {
    auto f = make_int_form(3, {1, 2, 3, 4}, 2);
    auto bp = form_to_pair(f);
    CHECK(bp.pair.twist == 2);
    CHECK(pair_to_form(bp).twist == 2);
}
