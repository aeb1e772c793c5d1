#include <doctest.h>

#include <random>

#include "formring/matrix.hpp"
#include "formring/value.hpp"

using namespace formring;

namespace {

// Independent oracle for the Smith diagonal: d_1...d_k equals the gcd of
// the k x k minors, so d_k is the ratio of successive minor gcds.
std::vector<mpz_class> smith_diagonal_by_minor_gcds(const IntMat& a) {
    const std::size_t r = a.rows(), c = a.cols();
    const std::size_t kmax = std::min(r, c);
    std::vector<mpz_class> gcds(kmax + 1, 0);
    gcds[0] = 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
        // enumerate all k x k minors
        std::vector<std::size_t> ri(k), ci(k);
        for (std::size_t i = 0; i < k; ++i) ri[i] = i;
        mpz_class g = 0;
        auto next_subset = [](std::vector<std::size_t>& s, std::size_t limit) {
            std::size_t k2 = s.size();
            for (std::size_t i = k2; i-- > 0;) {
                if (s[i] + (k2 - i) < limit) {
                    ++s[i];
                    for (std::size_t j = i + 1; j < k2; ++j) s[j] = s[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        do {
            for (std::size_t i = 0; i < k; ++i) ci[i] = i;
            do {
                IntMat sub(k, k, 0);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = a.at(ri[i], ci[j]);
                mpz_class d = int_det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            } while (next_subset(ci, c));
        } while (next_subset(ri, r));
        gcds[k] = g;
    }
    std::vector<mpz_class> diag(kmax, 0);
    for (std::size_t k = 1; k <= kmax; ++k) {
        if (gcds[k] == 0) break;
        diag[k - 1] = gcds[k] / gcds[k - 1];
    }
    return diag;
}

Value V(long x) { return Ring::integers()->from_int(x); }

}  // namespace

TEST_CASE("integer exact division") {
    CHECK(V(6).exact_div(V(3)) == V(2));
    CHECK_THROWS_AS(V(7).exact_div(V(3)), NonDivisibleError);
    CHECK(V(0).exact_div(V(0)) == V(0));
    CHECK_THROWS_AS(V(5).exact_div(V(0)), NonDivisibleError);
}

TEST_CASE("polynomial exact division factors out a variable") {
    RingPtr p = Ring::polynomials({"f_0", "f_1"});
    Value f0 = p->var(0), f1 = p->var(1);
    Value prod = f0 * f1 + f0 * f0;
    CHECK(prod.exact_div(f0) == f1 + f0);
    CHECK_THROWS_AS((f0 * f1 + p->one()).exact_div(f0), NonDivisibleError);
}

TEST_CASE("exact division in Z/m solves the congruence") {
    RingPtr z12 = Ring::integers_mod(12);
    Value q = z12->from_int(8).exact_div(z12->from_int(4));
    CHECK(z12->from_int(4) * q == z12->from_int(8));
    // 4q = 5 mod 12 has no solution
    CHECK_THROWS_AS(z12->from_int(5).exact_div(z12->from_int(4)), NonDivisibleError);
    // modulus need not be prime and exact_div may pick any valid solution
    Value q2 = z12->from_int(6).exact_div(z12->from_int(3));
    CHECK(z12->from_int(3) * q2 == z12->from_int(6));
}

TEST_CASE("content over the integers and Z/m") {
    RingPtr z = Ring::integers();
    auto vec = [&](std::initializer_list<long> xs) {
        std::vector<Value> v;
        for (long x : xs) v.push_back(z->from_int(x));
        return v;
    };
    auto c1 = content(vec({2, 4, 6}), z);
    CHECK(c1.content == V(2));
    CHECK_FALSE(c1.is_unit);
    auto c2 = content(vec({3, 5}), z);
    CHECK(c2.content == V(1));
    CHECK(c2.is_unit);
    auto c3 = content(vec({0, 0}), z);
    CHECK(c3.content == V(0));
    CHECK_FALSE(c3.is_unit);

    RingPtr z6 = Ring::integers_mod(6);
    std::vector<Value> w{z6->from_int(2), z6->from_int(4)};
    auto c4 = content(w, z6);
    CHECK_FALSE(c4.is_unit);
    std::vector<Value> w2{z6->from_int(2), z6->from_int(3)};
    CHECK(content(w2, z6).is_unit);

    RingPtr p = Ring::polynomials({"x"});
    std::vector<Value> bad{p->one()};
    CHECK_THROWS_AS(content(bad, p), std::invalid_argument);
}

TEST_CASE("ring axioms hold on random triples in each context") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> dist(-50, 50);
    auto random_value = [&](const RingPtr& r) -> Value {
        switch (r->kind()) {
            case RingKind::Integers:
            case RingKind::IntegersMod: return r->from_int(dist(rng));
            case RingKind::Polynomials: {
                Value v = r->zero();
                for (std::size_t i = 0; i < r->vars().size(); ++i)
                    v = v + r->var(i).pow(static_cast<unsigned>(std::abs(dist(rng)) % 3)) *
                                r->from_int(dist(rng));
                return v;
            }
            case RingKind::FractionField: {
                Value num = r->from_int(dist(rng));
                Value den = r->from_int(0);
                while (den.is_zero()) den = r->from_int(dist(rng));
                return num * den.inv();
            }
        }
        return r->zero();
    };
    std::vector<RingPtr> contexts{Ring::integers(), Ring::integers_mod(12),
                                  Ring::polynomials({"f_0", "f_1", "f_2"}),
                                  Ring::fraction_field(Ring::integers()),
                                  Ring::fraction_field(Ring::polynomials({"t"}))};
    for (const RingPtr& r : contexts) {
        for (int trial = 0; trial < 500; ++trial) {
            Value a = random_value(r), b = random_value(r), c = random_value(r);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * r->one() == a);
            CHECK(a + r->zero() == a);
        }
    }
}

TEST_CASE("exact_div returns q exactly when a = b q is solvable") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-30, 30);
    RingPtr z = Ring::integers();
    for (int trial = 0; trial < 200; ++trial) {
        Value a = z->from_int(dist(rng)), b = z->from_int(dist(rng));
        auto q = a.try_exact_div(b);
        if (q) CHECK(b * *q == a);
        else {
            bool solvable = false;
            for (long x = -900; x <= 900; ++x)
                if (b * z->from_int(x) == a) solvable = true;
            CHECK_FALSE(solvable);
        }
    }
}

TEST_CASE("smith normal form on the stated examples") {
    SUBCASE("identity") {
        IntMat a = int_identity(2);
        auto s = smith_normal_form(a);
        CHECK(s.d == int_identity(2));
    }
    SUBCASE("diag(2,3) becomes diag(1,6)") {
        IntMat a(2, 2, 0);
        a.at(0, 0) = 2;
        a.at(1, 1) = 3;
        auto oracle = smith_diagonal_by_minor_gcds(a);
        REQUIRE(oracle.size() == 2);
        CHECK(oracle[0] == 1);
        CHECK(oracle[1] == 6);
        auto s = smith_normal_form(a);
        CHECK(s.d.at(0, 0) == 1);
        CHECK(s.d.at(1, 1) == 6);
    }
    SUBCASE("zero matrix stays zero") {
        IntMat a(3, 2, 0);
        auto s = smith_normal_form(a);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(s.d.at(i, j) == 0);
    }
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(-9, 9);
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    for (int trial = 0; trial < 60; ++trial) {
        IntMat a(sz(rng), sz(rng), 0);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = dist(rng);
        auto s = smith_normal_form(a);
        // u a v = d recomputed exactly
        CHECK(int_mul(int_mul(s.u, a), s.v) == s.d);
        mpz_class du = int_det(s.u), dv = int_det(s.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        std::size_t t_max = std::min(a.rows(), a.cols());
        for (std::size_t t = 0; t + 1 < t_max; ++t) {
            if (s.d.at(t + 1, t + 1) != 0) {
                REQUIRE(s.d.at(t, t) != 0);
                CHECK(s.d.at(t + 1, t + 1) % s.d.at(t, t) == 0);
            }
        }
        if (a.rows() <= 4 && a.cols() <= 4) {
            auto oracle = smith_diagonal_by_minor_gcds(a);
            for (std::size_t t = 0; t < t_max; ++t) CHECK(s.d.at(t, t) == oracle[t]);
        }
    }
}

TEST_CASE("homomorphisms: reductions, specializations, compositions") {
    RingPtr z = Ring::integers();
    auto red5 = RingHom::reduce_mod(z, 5);
    CHECK(red5(z->from_int(7)) == Ring::integers_mod(5)->from_int(2));

    RingPtr u = Ring::polynomials({"f_0", "f_1", "f_2", "f_3", "f_4"});
    std::vector<Value> images{z->from_int(1), z->from_int(0), z->from_int(0), z->from_int(0),
                              z->from_int(2)};
    auto spec = RingHom::specialize(u, z, images);
    CHECK(spec(u->var(0) * u->var(2)) == z->from_int(0));
    CHECK(spec(u->var(0) * u->var(4)) == z->from_int(2));

    std::vector<Value> wrong{z->from_int(1)};
    CHECK_THROWS_AS(RingHom::specialize(u, z, wrong), std::invalid_argument);

    // reduce mod 3 after specializing f_1 = 2 agrees with the other order
    RingPtr u1 = Ring::polynomials({"f_1"});
    Value poly = u1->var(0) + u1->from_int(4);
    auto spec1 = RingHom::specialize(u1, z, {z->from_int(2)});
    auto red3 = RingHom::reduce_mod(z, 3);
    Value route_a = spec1.then(red3)(poly);
    RingPtr z3 = Ring::integers_mod(3);
    auto spec_mod = RingHom::specialize(u1, z3, {z3->from_int(2)});
    Value route_b = spec_mod(poly);
    CHECK(route_a == route_b);
    CHECK(route_a == z3->from_int(0));

    // reduce mod 6 then mod 2 equals reduce mod 2
    auto red6 = RingHom::reduce_mod(z, 6);
    auto red62 = red6.then(RingHom::reduce_mod(Ring::integers_mod(6), 2));
    auto red2 = RingHom::reduce_mod(z, 2);
    for (long x : {-7L, 0L, 5L, 100L}) CHECK(red62(z->from_int(x)) == red2(z->from_int(x)));
}

TEST_CASE("homomorphisms commute with sums and products") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> dist(-40, 40);
    RingPtr z = Ring::integers();
    RingPtr u = Ring::polynomials({"a", "b"});
    auto homs_src_z = {RingHom::reduce_mod(z, 4), RingHom::reduce_mod(z, 12),
                       RingHom::identity(z)};
    for (const auto& h : homs_src_z) {
        for (int trial = 0; trial < 500; ++trial) {
            Value a = z->from_int(dist(rng)), b = z->from_int(dist(rng));
            CHECK(h(a + b) == h(a) + h(b));
            CHECK(h(a * b) == h(a) * h(b));
        }
        CHECK(h(z->one()) == h.dst()->one());
    }
    auto spec = RingHom::specialize(u, z, {z->from_int(3), z->from_int(-2)});
    for (int trial = 0; trial < 500; ++trial) {
        Value a = u->var(0).pow(static_cast<unsigned>(trial % 3)) * u->from_int(dist(rng)) +
                  u->var(1) * u->from_int(dist(rng));
        Value b = u->var(1).pow(2) * u->from_int(dist(rng)) + u->from_int(dist(rng));
        CHECK(spec(a + b) == spec(a) + spec(b));
        CHECK(spec(a * b) == spec(a) * spec(b));
    }
}

TEST_CASE("fraction fields keep canonical reduced representatives") {
    RingPtr q = Ring::fraction_field(Ring::integers());
    Value half = q->from_int(1) * q->from_int(2).inv();
    Value half2 = q->from_int(3) * q->from_int(6).inv();
    CHECK(half == half2);
    CHECK(half.str() == "1/2");
    RingPtr kf = Ring::fraction_field(Ring::polynomials({"f_0", "f_1"}));
    Value r = kf->var(0) * kf->var(0).inv();
    CHECK(r == kf->one());
    // denominators that are integer multiples of monomials cancel fully
    Value s = (kf->var(1) * kf->var(0).pow(2)) * (kf->var(0).pow(3) * kf->from_int(2)).inv();
    CHECK(s.str() == "(f_1)/(2*f_0)");
}
