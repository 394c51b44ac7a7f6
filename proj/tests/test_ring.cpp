/***********************************************************************
 * test_ring.cpp
 *
 * PURPOSE: exhaustive unit tests for the coefficient rings: descriptor
 *          parsing, field/product/dual arithmetic, automorphism laws,
 *          ideals and quotients, the hermitian pair group A(R), and the
 *          surjectivity / descent conditions.
 ***********************************************************************/
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tcg/ring.hpp"

#include <set>

using namespace tcg;

/* ------------------------------------------------------------------ */
/* exhaustive ring-axiom check for small rings                        */
/* ------------------------------------------------------------------ */
static void check_ring_axioms(const RingPtr& R) {
    uint32_t n = R->order();
    REQUIRE(n <= 1000);
    for (Elt a = 0; a < n; ++a) {
        CHECK(R->add(a, 0) == a);
        CHECK(R->mul(a, R->one()) == a);
        CHECK(R->add(a, R->neg(a)) == 0);
        CHECK(R->theta_pow(a, R->theta_order()) == a);
        for (Elt b = 0; b < n; ++b) {
            CHECK(R->add(a, b) == R->add(b, a));
            CHECK(R->mul(a, b) == R->mul(b, a));
            CHECK(R->theta(R->add(a, b)) == R->add(R->theta(a), R->theta(b)));
            CHECK(R->theta(R->mul(a, b)) == R->mul(R->theta(a), R->theta(b)));
        }
    }
    /* associativity + distributivity on a coarse grid to stay fast */
    uint32_t step = n <= 81 ? 1 : n / 37;
    for (Elt a = 0; a < n; a += step)
        for (Elt b = 0; b < n; b += step)
            for (Elt c = 0; c < n; c += step) {
                CHECK(R->add(R->add(a, b), c) == R->add(a, R->add(b, c)));
                CHECK(R->mul(R->mul(a, b), c) == R->mul(a, R->mul(b, c)));
                CHECK(R->mul(a, R->add(b, c)) == R->add(R->mul(a, b), R->mul(a, c)));
            }
    for (Elt u : R->units()) {
        CHECK(R->mul(u, R->inv(u)) == R->one());
    }
}

TEST_CASE("gf(9): field with Frobenius") {
    RingPtr R = Ring::make("gf(9)");
    CHECK(R->order() == 9);
    CHECK(R->characteristic() == 3);
    CHECK(R->theta_order() == 2);
    CHECK(R->descriptor() == "gf(9)");
    check_ring_axioms(R);
    CHECK(R->fixed().size() == 3);
    CHECK(R->units().size() == 8);
    /* Frobenius is x -> x^3 */
    for (Elt a = 0; a < 9; ++a) CHECK(R->theta(a) == R->pow(a, 3));
    CHECK(R->mul(R->of_int(2), R->half()) == R->one());
    /* normalization of the redundant ;frob spelling */
    CHECK(Ring::make("gf(9;frob)")->descriptor() == "gf(9)");
    /* radical trivial, one maximal ideal {0} */
    CHECK(R->radical().size() == 1);
    CHECK(R->maximal_ideals().size() == 1);
    CHECK(R->maximal_ideals()[0] == std::vector<Elt>{0});
}

TEST_CASE("gf(343): order-3 Frobenius") {
    RingPtr R = Ring::make("gf(343)");
    CHECK(R->order() == 343);
    CHECK(R->theta_order() == 3);
    CHECK(R->fixed().size() == 7);
    CHECK(R->units().size() == 342);
    for (Elt a = 0; a < 343; a += 11) {
        CHECK(R->theta(a) == R->pow(a, 7));
        CHECK(R->theta_pow(a, 3) == a);
    }
    CHECK(R->mul(R->of_int(3), R->third()) == R->one());
}

TEST_CASE("prod2(gf(3)): swap ring") {
    RingPtr R = Ring::make("prod2(gf(3))");
    CHECK(R->order() == 9);
    CHECK(R->characteristic() == 3);
    CHECK(R->theta_order() == 2);
    check_ring_axioms(R);
    CHECK(R->fixed().size() == 3);   // diagonal
    CHECK(R->units().size() == 4);
    CHECK(R->radical().size() == 1);
    /* two maximal ideals, swapped by theta, with zero intersection */
    auto ms = R->maximal_ideals();
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].size() == 3);
    CHECK(ms[1].size() == 3);
    std::set<Elt> m0(ms[0].begin(), ms[0].end()), m1(ms[1].begin(), ms[1].end());
    for (Elt x : ms[0]) CHECK(m1.count(R->theta(x)));
    std::vector<Elt> inter;
    for (Elt x : ms[0])
        if (m1.count(x)) inter.push_back(x);
    CHECK(inter == std::vector<Elt>{0});
}

TEST_CASE("prod3(gf(5)): rotation ring") {
    RingPtr R = Ring::make("prod3(gf(5))");
    CHECK(R->order() == 125);
    CHECK(R->theta_order() == 3);
    check_ring_axioms(R);
    CHECK(R->fixed().size() == 5);
    CHECK(R->maximal_ideals().size() == 3);
    /* rotation has no fixed maximal ideal */
    for (const auto& m : R->maximal_ideals()) {
        std::set<Elt> ms(m.begin(), m.end());
        bool moved = false;
        for (Elt x : m)
            if (!ms.count(R->theta(x))) moved = true;
        CHECK(moved);
    }
}

TEST_CASE("dual(gf(9);2): nilpotent extension") {
    RingPtr R = Ring::make("dual(gf(9);2)");
    CHECK(R->order() == 81);
    CHECK(R->theta_order() == 2);
    check_ring_axioms(R);
    CHECK(R->fixed().size() == 9);
    CHECK(R->radical().size() == 9);
    CHECK(R->units().size() == 72);
    /* eps = index 9; eps^2 = 0, theta(eps) = eps */
    Elt eps = 9;
    CHECK(R->mul(eps, eps) == 0);
    CHECK(R->theta(eps) == eps);
    CHECK(R->is_nilpotent(eps));
    /* quotient by (eps) is the field of order 9 */
    ThetaIdeal J = ideal_make(R, {eps});
    CHECK(J.size() == 9);
    auto Q = R->quotient(J);
    CHECK(Q.ring->order() == 9);
    CHECK(Q.ring->theta_order() == 2);
    CHECK(Q.ring->units().size() == 8);
    for (Elt a = 0; a < 81; a += 7)
        for (Elt b = 0; b < 81; b += 5) {
            CHECK(Q.proj[R->add(a, b)] ==
                  Q.ring->add(Q.proj[a], Q.proj[b]));
            CHECK(Q.proj[R->mul(a, b)] ==
                  Q.ring->mul(Q.proj[a], Q.proj[b]));
        }
}

TEST_CASE("dual(gf(9);3) keeps theta order 2 and eps^3 = 0") {
    RingPtr R = Ring::make("dual(gf(9);3)");
    CHECK(R->order() == 729);
    CHECK(R->theta_order() == 2);
    Elt eps = 9;
    CHECK(R->mul(eps, eps) == 81);
    CHECK(R->mul(R->mul(eps, eps), eps) == 0);
    CHECK(R->radical().size() == 81);
}

TEST_CASE("dual(gf(343);2): large structural ring") {
    RingPtr R = Ring::make("dual(gf(343);2)");
    CHECK(R->order() == 117649u);
    CHECK(R->theta_order() == 3);
    CHECK(R->characteristic() == 7);
    Elt eps = 343;
    CHECK(R->mul(eps, eps) == 0);
    CHECK(R->theta(eps) == eps);
    /* (1+eps)(1-eps) = 1 */
    Elt onePlus = R->add(R->one(), eps);
    Elt oneMinus = R->sub(R->one(), eps);
    CHECK(R->mul(onePlus, oneMinus) == R->one());
    CHECK(R->inv(onePlus) == oneMinus);
    /* inverse law on a sample */
    for (Elt a = 1; a < R->order(); a += 9157) {
        if (!R->is_unit(a)) continue;
        CHECK(R->mul(a, R->inv(a)) == R->one());
        CHECK(R->theta(R->inv(a)) == R->inv(R->theta(a)));
    }
    CHECK(R->fixed().size() == 49);
    CHECK(R->maximal_ideals().size() == 1);
    CHECK(R->maximal_ideals()[0].size() == 343);
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(Ring::make("gf(2)"), domain_error);       // char 2
    CHECK_THROWS_AS(Ring::make("gf(5)"), domain_error);       // identity theta
    CHECK_THROWS_AS(Ring::make("gf(81)"), domain_error);      // theta order 4
    CHECK_THROWS_AS(Ring::make("prod3(gf(2))"), domain_error);// char 2
    CHECK_THROWS_AS(Ring::make("gf(6)"), domain_error);       // not a prime power
    CHECK_THROWS_AS(Ring::make("dual(gf(9);4)"), domain_error);
    CHECK_THROWS_AS(Ring::make("blah(3)"), domain_error);
    CHECK_THROWS_AS(Ring::make("gf(9"), domain_error);
    /* char-3 ring with order-3 automorphism needs 1/3 */
    CHECK_THROWS_AS(Ring::make("prod3(gf(3))"), domain_error);
}

TEST_CASE("fixed subring") {
    RingPtr R = Ring::make("gf(9)");
    const auto& sub = R->fixed_subring();
    CHECK(sub.ring->order() == 3);
    CHECK(sub.ring->characteristic() == 3);
    for (uint32_t i = 0; i < 3; ++i) CHECK(sub.idx_of[sub.lift[i]] == (int32_t)i);

    RingPtr D = Ring::make("dual(gf(9);2)");
    CHECK(D->fixed_subring().ring->order() == 9);
    /* the fixed subring of the dual ring has a nontrivial radical */
    CHECK(D->fixed_subring().ring->radical().size() == 3);
}

/* ------------------------------------------------------------------ */
/* hermitian pairs                                                    */
/* ------------------------------------------------------------------ */

TEST_CASE("A(gf(9)): exhaustive group axioms") {
    RingPtr Rp = Ring::make("gf(9)");
    const Ring& R = *Rp;
    auto all = aform_enumerate(R);
    CHECK(all.size() == 27);   // |R| * |trace kernel| / |fixed| = 9*3
    for (APair a : all) CHECK(aform_valid(R, a));
    /* identity and inverses */
    APair id{0, 0};
    for (APair a : all) {
        CHECK(aform_op(R, a, id) == a);
        CHECK(aform_op(R, id, a) == a);
        APair ai = aform_inv(R, a);
        CHECK(aform_valid(R, ai));
        CHECK(aform_op(R, a, ai) == id);
        CHECK(aform_op(R, ai, a) == id);
    }
    /* closure + associativity, all 27^2 products and 27^3 triples */
    std::set<std::pair<Elt, Elt>> elems;
    for (APair a : all) elems.insert({a.t, a.u});
    for (APair a : all)
        for (APair b : all) {
            APair ab = aform_op(R, a, b);
            CHECK(aform_valid(R, ab));
            CHECK(elems.count({ab.t, ab.u}) == 1);
            for (APair c : all) {
                APair l = aform_op(R, aform_op(R, a, b), c);
                APair r = aform_op(R, a, aform_op(R, b, c));
                CHECK(l == r);
            }
        }
    /* scalar action is multiplicative and additive-compatible */
    for (Elt r = 0; r < 9; ++r)
        for (APair a : all) {
            APair ra = aform_act(R, r, a);
            CHECK(aform_valid(R, ra));
            for (Elt s = 0; s < 9; ++s)
                CHECK(aform_act(R, R.mul(r, s), a) ==
                      aform_act(R, r, aform_act(R, s, a)));
        }
}

TEST_CASE("A(R) decompositions over the dual ring") {
    RingPtr Rp = Ring::make("dual(gf(9);2)");
    const Ring& R = *Rp;
    auto all = aform_enumerate(R);
    CHECK(all.size() == 729);   // 81 * 9 (trace kernel)
    for (APair p : all) {
        auto hk = aform_decompose_HK(R, p);
        CHECK(aform_valid(R, hk.k));
        CHECK(aform_valid(R, hk.h));
        CHECK(hk.h.t == 0);
        CHECK(R.theta(hk.h.u) == R.neg(hk.h.u));       // skew part
        CHECK(aform_op(R, hk.k, hk.h) == p);
        CHECK(aform_op(R, hk.h, hk.k) == p);           // central factor
    }
    /* split across I = (eps) and a complement decomposition of entries */
    for (APair p : all) {
        /* decompose t = a1 + b1 with a1 = const part, b1 = eps part */
        Elt a1 = p.t % 9, b1 = R.sub(p.t, a1);
        Elt a2 = p.u % 9, b2 = R.sub(p.u, a2);
        auto sp = aform_split_sum(R, p, a1, b1, a2, b2);
        CHECK(aform_valid(R, sp.pI));
        CHECK(aform_valid(R, sp.pJ));
        CHECK(aform_valid(R, sp.corr));
        CHECK(sp.corr.t == 0);
        APair acc = aform_op(R, aform_op(R, sp.pI, sp.pJ), sp.corr);
        CHECK(acc == p);
    }
}

TEST_CASE("symmetrize implements the trace section") {
    RingPtr Rp = Ring::make("gf(9)");
    for (Elt t : Rp->fixed()) {
        Elt r = symmetrize(*Rp, t);
        CHECK(Rp->add(r, Rp->theta(r)) == t);
    }
    RingPtr Cp = Ring::make("gf(343)");
    for (Elt t : Cp->fixed()) {
        Elt r = symmetrize(*Cp, t);
        CHECK(Cp->add(Cp->add(r, Cp->theta(r)), Cp->theta_pow(r, 2)) == t);
    }
    CHECK_THROWS_AS(symmetrize(*Rp, 4), domain_error);  // a non-fixed element
}

TEST_CASE("unit-entry stages over a field reach all units") {
    RingPtr Rp = Ring::make("gf(9)");
    auto rk = rk_sets(*Rp, 4);
    CHECK(rk.Rk[0].size() == 8);       // all units appear at stage one
    CHECK(rk.Rk[1] == Rp->units());    // and stage two is all of R^*
    CHECK(rk.Reven == Rp->units());
}

/* ------------------------------------------------------------------ */
/* conditions                                                         */
/* ------------------------------------------------------------------ */

TEST_CASE("surjectivity and descent conditions hold for the stock rings") {
    for (const char* d : {"gf(9)", "gf(343)", "prod2(gf(3))", "dual(gf(9);2)",
                          "prod3(gf(5))"}) {
        RingPtr R = Ring::make(d);
        auto rep = check_conditions(R);
        INFO("ring ", d);
        CHECK(rep.cond_surject_scalar);
        CHECK(rep.cond_surject_aform);
        CHECK(rep.cond_descent);
        if (R->theta_order() == 2) CHECK(rep.aform_has_unit);
        CHECK(rep.per_ideal.size() == R->maximal_ideals().size());
    }
}

TEST_CASE("ideal parsing and arithmetic") {
    auto [R, J] = parse_ring_with_ideal("ideal(dual(gf(9);2); 9)");
    CHECK(R->order() == 81);
    CHECK(J.size() == 9);
    for (Elt x : J.elems) CHECK(R->is_nilpotent(x));
    CHECK(J.contains(9));
    CHECK(!J.contains(1));
    /* theta closure: generators get closed automatically */
    auto J2 = ideal_make(R, {R->theta(9)});
    CHECK(ideal_equal(J, J2));

    auto [R2, Z] = parse_ring_with_ideal("gf(9)");
    CHECK(Z.size() == 1);
    auto W = ideal_whole(R2);
    CHECK(W.size() == 9);
    CHECK(ideal_equal(ideal_sum(R2, Z, W), W));
}
