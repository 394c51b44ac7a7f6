/***********************************************************************
 * test_congruence.cpp
 *
 * PURPOSE: level parameter menus and elementary level generators are
 *          counted against hand-computed values; the unipotent
 *          factorization is an exact bijection (exhaustive over the
 *          unitary setups); the closed-form UHV conjugate is checked
 *          against the matrices exhaustively with the negative-side
 *          parameter running over a level; the principal-kernel U T V
 *          factorization round-trips on random level products; torus
 *          level tests and level-ideal extraction match examples.
 ***********************************************************************/
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tcg/congruence.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace tcg;

namespace {

/* full parameter menu of a class, optionally restricted to an ideal */
std::vector<APair> class_menu(const Ring& R, const Folding& f, int cls,
                              const ThetaIdeal* J = nullptr) {
    std::vector<APair> out;
    switch (f.cls(cls).type) {
        case ClassType::A1:
            for (Elt t : R.fixed())
                if (!J || J->contains(t)) out.push_back({t, 0});
            break;
        case ClassType::A1x2:
        case ClassType::A1x3:
            for (Elt t = 0; t < (Elt)R.order(); ++t)
                if (!J || J->contains(t)) out.push_back({t, 0});
            break;
        case ClassType::A2:
            out = aform_enumerate(R, J);
            break;
    }
    return out;
}

/* deterministic product of random elementary level generators */
GrpElt random_level_product(const Rep& rep,
                            const std::vector<ClassLetter>& gens,
                            std::mt19937& rng, int len) {
    GrpElt g = rep.one();
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    for (int i = 0; i < len; ++i) {
        const ClassLetter& l = gens[pick(rng)];
        g = rep.mul(g, x_class(rep, l.cls, l.p));
    }
    return g;
}

bool ideal_contains(const ThetaIdeal& big, const ThetaIdeal& small) {
    for (Elt e : small.elems)
        if (!big.contains(e)) return false;
    return true;
}

}  // namespace

/* ------------------------------------------------------------------ */
/* level parameter menus                                               */
/* ------------------------------------------------------------------ */

TEST_CASE("level parameter menus have the expected sizes") {
    auto [R, J] = parse_ring_with_ideal("ideal(dual(gf(9);2); 9)");
    LevelIdeal L = level_ideal(R, J);
    CHECK(L.fixed_params.size() == 3);
    CHECK(L.plain_params.size() == 9);
    CHECK(L.herm_params.size() == 27);
    CHECK(&level_params(L, ClassType::A1) == &L.fixed_params);
    CHECK(&level_params(L, ClassType::A1x2) == &L.plain_params);
    CHECK(&level_params(L, ClassType::A1x3) == &L.plain_params);
    CHECK(&level_params(L, ClassType::A2) == &L.herm_params);

    for (const APair& p : L.herm_params) {
        CHECK(aform_valid(*R, p));
        CHECK(param_in_level(*R, J, ClassType::A2, p));
    }
    /* a pair outside the level is rejected */
    CHECK_FALSE(param_in_level(*R, J, ClassType::A1x2, {1, 0}));
    CHECK_FALSE(param_in_level(*R, J, ClassType::A1, {0, 1}));

    auto R9 = Ring::make("gf(9)");
    LevelIdeal Lw = level_ideal(R9, ideal_whole(R9));
    CHECK(Lw.fixed_params.size() == 3);
    CHECK(Lw.plain_params.size() == 9);
    CHECK(Lw.herm_params.size() == 27);
    LevelIdeal L0 = level_ideal(R9, ideal_zero(R9));
    CHECK(L0.fixed_params.size() == 1);  /* just the zero parameter */
    CHECK(L0.plain_params.size() == 1);
    CHECK(L0.herm_params.size() == 1);
}

TEST_CASE("elementary level generators: counts and membership") {
    SUBCASE("zero level has no generators") {
        auto R = Ring::make("gf(9)");
        Group G("A3", 2, R, Rep::Kind::Natural);
        LevelIdeal L = level_ideal(R, ideal_zero(R));
        CHECK(elementary_level_generators(G.rep, L).empty());
    }
    SUBCASE("full level over gf(9), folded C2") {
        auto R = Ring::make("gf(9)");
        Group G("A3", 2, R, Rep::Kind::Natural);
        LevelIdeal L = level_ideal(R, ideal_whole(R));
        /* 4 one-parameter classes over the fixed subring (2 nonzero
         * values each) and 4 two-root classes over the full ring (8
         * nonzero values each) */
        auto gens = elementary_level_generators(G.rep, L);
        CHECK(gens.size() == (4 * 2 + 4 * 8));
    }
    SUBCASE("radical level over the dual numbers") {
        auto [R, J] = parse_ring_with_ideal("ideal(dual(gf(9);2); 9)");
        Group G("A3", 2, R, Rep::Kind::Natural);
        LevelIdeal L = level_ideal(R, J);
        auto gens = elementary_level_generators(G.rep, L);
        CHECK(gens.size() == (4 * 2 + 4 * 8));
        for (const ClassLetter& l : gens) {
            CHECK(param_in_level(*R, J, G.fold.cls(l.cls).type, l.p));
            CHECK_FALSE((l.p.t == 0 && l.p.u == 0));
        }
    }
}

/* ------------------------------------------------------------------ */
/* unipotent factorization                                             */
/* ------------------------------------------------------------------ */

TEST_CASE("u_factor is an exact bijection on folded C2 over gf(9)") {
    auto R = Ring::make("gf(9)");
    Group G("A3", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    const Folding& f = G.fold;
    int np = f.num_pos();

    std::vector<std::vector<APair>> menus;
    for (int c = np; c < f.num_classes(); ++c)
        menus.push_back(class_menu(*R, f, c));

    std::set<std::vector<Elt>> seen;
    std::vector<size_t> idx(menus.size(), 0);
    long n = 0, exact = 0;
    while (true) {
        GrpElt g = rep.one();
        std::vector<ClassLetter> in;
        for (size_t k = 0; k < menus.size(); ++k) {
            in.push_back({np + (int)k, menus[k][idx[k]]});
            g = rep.mul(g, x_class(rep, np + (int)k, menus[k][idx[k]]));
        }
        seen.insert(g.m.a);
        auto out = u_factor(rep, g.m);
        bool match = out.size() == in.size();
        if (match)
            for (size_t k = 0; k < in.size(); ++k)
                if (out[k].cls != in[k].cls || !(out[k].p == in[k].p))
                    match = false;
        if (match) exact++;
        n++;
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == menus[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    /* 3 * 3 * 9 * 9 distinct products, each recovering its own letters */
    CHECK(n == 729);
    CHECK(seen.size() == 729);
    CHECK(exact == 729);
}

TEST_CASE("u_factor is an exact bijection on folded BC2 over gf(9)") {
    auto R = Ring::make("gf(9)");
    Group G("A4", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    const Folding& f = G.fold;
    int np = f.num_pos();

    std::vector<std::vector<APair>> menus;
    for (int c = np; c < f.num_classes(); ++c)
        menus.push_back(class_menu(*R, f, c));

    std::set<std::vector<Elt>> seen;
    std::vector<size_t> idx(menus.size(), 0);
    long n = 0, exact = 0;
    while (true) {
        GrpElt g = rep.one();
        std::vector<ClassLetter> in;
        for (size_t k = 0; k < menus.size(); ++k) {
            in.push_back({np + (int)k, menus[k][idx[k]]});
            g = rep.mul(g, x_class(rep, np + (int)k, menus[k][idx[k]]));
        }
        seen.insert(g.m.a);
        auto out = u_factor(rep, g.m);
        bool match = out.size() == in.size();
        if (match)
            for (size_t k = 0; k < in.size(); ++k)
                if (out[k].cls != in[k].cls || !(out[k].p == in[k].p))
                    match = false;
        if (match) exact++;
        n++;
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == menus[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    /* 27 * 9 * 27 * 9 distinct products */
    CHECK(n == 59049);
    CHECK(seen.size() == 59049);
    CHECK(exact == 59049);
}

TEST_CASE("u_factor and v_factor round-trip in the adjoint representation") {
    auto R = Ring::make("dual(gf(9);2)");
    Group G("D4", 2, R, Rep::Kind::Adjoint);
    const Rep& rep = G.rep;
    const Folding& f = G.fold;
    int np = f.num_pos();

    std::mt19937 rng(417);
    for (int trial = 0; trial < 40; ++trial) {
        GrpElt up = rep.one(), dn = rep.one();
        std::vector<ClassLetter> uin, vin;
        for (int c = np; c < f.num_classes(); ++c) {
            auto menu = class_menu(*R, f, c);
            APair p = menu[rng() % menu.size()];
            uin.push_back({c, p});
            up = rep.mul(up, x_class(rep, c, p));
        }
        for (int c = np - 1; c >= 0; --c) {
            auto menu = class_menu(*R, f, c);
            APair p = menu[rng() % menu.size()];
            vin.push_back({c, p});
            dn = rep.mul(dn, x_class(rep, c, p));
        }
        auto uout = u_factor(rep, up.m);
        auto vout = v_factor(rep, dn.m);
        REQUIRE(uout.size() == uin.size());
        REQUIRE(vout.size() == vin.size());
        for (size_t k = 0; k < uin.size(); ++k) {
            CHECK(uout[k].cls == uin[k].cls);
            CHECK(uout[k].p == uin[k].p);
        }
        for (size_t k = 0; k < vin.size(); ++k) {
            CHECK(vout[k].cls == vin[k].cls);
            CHECK(vout[k].p == vin[k].p);
        }
        CHECK(rep.equal(letters_eval(rep, uout), up));
        CHECK(rep.equal(letters_eval(rep, vout), dn));
    }
}

TEST_CASE("u_factor rejects matrices outside the unipotent subgroup") {
    auto R = Ring::make("gf(9)");
    Group G("A3", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    int np = G.fold.num_pos();
    /* a negative letter is not a product of positive class letters */
    CHECK_THROWS_AS(u_factor(rep, x_class(rep, 0, {1, 0}).m), domain_error);
    /* nor is a torus element */
    CHECK_THROWS_AS(u_factor(rep, h_class(rep, np, 4).m), domain_error);
    /* and v_factor rejects the mirror cases */
    CHECK_THROWS_AS(v_factor(rep, x_class(rep, np, {1, 0}).m), domain_error);
}

TEST_CASE("letters_eval multiplies in written order") {
    auto R = Ring::make("gf(9)");
    Group G("A3", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    int np = G.fold.num_pos();
    CHECK(rep.is_one(letters_eval(rep, {})));
    std::vector<ClassLetter> ls = {{np, {1, 0}}, {np + 1, {4, 0}}};
    GrpElt want = rep.mul(x_class(rep, np, {1, 0}), x_class(rep, np + 1, {4, 0}));
    CHECK(rep.equal(letters_eval(rep, ls), want));
}

/* ------------------------------------------------------------------ */
/* UHV conjugation                                                     */
/* ------------------------------------------------------------------ */

TEST_CASE("uhv_conjugate: frozen example values over gf(9)") {
    auto R = Ring::make("gf(9)");
    Group G3("A3", 2, R, Rep::Kind::Natural);
    int np3 = G3.fold.num_pos();

    UHVParts p = uhv_conjugate(*R, G3.fold, np3 + 1, {2, 0}, {4, 0});
    CHECK(p.a == APair{3, 0});
    CHECK(p.h == 4);
    CHECK(p.b == APair{6, 0});

    UHVParts q = uhv_conjugate(*R, G3.fold, np3, {1, 0}, {2, 0});
    CHECK(q.a == APair{2, 0});
    CHECK(q.h == 2);
    CHECK(q.b == APair{1, 0});

    Group G4("A4", 2, R, Rep::Kind::Natural);
    int np4 = G4.fold.num_pos();
    UHVParts r = uhv_conjugate(*R, G4.fold, np4, {1, 8}, {2, 5});
    CHECK(r.a == APair{7, 7});
    CHECK(r.h == 1);
    CHECK(r.b == APair{3, 5});
}

TEST_CASE("uhv_conjugate rejects a non-unit cross term") {
    auto R = Ring::make("gf(9)");
    Group G("A3", 2, R, Rep::Kind::Natural);
    int np = G.fold.num_pos();
    /* s t = 1 makes the cross term vanish */
    CHECK_THROWS_AS(uhv_conjugate(*R, G.fold, np, {1, 0}, {1, 0}),
                    domain_error);
}

TEST_CASE("uhv_conjugate matches the matrices exhaustively over a level") {
    auto [R, J] = parse_ring_with_ideal("ideal(dual(gf(9);2); 9)");

    struct Case {
        const char* sys;
        int cls_off;       /* offset from num_pos */
        ClassType type;
        long expect;       /* number of (s, t) pairs */
    };
    /* folded C2 carries the one- and two-root classes, folded BC2 the
     * hermitian one */
    const Case cases[] = {
        {"A3", 0, ClassType::A1, 9L * 3},
        {"A3", 1, ClassType::A1x2, 81L * 9},
        {"A4", 0, ClassType::A2, 729L * 27},
    };

    for (const Case& cs : cases) {
        CAPTURE(cs.sys);
        Group G(cs.sys, 2, R, Rep::Kind::Natural);
        const Rep& rep = G.rep;
        const Folding& f = G.fold;
        int c = f.num_pos() + cs.cls_off;
        REQUIRE(f.cls(c).type == cs.type);

        auto smenu = class_menu(*R, f, c);
        auto tmenu = class_menu(*R, f, c, &J);
        long checks = 0;
        for (APair s : smenu)
            for (APair t : tmenu) {
                UHVParts pr = uhv_conjugate(*R, f, c, s, t);
                GrpElt lhs = rep.conj(x_class(rep, c, s), x_negclass(rep, c, t));
                GrpElt rhs =
                    rep.mul(rep.mul(x_class(rep, c, pr.a), h_class(rep, c, pr.h)),
                            x_negclass(rep, c, pr.b));
                REQUIRE(rep.equal(lhs, rhs));
                /* with t in the level, every output stays in the level */
                REQUIRE(param_in_level(*R, J, cs.type, pr.a));
                REQUIRE(param_in_level(*R, J, cs.type, pr.b));
                REQUIRE(J.contains(R->sub(pr.h, R->one())));
                checks++;
            }
        CHECK(checks == cs.expect);
    }
}

TEST_CASE("uhv_conjugate matches the matrices on unit pairs over gf(9)") {
    auto R = Ring::make("gf(9)");
    Group G("A4", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    const Folding& f = G.fold;
    long checks = 0, skipped = 0;
    for (int c = f.num_pos(); c < f.num_classes(); ++c) {
        auto menu = class_menu(*R, f, c);
        for (APair s : menu)
            for (APair t : menu) {
                UHVParts pr;
                try {
                    pr = uhv_conjugate(*R, f, c, s, t);
                } catch (const domain_error&) {
                    skipped++;
                    continue;
                }
                GrpElt lhs = rep.conj(x_class(rep, c, s), x_negclass(rep, c, t));
                GrpElt rhs =
                    rep.mul(rep.mul(x_class(rep, c, pr.a), h_class(rep, c, pr.h)),
                            x_negclass(rep, c, pr.b));
                REQUIRE(rep.equal(lhs, rhs));
                checks++;
            }
    }
    CHECK(checks == 1552);
    CHECK(checks + skipped == (2L * 27 * 27 + 2L * 9 * 9));
}

/* ------------------------------------------------------------------ */
/* principal-kernel factorization                                      */
/* ------------------------------------------------------------------ */

TEST_CASE("kernel_factor_utv round-trips random level products") {
    auto [R, J] = parse_ring_with_ideal("ideal(dual(gf(9);2); 9)");
    Group G("A3", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    LevelIdeal L = level_ideal(R, J);
    auto gens = elementary_level_generators(rep, L);
    REQUIRE_FALSE(gens.empty());

    std::mt19937 rng(5309);
    for (int trial = 0; trial < 120; ++trial) {
        GrpElt g = random_level_product(rep, gens, rng, 1 + (int)(rng() % 8));
        KernelFactorization kf = kernel_factor_utv(rep, g, J);
        /* the recombination in the declared order returns the input */
        GrpElt back = rep.mul(rep.mul(letters_eval(rep, kf.u), kf.t),
                              letters_eval(rep, kf.v));
        REQUIRE(rep.equal(back, g));
        /* all unipotent parameters lie in the level */
        for (const ClassLetter& l : kf.u)
            REQUIRE(param_in_level(*R, J, G.fold.cls(l.cls).type, l.p));
        for (const ClassLetter& l : kf.v)
            REQUIRE(param_in_level(*R, J, G.fold.cls(l.cls).type, l.p));
        /* products of elementary level letters have their torus part
         * congruent to one on every weight */
        TorusLevel tl = torus_level_test(rep, kf.t, J);
        REQUIRE(tl.in_T_J);
        REQUIRE(tl.in_T_RJ);
    }
}

TEST_CASE("kernel_factor_utv validates its inputs") {
    auto [R, J] = parse_ring_with_ideal("ideal(dual(gf(9);2); 9)");
    Group G("A3", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    int np = G.fold.num_pos();
    /* a unit-parameter letter is not congruent to one modulo (eps) */
    CHECK_THROWS_AS(kernel_factor_utv(rep, x_class(rep, np, {1, 0}), J),
                    domain_error);
    /* over the full level a Weyl letter passes the congruence check but
     * has no triangular factorization: a pivot fails to be a unit */
    auto R9 = Ring::make("gf(9)");
    Group H("A3", 2, R9, Rep::Kind::Natural);
    CHECK_THROWS_AS(
        kernel_factor_utv(H.rep, w_class(H.rep, H.fold.num_pos(), 1),
                          ideal_whole(R9)),
        domain_error);
}

TEST_CASE("unipotent level letters recover from the kernel factorization") {
    /* membership in the unipotent part of the level is visible on the
     * factor letters: a positive product is congruent to one modulo J
     * exactly when its factorization parameters all lie in J */
    auto [R, J] = parse_ring_with_ideal("ideal(dual(gf(9);2); 9)");
    Group G("A3", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    const Folding& f = G.fold;
    int np = f.num_pos();

    std::mt19937 rng(99);
    int in_level_seen = 0, outside_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        GrpElt g = rep.one();
        for (int c = np; c < f.num_classes(); ++c) {
            auto menu = trial % 2 ? class_menu(*R, f, c, &J)
                                  : class_menu(*R, f, c);
            g = rep.mul(g, x_class(rep, c, menu[rng() % menu.size()]));
        }
        bool congruent = true;
        for (int i = 0; i < g.m.n && congruent; ++i)
            for (int j = 0; j < g.m.n; ++j) {
                Elt want = i == j ? R->one() : R->zero();
                if (!J.contains(R->sub(g.m.at(i, j), want))) {
                    congruent = false;
                    break;
                }
            }
        bool low = true;
        for (const ClassLetter& l : u_factor(rep, g.m))
            if (!param_in_level(*R, J, f.cls(l.cls).type, l.p)) low = false;
        CHECK(congruent == low);
        (congruent ? in_level_seen : outside_seen)++;
    }
    CHECK(in_level_seen > 0);
    CHECK(outside_seen > 0);
}

/* ------------------------------------------------------------------ */
/* torus level tests                                                   */
/* ------------------------------------------------------------------ */

TEST_CASE("torus_level_test separates the two torus levels") {
    auto [R, J] = parse_ring_with_ideal("ideal(dual(gf(9);2); 9)");
    Group G("A3", 2, R, Rep::Kind::Natural);
    const Rep& rep = G.rep;
    int np = G.fold.num_pos();

    SUBCASE("one-congruent character passes both tests") {
        /* 1 + eps is a unit congruent to one modulo (eps) */
        Elt t = R->add(R->one(), 9);
        REQUIRE(R->is_unit(t));
        TorusLevel tl = torus_level_test(rep, h_class(rep, np, t), J);
        CHECK(tl.in_T_J);
        CHECK(tl.in_T_RJ);
    }
    SUBCASE("central scalars vanish on roots but not on weights") {
        int fails = 0;
        for (const GrpElt& z : center_elements(rep)) {
            if (rep.is_one(z)) continue;
            TorusLevel tl = torus_level_test(rep, z, J);
            CHECK(tl.in_T_RJ);
            if (!tl.in_T_J) fails++;
        }
        CHECK(fails == 3);  /* the three nontrivial scalars */
    }
    SUBCASE("a generic character passes neither") {
        TorusLevel tl =
            torus_level_test(rep, h_class(rep, np, R->of_int(2)), J);
        CHECK_FALSE(tl.in_T_J);
        CHECK_FALSE(tl.in_T_RJ);
    }
    SUBCASE("non-diagonal and non-fixed inputs are rejected") {
        CHECK_THROWS_AS(torus_level_test(rep, x_class(rep, np, {1, 0}), J),
                        domain_error);
        Mat m = rep.ident(), mi = rep.ident();
        Elt g = 4;  /* any unit moved by the twist */
        REQUIRE_FALSE(R->is_fixed(g));
        m.at(0, 0) = g;
        mi.at(0, 0) = R->inv(g);
        CHECK_THROWS_AS(torus_level_test(rep, GrpElt{m, mi}, J),
                        domain_error);
    }
}

/* ------------------------------------------------------------------ */
/* the level ideal of an element                                       */
/* ------------------------------------------------------------------ */

TEST_CASE("level_of: examples and monotonicity") {
    auto R = Ring::make("dual(gf(9);2)");
    Group G("A3", 2, R, Rep::Kind::Adjoint);
    const Rep& rep = G.rep;
    int np = G.fold.num_pos();

    CHECK(ideal_equal(level_of(rep, rep.one()), ideal_zero(R)));
    CHECK(ideal_equal(level_of(rep, x_class(rep, np, {9, 0})),
                      ideal_make(R, {9})));
    CHECK(ideal_equal(level_of(rep, x_class(rep, np, {1, 0})),
                      ideal_whole(R)));

    /* the level of a product sits inside the sum of the levels */
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        int c1 = (int)(rng() % G.fold.num_classes());
        int c2 = (int)(rng() % G.fold.num_classes());
        auto m1 = class_menu(*R, G.fold, c1);
        auto m2 = class_menu(*R, G.fold, c2);
        GrpElt a = x_class(rep, c1, m1[rng() % m1.size()]);
        GrpElt b = x_class(rep, c2, m2[rng() % m2.size()]);
        ThetaIdeal la = level_of(rep, a);
        ThetaIdeal lb = level_of(rep, b);
        ThetaIdeal sum = ideal_sum(R, la, lb);
        CHECK(ideal_contains(sum, level_of(rep, rep.mul(a, b))));
    }

    /* only the adjoint representation reads off the level */
    Group N("A3", 2, R, Rep::Kind::Natural);
    CHECK_THROWS_AS(level_of(N.rep, N.rep.one()), domain_error);
}
