/***********************************************************************
 * test_elements.cpp
 *
 * PURPOSE: class letters land in the twisted group and form
 *          one-parameter (or hermitian-pair) subgroups; Weyl and torus
 *          letters satisfy their inversion and pairing identities; the
 *          closed-form conjugation rules reproduce matrix conjugation
 *          exactly; the center and the untwisting isomorphism for
 *          shift rings behave as stated; the word grammar round-trips.
 ***********************************************************************/
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tcg/elements.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace tcg;

namespace {

struct Setup {
    const char* sys;
    int order;
    Rep::Kind kind;
    const char* ring;
    bool exhaustive;
};

const std::vector<Setup> kSetups = {
    {"A3", 2, Rep::Kind::Adjoint, "gf(9)", true},
    {"A4", 2, Rep::Kind::Adjoint, "gf(9)", true},
    {"D4", 2, Rep::Kind::Adjoint, "gf(9)", true},
    {"A3", 2, Rep::Kind::Natural, "gf(9)", true},
    {"A4", 2, Rep::Kind::Natural, "gf(9)", true},
    {"A3", 2, Rep::Kind::Adjoint, "dual(gf(9);2)", true},
    {"D4", 3, Rep::Kind::Adjoint, "prod3(gf(5))", true},
    {"D4", 3, Rep::Kind::Adjoint, "gf(343)", false},
    {"E6", 2, Rep::Kind::Adjoint, "gf(9)", false},
};

/* enumerate (or sample) the parameter domain of a class */
std::vector<APair> class_params(const Ring& R, const Folding& f, int cls,
                                size_t cap) {
    std::vector<APair> out;
    switch (f.cls(cls).type) {
        case ClassType::A1:
            for (Elt t : R.fixed()) out.push_back({t, 0});
            break;
        case ClassType::A1x2:
        case ClassType::A1x3:
            for (Elt t = 0; t < R.order(); ++t) out.push_back({t, 0});
            break;
        case ClassType::A2:
            out = aform_enumerate(R);
            break;
    }
    if (cap && out.size() > cap) {
        std::mt19937 rng(42 + cls);
        std::shuffle(out.begin(), out.end(), rng);
        out.resize(cap);
    }
    return out;
}

/* unit scalars admissible for the one-parameter Weyl letter */
std::vector<Elt> weyl_units(const Ring& R, const Folding& f, int cls,
                            size_t cap) {
    std::vector<Elt> out;
    for (Elt t : R.units())
        if (f.cls(cls).type != ClassType::A1 || R.is_fixed(t)) out.push_back(t);
    if (cap && out.size() > cap) {
        std::mt19937 rng(17 + cls);
        std::shuffle(out.begin(), out.end(), rng);
        out.resize(cap);
    }
    return out;
}

bool is_diagonal(const Mat& m) {
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j && m.at(i, j) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("class letters: twisted, additive, invertible, domain-checked") {
    for (const Setup& su : kSetups) {
        Group G(su.sys, su.order, Ring::make(su.ring), su.kind);
        const Ring& R = *G.R;
        const Folding& f = G.fold;
        INFO(std::string(su.sys), " order ", su.order, " over ", std::string(su.ring));
        long mism = 0;
        for (int c = 0; c < f.num_classes(); ++c) {
            bool herm = f.cls(c).type == ClassType::A2;
            auto ps = class_params(R, f, c, su.exhaustive ? 30 : 12);
            CHECK(G.rep.is_one(x_class(G.rep, c, {0, 0})));
            for (const APair& p : ps) {
                GrpElt x = x_class(G.rep, c, p);
                if (!G.rep.twist_fixed(x)) ++mism;
                APair pi = herm ? aform_inv(R, p) : APair{R.neg(p.t), 0};
                if (G.rep.inv(x).m != x_class(G.rep, c, pi).m) ++mism;
            }
            for (size_t i = 0; i + 1 < ps.size() && i < 10; ++i) {
                APair a = ps[i], b = ps[i + 1];
                APair ab = herm ? aform_op(R, a, b)
                                : APair{R.add(a.t, b.t), 0};
                if (G.rep.mul(x_class(G.rep, c, a), x_class(G.rep, c, b)).m !=
                    x_class(G.rep, c, ab).m)
                    ++mism;
            }
        }
        CHECK(mism == 0);

        /* domain violations throw */
        for (int c = 0; c < f.num_classes(); ++c) {
            if (f.cls(c).type == ClassType::A1) {
                for (Elt t = 0; t < R.order(); ++t)
                    if (!R.is_fixed(t)) {
                        CHECK_THROWS_AS(x_class(G.rep, c, {t, 0}), domain_error);
                        break;
                    }
            }
            if (f.cls(c).type == ClassType::A2) {
                bool thrown = false;
                for (Elt u = 0; u < R.order() && !thrown; ++u)
                    if (!aform_valid(R, {R.one(), u})) {
                        CHECK_THROWS_AS(x_class(G.rep, c, {R.one(), u}),
                                        domain_error);
                        thrown = true;
                    }
            }
        }
    }
}

TEST_CASE("weyl and torus letters satisfy the inversion identities") {
    for (const Setup& su : kSetups) {
        Group G(su.sys, su.order, Ring::make(su.ring), su.kind);
        const Ring& R = *G.R;
        const Folding& f = G.fold;
        INFO(std::string(su.sys), " order ", su.order, " over ", std::string(su.ring));
        long mism = 0;
        for (int c = 0; c < f.num_classes(); ++c) {
            bool herm = f.cls(c).type == ClassType::A2;
            for (Elt t : weyl_units(R, f, c, su.exhaustive ? 8 : 4)) {
                GrpElt w = w_class(G.rep, c, t);
                if (!G.rep.twist_fixed(w)) ++mism;
                Elt ti = herm ? R.theta(t) : R.neg(t);
                if (G.rep.inv(w).m != w_class(G.rep, c, ti).m) ++mism;

                GrpElt h = h_class(G.rep, c, t);
                if (!G.rep.twist_fixed(h)) ++mism;
                if (!is_diagonal(h.m)) ++mism;
            }
        }
        CHECK(mism == 0);
        for (int c = 0; c < f.num_classes(); ++c)
            CHECK(G.rep.is_one(h_class(G.rep, c, R.one())));
    }
}

TEST_CASE("hermitian pair letters reduce to the one-parameter forms") {
    for (const Setup& su : kSetups) {
        Group G(su.sys, su.order, Ring::make(su.ring), su.kind);
        const Ring& R = *G.R;
        const Folding& f = G.fold;
        INFO(std::string(su.sys), " order ", su.order, " over ", std::string(su.ring));
        long mism = 0;
        for (int c = 0; c < f.num_classes(); ++c) {
            if (f.cls(c).type != ClassType::A2) continue;
            std::vector<APair> units;
            for (const APair& p : aform_enumerate(R))
                if (aform_is_unit(R, p)) units.push_back(p);
            size_t cap = su.exhaustive ? units.size() : 12;
            for (size_t i = 0; i < units.size() && i < cap; ++i) {
                const APair& p = units[i];
                GrpElt wp = w_class_pair(G.rep, c, p);
                if (wp.m != w_class(G.rep, c, p.u).m) ++mism;
                if (G.rep.inv(wp).m != w_class_pair(G.rep, c, aform_inv(R, p)).m)
                    ++mism;
            }
            for (size_t i = 0; i + 1 < units.size() && i < 8; ++i) {
                const APair& p = units[i];
                const APair& q = units[i + 1];
                Elt expect = R.mul(R.theta(p.u), R.inv(q.u));
                if (h_class_pair(G.rep, c, p, q).m !=
                    h_class(G.rep, c, expect).m)
                    ++mism;
            }
            /* non-invertible pairs are rejected */
            for (const APair& p : aform_enumerate(R))
                if (!aform_is_unit(R, p)) {
                    CHECK_THROWS_AS(w_class_pair(G.rep, c, p), domain_error);
                    break;
                }
        }
        CHECK(mism == 0);
    }
}

TEST_CASE("closed-form weyl conjugation matches matrix conjugation") {
    std::mt19937 rng(5);
    for (const Setup& su : kSetups) {
        Group G(su.sys, su.order, Ring::make(su.ring), su.kind);
        const Ring& R = *G.R;
        const Folding& f = G.fold;
        INFO(std::string(su.sys), " order ", su.order, " over ", std::string(su.ring));
        long mism = 0, checked = 0;
        auto probe = [&](int wc, Elt wt, int xc, const APair& p, Elt wu) {
            GrpElt w = w_class(G.rep, wc, wt);
            GrpElt x = x_class(G.rep, xc, p);
            ClassLetter out = conj_x_by_w(G.rep, wc, wt, xc, p);
            if (G.rep.conj(w, x).m != x_class(G.rep, out.cls, out.p).m) ++mism;

            ClassLetter wout = conj_w_by_w(G.rep, wc, wt, xc, wu);
            if (G.rep.conj(w, w_class(G.rep, xc, wu)).m !=
                w_class(G.rep, wout.cls, wout.p.t).m)
                ++mism;

            /* torus letters transport by the recombined weyl factors */
            ClassLetter hout = conj_h_by_w(G.rep, wc, wt, xc, wu);
            if (hout.cls != f.folded_reflect(xc, wc)) ++mism;
            if (G.rep.conj(w, h_class(G.rep, xc, wu)).m !=
                h_class(G.rep, hout.cls, hout.p.t).m)
                ++mism;
            ++checked;
        };
        if (su.exhaustive) {
            for (int wc = 0; wc < f.num_classes(); ++wc) {
                auto wts = weyl_units(R, f, wc, 3);
                for (int xc = 0; xc < f.num_classes(); ++xc) {
                    auto ps = class_params(R, f, xc, 6);
                    auto wus = weyl_units(R, f, xc, 2);
                    for (Elt wt : wts)
                        for (size_t i = 0; i < ps.size(); ++i)
                            probe(wc, wt, xc, ps[i], wus[i % wus.size()]);
                }
            }
        } else {
            for (int trial = 0; trial < 120; ++trial) {
                int wc = (int)(rng() % f.num_classes());
                int xc = (int)(rng() % f.num_classes());
                auto wts = weyl_units(R, f, wc, 5);
                auto ps = class_params(R, f, xc, 5);
                auto wus = weyl_units(R, f, xc, 5);
                probe(wc, wts[rng() % wts.size()], xc, ps[rng() % ps.size()],
                      wus[rng() % wus.size()]);
            }
        }
        CHECK(mism == 0);
        CHECK(checked > 0);
    }
}

TEST_CASE("closed-form torus conjugation matches matrix conjugation") {
    for (const Setup& su : kSetups) {
        Group G(su.sys, su.order, Ring::make(su.ring), su.kind);
        const Ring& R = *G.R;
        const Folding& f = G.fold;
        INFO(std::string(su.sys), " order ", su.order, " over ", std::string(su.ring));
        long mism = 0;
        for (int hc = 0; hc < f.num_classes(); ++hc) {
            auto hts = weyl_units(R, f, hc, 3);
            for (Elt ht : hts) {
                GrpElt h = h_class(G.rep, hc, ht);
                for (int xc = 0; xc < f.num_classes(); ++xc)
                    for (const APair& p : class_params(R, f, xc, 5)) {
                        APair q = conj_x_by_torus(G.rep, h.m, xc, p);
                        if (G.rep.conj(h, x_class(G.rep, xc, p)).m !=
                            x_class(G.rep, xc, q).m)
                            ++mism;
                    }
            }
        }
        CHECK(mism == 0);
    }
}

TEST_CASE("center of the natural representation") {
    Group G3("A3", 2, Ring::make("gf(9)"), Rep::Kind::Natural);
    auto z3 = center_elements(G3.rep);
    CHECK(z3.size() == 4);
    long bad = 0;
    for (const GrpElt& z : z3) {
        if (!G3.rep.twist_fixed(z)) ++bad;
        for (int c = 0; c < G3.fold.num_classes(); ++c)
            for (const APair& p : class_params(*G3.R, G3.fold, c, 4)) {
                GrpElt x = x_class(G3.rep, c, p);
                if (G3.rep.mul(z, x).m != G3.rep.mul(x, z).m) ++bad;
            }
    }
    CHECK(bad == 0);

    Group G4("A4", 2, Ring::make("gf(9)"), Rep::Kind::Natural);
    CHECK(center_elements(G4.rep).size() == 1);

    Group Ga("A3", 2, Ring::make("gf(9)"), Rep::Kind::Adjoint);
    auto za = center_elements(Ga.rep);
    REQUIRE(za.size() == 1);
    CHECK(Ga.rep.is_one(za[0]));
}

TEST_CASE("untwisting: generators, homomorphism, twisted image") {
    struct USetup {
        const char* sys;
        int order;
        const char* ring;
    };
    const std::vector<USetup> setups = {
        {"A3", 2, "prod2(gf(3))"},
        {"A4", 2, "prod2(gf(5))"},
        {"D4", 3, "prod3(gf(5))"},
    };
    std::mt19937 rng(11);
    for (const USetup& su : setups) {
        Group G(su.sys, su.order, Ring::make(su.ring), Rep::Kind::Adjoint);
        const Ring& R = *G.R;
        const RootSystem& rs = G.fold.rs();
        Elt b = R.base()->order();
        INFO(std::string(su.sys), " over ", std::string(su.ring));
        long mism = 0;

        /* generator formula agrees with the embedding on root letters */
        for (int a = 0; a < rs.num_roots(); ++a)
            for (Elt t = 0; t < b; ++t) {
                GrpElt lift = untwist_generator(G.rep, a, t);
                GrpElt emb = untwist_embed(G.rep, G.rep.x_root(a, t));
                if (lift.m != emb.m) ++mism;
                if (!G.rep.twist_fixed(emb)) ++mism;
            }

        /* the embedding is a homomorphism on first-slot elements */
        auto rnd_component = [&]() {
            GrpElt g = G.rep.one();
            for (int i = 0; i < 4; ++i)
                g = G.rep.mul(
                    g, G.rep.x_root((int)(rng() % rs.num_roots()), rng() % b));
            return g;
        };
        for (int trial = 0; trial < 60; ++trial) {
            GrpElt g1 = rnd_component(), g2 = rnd_component();
            GrpElt lhs = G.rep.mul(untwist_embed(G.rep, g1),
                                   untwist_embed(G.rep, g2));
            GrpElt rhs = untwist_embed(G.rep, G.rep.mul(g1, g2));
            if (lhs.m != rhs.m) ++mism;
            if (!G.rep.twist_fixed(lhs)) ++mism;
            if (G.rep.mul(lhs.m, lhs.mi) != G.rep.ident()) ++mism;
        }
        CHECK(mism == 0);
        CHECK(G.rep.is_one(untwist_embed(G.rep, G.rep.one())));
    }
}

TEST_CASE("word grammar: parse, evaluate, serialize") {
    Group G("A4", 2, Ring::make("gf(9)"), Rep::Kind::Adjoint);
    const Ring& R = *G.R;
    const Folding& f = G.fold;

    /* find a hermitian and an orthogonal positive class */
    int c2 = -1, c1 = -1;
    for (int c = 0; c < f.num_classes(); ++c) {
        if (!f.cls(c).positive) continue;
        if (f.cls(c).type == ClassType::A2 && c2 < 0) c2 = c;
        if (f.cls(c).type == ClassType::A1x2 && c1 < 0) c1 = c;
    }
    REQUIRE(c2 >= 0);
    REQUIRE(c1 >= 0);
    std::string n2 = f.class_name(c2), n1 = f.class_name(c1);
    APair hp = aform_enumerate(R)[5];

    std::string s = "(* (x [" + n1 + "] 4) (inv (x [" + n2 + "] " +
                    std::to_string(hp.t) + " " + std::to_string(hp.u) +
                    ")))";
    Word w = parse_word(s, f, R);
    GrpElt direct = G.rep.mul(x_class(G.rep, c1, {4, 0}),
                              G.rep.inv(x_class(G.rep, c2, hp)));
    CHECK(eval_word(G.rep, w).m == direct.m);
    CHECK(word_str(w, f) == s);
    CHECK(word_str(parse_word(word_str(w, f), f, R), f) == s);

    /* combinators against matrix arithmetic */
    std::string sa = "(x [" + n1 + "] 5)";
    std::string sb = "(w [" + n2 + "] 2)";
    Word wc = parse_word("(comm " + sa + " " + sb + ")", f, R);
    GrpElt ga = x_class(G.rep, c1, {5, 0});
    GrpElt gb = w_class(G.rep, c2, 2);
    CHECK(eval_word(G.rep, wc).m == G.rep.comm(ga, gb).m);
    Word wj = parse_word("(conj " + sb + " " + sa + ")", f, R);
    CHECK(eval_word(G.rep, wj).m == G.rep.conj(gb, ga).m);

    /* negative class tokens */
    int nc = f.neg(c1);
    Word wn = parse_word("(x [" + f.class_name(nc) + "] 7)", f, R);
    CHECK(eval_word(G.rep, wn).m == x_class(G.rep, nc, {7, 0}).m);

    /* error paths: malformed words and out-of-domain parameters */
    CHECK_THROWS_AS(parse_word("(x [zz] 1)", f, R), domain_error);
    CHECK_THROWS_AS(parse_word("(x [" + n1 + "] 99)", f, R), domain_error);
    CHECK_THROWS_AS(parse_word("(x [" + n1 + "] 1 2)", f, R), domain_error);
    CHECK_THROWS_AS(parse_word("(x [" + n2 + "] 1)", f, R), domain_error);
    CHECK_THROWS_AS(parse_word("(inv " + sa + " " + sa + ")", f, R),
                    domain_error);
    CHECK_THROWS_AS(parse_word(sa + " junk", f, R), domain_error);
    CHECK_THROWS_AS(parse_word("(q 1)", f, R), domain_error);
    /* a valid parse whose evaluation violates the domain */
    Word bad = parse_word("(x [" + n2 + "] 1 0)", f, R);
    if (!aform_valid(R, {1, 0})) CHECK_THROWS_AS(eval_word(G.rep, bad), domain_error);
    /* non-twisted character */
    Word hbad = parse_word("(hchi 2 1 1 1)", f, R);
    bool fixed_ok = G.rep.char_twist_fixed({2, 1, 1, 1});
    if (!fixed_ok) CHECK_THROWS_AS(eval_word(G.rep, hbad), domain_error);
}

TEST_CASE("unipotent products over the positive classes are distinct") {
    Group G("A3", 2, Ring::make("gf(9)"), Rep::Kind::Natural);
    const Ring& R = *G.R;
    const Folding& f = G.fold;
    std::vector<int> pos;
    for (int c = 0; c < f.num_classes(); ++c)
        if (f.cls(c).positive) pos.push_back(c);
    REQUIRE(pos.size() == 4);

    std::set<std::vector<Elt>> seen;
    std::vector<std::vector<APair>> doms;
    size_t total = 1;
    for (int c : pos) {
        doms.push_back(class_params(R, f, c, 0));
        total *= doms.back().size();
    }
    CHECK(total == 729);
    std::vector<size_t> idx(pos.size(), 0);
    for (size_t n = 0; n < total; ++n) {
        size_t rem = n;
        GrpElt g = G.rep.one();
        for (size_t i = 0; i < pos.size(); ++i) {
            idx[i] = rem % doms[i].size();
            rem /= doms[i].size();
            g = G.rep.mul(g, x_class(G.rep, pos[i], doms[i][idx[i]]));
        }
        seen.insert(g.m.a);
    }
    CHECK(seen.size() == 729);
}
