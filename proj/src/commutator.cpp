/***********************************************************************
 * commutator.cpp
 *
 * PURPOSE: commutator expansion of twisted root elements by exact
 *          collection in the nilpotent span subgroup.  Letters carry
 *          their cone grade (i,j) -- the unique rational position of
 *          their root on the grid spanned by the two class projections,
 *          scaled so the non-central input pieces sit at (1,0) and
 *          (0,1).  Grades add under bracketing, which both orders the
 *          normal form and guarantees termination.
 ***********************************************************************/
#include "tcg/commutator.hpp"

#include <algorithm>

namespace tcg {

namespace {

struct Graded {
    int root;
    int gi, gj;
    Elt s;
};

int level(const Graded& g) { return g.gi + g.gj; }

/* normal-form order: ascending level, then root id */
bool in_order(const Graded& a, const Graded& b) {
    if (level(a) != level(b)) return level(a) < level(b);
    return a.root <= b.root;
}

/* collect a letter word into normal form: sorted, one letter per root,
 * no zero parameters */
void collect(const RootSystem& rs, const ChevalleyBasis& B, const Ring& R,
             std::vector<Graded>& w) {
    long guard = 0;
    size_t i = 0;
    while (i + 1 < w.size()) {
        if (++guard > 4000000)
            throw domain_error("internal: commutator collection diverged");
        Graded a = w[i], b = w[i + 1];
        if (a.s == R.zero()) {
            w.erase(w.begin() + i);
            if (i > 0) --i;
            continue;
        }
        if (b.s == R.zero()) {
            w.erase(w.begin() + i + 1);
            continue;
        }
        if (a.root == b.root) {
            w[i].s = R.add(a.s, b.s);
            w.erase(w.begin() + i + 1);
            if (i > 0) --i;
            continue;
        }
        if (in_order(a, b)) {
            ++i;
            continue;
        }
        if (b.root == rs.neg_id(a.root))
            throw domain_error("internal: opposite roots met in collection");
        w[i] = b;
        w[i + 1] = a;
        int sum = rs.sum_id(a.root, b.root);
        if (sum >= 0) {
            Elt c = R.mul(R.of_int(B.N(a.root, b.root)), R.mul(a.s, b.s));
            if (c != R.zero())
                w.insert(w.begin() + i, Graded{sum, a.gi + b.gi, a.gj + b.gj, c});
        }
        if (i > 0) --i;
    }
    if (!w.empty() && w.back().s == R.zero()) w.pop_back();
    if (w.size() == 1 && w[0].s == R.zero()) w.clear();
}

}  // namespace

/* ------------------------------------------------------------------ */
/* class letter pieces                                                 */
/* ------------------------------------------------------------------ */

std::vector<std::pair<int, Elt>> class_letter_roots(const ChevalleyBasis& B,
                                                    const Ring& R, int cls,
                                                    APair p) {
    const Folding& f = B.fold();
    param_check(R, f, cls, p);
    const FoldClass& fc = f.cls(cls);
    const GraphAut& aut = f.aut();
    std::vector<std::pair<int, Elt>> out;
    out.push_back({fc.leader, p.t});
    if (fc.type == ClassType::A1) return out;
    out.push_back({aut.apply(fc.leader), R.theta(p.t)});
    if (fc.type == ClassType::A1x3)
        out.push_back({aut.apply_pow(fc.leader, 2), R.theta(R.theta(p.t))});
    if (fc.type == ClassType::A2) {
        Elt n = R.of_int(B.N(aut.apply(fc.leader), fc.leader));
        out.push_back({fc.roots[2], R.mul(n, p.u)});
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* commutator expansion                                                */
/* ------------------------------------------------------------------ */

std::vector<ClassLetter> commutator_letters(const ChevalleyBasis& B,
                                            const Ring& R, int c1, APair p,
                                            int c2, APair q) {
    const Folding& f = B.fold();
    const RootSystem& rs = f.rs();
    f.classify_pair(c1, c2);  // validates distinct and non-opposite; the
                              // expansion itself is uniform across kinds
    param_check(R, f, c1, p);
    param_check(R, f, c2, q);

    auto inverse_param = [&](int cls, APair pp) {
        return f.cls(cls).type == ClassType::A2 ? aform_inv(R, pp)
                                                : APair{R.neg(pp.t), R.zero()};
    };
    auto push_letter = [&](std::vector<Graded>& w, int cls, APair pp,
                           bool first_side) {
        const FoldClass& fc = f.cls(cls);
        for (auto& [r, s] : class_letter_roots(B, R, cls, pp)) {
            int g = fc.type == ClassType::A2 && r == fc.roots[2] ? 2 : 1;
            w.push_back({r, first_side ? g : 0, first_side ? 0 : g, s});
        }
    };

    std::vector<Graded> w;
    push_letter(w, c1, p, true);
    push_letter(w, c2, q, false);
    push_letter(w, c1, inverse_param(c1, p), true);
    push_letter(w, c2, inverse_param(c2, q), false);
    collect(rs, B, R, w);

    /* peel one class letter at a time, ascending level order */
    std::vector<ClassLetter> out;
    int guard = 0;
    while (!w.empty()) {
        if (++guard > 64)
            throw domain_error("internal: commutator peel diverged");
        int cls = f.class_of_root(w.front().root);
        const FoldClass& fc = f.cls(cls);
        auto find = [&](int r) -> const Graded* {
            for (const Graded& g : w)
                if (g.root == r) return &g;
            return nullptr;
        };
        APair lp{R.zero(), R.zero()};
        if (const Graded* g = find(fc.leader)) lp.t = g->s;
        if (fc.type == ClassType::A2)
            if (const Graded* g = find(fc.roots[2])) {
                int n = B.N(f.aut().apply(fc.leader), fc.leader);
                lp.u = n == 1 ? g->s : R.neg(g->s);
            }
        if (!param_ok(R, f, cls, lp))
            throw domain_error("internal: commutator peel left the domain");
        out.push_back({cls, lp});

        /* w := letter^-1 * w, then verify the class slots emptied */
        std::vector<Graded> nw;
        const FoldClass& nf = fc;
        for (auto& [r, s] : class_letter_roots(B, R, cls, inverse_param(cls, lp))) {
            if (s == R.zero()) continue;
            const Graded* g = find(r);
            if (!g) throw domain_error("internal: commutator peel slot");
            nw.push_back({r, g->gi, g->gj, s});
        }
        nw.insert(nw.end(), w.begin(), w.end());
        collect(rs, B, R, nw);
        for (const Graded& g : nw)
            for (int r : nf.roots)
                if (g.root == r)
                    throw domain_error("internal: commutator peel residue");
        w = std::move(nw);
    }
    return out;
}

}  // namespace tcg
