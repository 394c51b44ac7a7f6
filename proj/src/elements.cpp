/***********************************************************************
 * elements.cpp
 *
 * PURPOSE: class letters and their parameter domains, closed-form
 *          conjugation by Weyl and torus letters, the center, the
 *          untwisting embedding, and the word grammar.
 ***********************************************************************/
#include "tcg/elements.hpp"

#include "tcg/commutator.hpp"

#include <cctype>
#include <sstream>
#include <string>

namespace tcg {

namespace {

/* the root letters making up x_[cls](p), in written order */
struct RootLetter {
    int root;
    Elt u;
};

std::vector<RootLetter> class_letter_pieces(const Rep& rep, int cls, APair p) {
    std::vector<RootLetter> out;
    for (auto& [r, s] : class_letter_roots(rep.basis(), rep.ring(), cls, p))
        out.push_back({r, s});
    return out;
}

/* reassemble conjugated pieces (a product of root letters, in written
 * order) into a class letter of the target class.  For hermitian
 * classes the two wing letters may arrive swapped, which shifts the
 * central slot by the reordering commutator. */
ClassLetter reassemble(const Rep& rep, int tcls,
                       const std::vector<RootLetter>& pieces) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    const FoldClass& tc = f.cls(tcls);
    int lead = tc.leader;
    APair q;
    if (tc.type == ClassType::A2) {
        int bar = f.aut().apply(lead);
        int fix = tc.roots[2];
        /* invariant: product so far = x_lead(sl) x_bar(sb) x_fix(sf) */
        Elt sl = 0, sb = 0, sf = 0;
        Elt n = R.of_int(rep.basis().N(bar, lead));
        for (const RootLetter& rl : pieces) {
            if (rl.root == fix) {
                sf = R.add(sf, rl.u);
            } else if (rl.root == bar) {
                sb = R.add(sb, rl.u);
            } else if (rl.root == lead) {
                sf = R.add(sf, R.mul(n, R.mul(sb, rl.u)));
                sl = R.add(sl, rl.u);
            } else {
                throw domain_error("internal: conjugation reassembly");
            }
        }
        if (sb != R.theta(sl))
            throw domain_error("internal: conjugation reassembly");
        q = {sl, R.mul(R.inv(n), sf)};
    } else {
        int norb = tc.type == ClassType::A1 ? 1 : tc.type == ClassType::A1x2 ? 2 : 3;
        std::vector<Elt> acc(norb, 0);
        for (const RootLetter& rl : pieces) {
            bool hit = false;
            for (int k = 0; k < norb; ++k)
                if (rl.root == f.aut().apply_pow(lead, k)) {
                    acc[k] = R.add(acc[k], rl.u);
                    hit = true;
                }
            if (!hit) throw domain_error("internal: conjugation reassembly");
        }
        for (int k = 1; k < norb; ++k)
            if (acc[k] != R.theta_pow(acc[0], k))
                throw domain_error("internal: conjugation reassembly");
        q = {acc[0], 0};
    }
    param_check(R, f, tcls, q);
    return {tcls, q};
}

/* the root-level Weyl letters of w_[cls](t), in written order */
std::vector<std::pair<int, Elt>> w_letter_seq(const Rep& rep, int cls, Elt t) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    const FoldClass& fc = f.cls(cls);
    int a = fc.leader;
    switch (fc.type) {
        case ClassType::A1:
            return {{a, t}};
        case ClassType::A1x2:
            return {{a, t}, {f.aut().apply(a), R.theta(t)}};
        case ClassType::A1x3:
            return {{a, t},
                    {f.aut().apply(a), R.theta(t)},
                    {f.aut().apply_pow(a, 2), R.theta_pow(t, 2)}};
        case ClassType::A2:
            return {{a, R.theta(t)}, {f.aut().apply(a), R.one()}, {a, t}};
    }
    throw domain_error("internal: class type");
}

/* w_a(t) x_b(u) w_a(t)^{-1} = x_{s_a(b)}(c(a,b) t^{-<b,a>} u) */
RootLetter conj_piece(const Rep& rep, int a, Elt t, const RootLetter& x) {
    const RootSystem& rs = rep.rsys();
    const Ring& R = rep.ring();
    Elt v = R.mul(R.of_int(rep.basis().c_sign(a, x.root)),
                  R.mul(R.pow(t, -rs.pairing(x.root, a)), x.u));
    return {rs.reflect(x.root, a), v};
}

GrpElt w_root(const Rep& rep, int a, Elt t) {
    const Ring& R = rep.ring();
    return rep.mul(rep.mul(rep.x_root(a, t),
                           rep.x_root(rep.rsys().neg_id(a), R.neg(R.inv(t)))),
                   rep.x_root(a, t));
}

void check_scalar_weyl_param(const Rep& rep, int cls, Elt t) {
    const Ring& R = rep.ring();
    if (!R.is_unit(t)) throw domain_error("weyl letter needs a unit parameter");
    if (rep.fold().cls(cls).type == ClassType::A1 && !R.is_fixed(t))
        throw domain_error("fixed-class weyl letter needs a fixed parameter");
}

}  // namespace

/* ------------------------------------------------------------------ */
/* parameters and letters                                             */
/* ------------------------------------------------------------------ */

bool param_ok(const Ring& R, const Folding& f, int cls, APair p) {
    if (cls < 0 || cls >= f.num_classes()) return false;
    switch (f.cls(cls).type) {
        case ClassType::A1: return R.is_fixed(p.t) && p.u == 0;
        case ClassType::A1x2:
        case ClassType::A1x3: return p.t < R.order() && p.u == 0;
        case ClassType::A2: return aform_valid(R, p);
    }
    return false;
}

void param_check(const Ring& R, const Folding& f, int cls, APair p) {
    if (!param_ok(R, f, cls, p))
        throw domain_error("parameter outside the class domain");
}

GrpElt x_class(const Rep& rep, int cls, APair p) {
    param_check(rep.ring(), rep.fold(), cls, p);
    GrpElt g = rep.one();
    for (const RootLetter& rl : class_letter_pieces(rep, cls, p))
        g = rep.mul(g, rep.x_root(rl.root, rl.u));
    return g;
}

APair negclass_param(const Ring& R, const Folding& f, int cls, APair p) {
    int k = f.neg_twist(cls);
    return {R.theta_pow(p.t, k), R.theta_pow(p.u, k)};
}

GrpElt x_negclass(const Rep& rep, int cls, APair p) {
    const Folding& f = rep.fold();
    return x_class(rep, f.neg(cls), negclass_param(rep.ring(), f, cls, p));
}

GrpElt w_class(const Rep& rep, int cls, Elt t) {
    check_scalar_weyl_param(rep, cls, t);
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    if (f.cls(cls).type == ClassType::A2) {
        GrpElt g = rep.one();
        for (auto [a, s] : w_letter_seq(rep, cls, t)) g = rep.mul(g, w_root(rep, a, s));
        return g;
    }
    GrpElt x1 = x_class(rep, cls, {t, 0});
    GrpElt x2 = x_negclass(rep, cls, {R.neg(R.inv(t)), 0});
    return rep.mul(rep.mul(x1, x2), x1);
}

GrpElt w_class_pair(const Rep& rep, int cls, APair p) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    if (f.cls(cls).type != ClassType::A2)
        throw domain_error("pair form is for hermitian classes");
    param_check(R, f, cls, p);
    if (!aform_is_unit(R, p))
        throw domain_error("weyl letter needs an invertible pair");
    Elt ui = R.inv(p.u);
    APair mid{R.neg(R.mul(ui, R.theta(p.t))), ui};
    APair last{R.mul(R.mul(p.u, R.inv(R.theta(p.u))), p.t), p.u};
    return rep.mul(rep.mul(x_class(rep, cls, p), x_negclass(rep, cls, mid)),
                   x_class(rep, cls, last));
}

GrpElt h_class(const Rep& rep, int cls, Elt t) {
    check_scalar_weyl_param(rep, cls, t);
    const Ring& R = rep.ring();
    /* hermitian classes invert as w(t)^-1 = w(theta t), so the torus
     * letter pairs w(theta t) with w(1); orthogonal classes use the
     * classical w(t) w(-1) */
    if (rep.fold().cls(cls).type == ClassType::A2)
        return rep.mul(w_class(rep, cls, R.theta(t)), w_class(rep, cls, R.one()));
    return rep.mul(w_class(rep, cls, t), w_class(rep, cls, R.neg(R.one())));
}

GrpElt h_class_pair(const Rep& rep, int cls, APair p1, APair p2) {
    return rep.mul(w_class_pair(rep, cls, p1), w_class_pair(rep, cls, p2));
}

/* ------------------------------------------------------------------ */
/* closed-form conjugation                                            */
/* ------------------------------------------------------------------ */

ClassLetter conj_x_by_w(const Rep& rep, int wcls, Elt wt, int xcls, APair p) {
    check_scalar_weyl_param(rep, wcls, wt);
    param_check(rep.ring(), rep.fold(), xcls, p);
    std::vector<RootLetter> pieces = class_letter_pieces(rep, xcls, p);
    auto seq = w_letter_seq(rep, wcls, wt);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
        for (RootLetter& rl : pieces) rl = conj_piece(rep, it->first, it->second, rl);
    return reassemble(rep, rep.fold().folded_reflect(xcls, wcls), pieces);
}

ClassLetter conj_w_by_w(const Rep& rep, int wcls, Elt wt, int xcls, Elt u) {
    check_scalar_weyl_param(rep, wcls, wt);
    check_scalar_weyl_param(rep, xcls, u);
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    const FoldClass& xc = f.cls(xcls);
    if (xc.type == ClassType::A2) {
        /* Hermitian letter: three root factors w_a(theta u) w_abar(1) w_a(u).
         * Each factor transports multiplicatively (multiplier kappa1 along the
         * leader path, kappa2 along the partner path); renormalizing the
         * transported product back into anchored form makes the torus residue
         * h(1/kappa2) cancel, leaving parameter kappa1*kappa2*u -- twisted by
         * theta when the leader lands on the partner root. */
        RootLetter pl{xc.leader, R.one()};
        RootLetter pb{f.aut().apply(xc.leader), R.one()};
        auto aseq = w_letter_seq(rep, wcls, wt);
        for (auto it = aseq.rbegin(); it != aseq.rend(); ++it) {
            pl = conj_piece(rep, it->first, it->second, pl);
            pb = conj_piece(rep, it->first, it->second, pb);
        }
        int acls = f.folded_reflect(xcls, wcls);
        const FoldClass& ac = f.cls(acls);
        if (pb.u != R.theta(pl.u) || pb.root != f.aut().apply(pl.root))
            throw domain_error("internal: weyl conjugation pattern");
        Elt v = R.mul(R.mul(pl.u, pb.u), u);
        if (pl.root != ac.leader) v = R.theta(v);
        return {acls, {v, 0}};
    }
    /* transport the scalar along the non-fixed orbit pattern */
    int norb = xc.type == ClassType::A1 ? 1 : xc.type == ClassType::A1x2 ? 2 : 3;
    std::vector<RootLetter> pieces;
    for (int k = 0; k < norb; ++k)
        pieces.push_back({f.aut().apply_pow(xc.leader, k), R.theta_pow(u, k)});
    auto seq = w_letter_seq(rep, wcls, wt);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
        for (RootLetter& rl : pieces) rl = conj_piece(rep, it->first, it->second, rl);
    int tcls = f.folded_reflect(xcls, wcls);
    const FoldClass& tc = f.cls(tcls);
    Elt out = 0;
    bool found = false;
    for (const RootLetter& rl : pieces)
        if (rl.root == tc.leader) { out = rl.u; found = true; }
    if (!found) throw domain_error("internal: weyl conjugation target");
    for (int k = 0; k < norb; ++k) {
        bool ok = false;
        for (const RootLetter& rl : pieces)
            if (rl.root == f.aut().apply_pow(tc.leader, k) &&
                rl.u == R.theta_pow(out, k))
                ok = true;
        if (!ok) throw domain_error("internal: weyl conjugation pattern");
    }
    return {tcls, {out, 0}};
}

ClassLetter conj_h_by_w(const Rep& rep, int wcls, Elt wt, int xcls, Elt u) {
    const Ring& R = rep.ring();
    bool herm = rep.fold().cls(xcls).type == ClassType::A2;
    /* h(u) factors as w(u) w(-1) (orthogonal) or w(theta u) w(1)
     * (hermitian); transport both factors and recombine */
    ClassLetter a = conj_w_by_w(rep, wcls, wt, xcls, herm ? R.theta(u) : u);
    ClassLetter b = conj_w_by_w(rep, wcls, wt, xcls, R.one());
    Elt v = herm ? R.mul(R.theta(a.p.t), R.inv(b.p.t))
                 : R.mul(a.p.t, R.inv(b.p.t));
    return {a.cls, {v, 0}};
}

APair conj_x_by_torus(const Rep& rep, const Mat& h, int xcls, APair p) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    param_check(R, f, xcls, p);
    std::vector<Elt> rv = rep.root_values(h);
    for (int r : f.cls(xcls).roots)
        if (rv[f.aut().apply(r)] != R.theta(rv[r]))
            throw domain_error("torus element is not twist-compatible");
    Elt r = rv[f.cls(xcls).leader];
    APair q = f.cls(xcls).type == ClassType::A2
                  ? aform_act(R, r, p)
                  : APair{R.mul(r, p.t), 0};
    if (!param_ok(R, f, xcls, q))
        throw domain_error("torus conjugation left the class domain");
    return q;
}

/* ------------------------------------------------------------------ */
/* center and untwisting                                              */
/* ------------------------------------------------------------------ */

std::vector<GrpElt> center_elements(const Rep& rep) {
    const Ring& R = rep.ring();
    if (rep.kind() == Rep::Kind::Adjoint) return {rep.one()};
    std::vector<GrpElt> out;
    for (Elt z : R.units()) {
        if (R.mul(z, R.theta(z)) != R.one()) continue;
        if (R.pow(z, rep.dim()) != R.one()) continue;
        Mat m = rep.ident(), mi = rep.ident();
        for (int i = 0; i < rep.dim(); ++i) {
            m.at(i, i) = z;
            mi.at(i, i) = R.inv(z);
        }
        out.push_back({m, mi});
    }
    return out;
}

namespace {

/* slot visiting order of the shift: f(0)=0, theta(e_{f(k)}) = e_{f(k+1)}
 * where e_j is the idempotent with the base one in digit j */
std::vector<int> untwist_slot_order(const Ring& R) {
    if (R.kind() != Ring::Kind::Prod)
        throw domain_error("untwisting needs a shift ring");
    int o = R.arity();
    Elt b = R.base()->order();
    std::vector<Elt> pw(o, 1);
    for (int k = 1; k < o; ++k) pw[k] = pw[k - 1] * b;
    Elt one0 = R.of_int(1) % b;   // the one of the shift ring replicates
    std::vector<int> f(o, 0);
    for (int k = 1; k < o; ++k) {
        Elt th = R.theta(one0 * pw[f[k - 1]]);
        f[k] = -1;
        for (int j = 0; j < o; ++j)
            if (th == one0 * pw[j]) f[k] = j;
        if (f[k] < 0) throw domain_error("internal: shift direction");
    }
    return f;
}

}  // namespace

GrpElt untwist_embed(const Rep& rep, const GrpElt& base_component) {
    const Ring& R = rep.ring();
    std::vector<int> f = untwist_slot_order(R);
    int o = R.arity();
    Elt b = R.base()->order();
    std::vector<Elt> pw(o, 1);
    for (int k = 1; k < o; ++k) pw[k] = pw[k - 1] * b;
    Elt one0 = R.of_int(1) % b;

    /* read the first-slot component and spread it across every slot */
    auto replicate = [&](const Mat& src) {
        Mat out(rep.dim());
        for (size_t i = 0; i < out.a.size(); ++i) {
            Elt d0 = src.a[i] % b;
            for (int k = 0; k < o; ++k) out.a[i] += d0 * pw[k];
        }
        return out;
    };

    /* image = sum_k e_{f(k)} sigma^k(replicated component); the
     * orthogonal idempotents make it twist-fixed and multiplicative */
    GrpElt cur{replicate(base_component.m), replicate(base_component.mi)};
    Mat am(rep.dim()), ai(rep.dim());
    for (int k = 0; k < o; ++k) {
        Elt ek = one0 * pw[f[k]];
        for (size_t i = 0; i < am.a.size(); ++i) {
            am.a[i] = R.add(am.a[i], R.mul(ek, cur.m.a[i]));
            ai.a[i] = R.add(ai.a[i], R.mul(ek, cur.mi.a[i]));
        }
        if (k + 1 < o) cur = rep.twist(cur);
    }
    return {am, ai};
}

GrpElt untwist_generator(const Rep& rep, int root_id, Elt base_t) {
    const Ring& R = rep.ring();
    const ChevalleyBasis& cb = rep.basis();
    const GraphAut& aut = rep.fold().aut();
    std::vector<int> f = untwist_slot_order(R);
    int o = R.arity();
    Elt b = R.base()->order();
    std::vector<Elt> pw(o, 1);
    for (int k = 1; k < o; ++k) pw[k] = pw[k - 1] * b;
    if (base_t >= b) throw domain_error("component value outside the base slot");

    if (aut.apply(root_id) == root_id) {
        /* fixed root: one letter, digit in slot f(k) twisted by eps^k */
        Elt packed = 0;
        int e = 1;
        for (int k = 0; k < o; ++k) {
            Elt digit = base_t * pw[f[k]];
            packed = R.add(packed, e == 1 ? digit : R.neg(digit));
            e *= cb.eps_sign(root_id);
        }
        return rep.x_root(root_id, packed);
    }
    /* free orbit: letter at rho^k(root) with digit in slot f(k) and the
     * accumulated eps sign along the orbit */
    GrpElt g = rep.one();
    int a = root_id;
    int e = 1;
    for (int k = 0; k < o; ++k) {
        Elt digit = base_t * pw[f[k]];
        g = rep.mul(g, rep.x_root(a, e == 1 ? digit : R.neg(digit)));
        e *= cb.eps_sign(a);
        a = aut.apply(a);
    }
    return g;
}

/* ------------------------------------------------------------------ */
/* words                                                              */
/* ------------------------------------------------------------------ */

namespace {

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == ')') {
            if (!cur.empty()) { out.push_back(cur); cur.clear(); }
            out.push_back(std::string(1, c));
        } else if (isspace((unsigned char)c)) {
            if (!cur.empty()) { out.push_back(cur); cur.clear(); }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Elt parse_elt(const std::string& tok, const Ring& R) {
    if (tok.empty() || tok.size() > 10 ||
        tok.find_first_not_of("0123456789") != std::string::npos)
        throw domain_error("expected a ring element code: " + tok);
    unsigned long long v = std::stoull(tok);
    if (v >= R.order()) throw domain_error("ring element code out of range: " + tok);
    return (Elt)v;
}

int parse_cls(const std::string& tok, const Folding& f) {
    if (tok.size() < 3 || tok.front() != '[' || tok.back() != ']')
        throw domain_error("expected a class token like [c1]: " + tok);
    int c = f.class_by_name(tok.substr(1, tok.size() - 2));
    if (c < 0) throw domain_error("unknown class: " + tok);
    return c;
}

Word parse_rec(const std::vector<std::string>& toks, size_t& i,
               const Folding& f, const Ring& R) {
    if (i >= toks.size() || toks[i] != "(")
        throw domain_error("expected ( in word");
    ++i;
    if (i >= toks.size()) throw domain_error("truncated word");
    std::string head = toks[i++];
    Word w;
    auto params_until_close = [&](size_t lo, size_t hi) {
        while (i < toks.size() && toks[i] != ")") w.params.push_back(parse_elt(toks[i++], R));
        if (w.params.size() < lo || w.params.size() > hi)
            throw domain_error("wrong number of parameters for " + head);
    };
    if (head == "x" || head == "w" || head == "h") {
        w.op = head == "x" ? Word::Op::X : head == "w" ? Word::Op::W : Word::Op::H;
        if (i >= toks.size()) throw domain_error("truncated word");
        w.cls = parse_cls(toks[i++], f);
        bool herm = f.cls(w.cls).type == ClassType::A2;
        if (head == "x") params_until_close(herm ? 2 : 1, herm ? 2 : 1);
        else if (head == "w") params_until_close(1, herm ? 2 : 1);
        else params_until_close(1, herm ? 4 : 1);
        if (w.op == Word::Op::H && w.params.size() != 1 && w.params.size() != 4)
            throw domain_error("torus letter takes 1 or 4 parameters");
    } else if (head == "hchi") {
        w.op = Word::Op::HChi;
        while (i < toks.size() && toks[i] != ")") w.params.push_back(parse_elt(toks[i++], R));
    } else if (head == "*" || head == "inv" || head == "conj" || head == "comm") {
        w.op = head == "*" ? Word::Op::Mul
               : head == "inv" ? Word::Op::Inv
               : head == "conj" ? Word::Op::Conj
                                : Word::Op::Comm;
        while (i < toks.size() && toks[i] != ")")
            w.kids.push_back(parse_rec(toks, i, f, R));
        size_t need = head == "inv" ? 1 : head == "*" ? w.kids.size() : 2;
        if (w.kids.size() != need && head != "*")
            throw domain_error(head + " takes " + std::to_string(need) + " arguments");
    } else {
        throw domain_error("unknown word head: " + head);
    }
    if (i >= toks.size() || toks[i] != ")") throw domain_error("expected ) in word");
    ++i;
    return w;
}

}  // namespace

Word parse_word(const std::string& text, const Folding& f, const Ring& R) {
    auto toks = tokenize(text);
    size_t i = 0;
    Word w = parse_rec(toks, i, f, R);
    if (i != toks.size()) throw domain_error("trailing input after word");
    return w;
}

std::string word_str(const Word& w, const Folding& f) {
    std::ostringstream os;
    os << '(';
    switch (w.op) {
        case Word::Op::X: os << "x"; break;
        case Word::Op::W: os << "w"; break;
        case Word::Op::H: os << "h"; break;
        case Word::Op::HChi: os << "hchi"; break;
        case Word::Op::Mul: os << "*"; break;
        case Word::Op::Inv: os << "inv"; break;
        case Word::Op::Conj: os << "conj"; break;
        case Word::Op::Comm: os << "comm"; break;
    }
    if (w.op == Word::Op::X || w.op == Word::Op::W || w.op == Word::Op::H)
        os << " [" << f.class_name(w.cls) << ']';
    for (Elt p : w.params) os << ' ' << p;
    for (const Word& k : w.kids) os << ' ' << word_str(k, f);
    os << ')';
    return os.str();
}

GrpElt eval_word(const Rep& rep, const Word& w) {
    const Ring& R = rep.ring();
    switch (w.op) {
        case Word::Op::X:
            return x_class(rep, w.cls,
                           {w.params[0], w.params.size() > 1 ? w.params[1] : 0});
        case Word::Op::W:
            if (w.params.size() == 2)
                return w_class_pair(rep, w.cls, {w.params[0], w.params[1]});
            return w_class(rep, w.cls, w.params[0]);
        case Word::Op::H:
            if (w.params.size() == 4)
                return h_class_pair(rep, w.cls, {w.params[0], w.params[1]},
                                    {w.params[2], w.params[3]});
            return h_class(rep, w.cls, w.params[0]);
        case Word::Op::HChi: {
            if (w.params.size() != (size_t)rep.rsys().rank())
                throw domain_error("character needs one value per lattice generator");
            GrpElt h = rep.h_char(w.params);
            if (!rep.twist_fixed(h))
                throw domain_error("character is not twist-compatible");
            return h;
        }
        case Word::Op::Mul: {
            GrpElt g = rep.one();
            for (const Word& k : w.kids) g = rep.mul(g, eval_word(rep, k));
            return g;
        }
        case Word::Op::Inv:
            return rep.inv(eval_word(rep, w.kids[0]));
        case Word::Op::Conj:
            return rep.conj(eval_word(rep, w.kids[0]), eval_word(rep, w.kids[1]));
        case Word::Op::Comm:
            return rep.comm(eval_word(rep, w.kids[0]), eval_word(rep, w.kids[1]));
    }
    throw domain_error("internal: word op");
}

}  // namespace tcg
