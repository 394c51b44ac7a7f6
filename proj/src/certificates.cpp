/***********************************************************************
 * certificates.cpp
 *
 * PURPOSE: symbolic expressions and words, the certificate text form,
 *          the three certificate generators (generator-commutator,
 *          negative-root split, normal closure) and the exact matrix
 *          verifier.  Signs and coefficients the construction leaves
 *          open are frozen by one-shot evaluation against the basis at
 *          emission time and recorded in the provenance string; every
 *          emitted certificate is self-checked before it is returned.
 ***********************************************************************/
#include "tcg/certificates.hpp"

#include "tcg/commutator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tcg {

/* ================================================================== */
/* symbolic expressions                                               */
/* ================================================================== */

SymExpr SymExpr::rat(long long num, long long den) {
    SymExpr e;
    e.op = Op::Rat;
    e.num = num;
    e.den = den;
    return e;
}

SymExpr SymExpr::element(Elt el) {
    SymExpr e;
    e.op = Op::Elem;
    e.elem = el;
    return e;
}

SymExpr SymExpr::variable(std::string name) {
    SymExpr e;
    e.op = Op::Var;
    e.var = std::move(name);
    return e;
}

SymExpr SymExpr::theta(SymExpr e, int pow) {
    for (int i = 0; i < pow; ++i) {
        SymExpr t;
        t.op = Op::Theta;
        t.kids.push_back(std::move(e));
        e = std::move(t);
    }
    return e;
}

SymExpr SymExpr::add(SymExpr a, SymExpr b) {
    SymExpr e;
    e.op = Op::Add;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}

SymExpr SymExpr::mul(SymExpr a, SymExpr b) {
    SymExpr e;
    e.op = Op::Mul;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}

SymExpr SymExpr::neg(SymExpr a) {
    SymExpr e;
    e.op = Op::Neg;
    e.kids.push_back(std::move(a));
    return e;
}

SymExpr SymExpr::monomial(long long num, long long den, const std::string& var,
                          const std::vector<int>& theta_pows) {
    SymExpr e = rat(num, den);
    for (int k : theta_pows) e = mul(std::move(e), theta(variable(var), k));
    return e;
}

Elt sym_eval(const SymExpr& e, const Ring& R, const SymEnv& env) {
    switch (e.op) {
    case SymExpr::Op::Rat: {
        Elt v = R.of_int(e.num);
        if (e.den != 1) v = R.mul(v, R.inv(R.of_int(e.den)));
        return v;
    }
    case SymExpr::Op::Elem:
        if (e.elem >= R.order())
            throw std::domain_error("element constant outside the ring");
        return e.elem;
    case SymExpr::Op::Var: {
        auto it = env.find(e.var);
        if (it == env.end())
            throw std::domain_error("unbound variable: " + e.var);
        return it->second;
    }
    case SymExpr::Op::Theta:
        return R.theta(sym_eval(e.kids[0], R, env));
    case SymExpr::Op::Add: {
        Elt v = R.zero();
        for (const auto& k : e.kids) v = R.add(v, sym_eval(k, R, env));
        return v;
    }
    case SymExpr::Op::Mul: {
        Elt v = R.one();
        for (const auto& k : e.kids) v = R.mul(v, sym_eval(k, R, env));
        return v;
    }
    case SymExpr::Op::Neg:
        return R.neg(sym_eval(e.kids[0], R, env));
    }
    throw std::logic_error("internal: bad expression node");
}

SymExpr sym_subst(const SymExpr& e, const std::string& var,
                  const SymExpr& repl) {
    if (e.op == SymExpr::Op::Var) return e.var == var ? repl : e;
    SymExpr out = e;
    for (auto& k : out.kids) k = sym_subst(k, var, repl);
    return out;
}

std::string sym_str(const SymExpr& e) {
    switch (e.op) {
    case SymExpr::Op::Rat: {
        std::ostringstream os;
        os << e.num;
        if (e.den != 1) os << "/" << e.den;
        return os.str();
    }
    case SymExpr::Op::Elem:
        return "#" + std::to_string(e.elem);
    case SymExpr::Op::Var:
        return e.var;
    case SymExpr::Op::Theta:
        return "(th " + sym_str(e.kids[0]) + ")";
    case SymExpr::Op::Add:
    case SymExpr::Op::Mul: {
        std::string s = e.op == SymExpr::Op::Add ? "(+" : "(*";
        for (const auto& k : e.kids) s += " " + sym_str(k);
        return s + ")";
    }
    case SymExpr::Op::Neg:
        return "(neg " + sym_str(e.kids[0]) + ")";
    }
    throw std::logic_error("internal: bad expression node");
}

/* ------------------------------------------------------------------ */
/* shared s-expression tokenizer                                      */
/* ------------------------------------------------------------------ */

namespace {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == '(' || ch == ')') {
            if (!cur.empty()) out.push_back(cur), cur.clear();
            out.push_back(std::string(1, ch));
        } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            if (!cur.empty()) out.push_back(cur), cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct TokStream {
    std::vector<std::string> toks;
    size_t i = 0;

    bool done() const { return i >= toks.size(); }
    const std::string& peek() const {
        if (done()) throw std::domain_error("unexpected end of expression");
        return toks[i];
    }
    std::string next() {
        std::string t = peek();
        ++i;
        return t;
    }
    void expect(const std::string& t) {
        if (next() != t)
            throw std::domain_error("expected '" + t + "' in expression");
    }
};

bool is_integer(const std::string& s, size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t k = from; k < to; ++k)
        if (s[k] < '0' || s[k] > '9') return false;
    return true;
}

SymExpr parse_sym_stream(TokStream& ts) {
    std::string t = ts.next();
    if (t != "(") {
        if (t.size() > 1 && t[0] == '#') {
            if (!is_integer(t, 1, t.size()))
                throw std::domain_error("bad element constant: " + t);
            return SymExpr::element((Elt)std::stoul(t.substr(1)));
        }
        size_t start = (t[0] == '-') ? 1 : 0;
        size_t slash = t.find('/');
        if (slash == std::string::npos ? is_integer(t, start, t.size())
                                       : (is_integer(t, start, slash) &&
                                          is_integer(t, slash + 1, t.size()))) {
            long long num = std::stoll(slash == std::string::npos
                                           ? t
                                           : t.substr(0, slash));
            long long den =
                slash == std::string::npos ? 1 : std::stoll(t.substr(slash + 1));
            return SymExpr::rat(num, den);
        }
        return SymExpr::variable(t);
    }
    std::string head = ts.next();
    SymExpr e;
    if (head == "th") {
        e.op = SymExpr::Op::Theta;
    } else if (head == "+") {
        e.op = SymExpr::Op::Add;
    } else if (head == "*") {
        e.op = SymExpr::Op::Mul;
    } else if (head == "neg") {
        e.op = SymExpr::Op::Neg;
    } else {
        throw std::domain_error("unknown expression head: " + head);
    }
    while (ts.peek() != ")") e.kids.push_back(parse_sym_stream(ts));
    ts.expect(")");
    if (e.kids.empty())
        throw std::domain_error("empty expression list: " + head);
    if ((e.op == SymExpr::Op::Theta || e.op == SymExpr::Op::Neg) &&
        e.kids.size() != 1)
        throw std::domain_error(head + " takes one argument");
    return e;
}

}  // namespace

SymExpr parse_sym(const std::string& text) {
    TokStream ts{tokenize(text)};
    SymExpr e = parse_sym_stream(ts);
    if (!ts.done()) throw std::domain_error("trailing tokens in expression");
    return e;
}

/* ================================================================== */
/* symbolic words                                                     */
/* ================================================================== */

SymWord SymWord::x(int cls, SymPair p) {
    SymWord w;
    w.op = Op::X;
    w.cls = cls;
    w.p = std::move(p);
    return w;
}

SymWord SymWord::x(int cls, SymExpr t) {
    return x(cls, SymPair{std::move(t), SymExpr::rat(0)});
}

SymWord SymWord::w(int cls, SymExpr t) {
    SymWord out;
    out.op = Op::W;
    out.cls = cls;
    out.p.t = std::move(t);
    return out;
}

SymWord SymWord::h(int cls, SymExpr t) {
    SymWord out;
    out.op = Op::H;
    out.cls = cls;
    out.p.t = std::move(t);
    return out;
}

SymWord SymWord::mul(std::vector<SymWord> ws) {
    SymWord out;
    out.op = Op::Mul;
    out.kids = std::move(ws);
    return out;
}

SymWord SymWord::inv(SymWord w) {
    SymWord out;
    out.op = Op::Inv;
    out.kids.push_back(std::move(w));
    return out;
}

SymWord SymWord::conj(SymWord g, SymWord w) {
    SymWord out;
    out.op = Op::Conj;
    out.kids.push_back(std::move(g));
    out.kids.push_back(std::move(w));
    return out;
}

SymWord SymWord::comm(SymWord a, SymWord b) {
    SymWord out;
    out.op = Op::Comm;
    out.kids.push_back(std::move(a));
    out.kids.push_back(std::move(b));
    return out;
}

GrpElt sym_word_eval(const SymWord& w, const Rep& rep, const SymEnv& env) {
    const Ring& R = rep.ring();
    switch (w.op) {
    case SymWord::Op::X: {
        APair p{sym_eval(w.p.t, R, env), sym_eval(w.p.u, R, env)};
        return x_class(rep, w.cls, p);
    }
    case SymWord::Op::W:
        return w_class(rep, w.cls, sym_eval(w.p.t, R, env));
    case SymWord::Op::H:
        return h_class(rep, w.cls, sym_eval(w.p.t, R, env));
    case SymWord::Op::Mul: {
        GrpElt g = rep.one();
        for (const auto& k : w.kids) g = rep.mul(g, sym_word_eval(k, rep, env));
        return g;
    }
    case SymWord::Op::Inv:
        return rep.inv(sym_word_eval(w.kids[0], rep, env));
    case SymWord::Op::Conj:
        return rep.conj(sym_word_eval(w.kids[0], rep, env),
                        sym_word_eval(w.kids[1], rep, env));
    case SymWord::Op::Comm:
        return rep.comm(sym_word_eval(w.kids[0], rep, env),
                        sym_word_eval(w.kids[1], rep, env));
    }
    throw std::logic_error("internal: bad word node");
}

std::string sym_word_str(const SymWord& w, const Folding& f) {
    switch (w.op) {
    case SymWord::Op::X: {
        std::string s =
            "(x [" + f.class_name(w.cls) + "] " + sym_str(w.p.t);
        if (f.cls(w.cls).type == ClassType::A2) s += " " + sym_str(w.p.u);
        return s + ")";
    }
    case SymWord::Op::W:
        return "(w [" + f.class_name(w.cls) + "] " + sym_str(w.p.t) + ")";
    case SymWord::Op::H:
        return "(h [" + f.class_name(w.cls) + "] " + sym_str(w.p.t) + ")";
    case SymWord::Op::Mul: {
        std::string s = "(*";
        for (const auto& k : w.kids) s += " " + sym_word_str(k, f);
        return s + ")";
    }
    case SymWord::Op::Inv:
        return "(inv " + sym_word_str(w.kids[0], f) + ")";
    case SymWord::Op::Conj:
        return "(conj " + sym_word_str(w.kids[0], f) + " " +
               sym_word_str(w.kids[1], f) + ")";
    case SymWord::Op::Comm:
        return "(comm " + sym_word_str(w.kids[0], f) + " " +
               sym_word_str(w.kids[1], f) + ")";
    }
    throw std::logic_error("internal: bad word node");
}

namespace {

int parse_class_token(TokStream& ts, const Folding& f) {
    std::string t = ts.next();
    if (t.size() < 3 || t.front() != '[' || t.back() != ']')
        throw std::domain_error("expected a class token, got: " + t);
    int c = f.class_by_name(t.substr(1, t.size() - 2));
    if (c < 0) throw std::domain_error("unknown class: " + t);
    return c;
}

SymWord parse_word_stream(TokStream& ts, const Folding& f) {
    ts.expect("(");
    std::string head = ts.next();
    if (head == "x" || head == "w" || head == "h") {
        int cls = parse_class_token(ts, f);
        std::vector<SymExpr> ps;
        while (ts.peek() != ")") ps.push_back(parse_sym_stream(ts));
        ts.expect(")");
        if (head == "x") {
            if (ps.size() != 1 && ps.size() != 2)
                throw std::domain_error("x takes one or two parameters");
            SymPair p;
            p.t = ps[0];
            if (ps.size() == 2) p.u = ps[1];
            return SymWord::x(cls, p);
        }
        if (ps.size() != 1)
            throw std::domain_error(head + " takes one parameter");
        return head == "w" ? SymWord::w(cls, ps[0]) : SymWord::h(cls, ps[0]);
    }
    SymWord w;
    if (head == "*") {
        w.op = SymWord::Op::Mul;
    } else if (head == "inv") {
        w.op = SymWord::Op::Inv;
    } else if (head == "conj") {
        w.op = SymWord::Op::Conj;
    } else if (head == "comm") {
        w.op = SymWord::Op::Comm;
    } else {
        throw std::domain_error("unknown word head: " + head);
    }
    while (ts.peek() != ")") w.kids.push_back(parse_word_stream(ts, f));
    ts.expect(")");
    if (w.op == SymWord::Op::Inv && w.kids.size() != 1)
        throw std::domain_error("inv takes one word");
    if ((w.op == SymWord::Op::Conj || w.op == SymWord::Op::Comm) &&
        w.kids.size() != 2)
        throw std::domain_error(head + " takes two words");
    return w;
}

}  // namespace

SymWord parse_sym_word(const std::string& text, const Folding& f) {
    TokStream ts{tokenize(text)};
    SymWord w = parse_word_stream(ts, f);
    if (!ts.done()) throw std::domain_error("trailing tokens in word");
    return w;
}

Word sym_word_bind(const SymWord& w, const Rep& rep, const SymEnv& env) {
    const Ring& R = rep.ring();
    Word out;
    switch (w.op) {
    case SymWord::Op::X:
        out.op = Word::Op::X;
        out.cls = w.cls;
        out.params.push_back(sym_eval(w.p.t, R, env));
        if (rep.fold().cls(w.cls).type == ClassType::A2)
            out.params.push_back(sym_eval(w.p.u, R, env));
        return out;
    case SymWord::Op::W:
    case SymWord::Op::H:
        out.op = w.op == SymWord::Op::W ? Word::Op::W : Word::Op::H;
        out.cls = w.cls;
        out.params.push_back(sym_eval(w.p.t, R, env));
        return out;
    case SymWord::Op::Mul:
        out.op = Word::Op::Mul;
        break;
    case SymWord::Op::Inv:
        out.op = Word::Op::Inv;
        break;
    case SymWord::Op::Conj:
        out.op = Word::Op::Conj;
        break;
    case SymWord::Op::Comm:
        out.op = Word::Op::Comm;
        break;
    }
    for (const auto& k : w.kids) out.kids.push_back(sym_word_bind(k, rep, env));
    return out;
}

/* ================================================================== */
/* certificate text form and verification                             */
/* ================================================================== */

std::string certificate_str(const Certificate& c) {
    Folding f(RootSystem::make(c.system), c.order);
    std::ostringstream os;
    os << "certificate v1\n";
    os << "system " << c.system << "\n";
    os << "order " << c.order << "\n";
    os << "ring " << c.ring << "\n";
    os << "provenance " << c.provenance << "\n";
    for (const auto& [k, v] : c.binding) os << "bind " << k << " " << v << "\n";
    os << "lhs " << sym_word_str(c.lhs, f) << "\n";
    os << "rhs " << sym_word_str(c.rhs, f) << "\n";
    os << "end\n";
    return os.str();
}

Certificate parse_certificate(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "certificate v1")
        throw std::domain_error("not a certificate (missing header)");
    Certificate c;
    std::string lhs_text, rhs_text;
    bool saw_end = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line == "end") {
            saw_end = true;
            break;
        }
        size_t sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::domain_error("bad certificate line: " + line);
        std::string key = line.substr(0, sp), rest = line.substr(sp + 1);
        if (key == "system") {
            c.system = rest;
        } else if (key == "order") {
            c.order = std::stoi(rest);
        } else if (key == "ring") {
            c.ring = rest;
        } else if (key == "provenance") {
            c.provenance = rest;
        } else if (key == "bind") {
            size_t sp2 = rest.find(' ');
            if (sp2 == std::string::npos)
                throw std::domain_error("bad binding line: " + line);
            c.binding[rest.substr(0, sp2)] =
                (Elt)std::stoul(rest.substr(sp2 + 1));
        } else if (key == "lhs") {
            lhs_text = rest;
        } else if (key == "rhs") {
            rhs_text = rest;
        } else {
            throw std::domain_error("unknown certificate key: " + key);
        }
    }
    if (!saw_end || c.system.empty() || lhs_text.empty() || rhs_text.empty())
        throw std::domain_error("incomplete certificate");
    Folding f(RootSystem::make(c.system), c.order);
    c.lhs = parse_sym_word(lhs_text, f);
    c.rhs = parse_sym_word(rhs_text, f);
    return c;
}

bool verify_certificate(const Certificate& c, const Rep& rep,
                        const SymEnv& env) {
    if (rep.rsys().name() != c.system || rep.fold().order() != c.order)
        throw std::domain_error(
            "certificate was emitted for a different twisted group");
    GrpElt l = sym_word_eval(c.lhs, rep, env);
    GrpElt r = sym_word_eval(c.rhs, rep, env);
    return rep.equal(l, r);
}

bool verify_certificate(const Certificate& c, const Rep& rep) {
    return verify_certificate(c, rep, c.binding);
}

/* ================================================================== */
/* shared emission helpers                                            */
/* ================================================================== */

namespace {

std::string rat_str(long long n, long long d) {
    std::string s = std::to_string(n);
    if (d != 1) s += "/" + std::to_string(d);
    return s;
}

/* rational coefficient menu used by the one-shot fits, in freeze order */
struct RatCoef {
    long long n, d;
};

const RatCoef kCoefMenu[] = {
    {1, 1},  {-1, 1},  {1, 2},  {-1, 2},  {1, 4},  {-1, 4}, {1, 8},  {-1, 8},
    {3, 8},  {-3, 8},  {1, 3},  {-1, 3},  {1, 6},  {-1, 6}, {1, 12}, {-1, 12},
    {1, 24}, {-1, 24}, {2, 1},  {-2, 1},  {3, 1},  {-3, 1}, {3, 2},  {-3, 2},
    {3, 4},  {-3, 4},  {2, 3},  {-2, 3},  {4, 1},  {-4, 1}, {8, 1},  {-8, 1}};

std::optional<Elt> eval_coef(const Ring& R, const RatCoef& c) {
    Elt dv = R.of_int(c.d);
    if (!R.is_unit(dv)) return std::nullopt;
    return R.mul(R.of_int(c.n), R.inv(dv));
}

/* a candidate parameter: symbolic form plus its value at the binding */
struct Fit {
    SymExpr sym;
    Elt val;
    std::string note;
};

/* monomials of the given degree in the twist orbit of one variable;
 * products over distinct twist powers come first, because those are the
 * shapes the structure formulas produce and value ties should freeze
 * the right one */
std::vector<Fit> orbit_monomials(const Ring& R, const std::string& var,
                                 Elt v, int deg, int twists) {
    struct Cand {
        std::vector<int> pick;
        Fit fit;
    };
    std::vector<Cand> cands;
    std::vector<int> pick;
    std::vector<Elt> tv(twists);
    for (int k = 0; k < twists; ++k) tv[k] = R.theta_pow(v, k);
    /* nondecreasing sequences pick[0] <= ... <= pick[deg-1] */
    std::function<void(int, int)> rec = [&](int pos, int lo) {
        if (pos == deg) {
            Elt val = R.one();
            std::string note;
            for (int k : pick) {
                val = R.mul(val, tv[k]);
                note += (note.empty() ? "" : " ") +
                        (k == 0 ? var : "th" + std::to_string(k) + " " + var);
            }
            cands.push_back(
                {pick, {SymExpr::monomial(1, 1, var, pick), val, note}});
            return;
        }
        for (int k = lo; k < twists; ++k) {
            pick.push_back(k);
            rec(pos + 1, k);
            pick.pop_back();
        }
    };
    rec(0, 0);
    auto ndistinct = [](const std::vector<int>& p) {
        int n = p.empty() ? 0 : 1;
        for (size_t i = 1; i < p.size(); ++i)
            if (p[i] != p[i - 1]) ++n;
        return n;
    };
    std::stable_sort(cands.begin(), cands.end(),
                     [&](const Cand& a, const Cand& b) {
                         return ndistinct(a.pick) > ndistinct(b.pick);
                     });
    std::vector<Fit> out;
    for (auto& c : cands) out.push_back(std::move(c.fit));
    return out;
}

/* first (coefficient, monomial) whose value matches the target */
std::optional<Fit> fit_single(const Ring& R, Elt target,
                              const std::vector<Fit>& monos) {
    for (const RatCoef& c : kCoefMenu) {
        auto cv = eval_coef(R, c);
        if (!cv) continue;
        for (const Fit& m : monos) {
            if (R.mul(*cv, m.val) == target) {
                Fit f;
                f.sym = SymExpr::mul(SymExpr::rat(c.n, c.d), m.sym);
                f.val = target;
                f.note = rat_str(c.n, c.d) + " " + m.note;
                return f;
            }
        }
    }
    return std::nullopt;
}

SymExpr pm_one(int sg) { return SymExpr::rat(sg); }

/* assembled and self-checked */
Certificate finish_certificate(const Rep& rep, std::string provenance,
                               SymWord lhs, SymWord rhs, SymEnv binding) {
    Certificate c;
    c.system = rep.rsys().name();
    c.order = rep.fold().order();
    c.ring = rep.ring().descriptor();
    c.provenance = std::move(provenance);
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.binding = std::move(binding);
    if (!verify_certificate(c, rep))
        throw std::logic_error("internal: certificate failed its self-check");
    return c;
}

SymWord subst_word(const SymWord& w, const std::string& var,
                   const SymExpr& repl) {
    SymWord out = w;
    out.p.t = sym_subst(out.p.t, var, repl);
    out.p.u = sym_subst(out.p.u, var, repl);
    for (auto& k : out.kids) k = subst_word(k, var, repl);
    return out;
}

/* ================================================================== */
/* generator-commutator certificates                                  */
/* ================================================================== */

Certificate gc_impl(const Rep& rep, int c, APair u, int depth);

/* matches the expansion against "target letter first, then the expected
 * extra classes"; returns the extra parameters by class or nothing */
std::optional<std::vector<APair>> match_expansion(
    const std::vector<ClassLetter>& letters, int c, APair u, const Ring& R,
    const std::vector<int>& extra_cls) {
    std::vector<APair> extras(extra_cls.size(), APair{0, 0});
    size_t pos = 0;
    bool zero_u = (u.t == R.zero() && u.u == R.zero());
    if (pos < letters.size() && letters[pos].cls == c) {
        if (!(letters[pos].p == u)) return std::nullopt;
        ++pos;
    } else if (!zero_u) {
        return std::nullopt;
    }
    for (; pos < letters.size(); ++pos) {
        bool placed = false;
        for (size_t k = 0; k < extra_cls.size(); ++k) {
            if (letters[pos].cls == extra_cls[k] &&
                extras[k].t == R.zero() && extras[k].u == R.zero()) {
                extras[k] = letters[pos].p;
                placed = true;
                break;
            }
        }
        if (!placed) return std::nullopt;
    }
    return extras;
}

/* the lhs letter and variable binding for the target */
void target_syms(const Folding& f, int c, APair u, SymPair& usym,
                 SymEnv& binding) {
    if (f.cls(c).type == ClassType::A2) {
        usym = SymPair{SymExpr::variable("u1"), SymExpr::variable("u2")};
        binding["u1"] = u.t;
        binding["u2"] = u.u;
    } else {
        usym = SymPair{SymExpr::variable("u"), SymExpr::rat(0)};
        binding["u"] = u.t;
    }
}

/* recursively certify one extra letter and splice its commutator word,
 * rewriting the child's parameter variable to the fitted polynomial */
SymWord spliced_child(const Rep& rep, int cls, APair val, const SymExpr& qsym,
                      int depth, std::string& prov) {
    Certificate child = gc_impl(rep, cls, val, depth + 1);
    prov += " | tail " + rep.fold().class_name(cls) + " via {" +
            child.provenance + "}";
    return subst_word(child.rhs, "u", qsym);
}

std::optional<Certificate> gc_case_A(const Rep& rep, int c, APair u, int beta,
                                     int depth) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    int ab = f.folded_sum(c, beta);
    if (ab < 0) return std::nullopt;
    int nb = f.neg(beta);
    ClassType ct = f.cls(c).type;
    if (ct == ClassType::A2) return std::nullopt;
    int twists = ct == ClassType::A1 ? 1 : (ct == ClassType::A1x2 ? 2 : 3);
    const char* row = ct == ClassType::A1 ? "b-i" : "b-ii";
    for (int sg : {+1, -1}) {
        APair g1{sg > 0 ? R.one() : R.neg(R.one()), 0};
        for (int k = 0; k < twists; ++k) {
            APair g2{R.theta_pow(u.t, k), 0};
            auto letters =
                commutator_letters(rep.basis(), R, ab, g1, nb, g2);
            auto extras = match_expansion(letters, c, u, R, {});
            if (!extras) continue;
            SymPair usym;
            SymEnv binding;
            target_syms(f, c, u, usym, binding);
            SymWord rhs = SymWord::comm(
                SymWord::x(ab, pm_one(sg)),
                SymWord::x(nb, SymExpr::theta(SymExpr::variable("u"), k)));
            std::string prov = std::string("case A (") + row +
                               "); companion " + f.class_name(beta) +
                               "; slots [" + rat_str(sg, 1) + ", " +
                               (k == 0 ? "u" : (k == 1 ? "th u" : "th2 u")) +
                               "]";
            return finish_certificate(rep, prov, SymWord::x(c, usym), rhs,
                                      binding);
        }
    }
    return std::nullopt;
}

std::optional<Certificate> gc_case_B(const Rep& rep, int c, APair u, int beta,
                                     int depth) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    int ab = f.folded_sum(c, beta);
    if (ab < 0) return std::nullopt;
    int nb = f.neg(beta);
    ClassType ct = f.cls(c).type;
    if (ct == ClassType::A1) { /* row (c-i): first slot (+-1/2) */
        for (int sg : {+1, -1}) {
            APair g1{sg > 0 ? R.half() : R.neg(R.half()), 0};
            auto letters = commutator_letters(rep.basis(), R, ab, g1, nb,
                                              APair{u.t, 0});
            auto extras = match_expansion(letters, c, u, R, {});
            if (!extras) continue;
            SymPair usym;
            SymEnv binding;
            target_syms(f, c, u, usym, binding);
            SymWord rhs =
                SymWord::comm(SymWord::x(ab, SymExpr::rat(sg, 2)),
                              SymWord::x(nb, SymExpr::variable("u")));
            std::string prov = "case B (c-i); companion " +
                               f.class_name(beta) + "; slots [" +
                               rat_str(sg, 2) + ", u]";
            return finish_certificate(rep, prov, SymWord::x(c, usym), rhs,
                                      binding);
        }
        return std::nullopt;
    }
    if (ct != ClassType::A1x2 || f.cls(ab).type != ClassType::A2)
        return std::nullopt;
    /* row (c-ii): hermitian slots (+-1, 1/2) and (th^k u, u th u / 2) */
    Elt uquad = R.mul(R.half(), R.mul(u.t, R.theta(u.t)));
    for (int sg : {+1, -1}) {
        APair g1{sg > 0 ? R.one() : R.neg(R.one()), R.half()};
        for (int k : {0, 1}) {
            APair g2{R.theta_pow(u.t, k), uquad};
            auto letters =
                commutator_letters(rep.basis(), R, ab, g1, nb, g2);
            auto extras = match_expansion(letters, c, u, R, {});
            if (!extras) continue;
            SymPair usym;
            SymEnv binding;
            target_syms(f, c, u, usym, binding);
            SymWord rhs = SymWord::comm(
                SymWord::x(ab, SymPair{pm_one(sg), SymExpr::rat(1, 2)}),
                SymWord::x(nb,
                           SymPair{SymExpr::theta(SymExpr::variable("u"), k),
                                   SymExpr::monomial(1, 2, "u", {0, 1})}));
            std::string prov = "case B (c-ii); companion " +
                               f.class_name(beta) + "; slots [(" +
                               rat_str(sg, 1) + ", 1/2), (" +
                               (k == 0 ? "u" : "th u") + ", u th u / 2)]";
            return finish_certificate(rep, prov, SymWord::x(c, usym), rhs,
                                      binding);
        }
    }
    return std::nullopt;
}

std::optional<Certificate> gc_case_C(const Rep& rep, int c, APair u, int beta,
                                     int depth) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    int ab = f.folded_sum(c, beta);
    int tab = f.folded_combo(c, beta, 2, 1, 1);
    if (ab < 0 || tab < 0) return std::nullopt;
    int nb = f.neg(beta);
    ClassType ct = f.cls(c).type;
    if (ct == ClassType::A1x2) { /* row (d-i) */
        for (int sg1 : {+1, -1}) {
            APair g1{sg1 > 0 ? R.one() : R.neg(R.one()), 0};
            for (int sg2 : {+1, -1}) {
                for (int k : {0, 1}) {
                    Elt w = R.theta_pow(u.t, k);
                    if (sg2 < 0) w = R.neg(w);
                    auto letters = commutator_letters(rep.basis(), R, nb, g1,
                                                      ab, APair{w, 0});
                    auto extras = match_expansion(letters, c, u, R, {tab});
                    if (!extras) continue;
                    /* tail letter: coefficient times u * theta(u) */
                    Elt mono = R.mul(u.t, R.theta(u.t));
                    std::vector<Fit> cands = {
                        {SymExpr::mul(SymExpr::variable("u"),
                                      SymExpr::theta(SymExpr::variable("u"))),
                         mono, "u th u"}};
                    auto fit = fit_single(R, (*extras)[0].t, cands);
                    if (!fit) continue;
                    SymExpr wsym =
                        SymExpr::theta(SymExpr::variable("u"), k);
                    if (sg2 < 0) wsym = SymExpr::neg(wsym);
                    SymExpr qsym = fit->sym;
                    std::string prov =
                        "case C (d-i); companion " + f.class_name(beta) +
                        "; slots [" + rat_str(sg1, 1) + ", " +
                        std::string(sg2 < 0 ? "-" : "") +
                        (k == 0 ? "u" : "th u") + "]; tail coef " + fit->note;
                    SymPair usym;
                    SymEnv binding;
                    target_syms(f, c, u, usym, binding);
                    SymWord tail = spliced_child(rep, tab, (*extras)[0],
                                                 qsym, depth, prov);
                    SymWord rhs = SymWord::mul(
                        {SymWord::comm(SymWord::x(nb, pm_one(sg1)),
                                       SymWord::x(ab, wsym)),
                         SymWord::inv(tail)});
                    return finish_certificate(rep, prov, SymWord::x(c, usym),
                                              rhs, binding);
                }
            }
        }
        return std::nullopt;
    }
    if (ct != ClassType::A2) return std::nullopt;
    /* row (d-ii): hermitian second slot */
    struct PairVar {
        APair val;
        SymPair sym;
        std::string note;
    };
    std::vector<PairVar> vars;
    auto v1 = SymExpr::variable("u1"), v2 = SymExpr::variable("u2");
    vars.push_back({u, {v1, v2}, "(u1, u2)"});
    vars.push_back({{R.theta(u.t), R.theta(u.u)},
                    {SymExpr::theta(v1), SymExpr::theta(v2)},
                    "(th u1, th u2)"});
    vars.push_back({{R.theta(u.t), u.u},
                    {SymExpr::theta(v1), v2},
                    "(th u1, u2)"});
    vars.push_back({{u.t, R.theta(u.u)},
                    {v1, SymExpr::theta(v2)},
                    "(u1, th u2)"});
    for (int sg1 : {+1, -1}) {
        APair g1{sg1 > 0 ? R.one() : R.neg(R.one()), 0};
        for (const PairVar& pv : vars) {
            if (!aform_valid(R, pv.val)) continue;
            auto letters =
                commutator_letters(rep.basis(), R, nb, g1, ab, pv.val);
            auto extras = match_expansion(letters, c, u, R, {tab});
            if (!extras) continue;
            /* tail letter: linear in the central slot, else quadratic */
            std::vector<Fit> lin = {
                {SymExpr::variable("u2"), u.u, "u2"},
                {SymExpr::theta(SymExpr::variable("u2")), R.theta(u.u),
                 "th u2"}};
            auto fit = fit_single(R, (*extras)[0].t, lin);
            if (!fit)
                fit = fit_single(R, (*extras)[0].t,
                                 orbit_monomials(R, "u1", u.t, 2, 2));
            if (!fit) continue;
            std::string prov = "case C (d-ii); companion " +
                               f.class_name(beta) + "; slots [" +
                               rat_str(sg1, 1) + ", " + pv.note +
                               "]; tail coef " + fit->note;
            SymPair usym;
            SymEnv binding;
            target_syms(f, c, u, usym, binding);
            SymWord tail = spliced_child(rep, tab, (*extras)[0], fit->sym,
                                         depth, prov);
            SymWord rhs = SymWord::mul(
                {SymWord::comm(SymWord::x(nb, pm_one(sg1)),
                               SymWord::x(ab, pv.sym)),
                 SymWord::inv(tail)});
            return finish_certificate(rep, prov, SymWord::x(c, usym), rhs,
                                      binding);
        }
    }
    return std::nullopt;
}

std::optional<Certificate> gc_case_E(const Rep& rep, int c, APair u, int beta,
                                     int depth) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    int ab = f.folded_sum(c, beta);
    int t2ab = f.folded_combo(c, beta, 2, 1, 1);
    int t3ab = f.folded_combo(c, beta, 3, 1, 1);
    if (ab < 0 || t2ab < 0 || t3ab < 0) return std::nullopt;
    int nab = f.neg(ab), nb = f.neg(beta);
    Elt t = u.t;
    for (int ordv : {0, 1}) {
        Elt up = R.theta_pow(t, ordv ? 2 : 1);
        Elt upp = R.theta_pow(t, ordv ? 1 : 2);
        Elt w = R.mul(R.half(), R.sub(R.add(t, up), upp));
        for (int sg : {+1, -1}) {
            APair g2{sg > 0 ? R.one() : R.neg(R.one()), 0};
            auto letters = commutator_letters(rep.basis(), R, t2ab,
                                              APair{w, 0}, nab, g2);
            auto extras = match_expansion(letters, c, u, R, {t3ab, nb});
            if (!extras) continue;
            /* scalar on 3[a]+[b]: (u^2+u'^2+u''^2-2uu'-2u'u''-2uu'')/4 */
            Elt sq = R.add(R.add(R.mul(t, t), R.mul(up, up)), R.mul(upp, upp));
            Elt cross = R.add(R.add(R.mul(t, up), R.mul(up, upp)),
                              R.mul(t, upp));
            Elt dmag = R.mul(R.mul(R.half(), R.half()),
                             R.sub(sq, R.add(cross, cross)));
            Elt smag = R.mul(R.half(), R.add(R.add(t, up), upp));
            int sd = 0, ss = 0;
            for (int s : {+1, -1})
                if ((s > 0 ? dmag : R.neg(dmag)) == (*extras)[0].t) {
                    sd = s;
                    break;
                }
            for (int s : {+1, -1})
                if ((s > 0 ? smag : R.neg(smag)) == (*extras)[1].t) {
                    ss = s;
                    break;
                }
            if (!sd || !ss) continue;
            int kp = ordv ? 2 : 1, kpp = ordv ? 1 : 2;
            auto U = [&] { return SymExpr::variable("u"); };
            auto T = [&](int k) { return SymExpr::theta(U(), k); };
            SymExpr wsym = SymExpr::mul(
                SymExpr::rat(1, 2),
                SymExpr::add(SymExpr::add(U(), T(kp)), SymExpr::neg(T(kpp))));
            SymExpr sqsym = SymExpr::add(
                SymExpr::add(SymExpr::mul(U(), U()),
                             SymExpr::mul(T(kp), T(kp))),
                SymExpr::mul(T(kpp), T(kpp)));
            SymExpr crosssym = SymExpr::add(
                SymExpr::add(SymExpr::mul(U(), T(kp)),
                             SymExpr::mul(T(kp), T(kpp))),
                SymExpr::mul(U(), T(kpp)));
            SymExpr dsym = SymExpr::mul(
                SymExpr::rat(sd, 4),
                SymExpr::add(sqsym,
                             SymExpr::mul(SymExpr::rat(-2), crosssym)));
            SymExpr ssym = SymExpr::mul(
                SymExpr::rat(ss, 2),
                SymExpr::add(SymExpr::add(U(), T(kp)), T(kpp)));
            std::string prov =
                "case E; companion " + f.class_name(beta) +
                "; slots [(u + th^" + std::to_string(kp) + " u - th^" +
                std::to_string(kpp) + " u)/2, " + rat_str(sg, 1) +
                "]; frozen scalar signs [" + rat_str(sd, 1) + ", " +
                rat_str(ss, 1) + "]";
            SymPair usym;
            SymEnv binding;
            target_syms(f, c, u, usym, binding);
            SymWord tail_d =
                spliced_child(rep, t3ab, (*extras)[0], dsym, depth, prov);
            SymWord tail_s =
                spliced_child(rep, nb, (*extras)[1], ssym, depth, prov);
            /* expansion order is x_[c] x_[3a+b] x_[-b]; peel from the right */
            SymWord rhs = SymWord::mul(
                {SymWord::comm(SymWord::x(t2ab, wsym),
                               SymWord::x(nab, pm_one(sg))),
                 SymWord::inv(tail_s), SymWord::inv(tail_d)});
            return finish_certificate(rep, prov, SymWord::x(c, usym), rhs,
                                      binding);
        }
    }
    return std::nullopt;
}

Certificate gc_impl(const Rep& rep, int c, APair u, int depth) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    if (depth > 4)
        throw std::logic_error("internal: certificate recursion too deep");
    param_check(R, f, c, u);
    if (f.folded_rank() < 2)
        throw std::domain_error(
            "generator certificates need folded rank at least 2");
    for (int beta = 0; beta < f.num_classes(); ++beta) {
        if (beta == c || beta == f.neg(c)) continue;
        int p = f.folded_pairing(c, beta);
        int q = f.folded_pairing(beta, c);
        if (p >= 0 || q >= 0) continue;
        int pq = p * q;
        std::optional<Certificate> got;
        if (pq == 1) {
            got = gc_case_A(rep, c, u, beta, depth);
        } else if (pq == 2 && p == -2) {
            got = gc_case_B(rep, c, u, beta, depth);
        } else if (pq == 2 && p == -1) {
            got = gc_case_C(rep, c, u, beta, depth);
        } else if (pq == 3 && p == -1) {
            got = gc_case_E(rep, c, u, beta, depth);
        } /* pq == 3, p == -3: long class of a triple bond; a later
             companion supplies the simply-laced pair (case A) */
        if (got) return std::move(*got);
    }
    throw std::logic_error("internal: no companion class admitted " +
                           f.class_name(c));
}

}  // namespace

Certificate certify_generator_commutator(const Rep& rep, int c, APair u) {
    return gc_impl(rep, c, u, 0);
}

/* ================================================================== */
/* negative-root split certificates                                   */
/* ================================================================== */

Certificate certify_negroot_split(const Rep& rep, int c, APair u,
                                  int companion) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    param_check(R, f, c, u);
    if (!f.cls(c).positive)
        throw std::domain_error(
            "the split target is named by its positive class");
    if (companion == c || companion == f.neg(c))
        throw std::domain_error("companion must differ from the target");
    int sum = f.folded_sum(c, companion);
    if (sum < 0)
        throw std::domain_error("companion does not combine with the target");
    int delta = f.neg(sum), eps = companion;
    PairCase pc = f.classify_pair(delta, eps);

    /* the claimed letter in the stored convention */
    int tcls = f.neg(c);
    APair tp = negclass_param(R, f, c, u);
    int ktw = f.neg_twist(c);

    const char* row = nullptr;
    std::vector<std::pair<APair, SymPair>> firsts;   /* u1 candidates */
    std::vector<std::pair<APair, SymPair>> seconds;  /* u2 candidates */
    auto scalar_orbit = [&](int twists) {
        for (int k = 0; k < twists; ++k)
            firsts.push_back(
                {APair{R.theta_pow(u.t, k), 0},
                 SymPair{SymExpr::theta(SymExpr::variable("u"), k),
                         SymExpr::rat(0)}});
    };
    auto const_seconds = [&](long long n, long long d) {
        for (int sg : {+1, -1}) {
            Elt v = sym_eval(SymExpr::rat(sg * n, d), R, {});
            seconds.push_back({APair{v, 0}, SymPair{SymExpr::rat(sg * n, d),
                                                    SymExpr::rat(0)}});
        }
    };
    int twists = f.order();
    switch (pc.kind) {
    case PairKind::SumI:
        row = "b-i";
        scalar_orbit(1);
        const_seconds(1, 1);
        break;
    case PairKind::SumII:
        row = "b-ii";
        scalar_orbit(twists);
        const_seconds(1, 1);
        break;
    case PairKind::SumDiffI:
        row = "c-i";
        scalar_orbit(twists);
        const_seconds(1, 2);
        break;
    case PairKind::SumDiffII: {
        row = "c-ii";
        Elt uquad = R.mul(R.half(), R.mul(u.t, R.theta(u.t)));
        for (int k : {0, 1})
            firsts.push_back(
                {APair{R.theta_pow(u.t, k), uquad},
                 SymPair{SymExpr::theta(SymExpr::variable("u"), k),
                         SymExpr::monomial(1, 2, "u", {0, 1})}});
        for (int sg : {+1, -1})
            seconds.push_back(
                {APair{sg > 0 ? R.one() : R.neg(R.one()), R.half()},
                 SymPair{SymExpr::rat(sg), SymExpr::rat(1, 2)}});
        break;
    }
    case PairKind::DoubleI:
        row = "d-i";
        scalar_orbit(twists);
        const_seconds(1, 1);
        break;
    case PairKind::DoubleII: {
        row = "d-ii";
        if (f.cls(delta).type != ClassType::A2)
            throw std::domain_error(
                "this companion puts the transferred parameter on a "
                "one-parameter class; use the other orientation");
        auto v1 = SymExpr::variable("u1"), v2 = SymExpr::variable("u2");
        firsts.push_back({u, SymPair{v1, v2}});
        firsts.push_back({{R.theta(u.t), R.theta(u.u)},
                          SymPair{SymExpr::theta(v1), SymExpr::theta(v2)}});
        firsts.push_back(
            {{R.theta(u.t), u.u}, SymPair{SymExpr::theta(v1), v2}});
        firsts.push_back(
            {{u.t, R.theta(u.u)}, SymPair{v1, SymExpr::theta(v2)}});
        const_seconds(1, 1);
        break;
    }
    case PairKind::Quadruple:
        row = "e";
        scalar_orbit(twists);
        const_seconds(1, 1);
        break;
    case PairKind::ShortPair60:
        /* the target class is theta-fixed, so the orbit trace in the
         * expansion collapses against the 1/3 */
        row = "g";
        scalar_orbit(twists);
        const_seconds(1, 3);
        break;
    default:
        throw std::domain_error(std::string("pair type has no split row: ") +
                                pair_kind_name(pc.kind));
    }

    bool delta_pair = f.cls(delta).type == ClassType::A2;
    bool target_pair = f.cls(c).type == ClassType::A2;
    for (const auto& [g2v, g2sym] : seconds) {
        for (const auto& [g1v, g1sym] : firsts) {
            if (delta_pair && !aform_valid(R, g1v)) continue;
            std::vector<ClassLetter> letters;
            try {
                letters =
                    commutator_letters(rep.basis(), R, delta, g1v, eps, g2v);
            } catch (const std::domain_error&) {
                continue; /* slot domain rejected this variant */
            }
            size_t pos = 0;
            bool zero_u = (u.t == R.zero() && u.u == R.zero());
            if (pos < letters.size() && letters[pos].cls == tcls) {
                if (!(letters[pos].p == tp)) continue;
                ++pos;
            } else if (!zero_u) {
                continue;
            }
            /* residual letters: fit each one as a monomial in the twist
             * orbit of the transferred parameter */
            std::vector<SymWord> resid;
            bool ok = true;
            std::string resid_note;
            for (size_t i = pos; i < letters.size() && ok; ++i) {
                std::optional<Fit> fit;
                if (target_pair) {
                    std::vector<Fit> lin = {
                        {SymExpr::variable("u2"), u.u, "u2"},
                        {SymExpr::theta(SymExpr::variable("u2")),
                         R.theta(u.u), "th u2"}};
                    fit = fit_single(R, letters[i].p.t, lin);
                    if (!fit)
                        fit = fit_single(
                            R, letters[i].p.t,
                            orbit_monomials(R, "u1", u.t, 2, twists));
                } else {
                    int deg = -1;
                    for (int a = 1; a <= 4 && deg < 0; ++a)
                        for (int b = 1; b <= 4 && deg < 0; ++b)
                            if (f.folded_combo(delta, eps, a, b, 1) ==
                                letters[i].cls)
                                deg = a;
                    if (deg < 0) {
                        ok = false;
                        break;
                    }
                    fit = fit_single(R, letters[i].p.t,
                                     orbit_monomials(R, "u", u.t, deg,
                                                     twists));
                }
                if (!fit) {
                    ok = false;
                    break;
                }
                resid.push_back(SymWord::x(letters[i].cls, fit->sym));
                resid_note += (resid_note.empty() ? "" : ", ") +
                              f.class_name(letters[i].cls) + ": " + fit->note;
            }
            if (!ok) continue;

            SymEnv binding;
            SymPair usym;
            target_syms(f, c, u, usym, binding);
            SymPair lhs_p{SymExpr::theta(usym.t, ktw),
                          SymExpr::theta(usym.u, ktw)};
            if (!target_pair) lhs_p.u = SymExpr::rat(0);
            SymWord lhs = SymWord::x(tcls, lhs_p);
            SymWord rhs = SymWord::mul(
                {SymWord::comm(SymWord::x(delta, g1sym),
                               SymWord::x(eps, g2sym)),
                 SymWord::inv(SymWord::mul(resid))});
            std::string secnote =
                sym_str(g2sym.t) +
                (f.cls(eps).type == ClassType::A2
                     ? ", " + sym_str(g2sym.u)
                     : std::string());
            std::string prov = std::string("negroot-split row (") + row +
                               ") [" + pair_kind_name(pc.kind) +
                               "]; companion " + f.class_name(companion) +
                               "; second slot " + secnote +
                               (resid_note.empty()
                                    ? std::string("; no residual")
                                    : "; residuals [" + resid_note + "]");
            return finish_certificate(rep, prov, lhs, rhs, binding);
        }
    }
    throw std::logic_error(
        "internal: no split variant matched the expansion for row " +
        std::string(row ? row : "?"));
}

/* ================================================================== */
/* normal closure of one letter                                       */
/* ================================================================== */

namespace {

using MemberKey = std::tuple<int, Elt, Elt>;

APair class_inv(const Ring& R, ClassType ty, APair p) {
    if (ty == ClassType::A2) return aform_inv(R, p);
    return APair{R.neg(p.t), 0};
}

APair class_op(const Ring& R, ClassType ty, APair a, APair b) {
    if (ty == ClassType::A2) return aform_op(R, a, b);
    return APair{R.add(a.t, b.t), 0};
}

}  // namespace

NormalClosure certify_normal_closure(const Rep& rep, int c, APair z) {
    const Folding& f = rep.fold();
    const Ring& R = rep.ring();
    const ChevalleyBasis& B = rep.basis();
    RingPtr Rp = rep.ring_ptr();
    param_check(R, f, c, z);

    NormalClosure nc;
    nc.system = rep.rsys().name();
    nc.order = f.order();
    nc.ring = R.descriptor();
    nc.seed_cls = c;
    nc.z = z;

    /* the displayed level of the seed parameter */
    if (f.cls(c).type == ClassType::A2)
        nc.J = ideal_from_elements(Rp, {z.t, R.sub(z.u, R.theta(z.u))});
    else
        nc.J = ideal_from_elements(Rp, {z.t});

    LevelIdeal L = level_ideal(Rp, nc.J);

    /* trivial seed: one empty word covers every zero letter */
    if (z.t == R.zero() && z.u == R.zero()) {
        ClosureNode n;
        n.kind = ClosureNode::Kind::Zero;
        n.cls = -1;
        nc.nodes.push_back(n);
        for (int cls = 0; cls < f.num_classes(); ++cls)
            for (const APair& p : level_params(L, f.cls(cls).type))
                nc.targets.push_back({cls, p, 0});
        return nc;
    }

    /* target set: every elementary letter at the displayed level */
    std::map<MemberKey, char> wanted;
    size_t total = 0;
    for (int cls = 0; cls < f.num_classes(); ++cls)
        for (const APair& p : level_params(L, f.cls(cls).type)) {
            wanted[{cls, p.t, p.u}] = 0;
            ++total;
        }

    std::map<MemberKey, int> known;
    std::vector<std::vector<int>> by_class(f.num_classes());
    std::vector<int> queue;
    size_t covered = 0;

    auto add = [&](ClosureNode n) {
        MemberKey key{n.cls, n.p.t, n.p.u};
        if (known.count(key)) return;
        int idx = (int)nc.nodes.size();
        nc.nodes.push_back(std::move(n));
        known[key] = idx;
        by_class[nc.nodes[idx].cls].push_back(idx);
        queue.push_back(idx);
        auto it = wanted.find(key);
        if (it != wanted.end() && !it->second) {
            it->second = 1;
            ++covered;
        }
    };
    auto find_known = [&](int cls, APair p) -> int {
        auto it = known.find({cls, p.t, p.u});
        return it == known.end() ? -1 : it->second;
    };

    {
        ClosureNode seed;
        seed.kind = ClosureNode::Kind::Seed;
        seed.cls = c;
        seed.p = z;
        add(std::move(seed));
    }

    /* full-ring parameter menus for commutator partners */
    LevelIdeal Lfull = level_ideal(Rp, ideal_whole(Rp));

    /* torus conjugators: h_[d](t) for the valid unit parameters */
    struct TorusGen {
        int cls;
        Elt t;
        Mat h;
    };
    std::vector<TorusGen> torus;
    for (int d = 0; d < f.num_pos(); ++d) {
        int cls = f.num_pos() + d;
        for (Elt t : R.units()) {
            ClassType ty = f.cls(cls).type;
            if (param_domain(ty) == ParamDomain::Fixed && !R.is_fixed(t))
                continue;
            torus.push_back({cls, t, h_class(rep, cls, t).m});
        }
    }

    long long engine_calls = 0;
    const long long kEngineBudget = 40'000'000;
    size_t next_sweep = 0;

    auto cheap_moves = [&](int idx) {
        ClosureNode m = nc.nodes[idx];
        ClassType ty = f.cls(m.cls).type;
        {
            ClosureNode n;
            n.kind = ClosureNode::Kind::Inv;
            n.cls = m.cls;
            n.p = class_inv(R, ty, m.p);
            n.refs = {idx};
            add(std::move(n));
        }
        /* products within the class (both orders) */
        std::vector<int> peers = by_class[m.cls];
        for (int j : peers) {
            for (int swap = 0; swap < 2; ++swap) {
                int a = swap ? j : idx, b = swap ? idx : j;
                ClosureNode n;
                n.kind = ClosureNode::Kind::Sum;
                n.cls = m.cls;
                n.p = class_op(R, ty, nc.nodes[a].p, nc.nodes[b].p);
                n.refs = {a, b};
                add(std::move(n));
            }
        }
        /* Weyl transport by w_[d](1) */
        for (int d = 0; d < f.num_classes(); ++d) {
            ClassLetter t = conj_x_by_w(rep, d, R.one(), m.cls, m.p);
            ClosureNode n;
            n.kind = ClosureNode::Kind::WeylConj;
            n.cls = t.cls;
            n.p = t.p;
            n.refs = {idx};
            n.aux = {d, APair{R.one(), 0}};
            add(std::move(n));
        }
        /* torus transport */
        for (const TorusGen& tg : torus) {
            APair q = conj_x_by_torus(rep, tg.h, m.cls, m.p);
            ClosureNode n;
            n.kind = ClosureNode::Kind::TorusConj;
            n.cls = m.cls;
            n.p = q;
            n.refs = {idx};
            n.aux = {tg.cls, APair{tg.t, 0}};
            add(std::move(n));
        }
    };

    auto partner_sweep = [&](int idx) {
        ClosureNode m = nc.nodes[idx];
        for (int d = 0; d < f.num_classes(); ++d) {
            if (d == m.cls || d == f.neg(m.cls)) continue;
            ClassType dty = f.cls(d).type;
            for (const APair& r : level_params(Lfull, dty)) {
                if (r.t == R.zero() && r.u == R.zero()) continue;
                if (engine_calls > kEngineBudget)
                    throw std::logic_error(
                        "internal: closure sweep budget exhausted");
                ++engine_calls;
                auto lets = commutator_letters(B, R, d, r, m.cls, m.p);
                if (lets.empty()) continue;
                /* single unknown letter: eliminate around it */
                int unknown = -1, bad = 0;
                std::vector<int> ids(lets.size(), -1);
                for (size_t i = 0; i < lets.size(); ++i) {
                    ids[i] = find_known(lets[i].cls, lets[i].p);
                    if (ids[i] < 0) {
                        if (unknown >= 0) ++bad;
                        unknown = (int)i;
                    }
                }
                if (unknown >= 0 && !bad) {
                    ClosureNode n;
                    n.kind = ClosureNode::Kind::CommElim;
                    n.cls = lets[unknown].cls;
                    n.p = lets[unknown].p;
                    n.refs = {idx};
                    n.aux = {d, r};
                    for (int i = 0; i < unknown; ++i) n.pre.push_back(ids[i]);
                    for (size_t i = unknown + 1; i < lets.size(); ++i)
                        n.post.push_back(ids[i]);
                    add(std::move(n));
                }
                /* polarization: pair with the inverse partner parameter
                 * and cancel a common tail */
                if (lets.size() >= 2 && ids[0] < 0) {
                    APair rn = class_inv(R, dty, r);
                    ++engine_calls;
                    auto lets2 = commutator_letters(B, R, d, rn, m.cls, m.p);
                    if (lets2.size() == lets.size() &&
                        lets2[0].cls == lets[0].cls) {
                        bool tail = true;
                        for (size_t i = 1; i < lets.size() && tail; ++i)
                            tail = lets2[i].cls == lets[i].cls &&
                                   lets2[i].p == lets[i].p;
                        if (tail) {
                            ClassType ty0 = f.cls(lets[0].cls).type;
                            ClosureNode n;
                            n.kind = ClosureNode::Kind::Polarize;
                            n.cls = lets[0].cls;
                            n.p = class_op(R, ty0, lets[0].p,
                                           class_inv(R, ty0, lets2[0].p));
                            n.refs = {idx};
                            n.aux = {d, r};
                            n.aux2 = {d, rn};
                            add(std::move(n));
                        }
                    }
                }
            }
        }
    };

    /* phased saturation: cheap closure first, then one partner sweep at a
     * time until every target is reached */
    size_t qi = 0;
    int rounds = 0;
    while (covered < total) {
        while (qi < queue.size() && covered < total) cheap_moves(queue[qi++]);
        if (covered >= total) break;
        if (next_sweep >= queue.size() || ++rounds > 4000)
            throw std::logic_error("internal: closure transfer incomplete (" +
                                   std::to_string(covered) + " of " +
                                   std::to_string(total) + ")");
        partner_sweep(queue[next_sweep++]);
    }

    for (int cls = 0; cls < f.num_classes(); ++cls)
        for (const APair& p : level_params(L, f.cls(cls).type))
            nc.targets.push_back({cls, p, find_known(cls, p)});
    return nc;
}

bool closure_verify(const NormalClosure& nc, const Rep& rep) {
    const Ring& R = rep.ring();
    const Folding& f = rep.fold();
    if (rep.rsys().name() != nc.system || f.order() != nc.order) return false;
    std::vector<GrpElt> val(nc.nodes.size());
    for (size_t i = 0; i < nc.nodes.size(); ++i) {
        const ClosureNode& n = nc.nodes[i];
        for (int r : n.refs)
            if (r < 0 || (size_t)r >= i) return false;
        switch (n.kind) {
        case ClosureNode::Kind::Seed:
            if (n.cls != nc.seed_cls || !(n.p == nc.z)) return false;
            val[i] = x_class(rep, n.cls, n.p);
            break;
        case ClosureNode::Kind::Zero:
            val[i] = rep.one();
            break;
        case ClosureNode::Kind::Inv:
            if (n.refs.size() != 1) return false;
            val[i] = rep.inv(val[n.refs[0]]);
            break;
        case ClosureNode::Kind::Sum:
            if (n.refs.size() != 2) return false;
            val[i] = rep.mul(val[n.refs[0]], val[n.refs[1]]);
            break;
        case ClosureNode::Kind::WeylConj:
            if (n.refs.size() != 1) return false;
            val[i] = rep.conj(w_class(rep, n.aux.cls, n.aux.p.t),
                              val[n.refs[0]]);
            break;
        case ClosureNode::Kind::TorusConj:
            if (n.refs.size() != 1) return false;
            val[i] = rep.conj(h_class(rep, n.aux.cls, n.aux.p.t),
                              val[n.refs[0]]);
            break;
        case ClosureNode::Kind::CommElim: {
            if (n.refs.size() != 1) return false;
            GrpElt com = rep.comm(x_class(rep, n.aux.cls, n.aux.p),
                                  val[n.refs[0]]);
            GrpElt pre = rep.one(), post = rep.one();
            for (int k : n.pre) {
                if (k < 0 || (size_t)k >= i) return false;
                pre = rep.mul(pre, val[k]);
            }
            for (int k : n.post) {
                if (k < 0 || (size_t)k >= i) return false;
                post = rep.mul(post, val[k]);
            }
            val[i] = rep.mul(rep.inv(pre), rep.mul(com, rep.inv(post)));
            break;
        }
        case ClosureNode::Kind::Polarize: {
            if (n.refs.size() != 1) return false;
            GrpElt a = rep.comm(x_class(rep, n.aux.cls, n.aux.p),
                                val[n.refs[0]]);
            GrpElt b = rep.comm(x_class(rep, n.aux2.cls, n.aux2.p),
                                val[n.refs[0]]);
            val[i] = rep.mul(a, rep.inv(b));
            break;
        }
        }
        /* the letter each node claims */
        if (n.kind == ClosureNode::Kind::Zero) {
            if (!rep.is_one(val[i])) return false;
        } else if (!rep.equal(val[i], x_class(rep, n.cls, n.p))) {
            return false;
        }
    }
    for (const ClosureTarget& t : nc.targets) {
        if (t.node < 0 || (size_t)t.node >= nc.nodes.size()) return false;
        const ClosureNode& n = nc.nodes[t.node];
        if (n.kind == ClosureNode::Kind::Zero) {
            if (!rep.equal(rep.one(), x_class(rep, t.cls, t.p))) return false;
        } else if (n.cls != t.cls || !(n.p == t.p)) {
            return false;
        }
        /* level soundness: the letter parameter lies in the ideal */
        if (!param_in_level(R, nc.J, f.cls(t.cls).type, t.p)) return false;
    }
    return true;
}

namespace {

SymWord closure_word(const NormalClosure& nc, const Rep& rep, int idx,
                     size_t& count) {
    if (++count > 2'000'000)
        throw std::logic_error("internal: closure witness too large");
    const ClosureNode& n = nc.nodes[idx];
    auto letter = [&](const ClassLetter& l) {
        return SymWord::x(l.cls, SymPair{SymExpr::element(l.p.t),
                                         SymExpr::element(l.p.u)});
    };
    switch (n.kind) {
    case ClosureNode::Kind::Seed:
        return letter({n.cls, n.p});
    case ClosureNode::Kind::Zero:
        return SymWord::mul({});
    case ClosureNode::Kind::Inv:
        return SymWord::inv(closure_word(nc, rep, n.refs[0], count));
    case ClosureNode::Kind::Sum:
        return SymWord::mul({closure_word(nc, rep, n.refs[0], count),
                             closure_word(nc, rep, n.refs[1], count)});
    case ClosureNode::Kind::WeylConj:
        return SymWord::conj(SymWord::w(n.aux.cls,
                                        SymExpr::element(n.aux.p.t)),
                             closure_word(nc, rep, n.refs[0], count));
    case ClosureNode::Kind::TorusConj:
        return SymWord::conj(SymWord::h(n.aux.cls,
                                        SymExpr::element(n.aux.p.t)),
                             closure_word(nc, rep, n.refs[0], count));
    case ClosureNode::Kind::CommElim: {
        std::vector<SymWord> pre, post;
        for (int k : n.pre) pre.push_back(closure_word(nc, rep, k, count));
        for (int k : n.post) post.push_back(closure_word(nc, rep, k, count));
        SymWord com = SymWord::comm(letter(n.aux),
                                    closure_word(nc, rep, n.refs[0], count));
        return SymWord::mul({SymWord::inv(SymWord::mul(std::move(pre))),
                             std::move(com),
                             SymWord::inv(SymWord::mul(std::move(post)))});
    }
    case ClosureNode::Kind::Polarize:
        return SymWord::mul(
            {SymWord::comm(letter(n.aux),
                           closure_word(nc, rep, n.refs[0], count)),
             SymWord::inv(SymWord::comm(
                 letter(n.aux2),
                 closure_word(nc, rep, n.refs[0], count)))});
    }
    throw std::logic_error("internal: bad closure node");
}

}  // namespace

Certificate closure_certificate(const NormalClosure& nc, const Rep& rep,
                                size_t target_index) {
    if (target_index >= nc.targets.size())
        throw std::domain_error("target index out of range");
    const ClosureTarget& t = nc.targets[target_index];
    size_t count = 0;
    SymWord rhs = closure_word(nc, rep, t.node, count);
    SymWord lhs = SymWord::x(
        t.cls, SymPair{SymExpr::element(t.p.t), SymExpr::element(t.p.u)});
    const Folding& f = rep.fold();
    std::string prov =
        "normal-closure transfer; seed " + f.class_name(nc.seed_cls) + " (" +
        class_type_name(f.cls(nc.seed_cls).type) + "); target " +
        f.class_name(t.cls) + "; witness letters " + std::to_string(count);
    return finish_certificate(rep, std::move(prov), std::move(lhs),
                              std::move(rhs), {});
}

}  // namespace tcg
