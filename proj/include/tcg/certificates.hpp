/***********************************************************************
 * certificates.hpp
 *
 * PURPOSE: constructive word certificates for the structure identities
 *          at generator level, plus an exact verifier.
 *
 *          A certificate records a claimed identity between two words
 *          in the twisted generators.  Parameters are symbolic:
 *          polynomials in named variables and their twist images with
 *          small rational coefficients, so one certificate instantiates
 *          over every coefficient ring where its parameters exist.  An
 *          emission-time variable binding is carried along; verification
 *          evaluates both sides to matrices and compares exactly.
 *
 *          Three generators are provided:
 *            - certify_generator_commutator: writes x_[a](u) as a
 *              product of mixed commutators whose second entries have
 *              parameters built from u (membership of the elementary
 *              level subgroup in the mixed commutator subgroup);
 *            - certify_negroot_split: splits a negative letter into one
 *              commutator times an explicit residual word on the deeper
 *              cone classes;
 *            - certify_normal_closure: the ideal generated by a single
 *              letter's parameter, together with a verified transfer
 *              chain that reaches every elementary generator of that
 *              level from conjugates of the one letter.
 ***********************************************************************/
#pragma once

#include "tcg/congruence.hpp"
#include "tcg/elements.hpp"

#include <map>
#include <string>
#include <vector>

namespace tcg {

/* ------------------------------------------------------------------ */
/* symbolic ring expressions                                          */
/* ------------------------------------------------------------------ */

/* expression tree over named variables, their twist images, rational
 * constants (denominators must invert in the instantiating ring) and,
 * for ring-tied certificates, opaque element constants */
struct SymExpr {
    enum class Op { Rat, Elem, Var, Theta, Add, Mul, Neg };
    Op op = Op::Rat;
    long long num = 0, den = 1;   // Rat
    Elt elem = 0;                 // Elem (element of the emission ring)
    std::string var;              // Var
    std::vector<SymExpr> kids;    // Theta / Add / Mul / Neg

    static SymExpr rat(long long num, long long den = 1);
    static SymExpr element(Elt e);
    static SymExpr variable(std::string name);
    static SymExpr theta(SymExpr e, int pow = 1);
    static SymExpr add(SymExpr a, SymExpr b);
    static SymExpr mul(SymExpr a, SymExpr b);
    static SymExpr neg(SymExpr a);
    /* c * product of twist powers, a convenience for monomials */
    static SymExpr monomial(long long num, long long den,
                            const std::string& var,
                            const std::vector<int>& theta_pows);
};

/* variable binding used to instantiate an expression */
using SymEnv = std::map<std::string, Elt>;

/* evaluation over a ring; throws domain_error on unbound variables and
 * on rational coefficients that do not invert */
Elt sym_eval(const SymExpr& e, const Ring& R, const SymEnv& env);

/* replace every occurrence of a variable by another expression */
SymExpr sym_subst(const SymExpr& e, const std::string& var,
                  const SymExpr& repl);

std::string sym_str(const SymExpr& e);
SymExpr parse_sym(const std::string& text);

/* pair parameter with symbolic slots; scalar classes keep .u == 0 */
struct SymPair {
    SymExpr t = SymExpr::rat(0);
    SymExpr u = SymExpr::rat(0);
};

/* ------------------------------------------------------------------ */
/* symbolic words                                                     */
/* ------------------------------------------------------------------ */

struct SymWord {
    enum class Op { X, W, H, Mul, Inv, Conj, Comm };
    Op op = Op::Mul;
    int cls = -1;                 // X / W / H
    SymPair p;                    // X (W/H use p.t only)
    std::vector<SymWord> kids;    // combinator arguments

    static SymWord x(int cls, SymPair p);
    static SymWord x(int cls, SymExpr t);
    static SymWord w(int cls, SymExpr t);
    static SymWord h(int cls, SymExpr t);
    static SymWord mul(std::vector<SymWord> ws);
    static SymWord inv(SymWord w);
    static SymWord conj(SymWord g, SymWord w);   // g w g^-1
    static SymWord comm(SymWord a, SymWord b);   // a b a^-1 b^-1
};

GrpElt sym_word_eval(const SymWord& w, const Rep& rep, const SymEnv& env);
std::string sym_word_str(const SymWord& w, const Folding& f);
SymWord parse_sym_word(const std::string& text, const Folding& f);

/* instantiate into the concrete word grammar (letters only) */
Word sym_word_bind(const SymWord& w, const Rep& rep, const SymEnv& env);

/* ------------------------------------------------------------------ */
/* certificates                                                       */
/* ------------------------------------------------------------------ */

struct Certificate {
    std::string system;       // ambient root system name, e.g. "A4"
    int order = 2;            // twist order
    std::string ring;         // coefficient ring descriptor at emission
    std::string provenance;   // construction tag with frozen signs
    SymWord lhs, rhs;
    SymEnv binding;           // emission-time variable values
};

/* exact check: both sides evaluate to equal matrices.  The overload
 * without an environment uses the certificate's own binding.  Throws
 * domain_error when a parameter is invalid over the representation's
 * ring. */
bool verify_certificate(const Certificate& c, const Rep& rep);
bool verify_certificate(const Certificate& c, const Rep& rep,
                        const SymEnv& env);

std::string certificate_str(const Certificate& c);
/* parses the textual form; reconstructs the folding from the header */
Certificate parse_certificate(const std::string& text);

/* x_[c](u) as a product of commutators [*, letter-with-parameter-in-(u)]
 * using a deterministic companion search; signs and coefficients are
 * frozen against the basis by one-shot evaluation at emission.  Every
 * auxiliary parameter on the second commutator slots is a polynomial in
 * u and its twist images, so the letters stay inside any invariant
 * ideal containing u's components. */
Certificate certify_generator_commutator(const Rep& rep, int c, APair u);

/* x_{-[c]}(u) = [x_{-([c]+[g])}(u1), x_[g](u2)] * residual, with (u1,u2)
 * chosen by the pair type of (-[c]-[g], [g]) and the residual an
 * explicit word on the deeper cone classes with parameters in (u).
 * companion is the class id of [g]; throws when the pair type has no
 * table row or the slot typing rejects u. */
Certificate certify_negroot_split(const Rep& rep, int c, APair u,
                                  int companion);

/* ------------------------------------------------------------------ */
/* normal closure of a single letter                                  */
/* ------------------------------------------------------------------ */

/* one member of the closure with the move that produced it; moves only
 * reference earlier nodes, so the list evaluates front to back */
struct ClosureNode {
    enum class Kind {
        Seed,      // the given letter itself
        Zero,      // the empty word (parameter zero)
        Inv,       // inverse of refs[0]
        Sum,       // product refs[0] * refs[1] (same class)
        WeylConj,  // w_[aux.cls](aux.p.t) refs[0] w^-1
        TorusConj, // h_[aux.cls](aux.p.t) refs[0] h^-1
        CommElim,  // strip known letters around [x_aux, refs[0]]
        Polarize   // [x_aux, refs[0]] * [x_aux2, refs[0]]^-1, common tail
    };
    int cls = -1;              // the member letter this node certifies
    APair p;
    Kind kind = Kind::Seed;
    std::vector<int> refs;     // member nodes used by the move
    ClassLetter aux, aux2;     // conjugator / commutator partner letters
    std::vector<int> pre, post;// CommElim: known letters around the target
};

struct ClosureTarget {
    int cls = -1;
    APair p;
    int node = -1;             // index into the node list
};

struct NormalClosure {
    std::string system;
    int order = 2;
    std::string ring;
    int seed_cls = -1;
    APair z;
    ThetaIdeal J;              // the displayed ideal of the seed parameter
    std::vector<ClosureNode> nodes;
    std::vector<ClosureTarget> targets;  // every class, every level letter
};

/* saturates conjugation moves from x_[c](z) until every elementary
 * generator at the displayed level is reached; throws logic_error when
 * the transfer chain cannot be completed (internal) */
NormalClosure certify_normal_closure(const Rep& rep, int c, APair z);

/* evaluate every node exactly and check the letter it claims, then the
 * target list; also enforces that leaf letters in member position are
 * the seed letter only (soundness of the closure form) */
bool closure_verify(const NormalClosure& nc, const Rep& rep);

/* materialize one target's witness as a ring-tied certificate */
Certificate closure_certificate(const NormalClosure& nc, const Rep& rep,
                                size_t target_index);

}  // namespace tcg
