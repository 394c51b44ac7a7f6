/***********************************************************************
 * elements.hpp
 *
 * PURPOSE: the twisted group's building blocks on top of a matrix
 *          representation: class letters x/w/h with their parameter
 *          domains, the negative-class convention, exact closed-form
 *          conjugation by Weyl and torus letters, the center, the
 *          untwisting embedding for shift rings, and a small word
 *          grammar used by the command line and the certificates.
 *
 *          Class parameters travel as APair: scalar classes use .t and
 *          keep .u == 0, hermitian classes use both slots.
 ***********************************************************************/
#pragma once

#include "tcg/rep.hpp"

#include <string>
#include <vector>

namespace tcg {

/* a full context owning the folding, the basis and one representation */
struct Group {
    Folding fold;
    ChevalleyBasis basis;
    RingPtr R;
    Rep rep;

    Group(const std::string& sys, int order, RingPtr ring, Rep::Kind kind)
        : fold(RootSystem::make(sys), order),
          basis(fold),
          R(std::move(ring)),
          rep(basis, R, kind) {}
    Group(const Group&) = delete;
    Group& operator=(const Group&) = delete;
};

/* ------------------------------------------------------------------ */
/* parameters and letters                                             */
/* ------------------------------------------------------------------ */

/* true when p lies in the parameter domain of the class */
bool param_ok(const Ring& R, const Folding& f, int cls, APair p);
void param_check(const Ring& R, const Folding& f, int cls, APair p);

/* the class generator; throws on parameters outside the domain */
GrpElt x_class(const Rep& rep, int cls, APair p);

/* the letter for the negated class in the convention that transports
 * parameters along leaders: x_{-[a]}(p) = x_{[-a]}(theta^k p) */
GrpElt x_negclass(const Rep& rep, int cls, APair p);
APair negclass_param(const Ring& R, const Folding& f, int cls, APair p);

/* Weyl letters: scalar form for every class type (hermitian classes
 * use the one-parameter form with a unit of R), and the two-slot
 * hermitian form with an invertible pair */
GrpElt w_class(const Rep& rep, int cls, Elt t);
GrpElt w_class_pair(const Rep& rep, int cls, APair p);

/* torus letters h = w(t) w(-1) and the two-pair hermitian form */
GrpElt h_class(const Rep& rep, int cls, Elt t);
GrpElt h_class_pair(const Rep& rep, int cls, APair p1, APair p2);

/* ------------------------------------------------------------------ */
/* closed-form conjugation                                            */
/* ------------------------------------------------------------------ */

struct ClassLetter {
    int cls = -1;
    APair p;
};

/* w_[wcls](t) x_[xcls](p) w^{-1} as a class letter, computed exactly
 * from the structure constants (no matrix arithmetic) */
ClassLetter conj_x_by_w(const Rep& rep, int wcls, Elt wt, int xcls, APair p);

/* w_[wcls](t) w_[xcls](u) w^{-1} = w_[target](u') for unit scalars */
ClassLetter conj_w_by_w(const Rep& rep, int wcls, Elt wt, int xcls, Elt u);

/* w_[wcls](t) h_[xcls](u) w^{-1} = h_[target](u'), recombined from the
 * transports of the two Weyl factors of the torus letter */
ClassLetter conj_h_by_w(const Rep& rep, int wcls, Elt wt, int xcls, Elt u);

/* conjugation by a diagonal torus element: parameters scale by the
 * character's value at the class leader */
APair conj_x_by_torus(const Rep& rep, const Mat& h, int xcls, APair p);

/* ------------------------------------------------------------------ */
/* center and untwisting                                              */
/* ------------------------------------------------------------------ */

/* all central elements of the twisted group in this representation */
std::vector<GrpElt> center_elements(const Rep& rep);

/* for a shift ring (product of order many copies of a base ring), the
 * isomorphism from the untwisted group over the base onto the twisted
 * group over the product.  Only the first-slot digits of the argument
 * are read (they form a group element over the base ring, e.g. from
 * x_root letters with parameters below base()->order()); slot k of the
 * image holds the k-th twist of that component. */
GrpElt untwist_embed(const Rep& rep, const GrpElt& base_component);
/* the image of an untwisted root element under the isomorphism,
 * written as a product of class letters (the generator formula) */
GrpElt untwist_generator(const Rep& rep, int root_id, Elt base_t);

/* ------------------------------------------------------------------ */
/* words                                                              */
/* ------------------------------------------------------------------ */

struct Word {
    enum class Op { X, W, H, HChi, Mul, Inv, Conj, Comm };
    Op op = Op::Mul;
    int cls = -1;                 // X/W/H
    std::vector<Elt> params;      // letter parameters or character values
    std::vector<Word> kids;       // combinator arguments
};

/* s-expression grammar:
 *   (x [c1] t)  (x [c3] t u)  (w [c2] t)  (w [c3] t u)
 *   (h [c2] t)  (h [c3] t1 u1 t2 u2)  (hchi v1 ... vl)
 *   (* w1 ... wn)  (inv w)  (conj g w)  (comm a b)
 * class tokens are the folding's names, negatives as [-c2] */
Word parse_word(const std::string& text, const Folding& f, const Ring& R);
std::string word_str(const Word& w, const Folding& f);
GrpElt eval_word(const Rep& rep, const Word& w);

}  // namespace tcg
