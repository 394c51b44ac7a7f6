/***********************************************************************
 * congruence.hpp
 *
 * PURPOSE: level structure relative to a twist-invariant ideal J:
 *          per-class parameter domains, the generators of the
 *          elementary level subgroup, unique unipotent factorization
 *          with exact read-off peeling, the closed-form UHV conjugate
 *          x(s) y(t) x(s)^-1 = x(a) h y(b), factorization of kernel
 *          elements into U T V, torus level tests, and extraction of
 *          the level ideal of an adjoint matrix.
 *
 *          Unipotent coordinates follow the fixed regular order:
 *          positive classes by ascending folded height, negative
 *          classes by ascending depth (shallowest first).
 ***********************************************************************/
#pragma once

#include "tcg/elements.hpp"

namespace tcg {

/* ------------------------------------------------------------------ */
/* level ideals and their class parameter domains                     */
/* ------------------------------------------------------------------ */

/* a twist-invariant ideal together with the parameter menus it induces
 * on each class type: fixed elements for orthogonal rank-one classes,
 * plain elements for the split types, hermitian pairs for the rest */
struct LevelIdeal {
    ThetaIdeal J;
    std::vector<APair> fixed_params;  // A1 classes:  t in J, t fixed
    std::vector<APair> plain_params;  // A1x2 / A1x3: t in J
    std::vector<APair> herm_params;   // A2 classes:  both slots in J
};

LevelIdeal level_ideal(const RingPtr& R, ThetaIdeal J);

/* the parameter menu of a class type under the level ideal */
const std::vector<APair>& level_params(const LevelIdeal& L, ClassType ty);

/* whether one parameter lies in the class-type component of J */
bool param_in_level(const Ring& R, const ThetaIdeal& J, ClassType ty, APair p);

/* every x_[a](t) with t nonzero in the J-component, over all classes of
 * both signs; deterministic order (class id, then parameter) */
std::vector<ClassLetter> elementary_level_generators(const Rep& rep,
                                                     const LevelIdeal& L);

/* ------------------------------------------------------------------ */
/* unique unipotent factorization                                     */
/* ------------------------------------------------------------------ */

/* coordinates of an upper (resp. lower) unipotent element as one
 * parameter per positive (resp. negative) class in the fixed regular
 * order; the letter product in list order re-evaluates to the input.
 * Throws domain_error when the matrix is not such a product. */
std::vector<ClassLetter> u_factor(const Rep& rep, const Mat& m);
std::vector<ClassLetter> v_factor(const Rep& rep, const Mat& m);

/* product of class letters as a group element */
GrpElt letters_eval(const Rep& rep, const std::vector<ClassLetter>& ls);

/* ------------------------------------------------------------------ */
/* closed-form conjugation across the diagonal                        */
/* ------------------------------------------------------------------ */

/* x_[c](s) x_-[c](t) x_[c](s)^-1 = x_[c](a) h_[c](h) x_-[c](b), with
 * the negative letters in the parameter-transport convention.  Needs
 * the cross unit 1 - st (hermitian: 1 - (bar t1 s1 - t2 bar s2) after
 * the frame change); throws domain_error when it is not invertible. */
struct UHVParts {
    APair a;
    Elt h = 0;
    APair b;
};
UHVParts uhv_conjugate(const Ring& R, const Folding& f, int cls, APair s,
                       APair t);

/* ------------------------------------------------------------------ */
/* kernel factorization and level tests                               */
/* ------------------------------------------------------------------ */

/* factorization g = u * t * v of an element of the principal kernel
 * mod J (J inside the radical): unipotent coordinates land in the
 * J-components and the diagonal part is a twist-fixed torus element
 * congruent to the identity.  Validates by recombination. */
struct KernelFactorization {
    std::vector<ClassLetter> u;  // positive classes, regular order
    GrpElt t;                    // diagonal torus element
    std::vector<ClassLetter> v;  // negative classes, regular order
};
KernelFactorization kernel_factor_utv(const Rep& rep, const GrpElt& g,
                                      const ThetaIdeal& J);

/* the two congruence conditions on a twist-fixed diagonal element:
 * values on the representation weights in 1+J (principal kernel), and
 * values on the roots in 1+J (kernel modulo the center) */
struct TorusLevel {
    bool in_T_J = false;
    bool in_T_RJ = false;
};
TorusLevel torus_level_test(const Rep& rep, const GrpElt& h,
                            const ThetaIdeal& J);

/* smallest twist-invariant ideal J with g congruent to the identity:
 * generated by the entries of g - 1 in the adjoint representation */
ThetaIdeal level_of(const Rep& rep, const GrpElt& g);

}  // namespace tcg
