/***********************************************************************
 * basis.hpp
 *
 * PURPOSE: an integral Chevalley basis for the simply-laced systems,
 *          with structure constants N(a,b) normalized so that the
 *          diagram automorphism acts on root vectors with the canonical
 *          signs: +1 everywhere except the fixed roots of hermitian
 *          (A2-type) classes, which carry -1.  Also the c- and d-signs
 *          that appear when conjugating root elements by Weyl letters.
 *
 *          Construction: a bimultiplicative asymmetry function on the
 *          root lattice gives raw constants; the automorphism's action
 *          signs are then computed by recursion over heights, and a
 *          per-orbit +-1 rescale of the root vectors moves them onto
 *          the canonical pattern.  Unsatisfiable sign constraints throw
 *          (they would indicate an internal error, not bad input).
 ***********************************************************************/
#pragma once

#include "tcg/fold.hpp"

#include <cstdint>
#include <vector>

namespace tcg {

class ChevalleyBasis {
public:
    /* keeps a reference to `f`; the folding must outlive the basis */
    explicit ChevalleyBasis(const Folding& f);

    const Folding& fold() const { return f_; }
    const RootSystem& rs() const { return f_.rs(); }
    const GraphAut& aut() const { return f_.aut(); }

    /* [X_a, X_b] = N(a,b) X_{a+b}; zero when a+b is not a root.
     * ([X_a, X_{-a}] = H_a is handled by representations directly.) */
    int N(int a, int b) const { return Ntab_[(size_t)a * nr_ + b]; }

    /* sign of the twist on the root vector: sigma(X_a) = eps * X_{rho a} */
    int eps_sign(int a) const { return eps_[a]; }

    /* c(a,b): the sign picked up by x_b(u) under conjugation by w_a(1);
     * satisfies c(a,b) = c(a,-b) */
    int c_sign(int a, int b) const;

    /* d([c],b): the accumulated sign for conjugation by the class-level
     * Weyl letter w_[c](1), equal on b and rho(b) */
    int d_sign(int cls, int b) const;

private:
    const Folding& f_;
    int nr_;
    std::vector<int8_t> Ntab_;
    std::vector<int8_t> eps_;
};

}  // namespace tcg
