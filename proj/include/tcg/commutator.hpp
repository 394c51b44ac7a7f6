/***********************************************************************
 * commutator.hpp
 *
 * PURPOSE: exact commutators of twisted root elements.  For two
 *          distinct, non-opposite classes, [x_[a](p), x_[b](q)] is
 *          expanded as an ordered product of class letters on the
 *          folded classes interior to the cone spanned by [a] and [b].
 *
 *          The expansion is computed by collecting the ambient
 *          Chevalley word X Y X^-1 Y^-1 into normal form inside the
 *          nilpotent subgroup of the span (the simply-laced relation
 *          x_r(s) x_r'(s') = x_{r+r'}(N(r,r') s s') x_r'(s') x_r(s)
 *          terminates because cone levels strictly add), then peeling
 *          one class letter at a time in ascending level order.  This
 *          realizes every case of the pair taxonomy uniformly and is
 *          exact over any coefficient ring; the letter lists match the
 *          matrix representations (tested exhaustively).
 ***********************************************************************/
#pragma once

#include "tcg/basis.hpp"
#include "tcg/elements.hpp"

#include <utility>
#include <vector>

namespace tcg {

/* root-level pieces of x_[cls](p), in canonical written order:
 * A1 (t) | A1x2 (t, theta t) | A1x3 (t, theta t, theta^2 t) |
 * A2 (t, theta t, N(abar,a) u) */
std::vector<std::pair<int, Elt>> class_letter_roots(const ChevalleyBasis& B,
                                                    const Ring& R, int cls,
                                                    APair p);

/* [x_[c1](p), x_[c2](q)] = product of the returned letters, in order.
 * Classes must be distinct and non-opposite (throws domain_error
 * otherwise, as for invalid parameters).  Classes whose parameters
 * vanish are omitted; pairs that commute give an empty list. */
std::vector<ClassLetter> commutator_letters(const ChevalleyBasis& B,
                                            const Ring& R, int c1, APair p,
                                            int c2, APair q);

}  // namespace tcg
