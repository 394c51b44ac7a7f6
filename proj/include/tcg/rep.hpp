/***********************************************************************
 * rep.hpp
 *
 * PURPOSE: exact matrix representations over a coefficient ring: the
 *          adjoint representation (any supported system) and the
 *          natural representation (A family).  Provides root-element
 *          matrices, diagonal torus elements from characters, the
 *          semilinear twist on matrices, and group-element arithmetic
 *          where every element carries its inverse so that no general
 *          matrix inversion over the ring is ever needed.
 *
 *          Basis conventions put positive root elements in the upper
 *          triangle and negative ones in the lower triangle for both
 *          representations, and the twist preserves the triangles.
 ***********************************************************************/
#pragma once

#include "tcg/basis.hpp"

#include <memory>
#include <vector>

namespace tcg {

struct Mat {
    int n = 0;
    std::vector<Elt> a;

    Mat() = default;
    explicit Mat(int dim) : n(dim), a((size_t)dim * dim, 0) {}
    Elt& at(int i, int j) { return a[(size_t)i * n + j]; }
    Elt at(int i, int j) const { return a[(size_t)i * n + j]; }
    bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
};

/* a group element together with its inverse */
struct GrpElt {
    Mat m, mi;
};

class Rep {
public:
    enum class Kind { Adjoint, Natural };

    /* keeps references; basis and ring must outlive the representation */
    Rep(const ChevalleyBasis& cb, RingPtr R, Kind kind);

    const ChevalleyBasis& basis() const { return cb_; }
    const Folding& fold() const { return cb_.fold(); }
    const RootSystem& rsys() const { return cb_.rs(); }
    const Ring& ring() const { return *R_; }
    RingPtr ring_ptr() const { return R_; }
    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    /* matrix arithmetic over the ring */
    Mat ident() const;
    Mat mul(const Mat& x, const Mat& y) const;
    Mat transpose(const Mat& x) const;
    Mat theta_entries(const Mat& x) const;

    /* group arithmetic (inverse carried along) */
    GrpElt one() const;
    GrpElt mul(const GrpElt& x, const GrpElt& y) const;
    GrpElt inv(const GrpElt& x) const;
    GrpElt conj(const GrpElt& g, const GrpElt& x) const;   // g x g^-1
    GrpElt comm(const GrpElt& x, const GrpElt& y) const;   // x y x^-1 y^-1
    bool equal(const GrpElt& x, const GrpElt& y) const { return x.m == y.m; }
    bool is_one(const GrpElt& x) const { return x.m == ident(); }

    /* untwisted root element for a root id */
    GrpElt x_root(int root_id, Elt t) const;

    /* diagonal torus element from a character given by unit values on
     * the lattice basis: simple roots (adjoint) or fundamental weights
     * (natural); throws on non-unit values */
    GrpElt h_char(const std::vector<Elt>& chi) const;
    /* whether the character commutes with the twist */
    bool char_twist_fixed(const std::vector<Elt>& chi) const;

    /* the semilinear twist; sigma^order = id, fixed points form the
     * twisted group */
    GrpElt twist(const GrpElt& g) const;
    bool twist_fixed(const GrpElt& g) const;

    /* values of a diagonal element on all weights of the representation
     * (the diagonal itself) and on all roots, indexed by root id */
    std::vector<Elt> weight_values(const Mat& h) const;
    std::vector<Elt> root_values(const Mat& h) const;

    /* introspection used by the factorization routines */
    int adj_slot(int root_id) const;              // basis position
    struct NatSlot { int row = -1, col = -1, sign = 1; };
    NatSlot nat_slot(int root_id) const;

private:
    const ChevalleyBasis& cb_;
    RingPtr R_;
    Kind kind_;
    int dim_ = 0;

    /* adjoint: signed permutation of the twist on the Lie algebra */
    Mat P_, Pi_;
    /* natural: hermitian-form matrix and per-root sign/slot data */
    Mat A_, Ai_;
    std::vector<NatSlot> nslot_;

    void build_adjoint();
    void build_natural();
};

}  // namespace tcg
