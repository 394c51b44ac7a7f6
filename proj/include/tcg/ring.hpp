/***********************************************************************
 * ring.hpp
 *
 * PURPOSE: finite commutative rings with a distinguished automorphism
 *          theta of order 2 or 3, as the coefficient domain for the
 *          twisted group machinery.
 *
 *          Supported constructions (descriptor grammar):
 *            gf(q)          finite field, q = p^k; theta = Frobenius x->x^p
 *            gf(q;frob)     same, explicit spelling
 *            prod2(S)       S x S with coordinate swap
 *            prod3(S)       S x S x S with coordinate rotation
 *            dual(S;m)      S[eps]/(eps^m), theta extended by theta(eps)=eps
 *
 *          Elements are canonical indices 0..order-1 with a documented
 *          digit encoding (see encoding_doc()).  Small rings flatten to
 *          lookup tables; large ones compute through their structure.
 *
 *          Also here: theta-invariant ideals, quotients, the fixed
 *          subring, radical / maximal ideals, the hermitian parameter
 *          group A(R) = {(t,u) : t*theta(t) = u + theta(u)} with its
 *          decompositions, and the surjectivity / descent conditions
 *          used by the normality theorems.
 ***********************************************************************/
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcg {

using Elt = uint32_t;

/* error raised for semantically invalid input (bad descriptor, non-unit
 * inverse, parameter outside its domain, ...).  The CLI maps it to exit
 * code 1; malformed command syntax maps to exit code 2. */
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/* ------------------------------------------------------------------ */
/* theta-invariant ideals                                             */
/* ------------------------------------------------------------------ */

struct ThetaIdeal {
    std::vector<Elt> gens;      // the generators handed in (pre theta-closure)
    std::vector<Elt> elems;     // sorted, complete element list
    std::vector<uint8_t> memb;  // membership bitmap indexed by element

    bool contains(Elt x) const { return memb[x] != 0; }
    size_t size() const { return elems.size(); }
};

/* hermitian pair (t,u) with t*theta(t) = u + theta(u) */
struct APair {
    Elt t = 0, u = 0;
    bool operator==(const APair& o) const { return t == o.t && u == o.u; }
    bool operator<(const APair& o) const {
        return t != o.t ? t < o.t : u < o.u;
    }
};

/* ------------------------------------------------------------------ */
/* Ring                                                               */
/* ------------------------------------------------------------------ */

class Ring : public std::enable_shared_from_this<Ring> {
public:
    enum class Kind { Table, GF, Prod, Dual };

    /* parse a descriptor; validates that theta has order 2 or 3 and that
     * the required small integers are invertible (2 for order 2; 2 and 3
     * for order 3).  `ideal(<ring>; g1,...)` is handled by the callers
     * that need an ideal, not here. */
    static RingPtr make(const std::string& descriptor);

    /* parse without the twisted-ring validation (used for the base ring
     * inside prod/dual and by tests). */
    static RingPtr make_raw(const std::string& descriptor);

    /* explicit table ring (quotients, subrings, tests) */
    static RingPtr make_table(std::string descriptor, int characteristic,
                              std::vector<Elt> add, std::vector<Elt> mul,
                              std::vector<Elt> theta);

    const std::string& descriptor() const { return desc_; }
    Kind kind() const { return kind_; }
    uint32_t order() const { return n_; }
    int characteristic() const { return char_; }
    int theta_order() const { return theta_ord_; }

    Elt zero() const { return 0; }
    Elt one() const { return one_; }
    Elt add(Elt a, Elt b) const;
    Elt neg(Elt a) const;
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt mul(Elt a, Elt b) const;
    Elt theta(Elt a) const;
    Elt theta_pow(Elt a, int k) const;
    Elt of_int(long long v) const;   // image of an integer
    Elt pow(Elt a, long long e) const;  // e<0 requires a unit

    bool is_unit(Elt a) const;
    Elt inv(Elt a) const;            // throws domain_error on non-units
    bool has_half() const { return char_ != 2; }
    bool has_third() const { return char_ != 3; }
    Elt half() const;                // 1/2, throws if char 2
    Elt third() const;               // 1/3, throws if char 3

    bool is_fixed(Elt a) const { return theta(a) == a; }
    const std::vector<Elt>& units() const;
    const std::vector<Elt>& fixed() const;     // sorted R_theta
    bool is_nilpotent(Elt a) const;
    const std::vector<Elt>& radical() const;   // sorted

    /* all maximal ideals, each a sorted element list; deterministic order */
    const std::vector<std::vector<Elt>>& maximal_ideals() const;

    /* quotient by a theta-invariant ideal.  proj maps parent -> quotient
     * index, lift picks the least representative. */
    struct Quot {
        RingPtr ring;
        std::vector<Elt> proj;
        std::vector<Elt> lift;
    };
    Quot quotient(const ThetaIdeal& J) const;

    /* the fixed subring R_theta as a ring in its own right (trivial theta) */
    struct Sub {
        RingPtr ring;
        std::vector<Elt> lift;        // sub index -> parent element
        std::vector<int32_t> idx_of;  // parent element -> sub index or -1
    };
    const Sub& fixed_subring() const;

    std::string elt_str(Elt a) const;   // canonical decimal index
    std::string pretty(Elt a) const;    // digit tuple, human oriented
    std::string encoding_doc() const;   // documents the digit encoding

    /* structural access for composite kinds */
    RingPtr base() const { return base_; }   // prod/dual component ring
    int arity() const { return m_; }         // prod width / dual truncation

private:
    Ring() = default;
    void finalize();   // computes one_, units, caches

    Kind kind_ = Kind::Table;
    std::string desc_;
    uint32_t n_ = 0;
    int char_ = 0;
    int theta_ord_ = 1;
    Elt one_ = 0;

    /* GF data */
    int p_ = 0, k_ = 0;
    std::vector<int> irred_;             // irreducible poly coeffs, degree k
    /* flat tables (GF always; Table always; Prod/Dual when order <= cap) */
    bool flat_ = false;
    std::vector<uint16_t> addt_, mult_;
    std::vector<Elt> thetat_, negt_, invt_;  // invt_[a]=a^-1 or 0 sentinel
    std::vector<uint8_t> unitt_;
    /* composite data */
    RingPtr base_;
    int m_ = 0;

    mutable std::vector<Elt> units_cache_, fixed_cache_, radical_cache_;
    mutable std::vector<std::vector<Elt>> maxideals_cache_;
    mutable std::shared_ptr<Sub> fixed_sub_cache_;
    mutable bool have_maxideals_ = false;

    Elt enc(const std::vector<Elt>& digits) const;      // composite encode
    void dec(Elt a, std::vector<Elt>& digits) const;    // composite decode
    Elt theta_pow_impl_check(Elt a, int k) const;       // pre-finalize helper
};

/* ------------------------------------------------------------------ */
/* ideals                                                             */
/* ------------------------------------------------------------------ */

ThetaIdeal ideal_make(const RingPtr& R, std::vector<Elt> gens);
ThetaIdeal ideal_zero(const RingPtr& R);
ThetaIdeal ideal_whole(const RingPtr& R);
ThetaIdeal ideal_sum(const RingPtr& R, const ThetaIdeal& I, const ThetaIdeal& J);
bool ideal_equal(const ThetaIdeal& I, const ThetaIdeal& J);
/* smallest theta-ideal containing the set (for level computations) */
ThetaIdeal ideal_from_elements(const RingPtr& R, const std::vector<Elt>& elems);

/* ------------------------------------------------------------------ */
/* hermitian parameter group A(R)                                     */
/* ------------------------------------------------------------------ */

bool  aform_valid(const Ring& R, APair p);
APair aform_op(const Ring& R, APair a, APair b);   // (t,u)+(t',u'+theta(t)t')
APair aform_inv(const Ring& R, APair a);           // (-t, theta(u))
APair aform_act(const Ring& R, Elt r, APair a);    // (r t, r theta(r) u)
bool  aform_is_unit(const Ring& R, APair a);       // second entry a unit
/* all pairs with both entries in J (J = nullptr means the whole ring) */
std::vector<APair> aform_enumerate(const Ring& R, const ThetaIdeal* J = nullptr);

/* central-times-cyclic decomposition: p = (t, t*theta(t)/2) o (0, skew),
 * skew = (u - theta(u))/2; valid when 2 is a unit. */
struct AformHK {
    APair k;   // (t, t*theta(t)/2)
    APair h;   // (0, (u-theta(u))/2), central with theta-skew second entry
};
AformHK aform_decompose_HK(const Ring& R, APair p);

/* split p in A(I+J) into A(I) o A(J) o correction, entries as displayed
 * by the additive-splitting identity; a1/b1 must decompose t. */
struct AformSplit {
    APair pI, pJ, corr;
};
AformSplit aform_split_sum(const Ring& R, APair p, Elt a1, Elt b1, Elt a2, Elt b2);

/* trace section: for theta-fixed t returns r with t = sum_i theta^i(r)
 * over the theta orbit (r = t/2 resp. t/3); throws if t is not fixed. */
Elt symmetrize(const Ring& R, Elt t);

/* unit second entries of A(R), their k-fold products, even/odd closures */
struct RkSets {
    std::vector<std::vector<Elt>> Rk;   // Rk[i] = R_{i+1}, sorted
    std::vector<Elt> Reven, Rodd;       // unions of even / odd stages
};
RkSets rk_sets(const Ring& R, int kmax);

/* ------------------------------------------------------------------ */
/* surjectivity / descent conditions                                  */
/* ------------------------------------------------------------------ */

struct ConditionReport {
    struct PerIdeal {
        std::vector<Elt> ideal;      // the maximal ideal m (sorted)
        std::vector<Elt> core;       // m cap theta(m) [cap theta^2(m)]
        bool fixed_surjective = false;   // R_theta ->> (R/core)_theta
        bool aform_surjective = false;   // A(R) ->> A(R/core)
    };
    std::vector<PerIdeal> per_ideal;
    bool cond_surject_scalar = true;   // all fixed_surjective
    bool cond_surject_aform = true;    // all aform_surjective
    bool aform_has_unit = false;       // A(R)* nonempty
    struct PerFixedIdeal {
        std::vector<Elt> ideal;        // maximal ideal of R_theta (sub indices)
        bool contraction_equal = false; // m_0 = R_theta cap (m_0 R)
    };
    std::vector<PerFixedIdeal> per_fixed_ideal;
    bool cond_descent = true;          // all contraction_equal
};
ConditionReport check_conditions(const RingPtr& R);

/* parse `ideal(<ring>; g1,g2,...)` or a bare ring descriptor (then the
 * ideal is zero); generators are canonical element indices. */
std::pair<RingPtr, ThetaIdeal> parse_ring_with_ideal(const std::string& descriptor);

}  // namespace tcg
