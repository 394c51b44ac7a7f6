/***********************************************************************
 * rep.cpp
 *
 * PURPOSE: adjoint and natural matrix representations, the semilinear
 *          twist on each, torus elements from characters, and the
 *          sign bookkeeping that aligns the natural representation's
 *          structure constants with the chosen Chevalley basis.
 ***********************************************************************/
#include "tcg/rep.hpp"

#include <cstdint>

namespace tcg {

namespace {

/* dense GF(2) system, masks over at most 32 variables */
struct LinSys {
    int nvars = 0;
    std::vector<uint32_t> rows;
    std::vector<uint8_t> rhs;

    void add(uint32_t mask, int r) {
        rows.push_back(mask);
        rhs.push_back((uint8_t)(r & 1));
    }

    /* returns false when inconsistent; free variables become zero */
    bool solve(std::vector<uint8_t>& out) const {
        std::vector<uint32_t> m = rows;
        std::vector<uint8_t> b = rhs;
        std::vector<int> pivot_row(nvars, -1);
        int rank = 0;
        for (int v = 0; v < nvars && rank < (int)m.size(); ++v) {
            int p = -1;
            for (int i = rank; i < (int)m.size(); ++i)
                if (m[i] >> v & 1) { p = i; break; }
            if (p < 0) continue;
            std::swap(m[p], m[rank]);
            std::swap(b[p], b[rank]);
            for (int i = 0; i < (int)m.size(); ++i)
                if (i != rank && (m[i] >> v & 1)) { m[i] ^= m[rank]; b[i] ^= b[rank]; }
            pivot_row[v] = rank;
            ++rank;
        }
        for (int i = rank; i < (int)m.size(); ++i)
            if (b[i]) return false;
        out.assign(nvars, 0);
        for (int v = 0; v < nvars; ++v)
            if (pivot_row[v] >= 0) out[v] = b[pivot_row[v]];
        return true;
    }
};

}  // namespace

Rep::Rep(const ChevalleyBasis& cb, RingPtr R, Kind kind)
    : cb_(cb), R_(std::move(R)), kind_(kind) {
    if (kind_ == Kind::Adjoint) build_adjoint();
    else build_natural();
}

/* ------------------------------------------------------------------ */
/* matrix arithmetic                                                  */
/* ------------------------------------------------------------------ */

Mat Rep::ident() const {
    Mat m(dim_);
    for (int i = 0; i < dim_; ++i) m.at(i, i) = R_->one();
    return m;
}

Mat Rep::mul(const Mat& x, const Mat& y) const {
    Mat out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            Elt xik = x.at(i, k);
            if (xik == R_->zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                Elt ykj = y.at(k, j);
                if (ykj == R_->zero()) continue;
                out.at(i, j) = R_->add(out.at(i, j), R_->mul(xik, ykj));
            }
        }
    return out;
}

Mat Rep::transpose(const Mat& x) const {
    Mat out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(j, i) = x.at(i, j);
    return out;
}

Mat Rep::theta_entries(const Mat& x) const {
    Mat out(dim_);
    for (size_t k = 0; k < x.a.size(); ++k) out.a[k] = R_->theta(x.a[k]);
    out.n = x.n;
    return out;
}

GrpElt Rep::one() const { return {ident(), ident()}; }

GrpElt Rep::mul(const GrpElt& x, const GrpElt& y) const {
    return {mul(x.m, y.m), mul(y.mi, x.mi)};
}

GrpElt Rep::inv(const GrpElt& x) const { return {x.mi, x.m}; }

GrpElt Rep::conj(const GrpElt& g, const GrpElt& x) const {
    return mul(mul(g, x), inv(g));
}

GrpElt Rep::comm(const GrpElt& x, const GrpElt& y) const {
    return mul(mul(x, y), mul(inv(x), inv(y)));
}

/* ------------------------------------------------------------------ */
/* adjoint representation                                             */
/* ------------------------------------------------------------------ */

int Rep::adj_slot(int id) const {
    const RootSystem& rs = cb_.rs();
    int np = rs.num_pos();
    if (id >= np) return rs.num_roots() - 1 - id;       // positives on top
    return np + rs.rank() + (np - 1 - id);              // negatives below
}

void Rep::build_adjoint() {
    const RootSystem& rs = cb_.rs();
    const GraphAut& aut = cb_.aut();
    int np = rs.num_pos();
    dim_ = rs.num_roots() + rs.rank();

    P_ = Mat(dim_);
    for (int a = 0; a < rs.num_roots(); ++a)
        P_.at(adj_slot(aut.apply(a)), adj_slot(a)) = R_->of_int(cb_.eps_sign(a));
    for (int i = 0; i < rs.rank(); ++i)
        P_.at(np + aut.simple_perm[i], np + i) = R_->one();
    Pi_ = transpose(P_);
}

void Rep::build_natural() {
    const RootSystem& rs = cb_.rs();
    const GraphAut& aut = cb_.aut();
    if (rs.type() != 'A')
        throw domain_error("natural representation requires the A family");
    int m = rs.rank() + 1;
    dim_ = m;
    int nr = rs.num_roots(), np = rs.num_pos();

    /* root -> matrix slot via the weight coordinates */
    nslot_.assign(nr, {});
    for (int id = 0; id < nr; ++id) {
        const auto& c = rs.root(id);
        int i = -1, j = -1;
        for (int t = 0; t < m; ++t) {
            int e = (t < rs.rank() ? c[t] : 0) - (t > 0 ? c[t - 1] : 0);
            if (e == 1) i = t;
            else if (e == -1) j = t;
            else if (e != 0) throw domain_error("internal: natural weights");
        }
        if (i < 0 || j < 0) throw domain_error("internal: natural weights");
        nslot_[id].row = i;
        nslot_[id].col = j;
    }
    auto raw_n = [&](int a, int b) {   // [E_a, E_b] = raw * E_{a+b}
        if (nslot_[a].col == nslot_[b].row) return 1;
        if (nslot_[b].col == nslot_[a].row) return -1;
        throw domain_error("internal: natural bracket");
    };
    auto var = [&](int id) { return (id >= np ? id : rs.neg_id(id)) - np; };

    /* joint sign solve: the bracket must reproduce the chosen structure
     * constants and the twist must act with the canonical signs, over
     * candidate hermitian forms D * antidiagonal */
    LinSys base;
    base.nvars = np;
    for (int a = 0; a < nr; ++a)
        for (int b = 0; b < nr; ++b) {
            int s = rs.sum_id(a, b);
            if (s < 0) continue;
            uint32_t mask = (1u << var(a)) ^ (1u << var(b)) ^ (1u << var(s));
            base.add(mask, raw_n(a, b) != cb_.N(a, b) ? 1 : 0);
        }
    std::vector<uint8_t> sol;
    for (uint32_t dmask = 0; dmask < (1u << m); ++dmask) {
        auto dsign = [&](int r) { return dmask >> r & 1 ? -1 : 1; };
        /* the twist must square to the identity: D J D J scalar */
        bool ok = true;
        int d0 = dsign(0) * dsign(m - 1);
        for (int r = 0; r < m; ++r)
            if (dsign(r) * dsign(m - 1 - r) != d0) ok = false;
        if (!ok) continue;
        LinSys sys = base;
        for (int a = 0; a < nr && ok; ++a) {
            int i = nslot_[a].row, j = nslot_[a].col;
            int ra = aut.apply(a);
            if (nslot_[ra].row != m - 1 - j || nslot_[ra].col != m - 1 - i)
                throw domain_error("internal: natural twist support");
            int c = -dsign(m - 1 - j) * dsign(m - 1 - i);
            uint32_t mask = (1u << var(a)) ^ (1u << var(ra));
            sys.add(mask, c != cb_.eps_sign(a) ? 1 : 0);
        }
        if (!ok || !sys.solve(sol)) continue;
        for (int id = 0; id < nr; ++id) nslot_[id].sign = sol[var(id)] ? -1 : 1;
        A_ = Mat(m);
        for (int r = 0; r < m; ++r) A_.at(r, m - 1 - r) = R_->of_int(dsign(r));
        Ai_ = transpose(A_);
        return;
    }
    throw domain_error("internal: no compatible hermitian form");
}

/* ------------------------------------------------------------------ */
/* elements                                                           */
/* ------------------------------------------------------------------ */

GrpElt Rep::x_root(int root_id, Elt t) const {
    const Ring& R = *R_;
    auto fill = [&](Elt tt) {
        Mat M = ident();
        if (kind_ == Kind::Natural) {
            const NatSlot& s = nslot_[root_id];
            M.at(s.row, s.col) = R.mul(R.of_int(s.sign), tt);
            return M;
        }
        const RootSystem& rs = cb_.rs();
        int np = rs.num_pos(), na = rs.neg_id(root_id);
        for (int b = 0; b < rs.num_roots(); ++b) {
            if (b == na) continue;
            int s = rs.sum_id(root_id, b);
            if (s < 0) continue;
            M.at(adj_slot(s), adj_slot(b)) = R.mul(R.of_int(cb_.N(root_id, b)), tt);
        }
        for (int i = 0; i < rs.rank(); ++i)
            M.at(np + i, adj_slot(na)) = R.mul(R.of_int(rs.root(root_id)[i]), tt);
        M.at(adj_slot(root_id), adj_slot(na)) = R.neg(R.mul(tt, tt));
        for (int i = 0; i < rs.rank(); ++i)
            M.at(adj_slot(root_id), np + i) =
                R.mul(R.of_int(-rs.pairing(root_id, rs.simple_id(i))), tt);
        return M;
    };
    return {fill(t), fill(R.neg(t))};
}

GrpElt Rep::h_char(const std::vector<Elt>& chi) const {
    const Ring& R = *R_;
    const RootSystem& rs = cb_.rs();
    if ((int)chi.size() != rs.rank())
        throw domain_error("character needs one value per lattice generator");
    for (Elt v : chi)
        if (!R.is_unit(v)) throw domain_error("character values must be units");
    Mat M = ident(), Mi = ident();
    if (kind_ == Kind::Natural) {
        Elt prev = R.one();
        for (int t = 0; t < dim_; ++t) {
            Elt d = t < rs.rank() ? R.mul(chi[t], R.inv(prev)) : R.inv(prev);
            M.at(t, t) = d;
            Mi.at(t, t) = R.inv(d);
            if (t < rs.rank()) prev = chi[t];
        }
        return {M, Mi};
    }
    for (int id = 0; id < rs.num_roots(); ++id) {
        Elt v = R.one();
        for (int i = 0; i < rs.rank(); ++i) {
            int c = rs.root(id)[i];
            for (int k = 0; k < (c > 0 ? c : -c); ++k)
                v = R.mul(v, c > 0 ? chi[i] : R.inv(chi[i]));
        }
        M.at(adj_slot(id), adj_slot(id)) = v;
        Mi.at(adj_slot(id), adj_slot(id)) = R.inv(v);
    }
    return {M, Mi};
}

bool Rep::char_twist_fixed(const std::vector<Elt>& chi) const {
    return twist_fixed(h_char(chi));
}

GrpElt Rep::twist(const GrpElt& g) const {
    if (kind_ == Kind::Adjoint)
        return {mul(P_, mul(theta_entries(g.m), Pi_)),
                mul(P_, mul(theta_entries(g.mi), Pi_))};
    return {mul(A_, mul(transpose(theta_entries(g.mi)), Ai_)),
            mul(A_, mul(transpose(theta_entries(g.m)), Ai_))};
}

bool Rep::twist_fixed(const GrpElt& g) const { return twist(g).m == g.m; }

std::vector<Elt> Rep::weight_values(const Mat& h) const {
    std::vector<Elt> out(dim_);
    for (int i = 0; i < dim_; ++i) out[i] = h.at(i, i);
    return out;
}

std::vector<Elt> Rep::root_values(const Mat& h) const {
    const RootSystem& rs = cb_.rs();
    std::vector<Elt> out(rs.num_roots());
    for (int id = 0; id < rs.num_roots(); ++id)
        out[id] = kind_ == Kind::Natural
                      ? R_->mul(h.at(nslot_[id].row, nslot_[id].row),
                                R_->inv(h.at(nslot_[id].col, nslot_[id].col)))
                      : h.at(adj_slot(id), adj_slot(id));
    return out;
}

Rep::NatSlot Rep::nat_slot(int root_id) const {
    if (kind_ != Kind::Natural)
        throw domain_error("nat_slot requires the natural representation");
    return nslot_[root_id];
}

}  // namespace tcg
