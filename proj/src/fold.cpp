/***********************************************************************
 * fold.cpp
 *
 * PURPOSE: projection classes of a diagram automorphism, the folded
 *          system data, and the classification of class pairs.
 ***********************************************************************/
#include "tcg/fold.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tcg {

const char* class_type_name(ClassType t) {
    switch (t) {
        case ClassType::A1: return "A1";
        case ClassType::A1x2: return "A1x2";
        case ClassType::A1x3: return "A1x3";
        case ClassType::A2: return "A2";
    }
    return "?";
}

ParamDomain param_domain(ClassType t) {
    switch (t) {
        case ClassType::A1: return ParamDomain::Fixed;
        case ClassType::A2: return ParamDomain::Hermitian;
        default: return ParamDomain::Ring;
    }
}

const char* pair_kind_name(PairKind k) {
    switch (k) {
        case PairKind::Trivial: return "trivial";
        case PairKind::HalfSumI: return "half-sum-fixed";
        case PairKind::HalfSumII: return "half-sum-hermitian";
        case PairKind::SumI: return "sum-fixed";
        case PairKind::SumII: return "sum-swap";
        case PairKind::SumDiffI: return "sum-diff-fixed";
        case PairKind::SumDiffII: return "sum-diff-hermitian";
        case PairKind::DoubleI: return "double-fixed";
        case PairKind::DoubleII: return "double-hermitian";
        case PairKind::Quadruple: return "quadruple";
        case PairKind::ShortPair120: return "short-120";
        case PairKind::ShortPair60: return "short-60";
    }
    return "?";
}

Folding::Folding(const RootSystem& rs, int aut_order)
    : rs_(rs), aut_(make_aut(rs_, aut_order)) {
    int nr = rs_.num_roots();
    class_of_.assign(nr, -1);

    /* primitive projection direction per root: sum over the rho-orbit,
     * divided by the gcd, sign kept (positive roots stay positive) */
    auto prim_dir = [&](int id) {
        RootSystem::Vec p{};
        for (int k = 0; k < aut_.order; ++k) {
            const auto& r = rs_.root(aut_.apply_pow(id, k));
            for (int i = 0; i < rs_.rank(); ++i) p[i] += r[i];
        }
        int g = 0;
        for (int i = 0; i < rs_.rank(); ++i) g = std::gcd(g, std::abs(p[i]));
        for (int i = 0; i < rs_.rank(); ++i) p[i] /= g;
        return p;
    };

    std::map<RootSystem::Vec, std::vector<int>> fibers;
    for (int id = 0; id < nr; ++id) fibers[prim_dir(id)].push_back(id);

    /* assemble classes */
    std::vector<FoldClass> cls;
    for (auto& [dir, members] : fibers) {
        FoldClass fc;
        /* leader: least non-fixed member if any, else the fixed root */
        int leader = -1;
        for (int id : members)
            if (aut_.apply(id) != id) { leader = id; break; }
        bool has_fixed = false;
        for (int id : members)
            if (aut_.apply(id) == id) has_fixed = true;
        if (leader < 0) leader = members[0];

        fc.leader = leader;
        if (members.size() == 1) {
            fc.type = ClassType::A1;
            fc.roots = {leader};
        } else if (members.size() == 2) {
            fc.type = ClassType::A1x2;
            fc.roots = {leader, aut_.apply(leader)};
        } else if (has_fixed) {
            fc.type = ClassType::A2;
            int bar = aut_.apply(leader);
            int fixed = -1;
            for (int id : members)
                if (aut_.apply(id) == id) fixed = id;
            fc.roots = {leader, bar, fixed};
            if (rs_.sum_id(leader, bar) != fixed)
                throw domain_error("internal: hermitian class is not {a, abar, a+abar}");
        } else {
            fc.type = ClassType::A1x3;
            fc.roots = {leader, aut_.apply(leader), aut_.apply(aut_.apply(leader))};
        }
        /* projection * 12: average of the leader over the automorphism */
        RootSystem::Vec p{};
        for (int k = 0; k < aut_.order; ++k) {
            const auto& r = rs_.root(aut_.apply_pow(fc.leader, k));
            for (int i = 0; i < rs_.rank(); ++i) p[i] += r[i];
        }
        for (int i = 0; i < rs_.rank(); ++i) {
            if ((long)p[i] * 12 % aut_.order != 0)
                throw domain_error("internal: non-integral projection");
            fc.proj12[i] = (int)((long)p[i] * 12 / aut_.order);
        }
        fc.fheight = rs_.height(fc.leader);
        fc.positive = fc.fheight > 0;
        cls.push_back(std::move(fc));
    }

    /* order classes by (folded height, lex projection) */
    std::sort(cls.begin(), cls.end(), [](const FoldClass& a, const FoldClass& b) {
        if (a.fheight != b.fheight) return a.fheight < b.fheight;
        return a.proj12 < b.proj12;
    });
    classes_ = std::move(cls);
    for (int c = 0; c < (int)classes_.size(); ++c) {
        classes_[c].id = c;
        by_proj_[classes_[c].proj12] = c;
        for (int id : classes_[c].roots) class_of_[id] = c;
    }
    for (auto& fc : classes_) {
        RootSystem::Vec n{};
        for (int i = 0; i < rs_.rank(); ++i) n[i] = -fc.proj12[i];
        fc.neg_class = by_proj_.at(n);
    }

    /* long/short: compare squared projection lengths (at most two) */
    std::set<long> lens;
    for (const auto& fc : classes_) lens.insert(rs_.inner(fc.proj12, fc.proj12));
    long maxlen = *lens.rbegin();
    for (auto& fc : classes_) {
        fc.is_long = rs_.inner(fc.proj12, fc.proj12) == maxlen;
    }

    /* folded name */
    folded_rank_ = 0;
    std::set<int> simple_classes;
    for (int i = 0; i < rs_.rank(); ++i)
        simple_classes.insert(class_of_[rs_.simple_id(i)]);
    folded_rank_ = (int)simple_classes.size();
    char t = rs_.type();
    int n = rs_.rank();
    if (t == 'A' && n % 2 == 1)
        folded_name_ = "C" + std::to_string(folded_rank_);
    else if (t == 'A')
        folded_name_ = "BC" + std::to_string(folded_rank_);
    else if (t == 'D' && aut_.order == 2)
        folded_name_ = "B" + std::to_string(folded_rank_);
    else if (t == 'D')
        folded_name_ = "G2";
    else
        folded_name_ = "F4";
}

std::string Folding::class_name(int c) const {
    const FoldClass& fc = classes_[c];
    if (fc.positive) return "c" + std::to_string(c - num_pos() + 1);
    return "-c" + std::to_string(classes_[fc.neg_class].id - num_pos() + 1);
}

int Folding::class_by_name(const std::string& name) const {
    bool negated = !name.empty() && name[0] == '-';
    std::string base = negated ? name.substr(1) : name;
    if (base.size() < 2 || base[0] != 'c') return -1;
    int k;
    try {
        k = std::stoi(base.substr(1));
    } catch (...) {
        return -1;
    }
    if (k < 1 || k > num_pos()) return -1;
    int c = num_pos() + k - 1;
    return negated ? classes_[c].neg_class : c;
}

int Folding::folded_pairing(int c1, int c2) const {
    long num = 2 * rs_.inner(classes_[c1].proj12, classes_[c2].proj12);
    long den = rs_.inner(classes_[c2].proj12, classes_[c2].proj12);
    if (num % den != 0) throw domain_error("internal: non-integral folded pairing");
    return (int)(num / den);
}

int Folding::folded_reflect(int c1, int c2) const {
    int p = folded_pairing(c1, c2);
    RootSystem::Vec v = classes_[c1].proj12;
    for (int i = 0; i < rs_.rank(); ++i) v[i] -= p * classes_[c2].proj12[i];
    auto it = by_proj_.find(v);
    if (it == by_proj_.end())
        throw domain_error("internal: reflected class missing");
    return it->second;
}

int Folding::folded_combo(int c1, int c2, int n1, int n2, int den) const {
    RootSystem::Vec v{};
    for (int i = 0; i < rs_.rank(); ++i) {
        long x = (long)n1 * classes_[c1].proj12[i] + (long)n2 * classes_[c2].proj12[i];
        if (x % den != 0) return -1;
        v[i] = (int)(x / den);
    }
    auto it = by_proj_.find(v);
    return it == by_proj_.end() ? -1 : it->second;
}

int Folding::neg_twist(int c) const {
    const FoldClass& fc = classes_[c];
    int target = classes_[fc.neg_class].leader;
    for (int k = 0; k < aut_.order; ++k)
        if (rs_.neg_id(aut_.apply_pow(fc.leader, k)) == target) return k;
    throw domain_error("internal: negation twist not found");
}

PairCase Folding::classify_pair(int c1, int c2) const {
    if (c1 == c2 || c1 == neg(c2))
        throw domain_error("pair classification needs distinct, non-opposite classes");
    PairCase out;
    auto hit = [&](int n1, int n2) { return folded_combo(c1, c2, n1, n2, 1) >= 0; };
    bool h11 = hit(1, 1), h21 = hit(2, 1), h12 = hit(1, 2);
    bool h31 = hit(3, 1), h13 = hit(1, 3), h23 = hit(2, 3), h32 = hit(3, 2);
    bool diff = folded_combo(c1, c2, 1, -1, 1) >= 0;
    ClassType t1 = classes_[c1].type, t2 = classes_[c2].type;

    if (h11 && h12 && h13 && h23) {
        if (t1 != ClassType::A1 || t2 != ClassType::A1x3)
            throw domain_error("internal: unexpected types in a 30-degree pair");
        out.kind = PairKind::Quadruple;
        return out;
    }
    if (h11 && h21 && h31 && h32) {
        out.kind = PairKind::Quadruple;
        out.flipped = true;
        return out;
    }
    if (h11 && h21 && h12) {
        if (t1 != ClassType::A1x3 || t2 != ClassType::A1x3 || !diff)
            throw domain_error("internal: unexpected 120-degree short pair");
        out.kind = PairKind::ShortPair120;
        return out;
    }
    if (h11 && h12) {
        if (t1 == ClassType::A1 && t2 == ClassType::A1x2)
            out.kind = PairKind::DoubleI;
        else if (t1 == ClassType::A1x2 && t2 == ClassType::A2)
            out.kind = PairKind::DoubleII;
        else
            throw domain_error("internal: unexpected types in a 135-degree pair");
        return out;
    }
    if (h11 && h21) {
        if (t2 == ClassType::A1 && t1 == ClassType::A1x2)
            out.kind = PairKind::DoubleI;
        else if (t2 == ClassType::A1x2 && t1 == ClassType::A2)
            out.kind = PairKind::DoubleII;
        else
            throw domain_error("internal: unexpected types in a 135-degree pair");
        out.flipped = true;
        return out;
    }
    if (h11) {
        if (diff) {
            if (t1 == ClassType::A1x2 && t2 == ClassType::A1x2)
                out.kind = PairKind::SumDiffI;
            else if (t1 == ClassType::A2 && t2 == ClassType::A2)
                out.kind = PairKind::SumDiffII;
            else if (t1 == ClassType::A1x3 && t2 == ClassType::A1x3)
                out.kind = PairKind::ShortPair60;
            else
                throw domain_error("internal: unexpected sum+difference pair");
        } else {
            if (t1 == ClassType::A1 && t2 == ClassType::A1)
                out.kind = PairKind::SumI;
            else if (t1 == ClassType::A1x2 && t2 == ClassType::A1x2)
                out.kind = PairKind::SumII;
            else
                throw domain_error("internal: unexpected sum-only pair");
        }
        return out;
    }
    /* no integral combination: check the half sum */
    int hs = folded_combo(c1, c2, 1, 1, 2);
    if (hs >= 0 && classes_[hs].type == ClassType::A1x2 &&
        t1 == ClassType::A1 && t2 == ClassType::A1) {
        out.kind = PairKind::HalfSumI;
        out.half_sum_class = hs;
        return out;
    }
    if (hs >= 0 && classes_[hs].type == ClassType::A2 &&
        t1 == ClassType::A1x2 && t2 == ClassType::A1x2) {
        out.kind = PairKind::HalfSumII;
        out.half_sum_class = hs;
        return out;
    }
    out.kind = PairKind::Trivial;
    return out;
}

}  // namespace tcg
