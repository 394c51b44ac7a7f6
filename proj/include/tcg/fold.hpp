/***********************************************************************
 * fold.hpp
 *
 * PURPOSE: folding of a simply-laced root system under a diagram
 *          automorphism: projection classes (the orbit-with-projection
 *          fibers), their types, the folded system's combinatorics
 *          (pairing, reflection, combinations), and the taxonomy of
 *          class pairs that drives the twisted commutator formulas.
 *
 *          Class types:
 *            A1   single fixed root                (parameters in R_theta)
 *            A1x2 two orthogonal swapped roots     (parameters in R)
 *            A1x3 three orthogonal rotated roots   (parameters in R)
 *            A2   {a, abar, a+abar}, only for the even unitary family
 *                 (parameters are hermitian pairs)
 *
 *          Class projections are stored as 12 * (average over the orbit)
 *          so that everything stays in exact integer arithmetic.
 ***********************************************************************/
#pragma once

#include "tcg/rootsystem.hpp"

#include <map>
#include <string>
#include <vector>

namespace tcg {

enum class ClassType { A1, A1x2, A1x3, A2 };

const char* class_type_name(ClassType t);

/* parameter domain attached to a class type */
enum class ParamDomain { Fixed, Ring, Hermitian };
ParamDomain param_domain(ClassType t);

struct FoldClass {
    int id = -1;
    ClassType type = ClassType::A1;
    std::vector<int> roots;   // leader, rho(leader)[, rho^2(leader)][, fixed sum]
    int leader = -1;
    RootSystem::Vec proj12{}; // 12 * projection, exact
    int fheight = 0;          // folded height (= ambient height of the leader)
    bool positive = false;
    bool is_long = false;     // in the folded length order
    int neg_class = -1;
};

/* how a pair of distinct, non-opposite classes interacts */
enum class PairKind {
    Trivial,     // all parameter pairs commute, no conditions
    HalfSumI,    // no folded combination, half sum is an A1x2 class (A1 pair)
    HalfSumII,   // no folded combination, half sum is an A2 class (A1x2 pair)
    SumI,        // single sum, A1 + A1 -> A1
    SumII,       // single sum, A1x2 + A1x2 -> A1x2
    SumDiffI,    // sum and difference, A1x2 + A1x2 -> A1
    SumDiffII,   // sum and difference, A2 + A2 -> A1x2
    DoubleI,     // sum and [a]+2[b], A1 + A1x2
    DoubleII,    // sum and [a]+2[b], A1x2 + A2
    Quadruple,   // long-short pair generating the full 30-degree fan
    ShortPair120,// two A1x3 classes at 120 degrees (sum, both doubles, diff)
    ShortPair60  // two A1x3 classes at 60 degrees (long sum, short diff)
};

const char* pair_kind_name(PairKind k);

struct PairCase {
    PairKind kind = PairKind::Trivial;
    bool flipped = false;   // the canonical formula applies to (c2, c1)
    int half_sum_class = -1;
};

class Folding {
public:
    Folding(const RootSystem& rs, int aut_order);

    const RootSystem& rs() const { return rs_; }
    const GraphAut& aut() const { return aut_; }
    int order() const { return aut_.order; }

    int num_classes() const { return (int)classes_.size(); }
    int num_pos() const { return num_classes() / 2; }
    const FoldClass& cls(int c) const { return classes_[c]; }
    int class_of_root(int root_id) const { return class_of_[root_id]; }
    int neg(int c) const { return classes_[c].neg_class; }

    /* positive classes are ids num_pos()..num_classes()-1, in regular
     * (folded height, lex) order; user-facing names c1..ck / -c1..-ck */
    std::string class_name(int c) const;
    int class_by_name(const std::string& name) const;   // -1 when unknown

    std::string folded_name() const { return folded_name_; }
    int folded_rank() const { return folded_rank_; }

    int folded_pairing(int c1, int c2) const;   // <[c1],[c2]>
    int folded_reflect(int c1, int c2) const;   // class of s_[c2]([c1])
    /* class of (n1*[c1] + n2*[c2]) / den, or -1 */
    int folded_combo(int c1, int c2, int n1, int n2, int den) const;
    int folded_sum(int c1, int c2) const { return folded_combo(c1, c2, 1, 1, 1); }

    /* negation convention: x_{-[a]}(t) = x_{[-a]}(theta^k t) for the
     * orthogonal orbit types; k is this shift (0 for A1 / A2) */
    int neg_twist(int c) const;

    PairCase classify_pair(int c1, int c2) const;

private:
    RootSystem rs_;
    GraphAut aut_;
    std::vector<FoldClass> classes_;
    std::vector<int> class_of_;
    std::map<RootSystem::Vec, int> by_proj_;
    std::string folded_name_;
    int folded_rank_ = 0;
};

}  // namespace tcg
