/***********************************************************************
 * rootsystem.hpp
 *
 * PURPOSE: simply-laced root systems A_n (n>=2), D_n (n>=4), E_6 with
 *          Bourbaki numbering, integer coefficient vectors over the
 *          simple roots, pairing / reflection helpers, and the graph
 *          automorphisms of order 2 and 3 used for twisting.
 *
 *          Root ids are globally sorted by (height, coefficient vector),
 *          so all negative roots precede all positive roots and the
 *          ordering is deterministic across runs.
 ***********************************************************************/
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tcg/ring.hpp"   // domain_error

namespace tcg {

constexpr int kMaxRank = 7;

class RootSystem {
public:
    using Vec = std::array<int, kMaxRank>;

    RootSystem(char type, int rank);
    static RootSystem make(const std::string& name);   // "A3", "D4", "E6"

    char type() const { return type_; }
    int rank() const { return rank_; }
    std::string name() const { return std::string(1, type_) + std::to_string(rank_); }

    int num_roots() const { return (int)roots_.size(); }
    int num_pos() const { return num_roots() / 2; }

    const Vec& root(int id) const { return roots_[id]; }
    int id_of(const Vec& v) const;                 // -1 when not a root
    int height(int id) const { return heights_[id]; }
    bool positive(int id) const { return heights_[id] > 0; }
    int neg_id(int id) const { return neg_[id]; }
    int simple_id(int i) const { return simple_ids_[i]; }

    int cartan(int i, int j) const { return cartan_[i][j]; }   // simples
    /* inner product in the normalization where every root has length^2 = 2;
     * for roots a,b this equals the Cartan pairing <a,b>. */
    long inner(const Vec& a, const Vec& b) const;
    int pairing(int a, int b) const;               // <a,b> for root ids
    int reflect(int a, int b) const;               // id of s_b(a)
    int sum_id(int a, int b) const;                // id of a+b, or -1

    std::string root_str(int id) const;            // e.g. "a1+a2+a3"

private:
    char type_;
    int rank_;
    int cartan_[kMaxRank][kMaxRank] = {};
    std::vector<Vec> roots_;
    std::vector<int> heights_;
    std::vector<int> neg_;
    std::vector<int> simple_ids_;
    std::map<Vec, int> index_;
};

/* a diagram automorphism, validated to preserve the root system */
struct GraphAut {
    int order = 1;
    std::array<int, kMaxRank> simple_perm{};   // simple index -> simple index
    std::vector<int> root_perm;                // root id -> root id

    int apply(int id) const { return root_perm[id]; }
    int apply_pow(int id, int k) const {
        k %= order;
        if (k < 0) k += order;
        for (int i = 0; i < k; ++i) id = root_perm[id];
        return id;
    }
};

/* builds the standard automorphism of the given order; throws when the
 * (system, order) combination is not admissible for twisting. */
GraphAut make_aut(const RootSystem& rs, int order);

/* true when (type, rank, order) supports a twisted form: A_n (n>=2) /
 * D_n (n>=4) / E_6 with order 2, and D_4 with order 3. */
bool twist_admissible(char type, int rank, int order);

}  // namespace tcg
