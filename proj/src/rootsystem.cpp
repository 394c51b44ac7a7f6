/***********************************************************************
 * rootsystem.cpp
 *
 * PURPOSE: construction of the simply-laced root systems by reflection
 *          closure of the simple roots, plus the diagram automorphisms.
 ***********************************************************************/
#include "tcg/rootsystem.hpp"

#include <algorithm>
#include <set>

namespace tcg {

namespace {

/* adjacency lists per Bourbaki numbering (1-based nodes) */
std::vector<std::pair<int, int>> diagram_edges(char type, int rank) {
    std::vector<std::pair<int, int>> e;
    if (type == 'A') {
        for (int i = 1; i < rank; ++i) e.push_back({i, i + 1});
    } else if (type == 'D') {
        for (int i = 1; i <= rank - 2; ++i) e.push_back({i, i + 1});
        e.push_back({rank - 2, rank});
    } else {  // E6: chain 1-3-4-5-6, node 2 on 4
        e = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
    }
    return e;
}

}  // namespace

RootSystem::RootSystem(char type, int rank) : type_(type), rank_(rank) {
    bool ok = (type == 'A' && rank >= 2 && rank <= 7) ||
              (type == 'D' && rank >= 4 && rank <= 6) ||
              (type == 'E' && rank == 6);
    if (!ok)
        throw domain_error("unsupported root system " + std::string(1, type) +
                           std::to_string(rank));

    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) cartan_[i][j] = (i == j) ? 2 : 0;
    for (auto [a, b] : diagram_edges(type, rank)) {
        cartan_[a - 1][b - 1] = -1;
        cartan_[b - 1][a - 1] = -1;
    }

    /* reflection closure of the simple roots */
    std::set<Vec> seen;
    std::vector<Vec> frontier;
    for (int i = 0; i < rank; ++i) {
        Vec v{};
        v[i] = 1;
        seen.insert(v);
        frontier.push_back(v);
    }
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const Vec& v : frontier) {
            for (int s = 0; s < rank; ++s) {
                long c = 0;
                for (int j = 0; j < rank; ++j) c += (long)v[j] * cartan_[j][s];
                Vec w = v;
                w[s] -= (int)c;
                if (seen.insert(w).second) next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    for (const Vec& v : seen) {
        roots_.push_back(v);
        Vec n{};
        for (int i = 0; i < rank; ++i) n[i] = -v[i];
        if (!seen.count(n))
            throw domain_error("internal: root set not symmetric");
    }

    /* sort by (height, lex) */
    auto ht = [&](const Vec& v) {
        int h = 0;
        for (int i = 0; i < rank; ++i) h += v[i];
        return h;
    };
    std::sort(roots_.begin(), roots_.end(), [&](const Vec& a, const Vec& b) {
        int ha = ht(a), hb = ht(b);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    for (int id = 0; id < (int)roots_.size(); ++id) {
        index_[roots_[id]] = id;
        heights_.push_back(ht(roots_[id]));
    }
    neg_.resize(roots_.size());
    for (int id = 0; id < (int)roots_.size(); ++id) {
        Vec n{};
        for (int i = 0; i < rank; ++i) n[i] = -roots_[id][i];
        neg_[id] = index_.at(n);
    }
    simple_ids_.resize(rank);
    for (int i = 0; i < rank; ++i) {
        Vec v{};
        v[i] = 1;
        simple_ids_[i] = index_.at(v);
    }
}

RootSystem RootSystem::make(const std::string& name) {
    if (name.size() < 2)
        throw domain_error("bad root system name '" + name + "'");
    char t = (char)toupper((unsigned char)name[0]);
    int r;
    try {
        r = std::stoi(name.substr(1));
    } catch (...) {
        throw domain_error("bad root system name '" + name + "'");
    }
    return RootSystem(t, r);
}

int RootSystem::id_of(const Vec& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

long RootSystem::inner(const Vec& a, const Vec& b) const {
    long s = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            s += (long)a[i] * cartan_[i][j] * b[j];
    return s;
}

int RootSystem::pairing(int a, int b) const {
    return (int)inner(roots_[a], roots_[b]);   // all roots have length^2 = 2
}

int RootSystem::reflect(int a, int b) const {
    int c = pairing(a, b);
    Vec v = roots_[a];
    const Vec& w = roots_[b];
    for (int i = 0; i < rank_; ++i) v[i] -= c * w[i];
    return index_.at(v);
}

int RootSystem::sum_id(int a, int b) const {
    Vec v = roots_[a];
    const Vec& w = roots_[b];
    for (int i = 0; i < rank_; ++i) v[i] += w[i];
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

std::string RootSystem::root_str(int id) const {
    const Vec& v = roots_[id];
    std::string out;
    for (int i = 0; i < rank_; ++i) {
        if (v[i] == 0) continue;
        if (!out.empty() && v[i] > 0) out += "+";
        if (v[i] == -1)
            out += "-";
        else if (v[i] != 1)
            out += std::to_string(v[i]) + "*";
        out += "a" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

/* ------------------------------------------------------------------ */
/* diagram automorphisms                                              */
/* ------------------------------------------------------------------ */

bool twist_admissible(char type, int rank, int order) {
    if (order == 2)
        return (type == 'A' && rank >= 2) || (type == 'D' && rank >= 4) ||
               (type == 'E' && rank == 6);
    if (order == 3) return type == 'D' && rank == 4;
    return false;
}

GraphAut make_aut(const RootSystem& rs, int order) {
    if (!twist_admissible(rs.type(), rs.rank(), order))
        throw domain_error("no order-" + std::to_string(order) +
                           " twist for " + rs.name());
    GraphAut aut;
    aut.order = order;
    int n = rs.rank();
    for (int i = 0; i < kMaxRank; ++i) aut.simple_perm[i] = i;
    if (rs.type() == 'A') {
        for (int i = 0; i < n; ++i) aut.simple_perm[i] = n - 1 - i;
    } else if (rs.type() == 'D' && order == 2) {
        aut.simple_perm[n - 2] = n - 1;
        aut.simple_perm[n - 1] = n - 2;
    } else if (rs.type() == 'D' && order == 3) {
        /* rotate the three outer nodes 1 -> 3 -> 4 -> 1 around node 2 */
        aut.simple_perm[0] = 2;
        aut.simple_perm[2] = 3;
        aut.simple_perm[3] = 0;
    } else {  // E6
        aut.simple_perm[0] = 5;
        aut.simple_perm[5] = 0;
        aut.simple_perm[2] = 4;
        aut.simple_perm[4] = 2;
    }
    /* permutation must preserve the Cartan matrix */
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rs.cartan(aut.simple_perm[i], aut.simple_perm[j]) != rs.cartan(i, j))
                throw domain_error("internal: diagram permutation is not an automorphism");
    /* extend to all roots by permuting coefficients */
    aut.root_perm.resize(rs.num_roots());
    for (int id = 0; id < rs.num_roots(); ++id) {
        RootSystem::Vec v{};
        const auto& r = rs.root(id);
        for (int i = 0; i < n; ++i) v[aut.simple_perm[i]] = r[i];
        int img = rs.id_of(v);
        if (img < 0) throw domain_error("internal: automorphism left the root set");
        aut.root_perm[id] = img;
    }
    return aut;
}

}  // namespace tcg
