#pragma once

#include "ibl/models.hpp"
#include "ibl/ribbon.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace ibl::testing {

inline Cochain random_homogeneous(const WordSpace& ws, int W, int degree, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-3, 3);
    Cochain c;
    c.weight_bound = kInfiniteWeight;
    for (const auto& w : ws.canonical_words_upto(W))
        if (ws.degree(w) == degree) {
            int x = d(rng);
            if (x)
                c.values[w] = x;
        }
    return c;
}

/* Nonzero cochain on the canonical words of one weight and of the degree of a randomly chosen such word. */
inline Cochain random_weight_cochain(const WordSpace& ws, int weight, std::mt19937_64& rng, int* degree = nullptr)
{
    Cochain c;
    c.weight_bound = kInfiniteWeight;
    auto words = ws.canonical_words(weight);
    if (words.empty())
        return c;
    int d = ws.degree(words[rng() % words.size()]);
    std::uniform_int_distribution<int> x(1, 3);
    for (const auto& w : words)
        if (ws.degree(w) == d)
            c.values[w] = (rng() % 2 ? 1 : -1) * x(rng);
    if (degree)
        *degree = d;
    return c;
}

/* Degrees |e_a| + |e_b| over all pairs of basis letters. */
inline std::set<int> pair_degrees(const CyclicStructure& s)
{
    std::set<int> out;
    for (int a = 0; a < s.dim(); ++a)
        for (int b = 0; b < s.dim(); ++b)
            out.insert(s.deg(a) + s.deg(b));
    return out;
}

/* tau(P) = (-1)^{|P|} P with random entries */
inline Propagator random_propagator(const CyclicStructure& s, int degree, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-2, 2);
    Propagator P{Matrix(s.dim(), s.dim()), degree};
    for (int a = 0; a < s.dim(); ++a)
        for (int b = a; b < s.dim(); ++b) {
            if (s.deg(a) + s.deg(b) != degree)
                continue;
            Sign sg = Sign::parity(degree + s.deg(a) * s.deg(b));
            if (a == b && sg.negative())
                continue;
            Scalar x = d(rng);
            P.coeffs(a, b) = x;
            P.coeffs(b, a) = sg * x;
        }
    return P;
}

/* Gamma_{k1,k2}: vertex 0 = (edge, k1 - 1 legs), vertex 1 = (edge, k2 - 1 legs) */
inline RibbonGraph gamma_lower(int k1, int k2)
{
    std::vector<std::vector<int>> rot(2);
    std::vector<int> inv(k1 + k2);
    std::iota(inv.begin(), inv.end(), 0);
    for (int i = 0; i < k1; ++i)
        rot[0].push_back(i);
    for (int i = 0; i < k2; ++i)
        rot[1].push_back(k1 + i);
    inv[0] = k1;
    inv[k1] = 0;
    return RibbonGraph(rot, inv);
}

/* Gamma^{s1,s2}: one vertex (h, s1 legs, h', s2 legs) with a loop h - h' */
inline RibbonGraph gamma_upper(int s1, int s2)
{
    int H = s1 + s2 + 2;
    std::vector<int> rot(H), inv(H);
    std::iota(rot.begin(), rot.end(), 0);
    std::iota(inv.begin(), inv.end(), 0);
    inv[0] = s1 + 1;
    inv[s1 + 1] = 0;
    return RibbonGraph({rot}, inv);
}

inline RibbonGraph relabel(const RibbonGraph& g, std::mt19937_64& rng)
{
    std::vector<int> p(g.half_edges());
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    auto rots = g.rotations();
    std::shuffle(rots.begin(), rots.end(), rng);
    for (auto& r : rots) {
        std::rotate(r.begin(), r.begin() + int(rng() % r.size()), r.end());
        for (auto& h : r)
            h = p[h];
    }
    std::vector<int> inv(g.half_edges());
    for (int h = 0; h < g.half_edges(); ++h)
        inv[p[h]] = p[g.involution(h)];
    return RibbonGraph(rots, inv);
}

inline int word_degree(const WordSpace& ws, const Tuple& t)
{
    int d = 0;
    for (const auto& w : t)
        d += ws.degree(w);
    return d;
}

/* All labelings of g with the given L1: edge orders, orientations and vertex marks. */
template <class F>
void for_each_labeling(const RibbonGraph& g, const Labeling& base, std::mt19937_64& rng, F&& f)
{
    int e = g.edge_count();
    std::vector<int> order(e);
    std::iota(order.begin(), order.end(), 0);
    do {
        for (int flips = 0; flips < (1 << e); ++flips) {
            Labeling L = base;
            L.edges.clear();
            for (int t = 0; t < e; ++t) {
                auto ed = g.edges()[order[t]];
                if (flips >> t & 1)
                    std::swap(ed.first, ed.second);
                L.edges.push_back(ed);
            }
            for (int v = 0; v < g.vertices(); ++v) {
                const auto& r = g.rotations()[v];
                L.vertex_marks[v] = r[rng() % r.size()];
            }
            f(L);
        }
    } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace ibl::testing
