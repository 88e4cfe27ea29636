#pragma once

#include "ibl/algebra.hpp"
#include "ibl/dibl.hpp"
#include "ibl/green.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace ibl {

/* Half-edge ribbon graph: rotations of the internal vertices and an involution whose fixed points are the legs. */
class RibbonGraph
{
public:
    RibbonGraph() = default;
    RibbonGraph(std::vector<std::vector<int>> rotations, std::vector<int> involution);

    int half_edges() const { return int(inv_.size()); }
    int vertices() const { return int(rot_.size()); }
    int edge_count() const { return int(edges_.size()); }
    int boundaries() const { return int(boundary_.size()); }
    int legs() const { return legs_; }
    int genus() const { return genus_; }
    bool connected() const { return connected_; }

    const std::vector<std::vector<int>>& rotations() const { return rot_; }
    int involution(int h) const { return inv_[h]; }
    bool is_leg(int h) const { return inv_[h] == h; }
    int vertex_of(int h) const { return vert_[h]; }
    int next(int h) const { return next_[h]; }
    /* Internal edges (h, inv h) with h < inv h. */
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    /* Boundary cycles of next o inv; all half-edges, and the legs alone in cyclic order. */
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    const std::vector<std::vector<int>>& boundary_legs() const { return boundary_; }
    int face_of(int h) const { return face_[h]; }
    std::vector<int> valencies() const;

private:
    std::vector<std::vector<int>> rot_;
    std::vector<int> inv_, vert_, next_, face_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> faces_, boundary_;
    int legs_ = 0, genus_ = 0;
    bool connected_ = false;
};

/* Rooted breadth-first code minimized over all roots; equal codes iff isomorphic. */
std::vector<int> canonical_code(const RibbonGraph& g);
int automorphism_order(const RibbonGraph& g);

struct GraphClass
{
    RibbonGraph graph;
    int automorphisms = 1;
};

/* One representative per isomorphism class of connected graphs with k internal vertices, l boundary components,
   genus g and the given number of legs. Reduced: every boundary component carries a leg. */
std::vector<GraphClass> enumerate_graphs(int k, int l, int g, int legs,
                                         const std::function<bool(int)>& valency_filter = {}, bool reduced = true);
std::vector<GraphClass> enumerate_graphs_with_valencies(std::vector<int> valencies, int l, int g, bool reduced = true);
constexpr int kMaxHalfEdges = 24;
/* Candidate vertex layouts and matchings examined per enumeration. */
constexpr long kMaxCandidates = 2000000;

struct Labeling
{
    std::vector<int> vertex_order;          // L1
    std::vector<int> boundary_order;        // L1
    std::vector<std::pair<int, int>> edges;  // L2: ordered, oriented (source, target)
    std::vector<int> vertex_marks;          // L3: first half-edge at each vertex
    std::vector<int> boundary_marks;        // L3: first leg on each boundary component
};

/* Default labeling for the given L1: stored edges and marks. */
Labeling base_labeling(const RibbonGraph& g, std::vector<int> vertex_order, std::vector<int> boundary_order);
/* +1 if L2 is compatible with L1 for the orientation complex C2 -> C1 -> C0, else -1. */
int orientation_sign(const RibbonGraph& g, const Labeling& L);
/* Flips the first edge of the default L2 when needed. */
Labeling compatible_L2(const RibbonGraph& g, std::vector<int> vertex_order, std::vector<int> boundary_order);
/* images[i] = vertex slot of source slot i; sources are P slots edge by edge, then legs boundary by boundary. */
Permutation sigma_L(const RibbonGraph& g, const Labeling& L);

using Propagator = KernelTensor;

/* Letters of the boundary words as vectors over the basis; identity when empty. */
using LetterMap = std::vector<SparseVec>;

/* (psi_1 (x) ... (x) psi_k)(sigma_L(P^e (x) w)) for one full labeling. */
Scalar labeled_pairing(const RibbonGraph& g, const Labeling& L, const WordSpace& ws, const Propagator& P,
                       const std::vector<const Cochain*>& psis, const Tuple& words, const LetterMap& letters = {});
/* Sum over L1 and the boundary marks with a compatible L2. */
Scalar graph_pairing(const RibbonGraph& g, const WordSpace& ws, const Propagator& P,
                     const std::vector<const Cochain*>& psis, const Tuple& words, const LetterMap& letters = {});

/* f_klg(psi_1 ... psi_k)(w_1 ... w_l) = 1/l! sum over reduced classes of 1/|Aut| times the graph pairing. */
Scalar f_klg(const WordSpace& ws, const Propagator& P, const std::vector<const Cochain*>& psis, int g,
             const Tuple& words, const LetterMap& letters = {});
/* Values on all ordered tuples of canonical words of total weight <= weight_bound. */
std::map<Tuple, Scalar> f_klg_table(const WordSpace& ws, const Propagator& P, const std::vector<const Cochain*>& psis,
                                    int l, int g, int weight_bound);

/* H with the restricted pairing, m1 = 0 and m2 = pi_H m2; basis vectors are the columns of inclusion. */
struct HarmonicModel
{
    CyclicStructure structure;
    Matrix inclusion;
};
HarmonicModel harmonic_model(const CyclicStructure& s, const HarmonicSplitting& sp);

struct Pushforward
{
    HarmonicModel harmonic;
    MaurerCartanFamily pmc;
};
/* pmc_lg(w) = 1/l! sum over trivalent reduced classes of (-1)^{k(n-2)}/|Aut| <(m2^+)^k, w>^K for l <= max_boundaries. */
Pushforward pushforward_mc(const CyclicStructure& s, const Propagator& K, int weight_bound, int genus_bound,
                           int max_boundaries = 2);
Pushforward pushforward_mc(const CyclicStructure& s, const Propagator& K, const HarmonicSplitting& sp,
                           int weight_bound, int genus_bound, int max_boundaries = 2);

}  // namespace ibl
