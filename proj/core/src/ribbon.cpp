#include "ibl/ribbon.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ibl {

RibbonGraph::RibbonGraph(std::vector<std::vector<int>> rotations, std::vector<int> involution)
    : rot_(std::move(rotations)), inv_(std::move(involution))
{
    int H = int(inv_.size());
    vert_.assign(H, -1);
    next_.assign(H, -1);
    for (int v = 0; v < int(rot_.size()); ++v) {
        const auto& r = rot_[v];
        if (r.empty())
            throw std::invalid_argument("ribbon graph: empty vertex");
        for (size_t i = 0; i < r.size(); ++i) {
            int h = r[i];
            if (h < 0 || h >= H || vert_[h] != -1)
                throw std::invalid_argument("ribbon graph: rotations do not partition the half-edges");
            vert_[h] = v;
            next_[h] = r[(i + 1) % r.size()];
        }
    }
    for (int h = 0; h < H; ++h) {
        if (vert_[h] == -1 || inv_[h] < 0 || inv_[h] >= H || inv_[inv_[h]] != h)
            throw std::invalid_argument("ribbon graph: invalid involution");
        if (inv_[h] == h)
            ++legs_;
        else if (h < inv_[h])
            edges_.push_back({h, inv_[h]});
    }
    face_.assign(H, -1);
    for (int h0 = 0; h0 < H; ++h0) {
        if (face_[h0] != -1)
            continue;
        std::vector<int> cyc, legs;
        for (int h = h0; face_[h] == -1; h = next_[inv_[h]]) {
            face_[h] = int(faces_.size());
            cyc.push_back(h);
            if (inv_[h] == h)
                legs.push_back(h);
        }
        faces_.push_back(std::move(cyc));
        boundary_.push_back(std::move(legs));
    }
    std::vector<int> parent(rot_.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& [a, b] : edges_)
        parent[find(vert_[a])] = find(vert_[b]);
    int comps = 0;
    for (int v = 0; v < int(rot_.size()); ++v)
        comps += find(v) == v;
    connected_ = comps == 1;
    int chi = vertices() - edge_count() + int(faces_.size());
    genus_ = (2 - chi) / 2;
}

std::vector<int> RibbonGraph::valencies() const
{
    std::vector<int> d;
    for (const auto& r : rot_)
        d.push_back(int(r.size()));
    return d;
}

namespace {

std::vector<int> rooted_code(const RibbonGraph& g, int root)
{
    int H = g.half_edges();
    std::vector<int> label(H, -1), order;
    order.reserve(H);
    label[root] = 0;
    order.push_back(root);
    std::vector<int> code;
    code.reserve(2 * H);
    auto see = [&](int h) {
        if (label[h] == -1) {
            label[h] = int(order.size());
            order.push_back(h);
        }
        return label[h];
    };
    for (size_t i = 0; i < order.size(); ++i) {
        int h = order[i];
        code.push_back(see(g.next(h)));
        code.push_back(g.is_leg(h) ? -1 : see(g.involution(h)));
    }
    return code;
}

}  // namespace

std::vector<int> canonical_code(const RibbonGraph& g)
{
    if (!g.connected())
        throw std::invalid_argument("canonical_code: graph is not connected");
    std::vector<int> best;
    for (int r = 0; r < g.half_edges(); ++r) {
        auto c = rooted_code(g, r);
        if (best.empty() || c < best)
            best = std::move(c);
    }
    return best;
}

int automorphism_order(const RibbonGraph& g)
{
    auto best = canonical_code(g);
    int n = 0;
    for (int r = 0; r < g.half_edges(); ++r)
        n += rooted_code(g, r) == best;
    return n;
}

namespace {

/* Leg patterns around a vertex up to rotation: bit i set marks slot i as a leg. */
std::vector<std::vector<bool>> necklaces(int d, int legs)
{
    std::set<std::vector<bool>> reps;
    std::vector<bool> p(d, false);
    std::fill(p.begin(), p.begin() + legs, true);
    std::sort(p.begin(), p.end());
    do {
        std::vector<bool> best = p;
        for (int r = 1; r < d; ++r) {
            std::vector<bool> q(d);
            for (int i = 0; i < d; ++i)
                q[i] = p[(i + r) % d];
            best = std::min(best, q);
        }
        reps.insert(best);
    } while (std::next_permutation(p.begin(), p.end()));
    return {reps.begin(), reps.end()};
}

void check_budget(int H)
{
    if (H > kMaxHalfEdges)
        throw std::invalid_argument("ribbon graphs: parameters beyond the enumeration budget");
}

void spend(long& work)
{
    if (++work > kMaxCandidates)
        throw std::invalid_argument("ribbon graphs: parameters beyond the enumeration budget");
}

std::vector<GraphClass> enumerate_impl(std::vector<int> valencies, int l, int g, bool reduced, long& work)
{
    int k = int(valencies.size());
    int e = k + l - 2 + 2 * g;
    std::vector<GraphClass> out;
    if (k < 1 || l < 1 || g < 0 || e < 0)
        return out;
    std::sort(valencies.begin(), valencies.end());
    int H = std::accumulate(valencies.begin(), valencies.end(), 0);
    int legs = H - 2 * e;
    if (legs < 0 || std::any_of(valencies.begin(), valencies.end(), [](int d) { return d < 1; }))
        return out;
    check_budget(H);

    /* choices per vertex: (valency, pattern), vertices nondecreasing in that order */
    struct Choice
    {
        int d;
        std::vector<bool> pattern;
        int legs;
    };
    std::map<int, std::vector<Choice>> by_valency;
    for (int d : valencies)
        if (!by_valency.count(d))
            for (int a = 0; a <= d; ++a)
                for (auto& p : necklaces(d, a))
                    by_valency[d].push_back({d, p, a});

    std::map<std::vector<int>, GraphClass> classes;
    std::vector<int> pick(k);
    std::function<void(int, int)> choose = [&](int v, int legs_left) {
        if (v == k) {
            if (legs_left)
                return;
            spend(work);
            /* lay out half-edges */
            std::vector<std::vector<int>> rot(k);
            std::vector<int> inv;
            std::vector<int> internal;
            for (int u = 0; u < k; ++u) {
                const Choice& c = by_valency[valencies[u]][pick[u]];
                for (int i = 0; i < c.d; ++i) {
                    int h = int(inv.size());
                    rot[u].push_back(h);
                    inv.push_back(c.pattern[i] ? h : -1);
                    if (!c.pattern[i])
                        internal.push_back(h);
                }
            }
            std::vector<bool> used(inv.size(), false);
            std::function<void()> match = [&]() {
                int a = -1;
                for (int h : internal)
                    if (!used[h]) {
                        a = h;
                        break;
                    }
                if (a == -1) {
                    spend(work);
                    RibbonGraph gr(rot, inv);
                    if (!gr.connected() || gr.boundaries() != l)
                        return;
                    if (reduced)
                        for (const auto& b : gr.boundary_legs())
                            if (b.empty())
                                return;
                    auto code = canonical_code(gr);
                    if (!classes.count(code))
                        classes.emplace(code, GraphClass{gr, automorphism_order(gr)});
                    return;
                }
                used[a] = true;
                for (int b : internal)
                    if (!used[b]) {
                        used[b] = true;
                        inv[a] = b;
                        inv[b] = a;
                        match();
                        inv[a] = inv[b] = -1;
                        used[b] = false;
                    }
                used[a] = false;
            };
            match();
            return;
        }
        const auto& opts = by_valency[valencies[v]];
        int start = v > 0 && valencies[v - 1] == valencies[v] ? pick[v - 1] : 0;
        for (int i = start; i < int(opts.size()); ++i) {
            if (opts[i].legs > legs_left)
                continue;
            pick[v] = i;
            choose(v + 1, legs_left - opts[i].legs);
        }
    };
    choose(0, legs);
    for (auto& [code, c] : classes)
        out.push_back(std::move(c));
    return out;
}

}  // namespace

std::vector<GraphClass> enumerate_graphs_with_valencies(std::vector<int> valencies, int l, int g, bool reduced)
{
    long work = 0;
    return enumerate_impl(std::move(valencies), l, g, reduced, work);
}

std::vector<GraphClass> enumerate_graphs(int k, int l, int g, int legs, const std::function<bool(int)>& valency_filter,
                                         bool reduced)
{
    int e = k + l - 2 + 2 * g;
    std::vector<GraphClass> out;
    if (k < 1 || l < 1 || g < 0 || e < 0 || legs < 0)
        return out;
    int H = 2 * e + legs;
    check_budget(H);
    std::vector<int> d;
    long work = 0;
    std::function<void(int, int)> rec = [&](int lo, int left) {
        if (int(d.size()) == k) {
            if (!left)
                for (auto& c : enumerate_impl(d, l, g, reduced, work))
                    out.push_back(std::move(c));
            return;
        }
        int rest = k - int(d.size()) - 1;
        for (int x = lo; x + rest * x <= left; ++x) {
            if (valency_filter && !valency_filter(x))
                continue;
            d.push_back(x);
            rec(x, left - x);
            d.pop_back();
        }
    };
    rec(1, H);
    return out;
}

Labeling base_labeling(const RibbonGraph& g, std::vector<int> vertex_order, std::vector<int> boundary_order)
{
    Labeling L;
    L.vertex_order = std::move(vertex_order);
    L.boundary_order = std::move(boundary_order);
    L.edges = g.edges();
    for (const auto& r : g.rotations())
        L.vertex_marks.push_back(r.front());
    for (const auto& b : g.boundary_legs())
        L.boundary_marks.push_back(b.empty() ? -1 : b.front());
    return L;
}

namespace {

/* Sign of the determinant: -1, 0 or 1. */
int det_sign(Matrix m)
{
    int n = m.rows(), s = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && m(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            s = -s;
        }
        if (m(c, c) < 0)
            s = -s;
        for (int r = c + 1; r < n; ++r) {
            if (m(r, c) == 0)
                continue;
            Scalar f = m(r, c) / m(c, c);
            for (int j = c; j < n; ++j)
                m(r, j) -= f * m(c, j);
        }
    }
    return s;
}

int pfaffian_sign(const std::vector<std::vector<int>>& a, std::vector<int> idx)
{
    /* Pf via expansion along the first row; only the sign is needed but values may cancel */
    std::function<long(std::vector<int>)> pf = [&](std::vector<int> ix) -> long {
        if (ix.empty())
            return 1;
        long s = 0;
        for (size_t j = 1; j < ix.size(); ++j) {
            if (!a[ix[0]][ix[j]])
                continue;
            std::vector<int> rest;
            for (size_t t = 1; t < ix.size(); ++t)
                if (t != j)
                    rest.push_back(ix[t]);
            long term = a[ix[0]][ix[j]] * pf(rest);
            s += (j % 2 == 1) ? term : -term;
        }
        return s;
    };
    long v = pf(std::move(idx));
    return v > 0 ? 1 : v < 0 ? -1 : 0;
}

/* Rotation of the single vertex left after contracting the tree edges. */
std::vector<int> contract(const RibbonGraph& g, const std::vector<std::pair<int, int>>& tree)
{
    std::vector<std::vector<int>> rot = g.rotations();
    std::vector<int> owner(g.half_edges());
    for (int v = 0; v < int(rot.size()); ++v)
        for (int h : rot[v])
            owner[h] = v;
    auto from = [](const std::vector<int>& r, int h) {
        auto it = std::find(r.begin(), r.end(), h);
        std::vector<int> out(it + 1, r.end());
        out.insert(out.end(), r.begin(), it);
        return out;
    };
    int last = rot.empty() ? -1 : 0;
    for (const auto& [a, b] : tree) {
        int u = owner[a], v = owner[b];
        auto ru = from(rot[u], a), rv = from(rot[v], b);
        ru.insert(ru.end(), rv.begin(), rv.end());
        rot[u] = ru;
        rot[v].clear();
        for (int h : rot[u])
            owner[h] = u;
        last = u;
    }
    return last < 0 ? std::vector<int>{} : rot[last];
}

}  // namespace

int orientation_sign(const RibbonGraph& g, const Labeling& L)
{
    int k = g.vertices(), e = g.edge_count(), F = g.boundaries(), gen = g.genus();
    if (int(L.edges.size()) != e || int(L.vertex_order.size()) != k || int(L.boundary_order.size()) != F)
        throw std::invalid_argument("orientation_sign: incomplete labeling");
    if (e == 0)
        return 1;
    /* coordinates of an oriented edge in the L2 basis */
    std::map<std::pair<int, int>, std::pair<int, int>> coord;
    for (int t = 0; t < e; ++t) {
        auto [a, b] = L.edges[t];
        coord[{a, b}] = {t, 1};
        coord[{b, a}] = {t, -1};
    }
    std::vector<std::vector<Scalar>> cols;
    auto unit = [&](int a, int b) {
        std::vector<Scalar> c(e);
        auto [t, s] = coord.at({a, b});
        c[t] = s;
        return c;
    };
    /* faces: d2 b = sum over half-edges h of b of the edge oriented inv(h) -> h */
    for (int j = 0; j + 1 < F; ++j) {
        std::vector<Scalar> c(e);
        for (int h : g.faces()[L.boundary_order[j]])
            if (!g.is_leg(h)) {
                auto [t, s] = coord.at({g.involution(h), h});
                c[t] += s;
            }
        cols.push_back(std::move(c));
    }
    /* spanning tree from the first vertex, edges in L2 orientation */
    std::vector<std::pair<int, int>> tree;
    std::vector<bool> seen(k, false), in_tree(e, false);
    std::vector<int> queue{L.vertex_order.front()};
    seen[queue.front()] = true;
    for (size_t i = 0; i < queue.size(); ++i)
        for (int h : g.rotations()[queue[i]]) {
            if (g.is_leg(h))
                continue;
            int v = g.vertex_of(g.involution(h));
            if (seen[v])
                continue;
            seen[v] = true;
            queue.push_back(v);
            int t = coord.at({h, g.involution(h)}).first;
            in_tree[t] = true;
            tree.push_back(L.edges[t]);
        }
    /* H1 block: loops of the contracted graph, oriented by the intersection form */
    if (gen > 0) {
        std::vector<std::vector<Scalar>> base = cols;
        for (const auto& [a, b] : tree)
            base.push_back(unit(a, b));
        std::vector<int> chosen;
        for (int t = 0; t < e && int(chosen.size()) < 2 * gen; ++t) {
            if (in_tree[t])
                continue;
            auto trial = base;
            trial.push_back(unit(L.edges[t].first, L.edges[t].second));
            if (rank(from_columns(trial, e)) == int(trial.size())) {
                base = std::move(trial);
                chosen.push_back(t);
            }
        }
        if (int(chosen.size()) != 2 * gen)
            throw std::logic_error("orientation_sign: homology basis not found");
        auto rot = contract(g, tree);
        std::vector<int> pos(g.half_edges(), -1);
        for (int i = 0; i < int(rot.size()); ++i)
            pos[rot[i]] = i;
        int m = int(rot.size());
        auto inside = [&](int a0, int a1, int x) {
            int r1 = (pos[a1] - pos[a0] + m) % m, rx = (pos[x] - pos[a0] + m) % m;
            return rx > 0 && rx < r1;
        };
        std::vector<std::vector<int>> w(chosen.size(), std::vector<int>(chosen.size(), 0));
        for (size_t i = 0; i < chosen.size(); ++i)
            for (size_t j = 0; j < chosen.size(); ++j) {
                if (i == j)
                    continue;
                auto [a0, a1] = L.edges[chosen[i]];
                auto [b0, b1] = L.edges[chosen[j]];
                bool i0 = inside(a0, a1, b0), i1 = inside(a0, a1, b1);
                w[i][j] = i0 == i1 ? 0 : i0 ? 1 : -1;
            }
        std::vector<int> idx(chosen.size());
        std::iota(idx.begin(), idx.end(), 0);
        int pf = pfaffian_sign(w, idx);
        if (pf == 0)
            throw std::logic_error("orientation_sign: degenerate intersection form");
        for (size_t i = 0; i < chosen.size(); ++i) {
            auto c = unit(L.edges[chosen[i]].first, L.edges[chosen[i]].second);
            if (i == 0 && pf < 0)
                for (auto& x : c)
                    x = -x;
            cols.push_back(std::move(c));
        }
    }
    for (const auto& [a, b] : tree)
        cols.push_back(unit(a, b));
    int s = det_sign(from_columns(cols, e));
    if (s == 0)
        throw std::logic_error("orientation_sign: degenerate orientation basis");
    /* vertices: (d1 x_1, ..., d1 x_{k-1}, v_first) against the reversed vertex order */
    std::vector<int> row(k);
    for (int r = 0; r < k; ++r)
        row[L.vertex_order[k - 1 - r]] = r;
    Matrix C(k, k);
    for (int j = 0; j < int(tree.size()); ++j) {
        C(row[g.vertex_of(tree[j].second)], j) += 1;
        C(row[g.vertex_of(tree[j].first)], j) -= 1;
    }
    C(row[L.vertex_order.front()], k - 1) = 1;
    return s * det_sign(C);
}

Labeling compatible_L2(const RibbonGraph& g, std::vector<int> vertex_order, std::vector<int> boundary_order)
{
    Labeling L = base_labeling(g, std::move(vertex_order), std::move(boundary_order));
    if (!L.edges.empty() && orientation_sign(g, L) < 0)
        std::swap(L.edges.front().first, L.edges.front().second);
    return L;
}

namespace {

/* Half-edge behind every source slot and target position of every half-edge. */
struct SlotLayout
{
    std::vector<int> source;  // slot -> half-edge
    std::vector<int> target;  // half-edge -> vertex slot
    std::vector<std::vector<int>> vertex_words;  // per L1 vertex: half-edges in slot order
    std::vector<int> leg_slot;                   // per source slot: (boundary position, letter index) flattened
};

SlotLayout layout(const RibbonGraph& g, const Labeling& L)
{
    SlotLayout s;
    for (const auto& [a, b] : L.edges) {
        s.source.push_back(a);
        s.source.push_back(b);
    }
    for (int f : L.boundary_order) {
        const auto& legs = g.boundary_legs()[f];
        auto it = std::find(legs.begin(), legs.end(), L.boundary_marks[f]);
        if (!legs.empty() && it == legs.end())
            throw std::invalid_argument("labeling: boundary mark is not a leg of its boundary");
        size_t off = it - legs.begin();
        for (size_t i = 0; i < legs.size(); ++i)
            s.source.push_back(legs[(off + i) % legs.size()]);
    }
    s.target.assign(g.half_edges(), -1);
    int p = 0;
    for (int v : L.vertex_order) {
        const auto& r = g.rotations()[v];
        auto it = std::find(r.begin(), r.end(), L.vertex_marks[v]);
        if (it == r.end())
            throw std::invalid_argument("labeling: vertex mark is not at its vertex");
        size_t off = it - r.begin();
        std::vector<int> w;
        for (size_t i = 0; i < r.size(); ++i) {
            int h = r[(off + i) % r.size()];
            s.target[h] = p++;
            w.push_back(h);
        }
        s.vertex_words.push_back(std::move(w));
    }
    return s;
}

std::set<int> support_weights(const Cochain& psi)
{
    std::set<int> s;
    for (const auto& [w, x] : psi.values)
        if (x != 0)
            s.insert(int(w.size()));
    return s;
}

}  // namespace

Permutation sigma_L(const RibbonGraph& g, const Labeling& L)
{
    auto s = layout(g, L);
    Permutation p;
    for (int h : s.source)
        p.images.push_back(s.target[h]);
    p.validate();
    return p;
}

Scalar labeled_pairing(const RibbonGraph& g, const Labeling& L, const WordSpace& ws, const Propagator& P,
                       const std::vector<const Cochain*>& psis, const Tuple& words, const LetterMap& letters)
{
    int k = g.vertices(), H = g.half_edges();
    if (int(psis.size()) != k || int(words.size()) != g.boundaries())
        return 0;
    for (int j = 0; j < g.boundaries(); ++j)
        if (words[j].size() != g.boundary_legs()[L.boundary_order[j]].size())
            return 0;
    for (int i = 0; i < k; ++i)
        if (int(g.rotations()[L.vertex_order[i]].size()) > psis[i]->weight_bound)
            return 0;
    SlotLayout lay = layout(g, L);
    int e = int(L.edges.size());

    /* variables: edges carry P terms, legs carry letters */
    struct Option
    {
        int a, b;
        Scalar c;
    };
    std::vector<Option> pterms;
    for (int i = 0; i < P.coeffs.rows(); ++i)
        for (int j = 0; j < P.coeffs.cols(); ++j)
            if (P.coeffs(i, j) != 0)
                pterms.push_back({i, j, P.coeffs(i, j)});
    struct Var
    {
        std::vector<int> halves;
        std::vector<Option> options;
    };
    std::vector<Var> vars;
    for (int t = 0; t < e; ++t)
        vars.push_back({{L.edges[t].first, L.edges[t].second}, pterms});
    for (int s = 2 * e, j = 0; j < int(words.size()); ++j)
        for (int letter : words[j]) {
            Var v{{lay.source[s++]}, {}};
            if (letters.empty())
                v.options.push_back({letter, -1, 1});
            else
                for (const auto& [a, c] : letters.at(letter))
                    if (c != 0)
                        v.options.push_back({a, -1, c});
            vars.push_back(std::move(v));
        }
    /* order variables vertex by vertex so that vertices complete early */
    std::vector<int> var_of(H, -1);
    for (int i = 0; i < int(vars.size()); ++i)
        for (int h : vars[i].halves)
            var_of[h] = i;
    std::vector<int> order;
    std::vector<bool> placed(vars.size(), false);
    for (const auto& w : lay.vertex_words)
        for (int h : w)
            if (!placed[var_of[h]]) {
                placed[var_of[h]] = true;
                order.push_back(var_of[h]);
            }
    std::vector<int> pending(k), vpos(H);
    for (int i = 0; i < k; ++i)
        for (int h : lay.vertex_words[i]) {
            ++pending[i];
            vpos[h] = i;
        }

    std::vector<int> letter(H, -1);
    std::vector<int> degs(lay.source.size());
    Permutation perm;
    for (int h : lay.source)
        perm.images.push_back(lay.target[h]);
    Scalar total = 0;
    Word buf;
    auto vertex_value = [&](int i) {
        buf.clear();
        for (int h : lay.vertex_words[i])
            buf.push_back(letter[h]);
        return psis[i]->eval(ws, buf);
    };
    std::function<void(size_t, Scalar)> dfs = [&](size_t step, Scalar acc) {
        if (step == order.size()) {
            for (size_t s = 0; s < lay.source.size(); ++s)
                degs[s] = ws.letter_degree(letter[lay.source[s]]);
            total += koszul_sign(perm, degs) * acc;
            return;
        }
        const Var& v = vars[order[step]];
        for (const auto& o : v.options) {
            letter[v.halves[0]] = o.a;
            if (v.halves.size() > 1)
                letter[v.halves[1]] = o.b;
            Scalar x = acc * o.c;
            for (int h : v.halves)
                --pending[vpos[h]];
            for (int h : v.halves)
                if (pending[vpos[h]] == 0 && x != 0) {
                    /* a vertex touched twice by a loop completes once */
                    if (v.halves.size() > 1 && h == v.halves[1] && vpos[h] == vpos[v.halves[0]])
                        continue;
                    x *= vertex_value(vpos[h]);
                }
            if (x != 0)
                dfs(step + 1, x);
            for (int h : v.halves)
                ++pending[vpos[h]];
        }
    };
    dfs(0, Scalar(1));
    return total;
}

Scalar graph_pairing(const RibbonGraph& g, const WordSpace& ws, const Propagator& P,
                     const std::vector<const Cochain*>& psis, const Tuple& words, const LetterMap& letters)
{
    int k = g.vertices(), F = g.boundaries();
    if (int(psis.size()) != k || int(words.size()) != F)
        return 0;
    std::vector<std::set<int>> supp;
    for (const auto* p : psis)
        supp.push_back(support_weights(*p));
    /* identical homogeneous inputs on equal valencies: vertex orders differ by (-1)^{(|P|+d) sgn} */
    bool identical = k >= 2;
    int vparity = -1;
    for (int i = 0; i < k && identical; ++i)
        identical = psis[i] == psis[0] && g.rotations()[i].size() == g.rotations()[0].size();
    if (identical) {
        for (const auto& [w, x] : psis[0]->values) {
            if (x == 0)
                continue;
            int d = ws.degree(w) & 1;
            if (vparity == -1)
                vparity = d;
            else if (vparity != d)
                identical = false;
        }
        if (vparity == -1)
            return 0;
    }

    std::vector<int> vo(k), bo(F);
    std::iota(vo.begin(), vo.end(), 0);
    Scalar total = 0;
    do {
        bool fits = true;
        for (int i = 0; i < k && fits; ++i)
            fits = supp[i].count(int(g.rotations()[vo[i]].size())) > 0;
        if (!fits)
            continue;
        std::iota(bo.begin(), bo.end(), 0);
        do {
            bool ok = true;
            for (int j = 0; j < F && ok; ++j)
                ok = words[j].size() == g.boundary_legs()[bo[j]].size();
            if (!ok)
                continue;
            Labeling L = compatible_L2(g, vo, bo);
            /* all boundary marks */
            std::function<void(int)> marks = [&](int j) {
                if (j == F) {
                    total += labeled_pairing(g, L, ws, P, psis, words, letters);
                    return;
                }
                for (int h : g.boundary_legs()[bo[j]]) {
                    L.boundary_marks[bo[j]] = h;
                    marks(j + 1);
                }
            };
            marks(0);
        } while (std::next_permutation(bo.begin(), bo.end()));
        if (identical)
            break;
    } while (std::next_permutation(vo.begin(), vo.end()));
    if (identical) {
        if ((P.degree + vparity) % 2 != 0)
            return 0;
        Scalar f = 1;
        for (int i = 2; i <= k; ++i)
            f *= i;
        total *= f;
    }
    return total;
}

namespace {

using EnumKey = std::tuple<int, int, int, int, std::set<int>>;

const std::vector<GraphClass>& cached_graphs(int k, int l, int g, int legs, const std::set<int>& valencies)
{
    static std::mutex mu;
    static std::map<EnumKey, std::vector<GraphClass>> cache;
    std::lock_guard<std::mutex> lock(mu);
    EnumKey key{k, l, g, legs, valencies};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, enumerate_graphs(k, l, g, legs, [&](int d) { return valencies.count(d) > 0; }))
                 .first;
    return it->second;
}

}  // namespace

Scalar f_klg(const WordSpace& ws, const Propagator& P, const std::vector<const Cochain*>& psis, int g,
             const Tuple& words, const LetterMap& letters)
{
    int k = int(psis.size()), l = int(words.size());
    if (k < 1 || l < 1)
        return 0;
    std::set<int> vals;
    for (const auto* p : psis)
        for (int w : support_weights(*p))
            vals.insert(w);
    if (vals.empty())
        return 0;
    int legs = total_weight(words);
    if (k + l - 2 + 2 * g > 0 && P.coeffs.is_zero())
        return 0;
    Scalar total = 0;
    for (const auto& c : cached_graphs(k, l, g, legs, vals))
        total += graph_pairing(c.graph, ws, P, psis, words, letters) / Scalar(c.automorphisms);
    Scalar lf = 1;
    for (int i = 2; i <= l; ++i)
        lf *= i;
    return total / lf;
}

std::map<Tuple, Scalar> f_klg_table(const WordSpace& ws, const Propagator& P, const std::vector<const Cochain*>& psis,
                                    int l, int g, int weight_bound)
{
    std::map<Tuple, Scalar> out;
    auto words = ws.canonical_words_upto(weight_bound);
    Tuple cur;
    std::function<void(int)> rec = [&](int budget) {
        if (int(cur.size()) == l) {
            Scalar v = f_klg(ws, P, psis, g, cur);
            if (v != 0)
                out[cur] = v;
            return;
        }
        for (const auto& w : words)
            if (int(w.size()) + (l - int(cur.size()) - 1) <= budget) {
                cur.push_back(w);
                rec(budget - int(w.size()));
                cur.pop_back();
            }
    };
    rec(weight_bound);
    return out;
}

HarmonicModel harmonic_model(const CyclicStructure& s, const HarmonicSplitting& sp)
{
    int d = s.dim(), h = int(sp.harmonic.size());
    HarmonicModel hm;
    hm.inclusion = from_columns(sp.harmonic, d);
    CyclicStructure& H = hm.structure;
    H.name = s.name + "/harmonic";
    H.manifold_dimension = s.manifold_dimension;
    for (int a = 0; a < h; ++a) {
        int deg = 0;
        bool found = false;
        for (int i = 0; i < d; ++i)
            if (sp.harmonic[a][i] != 0) {
                if (found && s.deg(i) != deg)
                    throw std::invalid_argument("harmonic_model: harmonic vector is not homogeneous");
                deg = s.deg(i);
                found = true;
            }
        H.basis.labels.push_back("h" + std::to_string(a));
        H.basis.degrees.push_back(deg);
        if (s.unit) {
            bool is_unit = true;
            for (int i = 0; i < d; ++i)
                is_unit = is_unit && sp.harmonic[a][i] == (i == *s.unit ? 1 : 0);
            if (is_unit)
                H.unit = a;
        }
    }
    H.pairing = Matrix(h, h);
    if (s.has_pairing())
        H.pairing = hm.inclusion.transpose() * s.pairing * hm.inclusion;
    if (s.mu.count(2)) {
        Matrix B = from_columns([&] {
            auto all = sp.harmonic;
            all.insert(all.end(), sp.image.begin(), sp.image.end());
            all.insert(all.end(), sp.complement.begin(), sp.complement.end());
            return all;
        }(), d);
        auto Binv = inverse(B);
        if (!Binv)
            throw std::invalid_argument("harmonic_model: inconsistent splitting");
        for (int a = 0; a < h; ++a)
            for (int b = 0; b < h; ++b) {
                std::vector<Scalar> out(d);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        Scalar c = sp.harmonic[a][i] * sp.harmonic[b][j];
                        if (c == 0)
                            continue;
                        for (const auto& [o, x] : s.apply_mu(2, {i, j}))
                            out[o] += c * x;
                    }
                auto coords = *Binv * out;
                for (int c = 0; c < h; ++c)
                    if (coords[c] != 0)
                        H.set_mu(2, {a, b}, c, coords[c]);
            }
    }
    return hm;
}

Pushforward pushforward_mc(const CyclicStructure& s, const Propagator& K, int weight_bound, int genus_bound,
                           int max_boundaries)
{
    return pushforward_mc(s, K, harmonic_splitting(s), weight_bound, genus_bound, max_boundaries);
}

Pushforward pushforward_mc(const CyclicStructure& s, const Propagator& K, const HarmonicSplitting& sp,
                           int weight_bound, int genus_bound, int max_boundaries)
{
    if (!has_twist_symmetry(s, K, Sign::parity(K.degree)))
        throw std::invalid_argument("pushforward_mc: kernel violates the propagator symmetry");
    Pushforward out;
    out.harmonic = harmonic_model(s, sp);
    Cochain m10 = canonical_mc(s).pmc10();
    WordSpace ws = s.words();
    WordSpace hws = out.harmonic.structure.words();
    LetterMap letters;
    for (const auto& v : sp.harmonic) {
        SparseVec x;
        for (int i = 0; i < int(v.size()); ++i)
            if (v[i] != 0)
                x[i] = v[i];
        letters.push_back(std::move(x));
    }
    for (int l = 1; l <= max_boundaries; ++l)
        for (int g = 0; g <= genus_bound; ++g) {
            SymCochain entry;
            entry.arity = l;
            entry.weight_bound = weight_bound;
            for (const auto& t : normalized_tuples(hws, l, weight_bound)) {
                int k = total_weight(t) + 2 * l - 4 + 4 * g;
                if (k < 1)
                    continue;
                std::vector<const Cochain*> psis(k, &m10);
                Scalar v = f_klg(ws, K, psis, g, t, letters);
                if (v != 0)
                    entry.values[t] = v;
            }
            out.pmc.entries[{l, g}] = std::move(entry);
        }
    return out;
}

}  // namespace ibl
