#include "ibl/homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace ibl {

namespace {

struct GradedWords
{
    std::map<int, std::vector<Word>> by_degree;
    std::map<Word, int> index;  // position inside its degree
};

GradedWords collect(const WordSpace& ws, int W, const HomologyOptions& opts)
{
    GradedWords g;
    for (int w = 1; w <= W; ++w)
        for (auto& u : ws.canonical_words(w)) {
            if (opts.include && !opts.include(u))
                continue;
            auto& list = g.by_degree[ws.degree(u)];
            g.index[u] = int(list.size());
            list.push_back(u);
        }
    return g;
}

Chain restricted(const WordSpace& ws, const DualOperator& dual, const Word& u, int W, const HomologyOptions& opts)
{
    Chain c = dual(u);
    prune(c);
    for (auto it = c.begin(); it != c.end();) {
        if (int(it->first.size()) > W)
            throw std::runtime_error("homology: operator raises weight beyond the truncation");
        if (ws.degree(it->first) != ws.degree(u) + 1)
            throw std::runtime_error("homology: operator is not homogeneous of degree 1");
        if (opts.include && !opts.include(it->first))
            it = c.erase(it);
        else
            ++it;
    }
    return c;
}

/* Matrix of D: C(d) -> C(d-1); rows are words of degree d-1, columns words of degree d. */
SparseMatrix cochain_matrix(const WordSpace& ws, const DualOperator& dual, const GradedWords& g, int d, int W,
                            const HomologyOptions& opts)
{
    auto src = g.by_degree.find(d);
    auto dst = g.by_degree.find(d - 1);
    int cols = src == g.by_degree.end() ? 0 : int(src->second.size());
    int rows = dst == g.by_degree.end() ? 0 : int(dst->second.size());
    SparseMatrix m(rows, cols);
    if (!rows || !cols)
        return m;
    for (int i = 0; i < rows; ++i)
        for (const auto& [w, c] : restricted(ws, dual, dst->second[i], W, opts))
            m.add(i, g.index.at(w), c);
    return m;
}

void check_square_zero(const WordSpace& ws, const DualOperator& dual, const GradedWords& g, int W,
                       const HomologyOptions& opts)
{
    for (const auto& [d, words] : g.by_degree)
        for (const auto& u : words) {
            Chain acc;
            for (const auto& [w, c] : restricted(ws, dual, u, W, opts))
                add_to(acc, restricted(ws, dual, w, W, opts), c);
            prune(acc);
            if (!acc.empty())
                throw std::runtime_error("homology: differential does not square to zero");
        }
}

}  // namespace

int HomologyReport::dimension(int degree, int weight) const
{
    for (const auto& b : blocks)
        if (b.degree == degree && b.weight == weight)
            return b.dimension;
    return 0;
}

int HomologyReport::total_dimension(bool stable_only) const
{
    int t = 0;
    for (const auto& b : blocks)
        if (b.stable || !stable_only)
            t += b.dimension;
    return t;
}

std::vector<const HomologyBlock*> HomologyReport::stable_blocks() const
{
    std::vector<const HomologyBlock*> out;
    for (const auto& b : blocks)
        if (b.stable)
            out.push_back(&b);
    return out;
}

HomologyReport graded_homology(const WordSpace& ws, const DualOperator& dual, int W, const HomologyOptions& opts)
{
    HomologyReport rep;
    rep.weight_bound = W;
    GradedWords g = collect(ws, W, opts);
    check_square_zero(ws, dual, g, W, opts);
    for (const auto& [d, words] : g.by_degree) {
        if (opts.degree_window && (d < opts.degree_window->first || d > opts.degree_window->second))
            continue;
        /* reorder coordinates by weight so echelon leads carry the lowest weight */
        std::vector<int> order(words.size());
        for (size_t i = 0; i < order.size(); ++i)
            order[i] = int(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return words[a].size() < words[b].size(); });
        std::vector<int> pos(words.size());
        for (size_t i = 0; i < order.size(); ++i)
            pos[order[i]] = int(i);
        auto to_sorted = [&](const SparseVec& v) {
            SparseVec r;
            for (const auto& [i, c] : v)
                r[pos[i]] = c;
            return r;
        };
        std::vector<Word> sorted_words(words.size());
        for (size_t i = 0; i < order.size(); ++i)
            sorted_words[i] = words[order[i]];

        SparseMatrix out = cochain_matrix(ws, dual, g, d, W, opts);
        SparseMatrix in = cochain_matrix(ws, dual, g, d + 1, W, opts);
        EchelonBasis cycles;
        if (out.rows == 0) {
            for (size_t i = 0; i < words.size(); ++i)
                cycles.insert({{int(i), Scalar(1)}});
        }
        else
            for (const auto& v : kernel_basis(out))
                cycles.insert(to_sorted(v));
        EchelonBasis boundaries;
        if (in.cols > 0)
            for (const auto& col : in.columns)
                boundaries.insert(to_sorted(col));

        /* Z vectors by lead weight, highest first */
        std::map<int, std::vector<SparseVec>, std::greater<>> by_lead;
        for (const auto& [p, v] : cycles.rows())
            by_lead[int(sorted_words[p].size())].push_back(v);
        for (auto& [w, vs] : by_lead) {
            HomologyBlock blk;
            blk.degree = d;
            blk.weight = w;
            blk.stable = w <= W - 1;
            for (auto& v : vs) {
                if (!boundaries.insert(v))
                    continue;
                Cochain c;
                c.weight_bound = W;
                for (const auto& [i, x] : v)
                    c.values[sorted_words[i]] = x;
                blk.representatives.push_back(std::move(c));
            }
            blk.dimension = int(blk.representatives.size());
            if (blk.dimension)
                rep.blocks.push_back(std::move(blk));
        }
    }
    std::sort(rep.blocks.begin(), rep.blocks.end(), [](const HomologyBlock& a, const HomologyBlock& b) {
        return std::pair(a.weight, a.degree) < std::pair(b.weight, b.degree);
    });
    return rep;
}

std::map<int, int> chain_homology_dimensions(const WordSpace& ws, const DualOperator& b, int W,
                                             const HomologyOptions& opts)
{
    GradedWords g = collect(ws, W, opts);
    std::map<int, int> dims;
    /* chain differential C(d) -> C(d+1) is the transpose of the cochain matrix D: C(d+1) -> C(d) */
    std::map<int, int> rk;
    for (const auto& [d, words] : g.by_degree)
        rk[d] = rank(cochain_matrix(ws, b, g, d + 1, W, opts));
    for (const auto& [d, words] : g.by_degree) {
        int r_out = rk[d];
        int r_in = rk.count(d - 1) ? rk[d - 1] : 0;
        int h = int(words.size()) - r_out - r_in;
        if (h)
            dims[d] = h;
    }
    return dims;
}

std::vector<Chain> chain_homology_representatives(const WordSpace& ws, const DualOperator& b, int W,
                                                  const HomologyOptions& opts)
{
    GradedWords g = collect(ws, W, opts);
    /* chain differential C(d) -> C(d+1) with columns b(u) */
    auto chain_matrix = [&](int d) {
        auto src = g.by_degree.find(d);
        auto dst = g.by_degree.find(d + 1);
        int cols = src == g.by_degree.end() ? 0 : int(src->second.size());
        int rows = dst == g.by_degree.end() ? 0 : int(dst->second.size());
        SparseMatrix m(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (const auto& [w, c] : restricted(ws, b, src->second[j], W, opts))
                m.add(g.index.at(w), j, c);
        return m;
    };
    std::vector<Chain> out;
    for (const auto& [d, words] : g.by_degree) {
        EchelonBasis span;
        for (const auto& col : chain_matrix(d - 1).columns)
            span.insert(col);
        SparseMatrix m = chain_matrix(d);
        std::vector<SparseVec> cycles;
        if (m.rows == 0)
            for (size_t i = 0; i < words.size(); ++i)
                cycles.push_back({{int(i), Scalar(1)}});
        else
            cycles = kernel_basis(m);
        for (auto& v : cycles) {
            if (!span.insert(v))
                continue;
            bool top = false;
            for (const auto& [i, x] : v)
                top = top || int(words[i].size()) == W;
            if (top)
                continue;
            Chain c;
            for (const auto& [i, x] : v)
                c[words[i]] = x;
            out.push_back(std::move(c));
        }
    }
    return out;
}

bool is_coboundary(const WordSpace& ws, const DualOperator& dual, const Cochain& psi, int degree, int W,
                   const HomologyOptions& opts)
{
    GradedWords g = collect(ws, W, opts);
    auto it = g.by_degree.find(degree);
    SparseVec target;
    for (const auto& [w, c] : psi.values) {
        if (c == 0)
            continue;
        if (it == g.by_degree.end() || !g.index.count(w) || ws.degree(w) != degree)
            return false;
        target[g.index.at(w)] = c;
    }
    if (target.empty())
        return true;
    SparseMatrix in = cochain_matrix(ws, dual, g, degree + 1, W, opts);
    EchelonBasis e;
    for (const auto& col : in.columns)
        e.insert(col);
    return e.contains(target);
}

Cochain apply_dual(const WordSpace& ws, const DualOperator& dual, const Cochain& psi, int W,
                   const HomologyOptions& opts)
{
    Cochain out;
    out.weight_bound = W;
    for (const auto& u : ws.canonical_words_upto(W)) {
        if (opts.include && !opts.include(u))
            continue;
        Scalar v = 0;
        for (const auto& [w, c] : restricted(ws, dual, u, W, opts)) {
            auto f = psi.values.find(w);
            if (f != psi.values.end())
                v += c * f->second;
        }
        if (v != 0)
            out.values[u] = v;
    }
    return out;
}

HomologyOptions reduced_options(const CyclicStructure& s)
{
    HomologyOptions o;
    CyclicStructure copy = s;
    o.include = [copy](const Word& w) { return !contains_unit(copy, w); };
    return o;
}

}  // namespace ibl
