#include "ibl/dibl.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ibl {

namespace {

std::vector<std::pair<Word, Sign>> rotations(const WordSpace& ws, const Word& w)
{
    std::vector<std::pair<Word, Sign>> out;
    Word cur = w;
    Sign acc;
    for (size_t r = 0; r < w.size(); ++r) {
        out.push_back({cur, acc});
        auto [next, sg] = ws.rotate(cur);
        acc *= sg;
        cur = std::move(next);
    }
    return out;
}

Word concat(int head, const Word& tail)
{
    Word w;
    w.reserve(tail.size() + 1);
    w.push_back(head);
    w.insert(w.end(), tail.begin(), tail.end());
    return w;
}

struct Bound
{
    int limit;
    bool exact;
};

Bound bound_of(const Cochain& c)
{
    return is_exact(c) ? Bound{support_weight(c), true} : Bound{c.weight_bound, false};
}

Bound bound_of(const SymCochain& c)
{
    return is_exact(c) ? Bound{support_weight(c), true} : Bound{c.weight_bound, false};
}

/* exact inputs give exact output with the given limit; otherwise the tightest truncated constraint */
Bound combine(std::initializer_list<std::pair<Bound, int>> parts, int exact_limit)
{
    int lim = kInfiniteWeight;
    bool exact = true;
    for (const auto& [b, shift] : parts)
        if (!b.exact) {
            exact = false;
            lim = std::min(lim, b.limit + shift);
        }
    return exact ? Bound{std::max(exact_limit, 0), true} : Bound{lim, false};
}

Cochain make_cochain(const Bound& b)
{
    Cochain c;
    c.weight_bound = b.exact ? kInfiniteWeight : b.limit;
    return c;
}

SymCochain make_sym(int arity, const Bound& b)
{
    SymCochain c;
    c.arity = arity;
    c.weight_bound = b.exact ? kInfiniteWeight : b.limit;
    return c;
}

std::vector<std::pair<int, int>> t_support(const Matrix& T)
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < T.rows(); ++i)
        for (int j = 0; j < T.cols(); ++j)
            if (T(i, j) != 0)
                out.push_back({i, j});
    return out;
}

int degree_sum(const WordSpace& ws, const Tuple& t, size_t upto)
{
    long d = 0;
    for (size_t m = 0; m < upto; ++m)
        d += ws.shifted_degree(t[m]);
    return int(d);
}

Cochain sum(const Cochain& a, const Cochain& b)
{
    Cochain c;
    c.weight_bound = std::min(a.weight_bound, b.weight_bound);
    c.values = a.values;
    add_to(c.values, b.values);
    prune(c.values);
    std::erase_if(c.values, [&](const auto& p) { return int(p.first.size()) > c.weight_bound; });
    return c;
}

SymCochain sum(const SymCochain& a, const SymCochain& b)
{
    SymCochain c;
    c.arity = a.arity;
    c.weight_bound = std::min(a.weight_bound, b.weight_bound);
    c.values = a.values;
    add_to(c.values, b.values);
    prune(c.values);
    std::erase_if(c.values, [&](const auto& p) { return total_weight(p.first) > c.weight_bound; });
    return c;
}

}  // namespace

Matrix t_tensor(const CyclicStructure& s)
{
    Matrix D = dual_basis(s);
    int d = s.dim();
    Matrix T(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            T(i, j) = Sign::parity(s.deg(i)) * D(j, i);
    return T;
}

std::vector<CoproductTerm> coproduct_terms(const CyclicStructure& s, const Matrix& T, const Word& w)
{
    WordSpace ws = s.words();
    int sh = s.shift();
    std::vector<CoproductTerm> out;
    auto supp = t_support(T);
    for (const auto& [rot, eps] : rotations(ws, w))
        for (size_t p = 0; p <= rot.size(); ++p) {
            Word w1(rot.begin(), rot.begin() + p), w2(rot.begin() + p, rot.end());
            int d1 = ws.degree(w1);
            for (const auto& [i, j] : supp) {
                Sign sg = eps * Sign::parity(long(s.deg(j)) * d1) * Sign::parity(long(sh) * (s.deg(i) + d1));
                out.push_back({sg * T(i, j), concat(i, w1), concat(j, w2)});
            }
        }
    return out;
}

std::vector<BracketTerm> bracket_terms(const CyclicStructure& s, const Matrix& T, const Word& w1, const Word& w2)
{
    WordSpace ws = s.words();
    Sign pre = Sign::parity(long(s.shift()) * ws.degree(w1));
    std::vector<BracketTerm> out;
    auto supp = t_support(T);
    auto r1 = rotations(ws, w1), r2 = rotations(ws, w2);
    for (const auto& [a, e1] : r1)
        for (const auto& [b, e2] : r2) {
            int da = ws.degree(a);
            for (const auto& [i, j] : supp) {
                Word word = concat(i, a);
                word.push_back(j);
                word.insert(word.end(), b.begin(), b.end());
                Sign sg = pre * e1 * e2 * Sign::parity(long(s.deg(j)) * da);
                out.push_back({sg * T(i, j) / 2, std::move(word)});
            }
        }
    return out;
}

int support_weight(const Cochain& psi)
{
    int m = 0;
    for (const auto& [w, x] : psi.values)
        if (x != 0)
            m = std::max(m, int(w.size()));
    return m;
}

int support_weight(const SymCochain& psi)
{
    int m = 0;
    for (const auto& [t, x] : psi.values)
        if (x != 0)
            m = std::max(m, total_weight(t));
    return m;
}

bool is_exact(const Cochain& psi)
{
    return psi.weight_bound == kInfiniteWeight;
}

bool is_exact(const SymCochain& psi)
{
    return psi.weight_bound == kInfiniteWeight;
}

Cochain exact_cochain(std::map<Word, Scalar> values)
{
    Cochain c;
    c.weight_bound = kInfiniteWeight;
    c.values = std::move(values);
    return c;
}

SymCochain as_sym(const Cochain& psi)
{
    SymCochain c;
    c.arity = 1;
    c.weight_bound = psi.weight_bound;
    for (const auto& [w, x] : psi.values)
        c.values[{w}] = x;
    return c;
}

Cochain as_cochain(const SymCochain& psi)
{
    if (psi.arity != 1)
        throw std::invalid_argument("as_cochain: arity must be 1");
    Cochain c;
    c.weight_bound = psi.weight_bound;
    for (const auto& [t, x] : psi.values)
        c.values[t[0]] = x;
    return c;
}

std::vector<Tuple> normalized_tuples(const WordSpace& ws, int arity, int max_total,
                                     const std::function<bool(const Word&)>& include)
{
    std::vector<Tuple> out;
    if (arity <= 0 || max_total < arity)
        return out;
    std::vector<Word> words;
    for (auto& w : ws.canonical_words_upto(max_total - arity + 1))
        if (!include || include(w))
            words.push_back(std::move(w));
    /* canonical_words_upto lists by weight, then lexicographically: the tuple order */
    Tuple cur;
    std::function<void(size_t, int)> rec = [&](size_t start, int budget) {
        if (int(cur.size()) == arity) {
            out.push_back(cur);
            return;
        }
        int remaining = arity - int(cur.size()) - 1;
        for (size_t i = start; i < words.size(); ++i) {
            int wt = int(words[i].size());
            if (wt + remaining * wt > budget)
                break;
            if (!cur.empty() && cur.back() == words[i] && (ws.shifted_degree(words[i]) & 1))
                continue;
            cur.push_back(words[i]);
            rec(i, budget - wt);
            cur.pop_back();
        }
    };
    rec(0, max_total);
    return out;
}

Cochain q110(const CyclicStructure& s, const Cochain& psi)
{
    WordSpace ws = s.words();
    Bound b = bound_of(psi);
    Cochain out = make_cochain(b);
    for (const auto& w : ws.canonical_words_upto(b.limit)) {
        Scalar v = psi.eval(cyclic_b1(s, w));
        if (v != 0)
            out.values[w] = v;
    }
    return out;
}

Cochain q210(const CyclicStructure& s, const Cochain& psi1, const Cochain& psi2)
{
    return q210(s, t_tensor(s), psi1, psi2);
}

Cochain q210(const CyclicStructure& s, const Matrix& T, const Cochain& psi1, const Cochain& psi2)
{
    WordSpace ws = s.words();
    Bound b1 = bound_of(psi1), b2 = bound_of(psi2);
    Bound b = combine({{b1, -1}, {b2, -1}}, b1.limit + b2.limit - 2);
    Cochain out = make_cochain(b);
    if (psi1.is_zero() || psi2.is_zero())
        return out;
    for (const auto& w : ws.canonical_words_upto(b.limit)) {
        Scalar v = 0;
        for (const auto& t : coproduct_terms(s, T, w)) {
            if (b1.exact && int(t.a.size()) > b1.limit)
                continue;
            if (b2.exact && int(t.b.size()) > b2.limit)
                continue;
            Scalar x = psi1.eval(ws, t.a);
            if (x == 0)
                continue;
            v += t.coef * x * psi2.eval(ws, t.b);
        }
        if (v != 0)
            out.values[w] = v;
    }
    return out;
}

SymCochain q120(const CyclicStructure& s, const Cochain& psi)
{
    return q120(s, t_tensor(s), psi);
}

SymCochain q120(const CyclicStructure& s, const Matrix& T, const Cochain& psi)
{
    WordSpace ws = s.words();
    Bound b = bound_of(psi);
    Bound ob = b.exact ? Bound{b.limit - 2, true} : Bound{b.limit - 2, false};
    SymCochain out = make_sym(2, ob);
    if (psi.is_zero())
        return out;
    for (const auto& t : normalized_tuples(ws, 2, ob.limit)) {
        Scalar v = 0;
        for (const auto& bt : bracket_terms(s, T, t[0], t[1]))
            v += bt.coef * psi.eval(ws, bt.word);
        if (v != 0)
            out.values[t] = v;
    }
    return out;
}

const SymCochain* MaurerCartanFamily::find(int l, int g) const
{
    auto it = entries.find({l, g});
    return it == entries.end() ? nullptr : &it->second;
}

Cochain MaurerCartanFamily::pmc10() const
{
    const SymCochain* p = find(1, 0);
    if (!p)
        throw std::invalid_argument("Maurer-Cartan family has no (1,0) entry");
    return as_cochain(*p);
}

MaurerCartanFamily canonical_mc(const CyclicStructure& s)
{
    if (!s.mu.count(2))
        throw std::invalid_argument("canonical_mc: no product");
    WordSpace ws = s.words();
    Cochain m;
    m.weight_bound = kInfiniteWeight;
    Sign pre = Sign::parity(s.manifold_dimension - 2);
    for (const auto& w : ws.canonical_words(3)) {
        Scalar v = pre * mu_plus(s, 2, w);
        if (v != 0)
            m.values[w] = v;
    }
    MaurerCartanFamily f;
    f.entries[{1, 0}] = as_sym(m);
    f.strictly_reduced = s.unit.has_value();
    return f;
}

SymCochain circ1(const CyclicStructure& s, const SymCochain& pmc, const Cochain& psi)
{
    WordSpace ws = s.words();
    Matrix T = t_tensor(s);
    auto supp = t_support(T);
    int l = pmc.arity, sh = s.shift();
    Bound bp = bound_of(pmc), bq = bound_of(psi);
    Bound b = combine({{bq, l - 2}, {bp, -1}}, bq.limit + bp.limit - 2);
    SymCochain out = make_sym(l, b);
    if (pmc.is_zero() || psi.is_zero())
        return out;
    for (const auto& t : normalized_tuples(ws, l, b.limit)) {
        Scalar v = 0;
        for (int j = 0; j < l; ++j) {
            int pre = degree_sum(ws, t, j);
            for (const auto& [rot, eps] : rotations(ws, t[j]))
                for (size_t p = 0; p <= rot.size(); ++p) {
                    Word w1(rot.begin(), rot.begin() + p), w2(rot.begin() + p, rot.end());
                    int d1 = ws.degree(w1);
                    for (const auto& [a, bb] : supp) {
                        Word x = concat(a, w1);
                        if (bq.exact && int(x.size()) > bq.limit)
                            continue;
                        Scalar px = psi.eval(ws, x);
                        if (px == 0)
                            continue;
                        Tuple u = t;
                        u[j] = concat(bb, w2);
                        if (bp.exact && total_weight(u) > bp.limit)
                            continue;
                        Scalar py = pmc.eval(ws, u);
                        if (py == 0)
                            continue;
                        long e = long(s.deg(bb)) * (pre + sh) + long(d1) * (sh + pre + s.deg(bb));
                        v += Sign::parity(e) * eps * T(a, bb) * px * py;
                    }
                }
        }
        if (v != 0)
            out.values[t] = v;
    }
    return out;
}

Cochain circ1_arity1(const CyclicStructure& s, const Cochain& pmc10, const Cochain& psi)
{
    WordSpace ws = s.words();
    Matrix T = t_tensor(s);
    auto supp = t_support(T);
    Bound bp = bound_of(pmc10), bq = bound_of(psi);
    Bound b = combine({{bq, -1}, {bp, -1}}, bq.limit + bp.limit - 2);
    Cochain out = make_cochain(b);
    Sign pre = Sign::parity(s.shift());
    for (const auto& w : ws.canonical_words_upto(b.limit)) {
        Scalar v = 0;
        for (const auto& [rot, eps] : rotations(ws, w))
            for (size_t p = 0; p <= rot.size(); ++p) {
                Word w1(rot.begin(), rot.begin() + p), w2(rot.begin() + p, rot.end());
                for (const auto& [a, bb] : supp) {
                    Word x = concat(a, w1), y = concat(bb, w2);
                    if ((bp.exact && int(x.size()) > bp.limit) || (bq.exact && int(y.size()) > bq.limit))
                        continue;
                    Scalar px = pmc10.eval(ws, x);
                    if (px != 0)
                        v += pre * eps * T(a, bb) * px * psi.eval(ws, y);
                }
            }
        if (v != 0)
            out.values[w] = v;
    }
    return out;
}

SymCochain circ1_arity2(const CyclicStructure& s, const SymCochain& pmc20, const Cochain& psi)
{
    if (pmc20.arity != 2)
        throw std::invalid_argument("circ1_arity2: arity must be 2");
    WordSpace ws = s.words();
    Matrix T = t_tensor(s);
    auto supp = t_support(T);
    int sh = s.shift();
    Bound bp = bound_of(pmc20), bq = bound_of(psi);
    Bound b = combine({{bq, 0}, {bp, -1}}, bq.limit + bp.limit - 2);
    SymCochain out = make_sym(2, b);
    if (pmc20.is_zero() || psi.is_zero())
        return out;
    /* one bracket of the display: split w, feed e_a w^1 to psi and (e_b w^2, other) to pmc20 */
    auto half = [&](const Word& w, const Word& other) {
        Scalar v = 0;
        for (const auto& [rot, eps] : rotations(ws, w))
            for (size_t p = 0; p <= rot.size(); ++p) {
                Word w1(rot.begin(), rot.begin() + p), w2(rot.begin() + p, rot.end());
                int d1 = ws.degree(w1);
                for (const auto& [a, bb] : supp) {
                    Word x = concat(a, w1);
                    if (bq.exact && int(x.size()) > bq.limit)
                        continue;
                    Scalar px = psi.eval(ws, x);
                    if (px == 0)
                        continue;
                    Tuple u{concat(bb, w2), other};
                    if (bp.exact && total_weight(u) > bp.limit)
                        continue;
                    long psi_deg = sh + ws.degree(x);
                    Sign sg = Sign::parity(long(sh) * (psi_deg + 1)) * Sign::parity(long(s.deg(bb)) * d1);
                    v += sg * eps * T(a, bb) * px * pmc20.eval(ws, u);
                }
            }
        return v;
    };
    for (const auto& t : normalized_tuples(ws, 2, b.limit)) {
        Sign swap = Sign::parity(long(ws.shifted_degree(t[0])) * ws.shifted_degree(t[1]));
        Scalar v = half(t[0], t[1]) + swap * half(t[1], t[0]);
        if (v != 0)
            out.values[t] = v;
    }
    return out;
}

Cochain twisted_q110(const CyclicStructure& s, const MaurerCartanFamily& pmc, const Cochain& psi)
{
    return sum(q110(s, psi), q210(s, psi, pmc.pmc10()));
}

SymCochain twisted_q120(const CyclicStructure& s, const MaurerCartanFamily& pmc, const Cochain& psi)
{
    SymCochain base = q120(s, psi);
    const SymCochain* p20 = pmc.find(2, 0);
    if (!p20)
        return base;
    return sum(base, circ1(s, *p20, psi));
}

DualOperator twisted_q110_dual(const CyclicStructure& s, const MaurerCartanFamily& pmc)
{
    Cochain m = pmc.pmc10();
    Matrix T = t_tensor(s);
    return [s, m, T](const Word& u) {
        WordSpace ws = s.words();
        Chain c = cyclic_b1(s, u);
        for (const auto& t : coproduct_terms(s, T, u)) {
            Scalar x = m.eval(ws, t.b);
            if (x != 0)
                ws.add(c, t.a, t.coef * x);
        }
        prune(c);
        return c;
    };
}

SparseVec volume_vector(const CyclicStructure& s)
{
    if (!s.unit)
        throw std::invalid_argument("volume vector needs a unit");
    std::vector<Scalar> eps(s.dim(), 0);
    if (s.augmentation)
        eps = *s.augmentation;
    else
        eps[*s.unit] = 1;
    Matrix D = dual_basis(s);
    SparseVec w;
    for (int k = 0; k < s.dim(); ++k) {
        Scalar x = 0;
        for (int j = 0; j < s.dim(); ++j)
            x += eps[j] * D(k, j);
        if (x != 0)
            w[k] = x;
    }
    for (const auto& [k, x] : w)
        if (s.deg(k) != s.manifold_dimension - 1)
            throw std::logic_error("volume vector is not homogeneous of degree n-1");
    return w;
}

Tensor iota_vol(const CyclicStructure& s, const Word& w)
{
    SparseVec vol = volume_vector(s);
    int dv = s.manifold_dimension - 1;
    Tensor out;
    long prefix = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        Sign sg = Sign::parity(dv * prefix);
        for (const auto& [x, c] : vol) {
            Word u(w.begin(), w.begin() + i);
            u.push_back(x);
            u.insert(u.end(), w.begin() + i, w.end());
            Scalar& slot = out[u];
            slot += sg * c;
        }
        prefix += s.deg(w[i]);
    }
    std::erase_if(out, [](const auto& p) { return p.second == 0; });
    return out;
}

Cochain compose_iota(const CyclicStructure& s, const Cochain& psi)
{
    return as_cochain(compose_iota(s, as_sym(psi)));
}

SymCochain compose_iota(const CyclicStructure& s, const SymCochain& psi)
{
    WordSpace ws = s.words();
    int dv = s.manifold_dimension - 1;
    Bound b = bound_of(psi);
    Bound ob{b.limit - 1, b.exact};
    SymCochain out = make_sym(psi.arity, ob);
    if (psi.is_zero())
        return out;
    for (const auto& t : normalized_tuples(ws, psi.arity, ob.limit)) {
        Scalar v = 0;
        for (size_t j = 0; j < t.size(); ++j) {
            Sign slot = Sign::parity(long(dv) * (degree_sum(ws, t, j) + s.shift()));
            for (const auto& [u, c] : iota_vol(s, t[j])) {
                Tuple x = t;
                x[j] = u;
                v += slot * c * psi.eval(ws, x);
            }
        }
        if (v != 0)
            out.values[t] = v;
    }
    return out;
}

SymCochain twisted_q1lg_on_unit(const CyclicStructure& s, const MaurerCartanFamily& pmc, int l, int g)
{
    if (!s.unit)
        throw std::invalid_argument("twisted_q1lg_on_unit: no unit");
    for (const auto& [key, c] : pmc.entries) {
        if (key == std::pair(1, 0))
            continue;
        for (const auto& [t, x] : c.values)
            for (const auto& w : t)
                if (x != 0 && contains_unit(s, w))
                    throw std::invalid_argument("twisted_q1lg_on_unit: Maurer-Cartan family is not strictly reduced");
    }
    const SymCochain* p = pmc.find(l, g);
    if (!p) {
        SymCochain z;
        z.arity = l;
        z.weight_bound = kInfiniteWeight;
        return z;
    }
    SymCochain r = compose_iota(s, *p);
    for (auto& [t, x] : r.values)
        x = -x;
    return r;
}

CyclicStructure mu_from_mc(const CyclicStructure& s, const Cochain& pmc10, int max_arity)
{
    if (filtration_degree(pmc10) <= 2)
        throw std::invalid_argument("mu_from_mc: filtration degree of pmc10 must exceed 2");
    if (!is_exact(pmc10) && pmc10.weight_bound < max_arity + 1)
        throw std::invalid_argument("mu_from_mc: pmc10 truncated below the requested arity");
    WordSpace ws = s.words();
    Matrix T = t_tensor(s);
    CyclicStructure out = s;
    out.name = s.name + "_mc";
    MuTable m1 = s.mu.count(1) ? s.mu.at(1) : MuTable{};
    out.mu.clear();
    out.mu[1] = m1;
    Sign pre = Sign::parity(s.manifold_dimension - 3);
    for (const auto& [c, x] : pmc10.values) {
        int k = int(c.size()) - 1;
        if (x == 0 || k < 2 || k > max_arity)
            continue;
        std::set<Word> seen;
        for (const auto& [rot, sg] : rotations(ws, c)) {
            if (!seen.insert(rot).second)
                continue;
            /* pmc10(rot) = sg * x with rot = e_i v_1..v_k */
            int i = rot[0];
            Word v(rot.begin() + 1, rot.end());
            for (int j = 0; j < s.dim(); ++j)
                if (T(i, j) != 0)
                    out.mu[k][v][j] += pre * sg * T(i, j) * x;
        }
    }
    for (auto& [k, table] : out.mu)
        for (auto it = table.begin(); it != table.end();) {
            std::erase_if(it->second, [](const auto& p) { return p.second == 0; });
            it = it->second.empty() ? table.erase(it) : std::next(it);
        }
    for (int k = 2; k <= max_arity; ++k)
        out.mu[k];
    return out;
}

namespace {

class ChainSide
{
public:
    ChainSide(const CyclicStructure& s, Matrix T) : s_(s), ws_(s.words()), T_(std::move(T)) {}

    const SymChain& d(const Word& w)
    {
        auto it = d_.find(w);
        if (it != d_.end())
            return it->second;
        SymChain out;
        for (const auto& [u, c] : cyclic_b1(s_, w))
            ws_.add(out, {u}, c);
        return d_[w] = out;
    }

    const SymChain& delta(const Word& w)
    {
        auto it = delta_.find(w);
        if (it != delta_.end())
            return it->second;
        SymChain out;
        for (const auto& t : coproduct_terms(s_, T_, w))
            ws_.add(out, {t.a, t.b}, t.coef);
        return delta_[w] = out;
    }

    const Chain& mu(const Word& a, const Word& b)
    {
        auto key = std::pair(a, b);
        auto it = mu_.find(key);
        if (it != mu_.end())
            return it->second;
        Chain out;
        for (const auto& t : bracket_terms(s_, T_, a, b))
            ws_.add(out, t.word, t.coef);
        prune(out);
        return mu_[key] = out;
    }

    /* odd operator f: C -> E C extended as a derivation */
    template <class F>
    SymChain derivation(F&& f, const SymChain& x)
    {
        SymChain out;
        for (const auto& [t, c] : x)
            for (size_t i = 0; i < t.size(); ++i) {
                Sign sg = Sign::parity(degree_sum(ws_, t, i));
                for (const auto& [u, cu] : f(t[i])) {
                    Tuple y(t.begin(), t.begin() + i);
                    y.insert(y.end(), u.begin(), u.end());
                    y.insert(y.end(), t.begin() + i + 1, t.end());
                    ws_.add_canonical(out, std::move(y), sg * c * cu);
                }
            }
        return out;
    }

    /* mu applied to every pair of factors, moved to the front */
    SymChain second_order(const SymChain& x)
    {
        SymChain out;
        for (const auto& [t, c] : x)
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j) {
                    long di = ws_.shifted_degree(t[i]), dj = ws_.shifted_degree(t[j]);
                    long e = di * degree_sum(ws_, t, i) + dj * (degree_sum(ws_, t, j) - di);
                    Tuple rest;
                    for (size_t m = 0; m < t.size(); ++m)
                        if (m != i && m != j)
                            rest.push_back(t[m]);
                    for (const auto& [u, cu] : mu(t[i], t[j])) {
                        Tuple y{u};
                        y.insert(y.end(), rest.begin(), rest.end());
                        ws_.add_canonical(out, std::move(y), Sign::parity(e) * c * cu);
                    }
                }
        return out;
    }

    SymChain D(const SymChain& x)
    {
        return derivation([this](const Word& w) { return d(w); }, x);
    }
    SymChain Delta(const SymChain& x)
    {
        return derivation([this](const Word& w) { return delta(w); }, x);
    }
    SymChain Mu(const SymChain& x) { return second_order(x); }

    const WordSpace& ws() const { return ws_; }

private:
    const CyclicStructure& s_;
    WordSpace ws_;
    Matrix T_;
    std::map<Word, SymChain> d_, delta_;
    std::map<std::pair<Word, Word>, Chain> mu_;
};

SymChain plus(SymChain a, const SymChain& b)
{
    add_to(a, b);
    prune(a);
    return a;
}

std::string describe(const Tuple& t)
{
    std::string r = "(";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i)
            r += ", ";
        for (size_t k = 0; k < t[i].size(); ++k)
            r += (k ? "." : "") + std::to_string(t[i][k]);
    }
    return r + ")";
}

}  // namespace

Report ibl_relations_check(const CyclicStructure& s, int max_weight, const std::optional<Matrix>& T)
{
    Report rep;
    if (!s.has_pairing()) {
        rep.fail("no pairing");
        return rep;
    }
    ChainSide ops(s, T ? *T : t_tensor(s));
    const WordSpace& ws = ops.ws();
    struct Relation
    {
        const char* name;
        int arity;
        std::function<SymChain(const SymChain&)> eval;
    };
    std::vector<Relation> rels = {
        {"q110^2 = 0", 1, [&](const SymChain& x) { return ops.D(ops.D(x)); }},
        {"q110 derivation of q210", 1, [&](const SymChain& x) { return plus(ops.D(ops.Delta(x)), ops.Delta(ops.D(x))); }},
        {"Jacobi for q210", 1, [&](const SymChain& x) { return ops.Delta(ops.Delta(x)); }},
        {"involutivity q210 o q120 = 0", 1, [&](const SymChain& x) { return ops.Mu(ops.Delta(x)); }},
        {"q110 coderivation of q120", 2, [&](const SymChain& x) { return plus(ops.D(ops.Mu(x)), ops.Mu(ops.D(x))); }},
        {"Drinfeld compatibility", 2, [&](const SymChain& x) { return plus(ops.Delta(ops.Mu(x)), ops.Mu(ops.Delta(x))); }},
        {"co-Jacobi for q120", 3, [&](const SymChain& x) { return ops.Mu(ops.Mu(x)); }},
    };
    for (const auto& r : rels) {
        int failures = 0;
        for (const auto& t : normalized_tuples(ws, r.arity, max_weight)) {
            SymChain y = r.eval(SymChain{{t, Scalar(1)}});
            prune(y);
            if (!y.empty()) {
                if (failures++ < 3)
                    rep.fail(std::string(r.name) + " fails on " + describe(t) + " -> " + describe(y.begin()->first) +
                             " coefficient " + to_string(y.begin()->second));
            }
        }
    }
    return rep;
}

}  // namespace ibl
