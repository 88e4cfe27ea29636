#include "ibl/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ibl {

int WordSpace::degree(const Word& w) const
{
    int d = 0;
    for (int a : w)
        d += deg_[a];
    return d;
}

std::vector<int> WordSpace::letter_degrees(const Word& w) const
{
    std::vector<int> r;
    r.reserve(w.size());
    for (int a : w)
        r.push_back(deg_[a]);
    return r;
}

std::pair<Word, Sign> WordSpace::rotate(const Word& w) const
{
    if (w.size() <= 1)
        return {w, Sign()};
    Word r;
    r.reserve(w.size());
    r.push_back(w.back());
    r.insert(r.end(), w.begin(), w.end() - 1);
    int last = deg_[w.back()];
    int rest = degree(w) - last;
    return {r, Sign::parity(long(last) * rest)};
}

CyclicWord WordSpace::canonicalize(const Word& w) const
{
    if (w.empty())
        throw std::invalid_argument("canonicalize: empty word");
    const size_t k = w.size();
    int total = degree(w);
    auto less_at = [&](size_t a, size_t b) {
        for (size_t i = 0; i < k; ++i) {
            int x = w[(a + i) % k], y = w[(b + i) % k];
            if (x != y)
                return x < y;
        }
        return false;
    };
    size_t best = 0;
    long par = 0, best_par = 0;
    bool zero = false;
    for (size_t r = 1; r < k; ++r) {
        size_t st = k - r;
        int last = deg_[w[st]];
        par += long(last) * (total - last);
        if ((par & 1) && !less_at(st, 0) && !less_at(0, st))
            zero = true;
        if (less_at(st, best)) {
            best = st;
            best_par = par;
        }
    }
    CyclicWord out{Word(), Sign::parity(best_par), zero};
    out.rep.reserve(k);
    for (size_t i = 0; i < k; ++i)
        out.rep.push_back(w[(best + i) % k]);
    return out;
}

bool WordSpace::is_canonical(const Word& w) const
{
    auto c = canonicalize(w);
    return !c.zero && c.rep == w;
}

std::vector<Word> WordSpace::canonical_words(int weight) const
{
    std::vector<Word> out;
    if (weight < 1 || letters() == 0)
        return out;
    Word w(weight, 0);
    while (true) {
        /* necklace pre-check: w must not exceed any rotation lexicographically */
        bool minimal = true;
        for (int r = 1; r < weight && minimal; ++r)
            for (int i = 0; i < weight; ++i) {
                int a = w[(i + r) % weight], b = w[i];
                if (a != b) {
                    if (a < b)
                        minimal = false;
                    break;
                }
            }
        if (minimal && !canonicalize(w).zero)
            out.push_back(w);
        int i = weight - 1;
        while (i >= 0 && w[i] == letters() - 1)
            w[i--] = 0;
        if (i < 0)
            break;
        ++w[i];
    }
    return out;
}

std::vector<Word> WordSpace::canonical_words_upto(int max_weight) const
{
    std::vector<Word> out;
    for (int k = 1; k <= max_weight; ++k) {
        auto ws = canonical_words(k);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

void WordSpace::add(Chain& c, const Word& w, const Scalar& coef) const
{
    if (coef == 0)
        return;
    auto cw = canonicalize(w);
    if (cw.zero)
        return;
    Scalar& slot = c[cw.rep];
    slot += cw.sign * coef;
    if (slot == 0)
        c.erase(cw.rep);
}

Tensor WordSpace::section_iota(const Word& w) const
{
    if (canonicalize(w).zero)
        throw std::invalid_argument("section_iota: annihilated word");
    Tensor t;
    Word cur = w;
    Sign s;
    Scalar inv(1, int(w.size()));
    for (size_t i = 0; i < w.size(); ++i) {
        t[cur] += s * inv;
        auto [next, sr] = rotate(cur);
        cur = std::move(next);
        s *= sr;
    }
    for (auto it = t.begin(); it != t.end();)
        it = it->second == 0 ? t.erase(it) : std::next(it);
    return t;
}

Chain WordSpace::project(const Tensor& t) const
{
    Chain c;
    for (const auto& [w, x] : t)
        add(c, w, x);
    return c;
}

static bool word_less(const Word& a, const Word& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

std::optional<std::pair<Tuple, Sign>> WordSpace::normalize(const Tuple& t) const
{
    Tuple r;
    r.reserve(t.size());
    Sign s;
    for (const auto& w : t) {
        auto cw = canonicalize(w);
        if (cw.zero)
            return std::nullopt;
        s *= cw.sign;
        r.push_back(std::move(cw.rep));
    }
    for (size_t i = 1; i < r.size(); ++i)
        for (size_t j = i; j > 0 && word_less(r[j], r[j - 1]); --j) {
            s *= Sign::parity(long(shifted_degree(r[j])) * shifted_degree(r[j - 1]));
            std::swap(r[j], r[j - 1]);
        }
    for (size_t i = 1; i < r.size(); ++i)
        if (r[i] == r[i - 1] && (shifted_degree(r[i]) & 1))
            return std::nullopt;
    return std::make_pair(std::move(r), s);
}

void WordSpace::add_canonical(SymChain& c, Tuple t, const Scalar& coef) const
{
    if (coef == 0)
        return;
    Sign s;
    for (size_t i = 1; i < t.size(); ++i)
        for (size_t j = i; j > 0 && word_less(t[j], t[j - 1]); --j) {
            s *= Sign::parity(long(shifted_degree(t[j])) * shifted_degree(t[j - 1]));
            std::swap(t[j], t[j - 1]);
        }
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1] && (shifted_degree(t[i]) & 1))
            return;
    auto [it, fresh] = c.try_emplace(std::move(t), 0);
    if (s.negative())
        it->second -= coef;
    else
        it->second += coef;
    if (it->second == 0)
        c.erase(it);
}

void WordSpace::add(SymChain& c, const Tuple& t, const Scalar& coef) const
{
    if (coef == 0)
        return;
    auto n = normalize(t);
    if (!n)
        return;
    Scalar& slot = c[n->first];
    slot += n->second * coef;
    if (slot == 0)
        c.erase(n->first);
}

Sign WordSpace::tuple_koszul(const Permutation& perm, const Tuple& t) const
{
    std::vector<int> d;
    for (const auto& w : t)
        d.push_back(shifted_degree(w));
    return koszul_sign(perm, d);
}

void add_to(Chain& acc, const Chain& x, const Scalar& c)
{
    for (const auto& [w, v] : x) {
        Scalar& slot = acc[w];
        slot += c * v;
        if (slot == 0)
            acc.erase(w);
    }
}

void add_to(SymChain& acc, const SymChain& x, const Scalar& c)
{
    for (const auto& [w, v] : x) {
        Scalar& slot = acc[w];
        slot += c * v;
        if (slot == 0)
            acc.erase(w);
    }
}

void prune(Chain& c)
{
    std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
}

void prune(SymChain& c)
{
    std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
}

Scalar Cochain::eval(const WordSpace& ws, const Word& w) const
{
    if (int(w.size()) > weight_bound)
        throw std::out_of_range("cochain evaluated above its weight bound");
    auto cw = ws.canonicalize(w);
    if (cw.zero)
        return 0;
    auto it = values.find(cw.rep);
    return it == values.end() ? Scalar(0) : cw.sign * it->second;
}

Scalar Cochain::eval(const Chain& c) const
{
    Scalar r = 0;
    for (const auto& [w, x] : c) {
        if (int(w.size()) > weight_bound)
            throw std::out_of_range("cochain evaluated above its weight bound");
        auto it = values.find(w);
        if (it != values.end())
            r += x * it->second;
    }
    return r;
}

bool Cochain::is_zero() const
{
    for (const auto& [w, x] : values)
        if (x != 0)
            return false;
    return true;
}

int total_weight(const Tuple& t)
{
    int k = 0;
    for (const auto& w : t)
        k += int(w.size());
    return k;
}

Scalar SymCochain::eval(const WordSpace& ws, const Tuple& t) const
{
    if (int(t.size()) != arity)
        throw std::invalid_argument("cochain arity mismatch");
    if (total_weight(t) > weight_bound)
        throw std::out_of_range("cochain evaluated above its weight bound");
    auto n = ws.normalize(t);
    if (!n)
        return 0;
    auto it = values.find(n->first);
    return it == values.end() ? Scalar(0) : n->second * it->second;
}

Scalar SymCochain::eval(const SymChain& c) const
{
    Scalar r = 0;
    for (const auto& [t, x] : c) {
        if (total_weight(t) > weight_bound)
            throw std::out_of_range("cochain evaluated above its weight bound");
        auto it = values.find(t);
        if (it != values.end())
            r += x * it->second;
    }
    return r;
}

bool SymCochain::is_zero() const
{
    for (const auto& [t, x] : values)
        if (x != 0)
            return false;
    return true;
}

Scalar pair_product(const WordSpace& ws, const std::vector<const Cochain*>& psis, const Tuple& t)
{
    int k = int(t.size());
    if (int(psis.size()) != k)
        throw std::invalid_argument("pair_product: arity mismatch");
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    Scalar sum = 0;
    do {
        /* order[i] is the tuple slot fed into psi_i */
        Permutation p;
        p.images.resize(k);
        for (int i = 0; i < k; ++i)
            p.images[order[i]] = i;
        Scalar term = 1;
        for (int i = 0; i < k && term != 0; ++i)
            term *= psis[i]->eval(ws, t[order[i]]);
        if (term != 0)
            sum += ws.tuple_koszul(p, t) * term;
    } while (std::next_permutation(order.begin(), order.end()));
    return sum / factorial(k);
}

SymCochain product_cochain(const WordSpace& ws, const std::vector<const Cochain*>& psis, int W)
{
    SymCochain out;
    out.arity = int(psis.size());
    out.weight_bound = W;
    std::vector<std::vector<Word>> supports;
    for (auto* p : psis) {
        std::vector<Word> s;
        for (const auto& [w, x] : p->values)
            if (x != 0)
                s.push_back(w);
        supports.push_back(s);
    }
    std::vector<size_t> idx(psis.size(), 0);
    for (auto& s : supports)
        if (s.empty())
            return out;
    while (true) {
        Tuple t;
        for (size_t i = 0; i < idx.size(); ++i)
            t.push_back(supports[i][idx[i]]);
        if (total_weight(t) <= W) {
            auto n = ws.normalize(t);
            if (n && !out.values.count(n->first)) {
                Scalar v = pair_product(ws, psis, n->first);
                if (v != 0)
                    out.values[n->first] = v;
            }
        }
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == supports[i].size())
            idx[i++] = 0;
        if (i == idx.size())
            break;
    }
    return out;
}

int filtration_degree(const Cochain& psi)
{
    int m = kInfiniteWeight;
    for (const auto& [w, x] : psi.values)
        if (x != 0)
            m = std::min(m, int(w.size()));
    return m;
}

int filtration_degree(const SymCochain& psi)
{
    int m = kInfiniteWeight;
    for (const auto& [t, x] : psi.values)
        if (x != 0)
            m = std::min(m, total_weight(t));
    return m;
}

bool completion_needed(const std::vector<int>& reduced_degrees)
{
    for (int d : reduced_degrees)
        if (d <= 0)
            return true;
    return false;
}

}  // namespace ibl
