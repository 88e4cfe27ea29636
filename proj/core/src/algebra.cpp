#include "ibl/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace ibl {

namespace {

std::string show(const CyclicStructure& s, const Word& w)
{
    std::string r = "(";
    for (size_t i = 0; i < w.size(); ++i)
        r += (i ? "," : "") + s.basis.labels[w[i]];
    return r + ")";
}

void all_words(int dim, int k, const std::function<void(const Word&)>& f)
{
    if (dim == 0)
        return;
    Word w(k, 0);
    while (true) {
        f(w);
        int i = k - 1;
        while (i >= 0 && w[i] == dim - 1)
            w[i--] = 0;
        if (i < 0)
            return;
        ++w[i];
    }
}

void add_term(Tensor& t, const Word& w, const Scalar& c)
{
    if (c == 0)
        return;
    Scalar& slot = t[w];
    slot += c;
    if (slot == 0)
        t.erase(w);
}

}  // namespace

SparseVec CyclicStructure::apply_mu(int k, const Word& inputs) const
{
    auto it = mu.find(k);
    if (it == mu.end())
        return {};
    auto jt = it->second.find(inputs);
    return jt == it->second.end() ? SparseVec{} : jt->second;
}

void CyclicStructure::set_mu(int k, const Word& inputs, int output, const Scalar& c)
{
    if (c == 0)
        return;
    auto& v = mu[k][inputs];
    v[output] += c;
    if (v[output] == 0)
        v.erase(output);
    if (v.empty())
        mu[k].erase(inputs);
}

Matrix dual_basis(const CyclicStructure& s)
{
    if (!s.has_pairing())
        throw std::invalid_argument("dual basis: no pairing");
    auto inv = inverse(s.pairing);
    if (!inv)
        throw std::invalid_argument("dual basis: degenerate pairing");
    return *inv;
}

Report check_pairing(const CyclicStructure& s)
{
    Report r;
    if (!s.has_pairing()) {
        r.fail("pairing absent");
        return r;
    }
    if (!inverse(s.pairing))
        r.fail("pairing degenerate");
    int n = s.manifold_dimension;
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j) {
            const Scalar& p = s.pairing(i, j);
            Scalar q = Sign::parity(1 + long(s.deg(i)) * s.deg(j)) * s.pairing(j, i);
            if (p != q)
                r.fail("antisymmetry fails at " + show(s, {i, j}));
            if (p != 0 && s.deg(i) + s.deg(j) != n - 2)
                r.fail("pairing degree fails at " + show(s, {i, j}));
        }
    return r;
}

static Report check_degrees(const CyclicStructure& s)
{
    Report r;
    for (const auto& [k, table] : s.mu)
        for (const auto& [in, out] : table) {
            int d = 1;
            for (int a : in)
                d += s.deg(a);
            for (const auto& [o, c] : out)
                if (c != 0 && s.deg(o) != d)
                    r.fail("mu_" + std::to_string(k) + " not of degree 1 at " + show(s, in));
        }
    return r;
}

Report check_ainfty(const CyclicStructure& s, int max_arity)
{
    Report r = check_degrees(s);
    int top = s.max_arity();
    for (int k = 1; k <= max_arity; ++k) {
        all_words(s.dim(), k, [&](const Word& v) {
            SparseVec total;
            for (int k2 = 1; k2 <= k && k2 <= top; ++k2) {
                int k1 = k + 1 - k2;
                if (!s.mu.count(k1) || !s.mu.count(k2))
                    continue;
                int prefix = 0;
                for (int p = 0; p + k2 <= k; ++p) {
                    if (p > 0)
                        prefix += s.deg(v[p - 1]);
                    Word inner(v.begin() + p, v.begin() + p + k2);
                    SparseVec m = s.apply_mu(k2, inner);
                    for (const auto& [x, c] : m) {
                        Word outer(v.begin(), v.begin() + p);
                        outer.push_back(x);
                        outer.insert(outer.end(), v.begin() + p + k2, v.end());
                        axpy(total, Sign::parity(prefix) * c, s.apply_mu(k1, outer));
                    }
                }
            }
            if (!total.empty())
                r.fail("A-infinity relation fails in arity " + std::to_string(k) + " at " + show(s, v));
        });
    }
    return r;
}

Scalar mu_plus(const CyclicStructure& s, int k, const Word& letters)
{
    if (!s.mu.count(k))
        throw std::invalid_argument("mu_plus: mu_" + std::to_string(k) + " absent");
    Word in(letters.begin(), letters.end() - 1);
    Scalar r = 0;
    for (const auto& [x, c] : s.apply_mu(k, in))
        r += c * s.pairing(x, letters.back());
    return r;
}

Report check_cyclicity(const CyclicStructure& s)
{
    Report r;
    if (!s.has_pairing())
        return r;
    WordSpace ws = s.words();
    for (const auto& [k, table] : s.mu)
        all_words(s.dim(), k + 1, [&](const Word& v) {
            auto [t, sg] = ws.rotate(v);
            if (mu_plus(s, k, v) != sg * mu_plus(s, k, t))
                r.fail("mu_" + std::to_string(k) + "^+ not cyclic at " + show(s, v));
        });
    return r;
}

Report check_unit(const CyclicStructure& s)
{
    Report r;
    if (!s.unit)
        return r;
    int u = *s.unit;
    if (s.deg(u) != -1)
        r.fail("unit not of degree -1");
    for (int v = 0; v < s.dim(); ++v) {
        SparseVec e{{v, Scalar(1)}};
        if (s.apply_mu(2, {u, v}) != e)
            r.fail("mu_2(1,v) != v at " + show(s, {v}));
        SparseVec right;
        axpy(right, Scalar(Sign::parity(s.deg(v) + 1).value()), s.apply_mu(2, {v, u}));
        if (right != e)
            r.fail("(-1)^{|v|+1} mu_2(v,1) != v at " + show(s, {v}));
    }
    for (const auto& [k, table] : s.mu) {
        if (k == 2)
            continue;
        for (const auto& [in, out] : table)
            for (int a : in)
                if (a == u && !out.empty())
                    r.fail("mu_" + std::to_string(k) + " does not vanish on unit at " + show(s, in));
    }
    if (s.augmentation) {
        const auto& eps = *s.augmentation;
        auto ev = [&](const SparseVec& x) {
            Scalar t = 0;
            for (const auto& [i, c] : x)
                t += c * eps[i];
            return t;
        };
        if (eps[u] != 1)
            r.fail("augmentation(1) != 1");
        for (int v = 0; v < s.dim(); ++v)
            if (ev(s.apply_mu(1, {v})) != 0)
                r.fail("augmentation o mu_1 != 0 at " + show(s, {v}));
        for (int a = 0; a < s.dim(); ++a)
            for (int b = 0; b < s.dim(); ++b)
                if (ev(s.apply_mu(2, {a, b})) != eps[a] * eps[b])
                    r.fail("augmentation not multiplicative at " + show(s, {a, b}));
    }
    return r;
}

Report check_cyclic_dga(const CyclicStructure& s)
{
    Report r = check_pairing(s);
    if (!s.mu.count(1) && !s.mu.count(2) && s.max_arity() > 2)
        r.fail("not a dga");
    for (const auto& [k, t] : s.mu)
        if (k > 2 && !t.empty())
            r.fail("higher product present in a dga");
    r.merge(check_ainfty(s, 3));
    r.merge(check_cyclicity(s));
    r.merge(check_unit(s));
    return r;
}

static std::pair<Word, Sign> rotate_inverse(const WordSpace& ws, const Word& w)
{
    if (w.size() <= 1)
        return {w, Sign()};
    Word r(w.begin() + 1, w.end());
    r.push_back(w.front());
    return {r, ws.rotate(r).second};
}

Tensor hochschild_b_prime(const CyclicStructure& s, const Word& w)
{
    WordSpace ws = s.words();
    Tensor t;
    int k = int(w.size());
    for (const auto& [j, table] : s.mu) {
        if (j > k || table.empty())
            continue;
        Word u = w;
        Sign su;
        for (int i = 0; i <= k - j; ++i) {
            if (i > 0) {
                auto [nu, sg] = rotate_inverse(ws, u);
                u = std::move(nu);
                su *= sg;
            }
            Word in(u.begin(), u.begin() + j);
            for (const auto& [x, c] : s.apply_mu(j, in)) {
                Word out{x};
                out.insert(out.end(), u.begin() + j, u.end());
                Sign so = su;
                for (int r = 0; r < i; ++r) {
                    auto [no, sg] = ws.rotate(out);
                    out = std::move(no);
                    so *= sg;
                }
                add_term(t, out, so * c);
            }
        }
    }
    return t;
}

Tensor hochschild_b(const CyclicStructure& s, const Word& w)
{
    WordSpace ws = s.words();
    Tensor t = hochschild_b_prime(s, w);
    int k = int(w.size());
    for (const auto& [j, table] : s.mu) {
        if (j < 2 || j > k || table.empty())
            continue;
        Word u = w;
        Sign su;
        for (int i = 1; i <= j - 1; ++i) {
            auto [nu, sg] = ws.rotate(u);
            u = std::move(nu);
            su *= sg;
            Word in(u.begin(), u.begin() + j);
            for (const auto& [x, c] : s.apply_mu(j, in)) {
                Word out{x};
                out.insert(out.end(), u.begin() + j, u.end());
                add_term(t, out, su * c);
            }
        }
    }
    return t;
}

Tensor apply_linear(const std::function<Tensor(const Word&)>& f, const Tensor& t)
{
    Tensor r;
    for (const auto& [w, c] : t)
        for (const auto& [u, x] : f(w))
            add_term(r, u, c * x);
    return r;
}

Chain cyclic_b(const CyclicStructure& s, const Word& canonical)
{
    return s.words().project(hochschild_b(s, canonical));
}

Chain cyclic_b1(const CyclicStructure& s, const Word& canonical)
{
    WordSpace ws = s.words();
    Chain c;
    int prefix = 0;
    for (size_t i = 0; i < canonical.size(); ++i) {
        for (const auto& [x, v] : s.apply_mu(1, {canonical[i]})) {
            Word out = canonical;
            out[i] = x;
            ws.add(c, out, Sign::parity(prefix) * v);
        }
        prefix += s.deg(canonical[i]);
    }
    return c;
}

Cochain dual_b(const CyclicStructure& s, const Cochain& psi)
{
    WordSpace ws = s.words();
    Cochain out;
    out.weight_bound = psi.weight_bound;
    for (const auto& w : ws.canonical_words_upto(psi.weight_bound)) {
        Scalar v = psi.eval(cyclic_b(s, w));
        if (v != 0)
            out.values[w] = v;
    }
    return out;
}

Sign classical_shift_sign(const CyclicStructure& s, const Word& w)
{
    long e = 0;
    int k = int(w.size());
    for (int j = 1; j <= k; ++j)
        e += long(k - j) * (s.deg(w[j - 1]) + 1);
    return Sign::parity(e);
}

Tensor classical_shift_U(const CyclicStructure& s, const Tensor& t)
{
    Tensor r;
    for (const auto& [w, c] : t)
        add_term(r, w, classical_shift_sign(s, w) * c);
    return r;
}

Tensor classical_shift_U_inverse(const CyclicStructure& s, const Tensor& t)
{
    return classical_shift_U(s, t);
}

Tensor classical_b(const CyclicStructure& s, const Word& w)
{
    for (const auto& [k, t] : s.mu)
        if (k > 2 && !t.empty())
            throw std::invalid_argument("classical complex needs a dga");
    auto ud = [&](int a) { return s.deg(a) + 1; };
    Tensor t;
    int k = int(w.size());
    /* b~ */
    for (int i = 0; i + 1 < k; ++i)
        for (const auto& [x, c] : s.apply_mu(2, {w[i], w[i + 1]})) {
            Word out(w.begin(), w.begin() + i);
            out.push_back(x);
            out.insert(out.end(), w.begin() + i + 2, w.end());
            add_term(t, out, Sign::parity(i + ud(w[i])) * c);
        }
    if (k >= 2) {
        long rest = 0;
        for (int i = 0; i + 1 < k; ++i)
            rest += ud(w[i]);
        Sign sg = Sign::parity(k - 1 + ud(w[k - 1]) * rest + ud(w[k - 1]));
        for (const auto& [x, c] : s.apply_mu(2, {w[k - 1], w[0]})) {
            Word out{x};
            out.insert(out.end(), w.begin() + 1, w.end() - 1);
            add_term(t, out, sg * c);
        }
    }
    /* (-1)^{k+1} delta~ */
    long prefix = 0;
    for (int i = 0; i < k; ++i) {
        for (const auto& [x, c] : s.apply_mu(1, {w[i]})) {
            Word out = w;
            out[i] = x;
            add_term(t, out, Sign::parity(k + 1 + prefix) * c);
        }
        prefix += ud(w[i]);
    }
    return t;
}

std::pair<Word, Sign> classical_rotate(const CyclicStructure& s, const Word& w)
{
    int k = int(w.size());
    if (k <= 1)
        return {w, Sign()};
    long rest = 0;
    for (int i = 0; i + 1 < k; ++i)
        rest += s.deg(w[i]) + 1;
    Word r{w.back()};
    r.insert(r.end(), w.begin(), w.end() - 1);
    return {r, Sign::parity(k - 1 + long(s.deg(w.back()) + 1) * rest)};
}

CyclicWord classical_canonicalize(const CyclicStructure& s, const Word& w)
{
    CyclicWord out{w, Sign(), false};
    Word cur = w;
    Sign sg;
    for (size_t r = 1; r < w.size(); ++r) {
        auto [next, sr] = classical_rotate(s, cur);
        cur = std::move(next);
        sg *= sr;
        if (cur == w && sg.negative())
            out.zero = true;
        if (cur < out.rep) {
            out.rep = cur;
            out.sign = sg;
        }
    }
    return out;
}

bool contains_unit(const CyclicStructure& s, const Word& w)
{
    if (!s.unit)
        return false;
    for (int a : w)
        if (a == *s.unit)
            return true;
    return false;
}

bool reduced_membership(const CyclicStructure& s, const Cochain& psi)
{
    if (!s.unit)
        throw std::invalid_argument("reduced_membership: no unit");
    for (const auto& [w, c] : psi.values)
        if (c != 0 && contains_unit(s, w))
            return false;
    return true;
}

Cochain unit_cochain(const CyclicStructure& s, int q, int W)
{
    if (!s.unit)
        throw std::invalid_argument("unit_cochain: no unit");
    std::vector<Scalar> eps(s.dim(), 0);
    if (s.augmentation)
        eps = *s.augmentation;
    else
        eps[*s.unit] = 1;
    Cochain c;
    c.weight_bound = W;
    if (q > W)
        return c;
    for (const auto& w : s.words().canonical_words(q)) {
        Scalar v = 1;
        for (int a : w)
            v *= eps[a];
        if (v != 0)
            c.values[w] = v;
    }
    return c;
}

CyclicStructure change_basis(const CyclicStructure& s, const Matrix& M)
{
    auto Minv = inverse(M);
    if (!Minv)
        throw std::invalid_argument("change_basis: singular matrix");
    int d = s.dim();
    CyclicStructure r = s;
    r.mu.clear();
    for (int a = 0; a < d; ++a) {
        int deg = 0;
        bool seen = false;
        for (int i = 0; i < d; ++i)
            if (M(i, a) != 0) {
                if (seen && s.deg(i) != deg)
                    throw std::invalid_argument("change_basis: inhomogeneous column");
                deg = s.deg(i);
                seen = true;
            }
        r.basis.degrees[a] = deg;
    }
    if (s.has_pairing())
        r.pairing = M.transpose() * s.pairing * M;
    for (const auto& [k, table] : s.mu) {
        all_words(d, k, [&](const Word& in) {
            /* expand every new input into old basis words */
            std::map<Word, Scalar> expanded{{Word{}, Scalar(1)}};
            for (int a : in) {
                std::map<Word, Scalar> next;
                for (const auto& [w, c] : expanded)
                    for (int i = 0; i < d; ++i)
                        if (M(i, a) != 0) {
                            Word w2 = w;
                            w2.push_back(i);
                            next[w2] += c * M(i, a);
                        }
                expanded = std::move(next);
            }
            SparseVec old;
            for (const auto& [w, c] : expanded)
                axpy(old, c, s.apply_mu(k, w));
            for (int b = 0; b < d; ++b) {
                Scalar v = 0;
                for (const auto& [i, c] : old)
                    v += (*Minv)(b, i) * c;
                r.set_mu(k, in, b, v);
            }
        });
    }
    if (s.unit) {
        r.unit.reset();
        for (int a = 0; a < d; ++a) {
            bool match = true;
            for (int i = 0; i < d; ++i)
                if (M(i, a) != (i == *s.unit ? 1 : 0))
                    match = false;
            if (match)
                r.unit = a;
        }
    }
    if (s.augmentation) {
        std::vector<Scalar> e(d, 0);
        for (int a = 0; a < d; ++a)
            for (int i = 0; i < d; ++i)
                e[a] += M(i, a) * (*s.augmentation)[i];
        r.augmentation = e;
    }
    return r;
}

}  // namespace ibl
