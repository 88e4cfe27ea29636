#include "ibl/models.hpp"

#include <bit>
#include <random>
#include <stdexcept>

namespace ibl {

namespace {

std::string tensor_label(const ClassicalAlgebra& A, int i, const ClassicalAlgebra& B, int j)
{
    if (i == A.unit)
        return B.labels[j];
    if (j == B.unit)
        return A.labels[i];
    return A.labels[i] + "." + B.labels[j];
}

int uniform(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

ClassicalAlgebra classical_sphere(int n)
{
    if (n < 1)
        throw std::invalid_argument("sphere: n < 1");
    ClassicalAlgebra A;
    A.labels = {"1", "w"};
    A.degrees = {0, n};
    A.product[{0, 0}] = {{0, 1}};
    A.product[{0, 1}] = {{1, 1}};
    A.product[{1, 0}] = {{1, 1}};
    A.integral = {0, 1};
    A.top_degree = n;
    return A;
}

ClassicalAlgebra classical_truncated(int n, int d)
{
    if (n < 1 || d <= 0 || d % 2)
        throw std::invalid_argument("truncated polynomial: need n >= 1 and d even positive");
    ClassicalAlgebra A;
    for (int i = 0; i <= n; ++i) {
        A.labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x" + std::to_string(i));
        A.degrees.push_back(i * d);
    }
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            A.product[{i, j}] = {{i + j, 1}};
    A.integral.assign(n + 1, 0);
    A.integral[n] = 1;
    A.top_degree = n * d;
    return A;
}

ClassicalAlgebra classical_acyclic(int p)
{
    if (p < 1 || p % 2 == 0)
        throw std::invalid_argument("acyclic block: p must be odd positive");
    ClassicalAlgebra A;
    A.labels = {"1", "a", "b", "ab"};
    A.degrees = {0, p, p + 1, 2 * p + 1};
    for (int i = 0; i < 4; ++i) {
        A.product[{0, i}] = {{i, 1}};
        if (i)
            A.product[{i, 0}] = {{i, 1}};
    }
    A.product[{1, 2}] = {{3, 1}};
    A.product[{2, 1}] = {{3, 1}};  // b a = (-1)^{p(p+1)} a b
    A.differential[1] = {{2, 1}};
    A.integral = {0, 0, 0, 1};
    A.top_degree = 2 * p + 1;
    return A;
}

ClassicalAlgebra classical_heisenberg()
{
    /* exterior algebra on x, y, z of degree 1; monomials as bit masks */
    const char* gens = "xyz";
    std::vector<int> masks{0, 1, 2, 4, 3, 5, 6, 7};
    std::map<int, int> index;
    ClassicalAlgebra A;
    for (int i = 0; i < 8; ++i) {
        index[masks[i]] = i;
        std::string l;
        for (int b = 0; b < 3; ++b)
            if (masks[i] >> b & 1)
                l += gens[b];
        A.labels.push_back(l.empty() ? "1" : l);
        A.degrees.push_back(std::popcount(unsigned(masks[i])));
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            int a = masks[i], b = masks[j];
            if (a & b)
                continue;
            int swaps = 0;
            for (int t = 0; t < 3; ++t)
                if (b >> t & 1)
                    swaps += std::popcount(unsigned(a >> (t + 1)));
            A.product[{i, j}] = {{index[a | b], swaps % 2 ? -1 : 1}};
        }
    A.differential[index[4]] = {{index[3], 1}};
    A.integral.assign(8, 0);
    A.integral[7] = 1;
    A.top_degree = 3;
    return A;
}

ClassicalAlgebra tensor(const ClassicalAlgebra& A, const ClassicalAlgebra& B)
{
    ClassicalAlgebra C;
    int nb = B.dim();
    auto idx = [nb](int i, int j) { return i * nb + j; };
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < nb; ++j) {
            C.labels.push_back(tensor_label(A, i, B, j));
            C.degrees.push_back(A.degrees[i] + B.degrees[j]);
        }
    for (const auto& [ik, x] : A.product)
        for (const auto& [jl, y] : B.product) {
            auto [i, k] = ik;
            auto [j, l] = jl;
            Sign sg = Sign::parity(long(B.degrees[j]) * A.degrees[k]);
            SparseVec out;
            for (const auto& [a, ca] : x)
                for (const auto& [b, cb] : y)
                    out[idx(a, b)] += sg * (ca * cb);
            C.product[{idx(i, j), idx(k, l)}] = out;
        }
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < nb; ++j) {
            SparseVec out;
            if (auto it = A.differential.find(i); it != A.differential.end())
                for (const auto& [a, c] : it->second)
                    axpy(out, c, {{idx(a, j), Scalar(1)}});
            if (auto it = B.differential.find(j); it != B.differential.end())
                for (const auto& [b, c] : it->second)
                    axpy(out, Sign::parity(A.degrees[i]) * c, {{idx(i, b), Scalar(1)}});
            if (!out.empty())
                C.differential[idx(i, j)] = out;
        }
    C.integral.assign(C.dim(), 0);
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < nb; ++j)
            C.integral[idx(i, j)] = A.integral[i] * B.integral[j];
    C.top_degree = A.top_degree + B.top_degree;
    C.unit = idx(A.unit, B.unit);
    return C;
}

CyclicStructure shifted_structure(const ClassicalAlgebra& A, const std::string& name)
{
    CyclicStructure s;
    s.name = name;
    s.basis.labels = A.labels;
    for (int d : A.degrees)
        s.basis.degrees.push_back(d - 1);
    s.manifold_dimension = A.top_degree;
    int n = A.dim();
    auto integrate = [&](const SparseVec& x) {
        Scalar t = 0;
        for (const auto& [i, c] : x)
            t += c * A.integral[i];
        return t;
    };
    if (A.bilinear.rows() == n || !A.integral.empty()) {
        s.pairing = Matrix(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Scalar v;
                if (A.bilinear.rows() == n)
                    v = A.bilinear(i, j);
                else if (auto it = A.product.find({i, j}); it != A.product.end())
                    v = integrate(it->second);
                s.pairing(i, j) = Sign::parity(A.degrees[i]) * v;
            }
    }
    for (const auto& [i, x] : A.differential)
        for (const auto& [o, c] : x)
            s.set_mu(1, {i}, o, c);
    for (const auto& [ij, x] : A.product)
        for (const auto& [o, c] : x)
            s.set_mu(2, {ij.first, ij.second}, o, Sign::parity(A.degrees[ij.first]) * c);
    if (!A.product.empty() && A.unit >= 0) {
        s.unit = A.unit;
        std::vector<Scalar> eps(n, 0);
        eps[A.unit] = 1;
        s.augmentation = eps;
    }
    if (!s.mu.count(1))
        s.mu[1];
    if (!A.product.empty() && !s.mu.count(2))
        s.mu[2];
    return s;
}

ModelBundle build_sn(int n, int max_weight)
{
    ModelBundle b;
    b.structure = shifted_structure(classical_sphere(n), "S" + std::to_string(n));
    for (int w = 1; w <= max_weight; ++w) {
        if (n % 2 == 1 || w % 2 == 1)
            b.expected_homology.push_back({w, w * (n - 1), "w^" + std::to_string(w) + "*"});
        if (w % 2 == 1)
            b.expected_homology.push_back({w, -w, "1^" + std::to_string(w) + "*"});
    }
    if (n == 1)
        b.expected_relations.push_back("q210(s1*, s sum c_k w^k*) = -s sum k c_{k+1} w^k*");
    else if (n % 2)
        b.expected_relations.push_back("q210(s1*, s w^k*) = -(k-1) s w^{k-1}*");
    else
        b.expected_relations.push_back("q210 = 0 and q120 = 0 on homology");
    b.expected_relations.push_back("q210(s w^a*, s w^b*) = 0, q120(s w^k*) = 0");
    b.notes = n == 1 ? "reduced cochains may be long; homology in weight w is spanned by w^w*"
                     : "reduced cochains are complete";
    return b;
}

ModelBundle build_cpn(int n, int max_weight)
{
    ModelBundle b;
    ClassicalAlgebra A = classical_truncated(n, 2);
    for (int i = 1; i <= n; ++i)
        A.labels[i] = "e" + std::to_string(i);
    A.labels[0] = "1";
    b.structure = shifted_structure(A, "CP" + std::to_string(n));
    for (int w = 1; w <= max_weight; w += 2) {
        for (int i = 1; i <= n; ++i)
            b.expected_homology.push_back({w, 2 * i + (w - 1) * n - 1,
                                           "t_{" + std::to_string(w) + "," + std::to_string(i) + "}*"});
        b.expected_homology.push_back({w, -w, "1^" + std::to_string(w) + "*"});
    }
    b.expected_relations.push_back("all operations vanish on homology");
    b.notes = "all homology classes have even degree after the (2n-3)-shift";
    return b;
}

CyclicStructure truncated_polynomial(int n, int d)
{
    CyclicStructure s = shifted_structure(classical_truncated(n, d), "trunc" + std::to_string(n) + "_" + std::to_string(d));
    s.pairing = Matrix();
    return s;
}

Scalar S1TwistConfig::at(int k) const
{
    auto it = I.find(k);
    return it == I.end() ? Scalar(0) : it->second;
}

bool S1TwistConfig::valid() const
{
    for (const auto& [k, x] : I)
        if (k < 1 || (k % 2 && x != 0))
            return false;
    return true;
}

MaurerCartanFamily build_s1_pmc(const S1TwistConfig& config, int weight_bound)
{
    if (!config.valid())
        throw std::invalid_argument("build_s1_pmc: I must vanish on odd arguments");
    CyclicStructure s = build_sn(1, 1).structure;
    MaurerCartanFamily f = canonical_mc(s);
    WordSpace ws = s.words();
    auto fact = [](int m) {
        mpz_class r = 1;
        for (int i = 2; i <= m; ++i)
            r *= i;
        return Scalar(r);
    };
    SymCochain p;
    p.arity = 2;
    p.weight_bound = weight_bound;
    for (int a = 1; a < weight_bound; ++a)
        for (int b = a; a + b <= weight_bound; ++b) {
            Scalar v = config.at(a + b) * fact(a + b) * fact(a + b - 1) / (2 * fact(a - 1) * fact(b - 1));
            if (a % 2 == 0)
                v = -v;
            if (v != 0)
                ws.add(p.values, Tuple{Word(a, 1), Word(b, 1)}, v);
        }
    f.entries[{2, 0}] = p;
    return f;
}

Matrix random_graded_basis_change(const CyclicStructure& s, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    int d = s.dim();
    std::map<int, std::vector<int>> groups;
    for (int a = 0; a < d; ++a)
        groups[s.deg(a)].push_back(a);
    Matrix M(d, d);
    for (const auto& [deg, idx] : groups) {
        int k = int(idx.size());
        if (deg == -1) {
            for (int a : idx)
                M(a, a) = 1;
            continue;
        }
        for (int attempt = 0;; ++attempt) {
            Matrix B(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    B(i, j) = uniform(rng, -2, 2);
            if (rank(B) == k) {
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        M(idx[i], idx[j]) = B(i, j);
                break;
            }
            if (attempt > 1000)
                throw std::runtime_error("basis change: no invertible block found");
        }
    }
    return M;
}

CyclicStructure random_cyclic_dga(int max_dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        int blocks = uniform(rng, 1, 3);
        ClassicalAlgebra A;
        bool have = false;
        for (int b = 0; b < blocks; ++b) {
            ClassicalAlgebra B;
            switch (uniform(rng, 0, 2)) {
            case 0: B = classical_sphere(uniform(rng, 1, 4)); break;
            case 1: B = classical_truncated(uniform(rng, 2, 3), 2); break;
            default: B = classical_acyclic(2 * uniform(rng, 0, 1) + 1); break;
            }
            if (!have) {
                A = B;
                have = true;
            }
            else if (A.dim() * B.dim() <= max_dim)
                A = tensor(A, B);
        }
        if (A.dim() > max_dim)
            continue;
        CyclicStructure s = shifted_structure(A, "random" + std::to_string(seed));
        s = change_basis(s, random_graded_basis_change(s, rng()));
        if (check_cyclic_dga(s).ok)
            return s;
    }
    throw std::runtime_error("random_cyclic_dga: generation failed");
}

CyclicStructure random_cyclic_complex(int max_dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    int n = uniform(rng, 1, 5);
    struct Pairing
    {
        int i, j;
    };
    ClassicalAlgebra A;
    std::vector<Pairing> pairs;
    auto add = [&](std::string label, int deg) {
        A.labels.push_back(label + std::to_string(A.dim()));
        A.degrees.push_back(deg);
        return A.dim() - 1;
    };
    int budget = uniform(rng, 1, max_dim);
    while (A.dim() < budget) {
        int room = budget - A.dim();
        if (room >= 4 && uniform(rng, 0, 1)) {
            int p = uniform(rng, -1, n);
            int a = add("a", p), b = add("b", p + 1), a2 = add("c", n - p - 1), b2 = add("d", n - p);
            A.differential[a] = {{b, 1}};
            A.differential[a2] = {{b2, -Scalar(Sign::parity(p).value())}};
            pairs.push_back({b, a2});
            pairs.push_back({a, b2});
        }
        else if (room >= 2) {
            int p = uniform(rng, 0, n);
            int h = add("h", p), h2 = add("k", n - p);
            pairs.push_back({h, h2});
        }
        else
            break;
    }
    if (A.dim() == 0) {
        int h = add("h", 0), h2 = add("k", n);
        pairs.push_back({h, h2});
    }
    int d = A.dim();
    A.bilinear = Matrix(d, d);
    for (const auto& [i, j] : pairs) {
        A.bilinear(i, j) = 1;
        A.bilinear(j, i) = Sign::parity(long(A.degrees[i]) * A.degrees[j]) * Scalar(1);
    }
    A.top_degree = n;
    A.unit = -1;
    CyclicStructure s = shifted_structure(A, "complex" + std::to_string(seed));
    return change_basis(s, random_graded_basis_change(s, rng()));
}

}  // namespace ibl
