#include "ibl/green.hpp"

#include <stdexcept>

namespace ibl {

namespace {

int pairing_parity(const CyclicStructure& s)
{
    return s.manifold_dimension & 1;
}

Matrix block_columns(std::initializer_list<const std::vector<std::vector<Scalar>>*> parts, int rows)
{
    std::vector<std::vector<Scalar>> cols;
    for (const auto* p : parts)
        cols.insert(cols.end(), p->begin(), p->end());
    return from_columns(cols, rows);
}

Matrix stack_rows(const std::vector<std::vector<Scalar>>& rows, int cols)
{
    Matrix m(int(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j)
            m(int(i), j) = rows[i][j];
    return m;
}

std::vector<std::vector<Scalar>> kernel_of(const Matrix& m, int cols)
{
    if (m.rows() == 0) {
        std::vector<std::vector<Scalar>> all;
        for (int j = 0; j < cols; ++j) {
            std::vector<Scalar> e(cols, 0);
            e[j] = 1;
            all.push_back(e);
        }
        return all;
    }
    return kernel_basis(m);
}

void require_pairing(const CyclicStructure& s)
{
    if (!s.has_pairing())
        throw std::invalid_argument("green kernels need a nondegenerate pairing");
}

Report compare(const Matrix& a, const Matrix& b, const std::string& what)
{
    Report r;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) {
                r.fail(what + " differs at (" + std::to_string(i) + ", " + std::to_string(j) + "): " +
                       to_string(a(i, j)) + " vs " + to_string(b(i, j)));
                return r;
            }
    return r;
}

}  // namespace

Matrix extended_pairing(const CyclicStructure& s, int k)
{
    require_pairing(s);
    int d = s.dim();
    int N = 1;
    for (int i = 0; i < k; ++i)
        N *= d;
    Matrix g(N, N);
    std::vector<int> a(k), b(k);
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            for (int i = k - 1, xx = x, yy = y; i >= 0; --i, xx /= d, yy /= d) {
                a[i] = xx % d;
                b[i] = yy % d;
            }
            Scalar v = 1;
            long e = 0;
            for (int i = 0; i < k && v != 0; ++i) {
                v *= s.pairing(a[i], b[i]);
                for (int j = 0; j < i; ++j)
                    e += long(s.deg(a[i])) * s.deg(b[j]);
            }
            g(x, y) = Sign::parity(e) * v;
        }
    return g;
}

LinearOperator identity_operator(const CyclicStructure& s)
{
    return {Matrix::identity(s.dim()), 0};
}

LinearOperator m1_operator(const CyclicStructure& s)
{
    LinearOperator L{Matrix(s.dim(), s.dim()), 1};
    auto it = s.mu.find(1);
    if (it != s.mu.end())
        for (const auto& [in, out] : it->second)
            for (const auto& [j, c] : out)
                L.matrix(j, in[0]) += c;
    return L;
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b)
{
    return {a.matrix * b.matrix, a.degree + b.degree};
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b)
{
    return {a.matrix + b.matrix, a.degree};
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b)
{
    return {a.matrix - b.matrix, a.degree};
}

LinearOperator scaled(const LinearOperator& a, const Scalar& x)
{
    return {a.matrix * x, a.degree};
}

bool is_homogeneous(const CyclicStructure& s, const LinearOperator& L)
{
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j)
            if (L.matrix(i, j) != 0 && s.deg(i) != s.deg(j) + L.degree)
                return false;
    return true;
}

KernelTensor schwartz_kernel(const CyclicStructure& s, const LinearOperator& L)
{
    require_pairing(s);
    Matrix D = dual_basis(s);
    Matrix LD = L.matrix * D;  // column i is L e^i
    int d = s.dim();
    KernelTensor K{Matrix(d, d), L.degree + s.manifold_dimension - 2};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (LD(j, i) != 0)
                K.coeffs(i, j) = Sign::parity(long(L.degree + 1) * (pairing_parity(s) + s.deg(i))) * LD(j, i);
    return K;
}

LinearOperator operator_from_kernel(const CyclicStructure& s, const KernelTensor& K)
{
    require_pairing(s);
    int d = s.dim();
    LinearOperator L{Matrix(d, d), K.degree - s.manifold_dimension + 2};
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) {
            if (s.pairing(i, k) == 0)
                continue;
            for (int j = 0; j < d; ++j)
                if (K.coeffs(i, j) != 0)
                    L.matrix(j, k) += Sign::parity(long(s.deg(j)) * s.deg(k)) * K.coeffs(i, j) * s.pairing(i, k);
        }
    return L;
}

KernelTensor kernel_of_composition(const CyclicStructure& s, const KernelTensor& K1, const KernelTensor& K2)
{
    require_pairing(s);
    int d = s.dim(), p = s.manifold_dimension - 2;
    KernelTensor K{Matrix(d, d), K1.degree + K2.degree - p};
    for (int i = 0; i < d; ++i) {
        long w = p - s.deg(i);
        for (int j = 0; j < d; ++j) {
            if (K2.coeffs(i, j) == 0)
                continue;
            for (int a = 0; a < d; ++a) {
                if (s.pairing(a, j) == 0)
                    continue;
                for (int b = 0; b < d; ++b)
                    if (K1.coeffs(a, b) != 0) {
                        long e = s.deg(j) * w + long(s.deg(b)) * s.deg(j) + s.deg(b) * w;
                        K.coeffs(i, b) += Sign::parity(e) * K2.coeffs(i, j) * K1.coeffs(a, b) * s.pairing(a, j);
                    }
            }
        }
    }
    return K;
}

KernelTensor twist(const CyclicStructure& s, const KernelTensor& K)
{
    int d = s.dim();
    KernelTensor t{Matrix(d, d), K.degree};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            t.coeffs(j, i) = Sign::parity(long(s.deg(i)) * s.deg(j)) * K.coeffs(i, j);
    return t;
}

bool has_twist_symmetry(const CyclicStructure& s, const KernelTensor& K, Sign sign)
{
    KernelTensor t = twist(s, K);
    return t.coeffs == K.coeffs * Scalar(sign.negative() ? -1 : 1);
}

Matrix bilinear_form(const CyclicStructure& s, const LinearOperator& L)
{
    require_pairing(s);
    return L.matrix.transpose() * s.pairing;
}

bool is_antisymmetric(const CyclicStructure& s, const LinearOperator& L)
{
    Matrix f = bilinear_form(s, L);
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j)
            if (f(i, j) != -(Sign::parity(long(s.deg(i)) * s.deg(j)) * f(j, i)))
                return false;
    return true;
}

HarmonicSplitting harmonic_splitting(const CyclicStructure& s)
{
    require_pairing(s);
    int d = s.dim();
    Matrix M = m1_operator(s).matrix;
    HarmonicSplitting sp;
    sp.image = M.is_zero() ? std::vector<std::vector<Scalar>>{} : image_basis(M);
    auto ker = kernel_of(M, d);
    /* H: kernel vectors orthogonal to the image */
    Matrix K = from_columns(ker, d);
    Matrix cond = stack_rows(sp.image, d) * K;
    for (const auto& c : kernel_of(cond, int(ker.size())))
        sp.harmonic.push_back(K * c);
    /* C: orthogonal to the image and P-orthogonal to H */
    std::vector<std::vector<Scalar>> rows = sp.image;
    Matrix Pt = s.pairing.transpose();
    for (const auto& h : sp.harmonic)
        rows.push_back(Pt * h);
    sp.complement = kernel_of(stack_rows(rows, d), d);
    Report r = check_splitting(s, sp);
    if (!r.ok)
        throw std::runtime_error("harmonic splitting failed: " + r.failures.front());
    return sp;
}

Report check_splitting(const CyclicStructure& s, const HarmonicSplitting& sp)
{
    Report r;
    int d = s.dim();
    if (sp.harmonic.size() + sp.image.size() + sp.complement.size() != size_t(d)) {
        r.fail("dimensions do not add up");
        return r;
    }
    if (sp.image.size() != sp.complement.size())
        r.fail("complement and image differ in dimension");
    Matrix B = block_columns({&sp.harmonic, &sp.image, &sp.complement}, d);
    if (rank(B) != d)
        r.fail("subspaces are not independent");
    Matrix M = m1_operator(s).matrix;
    for (const auto& h : sp.harmonic)
        for (const auto& x : M * h)
            if (x != 0) {
                r.fail("m1 does not vanish on H");
                break;
            }
    if (!sp.complement.empty() && rank(M * from_columns(sp.complement, d)) != int(sp.complement.size()))
        r.fail("m1 is not injective on C");
    return r;
}

LinearOperator harmonic_projection(const CyclicStructure& s, const HarmonicSplitting& sp)
{
    int d = s.dim();
    Matrix B = block_columns({&sp.harmonic, &sp.image, &sp.complement}, d);
    auto Binv = inverse(B);
    if (!Binv)
        throw std::invalid_argument("harmonic_projection: inconsistent splitting");
    Matrix P(d, d);
    for (size_t k = 0; k < sp.harmonic.size(); ++k)
        P(int(k), int(k)) = 1;
    return {B * P * *Binv, 0};
}

LinearOperator green_build(const CyclicStructure& s, const HarmonicSplitting& sp)
{
    int d = s.dim();
    Matrix M = m1_operator(s).matrix;
    std::vector<std::vector<Scalar>> y, target, zeros_h(sp.harmonic.size(), std::vector<Scalar>(d, 0)),
        zeros_c(sp.complement.size(), std::vector<Scalar>(d, 0));
    for (const auto& c : sp.complement) {
        y.push_back(M * c);
        std::vector<Scalar> neg = c;
        for (auto& x : neg)
            x = -x;
        target.push_back(neg);
    }
    Matrix src = block_columns({&sp.harmonic, &y, &sp.complement}, d);
    auto inv = inverse(src);
    if (!inv)
        throw std::invalid_argument("green_build: m1 is not injective on the complement");
    Matrix dst = block_columns({&zeros_h, &target, &zeros_c}, d);
    return {dst * *inv, -1};
}

LinearOperator green_symmetrize(const CyclicStructure& s, const LinearOperator& G)
{
    KernelTensor K = schwartz_kernel(s, G);
    KernelTensor t = twist(s, K);
    Scalar sg = (K.degree & 1) ? -1 : 1;
    KernelTensor sym{(K.coeffs + t.coeffs * sg) * Scalar(1, 2), K.degree};
    return operator_from_kernel(s, sym);
}

LinearOperator green_project(const CyclicStructure& s, const LinearOperator& G, const HarmonicSplitting& sp)
{
    LinearOperator q = identity_operator(s) - harmonic_projection(s, sp);
    LinearOperator r = compose(compose(q, G), q);
    r.degree = G.degree;
    return r;
}

LinearOperator green_project(const CyclicStructure& s, const LinearOperator& G)
{
    return green_project(s, G, harmonic_splitting(s));
}

LinearOperator green_gdg(const CyclicStructure& s, const LinearOperator& G)
{
    return scaled(compose(compose(G, m1_operator(s)), G), -1);
}

LinearOperator green_pipeline(const CyclicStructure& s)
{
    HarmonicSplitting sp = harmonic_splitting(s);
    LinearOperator G = green_build(s, sp);
    G = green_symmetrize(s, G);
    G = green_project(s, G, sp);
    return green_gdg(s, G);
}

std::vector<std::pair<std::string, Report>> check_g_properties(const CyclicStructure& s, const LinearOperator& G,
                                                               const HarmonicSplitting& sp)
{
    std::vector<std::pair<std::string, Report>> out;
    LinearOperator m1 = m1_operator(s), pi = harmonic_projection(s, sp), id = identity_operator(s);
    Report g1;
    out.push_back({"G1 (vacuous in finite dimensions)", g1});
    Report g2;
    if (G.degree != -1 || !is_homogeneous(s, G))
        g2.fail("G is not homogeneous of degree -1");
    g2.merge(compare((compose(m1, G) + compose(G, m1)).matrix, (pi - id).matrix, "m1 G + G m1 vs pi_H - Id"));
    out.push_back({"G2", g2});
    Report g3;
    if (!is_antisymmetric(s, G)) {
        Matrix f = bilinear_form(s, G);
        for (int i = 0; i < s.dim() && g3.ok; ++i)
            for (int j = 0; j < s.dim() && g3.ok; ++j)
                if (f(i, j) != -(Sign::parity(long(s.deg(i)) * s.deg(j)) * f(j, i)))
                    g3.fail("P(G e_" + std::to_string(i) + ", e_" + std::to_string(j) + ") = " + to_string(f(i, j)) +
                            " against P(G e_" + std::to_string(j) + ", e_" + std::to_string(i) + ") = " + to_string(f(j, i)));
    }
    out.push_back({"G3", g3});
    Report g4;
    g4.merge(compare(compose(G, pi).matrix, Matrix(s.dim(), s.dim()), "G pi_H"));
    g4.merge(compare(compose(pi, G).matrix, Matrix(s.dim(), s.dim()), "pi_H G"));
    out.push_back({"G4", g4});
    Report g5;
    g5.merge(compare(compose(G, G).matrix, Matrix(s.dim(), s.dim()), "G G"));
    out.push_back({"G5", g5});
    return out;
}

std::vector<std::pair<std::string, Report>> check_g_properties(const CyclicStructure& s, const LinearOperator& G)
{
    return check_g_properties(s, G, harmonic_splitting(s));
}

Report check_green_identities(const CyclicStructure& s, const LinearOperator& G)
{
    LinearOperator m1 = m1_operator(s);
    LinearOperator gmg = compose(compose(G, m1), G);
    Report r = compare(compose(compose(compose(compose(m1, G), G), G), m1).matrix, (G + gmg).matrix,
                       "m1 G G G m1 vs G + G m1 G");
    r.merge(compare(compose(gmg, gmg).matrix, Matrix(s.dim(), s.dim()), "(G m1 G)^2"));
    return r;
}

KernelTensor propagator_from_identity(const CyclicStructure& s)
{
    KernelTensor K = schwartz_kernel(s, identity_operator(s));
    if ((s.manifold_dimension - 2) & 1)
        K.coeffs = K.coeffs * Scalar(-1);
    return K;
}

}  // namespace ibl
