#pragma once

#include "ibl/algebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ibl {

/* Homogeneous operator on V[1]; column j holds the image of e_j. */
struct LinearOperator
{
    Matrix matrix;
    int degree = 0;
};

/* K = sum K^{ij} e_i (x) e_j in V[1] (x) V[1]. */
struct KernelTensor
{
    Matrix coeffs;
    int degree = 0;
};

/* V[1] = H + Im(m1) + C with m1: C -> Im(m1) invertible; bases as columns over the basis. */
struct HarmonicSplitting
{
    std::vector<std::vector<Scalar>> harmonic, image, complement;
};

/* Gram matrix of the Koszul-signed pairing on V[1]^{(x)k}; basis tensors indexed in base dim, first factor most significant. */
Matrix extended_pairing(const CyclicStructure& s, int k);

LinearOperator identity_operator(const CyclicStructure& s);
LinearOperator m1_operator(const CyclicStructure& s);
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
LinearOperator scaled(const LinearOperator& a, const Scalar& x);
bool is_homogeneous(const CyclicStructure& s, const LinearOperator& L);

/* K^{ij} = (-1)^{(|L|+1)(|P|+|e_i|)} P(L e^i, e^j). */
KernelTensor schwartz_kernel(const CyclicStructure& s, const LinearOperator& L);
/* L(w) = sum (-1)^{|e_j||w|} K^{ij} P(e_i, w) e_j. */
LinearOperator operator_from_kernel(const CyclicStructure& s, const KernelTensor& K);
/* Kernel of L1 o L2 by contracting K2 (x) K1 along the middle pairing. */
KernelTensor kernel_of_composition(const CyclicStructure& s, const KernelTensor& K1, const KernelTensor& K2);
/* tau(v1 (x) v2) = (-1)^{|v1||v2|} v2 (x) v1. */
KernelTensor twist(const CyclicStructure& s, const KernelTensor& K);
/* tau(K) = sign * K. */
bool has_twist_symmetry(const CyclicStructure& s, const KernelTensor& K, Sign sign);

/* L^+(e_i, e_j) = P(L e_i, e_j). */
Matrix bilinear_form(const CyclicStructure& s, const LinearOperator& L);
/* L^+ graded antisymmetric: P(L v1, v2) = -(-1)^{|v1||v2|} P(L v2, v1). */
bool is_antisymmetric(const CyclicStructure& s, const LinearOperator& L);

/* H = ker m1 orthogonal to Im m1 and C = H^{perp P} orthogonal to Im m1, orthogonality in the basis inner product. */
HarmonicSplitting harmonic_splitting(const CyclicStructure& s);
Report check_splitting(const CyclicStructure& s, const HarmonicSplitting& sp);
LinearOperator harmonic_projection(const CyclicStructure& s, const HarmonicSplitting& sp);

/* G = -(m1|_C)^{-1} on Im m1 and 0 on H + C. */
LinearOperator green_build(const CyclicStructure& s, const HarmonicSplitting& sp);
/* Kernel (K + (-1)^{|K|} tau K) / 2. */
LinearOperator green_symmetrize(const CyclicStructure& s, const LinearOperator& G);
/* (Id - pi_H) G (Id - pi_H). */
LinearOperator green_project(const CyclicStructure& s, const LinearOperator& G, const HarmonicSplitting& sp);
LinearOperator green_project(const CyclicStructure& s, const LinearOperator& G);
/* -G m1 G = G - m1 G G G m1. */
LinearOperator green_gdg(const CyclicStructure& s, const LinearOperator& G);
/* build, symmetrize, project, gdg */
LinearOperator green_pipeline(const CyclicStructure& s);

/* (G1) is vacuous here; (G2) m1 G + G m1 = pi_H - Id, (G3) G^+ antisymmetric, (G4) G pi_H = pi_H G = 0, (G5) G G = 0. */
std::vector<std::pair<std::string, Report>> check_g_properties(const CyclicStructure& s, const LinearOperator& G,
                                                               const HarmonicSplitting& sp);
std::vector<std::pair<std::string, Report>> check_g_properties(const CyclicStructure& s, const LinearOperator& G);

/* m1 G G G m1 = G + G m1 G and (G m1 G)^2 = 0, given (G2) and (G4). */
Report check_green_identities(const CyclicStructure& s, const LinearOperator& G);

/* The propagator T and (-1)^{n-2} K_Id agree. */
KernelTensor propagator_from_identity(const CyclicStructure& s);

}  // namespace ibl
