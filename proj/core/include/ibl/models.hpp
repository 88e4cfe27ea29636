#pragma once

#include "ibl/algebra.hpp"
#include "ibl/dibl.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ibl {

/* Graded-commutative algebra in unshifted degrees with an optional integral. */
struct ClassicalAlgebra
{
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::map<std::pair<int, int>, SparseVec> product;
    std::map<int, SparseVec> differential;
    std::vector<Scalar> integral;  // empty if no pairing
    Matrix bilinear;               // explicit int(xy) when there is no product
    int top_degree = 0;
    int unit = 0;

    int dim() const { return int(labels.size()); }
};

ClassicalAlgebra classical_sphere(int n);
ClassicalAlgebra classical_truncated(int n, int d);
/* R[a, b]/(b^2) with b = da, |a| = p odd. */
ClassicalAlgebra classical_acyclic(int p);
/* Nilmanifold model: exterior algebra on x, y, z of degree 1 with dz = xy. */
ClassicalAlgebra classical_heisenberg();
ClassicalAlgebra tensor(const ClassicalAlgebra& A, const ClassicalAlgebra& B);

/* Move to V[1]: m1(v) = s(dv~), m2(v1,v2) = (-1)^{v~1} s(v~1 v~2), P(v1,v2) = (-1)^{v~1} int v~1 v~2. */
CyclicStructure shifted_structure(const ClassicalAlgebra& A, const std::string& name);

struct ExpectedClass
{
    int weight;
    int degree;  // degree of the dual word in V[1]
    std::string description;
};

struct ModelBundle
{
    CyclicStructure structure;
    std::vector<ExpectedClass> expected_homology;  // up to the weight passed to the builder
    std::vector<std::string> expected_relations;
    std::string notes;
};

ModelBundle build_sn(int n, int max_weight = 9);
ModelBundle build_cpn(int n, int max_weight = 9);
CyclicStructure truncated_polynomial(int n, int d);

/* Values I(k) of the circle twist; I vanishes on odd k. */
struct S1TwistConfig
{
    std::map<int, Scalar> I;

    Scalar at(int k) const;
    bool valid() const;
};

/* pmc10 = m10 and pmc20(s w^a, s w^b) = 1/2 (a+b)! I(a+b) (-1)^{a-1} (a+b-1)! / ((a-1)! (b-1)!) for a + b <= W. */
MaurerCartanFamily build_s1_pmc(const S1TwistConfig& config, int weight_bound);

/* Tensor product of random blocks followed by a random degree-preserving basis change fixing the unit. */
CyclicStructure random_cyclic_dga(int max_dim, std::uint64_t seed);

/* Cyclic cochain complex (no product): harmonic pairs plus acyclic quadruples, randomly re-based. */
CyclicStructure random_cyclic_complex(int max_dim, std::uint64_t seed);

/* Random invertible degree-preserving matrix; letters of degree -1 are fixed. */
Matrix random_graded_basis_change(const CyclicStructure& s, std::uint64_t seed);

}  // namespace ibl
