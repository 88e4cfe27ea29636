#pragma once

#include "ibl/graded.hpp"
#include "ibl/linalg.hpp"
#include "ibl/words.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ibl {

/* Structure constants of mu_k: input word -> output vector. */
using MuTable = std::map<Word, SparseVec>;

struct Report
{
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string msg)
    {
        ok = false;
        failures.push_back(std::move(msg));
    }
    void merge(const Report& o)
    {
        for (const auto& f : o.failures)
            fail(f);
    }
};

/* (V, P, mu_1, mu_2, ...) on a basis of V[1]; the pairing may be absent for plain algebras. */
struct CyclicStructure
{
    std::string name;
    GradedBasis basis;
    int manifold_dimension = 0;
    Matrix pairing;  // P(e_i, e_j); 0x0 if absent
    std::map<int, MuTable> mu;
    std::optional<int> unit;
    std::optional<std::vector<Scalar>> augmentation;

    int dim() const { return basis.size(); }
    int deg(int a) const { return basis.degrees[a]; }
    bool has_pairing() const { return pairing.rows() == dim() && dim() > 0; }
    /* |s| on the cyclic cochain complex */
    int shift() const { return manifold_dimension - 3; }
    WordSpace words() const { return WordSpace(basis.degrees, shift()); }
    int max_arity() const { return mu.empty() ? 0 : mu.rbegin()->first; }

    SparseVec apply_mu(int k, const Word& inputs) const;
    void set_mu(int k, const Word& inputs, int output, const Scalar& c);
};

/* Dual basis e^j with P(e_i, e^j) = delta_ij, as columns over the basis. */
Matrix dual_basis(const CyclicStructure& s);

Report check_cyclic_dga(const CyclicStructure& s);
Report check_pairing(const CyclicStructure& s);
Report check_ainfty(const CyclicStructure& s, int max_arity);
Report check_cyclicity(const CyclicStructure& s);
Report check_unit(const CyclicStructure& s);

/* mu_k^+(v_1..v_{k+1}) = P(mu_k(v_1..v_k), v_{k+1}) on basis letters. */
Scalar mu_plus(const CyclicStructure& s, int k, const Word& letters);

/* Full Hochschild differential b = b' + R on a plain word. */
Tensor hochschild_b(const CyclicStructure& s, const Word& w);
Tensor hochschild_b_prime(const CyclicStructure& s, const Word& w);
Tensor apply_linear(const std::function<Tensor(const Word&)>& f, const Tensor& t);
/* b on the cyclic quotient. */
Chain cyclic_b(const CyclicStructure& s, const Word& canonical);
/* Only the m_1 part of b. */
Chain cyclic_b1(const CyclicStructure& s, const Word& canonical);

Cochain dual_b(const CyclicStructure& s, const Cochain& psi);

/* Classical (unshifted) comparison. Letters keep their labels; unshifted degree is |v| + 1. */
Sign classical_shift_sign(const CyclicStructure& s, const Word& w);
Tensor classical_shift_U(const CyclicStructure& s, const Tensor& t);
Tensor classical_shift_U_inverse(const CyclicStructure& s, const Tensor& t);
Tensor classical_b(const CyclicStructure& s, const Word& w);
/* Classical rotation t~ = (-1)^{k-1} times the Koszul rotation in unshifted degrees. */
std::pair<Word, Sign> classical_rotate(const CyclicStructure& s, const Word& w);
CyclicWord classical_canonicalize(const CyclicStructure& s, const Word& w);

bool reduced_membership(const CyclicStructure& s, const Cochain& psi);
Cochain unit_cochain(const CyclicStructure& s, int q, int W);
bool contains_unit(const CyclicStructure& s, const Word& w);

/* Basis change: new basis vectors are the columns of M over the old basis. */
CyclicStructure change_basis(const CyclicStructure& s, const Matrix& M);

}  // namespace ibl
