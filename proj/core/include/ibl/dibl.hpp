#pragma once

#include "ibl/algebra.hpp"
#include "ibl/homology.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace ibl {

/* T^{ij} = (-1)^{|e_i|} P(e^i, e^j). */
Matrix t_tensor(const CyclicStructure& s);

/* One summand of the product: coef * psi_1(a) * psi_2(b), with a = e_i w^1 and b = e_j w^2 as plain words. */
struct CoproductTerm
{
    Scalar coef;
    Word a, b;
};
std::vector<CoproductTerm> coproduct_terms(const CyclicStructure& s, const Matrix& T, const Word& w);

/* One summand of the coproduct evaluated on (w1, w2): coef * psi(word). */
struct BracketTerm
{
    Scalar coef;
    Word word;
};
std::vector<BracketTerm> bracket_terms(const CyclicStructure& s, const Matrix& T, const Word& w1, const Word& w2);

/* Largest weight carrying a nonzero value; 0 for the zero cochain. */
int support_weight(const Cochain& psi);
int support_weight(const SymCochain& psi);
bool is_exact(const Cochain& psi);
bool is_exact(const SymCochain& psi);

Cochain exact_cochain(std::map<Word, Scalar> values);
SymCochain as_sym(const Cochain& psi);
Cochain as_cochain(const SymCochain& psi);

/* Normalized tuples of the given arity with total weight <= max_total (all tuples carry sign +1). */
std::vector<Tuple> normalized_tuples(const WordSpace& ws, int arity, int max_total,
                                     const std::function<bool(const Word&)>& include = {});

Cochain q110(const CyclicStructure& s, const Cochain& psi);
Cochain q210(const CyclicStructure& s, const Cochain& psi1, const Cochain& psi2);
Cochain q210(const CyclicStructure& s, const Matrix& T, const Cochain& psi1, const Cochain& psi2);
SymCochain q120(const CyclicStructure& s, const Cochain& psi);
SymCochain q120(const CyclicStructure& s, const Matrix& T, const Cochain& psi);

struct MaurerCartanFamily
{
    std::map<std::pair<int, int>, SymCochain> entries;  // (l, g) -> arity-l cochain
    bool strictly_reduced = false;

    const SymCochain* find(int l, int g) const;
    Cochain pmc10() const;
};

/* m_10(s v1 v2 v3) = (-1)^{n-2} mu_2^+(v1, v2, v3) on weight three. */
MaurerCartanFamily canonical_mc(const CyclicStructure& s);

/* (q210 o_1 pmc)(Psi) for an arity-l entry, by the general reordering-sign formula. */
SymCochain circ1(const CyclicStructure& s, const SymCochain& pmc, const Cochain& psi);
/* l = 1 specialization with the prefactor (-1)^{n-3}. */
Cochain circ1_arity1(const CyclicStructure& s, const Cochain& pmc10, const Cochain& psi);
/* l = 2 specialization with the prefactor (-1)^{(n-3)(|Psi|+1)}, |Psi| the shifted degree. */
SymCochain circ1_arity2(const CyclicStructure& s, const SymCochain& pmc20, const Cochain& psi);

Cochain twisted_q110(const CyclicStructure& s, const MaurerCartanFamily& pmc, const Cochain& psi);
SymCochain twisted_q120(const CyclicStructure& s, const MaurerCartanFamily& pmc, const Cochain& psi);
/* -pmc_lg o iota_w; requires a strictly reduced family and a unit. */
SymCochain twisted_q1lg_on_unit(const CyclicStructure& s, const MaurerCartanFamily& pmc, int l, int g);

/* Chain dual of twisted_q110, for the homology engine. */
DualOperator twisted_q110_dual(const CyclicStructure& s, const MaurerCartanFamily& pmc);

/* The vector w with P(1, w) = 1 and w orthogonal to ker(augmentation), over the basis. */
SparseVec volume_vector(const CyclicStructure& s);
Tensor iota_vol(const CyclicStructure& s, const Word& w);
/* Psi o iota_w on shifted words, including the sign (-1)^{|w||s|} of the shift. */
Cochain compose_iota(const CyclicStructure& s, const Cochain& psi);
SymCochain compose_iota(const CyclicStructure& s, const SymCochain& psi);

/* mu_1 = m_1 and mu_k = (-1)^{n-3} sum T^{ij} pmc10(s e_i v_1..v_k) e_j for 2 <= k <= max_arity. */
CyclicStructure mu_from_mc(const CyclicStructure& s, const Cochain& pmc10, int max_arity);

/* IBL relations of (q110, q210, q120) on all generators of weight <= max_weight, checked on the chain side. */
Report ibl_relations_check(const CyclicStructure& s, int max_weight, const std::optional<Matrix>& T = std::nullopt);

}  // namespace ibl
