#pragma once

#include "ibl/graded.hpp"

#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace ibl {

using Word = std::vector<int>;
using Tuple = std::vector<Word>;

/* word = sign * rep in the cyclic quotient; zero marks an annihilated class. */
struct CyclicWord
{
    Word rep;
    Sign sign;
    bool zero = false;
};

/* Linear combinations. Chain: canonical cyclic words. Tensor: plain words of BV.
   SymChain: canonical sorted tuples in the symmetric power of the shifted cyclic complex. */
using Chain = std::map<Word, Scalar>;
using Tensor = std::map<Word, Scalar>;
using SymChain = std::map<Tuple, Scalar>;

constexpr int kInfiniteWeight = std::numeric_limits<int>::max();

/* Letter degrees in V[1] together with the degree |s| of the suspension used on cyclic words. */
class WordSpace
{
public:
    WordSpace() = default;
    WordSpace(std::vector<int> degrees, int shift) : deg_(std::move(degrees)), shift_(shift) {}

    int letters() const { return int(deg_.size()); }
    int letter_degree(int a) const { return deg_[a]; }
    const std::vector<int>& degrees() const { return deg_; }
    int shift() const { return shift_; }

    int degree(const Word& w) const;
    int shifted_degree(const Word& w) const { return shift_ + degree(w); }
    std::vector<int> letter_degrees(const Word& w) const;

    std::pair<Word, Sign> rotate(const Word& w) const;
    CyclicWord canonicalize(const Word& w) const;
    bool is_canonical(const Word& w) const;

    /* Canonical non-annihilated words of the given weight, in lexicographic order. */
    std::vector<Word> canonical_words(int weight) const;
    std::vector<Word> canonical_words_upto(int max_weight) const;

    void add(Chain& c, const Word& w, const Scalar& coef) const;
    Tensor section_iota(const Word& w) const;
    Chain project(const Tensor& t) const;

    /* Canonical ordering of a tuple of words in the symmetric power; nullopt if it vanishes. */
    std::optional<std::pair<Tuple, Sign>> normalize(const Tuple& t) const;
    void add(SymChain& c, const Tuple& t, const Scalar& coef) const;
    /* As add, for tuples whose words are already canonical and not annihilated. */
    void add_canonical(SymChain& c, Tuple t, const Scalar& coef) const;

    Sign tuple_koszul(const Permutation& perm, const Tuple& t) const;

private:
    std::vector<int> deg_;
    int shift_ = 0;
};

void add_to(Chain& acc, const Chain& x, const Scalar& c = 1);
void add_to(SymChain& acc, const SymChain& x, const Scalar& c = 1);
void prune(Chain& c);
void prune(SymChain& c);

/* Weight-truncated functional on canonical cyclic words (arity 1). */
struct Cochain
{
    int weight_bound = 0;
    std::map<Word, Scalar> values;

    Scalar eval(const WordSpace& ws, const Word& w) const;
    Scalar eval(const Chain& c) const;
    bool is_zero() const;
};

/* Graded-symmetric functional on tuples of shifted cyclic words, stored on normalized tuples. */
struct SymCochain
{
    int arity = 1;
    int weight_bound = 0;
    std::map<Tuple, Scalar> values;

    Scalar eval(const WordSpace& ws, const Tuple& t) const;
    Scalar eval(const SymChain& c) const;
    bool is_zero() const;
};

int total_weight(const Tuple& t);

/* Rem:Identifications evaluation of the symmetrized product psi_1...psi_k on a tuple. */
Scalar pair_product(const WordSpace& ws, const std::vector<const Cochain*>& psis, const Tuple& t);

/* Build the symmetric cochain of the product psi_1...psi_k up to total weight W. */
SymCochain product_cochain(const WordSpace& ws, const std::vector<const Cochain*>& psis, int W);

int filtration_degree(const Cochain& psi);
int filtration_degree(const SymCochain& psi);

/* No long cochains exist on the augmentation kernel iff all its degrees are positive. */
bool completion_needed(const std::vector<int>& reduced_degrees);

}  // namespace ibl
