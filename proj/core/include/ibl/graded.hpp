#pragma once

#include "ibl/scalar.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ibl {

/* Basis of V[1]: labels with shifted degrees. */
struct GradedBasis
{
    std::vector<std::string> labels;
    std::vector<int> degrees;

    int size() const { return int(labels.size()); }
    int index_of(const std::string& label) const;  // -1 if absent
    void validate() const;
};

GradedBasis shift_basis(const GradedBasis& basis, int A);

struct HomogeneousVector
{
    std::map<int, Scalar> support;
    int degree = 0;
};

/* images[i] is the output position of input factor i. */
struct Permutation
{
    std::vector<int> images;

    int size() const { return int(images.size()); }
    static Permutation identity(int k);
    /* t_k: v1..vk -> vk v1..v(k-1) */
    static Permutation cyclic(int k);
    Permutation inverse() const;
    /* (this o other)(i) = this(other(i)) */
    Permutation compose(const Permutation& other) const;
    void validate() const;
    bool operator==(const Permutation&) const = default;
};

/* Sign of reordering factors of the given degrees along perm. */
Sign koszul_sign(const Permutation& perm, const std::vector<int>& degrees);

/* Degrees carried to their new positions. */
std::vector<int> permute_degrees(const Permutation& perm, const std::vector<int>& degrees);

std::pair<std::vector<HomogeneousVector>, Sign> permute_tensor(const std::vector<HomogeneousVector>& factors,
                                                               const Permutation& perm);

}  // namespace ibl
