#include "ibl/graded.hpp"

#include <set>
#include <stdexcept>

namespace ibl {

int GradedBasis::index_of(const std::string& label) const
{
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label)
            return i;
    return -1;
}

void GradedBasis::validate() const
{
    if (labels.size() != degrees.size())
        throw std::invalid_argument("basis: label and degree lists differ in length");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
        throw std::invalid_argument("basis: duplicate labels");
}

GradedBasis shift_basis(const GradedBasis& basis, int A)
{
    GradedBasis r = basis;
    for (auto& d : r.degrees)
        d -= A;
    return r;
}

Permutation Permutation::identity(int k)
{
    Permutation p;
    for (int i = 0; i < k; ++i)
        p.images.push_back(i);
    return p;
}

Permutation Permutation::cyclic(int k)
{
    Permutation p;
    for (int i = 0; i < k; ++i)
        p.images.push_back((i + 1) % k);
    return p;
}

Permutation Permutation::inverse() const
{
    Permutation p;
    p.images.resize(images.size());
    for (int i = 0; i < size(); ++i)
        p.images[images[i]] = i;
    return p;
}

Permutation Permutation::compose(const Permutation& other) const
{
    if (other.size() != size())
        throw std::invalid_argument("compose: size mismatch");
    Permutation p;
    p.images.resize(images.size());
    for (int i = 0; i < size(); ++i)
        p.images[i] = images[other.images[i]];
    return p;
}

void Permutation::validate() const
{
    std::vector<bool> hit(images.size(), false);
    for (int x : images) {
        if (x < 0 || x >= size() || hit[x])
            throw std::invalid_argument("permutation: not a bijection");
        hit[x] = true;
    }
}

Sign koszul_sign(const Permutation& perm, const std::vector<int>& degrees)
{
    if (int(degrees.size()) != perm.size())
        throw std::invalid_argument("koszul_sign: length mismatch");
    long e = 0;
    for (int i = 0; i < perm.size(); ++i)
        for (int j = i + 1; j < perm.size(); ++j)
            if (perm.images[i] > perm.images[j])
                e += long(degrees[i] & 1) * (degrees[j] & 1);
    return Sign::parity(e);
}

std::vector<int> permute_degrees(const Permutation& perm, const std::vector<int>& degrees)
{
    std::vector<int> r(degrees.size());
    for (int i = 0; i < perm.size(); ++i)
        r[perm.images[i]] = degrees[i];
    return r;
}

std::pair<std::vector<HomogeneousVector>, Sign> permute_tensor(const std::vector<HomogeneousVector>& factors,
                                                               const Permutation& perm)
{
    perm.validate();
    if (int(factors.size()) != perm.size())
        throw std::invalid_argument("permute_tensor: length mismatch");
    std::vector<int> degrees;
    for (const auto& f : factors)
        degrees.push_back(f.degree);
    std::vector<HomogeneousVector> out(factors.size());
    for (int i = 0; i < perm.size(); ++i)
        out[perm.images[i]] = factors[i];
    return {out, koszul_sign(perm, degrees)};
}

}  // namespace ibl
