#pragma once

#include "ibl/algebra.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ibl {

/* A cochain operator D given through its chain dual: (D psi)(u) = psi(dual(u)). */
using DualOperator = std::function<Chain(const Word&)>;

struct HomologyBlock
{
    int degree = 0;  // word degree of the dual words
    int weight = 0;  // filtration weight of the classes
    int dimension = 0;
    bool stable = false;
    std::vector<Cochain> representatives;
};

struct HomologyReport
{
    int weight_bound = 0;
    std::vector<HomologyBlock> blocks;  // sorted by (weight, degree); nonzero blocks only

    int dimension(int degree, int weight) const;
    int total_dimension(bool stable_only = true) const;
    std::vector<const HomologyBlock*> stable_blocks() const;
};

struct HomologyOptions
{
    /* keep only words for which the predicate holds (quotient complex); empty = all */
    std::function<bool(const Word&)> include;
    std::optional<std::pair<int, int>> degree_window;
};

/* Homology of the cochains on canonical words of weight <= W, filtered by weight.
   Throws std::runtime_error if the differential does not square to zero. */
HomologyReport graded_homology(const WordSpace& ws, const DualOperator& dual, int W, const HomologyOptions& opts = {});

/* Dimension of the homology of the chain complex of words of weight <= W, per word degree. */
std::map<int, int> chain_homology_dimensions(const WordSpace& ws, const DualOperator& b, int W,
                                             const HomologyOptions& opts = {});

/* Cycles of weight <= W - 1 spanning a complement of the boundaries from weight <= W. */
std::vector<Chain> chain_homology_representatives(const WordSpace& ws, const DualOperator& b, int W,
                                                  const HomologyOptions& opts = {});

/* Is psi (on weight <= W) a coboundary D phi of a cochain on words of degree deg + 1? */
bool is_coboundary(const WordSpace& ws, const DualOperator& dual, const Cochain& psi, int degree, int W,
                   const HomologyOptions& opts = {});

/* Apply the cochain operator given by its dual to psi on words of weight <= W. */
Cochain apply_dual(const WordSpace& ws, const DualOperator& dual, const Cochain& psi, int W,
                   const HomologyOptions& opts = {});

/* Reduced complex: words without the unit letter. */
HomologyOptions reduced_options(const CyclicStructure& s);

}  // namespace ibl
