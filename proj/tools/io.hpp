#pragma once

#include "ibl/dibl.hpp"
#include "ibl/green.hpp"
#include "ibl/homology.hpp"
#include "ibl/ribbon.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace ibl::io {

using nlohmann::ordered_json;

/* Malformed input; the message names the offending field. */
struct InputError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

ordered_json read_json(const std::string& path);

CyclicStructure algebra_from_json(const ordered_json& j);
ordered_json algebra_to_json(const CyclicStructure& s);

Word word_from_json(const CyclicStructure& s, const ordered_json& j, const std::string& where);
ordered_json word_to_json(const CyclicStructure& s, const Word& w);

/* {arity, weight_bound (null = exact), records: [{tuple, coefficient}]} */
SymCochain cochain_from_json(const CyclicStructure& s, const ordered_json& j);
ordered_json cochain_to_json(const CyclicStructure& s, const SymCochain& c);
ordered_json cochain_to_json(const CyclicStructure& s, const Cochain& c);

/* {degree, entries: [{row, col, coefficient}]} with basis labels */
KernelTensor kernel_from_json(const CyclicStructure& s, const ordered_json& j);
ordered_json kernel_to_json(const CyclicStructure& s, const KernelTensor& K);
ordered_json operator_to_json(const CyclicStructure& s, const LinearOperator& L);

/* {strictly_reduced, entries: [{boundaries, genus, cochain}]} */
MaurerCartanFamily family_from_json(const CyclicStructure& s, const ordered_json& j);
ordered_json family_to_json(const CyclicStructure& s, const MaurerCartanFamily& f);

ordered_json graph_to_json(const RibbonGraph& g);
ordered_json report_to_json(const Report& r);
ordered_json homology_to_json(const HomologyReport& h);

/* Weights as rows, degrees as columns; rows at the weight bound are marked unstable. */
std::string homology_table(const HomologyReport& h);

}  // namespace ibl::io
