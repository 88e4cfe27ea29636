#include "io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace ibl::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw InputError(where + ": " + what);
}

const ordered_json& field(const ordered_json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing field '") + key + "'");
    return *it;
}

Scalar scalar_from_json(const ordered_json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Scalar(j.get<long>());
    if (!j.is_string())
        fail(where, "expected a rational as string or integer");
    try {
        return parse_scalar(j.get<std::string>());
    }
    catch (const std::exception&) {
        fail(where, "malformed rational '" + j.get<std::string>() + "'");
    }
}

int int_from_json(const ordered_json& j, const std::string& where)
{
    if (!j.is_number_integer())
        fail(where, "expected an integer");
    return j.get<int>();
}

int label_index(const CyclicStructure& s, const ordered_json& j, const std::string& where)
{
    if (!j.is_string())
        fail(where, "expected a basis label");
    int i = s.basis.index_of(j.get<std::string>());
    if (i < 0)
        fail(where, "unknown label '" + j.get<std::string>() + "'");
    return i;
}

std::string at(const std::string& where, size_t i)
{
    return where + "[" + std::to_string(i) + "]";
}

}  // namespace

ordered_json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(path + ": cannot open");
    try {
        return ordered_json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

CyclicStructure algebra_from_json(const ordered_json& j)
{
    CyclicStructure s;
    const auto& name = field(j, "name", "algebra");
    if (!name.is_string())
        fail("name", "expected a string");
    s.name = name.get<std::string>();
    s.manifold_dimension = int_from_json(field(j, "manifold_dimension", "algebra"), "manifold_dimension");
    const auto& basis = field(j, "basis", "algebra");
    if (!basis.is_array() || basis.empty())
        fail("basis", "expected a nonempty array");
    for (size_t i = 0; i < basis.size(); ++i) {
        std::string w = at("basis", i);
        const auto& label = field(basis[i], "label", w);
        if (!label.is_string())
            fail(w + ".label", "expected a string");
        s.basis.labels.push_back(label.get<std::string>());
        s.basis.degrees.push_back(int_from_json(field(basis[i], "shifted_degree", w), w + ".shifted_degree"));
    }
    try {
        s.basis.validate();
    }
    catch (const std::exception& e) {
        fail("basis", e.what());
    }
    int n = s.dim();
    if (j.contains("pairing") && !j["pairing"].is_null()) {
        const auto& p = j["pairing"];
        if (!p.is_array() || int(p.size()) != n)
            fail("pairing", "expected " + std::to_string(n) + " rows");
        s.pairing = Matrix(n, n);
        for (int a = 0; a < n; ++a) {
            if (!p[a].is_array() || int(p[a].size()) != n)
                fail(at("pairing", a), "expected " + std::to_string(n) + " entries");
            for (int b = 0; b < n; ++b)
                s.pairing(a, b) = scalar_from_json(p[a][b], at(at("pairing", a), b));
        }
    }
    if (j.contains("mu")) {
        const auto& mu = j["mu"];
        if (!mu.is_array())
            fail("mu", "expected an array");
        for (size_t e = 0; e < mu.size(); ++e) {
            std::string w = at("mu", e);
            const auto& in = field(mu[e], "inputs", w);
            if (!in.is_array() || in.empty())
                fail(w + ".inputs", "expected a nonempty array of labels");
            Word inputs;
            for (size_t i = 0; i < in.size(); ++i)
                inputs.push_back(label_index(s, in[i], at(w + ".inputs", i)));
            const auto& out = field(mu[e], "output", w);
            if (!out.is_object())
                fail(w + ".output", "expected an object label -> rational");
            for (const auto& [label, c] : out.items())
                s.set_mu(int(inputs.size()), inputs, label_index(s, label, w + ".output"),
                         scalar_from_json(c, w + ".output." + label));
        }
    }
    if (j.contains("unit") && !j["unit"].is_null())
        s.unit = label_index(s, j["unit"], "unit");
    if (j.contains("augmentation") && !j["augmentation"].is_null()) {
        const auto& a = j["augmentation"];
        if (!a.is_object())
            fail("augmentation", "expected an object label -> rational");
        std::vector<Scalar> eps(n);
        for (const auto& [label, c] : a.items())
            eps[label_index(s, label, "augmentation")] = scalar_from_json(c, "augmentation." + label);
        s.augmentation = eps;
    }
    return s;
}

ordered_json algebra_to_json(const CyclicStructure& s)
{
    ordered_json j;
    j["name"] = s.name;
    j["manifold_dimension"] = s.manifold_dimension;
    j["basis"] = ordered_json::array();
    for (int i = 0; i < s.dim(); ++i)
        j["basis"].push_back({{"label", s.basis.labels[i]}, {"shifted_degree", s.deg(i)}});
    if (s.has_pairing()) {
        j["pairing"] = ordered_json::array();
        for (int a = 0; a < s.dim(); ++a) {
            ordered_json row = ordered_json::array();
            for (int b = 0; b < s.dim(); ++b)
                row.push_back(to_string(s.pairing(a, b)));
            j["pairing"].push_back(row);
        }
    }
    j["mu"] = ordered_json::array();
    for (const auto& [k, table] : s.mu)
        for (const auto& [in, out] : table) {
            ordered_json o = ordered_json::object();
            for (const auto& [x, c] : out)
                o[s.basis.labels[x]] = to_string(c);
            j["mu"].push_back({{"inputs", word_to_json(s, in)}, {"output", o}});
        }
    if (s.unit)
        j["unit"] = s.basis.labels[*s.unit];
    if (s.augmentation) {
        ordered_json a = ordered_json::object();
        for (int i = 0; i < s.dim(); ++i)
            if ((*s.augmentation)[i] != 0)
                a[s.basis.labels[i]] = to_string((*s.augmentation)[i]);
        j["augmentation"] = a;
    }
    return j;
}

Word word_from_json(const CyclicStructure& s, const ordered_json& j, const std::string& where)
{
    if (!j.is_array() || j.empty())
        fail(where, "expected a nonempty array of labels");
    Word w;
    for (size_t i = 0; i < j.size(); ++i)
        w.push_back(label_index(s, j[i], at(where, i)));
    return w;
}

ordered_json word_to_json(const CyclicStructure& s, const Word& w)
{
    ordered_json j = ordered_json::array();
    for (int x : w)
        j.push_back(s.basis.labels[x]);
    return j;
}

SymCochain cochain_from_json(const CyclicStructure& s, const ordered_json& j)
{
    WordSpace ws = s.words();
    SymCochain c;
    c.arity = j.contains("arity") ? int_from_json(j["arity"], "arity") : 1;
    if (c.arity < 1)
        fail("arity", "must be positive");
    c.weight_bound = kInfiniteWeight;
    if (j.contains("weight_bound") && !j["weight_bound"].is_null())
        c.weight_bound = int_from_json(j["weight_bound"], "weight_bound");
    const auto& rec = field(j, "records", "cochain");
    if (!rec.is_array())
        fail("records", "expected an array");
    SymChain values;
    for (size_t r = 0; r < rec.size(); ++r) {
        std::string w = at("records", r);
        const auto& t = field(rec[r], "tuple", w);
        if (!t.is_array() || int(t.size()) != c.arity)
            fail(w + ".tuple", "expected " + std::to_string(c.arity) + " words");
        Tuple tuple;
        for (size_t i = 0; i < t.size(); ++i)
            tuple.push_back(word_from_json(s, t[i], at(w + ".tuple", i)));
        if (total_weight(tuple) > c.weight_bound)
            fail(w, "tuple above the weight bound");
        ws.add(values, tuple, scalar_from_json(field(rec[r], "coefficient", w), w + ".coefficient"));
    }
    prune(values);
    c.values = std::move(values);
    return c;
}

ordered_json cochain_to_json(const CyclicStructure& s, const SymCochain& c)
{
    ordered_json j;
    j["arity"] = c.arity;
    j["weight_bound"] = c.weight_bound == kInfiniteWeight ? ordered_json() : ordered_json(c.weight_bound);
    j["records"] = ordered_json::array();
    for (const auto& [t, x] : c.values) {
        if (x == 0)
            continue;
        ordered_json tuple = ordered_json::array();
        for (const auto& w : t)
            tuple.push_back(word_to_json(s, w));
        j["records"].push_back({{"tuple", tuple}, {"coefficient", to_string(x)}});
    }
    return j;
}

ordered_json cochain_to_json(const CyclicStructure& s, const Cochain& c)
{
    return cochain_to_json(s, as_sym(c));
}

KernelTensor kernel_from_json(const CyclicStructure& s, const ordered_json& j)
{
    const ordered_json& k = j.contains("kernel") ? j["kernel"] : j;
    KernelTensor K;
    K.degree = int_from_json(field(k, "degree", "kernel"), "kernel.degree");
    K.coeffs = Matrix(s.dim(), s.dim());
    const auto& e = field(k, "entries", "kernel");
    if (!e.is_array())
        fail("kernel.entries", "expected an array");
    for (size_t r = 0; r < e.size(); ++r) {
        std::string w = at("kernel.entries", r);
        int a = label_index(s, field(e[r], "row", w), w + ".row");
        int b = label_index(s, field(e[r], "col", w), w + ".col");
        K.coeffs(a, b) += scalar_from_json(field(e[r], "coefficient", w), w + ".coefficient");
    }
    return K;
}

static ordered_json matrix_entries(const CyclicStructure& s, const Matrix& m)
{
    ordered_json e = ordered_json::array();
    for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b)
            if (m(a, b) != 0)
                e.push_back({{"row", s.basis.labels[a]}, {"col", s.basis.labels[b]}, {"coefficient", to_string(m(a, b))}});
    return e;
}

ordered_json kernel_to_json(const CyclicStructure& s, const KernelTensor& K)
{
    return {{"degree", K.degree}, {"entries", matrix_entries(s, K.coeffs)}};
}

ordered_json operator_to_json(const CyclicStructure& s, const LinearOperator& L)
{
    return {{"degree", L.degree}, {"entries", matrix_entries(s, L.matrix)}};
}

MaurerCartanFamily family_from_json(const CyclicStructure& s, const ordered_json& j)
{
    const ordered_json& f = j.contains("pmc") ? j["pmc"] : j;
    MaurerCartanFamily m;
    if (f.contains("strictly_reduced"))
        m.strictly_reduced = f["strictly_reduced"].is_boolean() && f["strictly_reduced"].get<bool>();
    const auto& e = field(f, "entries", "family");
    if (!e.is_array())
        fail("entries", "expected an array");
    for (size_t r = 0; r < e.size(); ++r) {
        std::string w = at("entries", r);
        int l = int_from_json(field(e[r], "boundaries", w), w + ".boundaries");
        int g = int_from_json(field(e[r], "genus", w), w + ".genus");
        SymCochain c;
        try {
            c = cochain_from_json(s, field(e[r], "cochain", w));
        }
        catch (const InputError& err) {
            fail(w + ".cochain", err.what());
        }
        if (c.arity != l)
            fail(w, "cochain arity differs from the number of boundaries");
        m.entries[{l, g}] = std::move(c);
    }
    if (!m.find(1, 0))
        fail("entries", "missing the (1, 0) entry");
    return m;
}

ordered_json family_to_json(const CyclicStructure& s, const MaurerCartanFamily& f)
{
    ordered_json j;
    j["strictly_reduced"] = f.strictly_reduced;
    j["entries"] = ordered_json::array();
    for (const auto& [lg, c] : f.entries)
        j["entries"].push_back({{"boundaries", lg.first}, {"genus", lg.second}, {"cochain", cochain_to_json(s, c)}});
    return j;
}

ordered_json graph_to_json(const RibbonGraph& g)
{
    ordered_json j;
    j["vertices"] = g.rotations();
    ordered_json e = ordered_json::array();
    for (const auto& [a, b] : g.edges())
        e.push_back({a, b});
    j["edges"] = e;
    j["boundary"] = g.boundary_legs();
    return j;
}

ordered_json report_to_json(const Report& r)
{
    return {{"ok", r.ok}, {"failures", r.failures}};
}

ordered_json homology_to_json(const HomologyReport& h)
{
    ordered_json j;
    j["weight_bound"] = h.weight_bound;
    j["blocks"] = ordered_json::array();
    for (const auto& b : h.blocks)
        j["blocks"].push_back({{"weight", b.weight}, {"degree", b.degree}, {"dimension", b.dimension}, {"stable", b.stable}});
    return j;
}

std::string homology_table(const HomologyReport& h)
{
    std::set<int> degrees, weights;
    for (const auto& b : h.blocks) {
        degrees.insert(b.degree);
        weights.insert(b.weight);
    }
    std::ostringstream out;
    out << std::setw(8) << "w\\deg";
    for (int d : degrees)
        out << std::setw(6) << d;
    out << "\n";
    for (int w : weights) {
        out << std::setw(8) << w;
        bool stable = true;
        for (int d : degrees) {
            int dim = 0;
            for (const auto& b : h.blocks)
                if (b.weight == w && b.degree == d) {
                    dim += b.dimension;
                    stable = b.stable;
                }
            out << std::setw(6) << dim;
        }
        out << (stable ? "" : "  unstable") << "\n";
    }
    return out.str();
}

}  // namespace ibl::io
