#include "io.hpp"

#include "ibl/models.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ibl;
using io::ordered_json;

namespace {

enum Exit
{
    kOk = 0,
    kPropertyFailure = 1,
    kInputError = 2
};

struct RunConfig
{
    int weight_bound = 6;
    int genus_bound = 0;
    bool reduced = false;
    std::uint64_t seed = 1;
    std::string format = "table";
    std::string output;
};

class Emitter
{
public:
    explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {}

    bool records() const { return cfg_.format == "records"; }
    void text(const std::string& s) { text_ << s; }
    void record(const ordered_json& j) { json_ = j; }

    void flush()
    {
        std::string body = records() ? json_.dump(2) + "\n" : text_.str();
        if (cfg_.output.empty()) {
            std::cout << body;
            return;
        }
        std::ofstream out(cfg_.output);
        if (!out)
            throw io::InputError(cfg_.output + ": cannot write");
        out << body;
    }

private:
    const RunConfig& cfg_;
    std::ostringstream text_;
    ordered_json json_;
};

CyclicStructure load_algebra(const std::string& path)
{
    return io::algebra_from_json(io::read_json(path));
}

std::string show_word(const CyclicStructure& s, const Word& w)
{
    std::string r;
    for (int x : w)
        r += (r.empty() ? "" : " ") + s.basis.labels[x];
    return "[" + r + "]";
}

std::string show_cochain(const CyclicStructure& s, const SymCochain& c)
{
    std::ostringstream out;
    for (const auto& [t, x] : c.values) {
        if (x == 0)
            continue;
        out << "  ";
        for (const auto& w : t)
            out << show_word(s, w);
        out << "  " << to_string(x) << "\n";
    }
    return out.str();
}

std::string show_report(const std::string& title, const Report& r)
{
    std::string out = title + ": " + (r.ok ? "pass" : "FAIL") + "\n";
    for (const auto& f : r.failures)
        out += "  " + f + "\n";
    return out;
}

int cmd_algebra_check(const RunConfig& cfg, const std::string& file)
{
    auto s = load_algebra(file);
    Report r = s.max_arity() > 2 ? check_pairing(s) : check_cyclic_dga(s);
    if (s.max_arity() > 2) {
        r.merge(check_ainfty(s, s.max_arity() + 1));
        r.merge(check_cyclicity(s));
    }
    Emitter e(cfg);
    e.text(show_report(s.name, r));
    e.record({{"algebra", s.name}, {"report", io::report_to_json(r)}});
    e.flush();
    return r.ok ? kOk : kPropertyFailure;
}

int cmd_homology(const RunConfig& cfg, const std::string& file, const std::string& twist)
{
    auto s = load_algebra(file);
    if (cfg.weight_bound < 1)
        throw io::InputError("--weight-bound must be at least 1");
    DualOperator dual;
    if (twist == "none")
        dual = [s](const Word& u) { return cyclic_b1(s, u); };
    else if (twist == "mc")
        dual = [s](const Word& u) { return cyclic_b(s, u); };
    else
        dual = twisted_q110_dual(s, io::family_from_json(s, io::read_json(twist)));
    HomologyOptions opts;
    if (cfg.reduced) {
        if (!s.unit)
            throw io::InputError("--reduced needs an algebra with a unit");
        opts = reduced_options(s);
    }
    HomologyReport h = graded_homology(s.words(), dual, cfg.weight_bound, opts);
    Emitter e(cfg);
    e.text(s.name + " homology, W = " + std::to_string(cfg.weight_bound) + (cfg.reduced ? ", reduced" : "") +
           "\n" + io::homology_table(h));
    e.record(io::homology_to_json(h));
    e.flush();
    return kOk;
}

int cmd_graphs(const RunConfig& cfg, int k, int l, int legs, bool trivalent)
{
    int g = cfg.genus_bound;
    if (k < 1 || l < 1 || g < 0)
        throw io::InputError("need k >= 1, l >= 1, genus >= 0");
    if (trivalent)
        legs = k - 2 * l + 4 - 4 * g;
    if (legs < 0)
        throw io::InputError(trivalent ? "no trivalent graphs with these counts" : "--legs is required");
    std::function<bool(int)> filter;
    if (trivalent)
        filter = [](int d) { return d == 3; };
    auto classes = enumerate_graphs(k, l, g, legs, filter, cfg.reduced);
    Emitter e(cfg);
    std::ostringstream out;
    out << classes.size() << " classes (k = " << k << ", l = " << l << ", g = " << g << ", legs = " << legs << ")\n";
    ordered_json list = ordered_json::array();
    for (const auto& c : classes) {
        auto j = io::graph_to_json(c.graph);
        j["automorphisms"] = c.automorphisms;
        out << "  aut " << c.automorphisms << "  " << j["vertices"].dump() << " edges " << j["edges"].dump()
            << " boundary " << j["boundary"].dump() << "\n";
        list.push_back(j);
    }
    e.text(out.str());
    e.record({{"k", k}, {"l", l}, {"genus", g}, {"legs", legs}, {"classes", list}});
    e.flush();
    return kOk;
}

LinearOperator run_green(const CyclicStructure& s, const HarmonicSplitting& sp, const std::vector<std::string>& stages)
{
    LinearOperator G;
    bool built = false;
    for (const auto& st : stages) {
        if (st == "build") {
            G = green_build(s, sp);
            built = true;
            continue;
        }
        if (!built)
            throw io::InputError("pipeline must start with 'build'");
        if (st == "symmetrize")
            G = green_symmetrize(s, G);
        else if (st == "project")
            G = green_project(s, G, sp);
        else if (st == "gdg")
            G = green_gdg(s, G);
        else
            throw io::InputError("unknown stage '" + st + "'");
    }
    if (!built)
        throw io::InputError("empty pipeline");
    return G;
}

int cmd_green(const RunConfig& cfg, const std::string& file, const std::vector<std::string>& stages)
{
    auto s = load_algebra(file);
    if (!s.has_pairing())
        throw io::InputError("the Green pipeline needs a pairing");
    auto sp = harmonic_splitting(s);
    LinearOperator G = run_green(s, sp, stages);
    auto props = check_g_properties(s, G, sp);
    bool ok = true;
    Emitter e(cfg);
    std::ostringstream out;
    out << "operator of degree " << G.degree << "\n";
    for (int a = 0; a < G.matrix.rows(); ++a)
        for (int b = 0; b < G.matrix.cols(); ++b)
            if (G.matrix(a, b) != 0)
                out << "  " << s.basis.labels[a] << " <- " << s.basis.labels[b] << "  " << to_string(G.matrix(a, b))
                    << "\n";
    ordered_json pj = ordered_json::object();
    for (const auto& [name, r] : props) {
        ok = ok && r.ok;
        out << show_report(name, r);
        pj[name] = io::report_to_json(r);
    }
    e.text(out.str());
    e.record({{"operator", io::operator_to_json(s, G)}, {"kernel", io::kernel_to_json(s, schwartz_kernel(s, G))},
              {"properties", pj}});
    e.flush();
    return ok ? kOk : kPropertyFailure;
}

int cmd_pushforward(const RunConfig& cfg, const std::string& file, const std::string& kernel)
{
    auto s = load_algebra(file);
    if (!s.has_pairing())
        throw io::InputError("pushforward needs a pairing");
    auto sp = harmonic_splitting(s);
    KernelTensor K;
    if (kernel == "zero")
        K = KernelTensor{Matrix(s.dim(), s.dim()), s.manifold_dimension - 3};
    else if (kernel == "green")
        K = schwartz_kernel(s, green_pipeline(s));
    else
        K = io::kernel_from_json(s, io::read_json(kernel));
    Pushforward pf;
    try {
        pf = pushforward_mc(s, K, sp, cfg.weight_bound, cfg.genus_bound);
    }
    catch (const std::invalid_argument& err) {
        throw io::InputError(err.what());
    }
    const auto& H = pf.harmonic.structure;
    Emitter e(cfg);
    std::ostringstream out;
    out << "harmonic model " << H.name << " of dimension " << H.dim() << "\n";
    for (const auto& [lg, c] : pf.pmc.entries)
        out << "pmc(" << lg.first << ", " << lg.second << ")\n" << show_cochain(H, c);
    e.text(out.str());
    e.record({{"harmonic", io::algebra_to_json(H)}, {"pmc", io::family_to_json(H, pf.pmc)}});
    e.flush();
    return kOk;
}

int cmd_eval(const RunConfig& cfg, const std::string& op, const std::string& file,
             const std::vector<std::string>& inputs, const std::string& twist)
{
    auto s = load_algebra(file);
    std::vector<SymCochain> in;
    for (const auto& p : inputs)
        in.push_back(io::cochain_from_json(s, io::read_json(p)));
    auto arity1 = [&](size_t count) {
        if (in.size() != count)
            throw io::InputError(op + " takes " + std::to_string(count) + " input cochain(s)");
        std::vector<Cochain> c;
        for (const auto& x : in) {
            if (x.arity != 1)
                throw io::InputError(op + " takes arity-1 cochains");
            c.push_back(as_cochain(x));
        }
        return c;
    };
    auto family = [&] {
        return twist == "mc" ? canonical_mc(s) : io::family_from_json(s, io::read_json(twist));
    };
    SymCochain result;
    if (op == "q110")
        result = as_sym(q110(s, arity1(1)[0]));
    else if (op == "dual_b")
        result = as_sym(dual_b(s, arity1(1)[0]));
    else if (op == "q210") {
        auto c = arity1(2);
        result = as_sym(q210(s, c[0], c[1]));
    }
    else if (op == "q120")
        result = q120(s, arity1(1)[0]);
    else if (op == "twisted_q110")
        result = as_sym(twisted_q110(s, family(), arity1(1)[0]));
    else if (op == "twisted_q120")
        result = twisted_q120(s, family(), arity1(1)[0]);
    else
        throw io::InputError("unknown operation '" + op + "'");
    Emitter e(cfg);
    e.text(op + " (weight bound " +
           (result.weight_bound == kInfiniteWeight ? std::string("exact") : std::to_string(result.weight_bound)) +
           ")\n" + show_cochain(s, result));
    e.record(io::cochain_to_json(s, result));
    e.flush();
    return kOk;
}

int cmd_model(const RunConfig& cfg, const std::string& kind, int n)
{
    CyclicStructure s;
    if (kind == "sn")
        s = build_sn(n).structure;
    else if (kind == "cpn")
        s = build_cpn(n).structure;
    else if (kind == "heisenberg")
        s = shifted_structure(classical_heisenberg(), "heisenberg");
    else if (kind == "random")
        s = random_cyclic_dga(n, cfg.seed);
    else if (kind == "random-complex")
        s = random_cyclic_complex(n, cfg.seed);
    else
        throw io::InputError("unknown model '" + kind + "'");
    RunConfig c = cfg;
    c.format = "records";
    Emitter e(c);
    e.record(io::algebra_to_json(s));
    e.flush();
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact cyclic cochain and ribbon graph toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--weight-bound,-W", cfg.weight_bound, "maximal total weight")->check(CLI::PositiveNumber);
    app.add_option("--genus-bound,-g", cfg.genus_bound, "genus (bound)")->check(CLI::NonNegativeNumber);
    app.add_flag("--reduced", cfg.reduced, "reduced complex / reduced graphs");
    app.add_option("--seed", cfg.seed, "seed for random models");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "records"}));
    app.add_option("--output,-o", cfg.output, "write output to a file");

    std::string file, twist = "mc", kernel = "green", op, kind;
    std::vector<std::string> inputs, stages{"build", "symmetrize", "project", "gdg"};
    int k = 1, l = 1, legs = -1, n = 3;
    bool trivalent = false;

    auto* algebra = app.add_subcommand("algebra", "algebra file operations");
    algebra->require_subcommand(1);
    algebra->fallthrough();
    auto* check = algebra->add_subcommand("check", "check the cyclic DGA / A-infinity axioms");
    check->add_option("file", file)->required();

    auto* homology = app.add_subcommand("homology", "filtered homology of the twisted complex");
    homology->add_option("file", file)->required();
    homology->add_option("--twist", twist, "none | mc | family file");

    auto* graphs = app.add_subcommand("graphs", "ribbon graph classes");
    graphs->add_option("-k", k, "internal vertices")->required();
    graphs->add_option("-l", l, "boundary components")->required();
    graphs->add_option("--legs", legs, "number of legs");
    graphs->add_flag("--trivalent", trivalent);

    auto* pushforward = app.add_subcommand("pushforward", "pushforward Maurer-Cartan element");
    pushforward->add_option("file", file)->required();
    pushforward->add_option("--kernel", kernel, "zero | green | kernel file");

    auto* green = app.add_subcommand("green", "Green operator pipeline");
    green->add_option("file", file)->required();
    green->add_option("--stages", stages, "build symmetrize project gdg")->delimiter(',');

    auto* eval = app.add_subcommand("eval", "evaluate an operation on cochains");
    eval->add_option("op", op, "q110 | q210 | q120 | twisted_q110 | twisted_q120 | dual_b")->required();
    eval->add_option("file", file)->required();
    eval->add_option("inputs", inputs, "cochain files")->required();
    eval->add_option("--twist", twist, "mc | family file");

    auto* model = app.add_subcommand("model", "write a built-in model as an algebra file");
    model->add_option("kind", kind, "sn | cpn | heisenberg | random | random-complex")->required();
    model->add_option("-n", n, "dimension parameter");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*check)
            return cmd_algebra_check(cfg, file);
        if (*homology)
            return cmd_homology(cfg, file, twist);
        if (*graphs)
            return cmd_graphs(cfg, k, l, legs, trivalent);
        if (*pushforward)
            return cmd_pushforward(cfg, file, kernel);
        if (*green)
            return cmd_green(cfg, file, stages);
        if (*eval)
            return cmd_eval(cfg, op, file, inputs, twist);
        if (*model)
            return cmd_model(cfg, kind, n);
    }
    catch (const io::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    catch (const std::exception& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return kPropertyFailure;
    }
    return kInputError;
}
