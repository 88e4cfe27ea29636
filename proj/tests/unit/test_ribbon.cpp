#include "doctest.h"
#include "fixtures.hpp"
#include "ibl/models.hpp"
#include "ibl/ribbon.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace ibl;
using namespace ibl::testing;

TEST_CASE("enumeration of the two canonical families")
{
    for (int s = 0; s <= 6; ++s) {
        auto lower = enumerate_graphs(2, 1, 0, s, {}, false);
        std::set<std::pair<int, int>> seen;
        for (const auto& c : lower) {
            auto d = c.graph.valencies();
            std::sort(d.begin(), d.end());
            CHECK(d[0] + d[1] == s + 2);
            CHECK(c.automorphisms == (d[0] == d[1] ? 2 : 1));
            seen.insert({d[0], d[1]});
        }
        CHECK(int(seen.size()) == int(lower.size()));
        CHECK(int(lower.size()) == (s + 2) / 2);
        auto reduced = enumerate_graphs(2, 1, 0, s);
        CHECK(int(reduced.size()) == (s == 0 ? 0 : (s + 2) / 2));

        auto upper = enumerate_graphs(1, 2, 0, s, {}, false);
        CHECK(int(upper.size()) == s / 2 + 1);
        std::set<std::pair<int, int>> legs;
        for (const auto& c : upper) {
            int a = int(c.graph.boundary_legs()[0].size()), b = int(c.graph.boundary_legs()[1].size());
            legs.insert({std::min(a, b), std::max(a, b)});
            CHECK(c.automorphisms == (a == b ? 2 : 1));
            CHECK(c.graph.genus() == 0);
        }
        CHECK(int(legs.size()) == int(upper.size()));
        /* the excluded classes are those with a boundary component without legs */
        int with_empty = 0;
        for (const auto& [a, b] : legs)
            with_empty += a == 0;
        CHECK(int(enumerate_graphs(1, 2, 0, s).size()) == int(upper.size()) - with_empty);
    }
    CHECK(enumerate_graphs(2, 1, 0, 0, {}, false).size() == 1);
    auto excluded = enumerate_graphs(1, 2, 0, 1, {}, false);
    CHECK(excluded.size() == 1);
}

TEST_CASE("single trivalent vertex and small counts")
{
    auto one = enumerate_graphs(1, 1, 0, 3, [](int d) { return d == 3; });
    REQUIRE(one.size() == 1);
    CHECK(one[0].automorphisms == 3);
    CHECK(one[0].graph.edge_count() == 0);
    /* trivalent planar trees with s leaves up to rotation: 1, 1, 1, 4 for s = 3..6 */
    std::vector<int> trees{1, 1, 1, 4};
    for (int s = 3; s <= 6; ++s) {
        auto t = enumerate_graphs(s - 2, 1, 0, s, [](int d) { return d == 3; });
        CHECK(int(t.size()) == trees[s - 3]);
        for (const auto& c : t) {
            CHECK(3 * c.graph.vertices() == 2 * c.graph.edge_count() + s);
            CHECK(c.graph.vertices() - c.graph.edge_count() + c.graph.boundaries() == 2);
        }
    }
    auto torus = enumerate_graphs(1, 1, 1, 0, {}, false);
    REQUIRE(torus.size() == 1);
    CHECK(torus[0].automorphisms == 4);
    for (int s = 1; s <= 3; ++s)
        for (const auto& c : enumerate_graphs(1, 1, 1, s)) {
            CHECK(c.graph.genus() == 1);
            CHECK(c.graph.edge_count() == 2);
        }
    CHECK_THROWS(enumerate_graphs(4, 1, 2, 12));
}

TEST_CASE("isomorphism codes")
{
    std::mt19937_64 rng(3);
    for (int s = 1; s <= 5; ++s)
        for (int g = 0; g <= 1; ++g)
            for (const auto& c : enumerate_graphs(2, 1, g, s)) {
                auto code = canonical_code(c.graph);
                for (int r = 0; r < 5; ++r) {
                    auto h = relabel(c.graph, rng);
                    CHECK(canonical_code(h) == code);
                    CHECK(automorphism_order(h) == c.automorphisms);
                }
            }
}

TEST_CASE("compatible edge orientations of the canonical families")
{
    for (int k1 = 1; k1 <= 3; ++k1)
        for (int k2 = 1; k2 <= 3; ++k2) {
            RibbonGraph g = gamma_lower(k1, k2);
            Labeling L1 = compatible_L2(g, {0, 1}, {0});
            CHECK(L1.edges[0] == std::pair(0, k1));
            Labeling L2 = compatible_L2(g, {1, 0}, {0});
            CHECK(L2.edges[0] == std::pair(k1, 0));
            /* sigma_1: e_i e_j w1 w2 -> e_i w1 e_j w2 */
            L1.boundary_marks[0] = k1 > 1 ? 1 : k1 + 1;
            if (k1 + k2 > 2) {
                auto p = sigma_L(g, L1);
                std::vector<int> expect{0, k1};
                for (int i = 1; i < k1; ++i)
                    expect.push_back(i);
                for (int i = 1; i < k2; ++i)
                    expect.push_back(k1 + i);
                CHECK(p.images == expect);
            }
        }
    for (int s1 = 1; s1 <= 3; ++s1)
        for (int s2 = 1; s2 <= 3; ++s2) {
            RibbonGraph g = gamma_upper(s1, s2);
            int fa = g.face_of(1), fb = g.face_of(s1 + 2);
            REQUIRE(fa != fb);
            Labeling L = compatible_L2(g, {0}, {fa, fb});
            CHECK(L.edges[0] == std::pair(0, s1 + 1));
            Labeling M = compatible_L2(g, {0}, {fb, fa});
            CHECK(M.edges[0] == std::pair(s1 + 1, 0));
            /* e_i e_j w1 w2 -> e_i w1 e_j w2 */
            auto p = sigma_L(g, L);
            std::vector<int> expect{0, s1 + 1};
            for (int i = 1; i <= s1; ++i)
                expect.push_back(i);
            for (int i = 1; i <= s2; ++i)
                expect.push_back(s1 + 1 + i);
            CHECK(p.images == expect);
        }
    auto one = enumerate_graphs(1, 1, 0, 3)[0].graph;
    CHECK(sigma_L(one, compatible_L2(one, {0}, {0})).images == std::vector<int>{0, 1, 2});
}

TEST_CASE("graph maps with the propagator T reproduce the product and coproduct")
{
    std::mt19937_64 rng(11);
    for (const auto& s : {build_sn(3).structure, build_cpn(2).structure, build_sn(2).structure}) {
        WordSpace ws = s.words();
        Propagator T{t_tensor(s), s.manifold_dimension - 2};
        int sh = s.shift(), checked = 0, nonzero = 0;
        for (int trial = 0; trial < 150; ++trial) {
            int d1 = int(rng() % 9) - 4, d2 = int(rng() % 9) - 4;
            Cochain p1 = random_homogeneous(ws, 4, d1, rng), p2 = random_homogeneous(ws, 4, d2, rng);
            Cochain q = q210(s, p1, p2);
            for (const auto& w : ws.canonical_words_upto(3)) {
                Scalar f = f_klg(ws, T, {&p1, &p2}, 0, {w});
                Scalar qv = q.values.count(w) ? q.values.at(w) : Scalar(0);
                CHECK(qv == Sign::parity(sh * d1) * f);
                nonzero += f != 0;
                ++checked;
            }
            Cochain p = random_homogeneous(ws, 6, d1, rng);
            SymCochain c = q120(s, p);
            for (const auto& w1 : ws.canonical_words_upto(3))
                for (const auto& w2 : ws.canonical_words_upto(3)) {
                    Scalar f = f_klg(ws, T, {&p}, 0, {w1, w2});
                    CHECK(c.eval(ws, {w1, w2}) == Sign::parity(sh * ws.degree(w1)) * f);
                    nonzero += f != 0;
                    ++checked;
                }
        }
        CHECK(checked >= 50);
        CHECK(nonzero >= 50);
    }
}

TEST_CASE("one contraction term of the product")
{
    auto s = build_sn(3).structure;
    WordSpace ws = s.words();
    Propagator T{t_tensor(s), 1};
    /* Gamma_{1,2} pairs psi_1 on e_i and psi_2 on e_j v */
    RibbonGraph g = gamma_lower(1, 2);
    Cochain one = exact_cochain({{{0}, 1}}), two = exact_cochain({{{1, 1}, 1}});
    Scalar direct = 0;
    for (const auto& t : coproduct_terms(s, t_tensor(s), {1}))
        if (t.a.size() == 1)
            direct += t.coef * one.eval(ws, t.a) * two.eval(ws, t.b);
    Scalar via_graph = graph_pairing(g, ws, T, {&one, &two}, {{1}});
    CHECK(via_graph != 0);
    CHECK(via_graph == direct);
    Propagator zero{Matrix(2, 2), 1};
    CHECK(graph_pairing(g, ws, zero, {&one, &two}, {{1}}) == 0);
}

TEST_CASE("graph pairing laws for random symmetric propagators")
{
    std::mt19937_64 rng(5);
    struct Case
    {
        int k, l, g, W;
    };
    for (const auto& s : {build_sn(3).structure, build_cpn(2).structure, build_sn(2).structure}) {
        WordSpace ws = s.words();
        for (int pdeg : {s.manifold_dimension - 3, s.manifold_dimension - 2}) {
            Propagator P = random_propagator(s, pdeg, rng);
            for (const Case& cs : {Case{1, 1, 0, 4}, Case{2, 1, 0, 3}, Case{1, 2, 0, 3}, Case{1, 1, 1, 2}}) {
                int e = cs.k + cs.l - 2 + 2 * cs.g;
                std::vector<Cochain> psis;
                std::vector<int> pd;
                for (int i = 0; i < cs.k; ++i) {
                    pd.push_back(int(rng() % 7) - 3);
                    psis.push_back(random_homogeneous(ws, cs.W + 2 * e, pd.back(), rng));
                }
                std::vector<const Cochain*> ptr;
                for (const auto& p : psis)
                    ptr.push_back(&p);
                int psi_degree = std::accumulate(pd.begin(), pd.end(), 0);
                auto table = f_klg_table(ws, P, ptr, cs.l, cs.g, cs.W);
                for (const auto& [t, v] : table) {
                    /* |w| = |psi| - e |P| and weight(w) = weight(psi) - 2e */
                    CHECK(word_degree(ws, t) == psi_degree - e * pdeg);
                    int wt = total_weight(t);
                    bool weight_ok = false;
                    for (const auto& p : psis)
                        for (const auto& [u, x] : p.values)
                            weight_ok = weight_ok || (cs.k == 1 && int(u.size()) - 2 * e == wt);
                    if (cs.k == 1)
                        CHECK(weight_ok);
                    CHECK(wt >= cs.l);
                }
                if (cs.k == 2) {
                    std::vector<const Cochain*> swapped{ptr[1], ptr[0]};
                    Sign sg = Sign::parity(pdeg + pd[0] * pd[1]);
                    for (const auto& w : ws.canonical_words_upto(cs.W))
                        CHECK(f_klg(ws, P, swapped, cs.g, {w}) == sg * f_klg(ws, P, ptr, cs.g, {w}));
                }
                if (cs.l == 2)
                    for (const auto& [t, v] : table) {
                        Sign sg = Sign::parity(pdeg + ws.degree(t[0]) * ws.degree(t[1]));
                        CHECK(f_klg(ws, P, ptr, cs.g, {t[1], t[0]}) == sg * v);
                    }
            }
        }
    }
}

TEST_CASE("filtration degree of the graph maps")
{
    std::mt19937_64 rng(9);
    auto s = build_cpn(2).structure;
    WordSpace ws = s.words();
    Propagator P = random_propagator(s, s.manifold_dimension - 3, rng);
    for (int trial = 0; trial < 4; ++trial) {
        /* a single weight-r input: outputs have weight r - 2e */
        for (int r = 3; r <= 6; ++r) {
            std::map<Word, Scalar> v;
            for (const auto& w : ws.canonical_words(r))
                if (rng() % 2)
                    v[w] = int(rng() % 5) - 2;
            Cochain psi = exact_cochain(v);
            for (int g = 0; g <= 1; ++g)
                for (int l = 1; l <= 2; ++l) {
                    int e = l - 1 + 2 * g;
                    for (const auto& [t, x] : f_klg_table(ws, P, {&psi}, l, g, 4))
                        CHECK(total_weight(t) == r - 2 * e);
                    /* filtration: weight drop bounded by 2(k + l - 2 + 2g) */
                    CHECK(r - (r - 2 * e) <= 2 * (1 + l - 2 + 2 * g));
                }
        }
    }
}

TEST_CASE("labeling independence of the graph pairing")
{
    std::mt19937_64 rng(21);
    for (const auto& s : {build_sn(3).structure, build_cpn(2).structure, build_sn(2).structure}) {
        WordSpace ws = s.words();
        for (int pdeg : {s.manifold_dimension - 3, s.manifold_dimension - 2}) {
            Propagator P = random_propagator(s, pdeg, rng);
            struct Case
            {
                int k, l, g, legs;
            };
            for (const Case& cs : {Case{1, 1, 0, 3}, Case{2, 1, 0, 3}, Case{1, 2, 0, 3}, Case{1, 1, 1, 2},
                                   Case{3, 1, 0, 3}, Case{2, 2, 0, 2}}) {
                for (const auto& c : enumerate_graphs(cs.k, cs.l, cs.g, cs.legs)) {
                    const RibbonGraph& g = c.graph;
                    std::vector<Cochain> psis;
                    for (int v = 0; v < g.vertices(); ++v) {
                        int d = int(rng() % 7) - 3;
                        Cochain p;
                        p.weight_bound = kInfiniteWeight;
                        for (int tries = 0; tries < 3 && p.values.empty(); ++tries, d = int(rng() % 7) - 3)
                            p = random_homogeneous(ws, int(g.rotations()[v].size()), d, rng);
                        psis.push_back(p);
                    }
                    std::vector<const Cochain*> ptr;
                    for (const auto& p : psis)
                        ptr.push_back(&p);
                    Tuple words;
                    for (const auto& b : g.boundary_legs()) {
                        Word w;
                        for (size_t i = 0; i < b.size(); ++i)
                            w.push_back(int(rng() % s.dim()));
                        words.push_back(w);
                    }
                    std::vector<int> vo(g.vertices()), bo(g.boundaries());
                    std::iota(vo.begin(), vo.end(), 0);
                    std::iota(bo.begin(), bo.end(), 0);
                    Labeling ref = compatible_L2(g, vo, bo);
                    Scalar base = labeled_pairing(g, ref, ws, P, ptr, words);
                    int compatible = 0;
                    for_each_labeling(g, ref, rng, [&](const Labeling& L) {
                        if (orientation_sign(g, L) > 0) {
                            ++compatible;
                            CHECK(labeled_pairing(g, L, ws, P, ptr, words) == base);
                        }
                    });
                    CHECK(compatible > 0);
                    /* isomorphic representatives give the same pairing */
                    Scalar gp = graph_pairing(g, ws, P, ptr, words);
                    auto h = relabel(g, rng);
                    /* boundary components of h carry the same words up to the induced bijection */
                    CHECK(canonical_code(h) == canonical_code(g));
                    if (g.boundaries() == 1)
                        CHECK(graph_pairing(h, ws, P, ptr, words) == gp);
                }
            }
        }
    }
}

TEST_CASE("identical inputs: vertex orders differ by a global sign")
{
    std::mt19937_64 rng(4);
    auto s = shifted_structure(classical_heisenberg(), "heisenberg");
    WordSpace ws = s.words();
    auto K = schwartz_kernel(s, green_pipeline(s));
    Cochain m = canonical_mc(s).pmc10();
    Cochain m2 = m;
    for (int legs = 4; legs <= 5; ++legs)
        for (const auto& c : enumerate_graphs(legs - 2, 1, 0, legs, [](int d) { return d == 3; })) {
            int k = c.graph.vertices();
            std::vector<const Cochain*> same(k, &m), distinct(k, &m2);
            distinct[0] = &m;
            for (int trial = 0; trial < 10; ++trial) {
                Word w;
                for (int i = 0; i < legs; ++i)
                    w.push_back(int(rng() % s.dim()));
                CHECK(graph_pairing(c.graph, ws, K, same, {w}) == graph_pairing(c.graph, ws, K, distinct, {w}));
            }
        }
}

TEST_CASE("pushforward with the zero kernel")
{
    for (const auto& s : {build_sn(3).structure, build_cpn(2).structure,
                          shifted_structure(classical_heisenberg(), "heisenberg")}) {
        auto sp = harmonic_splitting(s);
        Propagator zero{Matrix(s.dim(), s.dim()), s.manifold_dimension - 3};
        auto pf = pushforward_mc(s, zero, sp, 5, 1, 2);
        auto m10 = canonical_mc(pf.harmonic.structure).pmc10();
        CHECK(pf.pmc.pmc10().values == m10.values);
        for (const auto& [lg, entry] : pf.pmc.entries)
            if (lg != std::pair(1, 0))
                CHECK(entry.is_zero());
    }
    /* harmonic part of a product with the acyclic block */
    auto s = shifted_structure(tensor(classical_sphere(3), classical_acyclic(1)), "S3xA");
    auto sp = harmonic_splitting(s);
    auto pf = pushforward_mc(s, Propagator{Matrix(s.dim(), s.dim()), 3}, sp, 4, 0, 1);
    CHECK(check_cyclic_dga(pf.harmonic.structure).ok);
    CHECK(pf.pmc.pmc10().values == canonical_mc(pf.harmonic.structure).pmc10().values);
}

TEST_CASE("pushforward along a Green kernel gives an A-infinity structure")
{
    auto s = shifted_structure(classical_heisenberg(), "heisenberg");
    REQUIRE(check_cyclic_dga(s).ok);
    auto sp = harmonic_splitting(s);
    auto G = green_pipeline(s);
    auto K = schwartz_kernel(s, G);
    auto pf = pushforward_mc(s, K, sp, 6, 0, 1);
    const auto& H = pf.harmonic.structure;
    Cochain p10 = pf.pmc.pmc10();
    auto mu = mu_from_mc(H, p10, 5);
    auto r = check_ainfty(mu, 5);
    CHECK(r.ok);
    /* the Massey products survive as a nonzero mu_3 */
    bool mu3 = false;
    for (const auto& [w, v] : mu.mu[3])
        mu3 = mu3 || !v.empty();
    CHECK(mu3);
    /* the twisted differential squares to zero up to the weight bound */
    std::mt19937_64 rng(17);
    WordSpace hw = H.words();
    for (int d = -4; d <= 4; ++d) {
        Cochain psi = random_homogeneous(hw, 6, d, rng);
        CHECK(twisted_q110(H, pf.pmc, twisted_q110(H, pf.pmc, psi)).is_zero());
    }
    /* weight-3 part is the canonical element of the harmonic model */
    auto m10 = canonical_mc(H).pmc10();
    for (const auto& w : H.words().canonical_words(3)) {
        Scalar a = p10.values.count(w) ? p10.values.at(w) : Scalar(0);
        Scalar b = m10.values.count(w) ? m10.values.at(w) : Scalar(0);
        CHECK(a == b);
    }
}
