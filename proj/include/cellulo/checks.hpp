#pragma once

// Cross-validation suite shared by the CLI `check` subcommand and the
// acceptance test binary. Each check is self-contained, records a verdict
// and a short diagnostic, and pins its own tolerances (all exact).

#include "cellulo/asph.hpp"
#include "cellulo/cells.hpp"
#include "cellulo/glcells.hpp"
#include "cellulo/hecke.hpp"
#include "cellulo/weyl.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace cellulo {

struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace checks {

inline CheckResult timed(const std::string& id, const std::string& name,
                         const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult r;
    r.id = id;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [ok, detail] = body();
        r.pass = ok;
        r.detail = detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    return r;
}

/// BFS over the Coxeter generators that tracks word depth only; the closed
/// length formula is not consulted anywhere in the walk.
inline std::vector<std::pair<WeylElt, int>> word_length_bfs(const RootDatumPtr& d, int depth) {
    Generators g = coxeter_generators(d);
    std::map<std::pair<std::vector<long long>, std::vector<long long>>, int> seen;
    std::vector<std::pair<WeylElt, int>> out;
    std::vector<WeylElt> layer{WeylElt::identity(d)};
    auto key = [](const WeylElt& w) { return std::make_pair(w.trans(), w.fin_matrix().a); };
    seen[key(layer[0])] = 0;
    out.push_back({layer[0], 0});
    for (int dep = 1; dep <= depth; ++dep) {
        std::vector<WeylElt> next;
        for (const auto& w : layer)
            for (const auto& s : g.elts) {
                WeylElt c = multiply(w, s);
                if (seen.emplace(key(c), dep).second) {
                    out.push_back({c, dep});
                    next.push_back(std::move(c));
                }
            }
        layer = std::move(next);
    }
    return out;
}

// 1. closed length formula against the word-length oracle
inline CheckResult length_oracle(int depth = 8) {
    return timed("1", "length-oracle equivalence (A1, A2, B2, depth " + std::to_string(depth) + ")",
                 [&]() -> std::pair<bool, std::string> {
                     std::size_t n = 0;
                     for (const char* t : {"A1", "A2", "B2"}) {
                         auto d = RootDatum::build_simple(t);
                         for (const auto& [w, dep] : word_length_bfs(d, depth)) {
                             ++n;
                             if (w.length() != dep)
                                 return {false, std::string(t) + ": element at BFS depth " +
                                                    std::to_string(dep) + " has formula length " +
                                                    std::to_string(w.length())};
                         }
                     }
                     return {true, std::to_string(n) + " elements checked"};
                 });
}

// 2. infinite dihedral closed form h_{x,w} = v^(l(w)-l(x))
inline CheckResult dihedral_closed_form(int radius = 12) {
    return timed("2", "dihedral closed form (affine A1, radius " + std::to_string(radius) + ")",
                 [&]() -> std::pair<bool, std::string> {
                     auto d = RootDatum::build_simple("A1");
                     CanonicalTable t(d, radius);
                     std::size_t n = 0;
                     for (const auto& [w, e] : t.entries()) {
                         // support must be every element below w together with w
                         std::size_t expect = w.length() == 0
                                                  ? 1
                                                  : 2 * static_cast<std::size_t>(w.length());
                         if (e.terms().size() != expect)
                             return {false, "support size mismatch at " + format_elt(w)};
                         for (const auto& [x, c] : e.terms()) {
                             ++n;
                             if (c != LaurentPoly::v_pow(w.length() - x.length()))
                                 return {false, "coefficient mismatch at (" + format_elt(x) +
                                                    ", " + format_elt(w) + "): " + c.str()};
                         }
                     }
                     return {true, std::to_string(n) + " coefficients checked"};
                 });
}

inline bool asph_bar_invariant(const AsphElt& m, BarInvolution& bar) {
    AsphElt img;
    for (const auto& [y, c] : m.terms())
        img += c.bar() * project(bar.of_basis(y));
    return img == m;
}

// 3. bar invariance + positive off-diagonal entries for both canonical bases
inline CheckResult canonical_characterization(int a1_radius = 16, int a2_radius = 10) {
    return timed("3",
                 "canonical-basis characterization (A1 radius " + std::to_string(a1_radius) +
                     ", A2 radius " + std::to_string(a2_radius) + ")",
                 [&]() -> std::pair<bool, std::string> {
                     std::size_t n = 0;
                     for (auto [label, radius] :
                          std::vector<std::pair<const char*, int>>{{"A1", a1_radius},
                                                                   {"A2", a2_radius}}) {
                         auto d = RootDatum::build_simple(label);
                         CanonicalTable t(d, radius);
                         BarInvolution bar(d);
                         for (const auto& [w, e] : t.entries()) {
                             ++n;
                             if (bar.of(e) != e)
                                 return {false, std::string(label) + ": uH_" + format_elt(w) +
                                                    " is not bar-invariant"};
                             for (const auto& [x, c] : e.terms()) {
                                 if (x == w) continue;
                                 if (!c.in_v_zv() || !c.nonnegative_coeffs())
                                     return {false, std::string(label) + ": h(" + format_elt(x) +
                                                        "," + format_elt(w) +
                                                        ") outside vZ>=0[v]: " + c.str()};
                             }
                         }
                         AsphTable nt(t, radius);
                         for (const auto& [w, m] : nt.entries()) {
                             ++n;
                             if (!asph_bar_invariant(m, bar))
                                 return {false, std::string(label) + ": uN_" + format_elt(w) +
                                                    " is not bar-invariant"};
                             for (const auto& [x, c] : m.terms()) {
                                 if (x == w) continue;
                                 if (!c.in_v_zv() || !c.nonnegative_coeffs())
                                     return {false, std::string(label) + ": n(" + format_elt(x) +
                                                        "," + format_elt(w) +
                                                        ") outside vZ>=0[v]: " + c.str()};
                             }
                         }
                     }
                     return {true, std::to_string(n) + " canonical elements checked"};
                 });
}

// 4. complete antispherical cell counts against nilpotent orbit counts
inline CheckResult cell_counts(int a1_radius = 16, int a2_radius = 12, int b2_radius = 12) {
    return timed("4", "antispherical 0-cell counts = orbit counts (A1/A2/B2)",
                 [&]() -> std::pair<bool, std::string> {
                     std::ostringstream detail;
                     for (auto [label, radius] :
                          std::vector<std::pair<const char*, int>>{{"A1", a1_radius},
                                                                   {"A2", a2_radius},
                                                                   {"B2", b2_radius}}) {
                         auto d = RootDatum::build_simple(label);
                         Config cfg{d->coxeter_number() + 1, radius};
                         CellContext ctx(d, cfg);
                         CellPartition p = analyze_cells(ctx, Side::Antispherical);
                         long long orbits = orbit_count(d);
                         long long complete = static_cast<long long>(p.complete_count());
                         detail << label << ":" << complete << "/" << orbits << " ";
                         if (complete > orbits)
                             return {false, std::string(label) + ": " + std::to_string(complete) +
                                                " complete cells exceed " +
                                                std::to_string(orbits) + " orbits"};
                         bool must_be_exact = std::string(label) != "B2";
                         if (must_be_exact && complete != orbits)
                             return {false, std::string(label) + ": expected " +
                                                std::to_string(orbits) + " complete cells, got " +
                                                std::to_string(complete)};
                         if (!must_be_exact && complete != orbits)
                             detail << "(B2 incomplete at this radius, honest undercount) ";
                     }
                     return {true, detail.str()};
                 });
}

// 5. two-sided vs antispherical matching is a bijection on complete cells
inline CheckResult two_sided_bijection(int a1_radius = 16, int a2_radius = 12) {
    return timed("5", "two-sided <-> antispherical bijection (A1, A2)",
                 [&]() -> std::pair<bool, std::string> {
                     std::ostringstream detail;
                     for (auto [label, radius] :
                          std::vector<std::pair<const char*, int>>{{"A1", a1_radius},
                                                                   {"A2", a2_radius}}) {
                         auto d = RootDatum::build_simple(label);
                         Config cfg{d->coxeter_number() + 1, radius};
                         CellContext ctx(d, cfg);
                         TwoSidedAsphReport rep = check_two_sided_vs_antispherical(ctx);
                         if (!rep.ok)
                             return {false, std::string(label) + ": " +
                                                (rep.problems.empty() ? "mismatch"
                                                                      : rep.problems.front())};
                         detail << label << ":" << rep.bijection.size() << " pairs ";
                     }
                     return {true, detail.str()};
                 });
}

// 6. Omega stability and agreement with the W-restricted relation
inline CheckResult omega_and_restriction(int a1_radius = 16, int a2_radius = 12) {
    return timed("6", "Omega stability and W-restriction agreement (A1, A2)",
                 [&]() -> std::pair<bool, std::string> {
                     for (auto [label, radius] :
                          std::vector<std::pair<const char*, int>>{{"A1", a1_radius},
                                                                   {"A2", a2_radius}}) {
                         auto d = RootDatum::build_simple(label);
                         Config cfg{d->coxeter_number() + 1, radius};
                         CellContext ctx(d, cfg);
                         CellPartition ext = analyze_cells(ctx, Side::Antispherical);
                         if (!check_omega_stability(ext))
                             return {false, std::string(label) + ": Omega stability fails"};
                         CellOptions wonly;
                         wonly.omega_translates = false;
                         wonly.omega_edges = false;
                         CellPartition restr = analyze_cells(ctx, Side::Antispherical, wonly);
                         // complete-cell equivalences must agree on W
                         WeylElt id = WeylElt::identity(d);
                         std::vector<int> rv;
                         for (const auto& c : restr.cells)
                             if (c.complete)
                                 rv.insert(rv.end(), c.members.begin(), c.members.end());
                         for (std::size_t a = 0; a < rv.size(); ++a)
                             for (std::size_t b = a + 1; b < rv.size(); ++b) {
                                 const WeylElt& u = restr.vertices[rv[a]].first;
                                 const WeylElt& v = restr.vertices[rv[b]].first;
                                 int eu = ext.index_of({u, id}), ev = ext.index_of({v, id});
                                 if (eu < 0 || ev < 0) continue;
                                 if (!ext.cells[ext.cell_of[eu]].complete ||
                                     !ext.cells[ext.cell_of[ev]].complete)
                                     continue;
                                 bool re = restr.cell_of[rv[a]] == restr.cell_of[rv[b]];
                                 bool ee = ext.cell_of[eu] == ext.cell_of[ev];
                                 if (re != ee)
                                     return {false, std::string(label) + ": relation differs at (" +
                                                        format_elt(u) + ", " + format_elt(v) + ")"};
                             }
                     }
                     return {true, "stability and restriction agree"};
                 });
}

/// Table rows transcribed from the weight-cell listings for GL_2, GL_3 and
/// GL_4 (nontrivial prefixes up to four terms). The in-repo golden files
/// hold the same rows; a test pins the two sources to each other.
inline std::vector<std::string> table1_rows(int gl) {
    switch (gl) {
        case 2:
            return {
                "(([2]),•)",
                "(([1^2]),([2]),•)",
                "(([1^2]),([1^2]),([2]),•)",
                "(([1^2]),([1^2]),([1^2]),([2]),•)",
            };
        case 3:
            return {
                "(([3]),•)",
                "(([2,1]),•)",
                "(([1^3]),([3]),•)",
                "(([1^3]),([2,1]),•)",
                "(([1^3]),([1^3]),([3]),•)",
                "(([1^3]),([1^3]),([2,1]),•)",
                "(([1^3]),([1^3]),([1^3]),([3]),•)",
                "(([1^3]),([1^3]),([1^3]),([2,1]),•)",
            };
        case 4:
            return {
                "(([4]),•)",
                "(([3,1]),•)",
                "(([2^2]),([2]),•)",
                "(([2^2]),([1^2]),([2]),•)",
                "(([2^2]),([1^2]),([1^2]),([2]),•)",
                "(([2^2]),([1^2]),([1^2]),([1^2]),([2]),•)",
                "(([2,1^2]),([1],[2]),•)",
                "(([2,1^2]),([1],[1^2]),([1],[2]),•)",
                "(([2,1^2]),([1],[1^2]),([1],[1^2]),([1],[2]),•)",
                "(([2,1^2]),([1],[1^2]),([1],[1^2]),([1],[1^2]),([1],[2]),•)",
                "(([1^4]),([4]),•)",
                "(([1^4]),([3,1]),•)",
                "(([1^4]),([2^2]),([2]),•)",
                "(([1^4]),([2^2]),([1^2]),([2]),•)",
                "(([1^4]),([2^2]),([1^2]),([1^2]),([2]),•)",
                "(([1^4]),([2,1^2]),([1],[2]),•)",
                "(([1^4]),([2,1^2]),([1],[1^2]),([1],[2]),•)",
                "(([1^4]),([2,1^2]),([1],[1^2]),([1],[1^2]),([1],[2]),•)",
            };
        default:
            throw std::invalid_argument("table1_rows: only GL_2, GL_3, GL_4 are transcribed");
    }
}

// 7. weight-cell label enumeration against the transcribed table
inline CheckResult table1_reproduction(int max_terms = 4) {
    return timed("7", "weight-cell table reproduction (GL_2, GL_3, GL_4)",
                 [&]() -> std::pair<bool, std::string> {
                     for (int gl : {2, 3, 4}) {
                         auto labels = enumerate_cell_labels({gl}, max_terms);
                         auto expect = table1_rows(gl);
                         if (labels.size() != expect.size())
                             return {false, "GL_" + std::to_string(gl) + ": " +
                                                std::to_string(labels.size()) + " rows, expected " +
                                                std::to_string(expect.size())};
                         for (std::size_t i = 0; i < labels.size(); ++i)
                             if (labels[i].str() != expect[i])
                                 return {false, "GL_" + std::to_string(gl) + " row " +
                                                    std::to_string(i) + ": " + labels[i].str() +
                                                    " != " + expect[i]};
                     }
                     return {true, "30 rows match"};
                 });
}

// 8. scaling-chain and projectivity arithmetic over random antidominant data
inline CheckResult proof_arithmetic(int samples = 500) {
    return timed("8", "scaling-chain arithmetic (GL_2, GL_3; ell in {5,7})",
                 [&]() -> std::pair<bool, std::string> {
                     std::mt19937_64 rng(20240917);
                     std::size_t n = 0;
                     for (const auto& blocks :
                          std::vector<std::vector<long long>>{{2}, {3}}) {
                         auto d = RootDatum::build_gl(blocks);
                         Weight two_rho = 2 * d->rho();
                         for (long long ell : {5LL, 7LL}) {
                             Config cfg{ell, 1};
                             for (int it = 0; it < samples; ++it) {
                                 // random nu in -X+ - 2rho, not divisible by ell
                                 std::vector<long long> kappa(d->rank());
                                 std::uniform_int_distribution<long long> coord(0, 12);
                                 long long prev = coord(rng) + 20;
                                 for (std::size_t i = 0; i < d->rank(); ++i) {
                                     kappa[i] = prev;
                                     prev -= coord(rng);
                                 }
                                 Weight nu = -(Weight::from_ints(kappa) + two_rho);
                                 if (scaling_step(nu, cfg)) nu.c[0] -= 1;  // knock off divisibility
                                 int m = static_cast<int>(rng() % 3);
                                 Weight mu = nu;
                                 for (int i = 0; i < m; ++i) mu = cfg.ell * mu;

                                 // identity at every chain element, then descend
                                 Weight cur = mu;
                                 int depth = 0;
                                 while (true) {
                                     ++n;
                                     WeylElt wmu = min_coset_rep(d, cur);
                                     Weight lhs = dot_action(wmu, Weight::zero(d->rank()), cfg);
                                     Weight rhs = cfg.ell * Weight(d->w0_matrix().apply(cur.c)) - two_rho;
                                     if (lhs != rhs)
                                         return {false, d->name() + " ell=" + std::to_string(ell) +
                                                            ": dot identity fails at " + cur.str()};
                                     auto next = scaling_step(cur, cfg);
                                     if (!next || !d->is_antidominant(*next + two_rho)) break;
                                     cur = *next;
                                     ++depth;
                                 }
                                 if (depth != m)
                                     return {false, d->name() + ": chain depth " +
                                                        std::to_string(depth) + ", expected " +
                                                        std::to_string(m)};
                                 if (m >= 1) {
                                     WeylElt wmu = min_coset_rep(d, mu);
                                     Weight nu0 = dot_action(wmu, Weight::zero(d->rank()), cfg);
                                     if (!frobenius_projective_bound(nu0, m, cfg, d))
                                         return {false, d->name() + ": projectivity bound fails at depth " +
                                                            std::to_string(m)};
                                 }
                             }
                         }
                     }
                     return {true, std::to_string(n) + " identities checked"};
                 });
}

// 9. semisimple-rank monotonicity of mult, exhaustive over small shapes
inline CheckResult multipartition_monotonicity(long long max_total = 6) {
    return timed("9", "mult monotonicity (all shapes with total <= " + std::to_string(max_total) + ")",
                 [&]() -> std::pair<bool, std::string> {
                     std::size_t n = 0;
                     // all compositions a with sum(a) <= max_total
                     std::vector<std::vector<long long>> shapes;
                     std::function<void(std::vector<long long>&, long long)> rec =
                         [&](std::vector<long long>& cur, long long rest) {
                             if (!cur.empty()) shapes.push_back(cur);
                             for (long long x = 1; x <= rest; ++x) {
                                 cur.push_back(x);
                                 rec(cur, rest - x);
                                 cur.pop_back();
                             }
                         };
                     std::vector<long long> cur;
                     rec(cur, max_total);
                     for (const auto& a : shapes) {
                         for (const auto& pi : enumerate_multipartitions(a)) {
                             ++n;
                             long long ra = semisimple_rank(a);
                             long long rm = semisimple_rank(mult(pi));
                             bool zero = pi == zero_orbit_label(a);
                             if (rm > ra)
                                 return {false, "rank grows at " + pi.str()};
                             if ((rm == ra) != zero)
                                 return {false, "equality/zero-orbit mismatch at " + pi.str()};
                         }
                         if (mult(zero_orbit_label(a)) != a)
                             return {false, "mult of zero-orbit label differs from shape"};
                         if (!is_all_ones(mult(regular_orbit_label(a))))
                             return {false, "mult of regular label is not all ones"};
                     }
                     return {true, std::to_string(n) + " multipartitions over " +
                                       std::to_string(shapes.size()) + " shapes"};
                 });
}

/// Partition of the graph by mutual reachability computed with a cubic
/// closure, no Tarjan involved.
inline std::vector<int> naive_scc_oracle(const CellGraph& g) {
    std::size_t n = g.vertices.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (int j : g.out[i]) reach[i][j] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (reach[k][j]) reach[i][j] = true;
        }
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] != -1) continue;
        comp[i] = nc;
        for (std::size_t j = i + 1; j < n; ++j)
            if (reach[i][j] && reach[j][i]) comp[j] = nc;
        ++nc;
    }
    return comp;
}

// 10. dual-route redundancy: projection vs recursion for the antispherical
// canonical basis, and Tarjan vs the cubic reachability oracle
inline CheckResult oracle_redundancy() {
    return timed("10", "oracle redundancy (dual-route uN, SCC vs closure oracle)",
                 [&]() -> std::pair<bool, std::string> {
                     // AsphTable construction compares projection against the
                     // direct recursion on every element and throws on any
                     // disagreement
                     for (auto [label, radius] :
                          std::vector<std::pair<const char*, int>>{{"A1", 16}, {"A2", 10}}) {
                         auto d = RootDatum::build_simple(label);
                         CanonicalTable t(d, radius);
                         AsphTable nt(t, radius);
                         (void)nt;
                     }
                     // SCC partitions against the naive closure on small balls
                     for (auto [label, radius, side] :
                          std::vector<std::tuple<const char*, int, Side>>{
                              {"A1", 8, Side::Antispherical},
                              {"A1", 8, Side::TwoSided},
                              {"A2", 7, Side::Antispherical},
                              {"A2", 6, Side::TwoSided},
                              {"B2", 6, Side::Antispherical}}) {
                         auto d = RootDatum::build_simple(label);
                         Config cfg{d->coxeter_number() + 1, radius};
                         CellContext ctx(d, cfg);
                         CellGraph g = build_cell_graph(ctx, side);
                         CellPartition p = cells_from_graph(g);
                         std::vector<int> oracle = naive_scc_oracle(g);
                         for (std::size_t i = 0; i < g.vertices.size(); ++i)
                             for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
                                 bool a = p.cell_of[i] == p.cell_of[j];
                                 bool b = oracle[i] == oracle[j];
                                 if (a != b)
                                     return {false, std::string(label) + " " + side_name(side) +
                                                        ": SCC disagrees with closure oracle"};
                             }
                     }
                     return {true, "projection = recursion; Tarjan = closure oracle"};
                 });
}

} // namespace checks

/// The ten acceptance checks in order.
inline std::vector<CheckResult> run_acceptance() {
    return {
        checks::length_oracle(),
        checks::dihedral_closed_form(),
        checks::canonical_characterization(),
        checks::cell_counts(),
        checks::two_sided_bijection(),
        checks::omega_and_restriction(),
        checks::table1_reproduction(),
        checks::proof_arithmetic(),
        checks::multipartition_monotonicity(),
        checks::oracle_redundancy(),
    };
}

/// Cross-validation subset used by the CLI `check` subcommand.
inline std::vector<CheckResult> run_cross_validation() {
    return {
        checks::cell_counts(),
        checks::two_sided_bijection(),
        checks::omega_and_restriction(),
        checks::table1_reproduction(),
    };
}

} // namespace cellulo
