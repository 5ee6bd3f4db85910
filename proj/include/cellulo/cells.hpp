#pragma once

// Principal based submodules/ideals and the resulting cell partitions on
// truncated balls.
//
// Vertices are pairs (u, omega) standing for the group element u*omega with
// u in ball(radius) and omega a right translate. An edge u -> x means the
// canonical element indexed by x appears in the expansion of the canonical
// element of u multiplied by an edge generator (uH_s on the acting side, or
// H_omega). Tables reach one stratum past the vertex set, so every product
// of a vertex is fully expandable; support indices that land outside the
// vertex set are dropped and mark the vertex as frontier, while its
// remaining edges (in particular the descents into the ball) are exact and
// kept. All recorded edges are therefore true instances of the generation
// preorder: member lists of reported cells can grow under a larger radius
// but never shrink or split. A cell is "complete" when its strongly
// connected component contains at least one non-frontier vertex; components
// consisting purely of frontier vertices are truncation debris whose
// equivalences are not yet resolved.

#include "cellulo/asph.hpp"
#include "cellulo/common.hpp"
#include "cellulo/hecke.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cellulo {

enum class Side { Left, Right, TwoSided, Antispherical };

inline std::string side_name(Side s) {
    switch (s) {
        case Side::Left: return "left";
        case Side::Right: return "right";
        case Side::TwoSided: return "two-sided";
        case Side::Antispherical: return "antispherical";
    }
    return "?";
}

inline Side side_from_name(const std::string& s) {
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    if (s == "two-sided") return Side::TwoSided;
    if (s == "antispherical") return Side::Antispherical;
    throw std::invalid_argument("unknown side '" + s + "'");
}

struct CellOptions {
    // For data with infinite Omega (GL), right translates and Omega edge
    // generators are limited to words of this length in the block rotations.
    // Reported completeness is relative to this bounded generator set.
    int omega_translate_bound = 1;
    bool omega_edges = true;       // include H_omega edge generators
    bool omega_translates = true;  // extend the vertex set by right translates
};

/// Shared canonical tables for one (datum, config) pair. Tables cover
/// ball_radius + 1 so products of ball vertices stay expandable.
class CellContext {
public:
    CellContext(RootDatumPtr d, const Config& cfg)
        : datum_(std::move(d)), cfg_(cfg), hecke_(datum_, cfg.ball_radius + 1) {
        cfg.validate(*datum_);
    }

    const RootDatumPtr& datum() const { return datum_; }
    const Config& config() const { return cfg_; }
    const CanonicalTable& hecke() const { return hecke_; }

    const AsphTable& asph() const {
        if (!asph_) asph_.emplace(hecke_, cfg_.ball_radius + 1);
        return *asph_;
    }

private:
    RootDatumPtr datum_;
    Config cfg_;
    CanonicalTable hecke_;
    mutable std::optional<AsphTable> asph_;
};

struct CellGraph {
    RootDatumPtr datum;
    Side side = Side::Antispherical;
    Config cfg;
    CellOptions opts;
    std::vector<std::pair<WeylElt, WeylElt>> vertices;  // (u, omega), sorted
    std::vector<std::vector<int>> out;
    std::vector<char> frontier;
    std::vector<WeylElt> omega_translates;
    std::vector<WeylElt> omega_edge_gens;
    std::string omega_note;

    int index_of(const std::pair<WeylElt, WeylElt>& key) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), key);
        if (it == vertices.end() || *it != key) return -1;
        return static_cast<int>(it - vertices.begin());
    }

    WeylElt element(int i) const {
        return multiply(vertices[i].first, vertices[i].second);
    }
};

namespace detail {

/// Right translate set: all of Omega for semisimple data, a bounded word
/// closure of the block rotations for GL data, {e} otherwise.
inline std::vector<WeylElt> omega_translate_set(const RootDatumPtr& d, const CellOptions& opts,
                                                std::string* note) {
    if (d->is_semisimple()) {
        return omega_group(d);
    }
    std::vector<WeylElt> set{WeylElt::identity(d)};
    if (!d->gl_blocks().empty()) {
        std::vector<WeylElt> gens = omega_block_generators(d);
        std::set<WeylElt> seen(set.begin(), set.end());
        std::vector<WeylElt> layer = set;
        for (int depth = 0; depth < opts.omega_translate_bound; ++depth) {
            std::vector<WeylElt> next;
            for (const auto& w : layer)
                for (const auto& g : gens) {
                    WeylElt cand = multiply(w, g);
                    if (seen.insert(cand).second) next.push_back(cand);
                }
            for (auto& w : next) set.push_back(w);
            layer = std::move(next);
        }
        if (note)
            *note = "Omega is infinite; translates and Omega generators restricted to words of "
                    "length <= " + std::to_string(opts.omega_translate_bound) +
                    " in the block rotations, so completeness is relative to that bound";
    } else if (note && !d->is_semisimple()) {
        *note = "Omega translates unavailable for this datum; vertex set restricted to W";
    }
    std::sort(set.begin(), set.end());
    return set;
}

inline std::vector<WeylElt> omega_edge_generators(const RootDatumPtr& d, const CellOptions& opts) {
    if (!opts.omega_edges) return {};
    if (d->is_semisimple()) {
        std::vector<WeylElt> out;
        for (const auto& w : omega_group(d))
            if (!w.is_identity()) out.push_back(w);
        return out;
    }
    if (!d->gl_blocks().empty()) return omega_block_generators(d);
    return {};
}

// generator conjugation table: conj[i] = index j with omega g_i omega^-1 = g_j
inline std::vector<int> conjugation_table(const Generators& g, const WeylElt& omega) {
    std::vector<int> conj(g.elts.size(), -1);
    WeylElt inv = omega.inverse();
    for (std::size_t i = 0; i < g.elts.size(); ++i) {
        WeylElt c = multiply(multiply(omega, g.elts[i]), inv);
        for (std::size_t j = 0; j < g.elts.size(); ++j)
            if (c == g.elts[j]) { conj[i] = static_cast<int>(j); break; }
        if (conj[i] < 0)
            throw std::logic_error("omega conjugation does not permute the Coxeter generators");
    }
    return conj;
}

} // namespace detail

/// Builds the reachability graph of principal based submodule/ideal
/// generation for the requested side. `cfg.ball_radius` may be smaller than
/// the context's configured radius (the tables then cover more than
/// needed); it must not be larger.
inline CellGraph build_cell_graph_with_tables(const CellContext& ctx, const Config& cfg,
                                              Side side, const CellOptions& opts = {}) {
    const RootDatumPtr& d = ctx.datum();
    if (cfg.ball_radius > ctx.config().ball_radius)
        throw insufficient_radius("cell graph radius exceeds the prepared tables");
    const CanonicalTable& ht = ctx.hecke();
    const AsphTable* nt = side == Side::Antispherical ? &ctx.asph() : nullptr;

    CellGraph g;
    g.datum = d;
    g.side = side;
    g.cfg = cfg;
    g.opts = opts;
    g.omega_translates = opts.omega_translates
                             ? detail::omega_translate_set(d, opts, &g.omega_note)
                             : std::vector<WeylElt>{WeylElt::identity(d)};
    g.omega_edge_gens = detail::omega_edge_generators(d, opts);

    // vertex set: ball(radius); the tables reach one stratum further so
    // every vertex product is expandable and escape is detected by support
    // leaving the vertex set
    for (const WeylElt& u : ball(d, cfg.ball_radius)) {
        if (side == Side::Antispherical && !in_fw(u)) continue;
        for (const WeylElt& om : g.omega_translates) g.vertices.push_back({u, om});
    }
    std::sort(g.vertices.begin(), g.vertices.end());

    std::set<WeylElt> translate_set(g.omega_translates.begin(), g.omega_translates.end());
    const Generators& gens = ht.generators();
    std::map<WeylElt, std::vector<int>> conj;
    for (const auto& om : g.omega_translates) conj[om] = detail::conjugation_table(gens, om);

    const bool right_action = side != Side::Left;
    const bool left_action = side == Side::Left || side == Side::TwoSided;

    g.out.assign(g.vertices.size(), {});
    g.frontier.assign(g.vertices.size(), 0);

    parallel_for(g.vertices.size(), [&](std::size_t vi) {
        const auto& [u, om] = g.vertices[vi];
        std::set<int> targets;
        bool esc = false;

        // Products are always expandable (the tables reach one stratum past
        // the vertex set); support indices outside the vertex set are
        // dropped and mark the vertex frontier, the remaining edges are
        // exact and kept.
        auto note_target = [&](const WeylElt& x, const WeylElt& xo) {
            int t = g.index_of({x, xo});
            if (t < 0) { esc = true; return; }
            if (static_cast<std::size_t>(t) != vi) targets.insert(t);
        };

        try {
            if (right_action) {
                for (std::size_t gi = 0; gi < gens.elts.size(); ++gi) {
                    const WeylElt& sp = gens.elts[conj.at(om)[gi]];
                    if (side == Side::Antispherical) {
                        // uN_{u om} uH_s = (uN_u uH_{s'}) H_om
                        AsphElt prod = act_gen(nt->element(u), sp);
                        prod += detail::v_plus() * nt->element(u);
                        for (const auto& [x, c] : expand_in_canonical_asph(prod, *nt)) {
                            (void)c;
                            note_target(x, om);
                        }
                    } else {
                        HeckeElt prod = mul_gen_right(ht.element(u), sp);
                        prod += detail::v_plus() * ht.element(u);
                        for (const auto& [x, c] : expand_in_canonical(prod, ht)) {
                            (void)c;
                            note_target(x, om);
                        }
                    }
                }
                for (const auto& og : g.omega_edge_gens) {
                    WeylElt newom = multiply(om, og);
                    if (!translate_set.count(newom)) { esc = true; continue; }
                    note_target(u, newom);
                }
            }
            if (left_action) {
                for (std::size_t gi = 0; gi < gens.elts.size(); ++gi) {
                    // uH_t uH_{u om} = (uH_t uH_u) H_om
                    HeckeElt prod = mul_gen_left(gens.elts[gi], ht.element(u));
                    prod += detail::v_plus() * ht.element(u);
                    for (const auto& [x, c] : expand_in_canonical(prod, ht)) {
                        (void)c;
                        note_target(x, om);
                    }
                }
                for (const auto& og : g.omega_edge_gens) {
                    // H_og uH_{u om} = uH_{og u og^-1} H_{og om}
                    WeylElt newu = multiply(multiply(og, u), og.inverse());
                    WeylElt newom = multiply(og, om);
                    if (!translate_set.count(newom) || !ht.covers(newu)) { esc = true; continue; }
                    note_target(newu, newom);
                }
            }
        } catch (const insufficient_radius&) {
            esc = true;  // cannot happen for in-ball vertices; kept as a guard
        }

        g.frontier[vi] = esc ? 1 : 0;
        g.out[vi].assign(targets.begin(), targets.end());
    });

    return g;
}

inline CellGraph build_cell_graph(const CellContext& ctx, Side side,
                                  const CellOptions& opts = {}) {
    return build_cell_graph_with_tables(ctx, ctx.config(), side, opts);
}

inline CellGraph build_cell_graph(const RootDatumPtr& d, const Config& cfg, Side side,
                                  const CellOptions& opts = {}) {
    CellContext ctx(d, cfg);
    return build_cell_graph(ctx, side, opts);
}

struct Cell {
    std::vector<int> members;  // vertex ids, ascending
    bool complete = false;
};

struct CellPartition {
    RootDatumPtr datum;
    Side side = Side::Antispherical;
    Config cfg;
    std::vector<std::pair<WeylElt, WeylElt>> vertices;
    std::vector<char> frontier;
    std::vector<Cell> cells;
    std::vector<int> cell_of;             // vertex id -> cell id
    std::set<std::pair<int, int>> order;  // (i, j): cell i strictly reaches cell j
    std::string omega_note;

    WeylElt element(int vertex) const {
        return multiply(vertices[vertex].first, vertices[vertex].second);
    }
    int index_of(const std::pair<WeylElt, WeylElt>& key) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), key);
        if (it == vertices.end() || *it != key) return -1;
        return static_cast<int>(it - vertices.begin());
    }
    std::size_t complete_count() const {
        std::size_t n = 0;
        for (const auto& c : cells) n += c.complete ? 1 : 0;
        return n;
    }
};

/// Strongly connected components of the edge relation; mutual reachability
/// realizes the cell equivalence on the truncated set. SCCs that contain or
/// are reachable from a frontier vertex are reported incomplete.
inline CellPartition cells_from_graph(const CellGraph& g) {
    const std::size_t n = g.vertices.size();

    // Tarjan, iterative
    std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), stk;
    std::vector<char> on_stack(n, 0);
    int timer = 0, ncomp = 0;
    struct Frame { int v; std::size_t child; };
    for (std::size_t root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> call{{static_cast<int>(root), 0}};
        while (!call.empty()) {
            Frame& f = call.back();
            int v = f.v;
            if (f.child == 0) {
                disc[v] = low[v] = timer++;
                stk.push_back(v);
                on_stack[v] = 1;
            }
            if (f.child < g.out[v].size()) {
                int w = g.out[v][f.child++];
                if (disc[w] == -1) {
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                if (low[v] == disc[v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[w] = 0;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    // complete = the component holds at least one vertex with fully
    // resolved products; components made of frontier vertices only are
    // unresolved truncation debris
    std::vector<std::vector<int>> members(ncomp);
    std::vector<char> comp_complete(ncomp, 0);
    for (std::size_t i = 0; i < n; ++i) {
        members[comp[i]].push_back(static_cast<int>(i));
        if (!g.frontier[i]) comp_complete[comp[i]] = 1;
    }

    // deterministic numbering: by (minimal member length, text of the
    // minimal member)
    std::vector<int> perm(ncomp);
    for (int i = 0; i < ncomp; ++i) perm[i] = i;
    auto key = [&](int c) {
        int m = members[c].front();  // members ascend in vertex order
        WeylElt elt = g.element(m);
        return std::make_pair(elt.length(), format_elt(elt));
    };
    std::vector<std::pair<long long, std::string>> keys(ncomp);
    for (int i = 0; i < ncomp; ++i) keys[i] = key(i);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return keys[a] < keys[b]; });

    CellPartition p;
    p.datum = g.datum;
    p.side = g.side;
    p.cfg = g.cfg;
    p.vertices = g.vertices;
    p.frontier.assign(g.frontier.begin(), g.frontier.end());
    p.omega_note = g.omega_note;
    p.cells.resize(ncomp);
    p.cell_of.assign(n, -1);
    std::vector<int> newid(ncomp);
    for (int k = 0; k < ncomp; ++k) newid[perm[k]] = k;
    for (int k = 0; k < ncomp; ++k) {
        p.cells[newid[k]].members = members[k];
        p.cells[newid[k]].complete = comp_complete[k] != 0;
    }
    for (std::size_t i = 0; i < n; ++i) p.cell_of[i] = newid[comp[i]];

    // induced partial order: strict reachability between cells
    std::vector<std::set<int>> succ(ncomp);
    for (std::size_t v = 0; v < n; ++v)
        for (int w : g.out[v])
            if (p.cell_of[v] != p.cell_of[w]) succ[p.cell_of[v]].insert(p.cell_of[w]);
    // transitive closure over the condensation (it is a DAG)
    for (int a = 0; a < ncomp; ++a) {
        std::vector<int> queue(succ[a].begin(), succ[a].end());
        std::set<int> seen = succ[a];
        while (!queue.empty()) {
            int b = queue.back();
            queue.pop_back();
            p.order.insert({a, b});
            for (int c : succ[b])
                if (seen.insert(c).second) queue.push_back(c);
        }
    }
    return p;
}

/// Refines the complete flags of `p` using a partition of the same side at
/// a smaller radius. Edge sets only grow with the radius, so cells can only
/// merge: a cell of the large run is confirmed when it swallows a whole
/// complete cell of the small run. Cells that appear only near the rim
/// (whose equivalences may still be mid-merge) lose their complete flag.
inline void confirm_completeness(CellPartition& p, const CellPartition& smaller) {
    std::vector<char> confirmed(p.cells.size(), 0);
    for (const auto& d : smaller.cells) {
        if (!d.complete) continue;
        int target = -1;
        bool split = false;
        for (int v : d.members) {
            int pv = p.index_of(smaller.vertices[v]);
            if (pv < 0) { split = true; break; }
            if (target == -1) target = p.cell_of[pv];
            else if (target != p.cell_of[pv]) split = true;
        }
        if (split || target < 0)
            throw std::logic_error("cell partitions are not monotone under radius growth");
        confirmed[target] = 1;
    }
    for (std::size_t i = 0; i < p.cells.size(); ++i)
        p.cells[i].complete = p.cells[i].complete && confirmed[i];
}

/// Full pipeline for one side: SCC partition at the configured radius with
/// completeness confirmed against the radius-2 rerun over the same tables.
inline CellPartition analyze_cells(const CellContext& ctx, Side side,
                                   const CellOptions& opts = {}) {
    CellPartition p = cells_from_graph(build_cell_graph(ctx, side, opts));
    int lookback = ctx.config().ball_radius - 2;
    if (lookback >= 1) {
        Config small_cfg = ctx.config();
        small_cfg.ball_radius = lookback;
        CellGraph sg = build_cell_graph_with_tables(ctx, small_cfg, side, opts);
        CellPartition sp = cells_from_graph(sg);
        confirm_completeness(p, sp);
    }
    return p;
}

/// Eq-style cross check: each complete two-sided cell must meet the minimal
/// coset representatives in exactly one complete antispherical cell, and
/// the induced map must be a bijection onto the complete antispherical
/// cells. Incomplete cells are counted, not guessed about.
struct TwoSidedAsphReport {
    bool ok = false;
    std::vector<std::pair<int, int>> bijection;  // (two-sided cell, asph cell)
    std::size_t incomplete_two_sided = 0;
    std::size_t incomplete_asph = 0;
    std::vector<std::string> problems;
};

inline TwoSidedAsphReport check_two_sided_vs_antispherical(const CellContext& ctx,
                                                           const CellOptions& opts = {}) {
    CellPartition two = analyze_cells(ctx, Side::TwoSided, opts);
    CellPartition asph = analyze_cells(ctx, Side::Antispherical, opts);

    TwoSidedAsphReport rep;
    rep.ok = true;
    std::set<int> hit;
    for (std::size_t ci = 0; ci < two.cells.size(); ++ci) {
        const Cell& c = two.cells[ci];
        if (!c.complete) { ++rep.incomplete_two_sided; continue; }
        // members whose antispherical cell is still unresolved are skipped;
        // the check runs on resolved data only
        std::set<int> asph_cells;
        for (int v : c.members) {
            const auto& key = two.vertices[v];
            if (!in_fw(key.first)) continue;
            int av = asph.index_of(key);
            if (av < 0) continue;
            if (!asph.cells[asph.cell_of[av]].complete) continue;
            asph_cells.insert(asph.cell_of[av]);
        }
        if (asph_cells.size() != 1) {
            rep.problems.push_back("complete two-sided cell " + std::to_string(ci) + " meets " +
                                   std::to_string(asph_cells.size()) +
                                   " complete antispherical cells");
            rep.ok = false;
            continue;
        }
        int a = *asph_cells.begin();
        if (!hit.insert(a).second) {
            rep.problems.push_back("two complete two-sided cells map to antispherical cell " +
                                   std::to_string(a));
            rep.ok = false;
            continue;
        }
        rep.bijection.push_back({static_cast<int>(ci), a});
    }
    for (std::size_t ai = 0; ai < asph.cells.size(); ++ai) {
        if (!asph.cells[ai].complete) { ++rep.incomplete_asph; continue; }
        if (!hit.count(static_cast<int>(ai))) {
            rep.problems.push_back("complete antispherical cell " + std::to_string(ai) +
                                   " not reached by any complete two-sided cell");
            rep.ok = false;
        }
    }
    return rep;
}

inline TwoSidedAsphReport check_two_sided_vs_antispherical(const RootDatumPtr& d,
                                                           const Config& cfg,
                                                           const CellOptions& opts = {}) {
    CellContext ctx(d, cfg);
    return check_two_sided_vs_antispherical(ctx, opts);
}

/// Checks w omega ~ w' omega' <=> w ~ w' over members of complete cells,
/// in both directions.
inline bool check_omega_stability(const CellPartition& p) {
    std::vector<int> complete_vertices;
    for (const auto& c : p.cells)
        if (c.complete)
            complete_vertices.insert(complete_vertices.end(), c.members.begin(), c.members.end());

    WeylElt id = WeylElt::identity(p.datum);
    for (std::size_t a = 0; a < complete_vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < complete_vertices.size(); ++b) {
            int i = complete_vertices[a], j = complete_vertices[b];
            int bi = p.index_of({p.vertices[i].first, id});
            int bj = p.index_of({p.vertices[j].first, id});
            if (bi < 0 || bj < 0) return false;
            bool ext_eq = p.cell_of[i] == p.cell_of[j];
            bool base_eq = p.cell_of[bi] == p.cell_of[bj];
            if (ext_eq != base_eq) return false;
        }
    }
    return true;
}

} // namespace cellulo
