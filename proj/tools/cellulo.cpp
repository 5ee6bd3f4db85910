// Batch front end: every computation the library offers, with
// machine-readable output. One command per process; identical invocations
// produce byte-identical outputs.

#include "cellulo/asph.hpp"
#include "cellulo/cells.hpp"
#include "cellulo/checks.hpp"
#include "cellulo/glcells.hpp"
#include "cellulo/hecke.hpp"
#include "cellulo/weyl.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace cellulo;

namespace {

RootDatumPtr load_datum(const std::string& label, const std::string& file) {
    try {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw CLI::ValidationError("--datum-file", "cannot open " + file);
            json j;
            in >> j;
            std::vector<std::vector<long long>> roots, coroots;
            for (const auto& r : j.at("simple_roots")) roots.push_back(r.get<std::vector<long long>>());
            for (const auto& r : j.at("simple_coroots")) coroots.push_back(r.get<std::vector<long long>>());
            return RootDatum::from_vectors(j.at("rank").get<std::size_t>(), std::move(roots),
                                           std::move(coroots), j.value("name", file));
        }
        if (label.rfind("GL:", 0) == 0) {
            std::vector<long long> blocks;
            std::stringstream ss(label.substr(3));
            std::string tok;
            while (std::getline(ss, tok, ',')) blocks.push_back(std::stoll(tok));
            return RootDatum::build_gl(blocks);
        }
        return RootDatum::build_simple(label);
    } catch (const CLI::ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        // a datum the engine cannot even construct is a flag problem
        throw CLI::ValidationError("--datum", e.what());
    }
}

long long effective_ell(long long ell, const RootDatumPtr& d) {
    return ell > 0 ? ell : d->coxeter_number() + 1;
}

void write_output(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << text;
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stoll(tok));
    return v;
}

json cells_to_json(const CellPartition& p, const TwoSidedAsphReport* bij) {
    json j;
    j["datum"] = p.datum->name();
    j["side"] = side_name(p.side);
    j["radius"] = p.cfg.ball_radius;
    j["ell"] = p.cfg.ell;
    j["omega_policy"] = p.omega_note.empty() ? "full Omega" : p.omega_note;
    json cells = json::array();
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        json c;
        c["id"] = i;
        c["complete"] = p.cells[i].complete;
        json members = json::array(), fr = json::array();
        for (int v : p.cells[i].members) {
            std::string name = format_elt(p.element(v));
            members.push_back(name);
            if (p.frontier[v]) fr.push_back(name);
        }
        c["members"] = std::move(members);
        c["frontier_members"] = std::move(fr);
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    json order = json::array();
    for (const auto& [a, b] : p.order) order.push_back(json::array({a, b}));
    j["order"] = std::move(order);
    if (bij) {
        json pairs = json::array();
        for (const auto& [t, a] : bij->bijection) pairs.push_back(json::array({t, a}));
        j["bijection_2sided_asph"] = std::move(pairs);
    }
    return j;
}

int run_check(bool quick, const std::string& out, const std::string& format) {
    std::vector<CheckResult> results = quick ? run_cross_validation() : run_acceptance();
    bool all = true;
    std::ostringstream text;
    for (const auto& r : results) {
        all = all && r.pass;
        std::ostringstream line;
        line << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name;
        std::cerr << line.str() << "  (" << r.detail << ")\n";
        text << line.str() << "\n";
    }
    std::cerr << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
    if (format == "json") {
        json j;
        j["pass"] = all;
        json arr = json::array();
        for (const auto& r : results) {
            json c;
            c["id"] = r.id;
            c["name"] = r.name;
            c["pass"] = r.pass;
            c["detail"] = r.detail;
            c["seconds"] = r.seconds;
            arr.push_back(std::move(c));
        }
        j["checks"] = std::move(arr);
        write_output(out, dump(j));
    } else {
        write_output(out, text.str());
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Kazhdan-Lusztig cell combinatorics for extended affine Weyl groups"};
    app.require_subcommand(1);

    std::string datum_label = "A1", datum_file, out, format = "json", side_name_arg = "antispherical";
    long long ell = 0;
    int radius = 8, max_length = 8, max_terms = 4, omega_bound = 1;
    std::string weight_arg, elt_arg, a_arg = "2";
    bool quick = false;

    auto add_datum_flags = [&](CLI::App* cmd) {
        cmd->add_option("--datum", datum_label, "built-in datum: A1, A2, B2, G2 or GL:a1,a2,...");
        cmd->add_option("--datum-file", datum_file, "JSON root-datum description");
        cmd->add_option("--out", out, "output path (default stdout)");
    };

    auto* c_klpoly = app.add_subcommand("klpoly", "canonical basis of the Hecke algebra over a ball");
    add_datum_flags(c_klpoly);
    c_klpoly->add_option("--max-length", max_length, "table radius")->required();

    auto* c_asph = app.add_subcommand("asph-basis", "canonical basis of the antispherical module");
    add_datum_flags(c_asph);
    c_asph->add_option("--max-length", max_length, "table radius")->required();

    auto* c_cells = app.add_subcommand("cells", "cell partition on a truncated ball");
    add_datum_flags(c_cells);
    c_cells->add_option("--side", side_name_arg, "left | right | two-sided | antispherical");
    c_cells->add_option("--radius", radius, "ball radius")->required();
    c_cells->add_option("--ell", ell, "dilation parameter (default: Coxeter number + 1)");
    c_cells->add_option("--omega-bound", omega_bound, "Omega translate bound for GL data");
    c_cells->add_option("--format", format, "json | csv");

    auto* c_alcove = app.add_subcommand("alcove", "lower-closure alcove coordinates");
    add_datum_flags(c_alcove);
    c_alcove->add_option("--ell", ell, "dilation parameter (default: Coxeter number + 1)");
    c_alcove->add_option("--weight", weight_arg, "comma-separated weight coordinates");
    c_alcove->add_option("--elt", elt_arg, "group element, e.g. t[1,0]*s1");
    c_alcove->add_option("--format", format, "json | csv");

    auto* c_gl = app.add_subcommand("gl-cells", "weight-cell labels for a product of general linear groups");
    c_gl->add_option("--a", a_arg, "block sizes, e.g. 4 or 2,3")->required();
    c_gl->add_option("--max-terms", max_terms, "maximal nontrivial chain length");
    c_gl->add_option("--format", format, "json | table1");
    c_gl->add_option("--out", out, "output path (default stdout)");

    auto* c_orbit = app.add_subcommand("orbit-count", "nilpotent orbit count for a supported datum");
    add_datum_flags(c_orbit);
    c_orbit->add_option("--format", format, "json | csv");

    auto* c_check = app.add_subcommand("check", "run the verification suite; nonzero exit on mismatch");
    c_check->add_flag("--quick", quick, "only the cell/table cross-validation subset");
    c_check->add_option("--out", out, "report path (default stdout)");
    c_check->add_option("--format", format, "json | text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_klpoly) || app.got_subcommand(c_asph)) {
            if (format != "json") throw CLI::ValidationError("--format", "only json is supported here");
            auto d = load_datum(datum_label, datum_file);
            CanonicalTable t(d, max_length);
            json j;
            j["datum"] = d->name();
            j["max_length"] = max_length;
            json entries = json::object();
            if (app.got_subcommand(c_klpoly)) {
                for (const auto& [w, e] : t.entries()) {
                    json row = json::object();
                    for (const auto& [x, c] : e.terms()) row[format_elt(x)] = c.str();
                    entries[format_elt(w)] = std::move(row);
                }
            } else {
                AsphTable nt(t, max_length);
                for (const auto& [w, e] : nt.entries()) {
                    json row = json::object();
                    for (const auto& [x, c] : e.terms()) row[format_elt(x)] = c.str();
                    entries[format_elt(w)] = std::move(row);
                }
            }
            j["entries"] = std::move(entries);
            write_output(out, dump(j));
            return 0;
        }

        if (app.got_subcommand(c_cells)) {
            if (format != "json" && format != "csv")
                throw CLI::ValidationError("--format", "cells supports json or csv");
            Side side = side_from_name(side_name_arg);
            auto d = load_datum(datum_label, datum_file);
            Config cfg{effective_ell(ell, d), radius};
            CellOptions opts;
            opts.omega_translate_bound = omega_bound;
            CellContext ctx(d, cfg);
            CellPartition p = analyze_cells(ctx, side, opts);
            if (format == "csv") {
                std::ostringstream csv;
                csv << "cell,complete,member\n";
                for (std::size_t i = 0; i < p.cells.size(); ++i)
                    for (int v : p.cells[i].members)
                        csv << i << "," << (p.cells[i].complete ? "true" : "false") << ","
                            << format_elt(p.element(v)) << "\n";
                write_output(out, csv.str());
            } else if (side == Side::TwoSided) {
                TwoSidedAsphReport rep = check_two_sided_vs_antispherical(ctx, opts);
                write_output(out, dump(cells_to_json(p, &rep)));
            } else {
                write_output(out, dump(cells_to_json(p, nullptr)));
            }
            return 0;
        }

        if (app.got_subcommand(c_alcove)) {
            if (weight_arg.empty() == elt_arg.empty())
                throw CLI::ValidationError("--weight/--elt", "give exactly one of --weight, --elt");
            if (format != "json" && format != "csv")
                throw CLI::ValidationError("--format", "alcove supports json or csv");
            auto d = load_datum(datum_label, datum_file);
            Config cfg{effective_ell(ell, d), 0};
            Weight lambda = Weight::zero(d->rank());
            json j;
            j["datum"] = d->name();
            j["ell"] = cfg.ell;
            if (!weight_arg.empty()) {
                lambda = Weight::from_ints(parse_int_list(weight_arg));
                if (lambda.rank() != d->rank())
                    throw CLI::ValidationError("--weight", "rank mismatch");
            } else {
                WeylElt w = parse_elt(elt_arg, d);
                lambda = dot_action(w, Weight::zero(d->rank()), cfg);
                j["element"] = format_elt(w);
                j["in_fw"] = in_fw(w);
                j["in_fwf"] = in_fwf(w);
            }
            AlcoveCoords a = alcove_of(lambda, d, cfg);
            std::vector<long long> lc;
            for (const auto& x : lambda.c) lc.push_back(rat_to_int(x));
            j["weight"] = lc;
            json roots = json::array(), ns = json::array();
            for (std::size_t i = 0; i < d->positive_roots().size(); ++i) {
                roots.push_back(d->positive_roots()[i].root);
                ns.push_back(a.n[i]);
            }
            j["positive_roots"] = std::move(roots);
            j["n"] = std::move(ns);
            if (format == "csv") {
                std::ostringstream csv;
                csv << "root,n\n";
                for (std::size_t i = 0; i < a.n.size(); ++i) {
                    for (std::size_t k = 0; k < d->positive_roots()[i].root.size(); ++k)
                        csv << (k ? " " : "") << d->positive_roots()[i].root[k];
                    csv << "," << a.n[i] << "\n";
                }
                write_output(out, csv.str());
            } else {
                write_output(out, dump(j));
            }
            return 0;
        }

        if (app.got_subcommand(c_gl)) {
            if (format != "json" && format != "table1")
                throw CLI::ValidationError("--format", "gl-cells supports json or table1");
            std::vector<long long> a = parse_int_list(a_arg);
            auto labels = enumerate_cell_labels(a, max_terms);
            if (format == "table1") {
                std::ostringstream t;
                for (const auto& l : labels) t << l.str() << "\n";
                write_output(out, t.str());
            } else {
                json j;
                j["a"] = a;
                j["max_terms"] = max_terms;
                json rows = json::array(), data = json::array();
                for (const auto& l : labels) {
                    rows.push_back(l.str());
                    json chain = json::array();
                    for (const auto& mp : l.seq) {
                        json parts = json::array();
                        for (const auto& p : mp.parts) parts.push_back(p.parts);
                        chain.push_back(std::move(parts));
                    }
                    data.push_back(std::move(chain));
                }
                j["rows"] = std::move(rows);
                j["labels"] = std::move(data);
                write_output(out, dump(j));
            }
            return 0;
        }

        if (app.got_subcommand(c_orbit)) {
            if (format != "json" && format != "csv")
                throw CLI::ValidationError("--format", "orbit-count supports json or csv");
            auto d = load_datum(datum_label, datum_file);
            long long n = orbit_count(d);
            if (format == "csv") {
                std::ostringstream csv;
                csv << "datum,count\n" << d->name() << "," << n << "\n";
                write_output(out, csv.str());
            } else {
                json j;
                j["datum"] = d->name();
                j["count"] = n;
                write_output(out, dump(j));
            }
            return 0;
        }

        if (app.got_subcommand(c_check)) {
            if (format != "json" && format != "text")
                throw CLI::ValidationError("--format", "check supports json or text");
            return run_check(quick, out, format);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
