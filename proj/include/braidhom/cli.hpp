#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "braidhom/bounds.hpp"
#include "braidhom/braid.hpp"
#include "braidhom/catalog.hpp"
#include "braidhom/oracle.hpp"
#include "braidhom/sp_model.hpp"
#include "braidhom/tp_models.hpp"
#include "braidhom/verify.hpp"

namespace braidhom {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

namespace cli_detail {

inline json with_schema(json j) {
    j["schema_version"] = 1;
    return j;
}

inline std::string render(const json& j) { return j.dump(2) + "\n"; }

inline json load_json_file(const std::string& path) {
    if (!std::filesystem::is_regular_file(path))
        throw std::invalid_argument("cannot read input file '" + path + "'");
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read input file '" + path + "'");
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("cannot parse JSON in '" + path + "': " + e.what());
    }
}

}  // namespace cli_detail

/** Parses and runs one job; output and exit status are returned, not printed. */
inline CliResult run_cli(const std::vector<std::string>& args) {
    using cli_detail::load_json_file;
    using cli_detail::render;
    using cli_detail::with_schema;

    std::ostringstream out;
    std::ostringstream err;
    int code = 0;

    CLI::App app{"homology of symmetric products, truncated products and braid spaces"};
    app.name("braidhom");
    app.require_subcommand(1);

    struct {
        int n = 0, k = 0, d = 1, genus = 0, punctures = 0, r = 0, w = 0;
        std::string coeff = "z", flavor, mode = "sp", space, theorem, name;
        std::string rel_file, base_file, summands_file, full_file, previous_file;
        bool reduced = false, closed_flag = false, open_flag = false;
        std::uint64_t max_simplices = 0;
    } opt;
    std::string format = "table";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: table or json")
            ->check(CLI::IsMember({"table", "json"}));
    };
    auto emit = [&](const json& j, const std::string& table_text) {
        if (format == "json")
            out << render(with_schema(j));
        else
            out << table_text << "\n";
    };

    auto* sp = app.add_subcommand("sp-surface",
                                  "homology of the symmetric-product model of a surface");
    sp->add_option("--genus", opt.genus, "genus of the surface")->required();
    sp->add_option("--punctures", opt.punctures, "number of punctures");
    sp->add_option("--n", opt.n, "symmetric-product weight")->required();
    sp->add_option("--coeff", opt.coeff, "coefficients: z, f2, f<p> or pmz");
    sp->add_flag("--reduced", opt.reduced, "collapse the lower stage at the basepoint");
    add_format(sp);
    sp->callback([&] {
        Coefficients coeff = Coefficients::parse(opt.coeff);
        GradedAbelianGroup h =
            homology(build_sp_model(TwoComplexPresentation::surface(opt.genus, opt.punctures),
                                    opt.n, opt.reduced),
                     coeff);
        emit(json{{"command", "sp-surface"},
                  {"genus", opt.genus},
                  {"punctures", opt.punctures},
                  {"n", opt.n},
                  {"coeff", coeff.name()},
                  {"reduced", opt.reduced},
                  {"homology", h.to_json()}},
             h.to_string(coeff.free_label()));
    });

    auto* tp = app.add_subcommand("tp-circle",
                                  "homology of the truncated-product stage of a circle");
    tp->add_option("--n", opt.n, "stage")->required();
    tp->add_option("--coeff", opt.coeff, "coefficients: z, f2, f<p> or pmz");
    add_format(tp);
    tp->callback([&] {
        Coefficients coeff = Coefficients::parse(opt.coeff);
        GradedAbelianGroup h = homology(tp_circle_complex(opt.n), coeff);
        emit(json{{"command", "tp-circle"},
                  {"n", opt.n},
                  {"coeff", coeff.name()},
                  {"homology", h.to_json()}},
             h.to_string(coeff.free_label()));
    });

    auto* wt = app.add_subcommand(
        "wedge-tp", "stage homology of a wedge assembled from summand stage tables");
    wt->add_option("--summands", opt.summands_file,
                   "JSON array of stage tables, or of the strings 'circle' and 'point'")
        ->required();
    wt->add_option("--n", opt.n, "stage")->required();
    wt->add_option("--coeff", opt.coeff, "coefficients: z, f2, f<p> or pmz");
    add_format(wt);
    wt->callback([&] {
        json doc = load_json_file(opt.summands_file);
        const json& list = doc.is_array() ? doc : doc.at("summands");
        std::vector<ReducedTpTable> summands;
        for (const auto& item : list) {
            if (item.is_string()) {
                std::string s = item.get<std::string>();
                if (s == "circle")
                    summands.push_back(circle_tp_table(opt.n));
                else if (s == "point")
                    summands.push_back(point_tp_table(opt.n));
                else
                    throw std::invalid_argument("unknown summand '" + s +
                                                "'; use circle, point or a stage-table object");
            } else {
                summands.push_back(ReducedTpTable::from_json(item));
            }
        }
        Coefficients coeff = Coefficients::parse(opt.coeff);
        GradedAbelianGroup h = reduced_tp_wedge(summands, opt.n, coeff);
        emit(json{{"command", "wedge-tp"},
                  {"n", opt.n},
                  {"coeff", coeff.name()},
                  {"summands", summands.size()},
                  {"homology", h.to_json()}},
             h.to_string(coeff.free_label()));
    });

    auto* du = app.add_subcommand("dualize",
                                  "braid cohomology from a relative stage-pair homology table");
    du->add_option("--rel", opt.rel_file, "JSON file with the relative homology table")
        ->required();
    du->add_option("--k", opt.k, "number of points")->required();
    du->add_option("--d", opt.d, "manifold dimension")->required();
    du->add_option("--flavor", opt.flavor, "punctured or closed")
        ->required()
        ->check(CLI::IsMember({"punctured", "closed"}));
    du->add_option("--coeff", opt.coeff, "coefficients: z, f2, f<p> or pmz");
    du->add_option("--r", opt.r, "connectivity of the collapsed stage quotient");
    add_format(du);
    du->callback([&] {
        GradedAbelianGroup rel = GradedAbelianGroup::from_json(load_json_file(opt.rel_file));
        DualityFlavor flavor = parse_flavor(opt.flavor);
        SpaceDescriptor space{opt.d, true, flavor == DualityFlavor::closed,
                              flavor == DualityFlavor::punctured ? 1 : 0, opt.r};
        CohomologyTable table = dualize(rel, opt.k, space, flavor, Coefficients::parse(opt.coeff));
        emit(json{{"command", "dualize"},
                  {"flavor", opt.flavor},
                  {"space", space.to_json()},
                  {"table", table.to_json()}},
             table.groups.to_string(table.coeff.free_label()));
    });

    auto* scl = app.add_subcommand(
        "split-closed", "closed-surface braid cohomology from two punctured tables");
    scl->add_option("--full", opt.full_file, "JSON cohomology table for n points")->required();
    scl->add_option("--previous", opt.previous_file, "JSON cohomology table for n-1 points")
        ->required();
    scl->add_option("--d", opt.d, "manifold dimension")->required();
    scl->add_option("--k", opt.k, "expected point count of the full table");
    add_format(scl);
    scl->callback([&] {
        CohomologyTable full = CohomologyTable::from_json(load_json_file(opt.full_file));
        CohomologyTable previous = CohomologyTable::from_json(load_json_file(opt.previous_file));
        if (scl->count("--k") && full.k != opt.k)
            throw std::invalid_argument("--k does not match the point count of the full table");
        CohomologyTable table = split_closed(full, previous, opt.d);
        emit(json{{"command", "split-closed"}, {"d", opt.d}, {"table", table.to_json()}},
             table.groups.to_string(table.coeff.free_label()));
    });

    auto* spl = app.add_subcommand(
        "split-punctures",
        "braid cohomology of a k-punctured manifold from once-punctured base tables");
    spl->add_option("--base", opt.base_file, "JSON array of cohomology tables for r = 0..n points")
        ->required();
    spl->add_option("--k", opt.k, "number of punctures")->required();
    spl->add_option("--d", opt.d, "manifold dimension")->required();
    spl->add_option("--n", opt.n, "point count; must match the base array length minus one");
    spl->add_option("--coeff", opt.coeff, "coefficients: z, f2, f<p> or pmz");
    add_format(spl);
    spl->callback([&] {
        json doc = load_json_file(opt.base_file);
        std::vector<CohomologyTable> base;
        for (const auto& item : doc) base.push_back(CohomologyTable::from_json(item));
        if (spl->count("--n") && opt.n != static_cast<int>(base.size()) - 1)
            throw std::invalid_argument("--n must equal the number of base tables minus one");
        SpaceDescriptor space{opt.d, true, true, 0, 0};
        CohomologyTable table =
            split_punctures(base, opt.k, space, Coefficients::parse(opt.coeff));
        emit(json{{"command", "split-punctures"},
                  {"k", opt.k},
                  {"d", opt.d},
                  {"table", table.to_json()}},
             table.groups.to_string(table.coeff.free_label()));
    });

    auto* bo = app.add_subcommand("bounds", "evaluate a dimension or connectivity bound");
    bo->add_option("--theorem", opt.theorem,
                   "main3 (cohomological dimension), connectivity, conntwo, nakaoka or arnold")
        ->required()
        ->check(CLI::IsMember({"main3", "cohdim", "connectivity", "conntwo", "nakaoka",
                               "arnold"}));
    bo->add_option("--d", opt.d, "manifold dimension");
    bo->add_option("--k", opt.k, "number of points");
    bo->add_option("--n", opt.n, "symmetric-product weight");
    bo->add_option("--r", opt.r, "connectivity parameter");
    bo->add_option("--w", opt.w, "number of one-cells");
    bo->add_flag("--closed", opt.closed_flag, "closed manifold without punctures");
    bo->add_flag("--open", opt.open_flag, "manifold with free boundary");
    bo->add_option("--punctures", opt.punctures, "number of punctures");
    add_format(bo);
    bo->callback([&] {
        BoundReport rep;
        if (opt.theorem == "main3" || opt.theorem == "cohdim") {
            SpaceDescriptor space{opt.d, true, !opt.open_flag, opt.punctures, opt.r};
            rep = cohdim_bound(space, opt.k);
        } else if (opt.theorem == "connectivity") {
            rep = sp_connectivity_bound(opt.n, opt.r);
        } else if (opt.theorem == "conntwo") {
            rep = conn2_bound(opt.n, opt.w);
        } else if (opt.theorem == "nakaoka") {
            rep = nakaoka_bound(opt.k, opt.r);
        } else {
            rep = arnold_bound(opt.k, opt.d);
        }
        std::ostringstream line;
        line << rep.formula << (rep.kind == BoundReport::Kind::upper ? " upper" : " lower")
             << " bound: " << rep.value;
        emit(json{{"command", "bounds"}, {"theorem", opt.theorem}, {"report", rep.to_json()}},
             line.str());
    });

    auto* orc = app.add_subcommand(
        "oracle", "brute-force homology of symmetric and truncated product models");
    orc->add_option("--space", opt.space,
                    "builtin name (point, interval, circle, circle4, sphere, torus, "
                    "figure-eight, wedge-<w>) or a JSON file")
        ->required();
    orc->add_option("--mode", opt.mode, "sp, tp, spbar or tpbar");
    orc->add_option("--n", opt.n, "power")->required();
    orc->add_option("--coeff", opt.coeff, "coefficients: z, f2, f<p> or pmz");
    orc->add_option("--max-simplices", opt.max_simplices, "override the simplex budget");
    add_format(orc);
    orc->callback([&] {
        SimplicialComplex x = std::filesystem::exists(opt.space)
                                  ? SimplicialComplex::from_json(load_json_file(opt.space))
                                  : builtin_space(opt.space);
        Coefficients coeff = Coefficients::parse(opt.coeff);
        std::optional<Budget> budget;
        if (opt.max_simplices > 0)
            budget = Budget{static_cast<std::size_t>(opt.max_simplices)};
        OracleResult r = oracle_homology(x, oracle_mode_from_string(opt.mode), opt.n, coeff,
                                         budget);
        std::ostringstream text;
        text << r.homology.to_string(coeff.free_label()) << "\n"
             << (r.verified ? "verified" : "oracle-unverified") << ", " << r.simplices_used
             << " simplices";
        emit(json{{"command", "oracle"},
                  {"space", opt.space},
                  {"mode", opt.mode},
                  {"n", opt.n},
                  {"coeff", coeff.name()},
                  {"result", r.to_json()}},
             text.str());
    });

    auto* cat = app.add_subcommand("catalog",
                                   "list the reference table of known spaces and facts");
    cat->add_option("--name", opt.name, "print a single entry by key");
    add_format(cat);
    cat->callback([&] {
        if (format == "json") {
            if (cat->count("--name"))
                out << render(with_schema(catalog_lookup(opt.name).to_json()));
            else
                out << catalog_document().dump(2) << "\n";
            return;
        }
        std::vector<CatalogEntry> entries;
        if (cat->count("--name"))
            entries.push_back(catalog_lookup(opt.name));
        else
            entries = catalog_entries();
        for (const auto& e : entries) {
            out << e.name << (e.checkable ? "  (machine-checked)" : "  (text)") << "\n";
            out << "    " << e.statement << "\n";
            out << "    [" << e.attribution << "]\n";
        }
    });

    auto* ver = app.add_subcommand("verify", "run the full acceptance suite");
    add_format(ver);
    ver->callback([&] {
        AcceptanceReport report = run_acceptance();
        if (format == "json") {
            out << render(report.to_json());
        } else {
            for (const auto& cr : report.criteria)
                out << std::left << std::setw(8) << cr.id << (cr.passed ? "PASS  " : "FAIL  ")
                    << cr.description << " (" << cr.detail << ")\n";
            out << (report.all_passed() ? "all criteria passed" : "acceptance failed") << "\n";
        }
        if (!report.all_passed()) code = 1;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return {rc == 0 ? 0 : 2, out.str(), err.str()};
    } catch (const budget_error& e) {
        err << e.what() << "\n";
        return {3, out.str(), err.str()};
    } catch (const json::exception& e) {
        err << e.what() << "\n";
        return {2, out.str(), err.str()};
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return {2, out.str(), err.str()};
    } catch (const std::out_of_range& e) {
        err << e.what() << "\n";
        return {2, out.str(), err.str()};
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return {1, out.str(), err.str()};
    }
    return {code, out.str(), err.str()};
}

}  // namespace braidhom
