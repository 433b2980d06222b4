// Command-line front end for the Z/2 Dijkgraaf-Witten invariant of Seifert
// fibered spaces: the arithmetic classifier, the triangulation state-sum
// oracle, triangulation builders, a comparison driver, bulk sweeps, and
// manifold-preserving parameter moves.
//
// Output is a single JSON line per result (human-readable form behind
// --pretty). Exit codes: 0 success, 1 validation error, 2 internal
// self-check failure (the two computation routes disagree), 3 budget refusal.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dw/builders.hpp"
#include "dw/classifier.hpp"
#include "dw/cohomology.hpp"
#include "dw/errors.hpp"
#include "dw/seifert.hpp"
#include "dw/triangulation.hpp"

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Seifert data <-> JSON

json fibers_json(const std::vector<dw::Fiber>& fs) {
    json a = json::array();
    for (const dw::Fiber& f : fs) a.push_back(json::array({f.p, f.q}));
    return a;
}

json data_json(const dw::SeifertData& d) {
    json j;
    j["genus"] = d.genus;
    j["fibers"] = fibers_json(d.fibers);
    return j;
}

dw::SeifertData data_from_json(const json& j) {
    if (!j.is_object())
        throw dw::ValidationError("spec: expected an object with fields genus and fibers");
    for (const auto& item : j.items())
        if (item.key() != "genus" && item.key() != "fibers")
            throw dw::ValidationError("spec: unknown field '" + item.key() + "'");
    dw::SeifertData d;
    if (j.contains("genus")) {
        if (!j["genus"].is_number_integer())
            throw dw::ValidationError("spec: genus must be an integer");
        d.genus = j["genus"].get<long long>();
    }
    if (j.contains("fibers")) {
        if (!j["fibers"].is_array())
            throw dw::ValidationError("spec: fibers must be a list of [p, q] pairs");
        for (const auto& e : j["fibers"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw dw::ValidationError("spec: each fiber must be a pair of integers");
            d.fibers.push_back(dw::Fiber{e[0].get<long long>(), e[1].get<long long>()});
        }
    }
    return d;
}

dw::SeifertData read_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dw::ValidationError("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw dw::ValidationError("spec parse error in " + path + ": " + e.what());
    }
    return data_from_json(j);
}

// ---------------------------------------------------------------------------
// Output

std::string fraction_str(const json& v) {
    long long num = v["num"].get<long long>();
    long long den = v["den"].get<long long>();
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool is_fraction(const json& v) {
    return v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den");
}

std::string pretty_value(const std::string& key, const json& v) {
    if (v.is_null()) return "-";
    if (is_fraction(v)) return fraction_str(v);
    if (key == "fibers" && v.is_array()) {
        std::vector<dw::Fiber> fs;
        for (const auto& e : v) fs.push_back(dw::Fiber{e[0].get<long long>(), e[1].get<long long>()});
        return dw::format_fibers(fs);
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void emit(const json& j, bool pretty) {
    if (!pretty) {
        std::cout << j.dump() << "\n";
        return;
    }
    std::size_t width = 0;
    for (const auto& item : j.items()) width = std::max(width, item.key().size());
    for (const auto& item : j.items()) {
        const json& v = item.value();
        if (v.is_object() && !is_fraction(v)) {
            std::cout << item.key() << ":\n";
            for (const auto& sub : v.items())
                std::cout << "  " << sub.key() << std::string(width > sub.key().size() ? width - sub.key().size() : 1, ' ')
                          << " " << pretty_value(sub.key(), sub.value()) << "\n";
        } else {
            std::cout << item.key() << std::string(width - item.key().size() + 1, ' ')
                      << " " << pretty_value(item.key(), v) << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// Shared option groups

struct SpecOpts {
    std::string file;
    std::string fibers;
    long long genus = 0;
    CLI::Option* file_o = nullptr;
    CLI::Option* fibers_o = nullptr;
    CLI::Option* genus_o = nullptr;

    void attach(CLI::App* cmd) {
        file_o = cmd->add_option(
            "spec", file,
            "spec file: one JSON line {\"genus\":g,\"fibers\":[[p,q],...]}");
        fibers_o = cmd->add_option("--fibers", fibers,
                                   "inline fiber list \"(p,q),(p,q),...\"; negative q as (1,-4)");
        genus_o = cmd->add_option("--genus", genus, "genus of the orientable base surface (default 0)");
    }

    dw::SeifertData resolve() const {
        bool from_file = file_o != nullptr && file_o->count() > 0;
        if (from_file && (fibers_o->count() > 0 || genus_o->count() > 0))
            throw dw::ValidationError("give either a spec file or inline --fibers/--genus, not both");
        dw::SeifertData d;
        if (from_file) {
            d = read_spec_file(file);
        } else {
            d.genus = genus;
            d.fibers = dw::parse_fibers(fibers);
        }
        return dw::canonicalize(d);
    }
};

struct BudgetOpts {
    long long max_tets = dw::kDefaultMaxTets;
    std::size_t max_m = dw::kDefaultMaxRank;

    void attach(CLI::App* cmd, bool with_max_m) {
        cmd->add_option("--max-tets", max_tets, "tetrahedron budget for builders (default 20000)");
        if (with_max_m)
            cmd->add_option("--max-m", max_m, "H^1 rank budget for the state sum (default 14)");
    }
};

// ---------------------------------------------------------------------------
// Result documents

json z_json(const dw::DWValue& z) {
    json j;
    j["num"] = z.numerator;
    j["den"] = z.denominator;
    return j;
}

json verdict_json(const dw::SeifertData& d, const dw::Verdict& v) {
    json j = data_json(d);
    j["in_class_a"] = v.in_class_a;
    j["b_eligible"] = v.b_eligible;
    j["xi_parity"] = v.xi_parity ? json(*v.xi_parity) : json(nullptr);
    j["in_class_b"] = v.in_class_b;
    j["essential"] = v.essential;
    j["m"] = v.m;
    j["z"] = z_json(v.z);
    return j;
}

json profile_json(const dw::CohomologyProfile& pr, std::size_t tets) {
    json j;
    j["tets"] = tets;
    j["m"] = pr.m;
    json qt = json::array();
    for (std::uint8_t v : pr.q_table) qt.push_back((int)v);
    j["q_table"] = qt;
    j["dim_a"] = pr.dim_a;
    j["k"] = pr.k;
    j["arf"] = pr.arf_invariant ? json(*pr.arf_invariant) : json(nullptr);
    j["z_definition"] = z_json(pr.z_definition);
    j["z_theorem1"] = z_json(pr.z_theorem);
    j["essential_witness"] = pr.essential_witness ? json(*pr.essential_witness) : json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------
// Builders shared by `build` and `oracle --build`

long long to_ll(const std::string& s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw dw::ValidationError("expected an integer, got '" + s + "'");
    return v;
}

dw::PseudoTriangulation build_family(const std::vector<std::string>& words,
                                     const dw::SeifertData& seifert_data, bool seifert_given,
                                     long long max_tets, json* info) {
    if (words.empty()) throw dw::ValidationError("--build needs a family: lens | product | seifert");
    const std::string& family = words[0];
    if (family == "lens") {
        if (words.size() != 3) throw dw::ValidationError("usage: --build lens p q");
        long long p = to_ll(words[1]), q = to_ll(words[2]);
        (*info)["family"] = "lens";
        (*info)["p"] = p;
        (*info)["q"] = q;
        return dw::build_lens(p, q, max_tets);
    }
    if (family == "product") {
        if (words.size() != 2) throw dw::ValidationError("usage: --build product genus");
        long long g = to_ll(words[1]);
        if (g < 0) throw dw::ValidationError("product genus must be non-negative");
        (*info)["family"] = "product";
        (*info)["genus"] = g;
        return dw::build_product((std::size_t)g, max_tets);
    }
    if (family == "seifert") {
        if (words.size() != 1)
            throw dw::ValidationError("usage: --build seifert with --fibers/--genus");
        if (!seifert_given)
            throw dw::ValidationError("--build seifert needs --fibers (or a spec file)");
        (*info)["family"] = "seifert";
        (*info)["genus"] = seifert_data.genus;
        (*info)["fibers"] = fibers_json(seifert_data.fibers);
        return dw::build_seifert(seifert_data, max_tets);
    }
    throw dw::ValidationError("unknown family '" + family + "' (expected lens | product | seifert)");
}

// ---------------------------------------------------------------------------
// sweep

struct SweepTask {
    long long genus;
    std::vector<dw::Fiber> fibers;
};

struct SweepRow {
    std::string text;
    bool disagree = false;
};

SweepRow sweep_row(const SweepTask& t, bool with_compare, long long max_tets, std::size_t max_m) {
    dw::SeifertData d = dw::canonicalize(dw::SeifertData{t.genus, t.fibers});
    dw::Verdict v = dw::classify(d);
    std::ostringstream o;
    o << t.genus << '\t' << dw::format_fibers(t.fibers) << '\t' << (v.in_class_a ? 1 : 0) << '\t'
      << (v.b_eligible ? 1 : 0) << '\t'
      << (v.xi_parity ? std::to_string(*v.xi_parity) : std::string("-")) << '\t'
      << (v.in_class_b ? 1 : 0) << '\t' << (v.essential ? 1 : 0) << '\t' << v.m << '\t'
      << v.z.str();
    SweepRow row;
    if (with_compare) {
        if (t.genus != 0) {
            o << "\t-\t-";  // the triangulation route needs a genus-0 base
        } else {
            try {
                dw::PseudoTriangulation tri = dw::build_seifert(d, max_tets);
                dw::CohomologyProfile pr = dw::profile_triangulation(tri, max_m);
                bool agree = v.z == pr.z_definition && v.z == pr.z_theorem &&
                             v.essential == pr.essential_witness.has_value();
                o << '\t' << pr.z_definition.str() << '\t' << (agree ? "yes" : "NO");
                row.disagree = !agree;
            } catch (const dw::BudgetError&) {
                o << "\t-\t-";  // out of budget: skip, never truncate silently
            }
        }
    }
    row.text = o.str();
    return row;
}

void print_rows(const std::vector<std::string>& rows, bool pretty) {
    if (!pretty) {
        for (const std::string& r : rows) std::cout << r << "\n";
        return;
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const std::string& r : rows) {
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = r.find('\t', start);
            cols.push_back(r.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (width.size() < cols.size()) width.resize(cols.size(), 0);
        for (std::size_t i = 0; i < cols.size(); ++i)
            width[i] = std::max(width[i], cols[i].size());
        cells.push_back(std::move(cols));
    }
    for (const auto& cols : cells) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) std::cout << "  ";
            std::cout << cols[i];
            if (i + 1 < cols.size())
                std::cout << std::string(width[i] - cols[i].size(), ' ');
        }
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Z/2 Dijkgraaf-Witten invariant of orientable Seifert fibered spaces:\n"
        "an arithmetic classifier and a triangulation state-sum oracle that\n"
        "must agree."};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "human-readable output instead of single-line JSON");
    auto add_pretty = [&pretty](CLI::App* cmd) {
        cmd->add_flag("--pretty", pretty, "human-readable output instead of single-line JSON");
    };

    // classify -------------------------------------------------------------
    CLI::App* classify = app.add_subcommand(
        "classify", "decide essentiality and the invariant from Seifert data alone");
    SpecOpts classify_spec;
    classify_spec.attach(classify);
    add_pretty(classify);

    // invariant ------------------------------------------------------------
    CLI::App* invariant = app.add_subcommand("invariant", "print only the invariant value z");
    SpecOpts invariant_spec;
    invariant_spec.attach(invariant);
    add_pretty(invariant);

    // homology -------------------------------------------------------------
    CLI::App* homology = app.add_subcommand(
        "homology", "first homology of the total space from the presentation matrix");
    SpecOpts homology_spec;
    homology_spec.attach(homology);
    add_pretty(homology);

    // build ----------------------------------------------------------------
    CLI::App* build = app.add_subcommand("build", "write a triangulation file for a standard family");
    build->require_subcommand(1);

    CLI::App* build_lens_cmd = build->add_subcommand("lens", "lens space L(p,q) from a layered solid torus");
    long long bl_p = 0, bl_q = 0;
    std::string bl_out;
    BudgetOpts bl_budget;
    build_lens_cmd->add_option("p", bl_p, "order of the first homology group")->required();
    build_lens_cmd->add_option("q", bl_q, "gluing parameter, coprime to p")->required();
    build_lens_cmd->add_option("-o,--output", bl_out, "output triangulation file")->required();
    bl_budget.attach(build_lens_cmd, false);
    add_pretty(build_lens_cmd);

    CLI::App* build_product_cmd =
        build->add_subcommand("product", "closed orientable surface times a circle");
    long long bp_genus = 0;
    std::string bp_out;
    BudgetOpts bp_budget;
    build_product_cmd->add_option("genus", bp_genus, "genus of the surface factor")->required();
    build_product_cmd->add_option("-o,--output", bp_out, "output triangulation file")->required();
    bp_budget.attach(build_product_cmd, false);
    add_pretty(build_product_cmd);

    CLI::App* build_seifert_cmd =
        build->add_subcommand("seifert", "Seifert fibered space over the 2-sphere");
    SpecOpts bs_spec;
    std::string bs_out;
    BudgetOpts bs_budget;
    bs_spec.attach(build_seifert_cmd);
    build_seifert_cmd->add_option("-o,--output", bs_out, "output triangulation file")->required();
    bs_budget.attach(build_seifert_cmd, false);
    add_pretty(build_seifert_cmd);

    // oracle ---------------------------------------------------------------
    CLI::App* oracle = app.add_subcommand(
        "oracle", "cup-product state sum over H^1(M; Z/2) of a closed triangulation");
    std::string oracle_file;
    std::vector<std::string> oracle_build;
    SpecOpts oracle_spec;  // --fibers/--genus for "--build seifert"
    BudgetOpts oracle_budget;
    CLI::Option* oracle_file_o =
        oracle->add_option("file", oracle_file, "triangulation file to analyze");
    CLI::Option* oracle_build_o =
        oracle
            ->add_option("--build", oracle_build,
                         "analyze a built family instead: lens p q | product g | seifert")
            ->expected(1, 3);
    oracle_spec.file_o = nullptr;
    oracle_spec.fibers_o = oracle->add_option("--fibers", oracle_spec.fibers,
                                              "fiber list for --build seifert");
    oracle_spec.genus_o =
        oracle->add_option("--genus", oracle_spec.genus, "base genus for --build seifert");
    oracle_budget.attach(oracle, true);
    add_pretty(oracle);

    // compare --------------------------------------------------------------
    CLI::App* compare = app.add_subcommand(
        "compare", "run both routes on one genus-0 data set; exit 0 iff they agree");
    SpecOpts compare_spec;
    BudgetOpts compare_budget;
    compare_spec.attach(compare);
    compare_budget.attach(compare, true);
    add_pretty(compare);

    // sweep ----------------------------------------------------------------
    CLI::App* sweep = app.add_subcommand(
        "sweep", "classify every data set in a parameter box; tab-separated rows");
    long long sw_max_n = 0, sw_max_p = 0, sw_max_q = 0, sw_max_rows = 1000000;
    std::vector<long long> sw_genus{0};
    bool sw_compare = false;
    unsigned sw_jobs = 1;
    BudgetOpts sw_budget;
    sweep->add_option("--max-n", sw_max_n, "maximum number of fibers")->required();
    sweep->add_option("--max-p", sw_max_p, "maximum multiplicity p")->required();
    sweep->add_option("--max-q", sw_max_q, "maximum |q|")->required();
    sweep->add_option("--genus", sw_genus, "base genus values (comma separated, default 0)")
        ->delimiter(',');
    sweep->add_flag("--compare", sw_compare,
                    "also run the triangulation route where it is in budget");
    sweep->add_option("--jobs", sw_jobs, "worker threads; output order is unaffected");
    sweep->add_option("--max-rows", sw_max_rows, "refuse sweeps larger than this (default 1000000)");
    sw_budget.attach(sweep, true);
    add_pretty(sweep);

    // moves ----------------------------------------------------------------
    CLI::App* moves = app.add_subcommand(
        "moves", "apply a manifold-preserving move and print the resulting data set");
    moves->require_subcommand(1);

    CLI::App* mv_trade = moves->add_subcommand(
        "trade", "(p_i,q_i),(p_j,q_j) -> (p_i,q_i+p_i),(p_j,q_j-p_j)");
    std::size_t mv_i = 0, mv_j = 0;
    SpecOpts mv_trade_spec;
    mv_trade->add_option("i", mv_i, "index of the fiber gaining p")->required();
    mv_trade->add_option("j", mv_j, "index of the fiber losing p")->required();
    mv_trade_spec.attach(mv_trade);
    add_pretty(mv_trade);

    CLI::App* mv_normalize = moves->add_subcommand(
        "normalize", "trade until every q but the last is divisible by 4; print each step");
    SpecOpts mv_normalize_spec;
    mv_normalize_spec.attach(mv_normalize);
    add_pretty(mv_normalize);

    CLI::App* mv_insert = moves->add_subcommand("insert", "append a trivial (1,0) fiber");
    SpecOpts mv_insert_spec;
    mv_insert_spec.attach(mv_insert);
    add_pretty(mv_insert);

    CLI::App* mv_remove = moves->add_subcommand("remove", "remove fiber i, which must be (1,0)");
    std::size_t mv_k = 0;
    SpecOpts mv_remove_spec;
    mv_remove->add_option("i", mv_k, "index of the fiber to remove")->required();
    mv_remove_spec.attach(mv_remove);
    add_pretty(mv_remove);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // command-line problems are validation errors
    }

    try {
        if (*classify) {
            dw::SeifertData d = classify_spec.resolve();
            emit(verdict_json(d, dw::classify(d)), pretty);
        } else if (*invariant) {
            dw::SeifertData d = invariant_spec.resolve();
            json j;
            j["z"] = z_json(dw::classify(d).z);
            emit(j, pretty);
        } else if (*homology) {
            dw::SeifertData d = homology_spec.resolve();
            dw::H1Summary s = dw::h1(d);
            json j = data_json(d);
            j["free_rank"] = s.free_rank;
            j["torsion_divisors"] = s.torsion_divisors;
            j["mod2_dim"] = s.mod2_dim;
            emit(j, pretty);
        } else if (*build) {
            json info;
            dw::PseudoTriangulation tri;
            std::string out_path;
            if (*build_lens_cmd) {
                tri = build_family({"lens", std::to_string(bl_p), std::to_string(bl_q)},
                                   dw::SeifertData{}, false, bl_budget.max_tets, &info);
                out_path = bl_out;
            } else if (*build_product_cmd) {
                tri = build_family({"product", std::to_string(bp_genus)}, dw::SeifertData{}, false,
                                   bp_budget.max_tets, &info);
                out_path = bp_out;
            } else {
                tri = build_family({"seifert"}, bs_spec.resolve(), true, bs_budget.max_tets, &info);
                out_path = bs_out;
            }
            dw::write_tri_file(tri, out_path);
            info["tets"] = tri.size();
            info["output"] = out_path;
            emit(info, pretty);
        } else if (*oracle) {
            bool from_file = oracle_file_o->count() > 0;
            bool from_build = oracle_build_o->count() > 0;
            if (from_file == from_build)
                throw dw::ValidationError("give a triangulation file or --build, not both or neither");
            dw::PseudoTriangulation tri;
            json info;
            if (from_file) {
                tri = dw::read_tri_file(oracle_file);
                info["input"] = oracle_file;
            } else {
                bool seifert_given =
                    oracle_spec.fibers_o->count() > 0 || oracle_spec.genus_o->count() > 0;
                dw::SeifertData d;
                if (seifert_given) {
                    d.genus = oracle_spec.genus;
                    d.fibers = dw::parse_fibers(oracle_spec.fibers);
                    d = dw::canonicalize(d);
                }
                tri = build_family(oracle_build, d, seifert_given, oracle_budget.max_tets, &info);
            }
            dw::CohomologyProfile pr = dw::profile_triangulation(tri, oracle_budget.max_m);
            json j = info;
            json prj = profile_json(pr, tri.size());
            for (const auto& item : prj.items()) j[item.key()] = item.value();
            emit(j, pretty);
        } else if (*compare) {
            dw::SeifertData d = compare_spec.resolve();
            dw::Verdict v = dw::classify(d);
            dw::PseudoTriangulation tri = dw::build_seifert(d, compare_budget.max_tets);
            dw::CohomologyProfile pr = dw::profile_triangulation(tri, compare_budget.max_m);
            bool z_agree = v.z == pr.z_definition && v.z == pr.z_theorem;
            bool essential_agree = v.essential == pr.essential_witness.has_value();
            json j = data_json(d);
            json cls;
            cls["essential"] = v.essential;
            cls["m"] = v.m;
            cls["z"] = z_json(v.z);
            j["classifier"] = cls;
            json orc;
            orc["tets"] = tri.size();
            orc["essential"] = pr.essential_witness.has_value();
            orc["m"] = pr.m;
            orc["z_definition"] = z_json(pr.z_definition);
            orc["z_theorem1"] = z_json(pr.z_theorem);
            j["oracle"] = orc;
            j["z_agree"] = z_agree;
            j["essential_agree"] = essential_agree;
            j["agree"] = z_agree && essential_agree;
            emit(j, pretty);
            if (!(z_agree && essential_agree)) return 2;  // the routes disagree
        } else if (*sweep) {
            if (sw_max_n < 0 || sw_max_p < 1 || sw_max_q < 0)
                throw dw::ValidationError("sweep needs --max-n >= 0, --max-p >= 1, --max-q >= 0");
            std::vector<dw::Fiber> domain;
            for (long long p = 1; p <= sw_max_p; ++p)
                for (long long q = -sw_max_q; q <= sw_max_q; ++q)
                    if (dw::fiber_gcd(p, q) == 1) domain.push_back(dw::Fiber{p, q});
            // count rows up front so oversized sweeps are refused, not truncated
            long long rows = 0;
            {
                long long pow = 1;
                for (long long n = 1; n <= sw_max_n; ++n) {
                    if (pow > sw_max_rows / (long long)domain.size() + 1) {
                        rows = sw_max_rows + 1;
                        break;
                    }
                    pow *= (long long)domain.size();
                    rows += pow;
                    if (rows > sw_max_rows) break;
                }
                rows *= (long long)sw_genus.size();
            }
            if (rows > sw_max_rows)
                throw dw::BudgetError("sweep of " + std::to_string(rows) +
                                      " rows exceeds --max-rows " + std::to_string(sw_max_rows));
            std::vector<SweepTask> tasks;
            for (long long g : sw_genus) {
                if (g < 0) throw dw::ValidationError("sweep genus must be non-negative");
                for (long long n = 1; n <= sw_max_n; ++n) {
                    std::vector<std::size_t> idx((std::size_t)n, 0);
                    while (true) {
                        SweepTask t;
                        t.genus = g;
                        for (std::size_t i : idx) t.fibers.push_back(domain[i]);
                        tasks.push_back(std::move(t));
                        std::size_t pos = (std::size_t)n;
                        while (pos > 0 && idx[pos - 1] + 1 == domain.size()) idx[--pos] = 0;
                        if (pos == 0) break;
                        ++idx[pos - 1];
                    }
                }
            }
            std::vector<SweepRow> results(tasks.size());
            std::vector<std::exception_ptr> errors(tasks.size());
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                std::size_t i;
                while ((i = next.fetch_add(1)) < tasks.size()) {
                    try {
                        results[i] = sweep_row(tasks[i], sw_compare, sw_budget.max_tets,
                                               sw_budget.max_m);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            };
            if (sw_jobs <= 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                for (unsigned t = 0; t < sw_jobs; ++t) pool.emplace_back(worker);
                for (std::thread& t : pool) t.join();
            }
            for (std::exception_ptr& e : errors)
                if (e) std::rethrow_exception(e);
            std::vector<std::string> lines;
            std::string header =
                "genus\tfibers\tin_class_a\tb_eligible\txi_parity\tin_class_b\tessential\tm\tz";
            if (sw_compare) header += "\toracle_z\tagree";
            lines.push_back(header);
            bool disagree = false;
            for (const SweepRow& r : results) {
                lines.push_back(r.text);
                disagree = disagree || r.disagree;
            }
            print_rows(lines, pretty);
            if (disagree) return 2;  // some row's routes disagree
        } else if (*moves) {
            if (*mv_normalize) {
                dw::SeifertData d = mv_normalize_spec.resolve();
                for (const dw::SeifertData& step : dw::normalize_trace(d))
                    emit(data_json(step), pretty);
            } else {
                dw::SeifertData d;
                dw::SeifertData out;
                if (*mv_trade) {
                    d = mv_trade_spec.resolve();
                    out = dw::trade(d, mv_i, mv_j);
                } else if (*mv_insert) {
                    d = mv_insert_spec.resolve();
                    out = dw::insert_trivial(d);
                } else {
                    d = mv_remove_spec.resolve();
                    out = dw::remove_trivial(d, mv_k);
                }
                emit(data_json(out), pretty);
            }
        }
    } catch (const dw::SelfCheckError& e) {
        std::cerr << "self-check failed: " << e.what() << "\n";
        return 2;
    } catch (const dw::BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const dw::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
