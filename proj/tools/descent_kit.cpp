#include "descent/report.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <thread>

using namespace descent;

namespace {

struct CommonOpts {
    long search_bound = 200;
    long local_bound = 0; // 0: per-method default (81 two-descent, 121 three-descent)
    std::string format = "json";
    std::string cache_path;
    std::string coeff_file;
    std::string family = "p1";
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--search-bound", opts.search_bound,
                    "Bound for homogeneous space witness searches (default 200)");
    cmd->add_option("--local-bound", opts.local_bound,
                    "Bound for local obstruction moduli (default 81 for 2-descent, "
                    "121 for 3-descent)");
    cmd->add_option("--format", opts.format, "Output format: json or csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--cache", opts.cache_path, "Factorization cache file");
    cmd->add_option("--jobs", opts.jobs, "Worker threads for scans (default 1)");
}

DescentBounds bounds2(const CommonOpts& o) {
    DescentBounds b;
    b.search_bound = o.search_bound;
    if (o.local_bound > 0) b.local_bound = o.local_bound;
    return b;
}

ThreeDescentBounds bounds3(const CommonOpts& o) {
    ThreeDescentBounds b;
    b.search_bound = o.search_bound;
    if (o.local_bound > 0) b.local_bound = o.local_bound;
    return b;
}

std::unique_ptr<FactorCache> cache_holder;

void setup_cache(const CommonOpts& o) {
    if (o.cache_path.empty()) return;
    cache_holder = std::make_unique<FactorCache>(o.cache_path);
    set_factor_cache(cache_holder.get());
}

const CoeffTable& table_for(const CommonOpts& o) {
    if (o.coeff_file.empty()) return CoeffTable::standard();
    static CoeffTable custom = CoeffTable::load(o.coeff_file);
    return custom;
}

void emit(const Json& report, const CommonOpts& o, std::ostream& out) {
    if (o.format == "csv")
        out << csv_header() << "\n" << csv_row(report) << "\n";
    else
        out << report.dump(2) << "\n";
}

int run_single(const std::string& mode, const Json& input, const CommonOpts& o,
               const std::function<Json()>& compute) {
    auto start = std::chrono::steady_clock::now();
    try {
        setup_cache(o);
        Json report = compute();
        emit(report, o, std::cout);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << mode << ": " << ms << " ms\n";
        return report_has_unknown(report) ? 4 : 0;
    } catch (const DegenerateParameters& e) {
        emit(error_report(mode, input, "degenerate", e.what()), o, std::cout);
        return 3;
    } catch (const std::exception& e) {
        emit(error_report(mode, input, "error", e.what()), o, std::cout);
        return 2;
    }
}

Family parse_family(const std::string& f) {
    if (f == "p1") return Family::P1;
    if (f == "p2") return Family::P2;
    throw std::invalid_argument("unknown family: " + f);
}

int run_scan(const CommonOpts& o, const std::string& bf, const std::string& bt,
             const std::string& cf, const std::string& ct, const std::string& step_s,
             const std::string& out_path) {
    Rat b_from, b_to, c_from, c_to, step;
    try {
        b_from = parse_rational(bf);
        b_to = parse_rational(bt);
        c_from = parse_rational(cf);
        c_to = parse_rational(ct);
        step = parse_rational(step_s);
        if (step <= 0) throw std::invalid_argument("step must be positive");
        if (b_to < b_from || c_to < c_from)
            throw std::invalid_argument("empty scan range");
    } catch (const std::exception& e) {
        std::cerr << "scan: " << e.what() << "\n";
        return 2;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "scan: cannot open output file " << out_path << "\n";
        return 2;
    }
    setup_cache(o);
    Family fam;
    const CoeffTable* table;
    try {
        fam = parse_family(o.family);
        table = &table_for(o);
    } catch (const std::exception& e) {
        std::cerr << "scan: " << e.what() << "\n";
        return 2;
    }

    std::vector<std::pair<Rat, Rat>> grid;
    for (Rat b = b_from; b <= b_to; b += step)
        for (Rat c = c_from; c <= c_to; c += step) grid.emplace_back(b, c);

    DescentBounds b2 = bounds2(o);
    ThreeDescentBounds b3 = bounds3(o);
    std::vector<Json> records(grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
            const auto& [b, c] = grid[i];
            Json input{{"family", o.family},
                       {"b", rational_str(b)},
                       {"c", rational_str(c)}};
            try {
                records[i] = report_cuboid(*table, fam, b, c, b2, b3);
            } catch (const DegenerateParameters& e) {
                records[i] = error_report("cuboid", input, "degenerate", e.what());
            } catch (const std::exception& e) {
                records[i] = error_report("cuboid", input, "error", e.what());
            }
        }
    };
    unsigned jobs = std::max(1u, o.jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    bool any_unknown = false;
    long degenerate = 0, cube_case = 0, general = 0, errors = 0;
    for (const Json& r : records) {
        if (report_has_unknown(r)) any_unknown = true;
        std::string status = r["status"].get<std::string>();
        if (status == "degenerate") ++degenerate;
        else if (status == "error") ++errors;
        else if (r["method"] == "cube-case") ++cube_case;
        else ++general;
    }

    if (o.format == "csv") {
        out << csv_header() << "\n";
        for (const Json& r : records) out << csv_row(r) << "\n";
    } else {
        Json doc{{"tool", "descent-kit"},
                 {"mode", "scan"},
                 {"params",
                  Json{{"family", o.family},
                       {"b_from", rational_str(b_from)},
                       {"b_to", rational_str(b_to)},
                       {"c_from", rational_str(c_from)},
                       {"c_to", rational_str(c_to)},
                       {"step", rational_str(step)},
                       {"two_descent", Json{{"search_bound", b2.search_bound},
                                            {"local_bound", b2.local_bound}}},
                       {"three_descent", Json{{"search_bound", b3.search_bound},
                                              {"local_bound", b3.local_bound},
                                              {"eis_search_bound", b3.eis_search_bound}}}}},
                 {"results", records}};
        out << doc.dump(2) << "\n";
    }
    std::cout << "scan: " << records.size() << " grid points, " << cube_case
              << " cube-case, " << general << " general, " << degenerate
              << " degenerate, " << errors << " errors\n";
    return any_unknown ? 4 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"descent-kit: rank bounds and torsion for elliptic curves attached "
                 "to perfect cuboids"};
    app.require_subcommand(1);

    CommonOpts opts;

    // cuboid
    std::string b_str, c_str;
    CLI::App* cuboid = app.add_subcommand("cuboid", "Analyze the curve for one (b,c)");
    cuboid->add_option("--b", b_str, "Parameter b, rational p/q")->required();
    cuboid->add_option("--c", c_str, "Parameter c, rational p/q")->required();
    cuboid->add_option("--family", opts.family, "Coefficient family: p1 or p2 (default p1)")
        ->check(CLI::IsMember({"p1", "p2"}));
    cuboid->add_option("--coeff-file", opts.coeff_file, "Override coefficient data file");
    add_common(cuboid, opts);

    // scan
    std::string bf, bt, cf, ct, step, out_path;
    CLI::App* scan = app.add_subcommand("scan", "Scan a (b,c) grid");
    scan->add_option("--b-from", bf)->required();
    scan->add_option("--b-to", bt)->required();
    scan->add_option("--c-from", cf)->required();
    scan->add_option("--c-to", ct)->required();
    scan->add_option("--step", step, "Grid step, rational")->required();
    scan->add_option("--out", out_path, "Output file")->required();
    scan->add_option("--family", opts.family, "Coefficient family: p1 or p2 (default p1)")
        ->check(CLI::IsMember({"p1", "p2"}));
    scan->add_option("--coeff-file", opts.coeff_file, "Override coefficient data file");
    add_common(scan, opts);

    // curve two|three|torsion
    CLI::App* curve = app.add_subcommand("curve", "Run an engine on a direct curve");
    curve->require_subcommand(1);
    std::string a_str, c2_str, e_str, wb_str;
    CLI::App* two = curve->add_subcommand("two", "2-descent on y^2 = x^3 + ax - c^3 - ac");
    two->add_option("--a", a_str)->required();
    two->add_option("--c", c2_str)->required();
    add_common(two, opts);
    CLI::App* three = curve->add_subcommand("three", "3-descent on y^2 = x^3 + e^2");
    three->add_option("--e", e_str)->required();
    add_common(three, opts);
    CLI::App* torsion = curve->add_subcommand("torsion", "Torsion of y^2 = x^3 + ax + b");
    torsion->add_option("--a", a_str)->required();
    torsion->add_option("--b", wb_str)->required();
    add_common(torsion, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (cuboid->parsed()) {
        Json input{{"family", opts.family}, {"b", b_str}, {"c", c_str}};
        return run_single("cuboid", input, opts, [&] {
            return report_cuboid(table_for(opts), parse_family(opts.family),
                                 parse_rational(b_str), parse_rational(c_str),
                                 bounds2(opts), bounds3(opts));
        });
    }
    if (scan->parsed()) return run_scan(opts, bf, bt, cf, ct, step, out_path);
    if (two->parsed()) {
        Json input{{"a", a_str}, {"c", c2_str}};
        return run_single("curve-two", input, opts, [&] {
            return report_curve_two(Int(a_str), Int(c2_str), bounds2(opts));
        });
    }
    if (three->parsed()) {
        Json input{{"e", e_str}};
        return run_single("curve-three", input, opts, [&] {
            return report_curve_three(Int(e_str), bounds3(opts));
        });
    }
    if (torsion->parsed()) {
        Json input{{"a", a_str}, {"b", wb_str}};
        return run_single("curve-torsion", input, opts, [&] {
            return report_curve_torsion(Int(a_str), Int(wb_str));
        });
    }
    return 2;
}
