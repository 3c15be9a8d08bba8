// hypenny: command-line surface over the packing library.
//
// Subcommands: table1, curves, verify, sequence, spiral, embed, oracle,
// construct, horocycles, thresholds.  Every subcommand is deterministic:
// identical inputs produce byte-identical CSV/JSON/SVG output.
//
// Exit codes: 0 success, 2 precondition violation (bad arguments or domain
// errors), 3 certification failure (a constructed object failed its own
// numerical certificate).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypenny/bounds.hpp"
#include "hypenny/construct.hpp"
#include "hypenny/errors.hpp"
#include "hypenny/geom.hpp"
#include "hypenny/hyptrig.hpp"
#include "hypenny/sequence.hpp"
#include "hypenny/spiral.hpp"
#include "hypenny/svg.hpp"

using json = nlohmann::ordered_json;
using namespace hypenny;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    require(static_cast<bool>(out), "failed writing output file: " + path);
}

// ---------------------------------------------------------------------------

struct Table1Row {
    int k;
    bool has_dk;
    double alpha_dk, dk, alpha_dbark, dbark;
};

std::vector<Table1Row> table1_rows() {
    std::vector<Table1Row> rows;
    for (int k = 6; k <= 23; ++k) {
        Table1Row r{};
        r.k = k;
        r.has_dk = k >= 7;
        if (r.has_dk) {
            r.dk = d_k(k);
            r.alpha_dk = alpha_of_d(r.dk);
        }
        r.dbark = dbar_k(k);
        r.alpha_dbark = alpha_of_d(r.dbark);
        rows.push_back(r);
    }
    return rows;
}

void run_table1(const std::string& format, const std::string& out) {
    auto rows = table1_rows();
    if (format == "json") {
        json doc = json::array();
        for (const auto& r : rows) {
            json row;
            row["k"] = r.k;
            row["alpha_dk"] = r.has_dk ? json(r.alpha_dk) : json(nullptr);
            row["dk"] = r.has_dk ? json(r.dk) : json(nullptr);
            row["alpha_dbark"] = r.alpha_dbark;
            row["dbark"] = r.dbark;
            doc.push_back(row);
        }
        write_output(out, doc.dump(2) + "\n");
        return;
    }
    std::string csv = "k,alpha_dk,dk,alpha_dbark,dbark\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.k) + ",";
        csv += (r.has_dk ? g17(r.alpha_dk) : std::string("---")) + ",";
        csv += (r.has_dk ? g17(r.dk) : std::string("---")) + ",";
        csv += g17(r.alpha_dbark) + "," + g17(r.dbark) + "\n";
    }
    write_output(out, csv);
}

// ---------------------------------------------------------------------------

struct CurveSample {
    double d;
    bool is_dk = false, is_dbark = false;
};

std::vector<CurveSample> curve_grid(double d_min, double d_max, int steps) {
    require(d_min > 0.0 && d_max > d_min, "curves: need 0 < d-min < d-max");
    require(steps >= 2, "curves: need at least 2 steps");
    std::vector<CurveSample> pts;
    for (int i = 0; i < steps; ++i) {
        pts.push_back({d_min + (d_max - d_min) * i / (steps - 1), false, false});
    }
    for (int k = 7; d_k(k) < d_max; ++k) {
        if (d_k(k) > d_min) pts.push_back({d_k(k), true, false});
    }
    for (int k = 6; dbar_k(k) < d_max; ++k) {
        if (dbar_k(k) > d_min) pts.push_back({dbar_k(k), false, true});
    }
    std::sort(pts.begin(), pts.end(),
              [](const CurveSample& a, const CurveSample& b) { return a.d < b.d; });
    return pts;
}

void run_curves(double d_min, double d_max, int steps, const std::string& format,
                const std::string& out) {
    auto pts = curve_grid(d_min, d_max, steps);
    if (format == "svg") {
        SvgChart ch(d_min, d_max, 1.95, 3.05);
        // Horizontal references from the figure: 3 - 1/phi and 2.75.
        const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
        ch.add_hline(3.0 - 1.0 / phi, "#b0b0b0");
        ch.add_hline(2.75, "#b0b0b0");
        std::vector<std::pair<double, double>> g1, g4, g5, g6;
        for (const auto& s : pts) {
            g1.emplace_back(s.d, upper_bound_all(s.d));
            if (!s.is_dk && !s.is_dbark) {
                g4.emplace_back(s.d, upper_bound_generic(s.d));
                g5.emplace_back(s.d, upper_bound_generic_area(s.d));
            } else {
                double nan = std::nan("");
                g4.emplace_back(s.d, nan);
                g5.emplace_back(s.d, nan);
            }
        }
        // Exact staircase for the lower bound: jumps at the semiregular lengths.
        g6.emplace_back(d_min, lower_bound_all(d_min));
        for (int k = 6; dbar_k(k) < d_max; ++k) {
            if (dbar_k(k) > d_min) g6.emplace_back(dbar_k(k), lower_bound_all(dbar_k(k)));
        }
        g6.emplace_back(d_max, lower_bound_all(d_max));
        ch.add_polyline(g1, "#c03030");
        ch.add_polyline(g4, "#308030");
        ch.add_polyline(g5, "#c08020");
        ch.add_steps(g6, "#101010");
        for (const auto& s : pts) {
            if (s.is_dk) ch.add_dot(s.d, upper_bound_all(s.d), "#c03030");
            if (s.is_dbark) {
                ch.add_dot(s.d, upper_bound_semiregular(s.d), "#3050c0");
                ch.add_dot(s.d, upper_bound_semiregular_area(s.d), "#101080");
            }
        }
        write_output(out, ch.str());
        return;
    }
    std::string csv = "d,gamma1,gamma2,gamma3,gamma4,gamma5,gamma6,is_dk,is_dbark,upper_env\n";
    for (const auto& s : pts) {
        csv += g17(s.d) + ",";
        csv += g17(upper_bound_all(s.d)) + ",";
        csv += (s.is_dbark ? g17(upper_bound_semiregular(s.d)) : std::string()) + ",";
        csv += (s.is_dbark ? g17(upper_bound_semiregular_area(s.d)) : std::string()) + ",";
        csv += (!s.is_dk && !s.is_dbark ? g17(upper_bound_generic(s.d)) : std::string()) + ",";
        csv += (!s.is_dk && !s.is_dbark ? g17(upper_bound_generic_area(s.d)) : std::string()) +
               ",";
        csv += g17(lower_bound_all(s.d)) + ",";
        csv += std::string(s.is_dk ? "1" : "0") + "," + (s.is_dbark ? "1" : "0") + ",";
        csv += g17(upper_envelope(s.d)) + "\n";
    }
    write_output(out, csv);
}

// ---------------------------------------------------------------------------

void run_verify(long long n_max) {
    require(n_max >= 1, "verify: n must be at least 1");
    IncrementWord w;
    auto prefix = w.max_edges_prefix(static_cast<std::uint64_t>(n_max));
    for (long long n = 1; n <= n_max; ++n) {
        if (prefix[static_cast<size_t>(n)] !=
            closed_form_max_edges7(static_cast<std::uint64_t>(n))) {
            std::printf("MISMATCH at n = %lld\n", n);
            check_cert(false, "sequence and closed form disagree");
        }
    }
    std::printf("OK: no counterexample ≤ %lld\n", n_max);
}

void run_sequence(long long n, bool layers, const std::string& format,
                  const std::string& out) {
    require(n >= 1, "sequence: n must be at least 1");
    if (layers) {
        auto ls = full_layers(static_cast<std::uint64_t>(n));
        if (format == "json") {
            json doc = json::array();
            for (const auto& l : ls) {
                doc.push_back({{"n", l.n},
                               {"edges", l.edges},
                               {"fib_odd", l.fib_odd},
                               {"fib_even", l.fib_even},
                               {"lucas", l.lucas}});
            }
            write_output(out, doc.dump(2) + "\n");
            return;
        }
        std::string csv = "n,edges,fib_odd,fib_even,lucas\n";
        for (const auto& l : ls) {
            csv += std::to_string(l.n) + "," + std::to_string(l.edges) + "," +
                   std::to_string(l.fib_odd) + "," + std::to_string(l.fib_even) + "," +
                   std::to_string(l.lucas) + "\n";
        }
        write_output(out, csv);
        return;
    }
    IncrementWord w;
    auto prefix = w.max_edges_prefix(static_cast<std::uint64_t>(n));
    if (format == "json") {
        json doc;
        doc["n"] = n;
        doc["max_edges"] = prefix.back();
        doc["profile"] = prefix;
        write_output(out, doc.dump(2) + "\n");
        return;
    }
    std::string csv = "n,increment,max_edges\n";
    for (long long i = 1; i <= n; ++i) {
        auto cur = prefix[static_cast<size_t>(i)];
        auto prev = prefix[static_cast<size_t>(i) - 1];
        csv += std::to_string(i) + "," + std::to_string(cur - prev) + "," +
               std::to_string(cur) + "\n";
    }
    write_output(out, csv);
}

// ---------------------------------------------------------------------------

void run_spiral(int p, int q, int n, const std::string& format, const std::string& out) {
    Spiral s(p, q);
    long long e = s.edges(n);
    std::printf("n = %d\ne = %lld\n", n, e);
    if (out.empty()) return;
    if (format == "json") {
        json doc;
        doc["p"] = p;
        doc["q"] = q;
        doc["n"] = n;
        doc["e"] = e;
        doc["profile"] = s.edge_profile(n);
        write_output(out, doc.dump(2) + "\n");
        return;
    }
    std::string csv = "n,edges\n";
    auto profile = s.edge_profile(n);
    for (size_t i = 0; i < profile.size(); ++i) {
        csv += std::to_string(i) + "," + std::to_string(profile[i]) + "\n";
    }
    write_output(out, csv);
}

void run_embed(int p, int q, int n, double d, const std::string& format,
               const std::string& out) {
    Spiral s(p, q);
    if (d <= 0.0) d = d_k(q);
    EmbeddedSpiral es = embed_spiral(s, n, d);
    PatchMetrics m = measure_patch(es);
    std::printf("n = %d\ne = %lld\nfaces = %lld\nboundary = %lld\n", m.n, m.e,
                m.bounded_faces, m.boundary_len);
    std::printf("area = %s\nperimeter = %s\noler_slack = %s\n", g17(m.area).c_str(),
                g17(m.perimeter).c_str(), g17(m.oler_slack).c_str());
    if (out.empty()) return;
    if (format == "json") {
        json doc;
        doc["p"] = p;
        doc["q"] = q;
        doc["n"] = n;
        doc["d"] = d;
        json points = json::array();
        for (const auto& pt : es.pos) points.push_back({pt.x0, pt.x1, pt.x2});
        doc["points"] = points;
        doc["edges"] = es.edges;
        doc["metrics"] = {{"e", m.e},
                          {"bounded_faces", m.bounded_faces},
                          {"boundary_len", m.boundary_len},
                          {"area", m.area},
                          {"perimeter", m.perimeter},
                          {"oler_slack", m.oler_slack},
                          {"gb_gap", m.gb_gap}};
        write_output(out, doc.dump(2) + "\n");
        return;
    }
    SvgDisk fig;
    for (const auto& [a, b] : es.edges)
        fig.add_segment(to_disk(es.pos[static_cast<size_t>(a)]),
                        to_disk(es.pos[static_cast<size_t>(b)]));
    for (const auto& c : es.pos) {
        fig.add_circle(disk_circle(c, d / 2.0));
        fig.add_point(to_disk(c));
    }
    write_output(out, fig.str());
}

void run_oracle(int p, int q, int n) {
    require(n >= 1, "oracle: n must be at least 1");
    auto best = exhaustive_max_edges(p, q, n);
    std::printf("%lld\n", best[static_cast<size_t>(n)]);
}

// ---------------------------------------------------------------------------

void run_construct(double d, int i, double tol, const std::string& format,
                   const std::string& out) {
    ConstructionResult res = iterate(d, i);
    if (tol > 0.0) res.cert = certify_packing(res.graph, tol);
    std::printf("q = %d\nn = %lld\ne = %lld\nratio = %s\n", res.graph.q, res.n, res.e,
                g17(res.ratio).c_str());
    std::printf("max_edge_residual = %s\nmin_pair_slack = %s\n",
                g17(res.cert.max_edge_residual).c_str(),
                g17(res.cert.min_pair_slack).c_str());
    if (out.empty()) return;
    if (format == "svg") {
        SvgDisk fig;
        for (const auto& [a, b] : res.graph.edges)
            fig.add_segment(to_disk(res.graph.centers[static_cast<size_t>(a)]),
                            to_disk(res.graph.centers[static_cast<size_t>(b)]));
        for (const auto& c : res.graph.centers) {
            fig.add_circle(disk_circle(c, d / 2.0));
            fig.add_point(to_disk(c));
        }
        write_output(out, fig.str());
        return;
    }
    json doc;
    doc["d"] = d;
    doc["q"] = res.graph.q;
    doc["iterations"] = res.iterations;
    doc["n"] = res.n;
    doc["e"] = res.e;
    doc["ratio"] = res.ratio;
    json points = json::array();
    for (const auto& c : res.graph.centers) points.push_back({c.x0, c.x1, c.x2});
    doc["points"] = points;
    doc["edges"] = res.graph.edges;
    doc["certificate"] = {{"points", res.cert.points},
                          {"edges", res.cert.edges},
                          {"pair_checks", res.cert.pair_checks},
                          {"max_edge_residual", res.cert.max_edge_residual},
                          {"min_pair_slack", res.cert.min_pair_slack},
                          {"line_clearance", res.cert.line_clearance},
                          {"line_separation", res.cert.line_separation}};
    write_output(out, doc.dump(2) + "\n");
}

void run_horocycles(int n, const std::string& format, const std::string& out) {
    HorocyclePacking hp = horocycle_pack(n);
    certify_horocycles(hp);
    std::printf("circles = %d\ntangencies = %d\n", static_cast<int>(hp.circles.size()),
                static_cast<int>(hp.tangencies.size()));
    if (out.empty()) return;
    if (format == "json") {
        json doc;
        doc["n"] = n;
        json circles = json::array();
        for (const auto& c : hp.circles)
            circles.push_back({static_cast<double>(c.cx), static_cast<double>(c.cy),
                               static_cast<double>(c.r)});
        doc["circles"] = circles;
        doc["tangencies"] = hp.tangencies;
        write_output(out, doc.dump(2) + "\n");
        return;
    }
    SvgDisk fig;
    for (const auto& c : hp.circles) {
        fig.add_circle(DiskCircle{static_cast<double>(c.cx), static_cast<double>(c.cy),
                                  static_cast<double>(c.r)},
                       "#2060b0", 1.4);
    }
    write_output(out, fig.str());
}

void run_thresholds() {
    std::printf("generic_bounds_crossing = %s\n", g17(generic_bounds_crossing()).c_str());
    std::printf("order7_dominance_threshold = %s\n",
                g17(order7_dominance_threshold()).c_str());
    std::printf("dbar_6 = %s\n", g17(dbar_k(6)).c_str());
    std::printf("d_7 = %s\n", g17(d_k(7)).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic penny packings: tables, bounds, constructions"};
    app.require_subcommand(1);

    std::string out, format;
    double d = 0.0, d_min = 0.05, d_max = 4.0, tol = -1.0;
    int steps = 800, p = 3, q = 7, iters = 1, nn = 1;
    long long n_ll = 1;
    bool layers = false;

    auto* t1 = app.add_subcommand("table1", "critical side lengths and angles");
    t1->add_option("--format", format, "csv or json");
    t1->add_option("-o,--out", out, "output path (default stdout)");
    t1->callback([&] { run_table1(format.empty() ? "csv" : format, out); });

    auto* cv = app.add_subcommand("curves", "density bounds over a grid of d");
    cv->add_option("--d-min", d_min, "left end of the grid")->default_val(0.05);
    cv->add_option("--d-max", d_max, "right end of the grid")->default_val(4.0);
    cv->add_option("--steps", steps, "grid size")->default_val(800);
    cv->add_option("--format", format, "csv or svg");
    cv->add_option("-o,--out", out, "output path (default stdout)");
    cv->callback([&] {
        run_curves(d_min, d_max, steps, format.empty() ? "csv" : format, out);
    });

    auto* vf = app.add_subcommand("verify", "sequence vs closed form up to n");
    vf->add_option("n", n_ll, "largest n to check")->required();
    vf->callback([&] { run_verify(n_ll); });

    auto* sq = app.add_subcommand("sequence", "edge-count increments and sums");
    sq->add_option("n", n_ll, "number of terms")->required();
    sq->add_flag("--layers", layers, "emit the full-layer milestones instead");
    sq->add_option("--format", format, "csv or json");
    sq->add_option("-o,--out", out, "output path (default stdout)");
    sq->callback([&] { run_sequence(n_ll, layers, format.empty() ? "csv" : format, out); });

    auto* sp = app.add_subcommand("spiral", "greedy spiral edge counts");
    sp->add_option("p", p, "face size (3)")->required();
    sp->add_option("q", q, "vertex degree")->required();
    sp->add_option("n", nn, "number of vertices")->required();
    sp->add_option("--format", format, "csv or json");
    sp->add_option("-o,--out", out, "output path");
    sp->callback([&] { run_spiral(p, q, nn, format.empty() ? "json" : format, out); });

    auto* em = app.add_subcommand("embed", "geometric realization of a spiral patch");
    em->add_option("p", p, "face size (3)")->required();
    em->add_option("q", q, "vertex degree")->required();
    em->add_option("n", nn, "number of vertices")->required();
    em->add_option("--d", d, "circle diameter (default: order-q tiling length)");
    em->add_option("--format", format, "svg or json");
    em->add_option("-o,--out", out, "output path");
    em->callback([&] { run_embed(p, q, nn, d, format.empty() ? "svg" : format, out); });

    auto* orc = app.add_subcommand("oracle", "exhaustive maximum edge count");
    orc->add_option("p", p, "face size (3)")->required();
    orc->add_option("q", q, "vertex degree")->required();
    orc->add_option("n", nn, "number of vertices")->required();
    orc->callback([&] { run_oracle(p, q, nn); });

    auto* cn = app.add_subcommand("construct", "reflected fan construction");
    cn->add_option("d", d, "circle diameter")->required();
    cn->add_option("i", iters, "iterations (1..12)")->required();
    cn->add_option("--tol", tol, "re-certify at this tolerance");
    cn->add_option("--format", format, "json or svg");
    cn->add_option("-o,--out", out, "output path");
    cn->callback([&] { run_construct(d, iters, tol, format.empty() ? "json" : format, out); });

    auto* hc = app.add_subcommand("horocycles", "greedy horocycle packing");
    hc->add_option("n", nn, "number of circles")->required();
    hc->add_option("--format", format, "svg or json");
    hc->add_option("-o,--out", out, "output path");
    hc->callback([&] { run_horocycles(nn, format.empty() ? "svg" : format, out); });

    auto* th = app.add_subcommand("thresholds", "named critical constants");
    th->callback([&] { run_thresholds(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const certification_error& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
