#include "pgrad/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <vector>

#include "pgrad/boundary.hpp"
#include "pgrad/interp.hpp"
#include "pgrad/io.hpp"
#include "pgrad/solver.hpp"
#include "pgrad/svg.hpp"
#include "pgrad/vacuum.hpp"
#include "pgrad/verify.hpp"

namespace pgrad {

namespace {

constexpr long long kSchemaVersion = 1;
constexpr const char* kVersion = "0.3.0";

void usage(std::ostream& os) {
    os << "usage: pgrad <solve|verify|analyze|all> [--config FILE] [--out DIR] [--key value]...\n"
       << "flags mirror config keys: --n-seeds 65, --p-floor 1e-12, --p1 4,\n"
       << "--epsilons 1e-2,1e-3,1e-4, --no-plots, ...\n";
}

RunConfig parse_flags(const std::vector<std::string>& args, std::size_t start) {
    RunConfig cfg;
    for (std::size_t k = start; k < args.size(); ++k)
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) throw ConfigError("--config needs a path");
            load_config_file(cfg, args[k + 1]);
            ++k;
        }
    for (std::size_t k = start; k < args.size(); ++k) {
        const std::string& a = args[k];
        if (a == "--config") {
            ++k;
            continue;
        }
        if (a == "--no-plots") {
            cfg.no_plots = true;
            continue;
        }
        if (a.rfind("--", 0) != 0) throw ConfigError("unexpected argument: '" + a + "'");
        std::string key = a.substr(2);
        std::replace(key.begin(), key.end(), '-', '_');
        if (key == "out") key = "out_dir";
        if (k + 1 >= args.size()) throw ConfigError(a + " needs a value");
        apply_config_key(cfg, key, args[++k]);
    }
    validate_config(cfg);
    return cfg;
}

std::string path_join(const std::string& dir, const char* name) {
    return dir + "/" + name;
}

void config_json(JsonBuilder& jb, const RunConfig& cfg) {
    jb.key("config").begin_object();
    jb.key("n_seeds").value_int(static_cast<long long>(cfg.solver.n_seeds));
    jb.key("corrector_tol").value_number(cfg.solver.corrector_tol);
    jb.key("max_corrector_iters").value_int(cfg.solver.max_corrector_iters);
    jb.key("p_floor").value_number(cfg.solver.p_floor);
    jb.key("sonic_margin").value_number(cfg.solver.sonic_margin);
    jb.key("param_switch_lambda").value_number(cfg.solver.param_switch_lambda);
    jb.key("cluster_ratio").value_number(cfg.solver.cluster_ratio);
    jb.key("out_dir").value_string(cfg.out_dir);
    jb.key("p1").value_number(cfg.p1);
    jb.key("epsilons").begin_array();
    for (double e : cfg.epsilons) jb.value_number(e);
    jb.end_array();
    jb.key("raster_nr").value_int(static_cast<long long>(cfg.raster_nr));
    jb.key("raster_ntheta").value_int(static_cast<long long>(cfg.raster_ntheta));
    jb.key("no_plots").value_bool(cfg.no_plots);
    jb.key("bubble_delta").value_number(cfg.bubble_delta);
    jb.end_object();
}

void write_meta(const RunConfig& cfg, const CharGrid& grid, const std::string& path) {
    std::size_t n_solved = 0, n_boundary = 0, n_vac = 0, n_dom = 0;
    for (const StateNode& n : grid.nodes) switch (n.status) {
            case NodeStatus::solved: ++n_solved; break;
            case NodeStatus::boundary: ++n_boundary; break;
            case NodeStatus::stopped_vacuum: ++n_vac; break;
            case NodeStatus::stopped_domain: ++n_dom; break;
            default: break;
        }
    MinPressure mp = min_pressure(grid);

    JsonBuilder jb;
    jb.begin_object();
    jb.key("schema_version").value_int(kSchemaVersion);
    jb.key("program").value_string("pgrad");
    jb.key("version").value_string(kVersion);
    config_json(jb, cfg);
    jb.key("diagnostics").begin_object();
    jb.key("n_rows").value_int(static_cast<long long>(grid.n_rows));
    jb.key("n_cols").value_int(static_cast<long long>(grid.n_cols));
    jb.key("n_solved").value_int(static_cast<long long>(n_solved));
    jb.key("n_boundary").value_int(static_cast<long long>(n_boundary));
    jb.key("n_stopped_vacuum").value_int(static_cast<long long>(n_vac));
    jb.key("n_stopped_domain").value_int(static_cast<long long>(n_dom));
    jb.key("max_corrector_iters_used").value_int(grid.max_corrector_iters_used);
    jb.key("max_p_mismatch").value_number(grid.max_p_mismatch);
    jb.key("min_pressure").begin_object();
    jb.key("value").value_number(mp.value);
    jb.key("i").value_int(static_cast<long long>(mp.i));
    jb.key("j").value_int(static_cast<long long>(mp.j));
    jb.key("r").value_number(mp.r);
    jb.key("theta").value_number(mp.theta);
    jb.end_object();
    jb.end_object();
    jb.key("region_convention").value_string(exterior_region_convention());
    jb.end_object();
    write_text_file(path, jb.str());
}

void write_residual_csv(const std::string& path, const ResidualField& rf) {
    std::string out = "r,theta,value,stencil\n";
    for (const ResidualSample& s : rf.samples) {
        out += fp17(s.r);
        out += ',';
        out += fp17(s.theta);
        out += ',';
        out += fp17(s.value);
        out += ',';
        out += fp17(s.stencil);
        out += '\n';
    }
    write_text_file(path, out);
}

struct Percentiles {
    double median = 0, p90 = 0, max = 0;
};

Percentiles percentiles(std::vector<double> v) {
    Percentiles out;
    if (v.empty()) return out;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    out.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    out.p90 = v[std::min(n - 1, static_cast<std::size_t>(0.9 * static_cast<double>(n)))];
    out.max = v.back();
    return out;
}

// grid as stored on disk; values were written at scale p1
CharGrid load_grid(const RunConfig& cfg) {
    CharGrid grid = read_grid_csv(path_join(cfg.out_dir, "grid.csv"));
    grid.config = cfg.solver;
    return grid;
}

// The data arcs: lower r = 2 sin(theta) over [0, pi/4], upper r = 2 cos(theta)
// over [pi/4, pi/2].  With full = true the whole sonic circle is traced instead
// (region boundary in the composite field figure).
std::vector<std::pair<double, double>> circle_arc(bool lower, double scale, bool full = false) {
    std::vector<std::pair<double, double>> pts;
    const int n = 128;
    double th0 = lower ? 0.0 : kPi / 4.0;
    double th1 = lower ? kPi / 4.0 : kPi / 2.0;
    if (full) { th0 = 0.0; th1 = kPi / 2.0; }
    for (int k = 0; k <= n; ++k) {
        double th = th0 + (th1 - th0) * static_cast<double>(k) / n;
        double r = lower ? 2.0 * std::sin(th) : 2.0 * std::cos(th);
        pts.push_back({scale * r * std::cos(th), scale * r * std::sin(th)});
    }
    return pts;
}

std::vector<std::pair<double, double>> line_to_xy(const std::vector<StateNode>& line) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(line.size());
    for (const StateNode& n : line)
        pts.push_back({n.r * std::cos(n.theta), n.r * std::sin(n.theta)});
    return pts;
}

void write_characteristics_svg(const std::string& path, const CharGrid& grid, double scale) {
    double box = 2.05 * scale;
    SvgCanvas svg(720, 720, 0.0, box, 0.0, box);
    std::size_t step_i = std::max<std::size_t>(1, (grid.n_rows - 1) / 24);
    std::size_t step_j = std::max<std::size_t>(1, (grid.n_cols - 1) / 24);
    for (std::size_t i = 0; i < grid.n_rows; i += step_i)
        svg.polyline(line_to_xy(trace_characteristic(grid, i, 0, Family::plus_family)),
                     "plus-" + std::to_string(i), "#8899aa", 0.8);
    for (std::size_t j = 0; j < grid.n_cols; j += step_j)
        svg.polyline(line_to_xy(trace_characteristic(grid, 0, j, Family::minus_family)),
                     "minus-" + std::to_string(j), "#aa8899", 0.8);
    svg.polyline(circle_arc(true, scale), "arc-lower", "#cc3333", 2.0);
    svg.polyline(circle_arc(false, scale), "arc-upper", "#3333cc", 2.0);
    svg.text(0.04 * box, 0.95 * box, "characteristic net", 14);
    write_text_file(path, svg.finish());
}

void write_levels_svg(const std::string& path, const std::vector<LevelCurve>& curves,
                      double scale) {
    double box = 2.05 * scale;
    SvgCanvas svg(720, 720, 0.0, box, 0.0, box);
    svg.polyline(circle_arc(true, scale), "arc-lower", "#cc3333", 2.0);
    svg.polyline(circle_arc(false, scale), "arc-upper", "#3333cc", 2.0);
    for (std::size_t k = 0; k < curves.size(); ++k) {
        std::vector<std::pair<double, double>> pts;
        for (const LevelPoint& pt : curves[k].points)
            pts.push_back({pt.r * std::cos(pt.theta), pt.r * std::sin(pt.theta)});
        svg.polyline(pts, "level-" + std::to_string(k), "#228833", 1.4,
                     "data-epsilon=\"" + fp17(curves[k].epsilon) + "\"");
    }
    svg.text(0.04 * box, 0.95 * box, "pressure level curves", 14);
    write_text_file(path, svg.finish());
}

void write_decay_svg(const std::string& path, const std::vector<std::pair<double, double>>& xy,
                     const std::optional<DecayFit>& fit) {
    double x0 = xy.front().first, x1 = xy.front().first;
    double y0 = xy.front().second, y1 = xy.front().second;
    for (auto& pt : xy) {
        x0 = std::min(x0, pt.first);
        x1 = std::max(x1, pt.first);
        y0 = std::min(y0, pt.second);
        y1 = std::max(y1, pt.second);
    }
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) y1 = y0 + 1.0;
    SvgCanvas svg(720, 540, x0, x1, y0, y1);
    svg.line(x0, y0, x1, y0, "#444444", 1.0);
    svg.line(x0, y0, x0, y1, "#444444", 1.0);
    svg.polyline(xy, "decay-data", "#225588", 1.6);
    if (fit) {
        double fx0 = 1.0 / fit->r_max, fx1 = 1.0 / fit->r_min;
        double lc = std::log(fit->c);
        std::vector<std::pair<double, double>> seg = {{fx0, lc - fit->m0 * fx0},
                                                      {fx1, lc - fit->m0 * fx1}};
        svg.polyline(seg, "decay-fit", "#cc3333", 1.2,
                     "data-c=\"" + fp17(fit->c) + "\" data-m0=\"" + fp17(fit->m0) + "\"");
    }
    svg.text(0.5 * (x0 + x1), y0 + 0.02 * (y1 - y0), "1/r", 13);
    svg.text(x0 + 0.01 * (x1 - x0), 0.97 * y1 + 0.03 * y0, "ln p", 13);
    write_text_file(path, svg.finish());
}

std::string ramp_color(double t) {
    t = std::min(std::max(t, 0.0), 1.0);
    int r = static_cast<int>(std::lround(255.0 * t));
    int g = static_cast<int>(std::lround(255.0 * (0.25 + 0.75 * t)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02xff", r, g);
    return buf;
}

void write_field_svg(const std::string& path, const NetInterpolator& interp, double p1) {
    double s = std::sqrt(p1);
    double box = 2.05 * s;
    SvgCanvas svg(720, 720, 0.0, box, 0.0, box);
    svg.desc(std::string("composite pressure field; ") + exterior_region_convention());
    const int K = 120;
    double h = box / K;
    for (int iy = 0; iy < K; ++iy)
        for (int ix = 0; ix < K; ++ix) {
            double x = (ix + 0.5) * h, y = (iy + 0.5) * h;
            double xu = x / s, yu = y / s;
            ExteriorSample ext = exterior_field(xu, yu);
            std::string fill;
            if (ext.region == Region::interaction) {
                auto v = interp.query(x, y);
                fill = v ? ramp_color(*v / p1) : "#cccccc";
            } else {
                fill = ramp_color(ext.p);  // unit-scale value == p/p1
            }
            svg.cell(ix * h, iy * h, (ix + 1) * h, (iy + 1) * h, fill);
        }
    svg.polyline(circle_arc(true, s, true), "arc-lower", "#cc3333", 1.6);
    svg.polyline(circle_arc(false, s, true), "arc-upper", "#3333cc", 1.6);
    write_text_file(path, svg.finish());
}

}  // namespace

int run_solve(const RunConfig& cfg) {
    try {
        std::filesystem::create_directories(cfg.out_dir);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "pgrad: cannot create output directory: " << e.what() << "\n";
        return 4;
    }
    CharGrid grid;
    try {
        grid = solve_interior(cfg.solver);
        if (cfg.p1 != 1.0) grid = rescaled(grid, cfg.p1);
    } catch (const SolveError& e) {
        std::cerr << "pgrad: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "pgrad: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "pgrad: solve failed: " << e.what() << "\n";
        return 2;
    }
    try {
        write_grid_csv(path_join(cfg.out_dir, "grid.csv"), grid);
        write_meta(cfg, grid, path_join(cfg.out_dir, "meta.json"));
    } catch (const IoError& e) {
        std::cerr << "pgrad: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

int run_verify(const RunConfig& cfg) {
    CharGrid grid;
    try {
        grid = load_grid(cfg);
        if (cfg.p1 != 1.0) grid = rescaled(grid, 1.0 / cfg.p1);  // back to unit scale
    } catch (const IoError& e) {
        std::cerr << "pgrad: " << e.what() << "\n";
        return 4;
    }

    try {
        SignReport signs = check_signs_and_monotonicity(grid);
        SupRatio sup = sup_ratio(grid);

        NetInterpolator interp(grid);
        PolarRaster raster =
            resample_to_polar(interp, cfg.raster_nr, cfg.raster_ntheta, interp.r_min(),
                              interp.r_max(), interp.theta_min(), interp.theta_max());
        ResidualField pde = residual_pde(raster);
        DecompositionReport dec = check_decomposition(grid);

        std::vector<double> errs_plus, errs_minus;
        std::size_t diag_n = std::min(grid.n_rows, grid.n_cols);
        for (std::size_t k = 1; k < diag_n; ++k) {
            if (!grid.usable(k, k)) break;
            errs_plus.push_back(integral_formula_plus(grid, k, k).rel_err);
            errs_minus.push_back(integral_formula_minus(grid, k, k).rel_err);
        }
        Percentiles pp = percentiles(errs_plus), pm = percentiles(errs_minus);

        write_residual_csv(path_join(cfg.out_dir, "residual_pde.csv"), pde);
        write_residual_csv(path_join(cfg.out_dir, "decomposition.csv"), dec.residual);

        JsonBuilder jb;
        jb.begin_object();
        jb.key("schema_version").value_int(kSchemaVersion);
        jb.key("pde_residual").begin_object();
        jb.key("norm_inf").value_number(pde.norm_inf);
        jb.key("norm_l2").value_number(pde.norm_l2);
        jb.key("n_samples").value_int(static_cast<long long>(pde.samples.size()));
        jb.key("n_skipped").value_int(static_cast<long long>(pde.n_skipped));
        jb.key("raster").begin_object();
        jb.key("n_r").value_int(static_cast<long long>(raster.n_r));
        jb.key("n_theta").value_int(static_cast<long long>(raster.n_theta));
        jb.key("r0").value_number(raster.r0);
        jb.key("r1").value_number(raster.r1);
        jb.key("theta0").value_number(raster.theta0);
        jb.key("theta1").value_number(raster.theta1);
        jb.end_object();
        jb.end_object();
        jb.key("decomposition").begin_object();
        jb.key("norm_inf").value_number(dec.residual.norm_inf);
        jb.key("norm_l2").value_number(dec.residual.norm_l2);
        jb.key("n_samples").value_int(static_cast<long long>(dec.residual.samples.size()));
        jb.key("n_skipped").value_int(static_cast<long long>(dec.residual.n_skipped));
        jb.key("form_diff_max_rel").value_number(dec.form_diff_max_rel);
        jb.end_object();
        jb.key("integral_checks").begin_object();
        jb.key("n").value_int(static_cast<long long>(errs_plus.size()));
        jb.key("plus").begin_object();
        jb.key("median_rel_err").value_number(pp.median);
        jb.key("p90_rel_err").value_number(pp.p90);
        jb.key("max_rel_err").value_number(pp.max);
        jb.end_object();
        jb.key("minus").begin_object();
        jb.key("median_rel_err").value_number(pm.median);
        jb.key("p90_rel_err").value_number(pm.p90);
        jb.key("max_rel_err").value_number(pm.max);
        jb.end_object();
        jb.end_object();
        jb.key("sup_ratio").begin_object();
        jb.key("value").value_number(sup.value);
        jb.key("i").value_int(static_cast<long long>(sup.i));
        jb.key("j").value_int(static_cast<long long>(sup.j));
        jb.key("r").value_number(sup.r);
        jb.key("theta").value_number(sup.theta);
        jb.end_object();
        jb.key("signs").begin_object();
        jb.key("n_checked").value_int(static_cast<long long>(signs.n_checked));
        jb.key("n_violations").value_int(static_cast<long long>(signs.violations.size()));
        jb.key("violations").begin_array();
        for (std::size_t k = 0; k < signs.violations.size() && k < 20; ++k) {
            const SignViolation& v = signs.violations[k];
            jb.begin_object();
            jb.key("i").value_int(static_cast<long long>(v.i));
            jb.key("j").value_int(static_cast<long long>(v.j));
            jb.key("what").value_string(v.what);
            jb.end_object();
        }
        jb.end_array();
        jb.end_object();
        jb.key("ok").value_bool(signs.ok());
        jb.end_object();
        write_text_file(path_join(cfg.out_dir, "verify.json"), jb.str());

        if (!signs.ok()) {
            std::cerr << "pgrad: " << signs.violations.size()
                      << " invariant violation(s); first at node (" << signs.violations[0].i
                      << ", " << signs.violations[0].j << "): " << signs.violations[0].what
                      << "\n";
            return 3;
        }
        return 0;
    } catch (const IoError& e) {
        std::cerr << "pgrad: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "pgrad: verification failed: " << e.what() << "\n";
        return 3;
    }
}

int run_analyze(const RunConfig& cfg) {
    CharGrid grid;
    try {
        grid = load_grid(cfg);
    } catch (const IoError& e) {
        std::cerr << "pgrad: " << e.what() << "\n";
        return 4;
    }

    try {
        // analysis stays at the stored scale; thresholds scale with p1
        double floor_scaled = cfg.solver.p_floor * cfg.p1;
        NetInterpolator interp(grid);

        // radial profile along the symmetry ray
        std::vector<std::pair<double, double>> decay_xy;  // (1/r, ln p)
        std::string decay_csv = "r,p,ln_p,inv_r\n";
        double p_low = 0.0, win_r_lo = 0.0, win_r_hi = 0.0;
        {
            const std::size_t N = 256;
            double s_lo = 1.0 / interp.r_max(), s_hi = 1.0 / interp.r_min();
            std::vector<std::pair<double, double>> ray;  // (r, p)
            for (std::size_t k = 0; k < N; ++k) {
                double s = s_lo + (s_hi - s_lo) * static_cast<double>(k) /
                                      static_cast<double>(N - 1);
                double r = 1.0 / s;
                auto v = interp.query_polar(r, kPi / 4.0);
                if (v) ray.push_back({r, *v});
            }
            for (auto& pt : ray) {
                decay_csv += fp17(pt.first);
                decay_csv += ',';
                decay_csv += fp17(pt.second);
                decay_csv += ',';
                decay_csv += fp17(std::log(pt.second));
                decay_csv += ',';
                decay_csv += fp17(1.0 / pt.first);
                decay_csv += '\n';
                decay_xy.push_back({1.0 / pt.first, std::log(pt.second)});
            }
            // the decade hugging the stop frontier carries the scheme's worst
            // relative error; fit one decade above it
            double frontier = 0.0;
            for (auto& pt : ray)
                if (frontier == 0.0 || pt.second < frontier) frontier = pt.second;
            p_low = 10.0 * std::max(frontier, floor_scaled);
            for (auto& pt : ray)
                if (pt.second >= p_low && pt.second <= 10.0 * p_low) {
                    if (win_r_lo == 0.0 || pt.first < win_r_lo) win_r_lo = pt.first;
                    if (pt.first > win_r_hi) win_r_hi = pt.first;
                }
        }
        write_text_file(path_join(cfg.out_dir, "decay.csv"), decay_csv);

        std::optional<DecayFit> fit;
        if (win_r_lo > 0.0 && win_r_hi > win_r_lo) {
            try {
                fit = decay_fit(interp, kPi / 4.0, win_r_lo, win_r_hi, 10.0 * floor_scaled);
            } catch (const std::invalid_argument&) {
            }
        }

        std::vector<LevelCurve> curves;
        std::string levels_csv = "epsilon,theta,r\n";
        for (double eps : cfg.epsilons) {
            LevelCurve lc = level_curve(interp, eps);
            for (const LevelPoint& pt : lc.points) {
                levels_csv += fp17(eps);
                levels_csv += ',';
                levels_csv += fp17(pt.theta);
                levels_csv += ',';
                levels_csv += fp17(pt.r);
                levels_csv += '\n';
            }
            curves.push_back(std::move(lc));
        }
        write_text_file(path_join(cfg.out_dir, "levels.csv"), levels_csv);

        BubbleReport bubble = bubble_report(interp, cfg.epsilons, cfg.bubble_delta);
        MinPressure mp = min_pressure(grid);

        JsonBuilder jb;
        jb.begin_object();
        jb.key("schema_version").value_int(kSchemaVersion);
        jb.key("delta").value_number(bubble.delta);
        jb.key("rows").begin_array();
        for (const BubbleRow& row : bubble.rows) {
            jb.begin_object();
            jb.key("epsilon").value_number(row.epsilon);
            jb.key("covered").value_bool(row.covered);
            if (row.covered)
                jb.key("sup_r").value_number(row.sup_r);
            else
                jb.key("sup_r").value_null();
            jb.end_object();
        }
        jb.end_array();
        jb.key("fit").begin_object();
        jb.key("c").value_number(bubble.c);
        jb.key("m0").value_number(bubble.m0);
        jb.key("max_rel_err").value_number(bubble.max_rel_err);
        jb.key("consistent").value_bool(bubble.consistent);
        jb.key("n_fit").value_int(static_cast<long long>(bubble.n_fit));
        jb.end_object();
        jb.key("decay").begin_object();
        jb.key("theta").value_number(kPi / 4.0);
        if (fit) {
            jb.key("c").value_number(fit->c);
            jb.key("m0").value_number(fit->m0);
            jb.key("r_squared").value_number(fit->r_squared);
            jb.key("r_min").value_number(fit->r_min);
            jb.key("r_max").value_number(fit->r_max);
            jb.key("n_points").value_int(static_cast<long long>(fit->n_points));
        } else {
            jb.key("c").value_null();
            jb.key("m0").value_null();
            jb.key("r_squared").value_null();
            jb.key("r_min").value_null();
            jb.key("r_max").value_null();
            jb.key("n_points").value_int(0);
        }
        jb.end_object();
        jb.key("min_pressure").begin_object();
        jb.key("value").value_number(mp.value);
        jb.key("i").value_int(static_cast<long long>(mp.i));
        jb.key("j").value_int(static_cast<long long>(mp.j));
        jb.key("r").value_number(mp.r);
        jb.key("theta").value_number(mp.theta);
        jb.end_object();
        jb.end_object();
        write_text_file(path_join(cfg.out_dir, "bubble.json"), jb.str());

        if (!cfg.no_plots) {
            double scale = std::sqrt(cfg.p1);
            write_characteristics_svg(path_join(cfg.out_dir, "characteristics.svg"), grid,
                                      scale);
            write_levels_svg(path_join(cfg.out_dir, "levels.svg"), curves, scale);
            if (!decay_xy.empty())
                write_decay_svg(path_join(cfg.out_dir, "decay.svg"), decay_xy, fit);
            write_field_svg(path_join(cfg.out_dir, "field.svg"), interp, cfg.p1);
        }
        return 0;
    } catch (const IoError& e) {
        std::cerr << "pgrad: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "pgrad: analysis failed: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(const std::vector<std::string>& args) {
    if (args.empty()) {
        usage(std::cerr);
        return 1;
    }
    const std::string& cmd = args[0];
    if (cmd != "solve" && cmd != "verify" && cmd != "analyze" && cmd != "all") {
        std::cerr << "pgrad: unknown subcommand '" << cmd << "'\n";
        usage(std::cerr);
        return 1;
    }
    RunConfig cfg;
    try {
        cfg = parse_flags(args, 1);
    } catch (const ConfigError& e) {
        std::cerr << "pgrad: " << e.what() << "\n";
        return 1;
    }
    if (cmd == "solve") return run_solve(cfg);
    if (cmd == "verify") return run_verify(cfg);
    if (cmd == "analyze") return run_analyze(cfg);
    int rc = run_solve(cfg);
    if (rc) return rc;
    rc = run_verify(cfg);
    if (rc) return rc;
    return run_analyze(cfg);
}

}  // namespace pgrad
