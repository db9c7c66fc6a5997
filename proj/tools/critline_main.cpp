// critline: evaluators for Epstein zeta functions and Eisenstein series,
// value-list cache management, counting experiments, and mean-square sweeps.

#include "critline/cache.hpp"
#include "critline/counting.hpp"
#include "critline/eisenstein.hpp"
#include "critline/epstein.hpp"
#include "critline/sweep.hpp"
#include "critline/textio.hpp"

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace critline;

struct FormSource {
    std::string inline_spec;
    std::string file_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--gram", inline_spec,
                        "Gram matrix inline: rows separated by ';', entries by ',' (e.g. \"2,1;1,1\")");
        cmd->add_option("--form-file", file_path,
                        "Form text file: line 1 = m, then m Gram rows (17 significant digits)");
    }

    GramForm resolve() const {
        if (inline_spec.empty() == file_path.empty())
            throw invalid_input("exactly one of --gram and --form-file is required");
        if (!inline_spec.empty()) return parse_form_inline(inline_spec);
        std::ifstream in(file_path);
        if (!in) throw io_failure("cannot open form file '" + file_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_form_text(buf.str());
    }
};

std::string resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CRITLINE_CACHE_DIR")) return env;
    return {};
}

EpsteinMethod parse_method(const std::string& name) {
    if (name == "direct") return EpsteinMethod::direct;
    if (name == "theta") return EpsteinMethod::theta;
    if (name == "afe") return EpsteinMethod::afe;
    if (name == "auto") return EpsteinMethod::auto_route;
    throw invalid_input("unknown method '" + name + "' (direct|theta|afe|auto)");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw io_failure("cannot open output file '" + out_path + "'");
        out << text;
        if (!out) throw io_failure("write failure on '" + out_path + "'");
    }
}

std::string complex_plain(Complex v) { return fmt17(v.real()) + " " + fmt17(v.imag()) + "\n"; }

// Evaluates Z_Q(s), serving AFE value lists from the cache directory when
// one is configured.
Complex epstein_dispatch(const GramForm& q, Complex s, EpsteinMethod method, double eps,
                         int threads, const std::string& cache_dir) {
    const bool afe_route =
        method == EpsteinMethod::afe ||
        (method == EpsteinMethod::auto_route && q.dim() == 2 &&
         std::fabs(s.real() - 0.5) < 1e-12 && std::fabs(s.imag()) > 30.0);
    if (afe_route) {
        if (std::fabs(s.real() - 0.5) > 1e-12)
            throw numeric_domain_error("AFE path requires sigma = 1/2");
        const GramForm qc = q.classified();
        if (!qc.is_positive_definite())
            throw invalid_input("Epstein evaluators require a positive-definite form");
        const double t = s.imag();
        const double d = discriminant(qc);
        if (!cache_dir.empty()) {
            ValueListCache cache{std::filesystem::path(cache_dir)};
            const ValueList& primal = cache.get(qc, afe_cutoff(t, d) * 1.0000001);
            const ValueList& dual_list = cache.get(dual(qc), afe_dual_cutoff(t, d) * 1.0000001);
            return eval_afe(qc, t, primal, dual_list);
        }
        return eval_afe(qc, t);
    }
    return eval_epstein(q, s, method, eps, threads);
}

std::string count_csv_header() {
    return "A,B,count,count_no_origin,normalized,normalized_log,p,q,seconds\n";
}

std::string count_csv_row(const CountReport& r) {
    std::string row = fmt17(r.A) + "," + fmt17(r.B) + "," + std::to_string(r.count) + "," +
                      std::to_string(r.count_no_origin) + "," + fmt17(r.normalized) + "," +
                      fmt17(r.normalized_log) + "," + std::to_string(r.signature.p) + "," +
                      std::to_string(r.signature.q) + "," + fmt17(r.seconds);
    return row + "\n";
}

std::string count_json(const CountReport& r) {
    JsonWriter w;
    w.field("A", r.A)
        .field("B", r.B)
        .field("count", r.count)
        .field("count_no_origin", r.count_no_origin)
        .field("normalized", r.normalized)
        .field("normalized_log", r.normalized_log)
        .field("p", static_cast<std::int64_t>(r.signature.p))
        .field("q", static_cast<std::int64_t>(r.signature.q))
        .field("region", r.region)
        .field("zero_zero_pairs", r.zero_zero_pairs)
        .field("half_zero_pairs", r.half_zero_pairs)
        .field("seconds", r.seconds);
    return w.str() + "\n";
}

std::string meansquare_json(const MeanSquareReport& r) {
    JsonWriter w;
    w.field("kind", r.kind)
        .field("T", r.T)
        .field("window", r.window)
        .field("integral", r.integral)
        .field("step", r.step)
        .field("evaluator", r.evaluator)
        .field("samples", r.samples)
        .field("shifted_samples", r.shifted_samples);
    if (r.has_argmax) {
        JsonWriter p;
        p.field("x1", r.argmax_x1).field("x2", r.argmax_x2).field("y", r.argmax_y);
        w.raw_field("argmax_point", p.str());
    }
    return w.str() + "\n";
}

std::string fit_json(const ExponentFit& f) {
    std::string pts = "[";
    for (size_t i = 0; i < f.points.size(); ++i) {
        if (i) pts += ",";
        pts += "[" + fmt17(f.points[i].first) + "," + fmt17(f.points[i].second) + "]";
    }
    pts += "]";
    JsonWriter w;
    w.field("slope", f.slope)
        .field("intercept", f.intercept)
        .field("max_abs_residual", f.max_abs_residual)
        .raw_field("points", pts);
    return w.str() + "\n";
}

std::string fit_plain(const ExponentFit& f) {
    return "slope=" + fmt17(f.slope) + " intercept=" + fmt17(f.intercept) +
           " max_abs_residual=" + fmt17(f.max_abs_residual) + "\n";
}

int run(int argc, char** argv) {
    CLI::App app{
        "critline: Epstein zeta and Eisenstein series evaluators, lattice value counting, "
        "and critical-line mean-square experiments"};
    app.require_subcommand(1);

    int threads = 0;
    std::string out_path;
    app.add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    std::string result;

    // ---- eval-epstein -----------------------------------------------------
    auto* ee = app.add_subcommand(
        "eval-epstein",
        "Z_Q(s) at s = sigma + i t. Methods: direct (Re s >= m/2 + 1/4), theta (|t| <= 30, "
        "s away from 0 and m/2), afe (m = 2, sigma = 1/2, |t| >= 1), auto (routes by domain)");
    ee->fallthrough();
    {
        static FormSource src;
        static double sigma = 0.0, t = 0.0, eps = 1e-6;
        static std::string method = "auto", cache_dir, format = "plain";
        src.attach(ee);
        ee->add_option("--sigma", sigma, "Re s")->required();
        ee->add_option("--t", t, "Im s")->capture_default_str();
        ee->add_option("--method", method, "direct|theta|afe|auto")->capture_default_str();
        ee->add_option("--eps", eps, "absolute error target for the direct path")
            ->capture_default_str();
        ee->add_option("--cache-dir", cache_dir,
                       "value-list cache directory (default: $CRITLINE_CACHE_DIR)");
        ee->add_option("--format", format, "plain|json")->capture_default_str();
        ee->callback([&]() {
            const GramForm q = src.resolve();
            const Complex v = epstein_dispatch(q, Complex(sigma, t), parse_method(method), eps,
                                               threads, resolve_cache_dir(cache_dir));
            if (format == "json") {
                JsonWriter w;
                w.field("kind", std::string("epstein"))
                    .field("sigma", sigma)
                    .field("t", t)
                    .field("method", method)
                    .field("re", v.real())
                    .field("im", v.imag());
                result = w.str() + "\n";
            } else {
                result = complex_plain(v);
            }
        });
    }

    // ---- eval-eisenstein ---------------------------------------------------
    auto* ev = app.add_subcommand(
        "eval-eisenstein",
        "E(s, z) for SL2(Z) (lattice=modular, z = x1 + i y) or SL2(Z[i]) (lattice=picard, "
        "z = x1 + i x2 + j y). Domains as eval-epstein; modular AFE path needs sigma = 1/2; "
        "picard direct path needs sigma > 2.25");
    ev->fallthrough();
    {
        static std::string lattice;
        static double x1 = 0.0, x2 = 0.0, y = 1.0, sigma = 0.0, t = 0.0, eps = 1e-6;
        static std::string method = "auto", cache_dir, format = "plain";
        ev->add_option("--lattice", lattice, "modular|picard")->required();
        ev->add_option("--x1", x1, "Re part of z")->capture_default_str();
        ev->add_option("--x2", x2, "second coordinate (picard only)")->capture_default_str();
        ev->add_option("--y", y, "height coordinate, > 0")->required();
        ev->add_option("--sigma", sigma, "Re s")->required();
        ev->add_option("--t", t, "Im s")->capture_default_str();
        ev->add_option("--method", method, "direct|theta|afe|auto")->capture_default_str();
        ev->add_option("--eps", eps, "absolute error target for the direct path")
            ->capture_default_str();
        ev->add_option("--cache-dir", cache_dir,
                       "value-list cache directory (default: $CRITLINE_CACHE_DIR)");
        ev->add_option("--format", format, "plain|json")->capture_default_str();
        ev->callback([&]() {
            const Complex s(sigma, t);
            Complex v;
            if (lattice == "modular") {
                if (x2 != 0.0) throw invalid_input("modular lattice: x2 must be 0");
                const HyperbolicPoint z(x1, y);
                EisOptions opt;
                opt.method = parse_method(method);
                opt.eps = eps;
                opt.threads = threads;
                const std::string dir = resolve_cache_dir(cache_dir);
                const GramForm qz = form_from_h2(z);
                std::optional<ValueListCache> cache;
                if (!dir.empty() && opt.method == EpsteinMethod::afe) {
                    const double d = discriminant(qz);
                    cache.emplace(std::filesystem::path(dir));
                    opt.primal = &cache->get(qz, afe_cutoff(t, d) * 1.0000001);
                    opt.dual_list = &cache->get(dual(qz), afe_dual_cutoff(t, d) * 1.0000001);
                }
                v = eis_modular(s, z, opt);
            } else if (lattice == "picard") {
                const HyperbolicPoint z(x1, x2, y);
                EisOptions opt;
                opt.method = parse_method(method);
                opt.eps = eps;
                opt.threads = threads;
                v = eis_picard(s, z, opt);
            } else {
                throw invalid_input("unknown lattice '" + lattice + "' (modular|picard)");
            }
            if (format == "json") {
                JsonWriter w;
                w.field("kind", std::string("eisenstein"))
                    .field("lattice", lattice)
                    .field("sigma", sigma)
                    .field("t", t)
                    .field("re", v.real())
                    .field("im", v.imag());
                result = w.str() + "\n";
            } else {
                result = complex_plain(v);
            }
        });
    }

    // ---- values ------------------------------------------------------------
    auto* vals = app.add_subcommand(
        "values", "build or extend the value-list cache (form and its dual) up to a cutoff");
    vals->fallthrough();
    {
        static FormSource src;
        static double cutoff = 0.0;
        static std::string cache_dir, format = "plain";
        src.attach(vals);
        vals->add_option("--cutoff", cutoff, "target cutoff X")->required();
        vals->add_option("--cache-dir", cache_dir,
                         "cache directory (default: $CRITLINE_CACHE_DIR)");
        vals->add_option("--format", format, "plain|json")->capture_default_str();
        vals->callback([&]() {
            const std::string dir = resolve_cache_dir(cache_dir);
            if (dir.empty())
                throw invalid_input("values: need --cache-dir or CRITLINE_CACHE_DIR");
            const CacheReport rep = cache_manage(dir, src.resolve(), cutoff);
            auto one_plain = [](const char* tag, const CacheFileReport& f) {
                return std::string(tag) + " " + f.status + " path=" + f.path +
                       " X=" + fmt17(f.cutoff) + " entries=" + std::to_string(f.entries) +
                       " points=" + std::to_string(f.points) + "\n";
            };
            auto one_json = [](const CacheFileReport& f) {
                JsonWriter w;
                w.field("path", f.path)
                    .field("status", f.status)
                    .field("X", f.cutoff)
                    .field("entries", f.entries)
                    .field("points", f.points);
                return w.str();
            };
            if (format == "json") {
                JsonWriter w;
                w.raw_field("primal", one_json(rep.primal)).raw_field("dual", one_json(rep.dual));
                result = w.str() + "\n";
            } else {
                result = one_plain("primal", rep.primal) + one_plain("dual", rep.dual);
            }
        });
    }

    // ---- count ---------------------------------------------------------------
    auto* cnt = app.add_subcommand(
        "count",
        "#{v : ||v|| <= A, |Q(v)| < B} for an indefinite form (n in 3..6, (2A+1)^n <= 2e9), "
        "or the separate-norm difference-form count with --difference (positive-definite "
        "base form, m in {2,3})");
    cnt->fallthrough();
    {
        static FormSource src;
        static double a = 0.0, b = 0.0;
        static bool no_origin = false, difference = false;
        static std::string format = "plain";
        src.attach(cnt);
        cnt->add_option("--A", a, "Euclidean norm bound")->required();
        cnt->add_option("--B", b, "value window half-width (open interval)")->required();
        cnt->add_flag("--no-origin", no_origin, "exclude v = 0 from the reported count");
        cnt->add_flag("--difference", difference,
                      "treat the form as the positive-definite base Q and count "
                      "{||u||<=A, ||v||<=A, |Q(u)-Q(v)|<B}");
        cnt->add_option("--format", format, "plain|json|csv")->capture_default_str();
        cnt->callback([&]() {
            const GramForm q = src.resolve();
            const CountReport r =
                difference ? count_difference(q, a, b, !no_origin)
                           : count_box(CountQuery{q, a, b, !no_origin}, threads);
            if (format == "csv") {
                result = count_csv_header() + count_csv_row(r);
            } else if (format == "json") {
                result = count_json(r);
            } else {
                result = "count=" + std::to_string(r.count) +
                         " count_no_origin=" + std::to_string(r.count_no_origin) +
                         " normalized=" + fmt17(r.normalized) +
                         " normalized_log=" + fmt17(r.normalized_log) +
                         " signature=(" + std::to_string(r.signature.p) + "," +
                         std::to_string(r.signature.q) + ")" + " region=" + r.region +
                         " seconds=" + fmt17(r.seconds) + "\n";
            }
        });
    }

    // ---- dyadic-table ----------------------------------------------------------
    auto* dy = app.add_subcommand(
        "dyadic-table", "grid of counts over A x B lists, emitted as CSV in row-major order");
    dy->fallthrough();
    {
        static FormSource src;
        static std::string a_list_str, b_list_str, format = "csv";
        static bool no_origin = false, difference = false;
        src.attach(dy);
        dy->add_option("--A-list", a_list_str, "comma-separated A values")->required();
        dy->add_option("--B-list", b_list_str, "comma-separated B values")->required();
        dy->add_flag("--no-origin", no_origin, "exclude v = 0 from the reported counts");
        dy->add_flag("--difference", difference, "use the difference-form fast path");
        dy->add_option("--format", format, "csv")->capture_default_str();
        dy->callback([&]() {
            const GramForm q = src.resolve();
            const auto a_list = parse_double_list(a_list_str);
            const auto b_list = parse_double_list(b_list_str);
            const auto reports = difference
                                     ? dyadic_table_difference(q, a_list, b_list, !no_origin)
                                     : dyadic_table(q, a_list, b_list, !no_origin, threads);
            result = count_csv_header();
            for (const auto& r : reports) result += count_csv_row(r);
        });
    }

    // ---- meansquare ----------------------------------------------------------
    auto* ms = app.add_subcommand(
        "meansquare",
        "mean-square integrals: kind=epstein gives int_T^2T |Z_Q(1/2+it)|^2 dt (T >= 64, "
        "step <= 1/8, AFE path), kind=eisenstein gives int_-T^T |E(1/2+it,z)|^2 dt on the "
        "modular surface (|x1| <= 1/2, y >= 1/2)");
    ms->fallthrough();
    {
        static FormSource src;
        static std::string kind;
        static double t_cap = 0.0, step = 0.0625, x1 = 0.0, y = 1.0;
        static std::string cache_dir;
        ms->add_option("--kind", kind, "epstein|eisenstein")->required();
        src.attach(ms);
        ms->add_option("--T", t_cap, "window parameter T")->required();
        ms->add_option("--step", step, "quadrature step (<= 1/8)")->capture_default_str();
        ms->add_option("--x1", x1, "point: Re z (eisenstein)")->capture_default_str();
        ms->add_option("--y", y, "point: Im z (eisenstein)")->capture_default_str();
        ms->add_option("--cache-dir", cache_dir,
                       "value-list cache directory (default: $CRITLINE_CACHE_DIR)");
        ms->callback([&]() {
            MeanSquareReport r;
            if (kind == "epstein") {
                const GramForm q = src.resolve().classified();
                const std::string dir = resolve_cache_dir(cache_dir);
                if (!dir.empty()) {
                    ValueListCache cache{std::filesystem::path(dir)};
                    const double d = discriminant(q);
                    const ValueList& primal = cache.get(q, afe_cutoff(2.0 * t_cap, d) * 1.0000001);
                    const ValueList& dual_list =
                        cache.get(dual(q), afe_dual_cutoff(2.0 * t_cap, d) * 1.0000001);
                    r = mean_square_epstein(q, t_cap, step, primal, dual_list, threads);
                } else {
                    r = mean_square_epstein(q, t_cap, step, threads);
                }
            } else if (kind == "eisenstein") {
                r = mean_square_eisenstein(Lattice::modular, HyperbolicPoint(x1, y), t_cap, step,
                                           threads);
            } else {
                throw invalid_input("unknown meansquare kind '" + kind + "'");
            }
            result = meansquare_json(r);
        });
    }

    // ---- sweep -----------------------------------------------------------------
    auto* sw = app.add_subcommand(
        "sweep",
        "pointwise values over a t-range as CSV (t,re,im,abs2). kind=epstein needs a form; "
        "kind=eis-modular / eis-picard need a point. Validity domains as eval-epstein");
    sw->fallthrough();
    {
        static FormSource src;
        static std::string kind, method = "auto", cache_dir;
        static double sigma = 0.5, t0 = 0.0, t1 = 0.0, step = 0.0625, x1 = 0.0, x2 = 0.0, y = 1.0;
        static double eps = 1e-6;
        sw->add_option("--kind", kind, "epstein|eis-modular|eis-picard")->required();
        src.attach(sw);
        sw->add_option("--sigma", sigma, "Re s")->capture_default_str();
        sw->add_option("--t0", t0, "range start")->required();
        sw->add_option("--t1", t1, "range end")->required();
        sw->add_option("--step", step, "sample spacing")->capture_default_str();
        sw->add_option("--method", method, "direct|theta|afe|auto")->capture_default_str();
        sw->add_option("--eps", eps, "direct-path error target")->capture_default_str();
        sw->add_option("--x1", x1, "point: x1")->capture_default_str();
        sw->add_option("--x2", x2, "point: x2 (picard)")->capture_default_str();
        sw->add_option("--y", y, "point: y")->capture_default_str();
        sw->add_option("--cache-dir", cache_dir,
                       "value-list cache directory (default: $CRITLINE_CACHE_DIR)");
        sw->callback([&]() {
            if (!(step > 0.0) || t1 < t0) throw invalid_input("sweep: bad range/step");
            const std::int64_t n = static_cast<std::int64_t>(std::floor((t1 - t0) / step + 1e-9)) + 1;
            const EpsteinMethod m = parse_method(method);
            std::string csv = "t,re,im,abs2\n";
            std::int64_t shifted = 0;

            auto add_row = [&csv](double t, Complex v) {
                csv += fmt17(t) + "," + fmt17(v.real()) + "," + fmt17(v.imag()) + "," +
                       fmt17(std::norm(v)) + "\n";
            };

            if (kind == "epstein") {
                const GramForm q = src.resolve().classified();
                const std::string dir = resolve_cache_dir(cache_dir);
                std::optional<ValueListCache> cache;
                const ValueList* primal = nullptr;
                const ValueList* dual_list = nullptr;
                if (m == EpsteinMethod::afe) {
                    const double d = discriminant(q);
                    const double tmax = std::max(std::fabs(t0), std::fabs(t1));
                    cache.emplace(dir.empty() ? std::filesystem::path{}
                                              : std::filesystem::path(dir));
                    primal = &cache->get(q, afe_cutoff(tmax, d) * 1.0000001);
                    dual_list = &cache->get(dual(q), afe_dual_cutoff(tmax, d) * 1.0000001);
                }
                for (std::int64_t k = 0; k < n; ++k) {
                    const double t = t0 + static_cast<double>(k) * step;
                    const Complex v = (m == EpsteinMethod::afe)
                                          ? eval_afe(q, t, *primal, *dual_list)
                                          : eval_epstein(q, Complex(sigma, t), m, eps, threads);
                    add_row(t, v);
                }
            } else if (kind == "eis-modular") {
                const HyperbolicPoint z(x1, y);
                for (std::int64_t k = 0; k < n; ++k) {
                    double t = t0 + static_cast<double>(k) * step;
                    if (std::fabs(sigma - 0.5) < 1e-12) {
                        bool shift_flag = false;
                        t = critline::detail::guarded_height(t, step, shift_flag);
                        if (shift_flag) ++shifted;
                    }
                    EisOptions opt;
                    opt.method = m;
                    opt.eps = eps;
                    opt.threads = threads;
                    add_row(t, eis_modular(Complex(sigma, t), z, opt));
                }
            } else if (kind == "eis-picard") {
                const HyperbolicPoint z(x1, x2, y);
                for (std::int64_t k = 0; k < n; ++k) {
                    const double t = t0 + static_cast<double>(k) * step;
                    EisOptions opt;
                    opt.method = m;
                    opt.eps = eps;
                    opt.threads = threads;
                    add_row(t, eis_picard(Complex(sigma, t), z, opt));
                }
            } else {
                throw invalid_input("unknown sweep kind '" + kind + "'");
            }
            csv += "# shifted_samples=" + std::to_string(shifted) + "\n";
            result = csv;
        });
    }

    // ---- growth ---------------------------------------------------------------
    auto* gr = app.add_subcommand(
        "growth",
        "windowed-max growth fit of |E(1+iT, j)| on the Picard 3-fold over a T ladder "
        "(ascending, >= 4 entries, max <= 1e4)");
    gr->fallthrough();
    {
        static std::string t_list_str = "100,200,400,800,1600,3200,6400";
        static std::string format = "json";
        gr->add_option("--T-list", t_list_str, "comma-separated ladder")->capture_default_str();
        gr->add_option("--format", format, "json|plain")->capture_default_str();
        gr->callback([&]() {
            const auto t_list = parse_double_list(t_list_str);
            const ExponentFit f = pointwise_picard_growth(t_list);
            result = (format == "plain") ? fit_plain(f) : fit_json(f);
        });
    }

    // ---- fit --------------------------------------------------------------------
    auto* ft = app.add_subcommand(
        "fit", "least-squares slope of log Y against log X from a two-column CSV (X,Y)");
    ft->fallthrough();
    {
        static std::string in_path, format = "plain";
        ft->add_option("--in", in_path, "input CSV with columns X,Y (optional header)")
            ->required();
        ft->add_option("--format", format, "plain|json")->capture_default_str();
        ft->callback([&]() {
            const auto pts = read_xy_csv(in_path);
            const ExponentFit f = fit_exponent(pts);
            result = (format == "plain") ? fit_plain(f) : fit_json(f);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    emit(result, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const critline::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const critline::numeric_domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const critline::io_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
