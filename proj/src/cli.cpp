// SPDX-License-Identifier: Apache-2.0
//
// Subcommand dispatcher and JSON config ingestion. All dB quantities are
// converted to linear here, exactly once; everything below this layer is
// linear-domain.

#include "kmshadow/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kmshadow/errors.hpp"
#include "kmshadow/mc.hpp"
#include "kmshadow/statistics.hpp"
#include "kmshadow/sweep.hpp"

namespace kmshadow {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> number_or_array(const nlohmann::json &v, int n,
                                    const char *key) {
    std::vector<double> out;
    if (v.is_number()) {
        out.assign(static_cast<size_t>(n), v.get<double>());
    } else if (v.is_array()) {
        if (static_cast<int>(v.size()) != n)
            throw ValidationError(std::string(key) +
                                  " array length must equal nr");
        for (const auto &e : v) {
            if (!e.is_number())
                throw ValidationError(std::string(key) +
                                      " entries must be numbers");
            out.push_back(e.get<double>());
        }
    } else {
        throw ValidationError(std::string(key) +
                              " must be a number or an array of numbers");
    }
    return out;
}

double number_field(const nlohmann::json &j, const char *key) {
    const auto &v = j.at(key);
    if (!v.is_number())
        throw ValidationError(std::string(key) + " must be a number");
    return v.get<double>();
}

Method method_from_flags(const std::string &approx) {
    if (approx.empty()) return Method::EXACT_MGF;
    if (approx == "a") return Method::APPROX_A;
    if (approx == "b") return Method::APPROX_B;
    if (approx == "c") return Method::APPROX_C;
    throw ValidationError("--approx must be one of a, b, c");
}

const char *method_name(Method m) {
    switch (m) {
    case Method::EXACT_MGF:
        return "exact";
    case Method::DIRECT_PDF:
        return "direct";
    case Method::APPROX_A:
        return "approx_a";
    case Method::APPROX_B:
        return "approx_b";
    case Method::APPROX_C:
        return "approx_c";
    }
    return "unknown";
}

// Writes `text` to the --out path when given, else to `fallback`.
void emit(const std::string &text, const std::string &out_path,
          std::ostream &fallback) {
    if (out_path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ValidationError("cannot open " + out_path + " for writing");
    f << text;
    if (!f) throw ValidationError("write failed for " + out_path);
}

std::vector<double> parse_grid_spec(const std::string &spec) {
    // lo:hi:count, count >= 1 linearly spaced points inclusive of both ends.
    double lo = 0, hi = 0;
    int count = 0;
    char trailing = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count,
                    &trailing) != 3 ||
        count < 1)
        throw ValidationError("grid spec must be lo:hi:count, e.g. 0:0.9:10");
    std::vector<double> grid;
    if (count == 1) {
        grid.push_back(lo);
        return grid;
    }
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) grid.push_back(lo + step * i);
    return grid;
}

} // namespace

ChannelConfig config_from_json(const std::string &json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("config is not valid JSON: ") +
                              e.what());
    }
    if (!j.is_object()) throw ValidationError("config must be a JSON object");

    static const std::set<std::string> known = {
        "nr", "mu", "kappa_db", "m", "rho", "mean_snr_db", "series_tol",
        "k_max"};
    for (const auto &item : j.items())
        if (known.find(item.key()) == known.end())
            throw ValidationError("unknown config key: " + item.key());
    for (const char *key : {"nr", "mu", "kappa_db", "m", "rho", "mean_snr_db"})
        if (!j.contains(key))
            throw ValidationError(std::string("missing config key: ") + key);

    const auto &nr_v = j.at("nr");
    if (!nr_v.is_number_integer() || nr_v.get<int>() < 1)
        throw ValidationError("nr must be a positive integer");

    ChannelConfig c;
    c.n_branches = nr_v.get<int>();
    c.mu = number_or_array(j.at("mu"), c.n_branches, "mu");
    c.kappa = number_or_array(j.at("kappa_db"), c.n_branches, "kappa_db");
    for (double &k : c.kappa) k = db_to_linear(k);
    c.m = number_field(j, "m");
    c.rho = number_field(j, "rho");
    c.mean_snr = db_to_linear(number_field(j, "mean_snr_db"));
    if (j.contains("series_tol")) c.series_tol = number_field(j, "series_tol");
    if (j.contains("k_max")) {
        const auto &v = j.at("k_max");
        if (!v.is_number_integer() || v.get<int>() < 1)
            throw ValidationError("k_max must be a positive integer");
        c.k_max = v.get<int>();
    }
    c.validate_and_normalize();
    return c;
}

ChannelConfig config_from_json_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open config file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return config_from_json(buf.str());
}

int run_cli(const std::vector<std::string> &argv, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"capacity dispersion statistics for multi-branch receivers "
                 "over correlated shadowed fading"};
    app.require_subcommand(1);

    std::string config_path, out_path, approx, export_path;
    std::string rho_spec = "0:0.9:10";
    std::vector<double> gammas, ps;
    int points = 101, order = 0, threads = 0;
    double lo_db = -10.0, hi_db = 40.0;
    std::int64_t samples = 1000000;
    std::uint64_t seed = 1;
    bool verify = false;

    SharedComparisonSettings settings;
    double rician_k_db = 5.0, general_kappa_db = 10.0;

    CLI::App *cmd_derive =
        app.add_subcommand("derive", "print derived channel parameters");
    cmd_derive->add_option("--config", config_path, "JSON config file")
        ->required();

    CLI::App *cmd_pdf =
        app.add_subcommand("pdf", "combined-SNR density at given points");
    cmd_pdf->add_option("--config", config_path)->required();
    cmd_pdf->add_option("--gamma", gammas, "evaluation points, linear SNR")
        ->required()
        ->expected(-1);
    cmd_pdf->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App *cmd_mgf = app.add_subcommand(
        "mgf", "moment generating function at given arguments");
    cmd_mgf->add_option("--config", config_path)->required();
    cmd_mgf->add_option("--p", ps, "MGF arguments, each below the abscissa")
        ->required()
        ->expected(-1);
    cmd_mgf->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App *cmd_chos =
        app.add_subcommand("chos", "capacity log-moments in bits");
    cmd_chos->add_option("--config", config_path)->required();
    cmd_chos->add_option("--n", order, "moment order, 1 or 2; default both")
        ->check(CLI::Range(1, 2));
    cmd_chos->add_option("--approx", approx, "use approximation a, b or c");
    cmd_chos->add_flag("--verify", verify,
                       "add a direct-quadrature cross-check row");
    cmd_chos->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App *cmd_sweep = app.add_subcommand(
        "sweep", "reliability and log-moments over a mean-SNR grid");
    cmd_sweep->add_option("--config", config_path)->required();
    cmd_sweep->add_option("--lo", lo_db, "grid start, dB");
    cmd_sweep->add_option("--hi", hi_db, "grid end, dB");
    cmd_sweep->add_option("--points", points)->check(CLI::Range(2, 100000));
    cmd_sweep->add_option("--approx", approx, "use approximation a, b or c");
    cmd_sweep->add_option("--threads", threads, "worker threads, 0 = auto");
    cmd_sweep->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App *cmd_min = app.add_subcommand(
        "min-reliability", "minimum of R over a mean-SNR range");
    cmd_min->add_option("--config", config_path)->required();
    cmd_min->add_option("--lo", lo_db, "search start, dB");
    cmd_min->add_option("--hi", hi_db, "search end, dB");
    cmd_min->add_option("--approx", approx, "use approximation a, b or c");

    CLI::App *cmd_cmp = app.add_subcommand(
        "compare-models", "minimum reliability across limit models and rho");
    cmd_cmp->add_option("--rho", rho_spec, "rho grid as lo:hi:count");
    cmd_cmp->add_option("--nr", settings.n_branches, "branch count")
        ->check(CLI::Range(1, 64));
    cmd_cmp->add_option("--rician-k-db", rician_k_db, "Rician K-factor, dB");
    cmd_cmp->add_option("--general-kappa-db", general_kappa_db,
                        "general-model kappa, dB");
    cmd_cmp->add_option("--general-mu", settings.general_mu,
                        "general-model clusters per branch");
    cmd_cmp->add_option("--nakagami-m", settings.nakagami_parameter,
                        "Nakagami fading parameter");
    cmd_cmp->add_option("--lo", settings.snr_lo_db, "search start, dB");
    cmd_cmp->add_option("--hi", settings.snr_hi_db, "search end, dB");
    cmd_cmp->add_option("--threads", threads, "worker threads, 0 = auto");
    cmd_cmp->add_option("--out", out_path,
                        "write both tables here instead of stdout");

    CLI::App *cmd_mc = app.add_subcommand(
        "mc-validate", "empirical vs analytic capacity log-moments");
    cmd_mc->add_option("--config", config_path)->required();
    cmd_mc->add_option("--samples", samples)
        ->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_mc->add_option("--seed", seed);
    cmd_mc->add_option("--threads", threads, "worker threads, 0 = auto");
    cmd_mc->add_option("--export", export_path,
                       "also write the raw batch as CSV here");

    // CLI11 wants argc/argv; synthesize a program name slot.
    std::vector<const char *> cargv;
    cargv.push_back("kmshadow");
    for (const auto &a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(cmd_derive)) {
            const ChannelConfig c = config_from_json_file(config_path);
            const DerivedParams d = derive_params(c);
            out << "A=" << fmt12(d.A) << "\n";
            out << "log_A=" << fmt12(d.log_A) << "\n";
            out << "eta=" << fmt12(d.eta) << "\n";
            out << "U=" << fmt12(d.U) << "\n";
            out << "lambda=" << fmt12(d.lambda_min) << "\n";
            std::string lams;
            for (size_t i = 0; i < d.lambda_all.size(); ++i) {
                if (i) lams += ',';
                lams += fmt12(d.lambda_all[i]);
            }
            out << "lambda_i=" << lams << "\n";
            out << "alpha=" << fmt12(d.alpha) << "\n";
            out << "alpha_bar=" << fmt12(d.alpha_bar) << "\n";
            return 0;
        }

        if (app.got_subcommand(cmd_pdf)) {
            const ChannelConfig c = config_from_json_file(config_path);
            const EvaluationContext ctx = make_context(c);
            std::string csv = "gamma,pdf\n";
            for (double g : gammas)
                csv += fmt12(g) + "," + fmt12(pdf(g, ctx)) + "\n";
            emit(csv, out_path, out);
            return 0;
        }

        if (app.got_subcommand(cmd_mgf)) {
            const ChannelConfig c = config_from_json_file(config_path);
            const EvaluationContext ctx = make_context(c);
            std::string csv = "p,mgf\n";
            for (double p : ps)
                csv += fmt12(p) + "," + fmt12(mgf(p, ctx)) + "\n";
            emit(csv, out_path, out);
            return 0;
        }

        if (app.got_subcommand(cmd_chos)) {
            const ChannelConfig c = config_from_json_file(config_path);
            const Method method = method_from_flags(approx);
            const SeriesVariant variant = approx.empty() ? SeriesVariant::TILDE
                                                         : SeriesVariant::BAR;
            const EvaluationContext ctx = make_context(c, variant);
            std::vector<int> orders =
                order == 0 ? std::vector<int>{1, 2} : std::vector<int>{order};
            std::string csv = "n,method,value\n";
            for (int n : orders) {
                double v = 0;
                switch (method) {
                case Method::APPROX_A:
                    v = chos_approx(n, ApproxVariant::A, ctx);
                    break;
                case Method::APPROX_B:
                    v = chos_approx(n, ApproxVariant::B, ctx);
                    break;
                case Method::APPROX_C:
                    v = chos_approx(n, ApproxVariant::C, ctx);
                    break;
                default:
                    v = chos_exact(n, ctx);
                    break;
                }
                csv += std::to_string(n) + "," + method_name(method) + "," +
                       fmt12(v) + "\n";
            }
            if (verify) {
                const EvaluationContext dctx =
                    approx.empty() ? ctx : make_context(c, SeriesVariant::TILDE);
                for (int n : orders)
                    csv += std::to_string(n) + ",direct," +
                           fmt12(chos_direct(n, dctx)) + "\n";
            }
            emit(csv, out_path, out);
            return 0;
        }

        if (app.got_subcommand(cmd_sweep)) {
            const ChannelConfig c = config_from_json_file(config_path);
            const SweepResult r = reliability_sweep(
                c, lo_db, hi_db, points, method_from_flags(approx), threads);
            emit(sweep_to_csv(r), out_path, out);
            if (r.failed_points > 0) {
                err << r.failed_points << " of " << points
                    << " grid points failed to evaluate\n";
                return 2;
            }
            return 0;
        }

        if (app.got_subcommand(cmd_min)) {
            const ChannelConfig c = config_from_json_file(config_path);
            const MinReliabilityPoint p = find_min_reliability(
                c, lo_db, hi_db, method_from_flags(approx));
            out << "snr_at_min_db=" << fmt12(p.snr_db) << "\n";
            out << "r_min=" << fmt12(p.reliability_min) << "\n";
            out << "boundary=" << (p.boundary_flag ? "true" : "false") << "\n";
            return 0;
        }

        if (app.got_subcommand(cmd_cmp)) {
            settings.rician_k = db_to_linear(rician_k_db);
            settings.general_kappa = db_to_linear(general_kappa_db);
            const std::vector<double> grid = parse_grid_spec(rho_spec);
            for (double r : grid)
                if (!(r >= 0.0 && r < 1.0))
                    throw ValidationError("rho grid must lie within [0, 1)");
            const ModelComparison cmp = compare_models(grid, settings, threads);
            emit(comparison_to_csv_model_major(cmp) + "\n" +
                     comparison_to_csv_rho_major(cmp),
                 out_path, out);
            return 0;
        }

        if (app.got_subcommand(cmd_mc)) {
            const ChannelConfig c = config_from_json_file(config_path);
            const SampleBatch batch = sample_batch(c, seed, samples, threads);
            if (!export_path.empty()) write_batch_csv(batch, export_path);
            const EvaluationContext ctx = make_context(c);
            bool ok = true;
            for (int n : {1, 2}) {
                const EmpiricalMoment e = empirical_chos(batch, n);
                const double analytic = chos_direct(n, ctx);
                const double z = (e.estimate - analytic) / e.std_error;
                ok = ok && std::abs(z) < 4.0;
                out << "n=" << n << " empirical=" << fmt12(e.estimate)
                    << " std_error=" << fmt12(e.std_error)
                    << " analytic=" << fmt12(analytic) << " z=" << fmt12(z)
                    << "\n";
            }
            return ok ? 0 : 1;
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace kmshadow
