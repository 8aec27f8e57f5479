#pragma once

// Command-line front end. run() parses arguments, dispatches a subcommand and
// maps failures to exit statuses: 0 success, 1 invalid input, 2 numerical
// non-convergence.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "snrshrink/data_ingest.hpp"
#include "snrshrink/diagnostics.hpp"
#include "snrshrink/error.hpp"
#include "snrshrink/exaggeration.hpp"
#include "snrshrink/heavy_tail.hpp"
#include "snrshrink/mixture_prior.hpp"
#include "snrshrink/posterior.hpp"
#include "snrshrink/svg.hpp"

namespace snrshrink::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Subcommand { fit, analyze, curves, tprior, exaggeration, diagnose };
enum class OutputFormat { csv, svg, both };

struct RunConfig {
    Subcommand subcommand = Subcommand::fit;
    std::uint64_t seed = 0;
    std::string input;
    std::string output;
    OutputFormat format = OutputFormat::both;
    bool force = false;
};

namespace detail {

// Shortest text that parses back to the same double.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "NA";
    if (v == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string join_invocation(const std::vector<std::string>& args) {
    std::string out = "snrshrink";
    for (const auto& a : args) out += " " + a;
    return out;
}

inline std::string provenance(const std::vector<std::string>& args) {
    return std::string("# snrshrink ") + kVersion + " | " + join_invocation(args) + "\n";
}

inline void write_file(const std::string& path, const std::string& content, bool force) {
    if (path.empty()) throw InputError("output path is empty");
    if (!force && std::filesystem::exists(path)) {
        throw InputError("refusing to overwrite '" + path + "' (pass --force)");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
    if (!out) throw InputError("failed writing '" + path + "'");
}

inline std::string with_extension(const std::string& path, const char* ext) {
    return std::filesystem::path(path).replace_extension(ext).string();
}

// Grid from "a,b,c" or "lo:hi:count" (count evenly spaced points).
inline std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto number = [&](std::string_view piece) {
        const auto v = snrshrink::detail::parse_number(snrshrink::detail::trim(piece));
        if (!v || !std::isfinite(*v)) throw InputError("bad grid value '" + std::string(piece) + "' in '" + text + "'");
        return *v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string_view> parts;
        std::string_view rest = text;
        for (auto pos = rest.find(':'); pos != std::string_view::npos; pos = rest.find(':')) {
            parts.push_back(rest.substr(0, pos));
            rest.remove_prefix(pos + 1);
        }
        parts.push_back(rest);
        if (parts.size() != 3) throw InputError("grid range must be lo:hi:count, got '" + text + "'");
        const double lo = number(parts[0]);
        const double hi = number(parts[1]);
        const double count = number(parts[2]);
        if (count < 1 || count != std::floor(count) || count > 1e6) throw InputError("grid count must be a positive integer");
        const auto n = static_cast<std::size_t>(count);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
        return out;
    }
    for (const auto& piece : snrshrink::detail::split_fields(text)) out.push_back(number(piece));
    if (out.empty()) throw InputError("empty grid");
    return out;
}

// lo, lo + step, ... up to hi (inclusive within rounding), built from integer
// multiples so no error accumulates; values within 1e-9 step of 0 snap to 0.
inline std::vector<double> step_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InputError("--step must be positive");
    if (!(hi >= lo)) throw InputError("grid maximum must not be below the minimum");
    const double span = (hi - lo) / step;
    if (span > 1e7) throw InputError("grid too large");
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = lo + static_cast<double>(i) * step;
        if (std::abs(v) < 1e-9 * step) v = 0.0;
        out[i] = v;
    }
    return out;
}

inline bool wants_csv(OutputFormat f) { return f != OutputFormat::svg; }
inline bool wants_svg(OutputFormat f) { return f != OutputFormat::csv; }

inline const std::map<std::string, OutputFormat>& format_map() {
    static const std::map<std::string, OutputFormat> m{
        {"csv", OutputFormat::csv}, {"svg", OutputFormat::svg}, {"both", OutputFormat::both}};
    return m;
}

inline const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace detail

class Runner {
public:
    Runner(std::vector<std::string> args, std::ostream& out, std::ostream& err)
        : args_(std::move(args)), out_(out), err_(err) {}

    int run() {
        CLI::App app{"Signal-to-noise ratio priors: fit from a corpus, shrink new estimates, "
                     "type S/M error calculations",
                     "snrshrink"};
        app.set_version_flag("--version", kVersion);
        app.require_subcommand(1, 1);

        // fit
        auto* fit = app.add_subcommand("fit", "Fit a normal-mixture SNR prior to a corpus");
        fit->add_option("--input", config_.input, "Corpus CSV file")->required();
        fit->add_option("--schema", schema_, "Column layout: p_value, z_value or b_s")
            ->required()
            ->check(CLI::IsMember({"p_value", "z_value", "b_s"}));
        auto* k_opt =
            fit->add_option("--k", k_, "Number of mixture components")->check(CLI::PositiveNumber)->capture_default_str();
        fit->add_option("--k-max", k_max_, "Select k in 1..K by BIC instead of fixing --k")
            ->check(CLI::PositiveNumber)
            ->excludes(k_opt);
        fit->add_option("--restarts", restarts_, "EM restarts (first is unjittered)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        fit->add_option("--label", label_, "Source label stored in the prior file (default: input path)");
        fit->add_option("--out", config_.output, "Prior JSON file to write")->required();
        fit->add_option("--svg", svg_path_, "Also write the fitted SNR prior density as SVG");
        add_common(fit);

        // analyze
        auto* analyze = app.add_subcommand("analyze", "Posterior summary for one estimate under a fitted prior");
        analyze->add_option("--prior", prior_paths_, "Prior JSON file")->required()->expected(1);
        auto* b_opt = analyze->add_option("--b", b_, "Point estimate (with --s)");
        auto* s_opt = analyze->add_option("--s", s_, "Standard error (with --b)");
        auto* z_opt = analyze->add_option("--z", z_, "z-value b/s (s taken as 1)");
        b_opt->needs(s_opt)->excludes(z_opt);
        s_opt->needs(b_opt)->excludes(z_opt);
        analyze->add_option("--out", config_.output, "CSV file to write (default: standard output)");
        add_common(analyze);

        // curves
        auto* curves = app.add_subcommand("curves", "Shrinkage factor and sign-error probability over a z grid");
        curves->add_option("--prior", prior_paths_, "Prior JSON file (repeat to overlay several)")->required();
        curves->add_option("--out", config_.output, "Output path; .csv and .svg files share its stem")->required();
        curves->add_option("--z-min", curves_grid_.lo, "Grid start")->capture_default_str();
        curves->add_option("--z-max", curves_grid_.hi, "Grid end")->capture_default_str();
        curves->add_option("--step", curves_grid_.step, "Grid step")->capture_default_str();
        add_format(curves);
        add_common(curves);

        // tprior
        auto* tprior = app.add_subcommand("tprior", "Posterior summaries under a t prior on beta/s over a z grid");
        tprior->add_option("--nu", nu_, "Degrees of freedom of the t prior")->capture_default_str();
        tprior->add_option("--scale", t_scale_, "Prior scale in standard errors")->capture_default_str();
        tprior->add_option("--z-min", tprior_grid_.lo, "Grid start")->capture_default_str();
        tprior->add_option("--z-max", tprior_grid_.hi, "Grid end")->capture_default_str();
        tprior->add_option("--step", tprior_grid_.step, "Grid step")->capture_default_str();
        tprior->add_option("--out", config_.output, "Output path; .csv and .svg files share its stem")->required();
        add_format(tprior);
        add_common(tprior);

        // exaggeration
        auto* exag = app.add_subcommand("exaggeration", "Exaggeration ratio E(|b/beta| | |b| > c) over a grid");
        exag->add_option("--snr-grid", snr_grid_, "SNR values: 'a,b,c' or 'lo:hi:count'")->required();
        exag->add_option("--c-grid", c_grid_, "Thresholds in standard errors: 'a,b,c' or 'lo:hi:count'")
            ->capture_default_str();
        exag->add_option("--method", method_, "analytic or monte_carlo")
            ->check(CLI::IsMember({"analytic", "monte_carlo"}))
            ->capture_default_str();
        exag->add_option("--draws", draws_, "Monte Carlo draws per cell")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        exag->add_option("--out", config_.output, "CSV file to write (default: standard output)");
        add_common(exag);

        // diagnose
        auto* diag = app.add_subcommand("diagnose", "Check a corpus for s/z independence and z symmetry");
        diag->add_option("--input", config_.input, "Corpus CSV file")->required();
        diag->add_option("--schema", schema_, "Column layout: p_value, z_value or b_s")
            ->required()
            ->check(CLI::IsMember({"p_value", "z_value", "b_s"}));
        diag->add_option("--out", config_.output, "Machine-readable CSV to write");
        add_common(diag);

        std::vector<std::string> reversed(args_.rbegin(), args_.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out_ << app.help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            out_ << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::CallForVersion&) {
            out_ << kVersion << "\n";
            return 0;
        } catch (const CLI::ParseError& e) {
            err_ << "error: " << e.what() << "\n";
            return 1;
        }

        try {
            if (fit->parsed()) return run_fit();
            if (analyze->parsed()) return run_analyze();
            if (curves->parsed()) return run_curves();
            if (tprior->parsed()) return run_tprior();
            if (exag->parsed()) return run_exaggeration();
            if (diag->parsed()) return run_diagnose();
        } catch (const InputError& e) {
            err_ << "error: " << e.what() << "\n";
            return 1;
        } catch (const NumericalError& e) {
            err_ << "numerical error: " << e.what() << "\n";
            return 2;
        }
        return 1;
    }

    const RunConfig& config() const noexcept { return config_; }

private:
    void add_common(CLI::App* sub) {
        sub->add_option("--seed", config_.seed, "Random seed")->capture_default_str();
        sub->add_flag("--force", config_.force, "Overwrite existing output files");
    }

    void add_format(CLI::App* sub) {
        sub->add_option("--format", config_.format, "csv, svg or both (default both)")
            ->transform(CLI::CheckedTransformer(detail::format_map(), CLI::ignore_case).description(""))
            ->option_text("{csv,svg,both}");
    }

    void write_or_print(const std::string& content) {
        if (config_.output.empty()) {
            out_ << content;
        } else {
            detail::write_file(config_.output, content, config_.force);
        }
    }

    int run_fit() {
        config_.subcommand = Subcommand::fit;
        const auto ingest = parse_corpus(config_.input, parse_schema(schema_));
        for (const auto& issue : ingest.issues) {
            err_ << "warning: line " << issue.line << ": " << issue.message << (issue.excluded ? " (row excluded)" : "")
                 << "\n";
        }
        FitOptions opts;
        opts.seed = config_.seed;
        opts.restarts = restarts_;
        const auto report = k_max_ > 0 ? select_k(ingest.corpus, k_max_, opts) : fit_em(ingest.corpus, k_, opts);
        const std::string label = label_.empty() ? config_.input : label_;

        if (!config_.force && std::filesystem::exists(config_.output)) {
            throw InputError("refusing to overwrite '" + config_.output + "' (pass --force)");
        }
        save_prior(report.prior, config_.output, label, report.n);
        if (!svg_path_.empty()) detail::write_file(svg_path_, prior_density_svg(report.prior, label), config_.force);

        out_ << "fit report\n";
        out_ << "  corpus          " << label << (ingest.corpus.magnitude_only() ? " (|z| only)" : "") << "\n";
        out_ << "  n               " << report.n << "\n";
        out_ << "  k               " << report.prior.k() << "\n";
        for (std::size_t i = 0; i < report.prior.k(); ++i) {
            out_ << "  component " << i + 1 << "     weight " << detail::fmt(report.prior.weights()[i]) << "  scale "
                 << detail::fmt(report.prior.scales()[i]) << "\n";
        }
        out_ << "  log-likelihood  " << detail::fmt(report.log_likelihood) << "\n";
        out_ << "  bic             " << detail::fmt(report.bic) << "\n";
        out_ << "  iterations      " << report.iterations << "\n";
        out_ << "  converged       " << (report.converged ? "yes" : "no") << "\n";
        if (!report.converged) {
            err_ << "numerical error: EM did not converge; best iterate written to " << config_.output << "\n";
            return 2;
        }
        return 0;
    }

    static std::string prior_density_svg(const SnrPrior& prior, const std::string& label) {
        double reach = 3.0;
        for (double t : prior.scales()) reach = std::max(reach, 3.0 * t);
        reach = std::ceil(reach);
        const auto xs = detail::step_grid(-reach, reach, reach / 200.0);
        svg::Line line{xs, {}, detail::kPalette[0], label};
        for (double x : xs) line.y.push_back(prior.snr_density(x));
        svg::Chart chart("Estimated prior for the signal-to-noise ratio", "SNR (beta / s)", "density");
        chart.add(std::move(line));
        return chart.render();
    }

    int run_analyze() {
        config_.subcommand = Subcommand::analyze;
        const auto prior = load_prior(prior_paths_.front());
        double b = b_, s = s_;
        if (!std::isnan(z_)) {
            b = z_;
            s = 1.0;
        } else if (std::isnan(b_) || std::isnan(s_)) {
            throw InputError("analyze needs --b and --s, or --z");
        }
        if (!(s > 0.0) || !std::isfinite(s) || !std::isfinite(b)) throw InputError("need finite b and positive s");
        const auto sum = summarize(prior, b, s);
        std::string csv = detail::provenance(args_);
        csv += "b,s,z,mean,median,ci50_lower,ci50_upper,ci95_lower,ci95_upper,shrinkage_factor,shrinkage_is_limit,"
               "sign_error_prob\n";
        csv += detail::fmt(b) + "," + detail::fmt(s) + "," + detail::fmt(b / s) + "," + detail::fmt(sum.mean) + "," +
               detail::fmt(sum.median) + "," + detail::fmt(sum.ci50.lower) + "," + detail::fmt(sum.ci50.upper) + "," +
               detail::fmt(sum.ci95.lower) + "," + detail::fmt(sum.ci95.upper) + "," +
               detail::fmt(sum.shrinkage_factor) + "," + (sum.shrinkage_is_limit ? "true" : "false") + "," +
               detail::fmt(sum.sign_error_prob) + "\n";
        write_or_print(csv);
        return 0;
    }

    int run_curves() {
        config_.subcommand = Subcommand::curves;
        std::vector<PriorDocument> priors;
        for (const auto& path : prior_paths_) {
            auto doc = load_prior_document(path);
            if (doc.source_label.empty()) doc.source_label = std::filesystem::path(path).stem().string();
            priors.push_back(std::move(doc));
        }
        const auto zs = detail::step_grid(curves_grid_.lo, curves_grid_.hi, curves_grid_.step);

        std::string csv = detail::provenance(args_);
        csv += "prior,z,shrinkage_factor,shrinkage_is_limit,sign_error_prob\n";
        svg::Chart shrink("Shrinkage factor", "z-value", "shrinkage factor");
        svg::Chart sign("Posterior probability of a sign error", "z-value", "probability");
        shrink.horizontal(1.0);
        for (std::size_t p = 0; p < priors.size(); ++p) {
            const auto& prior = priors[p].prior;
            svg::Line sl{zs, {}, detail::kPalette[p % 5], priors[p].source_label};
            svg::Line el{zs, {}, detail::kPalette[p % 5], priors[p].source_label};
            for (double z : zs) {
                const bool at_zero = z == 0.0;
                const auto factor = at_zero ? shrinkage_limit_at_zero(prior) : shrinkage_factor(prior, z);
                const double f = factor ? *factor : std::nan("");
                const double e = sign_error_prob(prior, z);
                csv += svg::escape(priors[p].source_label) + "," + detail::fmt(z) + "," + detail::fmt(f) + "," +
                       (at_zero ? "true" : "false") + "," + detail::fmt(e) + "\n";
                sl.y.push_back(f);
                el.y.push_back(e);
            }
            shrink.add(std::move(sl));
            sign.add(std::move(el));
        }
        sign.y_range(0.0, 0.5);
        write_outputs(csv, svg::stack_vertical({shrink.render(), sign.render()}, 720, 460));
        return 0;
    }

    void write_outputs(const std::string& csv, const std::string& svg_text) {
        if (detail::wants_csv(config_.format)) {
            detail::write_file(detail::with_extension(config_.output, ".csv"), csv, config_.force);
        }
        if (detail::wants_svg(config_.format)) {
            detail::write_file(detail::with_extension(config_.output, ".svg"), svg_text, config_.force);
        }
    }

    int run_tprior() {
        config_.subcommand = Subcommand::tprior;
        TPriorSpec spec;
        spec.nu = nu_;
        spec.scale_multiplier = t_scale_;
        spec.validate();
        const auto zs = detail::step_grid(tprior_grid_.lo, tprior_grid_.hi, tprior_grid_.step);
        const auto rows = consistency_curve(spec, zs);

        std::string csv = detail::provenance(args_);
        csv += "z,median,ci50_lower,ci50_upper,ci95_lower,ci95_upper,mean,shrinkage,shrinkage_is_limit,"
               "classical_lower,classical_upper\n";
        const double half = -normal_quantile(0.025);
        svg::Band b95{zs, {}, {}, "#1f77b4", 0.18, "95% interval"};
        svg::Band b50{zs, {}, {}, "#1f77b4", 0.35, "50% interval"};
        svg::Line med{zs, {}, "#1f77b4", "posterior median"};
        svg::Line classical{zs, zs, "#d62728", "classical estimate"};
        svg::Line c_lo{zs, {}, "#d62728", "", true, 1.0};
        svg::Line c_hi{zs, {}, "#d62728", "classical 95% interval", true, 1.0};
        for (const auto& r : rows) {
            csv += detail::fmt(r.z) + "," + detail::fmt(r.median) + "," + detail::fmt(r.ci50.lower) + "," +
                   detail::fmt(r.ci50.upper) + "," + detail::fmt(r.ci95.lower) + "," + detail::fmt(r.ci95.upper) +
                   "," + detail::fmt(r.mean) + "," + detail::fmt(r.shrinkage) + "," +
                   (r.shrinkage_is_limit ? "true" : "false") + "," + detail::fmt(r.z - half) + "," +
                   detail::fmt(r.z + half) + "\n";
            b95.lower.push_back(r.ci95.lower);
            b95.upper.push_back(r.ci95.upper);
            b50.lower.push_back(r.ci50.lower);
            b50.upper.push_back(r.ci50.upper);
            med.y.push_back(r.median);
            c_lo.y.push_back(r.z - half);
            c_hi.y.push_back(r.z + half);
        }
        std::ostringstream title;
        title << "Inference under a t prior on b/s (nu = " << detail::fmt(nu_) << ", scale = " << detail::fmt(t_scale_)
              << ")";
        svg::Chart chart(title.str(), "z-value (b/s)", "beta/s");
        chart.add(std::move(b95)).add(std::move(b50)).add(std::move(classical)).add(std::move(c_lo));
        chart.add(std::move(c_hi)).add(std::move(med));
        write_outputs(csv, chart.render());
        return 0;
    }

    int run_exaggeration() {
        config_.subcommand = Subcommand::exaggeration;
        const auto snrs = detail::parse_grid(snr_grid_);
        const auto cs = detail::parse_grid(c_grid_);
        MonteCarloOptions mc;
        mc.draws = draws_;
        mc.seed = config_.seed;
        const auto cells = exaggeration_grid(snrs, cs, parse_exaggeration_method(method_), mc);
        std::string csv = detail::provenance(args_);
        csv += "snr,c,ratio,excess,selection_prob,std_error\n";
        for (const auto& cell : cells) {
            csv += detail::fmt(cell.snr) + "," + detail::fmt(cell.c) + "," + detail::fmt(cell.result.ratio) + "," +
                   detail::fmt(cell.result.excess) + "," + detail::fmt(cell.result.selection_prob) + "," +
                   detail::fmt(cell.result.std_error) + "\n";
        }
        write_or_print(csv);
        return 0;
    }

    int run_diagnose() {
        config_.subcommand = Subcommand::diagnose;
        const auto ingest = parse_corpus(config_.input, parse_schema(schema_));
        for (const auto& issue : ingest.issues) {
            err_ << "warning: line " << issue.line << ": " << issue.message << "\n";
        }
        const auto report = diagnose(ingest.corpus);
        struct Row {
            const char* check;
            const std::optional<TestStatistic>& stat;
            Verdict verdict;
        };
        const Row rows[] = {{"independence of s and z (Spearman)", report.spearman_s_vs_z, report.independence},
                            {"symmetry of z (sign test)", report.symmetry, report.symmetric},
                            {"s vs |b| positive (Pearson)", report.pearson_s_vs_abs_b, report.positive_correlation}};

        out_ << "corpus " << ingest.corpus.source_label() << ", n = " << report.n << "\n";
        out_ << std::left << std::setw(38) << "check" << std::setw(14) << "statistic" << std::setw(14) << "p-value"
             << "verdict\n";
        std::string csv = detail::provenance(args_);
        csv += "check,statistic,p_value,verdict\n";
        const char* keys[] = {"spearman_s_vs_z", "symmetry", "pearson_s_vs_abs_b"};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& r = rows[i];
            const std::string stat = r.stat ? detail::fmt(r.stat->statistic) : "NA";
            const std::string p = r.stat ? detail::fmt(r.stat->p_value) : "NA";
            std::ostringstream s_stat, s_p;
            if (r.stat) {
                s_stat << std::fixed << std::setprecision(4) << r.stat->statistic;
                s_p << std::setprecision(4) << r.stat->p_value;
            }
            out_ << std::left << std::setw(38) << r.check << std::setw(14) << (r.stat ? s_stat.str() : "-")
                 << std::setw(14) << (r.stat ? s_p.str() : "-") << verdict_name(r.verdict) << "\n";
            csv += std::string(keys[i]) + "," + stat + "," + p + "," + std::string(verdict_name(r.verdict)) + "\n";
        }
        out_ << "(verdicts are advisory at alpha = 0.05)\n";
        if (!config_.output.empty()) detail::write_file(config_.output, csv, config_.force);
        return 0;
    }

    std::vector<std::string> args_;
    std::ostream& out_;
    std::ostream& err_;
    RunConfig config_;

    std::string schema_;
    std::size_t k_ = 2;
    std::size_t k_max_ = 0;
    std::size_t restarts_ = 20;
    std::string label_;
    std::string svg_path_;
    std::vector<std::string> prior_paths_;
    double b_ = std::nan("");
    double s_ = std::nan("");
    double z_ = std::nan("");
    struct Grid {
        double lo;
        double hi;
        double step;
    };
    Grid curves_grid_{-6.0, 6.0, 0.01};
    Grid tprior_grid_{0.0, 10.0, 0.1};
    double nu_ = 1.0;
    double t_scale_ = 1.0;
    std::string snr_grid_;
    std::string c_grid_ = "1.96";
    std::string method_ = "analytic";
    std::uint64_t draws_ = 1000000;
};

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return Runner(args, out, err).run();
}

}  // namespace snrshrink::cli
