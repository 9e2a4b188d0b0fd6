// xisis: command-line front end for xi-based feature screening.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "xisis/baselines.hpp"
#include "xisis/errors.hpp"
#include "xisis/evalkit.hpp"
#include "xisis/format.hpp"
#include "xisis/parallel.hpp"
#include "xisis/rankcorr.hpp"
#include "xisis/screening.hpp"
#include "xisis/seeding.hpp"
#include "xisis/simgen.hpp"
#include "xisis/table.hpp"

namespace fs = std::filesystem;
using namespace xisis;

namespace {

constexpr std::uint64_t kDefaultSeed = 7;

struct Common {
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    std::string out;
    std::string format = "csv";
};

struct InputFlags {
    std::string input;
    std::string response;
    std::string labels;
    std::string delimiter = ",";
    bool no_header = false;
    std::vector<std::string> ignore;
    bool standardize = false;
};

unsigned thread_count(int flag) {
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("XISIS_THREADS")) {
        int v = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return static_cast<unsigned>(v);
        throw InvalidInput("XISIS_THREADS must be a positive integer");
    }
    return resolve_threads(0);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    return parts;
}

double to_double(const std::string& s, const std::string& what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidInput("bad " + what + " '" + s + "'");
    return v;
}

std::map<std::string, double> parse_labels(const std::string& spec) {
    std::map<std::string, double> labels;
    if (spec.empty()) return labels;
    for (const auto& item : split(spec, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidInput("label mapping must look like a=0,b=1");
        labels[item.substr(0, eq)] = to_double(item.substr(eq + 1), "label value");
    }
    for (const auto& [label, value] : labels)
        if (value != 0.0 && value != 1.0) throw InvalidInput("label '" + label + "' must map to 0 or 1");
    return labels;
}

void add_input_flags(CLI::App* cmd, InputFlags& f) {
    cmd->add_option("--input", f.input, "Delimited text file")->required();
    cmd->add_option("--response", f.response, "Response column: name or #index (0-based)")->required();
    cmd->add_option("--labels", f.labels, "Map response labels to classes, e.g. ALL=0,AML=1");
    cmd->add_option("--delimiter", f.delimiter, "Field delimiter (default ,)");
    cmd->add_flag("--no-header", f.no_header, "First line is data, not column names");
    cmd->add_option("--ignore", f.ignore, "Columns to drop (name or #index)")->delimiter(',');
    cmd->add_flag("--standardize", f.standardize, "Centre and scale every predictor column");
}

void add_common_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Root seed for all randomness (default 7)");
    cmd->add_option("--threads", c.threads, "Worker threads (default $XISIS_THREADS or all cores)");
    cmd->add_option("--out", c.out, "Directory for output files (default: stdout)");
    cmd->add_option("--format", c.format, "Stdout format")->check(CLI::IsMember({"csv", "json"}));
}

DataMatrix load(const InputFlags& f, std::vector<std::string>& warnings) {
    if (f.delimiter.size() != 1) throw InvalidInput("delimiter must be a single character");
    TableOptions opts;
    opts.path = f.input;
    opts.delimiter = f.delimiter[0];
    opts.header = !f.no_header;
    opts.response = f.response;
    opts.labels = parse_labels(f.labels);
    opts.ignore = f.ignore;
    auto data = ingest_csv(opts);
    if (!opts.labels.empty() && data.kind() != ResponseKind::binary)
        throw InvalidInput("label mapping did not produce both classes 0 and 1");
    if (!f.standardize) return data;
    auto st = standardize(data);
    warnings.insert(warnings.end(), st.warnings.begin(), st.warnings.end());
    return std::move(st.data);
}

/// Writes every file or none: contents go to temporaries first, then are
/// renamed into place.
void write_outputs(const std::string& dir, const std::vector<std::pair<std::string, std::string>>& files) {
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
        for (const auto& [name, content] : files) {
            fs::path final_path = fs::path(dir) / name;
            fs::path tmp = final_path;
            tmp += ".partial";
            std::ofstream os(tmp, std::ios::binary);
            os << content;
            os.close();
            if (!os) throw Error("cannot write " + tmp.string());
            staged.emplace_back(tmp, final_path);
        }
    } catch (...) {
        for (const auto& [tmp, _] : staged) fs::remove(tmp);
        throw;
    }
    for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

void emit(const Common& c, const std::string& csv_name, const std::string& csv,
          const std::string& json_name, const nlohmann::json& json) {
    if (!c.out.empty()) {
        write_outputs(c.out, {{csv_name, csv}, {json_name, json.dump(2) + "\n"}});
        std::cerr << "wrote " << (fs::path(c.out) / csv_name).string() << " and "
                  << (fs::path(c.out) / json_name).string() << "\n";
    } else if (c.format == "json") {
        std::cout << json.dump(2) << "\n";
    } else {
        std::cout << csv;
    }
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& part : split(s, ',')) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size()) throw InvalidInput("bad integer '" + part + "'");
        out.push_back(v);
    }
    return out;
}

std::size_t parse_d(const std::string& s, std::size_t n) {
    if (s == "auto") return default_d(n);
    const auto v = parse_size_list(s);
    if (v.size() != 1 || v[0] < 1) throw InvalidInput("--top-d must be a positive integer or 'auto'");
    return v[0];
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-based (xi) feature screening for high-dimensional data"};
    app.require_subcommand(1);

    // screen
    InputFlags screen_in;
    Common screen_common;
    std::string screen_method = "xi";
    std::string screen_top_d = "auto";
    std::string screen_threshold;
    auto* screen = app.add_subcommand("screen", "Score every predictor and select a subset");
    add_input_flags(screen, screen_in);
    add_common_flags(screen, screen_common);
    screen->add_option("--method", screen_method, "xi | pearson | dcor | xi-binary");
    screen->add_option("--top-d", screen_top_d, "Keep the d best predictors; 'auto' = floor(n / ln n)");
    screen->add_option("--threshold", screen_threshold, "c,kappa: keep scores >= c * n^-kappa");

    // xi
    InputFlags xi_in;
    std::string xi_column;
    std::string xi_method = "xi";
    std::uint64_t xi_seed = kDefaultSeed;
    auto* xi = app.add_subcommand("xi", "Score a single predictor against the response");
    add_input_flags(xi, xi_in);
    xi->add_option("--column", xi_column, "Predictor name, or 0-based predictor index")->required();
    xi->add_option("--method", xi_method, "xi | pearson | dcor | xi-binary");
    xi->add_option("--seed", xi_seed, "Root seed for tie-breaking (default 7)");

    // simulate
    Common sim_common;
    std::string sim_model = "M1";
    std::size_t sim_n = 400, sim_p = 200, sim_reps = 100;
    double sim_rho = 0.5;
    std::string sim_d = "auto";
    std::string sim_methods = "xi,pearson,dcor";
    auto* simulate = app.add_subcommand("simulate", "Replicated screening on simulated models");
    add_common_flags(simulate, sim_common);
    simulate->add_option("--model", sim_model, "M1 | M2 | M3 | M4 | null");
    simulate->add_option("--n", sim_n, "Sample size");
    simulate->add_option("--p", sim_p, "Number of predictors");
    simulate->add_option("--rho", sim_rho, "AR(1) correlation of the design");
    simulate->add_option("--reps", sim_reps, "Replications");
    simulate->add_option("--d", sim_d, "Selection size or 'auto'");
    simulate->add_option("--methods", sim_methods, "Comma-separated methods");

    // concentration
    Common conc_common;
    std::string conc_model = "null";
    std::string conc_grid = "100,200,400,800";
    std::size_t conc_p = 200, conc_reps = 200, conc_ref = 50;
    double conc_delta = 0.15, conc_rho = 0.5;
    auto* conc = app.add_subcommand("concentration", "Tail frequency of max_k |xi_hat_k - xi_k| > delta");
    add_common_flags(conc, conc_common);
    conc->add_option("--model", conc_model, "M1 | M2 | M3 | M4 | null");
    conc->add_option("--n-grid", conc_grid, "Comma-separated sample sizes");
    conc->add_option("--p", conc_p, "Number of predictors");
    conc->add_option("--rho", conc_rho, "AR(1) correlation of the design");
    conc->add_option("--reps", conc_reps, "Replications per sample size");
    conc->add_option("--delta", conc_delta, "Deviation threshold");
    conc->add_option("--reference-factor", conc_ref, "Reference n = factor * max(n-grid)");

    // metrics
    std::string met_input, met_truth, met_pred, met_kind = "auto", met_delim = ",";
    std::string met_format = "csv";
    auto* metrics = app.add_subcommand("metrics", "Prediction metrics from truth/prediction columns");
    metrics->add_option("--input", met_input, "Delimited text file with a header")->required();
    metrics->add_option("--truth", met_truth, "Truth column name")->required();
    metrics->add_option("--pred", met_pred, "Held-out prediction column name")->required();
    metrics->add_option("--kind", met_kind, "binary | continuous | auto")
        ->check(CLI::IsMember({"binary", "continuous", "auto"}));
    metrics->add_option("--delimiter", met_delim, "Field delimiter");
    metrics->add_option("--format", met_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    // folds
    std::size_t folds_n = 0, folds_k = 5;
    std::uint64_t folds_seed = kDefaultSeed;
    auto* folds = app.add_subcommand("folds", "Balanced random K-fold assignment");
    folds->add_option("--n", folds_n, "Number of observations")->required();
    folds->add_option("--k", folds_k, "Number of folds (default 5)");
    folds->add_option("--seed", folds_seed, "Seed (default 7)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*screen) {
            std::vector<std::string> warnings;
            const auto data = load(screen_in, warnings);
            const Method method = parse_method(screen_method);
            const auto scores = score_all(data, method, screen_common.seed, thread_count(screen_common.threads));
            warnings.insert(warnings.end(), scores.warnings.begin(), scores.warnings.end());
            ScreeningResult result;
            if (!screen_threshold.empty()) {
                const auto parts = split(screen_threshold, ',');
                if (parts.size() != 2) throw InvalidInput("--threshold expects c,kappa");
                result = threshold_select(scores, to_double(parts[0], "c"), to_double(parts[1], "kappa"), data.n());
            } else {
                result = top_d(scores, parse_d(screen_top_d, data.n()));
            }
            auto json = selection_to_json(data, scores, result);
            json["seed"] = screen_common.seed;
            json["input"] = screen_in.input;
            json["standardized"] = screen_in.standardize;
            print_warnings(warnings);
            emit(screen_common, "scores.csv", scores_to_csv(data, scores, result), "selection.json", json);
        } else if (*xi) {
            std::vector<std::string> warnings;
            const auto data = load(xi_in, warnings);
            print_warnings(warnings);
            const auto& names = data.names();
            std::size_t k = 0;
            if (auto it = std::find(names.begin(), names.end(), xi_column); it != names.end()) {
                k = static_cast<std::size_t>(it - names.begin());
            } else {
                const auto v = parse_size_list(xi_column);
                if (v.size() != 1 || v[0] >= data.p()) throw InvalidInput("no predictor '" + xi_column + "'");
                k = v[0];
            }
            const auto x = data.column(k);
            const auto y = data.response();
            double score = 0;
            switch (parse_method(xi_method)) {
                case Method::xi: score = xi_score(x, y, derive_seed(xi_seed, k)); break;
                case Method::pearson: score = pearson_score(x, y); break;
                case Method::dcor: score = dcor_score(x, y); break;
                case Method::xi_binary: score = xi_binary_score(x, y); break;
            }
            std::cout << format_double(score) << "\n";
        } else if (*simulate) {
            SimulationConfig cfg;
            cfg.model = ModelSpec::make(parse_model(sim_model));
            cfg.n = sim_n;
            cfg.p = sim_p;
            cfg.rho = sim_rho;
            cfg.replications = sim_reps;
            cfg.d = sim_d == "auto" ? 0 : parse_d(sim_d, sim_n);
            cfg.base_seed = sim_common.seed;
            cfg.methods.clear();
            for (const auto& m : split(sim_methods, ',')) cfg.methods.push_back(parse_method(m));
            cfg.threads = thread_count(sim_common.threads);
            const auto report = run_simulation(cfg);
            emit(sim_common, "report.csv", report_to_csv(report), "report.json", report_to_json(report));
        } else if (*conc) {
            ConcentrationConfig cfg;
            cfg.model = ModelSpec::make(parse_model(conc_model));
            cfg.n_grid = parse_size_list(conc_grid);
            cfg.p = conc_p;
            cfg.rho = conc_rho;
            cfg.replications = conc_reps;
            cfg.delta = conc_delta;
            cfg.seed = conc_common.seed;
            cfg.reference_factor = conc_ref;
            cfg.threads = thread_count(conc_common.threads);
            const auto report = concentration_experiment(cfg);
            emit(conc_common, "concentration.csv", concentration_to_csv(report), "concentration.json",
                 concentration_to_json(report));
        } else if (*metrics) {
            if (met_delim.size() != 1) throw InvalidInput("delimiter must be a single character");
            TableOptions opts;
            opts.path = met_input;
            opts.delimiter = met_delim[0];
            opts.response = met_truth;
            const auto table = ingest_csv(opts);
            const auto& names = table.names();
            auto it = std::find(names.begin(), names.end(), met_pred);
            if (it == names.end()) throw InvalidInput("no column named '" + met_pred + "'");
            const auto pred = table.column(static_cast<std::size_t>(it - names.begin()));
            const auto truth = table.response();
            const bool binary = met_kind == "binary" || (met_kind == "auto" && table.kind() == ResponseKind::binary);
            nlohmann::json j;
            std::ostringstream csv;
            if (binary) {
                const auto counts = confusion_counts(truth, pred);
                j = {{"tp", counts.tp}, {"fp", counts.fp}, {"fn", counts.fn}, {"tn", counts.tn}};
                csv << "metric,value\ntp," << counts.tp << "\nfp," << counts.fp << "\nfn," << counts.fn
                    << "\ntn," << counts.tn << "\n";
                const auto prf = precision_recall_f(counts);
                j["precision"] = prf.precision;
                j["recall"] = prf.recall;
                j["f_measure"] = prf.f_measure;
                csv << "precision," << format_double(prf.precision) << "\nrecall," << format_double(prf.recall)
                    << "\nf_measure," << format_double(prf.f_measure) << "\n";
            } else {
                const double cv = cv_rmse(truth, pred);
                j = {{"cv_rmse", cv}, {"n", truth.size()}};
                csv << "metric,value\ncv_rmse," << format_double(cv) << "\n";
            }
            std::cout << (met_format == "json" ? j.dump(2) + "\n" : csv.str());
        } else if (*folds) {
            const auto plan = cv_folds(folds_n, folds_k, folds_seed);
            std::cout << "index,fold\n";
            for (std::size_t i = 0; i < plan.assignments.size(); ++i)
                std::cout << i << ',' << plan.assignments[i] << "\n";
        }
    } catch (const UndefinedMetric& e) {
        std::cerr << "error: " << e.what() << " [" << e.which() << "]\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
