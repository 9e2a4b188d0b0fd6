#include "xisis/simgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "xisis/errors.hpp"
#include "xisis/format.hpp"
#include "xisis/parallel.hpp"
#include "xisis/rankcorr.hpp"
#include "xisis/seeding.hpp"

namespace xisis {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Counters for the sub-streams that apply_model derives from its seed.
constexpr std::uint64_t uniform_column_counter = 1;
constexpr std::uint64_t noise_counter = 2;

}  // namespace

std::string_view to_string(ModelId id) {
    switch (id) {
        case ModelId::M1: return "M1";
        case ModelId::M2: return "M2";
        case ModelId::M3: return "M3";
        case ModelId::M4: return "M4";
        case ModelId::Null: return "null";
    }
    return "?";
}

ModelId parse_model(std::string_view name) {
    if (name == "M1" || name == "m1") return ModelId::M1;
    if (name == "M2" || name == "m2") return ModelId::M2;
    if (name == "M3" || name == "m3") return ModelId::M3;
    if (name == "M4" || name == "m4") return ModelId::M4;
    if (name == "null" || name == "Null") return ModelId::Null;
    throw InvalidInput("unknown model '" + std::string(name) + "'");
}

ModelSpec ModelSpec::make(ModelId id) {
    ModelSpec spec;
    spec.id = id;
    switch (id) {
        case ModelId::M1:
        case ModelId::M3: spec.active_set = {0, 1, 2, 3}; break;
        case ModelId::M2: spec.active_set = {0, 1, 2}; break;
        case ModelId::M4:
            spec.active_set = {0, 1, 2};
            spec.response = ResponseKind::binary;
            break;
        case ModelId::Null: break;
    }
    return spec;
}

std::size_t ModelSpec::min_columns() const {
    return active_set.empty() ? 1 : active_set.back() + 1;
}

Matrix gen_ar1_mvn(std::size_t n, std::size_t p, double rho, std::uint64_t seed) {
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidInput("rho must lie in [0, 1)");
    Matrix x(n, p);
    const double innovation = std::sqrt(1.0 - rho * rho);
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = make_engine(derive_seed(seed, i, Stream::design));
        std::normal_distribution<double> z;
        double prev = z(rng);
        if (p > 0) x(i, 0) = prev;
        for (std::size_t k = 1; k < p; ++k) {
            prev = rho * prev + innovation * z(rng);
            x(i, k) = prev;
        }
    }
    return x;
}

double model_signal(ModelId id, std::span<const double> lead) {
    auto at = [&](std::size_t k) { return lead[k]; };
    switch (id) {
        case ModelId::M1:
            return 2.0 * at(0) + std::pow(at(1), 3) + 3.0 * std::sin(8.0 * at(2)) + std::exp(at(3));
        case ModelId::M2:
            return 2.0 * std::log(std::abs(at(0))) + std::pow(at(1), 3) +
                   std::cos(8.0 * at(2) * at(2));
        case ModelId::M3: {
            const double x1 = at(0);
            const double bent = x1 < 0.0 ? std::abs(x1 + 0.5) : std::abs(x1 - 0.5);
            return bent + 2.0 * std::pow(at(1), 3) + 3.0 * std::cos(8.0 * at(2) * at(2)) +
                   std::exp(-at(3));
        }
        case ModelId::M4:
            return std::pow(at(0), 3) + 3.0 * std::sin(8.0 * at(1)) + std::exp(at(2));
        case ModelId::Null: return 0.0;
    }
    return 0.0;
}

double model_noise_scale(ModelId id, std::span<const double> lead) {
    if (id == ModelId::M2) return std::sqrt(std::abs(lead[0] + lead[1]));
    return 1.0;
}

double logistic(double eta) {
    if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

std::vector<double> apply_model(const ModelSpec& spec, Matrix& x, std::uint64_t seed) {
    const std::size_t width = spec.min_columns();
    if (x.cols() < width)
        throw InvalidInput("model " + std::string(to_string(spec.id)) + " needs at least " +
                           std::to_string(width) + " columns");
    const std::size_t n = x.rows();

    if (spec.id == ModelId::M3) {
        auto rng = make_engine(derive_seed(seed, uniform_column_counter));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) x(i, 0) = u(rng);
    }

    auto rng = make_engine(derive_seed(seed, noise_counter));
    std::normal_distribution<double> z;
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    std::vector<double> y(n);
    std::vector<double> lead(std::max<std::size_t>(width, 4), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < width; ++k) lead[k] = x(i, k);
        const double signal = model_signal(spec.id, lead);
        switch (spec.id) {
            case ModelId::M1:
            case ModelId::Null: y[i] = signal + z(rng); break;
            case ModelId::M2: y[i] = signal + model_noise_scale(spec.id, lead) * z(rng); break;
            case ModelId::M3: {
                const double num = z(rng);
                const double den = z(rng);
                y[i] = signal + num / den;
                break;
            }
            case ModelId::M4: y[i] = u01(rng) < logistic(signal) ? 1.0 : 0.0; break;
        }
    }
    return y;
}

void SimulationConfig::validate() const {
    if (n < 2) throw InvalidInput("n must be at least 2");
    if (p < model.min_columns())
        throw InvalidInput("p must cover the active set of " + std::string(to_string(model.id)));
    if (replications < 1) throw InvalidInput("replications must be at least 1");
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidInput("rho must lie in [0, 1)");
    if (methods.empty()) throw InvalidInput("at least one screening method is required");
    for (Method m : methods)
        if (m == Method::xi_binary && model.response != ResponseKind::binary)
            throw InvalidInput("xi-binary requires a binary-response model");
}

std::size_t SimulationConfig::effective_d() const { return d == 0 ? default_d(n) : d; }

DataMatrix generate_replication(const SimulationConfig& config, std::size_t replication) {
    Matrix x = gen_ar1_mvn(config.n, config.p, config.rho,
                           derive_seed(config.base_seed, replication, Stream::design));
    auto y = apply_model(config.model, x, derive_seed(config.base_seed, replication, Stream::noise));
    ResponseKind kind = config.model.response;
    // A binary draw can come out single-class at tiny n; treat it as continuous
    // so the constant-response check reports it.
    if (kind == ResponseKind::binary && !is_binary_response(y)) kind = ResponseKind::continuous;
    return DataMatrix(std::move(x), std::move(y), kind);
}

SimulationReport run_simulation(const SimulationConfig& config) {
    config.validate();
    const auto t0 = Clock::now();
    const std::size_t reps = config.replications;
    const std::size_t methods = config.methods.size();
    const std::size_t active = config.model.active_set.size();
    const std::size_t d = config.effective_d();

    // hit[r][m][a] and time[r][m], reduced in replication order afterwards.
    std::vector<std::uint8_t> hit(reps * methods * active, 0);
    std::vector<double> timing(reps * methods, 0.0);

    parallel_for(reps, config.threads, [&](std::size_t r) {
        const DataMatrix data = generate_replication(config, r);
        const std::uint64_t tie_seed = derive_seed(config.base_seed, r, Stream::ties);
        for (std::size_t m = 0; m < methods; ++m) {
            const auto t = Clock::now();
            ScreeningResult res;
            try {
                res = top_d(score_all(data, config.methods[m], tie_seed), d);
            } catch (const Error& e) {
                throw Error("replication " + std::to_string(r) + ": " + e.what());
            }
            timing[r * methods + m] = seconds_since(t);
            for (std::size_t a = 0; a < active; ++a)
                hit[(r * methods + m) * active + a] =
                    std::binary_search(res.selected.begin(), res.selected.end(),
                                       config.model.active_set[a]);
        }
    });

    SimulationReport report;
    report.config = config;
    report.config.d = d;
    for (std::size_t m = 0; m < methods; ++m) {
        MethodOutcome out;
        out.method = config.methods[m];
        out.hits.assign(active, 0);
        for (std::size_t r = 0; r < reps; ++r) {
            out.seconds += timing[r * methods + m];
            for (std::size_t a = 0; a < active; ++a) out.hits[a] += hit[(r * methods + m) * active + a];
        }
        for (auto h : out.hits) out.proportions.push_back(static_cast<double>(h) / static_cast<double>(reps));
        report.outcomes.push_back(std::move(out));
    }
    report.wall_seconds = seconds_since(t0);
    return report;
}

std::string report_to_csv(const SimulationReport& report) {
    std::ostringstream os;
    os << "predictor";
    for (const auto& o : report.outcomes) os << ',' << to_string(o.method);
    os << '\n';
    const auto& active = report.config.model.active_set;
    for (std::size_t a = 0; a < active.size(); ++a) {
        os << 'X' << active[a] + 1;
        for (const auto& o : report.outcomes) os << ',' << format_double(o.proportions[a]);
        os << '\n';
    }
    return os.str();
}

namespace {

nlohmann::json methods_json(const std::vector<Method>& methods) {
    auto arr = nlohmann::json::array();
    for (Method m : methods) arr.push_back(std::string(to_string(m)));
    return arr;
}

}  // namespace

nlohmann::json report_to_json(const SimulationReport& report) {
    const auto& c = report.config;
    nlohmann::json j;
    j["config"] = {
        {"model", std::string(to_string(c.model.id))},
        {"active_set", c.model.active_set},
        {"n", c.n},
        {"p", c.p},
        {"rho", c.rho},
        {"replications", c.replications},
        {"d", c.effective_d()},
        {"seed", c.base_seed},
        {"methods", methods_json(c.methods)},
        {"threads", c.threads},
    };
    auto results = nlohmann::json::array();
    for (const auto& o : report.outcomes) {
        results.push_back({
            {"method", std::string(to_string(o.method))},
            {"hits", o.hits},
            {"proportions", o.proportions},
            {"seconds", o.seconds},
        });
    }
    j["results"] = std::move(results);
    j["wall_seconds"] = report.wall_seconds;
    return j;
}

void ConcentrationConfig::validate() const {
    if (n_grid.empty()) throw InvalidInput("n grid is empty");
    for (auto n : n_grid)
        if (n < 2) throw InvalidInput("every n in the grid must be at least 2");
    if (p < model.min_columns()) throw InvalidInput("p must cover the active set");
    if (replications < 1) throw InvalidInput("replications must be at least 1");
    if (!(delta >= 0.0)) throw InvalidInput("delta must be non-negative");
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidInput("rho must lie in [0, 1)");
    if (model.id != ModelId::Null && reference_factor < 1)
        throw InvalidInput("reference factor must be at least 1");
}

ConcentrationReport concentration_experiment(const ConcentrationConfig& config) {
    config.validate();
    ConcentrationReport report;
    report.config = config;

    // Grid sizes and the reference draw share the design/noise streams through
    // distinct counters: reference uses counter 0, replication r of grid entry g
    // uses 1 + g * R + r.
    const std::size_t reps = config.replications;
    SimulationConfig base;
    base.model = config.model;
    base.p = config.p;
    base.rho = config.rho;
    base.base_seed = config.seed;

    if (config.model.id == ModelId::Null) {
        report.population.assign(config.p, 0.0);
    } else {
        base.n = config.reference_factor * *std::max_element(config.n_grid.begin(), config.n_grid.end());
        report.reference_n = base.n;
        const auto ref = generate_replication(base, 0);
        report.population =
            score_all(ref, Method::xi, derive_seed(config.seed, 0, Stream::ties), config.threads).scores;
    }

    for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
        SimulationConfig cfg = base;
        cfg.n = config.n_grid[g];
        std::vector<double> max_dev(reps, 0.0);
        parallel_for(reps, config.threads, [&](std::size_t r) {
            const std::size_t counter = 1 + g * reps + r;
            const auto data = generate_replication(cfg, counter);
            const auto scores = score_all(data, Method::xi, derive_seed(config.seed, counter, Stream::ties));
            double worst = 0.0;
            for (std::size_t k = 0; k < scores.scores.size(); ++k)
                worst = std::max(worst, std::abs(scores.scores[k] - report.population[k]));
            max_dev[r] = worst;
        });
        ConcentrationPoint pt;
        pt.n = cfg.n;
        double total = 0.0;
        for (double v : max_dev) {
            pt.exceed += v > config.delta ? 1 : 0;
            total += v;
        }
        pt.frequency = static_cast<double>(pt.exceed) / static_cast<double>(reps);
        pt.mean_max_deviation = total / static_cast<double>(reps);
        report.points.push_back(pt);
    }
    return report;
}

std::string concentration_to_csv(const ConcentrationReport& report) {
    std::ostringstream os;
    os << "n,exceed,replications,frequency,mean_max_deviation\n";
    for (const auto& pt : report.points)
        os << pt.n << ',' << pt.exceed << ',' << report.config.replications << ','
           << format_double(pt.frequency) << ',' << format_double(pt.mean_max_deviation) << '\n';
    return os.str();
}

nlohmann::json concentration_to_json(const ConcentrationReport& report) {
    const auto& c = report.config;
    nlohmann::json j;
    j["config"] = {
        {"model", std::string(to_string(c.model.id))},
        {"n_grid", c.n_grid},
        {"p", c.p},
        {"rho", c.rho},
        {"replications", c.replications},
        {"delta", c.delta},
        {"seed", c.seed},
        {"reference_factor", c.reference_factor},
        {"threads", c.threads},
    };
    j["reference_n"] = report.reference_n;
    auto pts = nlohmann::json::array();
    for (const auto& pt : report.points)
        pts.push_back({{"n", pt.n},
                       {"exceed", pt.exceed},
                       {"frequency", pt.frequency},
                       {"mean_max_deviation", pt.mean_max_deviation}});
    j["points"] = std::move(pts);
    return j;
}

}  // namespace xisis
