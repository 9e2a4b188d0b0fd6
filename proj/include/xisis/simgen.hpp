#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xisis/matrix.hpp"
#include "xisis/screening.hpp"

namespace xisis {

/// Simulation models. M1-M3 give a continuous response, M4 a binary one.
/// Null draws y independently of X (every predictor inactive).
enum class ModelId { M1, M2, M3, M4, Null };

std::string_view to_string(ModelId id);
ModelId parse_model(std::string_view name);

struct ModelSpec {
    ModelId id = ModelId::M1;
    /// 0-based indices of the predictors the response depends on.
    std::vector<std::size_t> active_set;
    ResponseKind response = ResponseKind::continuous;

    static ModelSpec make(ModelId id);
    /// Number of leading columns the model reads.
    std::size_t min_columns() const;
};

/// Draws an n x p Gaussian design with N(0,1) marginals and
/// corr(X_i, X_j) = rho^|i-j| through the stationary AR(1) recursion along each
/// row. Row i uses its own stream derived from (seed, i). Requires 0 <= rho < 1.
Matrix gen_ar1_mvn(std::size_t n, std::size_t p, double rho, std::uint64_t seed);

/// Noise-free part of a model evaluated on the leading predictors of one row:
///   M1: 2x1 + x2^3 + 3 sin(8x3) + exp(x4)
///   M2: 2 log|x1| + x2^3 + cos(8 x3^2)
///   M3: bent(x1) + 2x2^3 + 3 cos(8 x3^2) + exp(-x4),
///       bent(x) = |x + 0.5| for x < 0, |x - 0.5| otherwise
///   M4: the logit x1^3 + 3 sin(8x2) + exp(x3)
///   Null: 0
double model_signal(ModelId id, std::span<const double> lead);

/// Noise multiplier: sqrt|x1 + x2| for M2, 1 otherwise.
double model_noise_scale(ModelId id, std::span<const double> lead);

/// Logistic link used by M4.
double logistic(double eta);

/// Generates the response for design X. M3 first overwrites column 0 of X
/// with Uniform(-1, 1) draws. Noise: N(0,1) for M1, M2 and Null; standard
/// Cauchy (ratio of two normals) for M3; M4 returns Bernoulli(logistic(eta))
/// draws in {0,1}.
std::vector<double> apply_model(const ModelSpec& spec, Matrix& x, std::uint64_t seed);

struct SimulationConfig {
    ModelSpec model = ModelSpec::make(ModelId::M1);
    std::size_t n = 400;
    std::size_t p = 200;
    double rho = 0.5;
    std::size_t replications = 100;
    std::size_t d = 0;  ///< 0 means default_d(n)
    std::uint64_t base_seed = 7;
    std::vector<Method> methods{Method::xi, Method::pearson, Method::dcor};
    unsigned threads = 1;

    /// Throws InvalidInput when an invariant is violated.
    void validate() const;
    std::size_t effective_d() const;
};

/// Replication r of a configuration. All methods score this same data.
DataMatrix generate_replication(const SimulationConfig& config, std::size_t replication);

struct MethodOutcome {
    Method method = Method::xi;
    std::vector<std::uint64_t> hits;   ///< per active predictor
    std::vector<double> proportions;   ///< hits / replications
    double seconds = 0.0;              ///< summed scoring + selection time
};

struct SimulationReport {
    SimulationConfig config;
    std::vector<MethodOutcome> outcomes;
    double wall_seconds = 0.0;
};

/// Runs every replication, screens with each method and top_d(d), and
/// reports how often each active predictor was selected. Replications run on
/// config.threads workers; the hit counts do not depend on the worker count.
SimulationReport run_simulation(const SimulationConfig& config);

/// Rows = active predictors, columns = methods; 17 significant digits.
std::string report_to_csv(const SimulationReport& report);
nlohmann::json report_to_json(const SimulationReport& report);

struct ConcentrationConfig {
    ModelSpec model = ModelSpec::make(ModelId::Null);
    std::vector<std::size_t> n_grid{100, 200, 400, 800};
    std::size_t p = 200;
    double rho = 0.5;
    std::size_t replications = 200;
    double delta = 0.15;
    std::uint64_t seed = 7;
    unsigned threads = 1;
    /// Reference sample size multiplier for the population surrogate.
    std::size_t reference_factor = 50;

    void validate() const;
};

struct ConcentrationPoint {
    std::size_t n = 0;
    std::size_t exceed = 0;  ///< replications with max_k |score_k - omega_k| > delta
    double frequency = 0.0;
    double mean_max_deviation = 0.0;
};

struct ConcentrationReport {
    ConcentrationConfig config;
    /// Population omega_k: exactly 0 for the Null model, otherwise xi scores
    /// of one reference draw at n = reference_factor * max(n_grid).
    std::vector<double> population;
    std::size_t reference_n = 0;
    std::vector<ConcentrationPoint> points;
};

/// Estimates pr(max_k |omega_hat_k - omega_k| > delta) for every n in the grid.
ConcentrationReport concentration_experiment(const ConcentrationConfig& config);

std::string concentration_to_csv(const ConcentrationReport& report);
nlohmann::json concentration_to_json(const ConcentrationReport& report);

}  // namespace xisis
