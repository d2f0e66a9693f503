#pragma once

#include <string>

#include <json.hpp>

#include "uproc/asymptotics.hpp"
#include "uproc/distribution.hpp"
#include "uproc/estimator.hpp"
#include "uproc/kernel.hpp"
#include "uproc/limit_law.hpp"
#include "uproc/loss.hpp"
#include "uproc/montecarlo.hpp"

namespace uproc {

using json = nlohmann::json;

// {"family": "...", "params": [...]} | {"family": "smirnov", "params": [eps]}
// | {"family": "piecewise", "knots": [[x, F], ...], "interp": ...}
Distribution distribution_from_json(const json& j);
json distribution_to_json(const Distribution& d);

ConvexLoss loss_from_json(const json& j);          // {"id": "...", "params": [...]}
Kernel kernel_from_json(const json& j);            // {"id": "...", "params": [...], "degree": l}
MultivariateModel model_from_json(const json& j);  // {"dim": d, "components": [dist, ...]}

// {"schema":1, "loss":..., "kernel":..., "R":..., "raw":...(optional for l = 1)}
struct ProblemSpec {
    ConvexLoss loss;
    Kernel kernel;
    PopulationProblem population;
};
ProblemSpec problem_from_json(const json& j);

LimitLaw limit_law_from_json(const json& j);
json limit_law_to_json(const LimitLaw& law);

json minimizer_to_json(const MinimizerInterval& mi);
json report_to_json(const AsymptoticReport& rep, const PopulationProblem& prob,
                    const ConvexLoss& loss);
json sim_result_to_json(const SimResult& res);
json defaults_to_json();

// Simulation config; see README for the schema.
struct SimSpec {
    SimConfig config;
    std::string a_n_source;  // "explicit" | "rsqrt" | "rsqrt_log2" | "report"
    std::optional<ProblemSpec> problem;  // present when a_n/m/law come from a report
};
SimSpec sim_from_json(const json& j);

Dataset dataset_from_csv(const std::string& path);
void residuals_to_csv(const std::string& path, const SimResult& res);
void v_curve_to_csv(const std::string& path, const PopulationProblem& prob,
                    const ConvexLoss& loss, double m);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace uproc
