// Copyright 2026 The oqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OQS_HARNESS_HPP
#define OQS_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oqs/mitigation.hpp"
#include "oqs/models.hpp"
#include "oqs/noise.hpp"

namespace oqs {

inline constexpr int kFormatVersion = 1;

enum class ModelType { Pump, Collisional };

struct ModelSpec {
    ModelType type = ModelType::Collisional;
    // pump
    PumpKind pump = PumpKind::ZZXX;
    PumpParams pump_params;
    // collisional
    CollisionParams collision;
};

struct RemSpec {
    /// Synthetic per-qubit flip rates applied to every readout.
    double p01 = 0.0;
    double p10 = 0.0;
    /// Invert the flips before computing the observable.
    bool mitigate = true;
};

struct SweepSpec {
    /// p | rounds (pump), n_collisions | g_tau (collisional).
    std::string parameter;
    std::vector<double> values;
};

struct ExperimentSpec {
    int format_version = kFormatVersion;
    std::string name;
    ModelSpec model;
    NoiseModel noise;
    std::optional<ZneConfig> zne;
    std::optional<RemSpec> rem;
    /// nullopt means exact mode.
    std::optional<std::uint64_t> shots = 1024;
    std::uint64_t seed = 0;
    SweepSpec sweep;
    /// psi_minus, phi_plus, ... for pumps; rho12 for the collision model.
    std::string observable;
    std::string output_stem;

    void validate() const;
    bool exact() const { return !shots.has_value(); }
    /// Model parameters at one sweep value.
    ModelSpec model_at(double sweep_value) const;
};

ExperimentSpec experiment_spec_from_json(const nlohmann::ordered_json &doc);
nlohmann::ordered_json to_json(const ExperimentSpec &spec);
ExperimentSpec load_spec(const std::filesystem::path &path);

struct ScaleCounts {
    double scale = 1.0;
    Counts counts;
};

struct PointResult {
    double sweep_value = 0.0;
    double analytic = 0.0;
    double unmitigated = 0.0;
    double mitigated = 0.0;
    /// Binomial standard error of the unmitigated estimate (0 in exact mode).
    double std_error = 0.0;
    std::vector<ZnePoint> raw_points;
    /// Intercept of every extrapolator on raw_points (ZNE only).
    std::map<std::string, double> extrapolations;
    std::vector<ScaleCounts> counts;
};

struct ExperimentRecord {
    ExperimentSpec spec;
    std::vector<PointResult> points;
    double mae_unmitigated = 0.0;
    double mae_mitigated = 0.0;
    std::string created_at;
    std::string tool_version;
};

struct RunOptions {
    /// Worker threads for the sweep; 0 uses the OpenMP default, 1 runs serially.
    int jobs = 0;
};

/// Outcome distribution over model.measured after running `circuit` (body and
/// readout, possibly folded) from the model's initial state.
std::vector<double> exact_distribution(const ModelCircuit &model, const NoiseModel *noise,
                                       const Circuit &circuit);

ExperimentRecord run_experiment(const ExperimentSpec &spec, const RunOptions &options = {});

double analytic_value(const ExperimentSpec &spec, double sweep_value);

nlohmann::ordered_json to_json(const ExperimentRecord &record);
ExperimentRecord record_from_json(const nlohmann::ordered_json &doc);
/// Record JSON without the created_at field.
std::string record_fingerprint(const ExperimentRecord &record);

std::string render_csv(const ExperimentRecord &record);
void emit_csv(const ExperimentRecord &record, const std::filesystem::path &path);
std::string render_svg_plot(const ExperimentRecord &record);
void emit_svg_plot(const ExperimentRecord &record, const std::filesystem::path &path);

/// Preset file `<dir>/<name>.json`.
std::filesystem::path preset_path(const std::filesystem::path &dir, const std::string &name);
std::vector<std::string> list_presets(const std::filesystem::path &dir);

}  // namespace oqs

#endif
