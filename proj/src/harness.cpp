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

#include "oqs/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "oqs/rng.hpp"
#include "oqs/simulator.hpp"

namespace oqs {

namespace {

using json = nlohmann::ordered_json;

bool is_integral(double v) { return std::floor(v) == v; }

std::size_t as_count(double v, const char *what) {
    if (!(v >= 0) || !is_integral(v)) {
        throw std::invalid_argument(std::string(what) + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

ModelCircuit build_model(const ModelSpec &m) {
    if (m.type == ModelType::Pump) {
        return build_pump(m.pump, m.pump_params);
    }
    return build_collisional(m.collision);
}

/// Observable as a linear functional of the outcome distribution.
std::vector<double> observable_weights(const ExperimentSpec &spec) {
    if (spec.model.type == ModelType::Collisional) {
        return {0.5, -0.5};
    }
    std::vector<double> w(4, 0.0);
    for (std::size_t k = 0; k < kBellLabels.size(); k++) {
        if (spec.observable == kBellLabels[k]) {
            w[k] = 1.0;
        }
    }
    return w;
}

double dot(const std::vector<double> &w, const std::vector<double> &p) {
    double acc = 0;
    for (std::size_t k = 0; k < w.size(); k++) {
        acc += w[k] * p[k];
    }
    return acc;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string scale_label(double s) {
    if (is_integral(s)) {
        return std::to_string(static_cast<long long>(s));
    }
    return format_number(s);
}

PointResult compute_point(const ExperimentSpec &spec, std::size_t index) {
    PointResult out;
    out.sweep_value = spec.sweep.values[index];
    out.analytic = analytic_value(spec, out.sweep_value);

    const ModelCircuit mc = build_model(spec.model_at(out.sweep_value));
    const NoiseModel *noise = spec.noise.enabled ? &spec.noise : nullptr;
    const auto weights = observable_weights(spec);
    const std::size_t n_bits = mc.measured.size();

    ZneConfig cfg = spec.zne.value_or(ZneConfig{});
    if (!spec.zne) {
        cfg.scale_factors = {1.0};
    }
    cfg.seed = derive_seed(spec.seed, {index});

    std::optional<ConfusionMatrix> confusion;
    if (spec.rem) {
        confusion = ConfusionMatrix::uniform(n_bits, spec.rem->p01, spec.rem->p10);
    }
    const bool correct = spec.rem && spec.rem->mitigate;

    const Circuit full = mc.full();
    for (std::size_t k = 0; k < cfg.scale_factors.size(); k++) {
        Circuit folded;
        if (cfg.fold_readout) {
            folded = fold_for_scale(full, cfg, k);
        } else {
            folded = fold_for_scale(mc.body, cfg, k);
            folded.extend(mc.readout);
        }
        const auto dist = exact_distribution(mc, noise, folded);
        std::vector<double> observed;
        double corrected = 0.0;
        if (spec.exact()) {
            observed = confusion ? confusion->apply(dist) : dist;
            corrected = correct ? dot(weights, rem_apply(observed, *confusion).projected) : dot(weights, observed);
        } else {
            const std::uint64_t seed = scale_seed(cfg, k);
            Counts counts = confusion ? apply_readout_noise(dist, *spec.shots, *confusion, seed)
                                      : sample_from_probabilities(dist, n_bits, *spec.shots, seed);
            observed = counts_to_distribution(counts, n_bits);
            corrected = correct ? dot(weights, rem_apply(counts, *confusion).projected) : dot(weights, observed);
            out.counts.push_back({cfg.scale_factors[k], std::move(counts)});
        }
        if (k == 0) {
            out.unmitigated = dot(weights, observed);
            if (!spec.exact()) {
                std::vector<double> sq(weights.size());
                std::transform(weights.begin(), weights.end(), sq.begin(), [](double w) { return w * w; });
                const double var = dot(sq, observed) - out.unmitigated * out.unmitigated;
                out.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(*spec.shots));
            }
        }
        out.raw_points.push_back({cfg.scale_factors[k], corrected});
    }

    if (spec.zne) {
        std::vector<std::pair<double, double>> pts;
        for (const auto &p : out.raw_points) {
            pts.emplace_back(p.scale, p.value);
        }
        out.mitigated = extrapolate(pts, spec.zne->extrapolator);
        for (auto e : kAllExtrapolators) {
            if (e != Extrapolator::Quadratic || pts.size() >= 3) {
                out.extrapolations[extrapolator_name(e)] = extrapolate(pts, e);
            }
        }
    } else {
        out.mitigated = out.raw_points.front().value;
    }
    return out;
}

json counts_json(const Counts &c) {
    json h = json::object();
    for (const auto &[bits, n] : c.histogram) {
        h[bits] = n;
    }
    return h;
}

}  // namespace

void ExperimentSpec::validate() const {
    if (format_version != kFormatVersion) {
        throw std::invalid_argument("unsupported format_version " + std::to_string(format_version));
    }
    if (sweep.values.empty()) {
        throw std::invalid_argument("sweep grid must not be empty");
    }
    if (shots && *shots == 0) {
        throw std::invalid_argument("shots must be >= 1 or \"exact\"");
    }
    noise.validate();
    if (zne) {
        zne->validate();
    }
    if (rem) {
        for (double p : {rem->p01, rem->p10}) {
            if (!(p >= 0.0 && p < 0.5)) {
                throw std::invalid_argument("readout flip rates must lie in [0, 0.5)");
            }
        }
    }
    if (model.type == ModelType::Pump) {
        if (std::find(kBellLabels.begin(), kBellLabels.end(), observable) == kBellLabels.end()) {
            throw std::invalid_argument("pump observable must be one of phi_plus, phi_minus, psi_plus, psi_minus");
        }
        if (sweep.parameter != "p" && sweep.parameter != "rounds") {
            throw std::invalid_argument("pump sweeps take parameter p or rounds, got '" + sweep.parameter + "'");
        }
    } else {
        if (observable != "rho12") {
            throw std::invalid_argument("collisional observable must be rho12");
        }
        if (sweep.parameter != "n_collisions" && sweep.parameter != "g_tau") {
            throw std::invalid_argument("collisional sweeps take parameter n_collisions or g_tau, got '" +
                                        sweep.parameter + "'");
        }
    }
    for (double v : sweep.values) {
        const ModelSpec m = model_at(v);
        if (m.type == ModelType::Pump) {
            m.pump_params.validate();
        }
    }
}

ModelSpec ExperimentSpec::model_at(double v) const {
    ModelSpec m = model;
    if (sweep.parameter == "p") {
        m.pump_params.p = v;
    } else if (sweep.parameter == "rounds") {
        m.pump_params.rounds = as_count(v, "rounds");
    } else if (sweep.parameter == "n_collisions") {
        m.collision.n_collisions = as_count(v, "n_collisions");
    } else if (sweep.parameter == "g_tau") {
        m.collision.g_tau = v;
    } else {
        throw std::invalid_argument("unknown sweep parameter '" + sweep.parameter + "'");
    }
    return m;
}

ExperimentSpec experiment_spec_from_json(const json &doc) {
    ExperimentSpec s;
    s.format_version = doc.value("format_version", kFormatVersion);
    s.name = doc.value("name", std::string());

    const json &m = doc.at("model");
    const std::string type = m.at("type").get<std::string>();
    if (type == "pump") {
        s.model.type = ModelType::Pump;
        s.model.pump = parse_pump_kind(m.value("pump", std::string("zzxx")));
        s.model.pump_params.p = m.value("p", 0.0);
        s.model.pump_params.rounds = m.value("rounds", std::size_t{1});
        s.model.pump_params.init = parse_pump_init(m.value("init", std::string("00")));
        s.observable = doc.value("observable", std::string("psi_minus"));
    } else if (type == "collisional") {
        s.model.type = ModelType::Collisional;
        s.model.collision.correlated = m.value("correlated", true);
        s.model.collision.g_tau = m.value("g_tau", 0.15);
        s.model.collision.n_collisions = m.value("n_collisions", std::size_t{0});
        s.observable = doc.value("observable", std::string("rho12"));
    } else {
        throw std::invalid_argument("unknown model type '" + type + "'");
    }

    if (doc.contains("noise") && !doc.at("noise").is_null()) {
        s.noise = noise_model_from_json(doc.at("noise"));
    }
    if (doc.contains("zne") && !doc.at("zne").is_null()) {
        s.zne = zne_config_from_json(doc.at("zne"));
    }
    if (doc.contains("rem") && !doc.at("rem").is_null()) {
        const json &r = doc.at("rem");
        RemSpec rem;
        rem.p01 = r.value("p01", 0.0);
        rem.p10 = r.value("p10", 0.0);
        rem.mitigate = r.value("mitigate", true);
        s.rem = rem;
    }
    if (doc.contains("shots")) {
        const json &shots = doc.at("shots");
        if (shots.is_string()) {
            if (shots.get<std::string>() != "exact") {
                throw std::invalid_argument("shots must be a positive integer or \"exact\"");
            }
            s.shots.reset();
        } else {
            if (!shots.is_number_integer() || shots.get<long long>() < 1) {
                throw std::invalid_argument("shots must be a positive integer or \"exact\"");
            }
            s.shots = shots.get<std::uint64_t>();
        }
    }
    s.seed = doc.value("seed", std::uint64_t{0});
    const json &sweep = doc.at("sweep");
    s.sweep.parameter = sweep.at("parameter").get<std::string>();
    s.sweep.values = sweep.at("values").get<std::vector<double>>();
    if (doc.contains("output")) {
        s.output_stem = doc.at("output").value("stem", std::string());
    }
    if (s.output_stem.empty()) {
        s.output_stem = s.name.empty() ? "experiment" : s.name;
    }
    s.validate();
    return s;
}

json to_json(const ExperimentSpec &s) {
    json doc;
    doc["format_version"] = s.format_version;
    doc["name"] = s.name;
    json m;
    if (s.model.type == ModelType::Pump) {
        m["type"] = "pump";
        m["pump"] = pump_name(s.model.pump);
        m["p"] = s.model.pump_params.p;
        m["rounds"] = s.model.pump_params.rounds;
        m["init"] = pump_init_label(s.model.pump_params.init);
    } else {
        m["type"] = "collisional";
        m["correlated"] = s.model.collision.correlated;
        m["g_tau"] = s.model.collision.g_tau;
        m["n_collisions"] = s.model.collision.n_collisions;
    }
    doc["model"] = m;
    doc["observable"] = s.observable;
    doc["noise"] = to_json(s.noise);
    if (s.zne) {
        json z = to_json(*s.zne);
        z.erase("seed");
        doc["zne"] = z;
    } else {
        doc["zne"] = nullptr;
    }
    if (s.rem) {
        doc["rem"] = {{"p01", s.rem->p01}, {"p10", s.rem->p10}, {"mitigate", s.rem->mitigate}};
    } else {
        doc["rem"] = nullptr;
    }
    if (s.shots) {
        doc["shots"] = *s.shots;
    } else {
        doc["shots"] = "exact";
    }
    doc["seed"] = s.seed;
    doc["sweep"] = {{"parameter", s.sweep.parameter}, {"values", s.sweep.values}};
    doc["output"] = {{"stem", s.output_stem}};
    return doc;
}

ExperimentSpec load_spec(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open spec file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
    return experiment_spec_from_json(doc);
}

std::vector<double> exact_distribution(const ModelCircuit &model, const NoiseModel *noise, const Circuit &circuit) {
    const auto traced = model.traced_qubits();
    const DensityMatrix rho = run_streamed(circuit, model.init, noise, trace_after_last_use(circuit, traced));
    std::vector<std::size_t> positions;
    for (auto q : model.measured) {
        const auto it = std::find(model.system_qubits.begin(), model.system_qubits.end(), q);
        positions.push_back(static_cast<std::size_t>(it - model.system_qubits.begin()));
    }
    return outcome_probabilities(rho, positions);
}

double analytic_value(const ExperimentSpec &spec, double sweep_value) {
    const ModelSpec m = spec.model_at(sweep_value);
    if (m.type == ModelType::Collisional) {
        return m.collision.correlated ? analytic_correlated(m.collision.n_collisions, m.collision.g_tau)
                                      : analytic_uncorrelated(m.collision.n_collisions, m.collision.g_tau);
    }
    const auto overlaps = analytic_pump_overlaps(m.pump, m.pump_params);
    const auto w = observable_weights(spec);
    return dot(w, std::vector<double>(overlaps.values.begin(), overlaps.values.end()));
}

ExperimentRecord run_experiment(const ExperimentSpec &spec, const RunOptions &options) {
    spec.validate();
    ExperimentRecord rec;
    rec.spec = spec;
    rec.tool_version = OQS_VERSION;
    const std::size_t n = spec.sweep.values.size();
    rec.points.resize(n);
    std::vector<std::exception_ptr> errors(n);

    const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads != 1)
    for (long long i = 0; i < static_cast<long long>(n); i++) {
        const auto iu = static_cast<std::size_t>(i);
        try {
            rec.points[iu] = compute_point(spec, iu);
        } catch (const std::exception &e) {
            errors[iu] = std::make_exception_ptr(std::runtime_error(
                "sweep point " + std::to_string(iu) + " (" + spec.sweep.parameter + "=" +
                format_number(spec.sweep.values[iu]) + "): " + e.what()));
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    double un = 0;
    double mi = 0;
    for (const auto &p : rec.points) {
        un += std::abs(p.unmitigated - p.analytic);
        mi += std::abs(p.mitigated - p.analytic);
    }
    rec.mae_unmitigated = un / static_cast<double>(n);
    rec.mae_mitigated = mi / static_cast<double>(n);
    rec.created_at = utc_now();
    return rec;
}

json to_json(const ExperimentRecord &r) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["tool_version"] = r.tool_version;
    doc["created_at"] = r.created_at;
    doc["spec"] = to_json(r.spec);
    json points = json::array();
    for (const auto &p : r.points) {
        json jp;
        jp["sweep_value"] = p.sweep_value;
        jp["analytic"] = p.analytic;
        jp["unmitigated"] = p.unmitigated;
        jp["mitigated"] = p.mitigated;
        jp["std_error"] = p.std_error;
        json raw = json::array();
        for (const auto &z : p.raw_points) {
            raw.push_back({{"scale", z.scale}, {"value", z.value}});
        }
        jp["raw_points"] = raw;
        jp["extrapolations"] = json::object();
        for (auto e : kAllExtrapolators) {
            const auto it = p.extrapolations.find(extrapolator_name(e));
            if (it != p.extrapolations.end()) {
                jp["extrapolations"][it->first] = it->second;
            }
        }
        json counts = json::array();
        for (const auto &c : p.counts) {
            counts.push_back({{"scale", c.scale}, {"shots", c.counts.shots}, {"histogram", counts_json(c.counts)}});
        }
        jp["counts"] = counts;
        points.push_back(jp);
    }
    doc["points"] = points;
    doc["summary"] = {{"mae_unmitigated", r.mae_unmitigated}, {"mae_mitigated", r.mae_mitigated}};
    return doc;
}

ExperimentRecord record_from_json(const json &doc) {
    if (doc.value("format_version", 0) != kFormatVersion) {
        throw std::invalid_argument("unsupported record format_version");
    }
    ExperimentRecord r;
    r.tool_version = doc.value("tool_version", std::string());
    r.created_at = doc.value("created_at", std::string());
    r.spec = experiment_spec_from_json(doc.at("spec"));
    for (const auto &jp : doc.at("points")) {
        PointResult p;
        p.sweep_value = jp.at("sweep_value").get<double>();
        p.analytic = jp.at("analytic").get<double>();
        p.unmitigated = jp.at("unmitigated").get<double>();
        p.mitigated = jp.at("mitigated").get<double>();
        p.std_error = jp.value("std_error", 0.0);
        for (const auto &z : jp.at("raw_points")) {
            p.raw_points.push_back({z.at("scale").get<double>(), z.at("value").get<double>()});
        }
        for (const auto &[k, v] : jp.at("extrapolations").items()) {
            p.extrapolations[k] = v.get<double>();
        }
        for (const auto &jc : jp.value("counts", json::array())) {
            ScaleCounts sc;
            sc.scale = jc.at("scale").get<double>();
            sc.counts.shots = jc.at("shots").get<std::uint64_t>();
            for (const auto &[bits, n] : jc.at("histogram").items()) {
                sc.counts.histogram[bits] = n.get<std::uint64_t>();
            }
            p.counts.push_back(std::move(sc));
        }
        r.points.push_back(std::move(p));
    }
    const json &summary = doc.at("summary");
    r.mae_unmitigated = summary.at("mae_unmitigated").get<double>();
    r.mae_mitigated = summary.at("mae_mitigated").get<double>();
    return r;
}

std::string record_fingerprint(const ExperimentRecord &record) {
    json doc = to_json(record);
    doc.erase("created_at");
    return doc.dump(2);
}

std::string render_csv(const ExperimentRecord &record) {
    if (record.points.empty()) {
        throw std::invalid_argument("cannot write CSV for an empty sweep");
    }
    const auto &first = record.points.front();
    std::ostringstream out;
    out << "sweep_value,analytic,unmitigated,mitigated";
    for (const auto &z : first.raw_points) {
        out << ",scale_" << scale_label(z.scale);
    }
    std::vector<std::string> extra;
    for (auto e : kAllExtrapolators) {
        if (first.extrapolations.count(extrapolator_name(e))) {
            extra.push_back(extrapolator_name(e));
            out << "," << extrapolator_name(e);
        }
    }
    out << "\n";
    for (const auto &p : record.points) {
        out << format_number(p.sweep_value) << "," << format_number(p.analytic) << ","
            << format_number(p.unmitigated) << "," << format_number(p.mitigated);
        for (const auto &z : p.raw_points) {
            out << "," << format_number(z.value);
        }
        for (const auto &name : extra) {
            out << "," << format_number(p.extrapolations.at(name));
        }
        out << "\n";
    }
    return out.str();
}

namespace {

void write_file(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace

void emit_csv(const ExperimentRecord &record, const std::filesystem::path &path) {
    write_file(path, render_csv(record));
}

void emit_svg_plot(const ExperimentRecord &record, const std::filesystem::path &path) {
    write_file(path, render_svg_plot(record));
}

std::filesystem::path preset_path(const std::filesystem::path &dir, const std::string &name) {
    return dir / (name + ".json");
}

std::vector<std::string> list_presets(const std::filesystem::path &dir) {
    std::vector<std::string> names;
    if (!std::filesystem::is_directory(dir)) {
        return names;
    }
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            names.push_back(entry.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace oqs
