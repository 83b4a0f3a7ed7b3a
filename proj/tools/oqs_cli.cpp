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

// oqs: run experiment presets, transpile circuits, render records.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oqs/harness.hpp"
#include "oqs/transpile.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

fs::path preset_dir() {
    if (const char *env = std::getenv("OQS_PRESET_DIR")) {
        return env;
    }
    return OQS_PRESET_DIR;
}

json read_json(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return json::parse(in);
}

oqs::ExperimentSpec resolve_spec(const std::string &arg) {
    if (fs::exists(arg)) {
        return oqs::load_spec(arg);
    }
    const fs::path preset = oqs::preset_path(preset_dir(), arg);
    if (fs::exists(preset)) {
        return oqs::load_spec(preset);
    }
    throw std::runtime_error("no spec file or preset named '" + arg + "'");
}

void write_outputs(const oqs::ExperimentRecord &record, const fs::path &out_dir) {
    fs::create_directories(out_dir);
    const std::string stem = record.spec.output_stem;
    {
        std::ofstream out(out_dir / (stem + ".json"));
        out << oqs::to_json(record).dump(2) << "\n";
        if (!out) {
            throw std::runtime_error("failed writing record to " + out_dir.string());
        }
    }
    oqs::emit_csv(record, out_dir / (stem + ".csv"));
    oqs::emit_svg_plot(record, out_dir / (stem + ".svg"));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Open-system circuit simulator and error-mitigation harness"};
    app.set_version_flag("--version", std::string(OQS_VERSION));
    app.require_subcommand(1);

    std::string spec_arg;
    std::optional<std::uint64_t> seed;
    std::string shots;
    std::string out_dir = ".";
    int jobs = 0;
    auto *run = app.add_subcommand("run", "Run an experiment spec file or named preset");
    run->add_option("spec", spec_arg, "Spec JSON path or preset name")->required();
    run->add_option("--seed", seed, "Override the master seed");
    run->add_option("--shots", shots, "Override shots (integer or \"exact\")");
    run->add_option("--out-dir", out_dir, "Directory for record, CSV and SVG");
    run->add_option("--jobs", jobs, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);

    std::string circuit_path;
    std::string basis = "cx,id,rz,sx";
    std::string transpile_out;
    auto *tp = app.add_subcommand("transpile", "Rewrite a circuit JSON into a gate basis");
    tp->add_option("circuit", circuit_path, "Circuit JSON")->required()->check(CLI::ExistingFile);
    tp->add_option("--basis", basis, "Comma-separated basis gates");
    tp->add_option("--out", transpile_out, "Write the result here instead of stdout");

    auto *lp = app.add_subcommand("list-presets", "List bundled experiment presets");

    std::string record_path;
    std::string plot_dir;
    auto *plot = app.add_subcommand("plot", "Render CSV and SVG from a record");
    plot->add_option("record", record_path, "Record JSON")->required()->check(CLI::ExistingFile);
    plot->add_option("--out-dir", plot_dir, "Output directory (default: next to the record)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
        return 2;
    }

    try {
        if (*run) {
            oqs::ExperimentSpec spec = resolve_spec(spec_arg);
            if (seed) {
                spec.seed = *seed;
            }
            if (!shots.empty()) {
                if (shots == "exact") {
                    spec.shots.reset();
                } else {
                    spec.shots = std::stoull(shots);
                }
            }
            const auto record = oqs::run_experiment(spec, {jobs});
            write_outputs(record, out_dir);
            std::cout << json{{"name", spec.name},
                              {"points", record.points.size()},
                              {"mae_unmitigated", record.mae_unmitigated},
                              {"mae_mitigated", record.mae_mitigated},
                              {"record", (fs::path(out_dir) / (spec.output_stem + ".json")).string()}}
                             .dump(2)
                      << "\n";
        } else if (*tp) {
            const oqs::Circuit before = oqs::circuit_from_json(read_json(circuit_path));
            const oqs::Circuit after = oqs::transpile(before, oqs::BasisSet::parse(basis));
            json doc;
            doc["circuit"] = oqs::to_json(after);
            doc["metrics"] = oqs::to_json(oqs::transpile_metrics(before, after));
            if (transpile_out.empty()) {
                std::cout << doc.dump(2) << "\n";
            } else {
                std::ofstream out(transpile_out);
                out << doc.dump(2) << "\n";
                if (!out) {
                    throw std::runtime_error("failed writing " + transpile_out);
                }
            }
        } else if (*lp) {
            for (const auto &name : oqs::list_presets(preset_dir())) {
                std::cout << name << "\n";
            }
        } else if (*plot) {
            const auto record = oqs::record_from_json(read_json(record_path));
            const fs::path dir = plot_dir.empty() ? fs::path(record_path).parent_path() : fs::path(plot_dir);
            const std::string stem = fs::path(record_path).stem().string();
            oqs::emit_csv(record, dir / (stem + ".csv"));
            oqs::emit_svg_plot(record, dir / (stem + ".svg"));
        }
    } catch (const std::exception &e) {
        std::cerr << json{{"error", e.what()}, {"kind", "runtime"}}.dump() << "\n";
        return 1;
    }
    return 0;
}
