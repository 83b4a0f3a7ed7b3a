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

#include "oqs/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oqs/kernels.hpp"

namespace oqs {

std::string pump_name(PumpKind kind) {
    switch (kind) {
        case PumpKind::ZZ:
            return "zz";
        case PumpKind::XX:
            return "xx";
        case PumpKind::ZZXX:
            return "zzxx";
    }
    return "?";
}

PumpKind parse_pump_kind(const std::string &name) {
    if (name == "zz") {
        return PumpKind::ZZ;
    }
    if (name == "xx") {
        return PumpKind::XX;
    }
    if (name == "zzxx") {
        return PumpKind::ZZXX;
    }
    throw std::invalid_argument("unknown pump '" + name + "'");
}

namespace {

struct InitEntry {
    PumpInit init;
    const char *label;
};

constexpr InitEntry kInitLabels[] = {
    {PumpInit::S00, "00"},
    {PumpInit::S01, "01"},
    {PumpInit::S10, "10"},
    {PumpInit::S11, "11"},
    {PumpInit::PhiPlus, "phi_plus"},
    {PumpInit::PhiMinus, "phi_minus"},
    {PumpInit::PsiPlus, "psi_plus"},
    {PumpInit::PsiMinus, "psi_minus"},
};

constexpr std::size_t kQ1 = 1;
constexpr std::size_t kQ2 = 2;

std::array<std::array<Complex, 4>, 4> bell_vectors() {
    const double s = 1 / std::sqrt(2.0);
    return {{
        {s, 0, 0, s},
        {s, 0, 0, -s},
        {0, s, s, 0},
        {0, s, -s, 0},
    }};
}

// Gates that prepare `init` on (q1, q2) from |00>.
void append_preparation(Circuit &c, PumpInit init) {
    switch (init) {
        case PumpInit::S00:
            return;
        case PumpInit::S01:
            c.append(GateKind::X, {kQ2});
            return;
        case PumpInit::S10:
            c.append(GateKind::X, {kQ1});
            return;
        case PumpInit::S11:
            c.append(GateKind::X, {kQ1});
            c.append(GateKind::X, {kQ2});
            return;
        case PumpInit::PhiPlus:
            break;
        case PumpInit::PhiMinus:
            c.append(GateKind::X, {kQ1});
            break;
        case PumpInit::PsiPlus:
            c.append(GateKind::X, {kQ2});
            break;
        case PumpInit::PsiMinus:
            c.append(GateKind::X, {kQ1});
            c.append(GateKind::X, {kQ2});
            break;
    }
    c.append(GateKind::H, {kQ1});
    c.append(GateKind::CNOT, {kQ1, kQ2});
}

// After CNOT(q2 -> q1) the ZZ parity sits on q1 in the computational basis
// (0 <-> +1 eigenvalue). With the environment prepared in |1>, the environment
// reads 1 exactly when the pair must be pumped, and after the closing CNOT it
// reads 0 exactly when the flip happened. The pumped branch must pick up
// X on q2 in the original frame, which is X(q1) X(q2) here; the CRY supplies
// X(q1) and the anti-controlled X supplies X(q2).
void append_zz_core(Circuit &c, std::size_t env, double theta) {
    c.append(GateKind::CNOT, {kQ1, env});
    c.append(GateKind::CRY, {env, kQ1}, {theta});
    c.append(GateKind::CNOT, {kQ1, env});
    c.append(GateKind::CNOT, {env, kQ2});
    c.append(GateKind::X, {kQ2});
}

// Same frame: the XX parity sits on q2 in the |+>/|-> basis.
void append_xx_core(Circuit &c, std::size_t env, double theta) {
    c.append(GateKind::H, {kQ2});
    c.append(GateKind::CNOT, {kQ2, env});
    c.append(GateKind::CRY, {env, kQ2}, {theta});
    c.append(GateKind::CNOT, {kQ2, env});
    c.append(GateKind::H, {kQ2});
}

}  // namespace

PumpInit parse_pump_init(const std::string &label) {
    for (const auto &e : kInitLabels) {
        if (label == e.label) {
            return e.init;
        }
    }
    throw std::invalid_argument("unknown two-qubit initial state '" + label + "'");
}

std::string pump_init_label(PumpInit init) {
    for (const auto &e : kInitLabels) {
        if (e.init == init) {
            return e.label;
        }
    }
    return "?";
}

std::array<Complex, 4> pump_init_vector(PumpInit init) {
    const auto bell = bell_vectors();
    switch (init) {
        case PumpInit::S00:
            return {1, 0, 0, 0};
        case PumpInit::S01:
            return {0, 1, 0, 0};
        case PumpInit::S10:
            return {0, 0, 1, 0};
        case PumpInit::S11:
            return {0, 0, 0, 1};
        case PumpInit::PhiPlus:
            return bell[0];
        case PumpInit::PhiMinus:
            return bell[1];
        case PumpInit::PsiPlus:
            return bell[2];
        case PumpInit::PsiMinus:
            return bell[3];
    }
    throw std::invalid_argument("pump_init_vector: unknown state");
}

void PumpParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("pump strength p must lie in [0, 1], got " + std::to_string(p));
    }
    if (rounds < 1) {
        throw std::invalid_argument("pump rounds must be at least 1");
    }
}

Circuit ModelCircuit::full() const {
    Circuit c = body;
    c.extend(readout);
    return c;
}

std::vector<std::size_t> ModelCircuit::traced_qubits() const {
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < body.n_qubits(); q++) {
        if (std::find(system_qubits.begin(), system_qubits.end(), q) == system_qubits.end()) {
            traced.push_back(q);
        }
    }
    return traced;
}

double pump_angle(double p) {
    return std::acos(1 - 2 * p);
}

ModelCircuit build_pump(PumpKind kind, const PumpParams &params) {
    params.validate();
    const double theta = pump_angle(params.p);
    const std::size_t envs_per_round = kind == PumpKind::ZZXX ? 2 : 1;
    const std::size_t n_qubits = 3 + envs_per_round * params.rounds - 1;

    auto env_for = [&](std::size_t round, std::size_t slot) -> std::size_t {
        if (round == 0) {
            return slot == 0 ? 0 : 3;
        }
        return 2 + envs_per_round * round + slot;
    };

    ModelCircuit m;
    m.body = Circuit(n_qubits, pump_name(kind) + "_pump");
    append_preparation(m.body, params.init);
    for (std::size_t r = 0; r < params.rounds; r++) {
        const std::size_t e0 = env_for(r, 0);
        m.body.barrier();
        m.body.append(GateKind::X, {e0});
        std::size_t e1 = e0;
        if (kind == PumpKind::ZZXX) {
            e1 = env_for(r, 1);
            m.body.append(GateKind::X, {e1});
        }
        m.body.append(GateKind::CNOT, {kQ2, kQ1});
        switch (kind) {
            case PumpKind::ZZ:
                append_zz_core(m.body, e0, theta);
                break;
            case PumpKind::XX:
                append_xx_core(m.body, e0, theta);
                break;
            case PumpKind::ZZXX:
                // The closing CNOT of the ZZ pump and the opening CNOT of the
                // XX pump cancel and are left out.
                append_zz_core(m.body, e0, theta);
                append_xx_core(m.body, e1, theta);
                break;
        }
        m.body.append(GateKind::CNOT, {kQ2, kQ1});
        m.body.barrier();
    }
    m.readout = bell_readout(n_qubits, kQ1, kQ2);
    m.init.assign(n_qubits, QubitInit::Zero);
    m.system_qubits = {kQ1, kQ2};
    m.measured = {kQ1, kQ2};
    return m;
}

ModelCircuit build_zz_pump(const PumpParams &params) {
    return build_pump(PumpKind::ZZ, params);
}

ModelCircuit build_xx_pump(const PumpParams &params) {
    return build_pump(PumpKind::XX, params);
}

ModelCircuit build_zzxx_pump(const PumpParams &params) {
    return build_pump(PumpKind::ZZXX, params);
}

std::array<ComplexMatrix, 2> pump_kraus(PumpKind kind, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("pump_kraus: p must lie in [0, 1]");
    }
    if (kind == PumpKind::ZZXX) {
        throw std::invalid_argument("pump_kraus: ZZ-XX is a composition; use pump_round_kraus");
    }
    const ComplexMatrix id = ComplexMatrix::identity(4);
    const ComplexMatrix &sigma = kind == PumpKind::ZZ ? pauli::Z() : pauli::X();
    const ComplexMatrix parity = kron(sigma, sigma);
    const ComplexMatrix flip = kron(pauli::I(), kind == PumpKind::ZZ ? pauli::X() : pauli::Z());
    const ComplexMatrix plus = (id + parity) * Complex(0.5);
    const ComplexMatrix minus = (id - parity) * Complex(0.5);
    return {flip * plus * Complex(std::sqrt(p)), minus + plus * Complex(std::sqrt(1 - p))};
}

std::vector<ComplexMatrix> pump_round_kraus(PumpKind kind, double p) {
    if (kind != PumpKind::ZZXX) {
        auto e = pump_kraus(kind, p);
        return {e[0], e[1]};
    }
    const auto ez = pump_kraus(PumpKind::ZZ, p);
    const auto ex = pump_kraus(PumpKind::XX, p);
    std::vector<ComplexMatrix> out;
    for (const auto &x : ex) {
        for (const auto &z : ez) {
            out.push_back(x * z);
        }
    }
    return out;
}

Circuit bell_readout(std::size_t n_qubits, std::size_t qa, std::size_t qb) {
    Circuit c(n_qubits, "bell_readout");
    c.append(GateKind::CNOT, {qb, qa});
    c.append(GateKind::H, {qb});
    return c;
}

BellOverlaps bell_overlaps_exact(const DensityMatrix &rho) {
    if (rho.n_qubits() != 2) {
        throw std::invalid_argument("bell_overlaps_exact: need a two-qubit state");
    }
    BellOverlaps out;
    const auto bell = bell_vectors();
    for (std::size_t b = 0; b < 4; b++) {
        Complex acc = 0;
        for (std::size_t r = 0; r < 4; r++) {
            for (std::size_t c = 0; c < 4; c++) {
                acc += std::conj(bell[b][r]) * rho.mat()(r, c) * bell[b][c];
            }
        }
        out.values[b] = acc.real();
    }
    return out;
}

BellOverlaps bell_overlaps_from_distribution(const std::vector<double> &dist) {
    if (dist.size() != 4) {
        throw std::invalid_argument("bell overlaps need a four-outcome distribution");
    }
    BellOverlaps out;
    for (std::size_t k = 0; k < 4; k++) {
        out.values[k] = dist[k];
    }
    return out;
}

BellOverlaps bell_overlaps_from_counts(const Counts &counts) {
    return bell_overlaps_from_distribution(counts_to_distribution(counts, 2));
}

BellOverlaps bell_overlaps_measured(const DensityMatrix &rho, std::uint64_t shots, std::uint64_t seed) {
    if (rho.n_qubits() != 2) {
        throw std::invalid_argument("bell_overlaps_measured: need a two-qubit state");
    }
    DensityMatrix rotated = run(bell_readout(2, 0, 1), rho);
    const std::size_t measured[] = {0, 1};
    return bell_overlaps_from_counts(sample_counts(rotated, measured, shots, seed));
}

ModelCircuit build_collisional(const CollisionParams &params) {
    return build_collisional(params, -1.0);
}

ModelCircuit build_collisional(const CollisionParams &params, double rz_sign) {
    const std::size_t sys = 0;
    const std::size_t n_qubits = params.correlated ? 2 : 1 + params.n_collisions;
    const double angle = rz_sign * 2 * params.g_tau;

    ModelCircuit m;
    m.body = Circuit(n_qubits, params.correlated ? "collisional_correlated" : "collisional_uncorrelated");
    m.init.assign(n_qubits, QubitInit::Zero);
    if (params.correlated) {
        m.init[1] = QubitInit::MixedZ;
    }
    m.body.append(GateKind::H, {sys});
    m.body.barrier();
    for (std::size_t k = 0; k < params.n_collisions; k++) {
        const std::size_t env = params.correlated ? 1 : 1 + k;
        if (!params.correlated) {
            m.body.append(GateKind::H, {env});
        }
        m.body.append(GateKind::CNOT, {env, sys});
        m.body.append(GateKind::RZ, {sys}, {angle});
        m.body.append(GateKind::CNOT, {env, sys});
        m.body.barrier();
    }
    m.readout = Circuit(n_qubits, "coherence_readout");
    m.readout.append(GateKind::H, {sys});
    m.system_qubits = {sys};
    m.measured = {sys};
    return m;
}

CoherenceEstimate coherence_from_counts(const Counts &counts, std::size_t time_index) {
    if (counts.shots == 0) {
        throw std::invalid_argument("coherence_from_counts: empty counts");
    }
    for (const auto &[bits, n] : counts.histogram) {
        if (bits.size() != 1) {
            throw std::invalid_argument("coherence_from_counts: expected a single measured qubit");
        }
    }
    const double n0 = static_cast<double>(counts.get("0"));
    const double n1 = static_cast<double>(counts.get("1"));
    return {(n0 - n1) / static_cast<double>(counts.shots) / 2, time_index};
}

double coherence_from_distribution(const std::vector<double> &dist) {
    if (dist.size() != 2) {
        throw std::invalid_argument("coherence_from_distribution: expected two outcomes");
    }
    return (dist[0] - dist[1]) / 2;
}

double analytic_correlated(std::size_t n, double g_tau) {
    return std::cos(2.0 * static_cast<double>(n) * g_tau) / 2;
}

double analytic_uncorrelated(std::size_t n, double g_tau) {
    return std::pow(std::cos(2 * g_tau), static_cast<double>(n)) / 2;
}

DensityMatrix analytic_pump_state(PumpKind kind, const PumpParams &params) {
    params.validate();
    const auto v = pump_init_vector(params.init);
    DensityMatrix rho(2, ComplexMatrix::outer(v));
    const auto kraus = pump_round_kraus(kind, params.p);
    const std::size_t positions[] = {0, 1};
    for (std::size_t r = 0; r < params.rounds; r++) {
        kernels::apply_kraus(rho.mat(), kraus, positions, 2);
    }
    return rho;
}

BellOverlaps analytic_pump_overlaps(PumpKind kind, const PumpParams &params) {
    return bell_overlaps_exact(analytic_pump_state(kind, params));
}

DensityMatrix run_model(const ModelCircuit &model, const NoiseModel *noise) {
    const auto traced = model.traced_qubits();
    return run_streamed(model.body, model.init, noise, trace_after_last_use(model.body, traced));
}

}  // namespace oqs
