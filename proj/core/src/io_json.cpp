// Copyright 2025 The flagcirc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flagcirc/io_json.hpp"

#include <chrono>
#include <fstream>

#include "json.hpp"

namespace flagcirc {

const char *kVersion = "0.1.0";

using nlohmann::json;

namespace {

json fault_json(const FaultLocation &f) {
    json j;
    j["qubit"] = f.qubit;
    j["slot"] = f.slot;
    if (f.kind == FaultLocation::Kind::MEAS_FLIP) {
        j["kind"] = "meas_flip";
    } else {
        j["kind"] = "pauli";
        j["pauli"] = std::string(1, pauli_char(f.pauli));
    }
    return j;
}

void stamp(json *j, uint64_t seed, bool reproducible) {
    (*j)["version"] = kVersion;
    (*j)["seed"] = seed;
    if (!reproducible) {
        (*j)["timestamp"] =
            std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
                .count();
    }
}

}  // namespace

std::string FlaggedCircuit::provenance_json() const {
    json j;
    j["version"] = kVersion;
    j["data_cnots"] = data_cnots;
    j["first_level_ancillae"] = first_level_ancillae;
    j["meta_ancillae"] = meta_ancillae;
    j["wrap_ancillae"] = wrap_ancillae;
    j["reps"] = spec.reps;
    json jflags = json::array();
    for (const auto &f : flags) {
        json jf;
        jf["meas_index"] = f.meas_index;
        jf["basis"] = std::string(1, f.basis);
        jf["rep"] = f.rep;
        jf["row"] = f.row;
        jf["qubit"] = f.qubit;
        switch (f.level) {
            case ProvenanceFlag::Level::WRAP: jf["level"] = "wrap"; break;
            case ProvenanceFlag::Level::FLAG: jf["level"] = "flag"; break;
            case ProvenanceFlag::Level::META: jf["level"] = "meta"; break;
        }
        jf["columns"] = f.columns;
        jflags.push_back(jf);
    }
    j["flags"] = jflags;
    json jbulk = json::array();
    for (const auto &b : bulk) {
        json jb = fault_json(b.loc);
        jb["gadget"] = b.gadget;
        jb["region"] = b.region;
        jbulk.push_back(jb);
    }
    j["bulk"] = jbulk;
    json jboundary = json::array();
    for (const auto &b : boundary) {
        jboundary.push_back(fault_json(b));
    }
    j["boundary"] = jboundary;
    if (data_syndrome) {
        json ds;
        ds["check_meas_indices"] = data_syndrome->check_meas_indices;
        ds["encoder"] = data_syndrome->encoder.to_text();
        j["data_syndrome"] = ds;
    }
    return j.dump(2);
}

std::string report_json(const VerificationReport &report, uint64_t seed, bool reproducible) {
    json j;
    stamp(&j, seed, reproducible);
    j["verdict"] = report.pass ? "pass" : "fail";
    if (!report.note.empty()) {
        j["note"] = report.note;
    }
    json jstats = json::object();
    for (const auto &[w, st] : report.stats) {
        json js;
        js["enumerated"] = st.enumerated;
        js["undetected"] = st.undetected;
        js["undetected_propagating"] = st.undetected_propagating;
        js["undetected_propagating_fraction"] = st.undetected_propagating_fraction;
        jstats[std::to_string(w)] = js;
    }
    j["stats"] = jstats;
    json jfail = json::array();
    for (const auto &f : report.failures) {
        json jf;
        json jfaults = json::array();
        for (const auto &loc : f.faults.faults) {
            jfaults.push_back(fault_json(loc));
        }
        jf["faults"] = jfaults;
        std::string pattern;
        for (uint8_t b : f.pattern) {
            pattern.push_back(b ? '1' : '0');
        }
        jf["pattern"] = pattern;
        jf["residual"] = f.residual;
        jf["residual_weight_mod"] = f.residual_weight_mod;
        jf["reason"] = f.reason;
        jfail.push_back(jf);
    }
    j["failures"] = jfail;
    return j.dump(2);
}

std::string resources_json(const ResourceCount &count) {
    json j;
    j["version"] = kVersion;
    j["data_qubits"] = count.data_qubits;
    j["ancilla_qubits"] = count.ancilla_qubits;
    j["total_qubits"] = count.total_qubits;
    j["cnots"] = count.cnots;
    j["single_qubit_gates"] = count.single_qubit_gates;
    j["measurements"] = count.measurements;
    j["depth"] = count.depth;
    return j.dump(2);
}

std::string monte_carlo_json(const MonteCarloResult &result, uint64_t seed, bool reproducible) {
    json j;
    stamp(&j, seed, reproducible);
    json jf = json::object();
    json js = json::object();
    for (const auto &[w, frac] : result.fraction) {
        jf[std::to_string(w)] = frac;
    }
    for (const auto &[w, s] : result.samples_per_weight) {
        js[std::to_string(w)] = s;
    }
    j["undetected_propagating_fraction"] = jf;
    j["samples"] = js;
    return j.dump(2);
}

std::string search_json(const SearchResult &result, bool reproducible) {
    json j;
    stamp(&j, result.seed, reproducible);
    j["found"] = result.found;
    if (result.found) {
        j["ancillae"] = result.ancillae;
        j["added_cnots"] = result.added_cnots;
        j["trial"] = result.trial;
        json jf = json::object();
        for (const auto &[w, frac] : result.undetected_fraction) {
            jf[std::to_string(w)] = frac;
        }
        j["undetected_propagating_fraction"] = jf;
        j["a"] = result.a.to_text();
        j["b"] = result.b.to_text();
        j["a_meta"] = result.a_meta.to_text();
        j["b_meta"] = result.b_meta.to_text();
    }
    return j.dump(2);
}

FlaggedCircuit load_flagged(const std::string &circuit_path, const std::string &provenance_path) {
    FlaggedCircuit f;
    f.circuit = CliffordCircuit::parse_file(circuit_path);
    f.source = f.circuit;
    std::ifstream in(provenance_path);
    if (!in) {
        throw std::invalid_argument("cannot open provenance file: " + provenance_path);
    }
    json j = json::parse(in);
    f.data_cnots = j.value("data_cnots", 0);
    f.first_level_ancillae = j.value("first_level_ancillae", 0);
    f.meta_ancillae = j.value("meta_ancillae", 0);
    f.wrap_ancillae = j.value("wrap_ancillae", 0);
    for (const auto &jf : j["flags"]) {
        ProvenanceFlag p;
        p.meas_index = jf["meas_index"];
        p.basis = jf["basis"].get<std::string>()[0];
        p.rep = jf["rep"];
        p.row = jf["row"];
        p.qubit = jf["qubit"];
        std::string level = jf["level"];
        p.level = level == "wrap"    ? ProvenanceFlag::Level::WRAP
                  : level == "meta" ? ProvenanceFlag::Level::META
                                    : ProvenanceFlag::Level::FLAG;
        p.columns = jf["columns"].get<std::vector<size_t>>();
        f.flags.push_back(p);
    }
    auto parse_fault = [](const json &jb) {
        if (jb["kind"] == "meas_flip") {
            return FaultLocation::meas_flip(jb["qubit"], jb["slot"]);
        }
        return FaultLocation::pauli_fault(jb["qubit"], jb["slot"], pauli_from_char(jb["pauli"].get<std::string>()[0]));
    };
    for (const auto &jb : j["bulk"]) {
        BulkLocation b;
        b.loc = parse_fault(jb);
        b.gadget = jb.value("gadget", 0);
        b.region = jb.value("region", "");
        f.bulk.push_back(b);
    }
    for (const auto &jb : j["boundary"]) {
        f.boundary.push_back(parse_fault(jb));
    }
    if (j.contains("data_syndrome")) {
        DataSyndromeInfo ds;
        ds.check_meas_indices = j["data_syndrome"]["check_meas_indices"].get<std::vector<size_t>>();
        ds.encoder = BinaryMatrix::parse(j["data_syndrome"]["encoder"].get<std::string>());
        ds.redundant_checks = ds.encoder;
        f.data_syndrome = ds;
    }
    return f;
}

}  // namespace flagcirc
