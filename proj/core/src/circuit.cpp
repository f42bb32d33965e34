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

#include "flagcirc/circuit.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flagcirc {

std::string role_name(QubitRole r) {
    switch (r) {
        case QubitRole::DATA: return "DATA";
        case QubitRole::FLAG_X: return "FLAG_X";
        case QubitRole::FLAG_Z: return "FLAG_Z";
        case QubitRole::META_X: return "META_X";
        case QubitRole::META_Z: return "META_Z";
        case QubitRole::EC_ANCILLA: return "EC_ANCILLA";
    }
    return "?";
}

QubitRole role_from_name(const std::string &s) {
    if (s == "DATA") return QubitRole::DATA;
    if (s == "FLAG_X") return QubitRole::FLAG_X;
    if (s == "FLAG_Z") return QubitRole::FLAG_Z;
    if (s == "META_X") return QubitRole::META_X;
    if (s == "META_Z") return QubitRole::META_Z;
    if (s == "EC_ANCILLA") return QubitRole::EC_ANCILLA;
    throw std::invalid_argument("unknown qubit role: " + s);
}

Instruction Instruction::cnot(uint32_t c, uint32_t t) {
    if (c == t) {
        throw std::invalid_argument("CNOT control equals target");
    }
    return {Op::CNOT, c, t, {}};
}

bool Instruction::touches(uint32_t q) const {
    switch (op) {
        case Op::TICK: return false;
        case Op::CNOT: return a == q || b == q;
        default: return a == q;
    }
}

CliffordCircuit::CliffordCircuit(uint32_t num_qubits) {
    ensure_qubits(num_qubits);
}

void CliffordCircuit::ensure_qubits(uint32_t n) {
    if (n > num_qubits_) {
        num_qubits_ = n;
        roles_.resize(n, QubitRole::DATA);
    }
}

void CliffordCircuit::append(const Instruction &inst) {
    switch (inst.op) {
        case Op::CNOT:
            ensure_qubits(std::max(inst.a, inst.b) + 1);
            break;
        case Op::TICK:
            break;
        default:
            ensure_qubits(inst.a + 1);
    }
    instructions_.push_back(inst);
}

QubitRole CliffordCircuit::role(uint32_t q) const {
    if (q >= num_qubits_) {
        throw std::out_of_range("qubit out of range");
    }
    return roles_[q];
}

void CliffordCircuit::set_role(uint32_t q, QubitRole r) {
    ensure_qubits(q + 1);
    roles_[q] = r;
}

void CliffordCircuit::add_input(uint32_t q) {
    ensure_qubits(q + 1);
    inputs_.insert(q);
}

std::vector<uint32_t> CliffordCircuit::qubits_with_role(QubitRole r) const {
    std::vector<uint32_t> out;
    for (uint32_t q = 0; q < num_qubits_; q++) {
        if (roles_[q] == r) {
            out.push_back(q);
        }
    }
    return out;
}

size_t CliffordCircuit::measurement_count() const {
    size_t c = 0;
    for (const auto &inst : instructions_) {
        c += inst.is_measurement();
    }
    return c;
}

std::vector<size_t> CliffordCircuit::measurement_positions() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < instructions_.size(); i++) {
        if (instructions_[i].is_measurement()) {
            out.push_back(i);
        }
    }
    return out;
}

size_t CliffordCircuit::cnot_count() const {
    size_t c = 0;
    for (const auto &inst : instructions_) {
        c += inst.op == Op::CNOT;
    }
    return c;
}

void CliffordCircuit::validate() const {
    // Track per-qubit lifecycle: a qubit is live if it is an input or has been
    // prepared; gates require live qubits; measurement ends the lifetime.
    enum class S { UNBORN, LIVE, DEAD };
    std::vector<S> st(num_qubits_, S::UNBORN);
    for (uint32_t q : inputs_) {
        st[q] = S::LIVE;
    }
    auto require_live = [&](uint32_t q, size_t idx) {
        if (st[q] == S::UNBORN) {
            throw std::invalid_argument(
                "instruction " + std::to_string(idx) + " uses qubit " + std::to_string(q) +
                " before preparation or input declaration");
        }
        if (st[q] == S::DEAD) {
            throw std::invalid_argument(
                "instruction " + std::to_string(idx) + " uses qubit " + std::to_string(q) +
                " after measurement");
        }
    };
    for (size_t i = 0; i < instructions_.size(); i++) {
        const auto &inst = instructions_[i];
        switch (inst.op) {
            case Op::PREP_Z:
            case Op::PREP_X:
                st[inst.a] = S::LIVE;
                break;
            case Op::CNOT:
                if (inst.a == inst.b) {
                    throw std::invalid_argument("CNOT control equals target");
                }
                require_live(inst.a, i);
                require_live(inst.b, i);
                break;
            case Op::U1:
                require_live(inst.a, i);
                break;
            case Op::MEAS_Z:
            case Op::MEAS_X:
                require_live(inst.a, i);
                st[inst.a] = S::DEAD;
                break;
            case Op::TICK:
                break;
        }
    }
}

namespace {

std::vector<std::string> split_ws(const std::string &line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        out.push_back(tok);
    }
    return out;
}

uint32_t parse_qubit(const std::string &tok, size_t line_no) {
    try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size() || v < 0) {
            throw std::invalid_argument("");
        }
        return static_cast<uint32_t>(v);
    } catch (...) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad qubit id '" + tok + "'");
    }
}

}  // namespace

CliffordCircuit CliffordCircuit::parse(const std::string &text) {
    CliffordCircuit c;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        auto toks = split_ws(line);
        if (toks.empty()) {
            continue;
        }
        const std::string &op = toks[0];
        auto qubits_from = [&](size_t start) {
            std::vector<uint32_t> qs;
            for (size_t i = start; i < toks.size(); i++) {
                qs.push_back(parse_qubit(toks[i], line_no));
            }
            return qs;
        };
        if (op == "@role") {
            if (toks.size() < 3) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": @role needs ROLE and qubits");
            }
            QubitRole r = role_from_name(toks[1]);
            for (uint32_t q : qubits_from(2)) {
                c.set_role(q, r);
            }
        } else if (op == "@input") {
            for (uint32_t q : qubits_from(1)) {
                c.add_input(q);
            }
        } else if (op == "TICK") {
            c.append(Instruction::tick());
        } else if (op == "R") {
            for (uint32_t q : qubits_from(1)) {
                c.append(Instruction::prep_z(q));
            }
        } else if (op == "RX") {
            for (uint32_t q : qubits_from(1)) {
                c.append(Instruction::prep_x(q));
            }
        } else if (op == "M") {
            for (uint32_t q : qubits_from(1)) {
                c.append(Instruction::meas_z(q));
            }
        } else if (op == "MX") {
            for (uint32_t q : qubits_from(1)) {
                c.append(Instruction::meas_x(q));
            }
        } else if (op == "CX") {
            if (toks.size() != 3) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": CX needs exactly 2 qubits");
            }
            c.append(Instruction::cnot(parse_qubit(toks[1], line_no), parse_qubit(toks[2], line_no)));
        } else if (op == "H" || op == "S" || op == "SDG" || op == "X" || op == "Y" || op == "Z" || op == "I") {
            SingleQubitClifford u = SingleQubitClifford::named(op);
            for (uint32_t q : qubits_from(1)) {
                c.append(Instruction::u1(q, u));
            }
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown instruction '" + op + "'");
        }
    }
    c.validate();
    return c;
}

CliffordCircuit CliffordCircuit::parse_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::invalid_argument("cannot open circuit file: " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string CliffordCircuit::to_text() const {
    std::ostringstream out;
    // Roles, grouped; DATA is the default and omitted.
    for (QubitRole r : {QubitRole::FLAG_X, QubitRole::FLAG_Z, QubitRole::META_X, QubitRole::META_Z,
                        QubitRole::EC_ANCILLA}) {
        auto qs = qubits_with_role(r);
        if (qs.empty()) {
            continue;
        }
        out << "@role " << role_name(r);
        for (uint32_t q : qs) {
            out << ' ' << q;
        }
        out << '\n';
    }
    if (!inputs_.empty()) {
        out << "@input";
        for (uint32_t q : inputs_) {
            out << ' ' << q;
        }
        out << '\n';
    }
    for (const auto &inst : instructions_) {
        switch (inst.op) {
            case Op::PREP_Z: out << "R " << inst.a << '\n'; break;
            case Op::PREP_X: out << "RX " << inst.a << '\n'; break;
            case Op::MEAS_Z: out << "M " << inst.a << '\n'; break;
            case Op::MEAS_X: out << "MX " << inst.a << '\n'; break;
            case Op::CNOT: out << "CX " << inst.a << ' ' << inst.b << '\n'; break;
            case Op::TICK: out << "TICK\n"; break;
            case Op::U1: {
                // Decompose composite Cliffords into plain gate lines.
                std::string name = inst.u.canonical_name();
                std::vector<std::string> gates;
                size_t start = 0;
                while (start <= name.size()) {
                    size_t sep = name.find('*', start);
                    if (sep == std::string::npos) {
                        gates.push_back(name.substr(start));
                        break;
                    }
                    gates.push_back(name.substr(start, sep - start));
                    start = sep + 1;
                }
                for (const auto &g : gates) {
                    if (g != "I") {
                        out << g << ' ' << inst.a << '\n';
                    }
                }
                if (name == "I") {
                    out << "I " << inst.a << '\n';
                }
                break;
            }
        }
    }
    return out.str();
}

void CliffordCircuit::write_file(const std::string &path) const {
    std::ofstream f(path);
    if (!f) {
        throw std::invalid_argument("cannot open file for writing: " + path);
    }
    f << to_text();
}

}  // namespace flagcirc
