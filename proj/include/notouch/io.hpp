// Copyright 2026 The notouch Authors
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

#ifndef NOTOUCH_IO_HPP
#define NOTOUCH_IO_HPP

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "notouch/fock.hpp"
#include "notouch/protocol.hpp"

namespace notouch::io {

inline constexpr const char *kEfficiencyCsvHeader = "N,delta_max,eff_exact,eff_asymptotic,eff_competitor_asymptotic";

/// 12 significant digits, shortest of fixed/scientific ("%.12g").
inline std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string efficiency_csv(const EfficiencyCurve &curve) {
    std::string out = kEfficiencyCsvHeader;
    out += '\n';
    for (const auto &r : curve.rows) {
        out += std::to_string(r.n);
        for (double v : {r.delta_max, r.eff_exact, r.eff_asymptotic, r.eff_competitor_asymptotic}) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

inline EfficiencyCurve parse_efficiency_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kEfficiencyCsvHeader) {
        throw std::runtime_error("efficiency CSV: missing or unexpected header");
    }
    EfficiencyCurve curve;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        if (cells.size() != 5) throw std::runtime_error("efficiency CSV: expected 5 columns: " + line);
        curve.rows.push_back({std::stoi(cells[0]), std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3]),
                              std::stod(cells[4])});
    }
    return curve;
}

inline nlohmann::json efficiency_json(const EfficiencyCurve &curve) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : curve.rows) {
        rows.push_back({{"N", r.n},
                        {"delta_max", r.delta_max},
                        {"eff_exact", r.eff_exact},
                        {"eff_asymptotic", r.eff_asymptotic},
                        {"eff_competitor_asymptotic", r.eff_competitor_asymptotic}});
    }
    return rows;
}

/// {"dim": d, "entries": [[[re, im], ...], ...]}, row-major.
inline nlohmann::json unitary_json(const ModeUnitary &u) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < u.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < u.dim(); ++c) row.push_back({u(r, c).real(), u(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return {{"dim", u.dim()}, {"entries", std::move(rows)}};
}

inline ModeUnitary unitary_from_json(const nlohmann::json &j) {
    const int dim = j.at("dim").get<int>();
    const auto &rows = j.at("entries");
    if (static_cast<int>(rows.size()) != dim) throw std::runtime_error("unitary JSON: row count differs from dim");
    ComplexMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto &row = rows.at(static_cast<size_t>(r));
        if (static_cast<int>(row.size()) != dim) throw std::runtime_error("unitary JSON: ragged row");
        for (int c = 0; c < dim; ++c) {
            const auto &e = row.at(static_cast<size_t>(c));
            m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return ModeUnitary(std::move(m));
}

inline nlohmann::json state_json(const PostSelectedState &s) {
    nlohmann::json amps = nlohmann::json::array();
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
        const Complex a = s.amplitudes[i];
        amps.push_back({{"bits", coincidence_bits(i, s.n_qubits)},
                        {"re", a.real()},
                        {"im", a.imag()},
                        {"probability", std::norm(a)}});
    }
    return {{"n_qubits", s.n_qubits}, {"success_probability", s.success_probability}, {"amplitudes", std::move(amps)}};
}

}  // namespace notouch::io

#endif  // NOTOUCH_IO_HPP
