// Copyright 2026 The mqec Authors
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

#include "mqec/records.h"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "mqec/errors.h"

namespace mqec {

namespace {

std::string hex(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

uint64_t from_hex(const std::string &s) {
    try {
        return std::stoull(s, nullptr, 16);
    } catch (const std::exception &) {
        throw ConfigError("records: bad hex value '" + s + "'");
    }
}

}  // namespace

std::string roles_string(const Circuit &c) {
    std::string s;
    for (Role r : c.roles) {
        switch (r) {
            case Role::Data:
                s.push_back('d');
                break;
            case Role::PrepFlag:
                s.push_back('p');
                break;
            case Role::LduFlag:
                s.push_back('l');
                break;
            case Role::Ancilla:
                s.push_back('a');
                break;
            case Role::Unused:
                s.push_back('u');
                break;
        }
    }
    return s;
}

std::string records_to_jsonl(const RecordHeader &h, const std::vector<ShotRecord> &records) {
    std::string out;
    nlohmann::json head = {
        {"type", "header"},
        {"experiment", h.experiment},
        {"circuit_hash", hex(h.circuit_hash)},
        {"seed", h.seed},
        {"alpha", h.alpha},
        {"shots", h.shots},
        {"noise", h.noise},
        {"roles", h.roles},
    };
    out += head.dump() + "\n";
    for (const ShotRecord &r : records) {
        nlohmann::json j = {{"shot", r.shot}, {"outcome", r.outcome}, {"leaked", hex(r.leaked_mask)}};
        out += j.dump() + "\n";
    }
    return out;
}

void records_from_jsonl(const std::string &text, RecordHeader *h, std::vector<ShotRecord> *records) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    records->clear();
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            if (!have_header) {
                if (j.at("type") != "header") {
                    throw ConfigError("records: first line is not a header");
                }
                h->experiment = j.at("experiment").get<std::string>();
                h->circuit_hash = from_hex(j.at("circuit_hash").get<std::string>());
                h->seed = j.at("seed").get<uint64_t>();
                h->alpha = j.at("alpha").get<double>();
                h->shots = j.at("shots").get<uint64_t>();
                h->noise = j.at("noise").get<std::string>();
                h->roles = j.at("roles").get<std::string>();
                have_header = true;
                continue;
            }
            ShotRecord r;
            r.shot = j.at("shot").get<uint64_t>();
            r.outcome = j.at("outcome").get<std::string>();
            r.leaked_mask = from_hex(j.at("leaked").get<std::string>());
            records->push_back(r);
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError("records: line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_header) {
        throw ConfigError("records: missing header line");
    }
}

}  // namespace mqec
