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

#ifndef MQEC_REPORT_H
#define MQEC_REPORT_H

#include <string>
#include <vector>

#include "mqec/analysis.h"
#include "mqec/costmodel.h"

namespace mqec {

// Decimal text for a double: "%.10g", "nan", "inf".
std::string fmt_num(double x);

// One row per (experiment, alpha).
struct MetricRow {
    std::string experiment;
    double alpha = 1;
    uint64_t seed = 0;
    MetricReport report;
};
std::string metrics_csv(const std::vector<MetricRow> &rows);
std::string metrics_json(const std::vector<MetricRow> &rows);

struct DistributionRow {
    std::string experiment;
    double alpha = 1;
    Distribution empirical;
    Distribution ideal;
};
std::string distributions_csv(const std::vector<DistributionRow> &rows);

struct SweepSeries {
    std::string pair;
    std::string encoded;
    std::string unencoded;
    std::vector<MetricRow> encoded_rows;
    std::vector<MetricRow> unencoded_rows;
    Pseudothreshold threshold;
};
std::string sweep_csv(const std::vector<SweepSeries> &series);
std::string thresholds_csv(const std::vector<SweepSeries> &series);

struct ScalingRow {
    int n_logical = 0;
    Pseudothreshold threshold;
    MetricReport encoded_at_one;
};
std::string scaling_csv(const std::vector<ScalingRow> &rows);

std::string regime_csv(const RegimeMap &map);

// Self-contained SVG figures.
std::string tvd_bars_svg(const std::vector<MetricRow> &rows, const std::string &title);
std::string sweep_svg(const SweepSeries &series);
std::string scaling_svg(const std::vector<ScalingRow> &rows);
std::string regime_svg(const RegimeMap &map);

// Markdown description of every CSV column emitted by this module.
std::string csv_schema();

}  // namespace mqec

#endif
