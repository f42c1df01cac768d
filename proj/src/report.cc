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

#include "mqec/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace mqec {

namespace {

const char *kReasons[] = {"prep_flag", "loss", "out_of_codespace", "ldu_flag"};

double reason_fraction(const MetricReport &m, const char *reason) {
    auto it = m.discard_breakdown.find(reason);
    return it == m.discard_breakdown.end() ? 0.0 : it->second;
}

std::string esc(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

// Minimal SVG canvas with a linear data frame.
struct Canvas {
    double width, height;
    std::ostringstream body;

    Canvas(double w, double h) : width(w), height(h) {}

    void rect(double x, double y, double w, double h, const std::string &fill, const std::string &extra = "") {
        body << "<rect x=\"" << fmt_num(x) << "\" y=\"" << fmt_num(y) << "\" width=\"" << fmt_num(w)
             << "\" height=\"" << fmt_num(h) << "\" fill=\"" << fill << "\" " << extra << "/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string &stroke, double sw = 1,
              const std::string &extra = "") {
        body << "<line x1=\"" << fmt_num(x1) << "\" y1=\"" << fmt_num(y1) << "\" x2=\"" << fmt_num(x2)
             << "\" y2=\"" << fmt_num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt_num(sw)
             << "\" " << extra << "/>\n";
    }
    void text(double x, double y, const std::string &s, int size = 11, const std::string &anchor = "middle",
              const std::string &extra = "") {
        body << "<text x=\"" << fmt_num(x) << "\" y=\"" << fmt_num(y) << "\" font-size=\"" << size
             << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\" " << extra << ">" << esc(s)
             << "</text>\n";
    }
    void polyline(const std::vector<std::pair<double, double>> &pts, const std::string &stroke) {
        body << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
        for (auto &[x, y] : pts) {
            body << fmt_num(x) << "," << fmt_num(y) << " ";
        }
        body << "\"/>\n";
    }
    void polygon(const std::vector<std::pair<double, double>> &pts, const std::string &fill) {
        body << "<polygon fill=\"" << fill << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
        for (auto &[x, y] : pts) {
            body << fmt_num(x) << "," << fmt_num(y) << " ";
        }
        body << "\"/>\n";
    }
    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_num(width) << "\" height=\""
            << fmt_num(height) << "\" viewBox=\"0 0 " << fmt_num(width) << " " << fmt_num(height) << "\">\n";
        out << "<rect x=\"0\" y=\"0\" width=\"" << fmt_num(width) << "\" height=\"" << fmt_num(height)
            << "\" fill=\"white\"/>\n";
        out << body.str() << "</svg>\n";
        return out.str();
    }
};

// Plot frame inside a canvas region.
struct Frame {
    double x0, y0, w, h;  // pixel box
    double xmin, xmax, ymin, ymax;
    bool logx = false;

    double px(double x) const {
        double a = logx ? std::log10(x) : x;
        double lo = logx ? std::log10(xmin) : xmin;
        double hi = logx ? std::log10(xmax) : xmax;
        return x0 + (hi == lo ? 0.5 : (a - lo) / (hi - lo)) * w;
    }
    double py(double y) const { return y0 + h - (ymax == ymin ? 0.5 : (y - ymin) / (ymax - ymin)) * h; }

    void axes(Canvas &c, const std::string &xlabel, const std::string &ylabel, int yticks = 5) const {
        c.line(x0, y0 + h, x0 + w, y0 + h, "black");
        c.line(x0, y0, x0, y0 + h, "black");
        for (int i = 0; i <= yticks; i++) {
            double y = ymin + (ymax - ymin) * i / yticks;
            c.line(x0 - 4, py(y), x0, py(y), "black");
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", y);
            c.text(x0 - 6, py(y) + 4, buf, 10, "end");
        }
        c.text(x0 + w / 2, y0 + h + 34, xlabel, 11);
        c.text(x0 - 44, y0 + h / 2, ylabel, 11, "middle",
               "transform=\"rotate(-90 " + fmt_num(x0 - 44) + " " + fmt_num(y0 + h / 2) + ")\"");
    }
    void xticks(Canvas &c, const std::vector<double> &xs) const {
        for (double x : xs) {
            c.line(px(x), y0 + h, px(x), y0 + h + 4, "black");
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", x);
            c.text(px(x), y0 + h + 16, buf, 10);
        }
    }
};

double finite_or(double x, double fallback) {
    return std::isfinite(x) ? x : fallback;
}

}  // namespace

std::string fmt_num(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string metrics_csv(const std::vector<MetricRow> &rows) {
    std::ostringstream out;
    out << "experiment,alpha,seed,shots,accepted,yield,tvd,tvd_ci_low,tvd_ci_high,error_rate,error_ci_low,"
           "error_ci_high,discard_prep_flag,discard_loss,discard_out_of_codespace,discard_ldu_flag\n";
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto &r : rows) {
        const MetricReport &m = r.report;
        Estimate er = m.error_rate ? *m.error_rate : Estimate{nan, {nan, nan}};
        out << r.experiment << "," << fmt_num(r.alpha) << "," << r.seed << "," << m.shots << "," << m.accepted
            << "," << fmt_num(m.yield) << "," << fmt_num(m.tvd.value) << "," << fmt_num(m.tvd.ci68.low) << ","
            << fmt_num(m.tvd.ci68.high) << "," << fmt_num(er.value) << "," << fmt_num(er.ci68.low) << ","
            << fmt_num(er.ci68.high);
        for (const char *reason : kReasons) {
            out << "," << fmt_num(reason_fraction(m, reason));
        }
        out << "\n";
    }
    return out.str();
}

std::string metrics_json(const std::vector<MetricRow> &rows) {
    using nlohmann::ordered_json;
    auto num = [](double x) -> ordered_json {
        if (std::isfinite(x)) {
            return x;
        }
        return nullptr;
    };
    auto est = [&](const Estimate &e) {
        return ordered_json{{"value", num(e.value)}, {"ci68", {num(e.ci68.low), num(e.ci68.high)}}};
    };
    ordered_json arr = ordered_json::array();
    for (const auto &r : rows) {
        const MetricReport &m = r.report;
        ordered_json o;
        o["experiment"] = r.experiment;
        o["alpha"] = r.alpha;
        o["seed"] = r.seed;
        o["shots"] = m.shots;
        o["accepted"] = m.accepted;
        o["yield"] = m.yield;
        o["tvd"] = est(m.tvd);
        o["error_rate"] = m.error_rate ? est(*m.error_rate) : ordered_json(nullptr);
        ordered_json br = ordered_json::object();
        for (const char *reason : kReasons) {
            br[reason] = reason_fraction(m, reason);
        }
        o["discard_breakdown"] = br;
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

std::string distributions_csv(const std::vector<DistributionRow> &rows) {
    std::ostringstream out;
    out << "experiment,alpha,word,probability,ideal\n";
    for (const auto &r : rows) {
        Distribution keys = r.ideal;
        for (auto &[k, v] : r.empirical) {
            keys[k] += 0;
        }
        for (auto &[k, v] : keys) {
            double p = r.empirical.count(k) ? r.empirical.at(k) : 0.0;
            double q = r.ideal.count(k) ? r.ideal.at(k) : 0.0;
            out << r.experiment << "," << fmt_num(r.alpha) << "," << k << "," << fmt_num(p) << "," << fmt_num(q)
                << "\n";
        }
    }
    return out.str();
}

std::string sweep_csv(const std::vector<SweepSeries> &series) {
    std::ostringstream out;
    out << "pair,side,experiment,alpha,tvd,tvd_ci_low,tvd_ci_high,yield,accepted\n";
    for (const auto &s : series) {
        for (int side = 0; side < 2; side++) {
            const auto &rows = side == 0 ? s.encoded_rows : s.unencoded_rows;
            for (const auto &r : rows) {
                out << s.pair << "," << (side == 0 ? "encoded" : "unencoded") << "," << r.experiment << ","
                    << fmt_num(r.alpha) << "," << fmt_num(r.report.tvd.value) << ","
                    << fmt_num(r.report.tvd.ci68.low) << "," << fmt_num(r.report.tvd.ci68.high) << ","
                    << fmt_num(r.report.yield) << "," << r.report.accepted << "\n";
            }
        }
    }
    return out.str();
}

std::string thresholds_csv(const std::vector<SweepSeries> &series) {
    std::ostringstream out;
    out << "pair,encoded,unencoded,status,alpha_low,alpha_high\n";
    for (const auto &s : series) {
        out << s.pair << "," << s.encoded << "," << s.unencoded << "," << status_name(s.threshold.status) << ","
            << fmt_num(s.threshold.low) << "," << fmt_num(s.threshold.high) << "\n";
    }
    return out.str();
}

std::string scaling_csv(const std::vector<ScalingRow> &rows) {
    std::ostringstream out;
    out << "n_logical,status,alpha_low,alpha_high,yield_at_1,discard_prep_flag,discard_loss,"
           "discard_out_of_codespace,discard_ldu_flag\n";
    for (const auto &r : rows) {
        out << r.n_logical << "," << status_name(r.threshold.status) << "," << fmt_num(r.threshold.low) << ","
            << fmt_num(r.threshold.high) << "," << fmt_num(r.encoded_at_one.yield);
        for (const char *reason : kReasons) {
            out << "," << fmt_num(reason_fraction(r.encoded_at_one, reason));
        }
        out << "\n";
    }
    return out.str();
}

std::string regime_csv(const RegimeMap &map) {
    std::ostringstream out;
    out << "d,spaces,cost_seconds,regime\n";
    for (const auto &c : map.cells) {
        out << c.d << "," << c.spaces << "," << fmt_num(c.cost.seconds) << "," << regime_name(c.cost.regime)
            << "\n";
    }
    return out.str();
}

std::string tvd_bars_svg(const std::vector<MetricRow> &rows, const std::string &title) {
    size_t n = std::max<size_t>(1, rows.size());
    double bw = 56;
    double pw = std::max(320.0, static_cast<double>(n) * bw + 40);
    Canvas c(pw + 90, 560);
    c.text((pw + 90) / 2, 20, title, 13);
    double ymax = 0.05;
    for (const auto &r : rows) {
        ymax = std::max(ymax, finite_or(r.report.tvd.ci68.high, 0) * 1.15);
    }
    Frame top{70, 40, pw, 200, 0, 1, 0, ymax};
    top.axes(c, "", "TVD");
    Frame bot{70, 300, pw, 200, 0, 1, 0, 1};
    bot.axes(c, "", "fraction of shots");
    const char *colors[] = {"#d95f02", "#7570b3", "#e7298a", "#66a61e"};
    for (size_t i = 0; i < rows.size(); i++) {
        const MetricReport &m = rows[i].report;
        double x = 80 + static_cast<double>(i) * bw;
        double v = finite_or(m.tvd.value, 0);
        c.rect(x, top.py(v), bw - 16, top.py(0) - top.py(v), "#1b9e77");
        if (std::isfinite(m.tvd.ci68.low)) {
            double cx = x + (bw - 16) / 2;
            c.line(cx, top.py(m.tvd.ci68.low), cx, top.py(m.tvd.ci68.high), "black", 1.5);
        }
        double acc = 0;
        double ys = m.yield;
        c.rect(x, bot.py(ys), bw - 16, bot.py(0) - bot.py(ys), "#1b9e77");
        acc = ys;
        for (int k = 0; k < 4; k++) {
            double f = reason_fraction(m, kReasons[k]);
            c.rect(x, bot.py(acc + f), bw - 16, bot.py(acc) - bot.py(acc + f), colors[k]);
            acc += f;
        }
        c.text(x + (bw - 16) / 2, 516, rows[i].experiment, 9, "end",
               "transform=\"rotate(-30 " + fmt_num(x + (bw - 16) / 2) + " 516)\"");
    }
    double lx = pw + 76;
    c.rect(lx - 60, 300, 10, 10, "#1b9e77");
    c.text(lx - 46, 309, "accepted", 9, "start");
    for (int k = 0; k < 4; k++) {
        c.rect(lx - 60, 316 + 16 * k, 10, 10, colors[k]);
        c.text(lx - 46, 325 + 16 * k, kReasons[k], 9, "start");
    }
    return c.str();
}

std::string sweep_svg(const SweepSeries &s) {
    Canvas c(560, 380);
    c.text(280, 20, "TVD vs noise scale: " + s.pair, 13);
    std::vector<double> xs;
    double ymax = 0.05;
    for (const auto *rows : {&s.encoded_rows, &s.unencoded_rows}) {
        for (const auto &r : *rows) {
            ymax = std::max(ymax, finite_or(r.report.tvd.ci68.high, 0) * 1.1);
        }
    }
    for (const auto &r : s.encoded_rows) {
        xs.push_back(r.alpha);
    }
    if (xs.empty()) {
        return c.str();
    }
    bool logx = xs.front() > 0 && xs.back() / xs.front() > 20;
    Frame f{70, 40, 440, 280, xs.front(), xs.back(), 0, std::min(1.0, ymax), logx};
    f.axes(c, "alpha (noise scale)", "TVD");
    f.xticks(c, xs);
    const char *colors[] = {"#1b9e77", "#d95f02"};
    const char *labels[] = {"encoded", "unencoded"};
    for (int side = 0; side < 2; side++) {
        const auto &rows = side == 0 ? s.encoded_rows : s.unencoded_rows;
        std::vector<std::pair<double, double>> line, band_top, band_bot;
        for (const auto &r : rows) {
            if (!std::isfinite(r.report.tvd.value)) {
                continue;
            }
            line.push_back({f.px(r.alpha), f.py(r.report.tvd.value)});
            band_top.push_back({f.px(r.alpha), f.py(r.report.tvd.ci68.high)});
            band_bot.push_back({f.px(r.alpha), f.py(r.report.tvd.ci68.low)});
        }
        std::vector<std::pair<double, double>> band = band_top;
        band.insert(band.end(), band_bot.rbegin(), band_bot.rend());
        c.polygon(band, colors[side]);
        c.polyline(line, colors[side]);
        c.rect(400, 50 + 16 * side, 10, 10, colors[side]);
        c.text(414, 59 + 16 * side, labels[side], 10, "start");
    }
    if (s.threshold.status != ThresholdStatus::Indeterminate && std::isfinite(s.threshold.low)) {
        double hi = std::isfinite(s.threshold.high) ? s.threshold.high : xs.back();
        c.rect(f.px(s.threshold.low), f.y0, std::max(1.0, f.px(hi) - f.px(s.threshold.low)), f.h, "#999999",
               "fill-opacity=\"0.25\"");
        c.text(f.px(s.threshold.low), f.y0 - 4, "pseudothreshold", 9, "start");
    }
    return c.str();
}

std::string scaling_svg(const std::vector<ScalingRow> &rows) {
    Canvas c(760, 360);
    c.text(380, 20, "Logical-qubit scaling", 13);
    if (rows.empty()) {
        return c.str();
    }
    double nmin = rows.front().n_logical, nmax = rows.back().n_logical;
    double amax = 1;
    for (const auto &r : rows) {
        amax = std::max(amax, finite_or(r.threshold.high, finite_or(r.threshold.low, 0)) * 1.1);
    }
    std::vector<double> ns;
    for (const auto &r : rows) {
        ns.push_back(r.n_logical);
    }
    double pad = nmax == nmin ? 1 : 0;
    Frame left{70, 40, 280, 260, nmin - pad, nmax + pad, 0, amax};
    left.axes(c, "logical qubits N", "pseudothreshold alpha");
    left.xticks(c, ns);
    for (const auto &r : rows) {
        double x = left.px(r.n_logical);
        double lo = finite_or(r.threshold.low, 0);
        double hi = finite_or(r.threshold.high, amax);
        c.line(x, left.py(lo), x, left.py(std::min(hi, amax)), "#1b9e77", 6);
    }
    Frame right{450, 40, 280, 260, nmin - pad, nmax + pad, 0, 1};
    right.axes(c, "logical qubits N", "discard fraction at alpha=1");
    right.xticks(c, ns);
    const char *colors[] = {"#d95f02", "#7570b3", "#e7298a", "#66a61e"};
    for (const auto &r : rows) {
        double x = right.px(r.n_logical) - 8;
        double acc = 0;
        for (int k = 0; k < 4; k++) {
            double fr = reason_fraction(r.encoded_at_one, kReasons[k]);
            c.rect(x, right.py(acc + fr), 16, right.py(acc) - right.py(acc + fr), colors[k]);
            acc += fr;
        }
    }
    for (int k = 0; k < 4; k++) {
        c.rect(620, 46 + 14 * k, 9, 9, colors[k]);
        c.text(633, 54 + 14 * k, kReasons[k], 9, "start");
    }
    return c.str();
}

std::string regime_svg(const RegimeMap &map) {
    double cell = 14;
    double w = static_cast<double>(map.space_values.size()) * cell;
    double h = static_cast<double>(map.d_values.size()) * cell;
    Canvas c(w + 140, h + 90);
    c.text((w + 140) / 2, 18, "Dominant gate-layer cost", 13);
    for (size_t di = 0; di < map.d_values.size(); di++) {
        for (size_t si = 0; si < map.space_values.size(); si++) {
            const auto &cl = map.at(di, si);
            // Row 0 at the bottom so d grows upward.
            double y = 30 + h - static_cast<double>(di + 1) * cell;
            c.rect(60 + static_cast<double>(si) * cell, y, cell, cell,
                   cl.cost.regime == Regime::Measurement ? "#4575b4" : "#d73027", "stroke=\"white\"");
        }
        c.text(56, 30 + h - static_cast<double>(di) * cell - 3, std::to_string(map.d_values[di]), 8, "end");
    }
    for (size_t si = 0; si < map.space_values.size(); si += 4) {
        c.text(60 + (static_cast<double>(si) + 0.5) * cell, 42 + h, std::to_string(map.space_values[si]), 8);
    }
    c.text(60 + w / 2, 62 + h, "logical movement spaces", 11);
    c.text(20, 30 + h / 2, "code distance d", 11, "middle",
           "transform=\"rotate(-90 20 " + fmt_num(30 + h / 2) + ")\"");
    c.rect(w + 72, 40, 10, 10, "#4575b4");
    c.text(w + 86, 49, "measurement", 9, "start");
    c.rect(w + 72, 56, 10, 10, "#d73027");
    c.text(w + 86, 65, "movement", 9, "start");
    return c.str();
}

std::string csv_schema() {
    return R"(# Output schema

All numbers are printed with up to 10 significant digits; `nan` marks an undefined
value (no accepted shots, or no deterministic expected word) and `inf` an open bound.

## metrics.csv / sweep_metrics.csv
| column | meaning |
|---|---|
| experiment | experiment id from the config |
| alpha | noise scale factor applied to the scoped channels |
| seed | run seed for this (experiment, alpha); per-input circuits derive their own streams from it |
| shots | simulated shots |
| accepted | shots surviving post-selection |
| yield | accepted / shots |
| tvd | total variation distance between accepted words and the ideal distribution |
| tvd_ci_low, tvd_ci_high | narrowest 68% bootstrap interval for tvd |
| error_rate | 1 - fraction of accepted words equal to the expected word (deterministic experiments only) |
| error_ci_low, error_ci_high | narrowest 68% bootstrap interval for error_rate |
| discard_prep_flag | fraction of shots discarded by a nonzero prep flag |
| discard_loss | fraction discarded for atom loss (or uncorrectable loss) |
| discard_out_of_codespace | fraction discarded for a patch outside the codespace or an ambiguous decode |
| discard_ldu_flag | fraction discarded by a leakage-detection flag |

Experiments with several inputs pool their samples: each accepted word is scored as
matching or not matching its own expected word, so tvd equals error_rate.

## distributions.csv
| column | meaning |
|---|---|
| experiment | experiment id (single-input experiments only) |
| alpha | noise scale |
| word | decoded output word |
| probability | empirical probability among accepted words |
| ideal | ideal probability |

## sweep.csv
| column | meaning |
|---|---|
| pair | pair id |
| side | encoded or unencoded |
| experiment | experiment id |
| alpha | noise scale |
| tvd, tvd_ci_low, tvd_ci_high | metric and 68% interval |
| yield | accepted / shots |
| accepted | accepted shots |

## thresholds.csv
| column | meaning |
|---|---|
| pair | pair id |
| encoded, unencoded | experiment ids |
| status | found, open_ended (no crossing on the grid) or indeterminate (fewer than 2 grid points) |
| alpha_low | start of the run of overlapping 68% intervals that leads into the crossing (interpolated) |
| alpha_high | alpha from which the encoded tvd stays at or above the unencoded tvd (interpolated); inf when open_ended |

## scaling.csv
| column | meaning |
|---|---|
| n_logical | ladder size N |
| status, alpha_low, alpha_high | pseudothreshold interval as in thresholds.csv |
| yield_at_1 | encoded yield at alpha = 1 |
| discard_* | encoded discard fractions at alpha = 1 |

## regime_map.csv
| column | meaning |
|---|---|
| d | code distance |
| spaces | logical movement spaces per layer |
| cost_seconds | max(measurement time, spaces * d * per-site move time) |
| regime | measurement or movement (ties count as measurement) |
)";
}

}  // namespace mqec
