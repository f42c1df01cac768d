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

#include "mqec/codes.h"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <sstream>

#include "mqec/errors.h"

namespace mqec {

namespace {

std::vector<PauliString> parse_list(std::initializer_list<const char *> items) {
    std::vector<PauliString> out;
    for (const char *s : items) {
        out.push_back(PauliString::from_text(s));
    }
    return out;
}

// Row-reduces symplectic vectors and returns the rank.
size_t gf2_rank(std::vector<std::vector<uint64_t>> rows) {
    size_t rank = 0;
    if (rows.empty()) {
        return 0;
    }
    size_t bits = rows[0].size() * 64;
    for (size_t col = 0; col < bits && rank < rows.size(); col++) {
        size_t w = col >> 6;
        uint64_t m = uint64_t{1} << (col & 63);
        size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & m)) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[rank]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && (rows[r][w] & m)) {
                for (size_t k = 0; k < rows[r].size(); k++) {
                    rows[r][k] ^= rows[rank][k];
                }
            }
        }
        rank++;
    }
    return rank;
}

std::vector<uint64_t> symplectic_vector(const PauliString &p) {
    std::vector<uint64_t> v(p.x_words());
    v.insert(v.end(), p.z_words().begin(), p.z_words().end());
    return v;
}

struct MaskCode {
    std::vector<uint64_t> sx, sz;
    std::vector<uint64_t> lx, lz;
};

MaskCode to_masks(const StabilizerCode &code) {
    MaskCode m;
    for (const auto &s : code.stabilizers) {
        m.sx.push_back(x_mask(s));
        m.sz.push_back(z_mask(s));
    }
    for (const auto &l : code.logical_x) {
        m.lx.push_back(x_mask(l));
        m.lz.push_back(z_mask(l));
    }
    for (const auto &l : code.logical_z) {
        m.lx.push_back(x_mask(l));
        m.lz.push_back(z_mask(l));
    }
    return m;
}

bool is_logical_error(const MaskCode &m, uint64_t ex, uint64_t ez) {
    for (size_t i = 0; i < m.sx.size(); i++) {
        if (mask_parity(ex, m.sz[i]) ^ mask_parity(ez, m.sx[i])) {
            return false;
        }
    }
    for (size_t i = 0; i < m.lx.size(); i++) {
        if (mask_parity(ex, m.lz[i]) ^ mask_parity(ez, m.lx[i])) {
            return true;
        }
    }
    return false;
}

// All n-bit masks with popcount w, in increasing order (Gosper's hack).
std::vector<uint64_t> supports_of_weight(size_t n, int w) {
    std::vector<uint64_t> out;
    if (w == 0) {
        out.push_back(0);
        return out;
    }
    if (static_cast<size_t>(w) > n) {
        return out;
    }
    uint64_t v = (uint64_t{1} << w) - 1;
    uint64_t limit = n == 64 ? 0 : (uint64_t{1} << n);
    while (true) {
        out.push_back(v);
        uint64_t t = v | (v - 1);
        uint64_t nxt = (t + 1) | (((~t & -~t) - 1) >> (__builtin_ctzll(v) + 1));
        if (nxt <= v || (limit && nxt >= limit)) {
            break;
        }
        v = nxt;
    }
    return out;
}

// Letters over a support: letter code 1=X, 2=Z, 3=Y per support bit. Mode selects
// which letters are allowed.
enum class LetterMode { All, XOnly, ZOnly };

bool support_has_logical(const MaskCode &m, uint64_t support, LetterMode mode) {
    int bits[64];
    int w = 0;
    for (uint64_t s = support; s; s &= s - 1) {
        bits[w++] = __builtin_ctzll(s);
    }
    if (mode == LetterMode::XOnly) {
        return is_logical_error(m, support, 0);
    }
    if (mode == LetterMode::ZOnly) {
        return is_logical_error(m, 0, support);
    }
    uint64_t total = 1;
    for (int i = 0; i < w; i++) {
        total *= 3;
    }
    for (uint64_t c = 0; c < total; c++) {
        uint64_t ex = 0, ez = 0, r = c;
        for (int i = 0; i < w; i++) {
            int letter = 1 + static_cast<int>(r % 3);
            r /= 3;
            if (letter & 1) {
                ex |= uint64_t{1} << bits[i];
            }
            if (letter & 2) {
                ez |= uint64_t{1} << bits[i];
            }
        }
        if (is_logical_error(m, ex, ez)) {
            return true;
        }
    }
    return false;
}

void check_capacity(const StabilizerCode &code, size_t max_qubits) {
    if (code.n > max_qubits || code.n > 63) {
        throw CapacityError("distance search: n=" + std::to_string(code.n) + " exceeds cap " +
                            std::to_string(std::min<size_t>(max_qubits, 63)));
    }
}

std::optional<int> search(const StabilizerCode &code, int max_weight, size_t max_qubits, LetterMode mode,
                          bool parallel) {
    check_capacity(code, max_qubits);
    MaskCode m = to_masks(code);
    for (int w = 1; w <= max_weight; w++) {
        std::vector<uint64_t> sup = supports_of_weight(code.n, w);
        bool found = false;
        if (parallel) {
            std::atomic<bool> hit{false};
            long long count = static_cast<long long>(sup.size());
#pragma omp parallel for schedule(dynamic, 16)
            for (long long i = 0; i < count; i++) {
                if (hit.load(std::memory_order_relaxed)) {
                    continue;
                }
                if (support_has_logical(m, sup[i], mode)) {
                    hit.store(true, std::memory_order_relaxed);
                }
            }
            found = hit.load();
        } else {
            for (uint64_t s : sup) {
                if (support_has_logical(m, s, mode)) {
                    found = true;
                    break;
                }
            }
        }
        if (found) {
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

uint64_t x_mask(const PauliString &p) {
    return p.x_words().empty() ? 0 : p.x_words()[0];
}

uint64_t z_mask(const PauliString &p) {
    return p.z_words().empty() ? 0 : p.z_words()[0];
}

bool StabilizerCode::is_css() const {
    for (const auto &s : stabilizers) {
        if (!s.is_x_type() && !s.is_z_type()) {
            return false;
        }
    }
    return true;
}

std::vector<PauliString> StabilizerCode::x_stabilizers() const {
    std::vector<PauliString> out;
    for (const auto &s : stabilizers) {
        if (s.is_x_type() && !s.is_identity()) {
            out.push_back(s);
        }
    }
    return out;
}

std::vector<PauliString> StabilizerCode::z_stabilizers() const {
    std::vector<PauliString> out;
    for (const auto &s : stabilizers) {
        if (s.is_z_type() && !s.is_identity()) {
            out.push_back(s);
        }
    }
    return out;
}

size_t StabilizerCode::stabilizer_rank() const {
    std::vector<std::vector<uint64_t>> rows;
    for (const auto &s : stabilizers) {
        rows.push_back(symplectic_vector(s));
    }
    return gf2_rank(rows);
}

std::vector<std::string> StabilizerCode::problems() const {
    std::vector<std::string> out;
    auto check_sizes = [&](const std::vector<PauliString> &ps, const char *what) {
        for (const auto &p : ps) {
            if (p.num_qubits() != n) {
                out.push_back(std::string(what) + " " + p.str() + " has wrong size");
            }
        }
    };
    check_sizes(stabilizers, "stabilizer");
    check_sizes(logical_x, "logical X");
    check_sizes(logical_z, "logical Z");
    check_sizes(label_x, "label X");
    check_sizes(label_z, "label Z");
    if (!out.empty()) {
        return out;
    }
    for (size_t i = 0; i < stabilizers.size(); i++) {
        for (size_t j = i + 1; j < stabilizers.size(); j++) {
            if (!stabilizers[i].commutes(stabilizers[j])) {
                out.push_back("stabilizers " + stabilizers[i].letters() + " and " + stabilizers[j].letters() +
                              " anticommute");
            }
        }
    }
    if (stabilizer_rank() != n - k) {
        out.push_back("stabilizer rank " + std::to_string(stabilizer_rank()) + " != n - k = " +
                      std::to_string(n - k));
    }
    auto check_basis = [&](const std::vector<PauliString> &xs, const std::vector<PauliString> &zs, const char *what) {
        if (xs.size() != k || zs.size() != k) {
            out.push_back(std::string(what) + ": expected " + std::to_string(k) + " X and Z operators");
            return;
        }
        for (const auto *group : {&xs, &zs}) {
            for (const auto &l : *group) {
                for (const auto &s : stabilizers) {
                    if (!l.commutes(s)) {
                        out.push_back(std::string(what) + " " + l.letters() + " anticommutes with stabilizer " +
                                      s.letters());
                    }
                }
            }
        }
        for (size_t i = 0; i < k; i++) {
            for (size_t j = 0; j < k; j++) {
                if (xs[i].commutes(zs[j]) == (i == j)) {
                    out.push_back(std::string(what) + " pair (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") has wrong commutation");
                }
                if (i < j && !xs[i].commutes(xs[j])) {
                    out.push_back(std::string(what) + " X operators anticommute");
                }
                if (i < j && !zs[i].commutes(zs[j])) {
                    out.push_back(std::string(what) + " Z operators anticommute");
                }
            }
        }
    };
    check_basis(logical_x, logical_z, "logical");
    check_basis(label_x, label_z, "label");
    return out;
}

StabilizerCode c4_code() {
    StabilizerCode c;
    c.name = "c4";
    c.n = 4;
    c.k = 2;
    c.stabilizers = parse_list({"XXXX", "ZZZZ"});
    c.logical_x = parse_list({"IXXI", "IXIX"});
    c.logical_z = parse_list({"ZIZI", "ZIIZ"});
    // Codeword labels: bit a is the parity of qubits 0,1 and bit b of qubits 0,2.
    c.label_x = parse_list({"IXIX", "IIXX"});
    c.label_z = parse_list({"ZZII", "ZIZI"});
    return c;
}

StabilizerCode concatenate(const StabilizerCode &outer, const StabilizerCode &inner) {
    auto bad = outer.problems();
    auto bad_inner = inner.problems();
    bad.insert(bad.end(), bad_inner.begin(), bad_inner.end());
    if (!bad.empty()) {
        throw StructuralError("concatenate: invalid input code: " + bad.front());
    }
    size_t blocks = outer.n;
    size_t nb = inner.n;
    StabilizerCode c;
    c.name = outer.name + "*" + inner.name;
    c.n = blocks * nb;
    c.k = outer.k * inner.k;

    auto lift = [&](const PauliString &op, size_t j) {
        PauliString full(0);
        uint8_t phase = op.phase();
        for (size_t b = 0; b < blocks; b++) {
            PauliString blk(nb);
            char l = op.letter(b);
            if (l == 'X') {
                blk = inner.logical_x[j];
            } else if (l == 'Z') {
                blk = inner.logical_z[j];
            } else if (l == 'Y') {
                blk = inner.logical_x[j] * inner.logical_z[j];
                blk.set_phase(blk.phase() + 1);
            }
            full = full.tensor(blk);
        }
        full.set_phase(full.phase() + phase);
        return full;
    };
    auto on_block = [&](const PauliString &op, size_t b) {
        PauliString full(0);
        for (size_t i = 0; i < blocks; i++) {
            full = full.tensor(i == b ? op : PauliString(nb));
        }
        return full;
    };

    std::vector<PauliString> all;
    for (const auto &s : inner.stabilizers) {
        for (size_t b = 0; b < blocks; b++) {
            all.push_back(on_block(s, b));
        }
    }
    for (const auto &s : outer.stabilizers) {
        for (size_t j = 0; j < inner.k; j++) {
            all.push_back(lift(s, j));
        }
    }
    auto rank_of = [](const PauliString &p) { return p.is_x_type() ? 0 : p.is_z_type() ? 1 : 2; };
    std::stable_sort(all.begin(), all.end(),
                     [&](const PauliString &a, const PauliString &b) { return rank_of(a) < rank_of(b); });
    c.stabilizers = all;

    for (size_t j = 0; j < inner.k; j++) {
        for (size_t i = 0; i < outer.k; i++) {
            c.logical_x.push_back(lift(outer.logical_x[i], j));
            c.logical_z.push_back(lift(outer.logical_z[i], j));
        }
    }
    c.label_x = c.logical_x;
    c.label_z = c.logical_z;
    auto out_bad = c.problems();
    if (!out_bad.empty()) {
        throw StructuralError("concatenate: result invalid: " + out_bad.front());
    }
    return c;
}

StabilizerCode concatenate_self(const StabilizerCode &code) {
    if (code.k != 2) {
        throw StructuralError("concatenate_self: requires k = 2, got k = " + std::to_string(code.k));
    }
    return concatenate(code, code);
}

std::optional<int> verify_distance(const StabilizerCode &code, int max_weight, size_t max_qubits) {
    return search(code, max_weight, max_qubits, LetterMode::All, true);
}

std::optional<int> verify_distance_serial(const StabilizerCode &code, int max_weight, size_t max_qubits) {
    return search(code, max_weight, max_qubits, LetterMode::All, false);
}

CssDistances verify_css_distances(const StabilizerCode &code, int max_weight, size_t max_qubits) {
    CssDistances d;
    d.x_distance = search(code, max_weight, max_qubits, LetterMode::XOnly, true);
    d.z_distance = search(code, max_weight, max_qubits, LetterMode::ZOnly, true);
    return d;
}

CodewordTable codeword_table(const StabilizerCode &code) {
    if (!code.is_css()) {
        throw UnsupportedError("codeword_table: code " + code.name + " is not CSS");
    }
    if (code.n > 24) {
        throw CapacityError("codeword_table: n=" + std::to_string(code.n) + " exceeds 24");
    }
    std::vector<uint64_t> checks;
    for (const auto &s : code.z_stabilizers()) {
        checks.push_back(z_mask(s));
    }
    std::vector<uint64_t> labels;
    for (const auto &l : code.label_z) {
        labels.push_back(z_mask(l));
    }
    CodewordTable table;
    for (uint64_t s = 0; s < (uint64_t{1} << code.n); s++) {
        bool ok = true;
        for (uint64_t c : checks) {
            if (mask_parity(c, s)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        std::string label(code.k, '0');
        for (size_t j = 0; j < code.k; j++) {
            label[j] = mask_parity(labels[j], s) ? '1' : '0';
        }
        std::string bits(code.n, '0');
        for (size_t q = 0; q < code.n; q++) {
            bits[q] = ((s >> q) & 1) ? '1' : '0';
        }
        table[label].push_back(bits);
    }
    for (auto &[label, sup] : table) {
        std::sort(sup.begin(), sup.end());
    }
    return table;
}

std::string code_to_text(const StabilizerCode &code) {
    std::ostringstream out;
    out << "code " << code.name << " n=" << code.n << " k=" << code.k << " d=";
    if (code.d) {
        out << *code.d;
    } else {
        out << "?";
    }
    out << "\n";
    for (const auto &s : code.stabilizers) {
        out << "S " << s.str() << "\n";
    }
    for (const auto &s : code.logical_x) {
        out << "LX " << s.str() << "\n";
    }
    for (const auto &s : code.logical_z) {
        out << "LZ " << s.str() << "\n";
    }
    for (const auto &s : code.label_x) {
        out << "RX " << s.str() << "\n";
    }
    for (const auto &s : code.label_z) {
        out << "RZ " << s.str() << "\n";
    }
    return out.str();
}

StabilizerCode code_from_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    StabilizerCode c;
    int line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "code") {
            std::string tok;
            ls >> c.name;
            while (ls >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) {
                    throw ConfigError("code text line " + std::to_string(line_no) + ": bad field " + tok);
                }
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "n") {
                    c.n = std::stoul(val);
                } else if (key == "k") {
                    c.k = std::stoul(val);
                } else if (key == "d") {
                    if (val != "?") {
                        c.d = std::stoi(val);
                    }
                } else {
                    throw ConfigError("code text line " + std::to_string(line_no) + ": unknown key " + key);
                }
            }
            header = true;
            continue;
        }
        std::string p;
        ls >> p;
        PauliString ps = PauliString::from_text(p);
        if (tag == "S") {
            c.stabilizers.push_back(ps);
        } else if (tag == "LX") {
            c.logical_x.push_back(ps);
        } else if (tag == "LZ") {
            c.logical_z.push_back(ps);
        } else if (tag == "RX") {
            c.label_x.push_back(ps);
        } else if (tag == "RZ") {
            c.label_z.push_back(ps);
        } else {
            throw ConfigError("code text line " + std::to_string(line_no) + ": unknown tag " + tag);
        }
    }
    if (!header) {
        throw ConfigError("code text: missing header line");
    }
    return c;
}

}  // namespace mqec
