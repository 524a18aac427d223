#include "swim/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace swim {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (ch != '\r') {
            cell += ch;
        }
    }
    cells.push_back(cell);
    return cells;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
    const std::string t = trimmed(cell);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("csv: cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() && in.peek() == EOF) break;  // trailing newline
        rows.push_back(split_line(line));
    }
    if (rows.empty()) throw Error("csv: '" + path + "' is empty");
    return rows;
}

std::string column_name(const std::vector<std::string>& header, std::size_t col) {
    return col < header.size() ? header[col] : "#" + std::to_string(col);
}

}  // namespace

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
    if (schema.target_columns.empty())
        throw Error("csv schema: at least one target column required");
    auto rows = read_rows(path);

    std::vector<std::string> header;
    std::size_t first_data = 0;
    const std::size_t n_cols = rows[0].size();
    if (schema.has_header) {
        for (const auto& h : rows[0]) header.push_back(trimmed(h));
        first_data = 1;
        if (rows.size() < 2) throw Error("csv: '" + path + "' has a header but no data rows");
    }

    // Resolve target columns by name first, then as 0-based indices.
    std::vector<std::size_t> target_idx;
    for (const auto& t : schema.target_columns) {
        const auto it = std::find(header.begin(), header.end(), t);
        if (it != header.end()) {
            target_idx.push_back(static_cast<std::size_t>(it - header.begin()));
            continue;
        }
        char* end = nullptr;
        const long v = std::strtol(t.c_str(), &end, 10);
        if (end == t.c_str() + t.size() && v >= 0 && static_cast<std::size_t>(v) < n_cols) {
            target_idx.push_back(static_cast<std::size_t>(v));
            continue;
        }
        throw Error("csv: unknown target column '" + t + "' in '" + path + "'");
    }
    std::vector<bool> is_target(n_cols, false);
    for (std::size_t c : target_idx) {
        if (is_target[c]) throw Error("csv: duplicate target column " + column_name(header, c));
        is_target[c] = true;
    }
    if (target_idx.size() >= n_cols)
        throw Error("csv: no feature columns left after removing targets");

    std::vector<std::size_t> feature_idx;
    for (std::size_t c = 0; c < n_cols; ++c)
        if (!is_target[c]) feature_idx.push_back(c);

    if (schema.label_mode == LabelMode::Categorical && target_idx.size() != 1)
        throw Error("csv: categorical label mode expects exactly one target column");

    const std::size_t m = rows.size() - first_data;
    const std::size_t d = feature_idx.size();
    std::vector<double> xdata(m * d, 0.0);
    std::vector<bool> missing(m * d, false);
    std::vector<std::vector<std::string>> raw_targets(m);

    for (std::size_t r = 0; r < m; ++r) {
        const auto& cells = rows[first_data + r];
        const std::size_t line_no = first_data + r + 1;
        if (cells.size() != n_cols) {
            throw Error("csv: row " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(n_cols));
        }
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t c = feature_idx[k];
            double v;
            if (parse_double(cells[c], v)) {
                xdata[r * d + k] = v;
            } else if (trimmed(cells[c]).empty() && schema.impute_median) {
                missing[r * d + k] = true;
            } else {
                const char* what = trimmed(cells[c]).empty() ? "missing value"
                                                             : "non-numeric value";
                throw Error("csv: " + std::string(what) + " at row " + std::to_string(line_no) +
                            ", column " + column_name(header, c));
            }
        }
        for (std::size_t t : target_idx) raw_targets[r].push_back(trimmed(cells[t]));
    }

    if (schema.impute_median) {
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<double> present;
            for (std::size_t r = 0; r < m; ++r)
                if (!missing[r * d + k]) present.push_back(xdata[r * d + k]);
            if (present.empty()) {
                throw Error("csv: column " + column_name(header, feature_idx[k]) +
                            " has no values to impute from");
            }
            std::sort(present.begin(), present.end());
            const double med = present.size() % 2
                                   ? present[present.size() / 2]
                                   : 0.5 * (present[present.size() / 2 - 1] +
                                            present[present.size() / 2]);
            for (std::size_t r = 0; r < m; ++r)
                if (missing[r * d + k]) xdata[r * d + k] = med;
        }
    }

    Dataset ds;
    ds.x = Matrix(m, d, std::move(xdata));
    for (std::size_t k = 0; k < d; ++k)
        ds.feature_names.push_back(column_name(header, feature_idx[k]));

    if (schema.label_mode == LabelMode::Numeric) {
        const std::size_t k_out = target_idx.size();
        std::vector<double> ydata(m * k_out);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t t = 0; t < k_out; ++t) {
                if (!parse_double(raw_targets[r][t], ydata[r * k_out + t])) {
                    throw Error("csv: non-numeric target at row " +
                                std::to_string(first_data + r + 1) + ", column " +
                                column_name(header, target_idx[t]));
                }
            }
        }
        ds.y = Matrix(m, k_out, std::move(ydata));
        return ds;
    }

    // Categorical: one-hot in first-seen order.
    std::map<std::string, std::size_t> seen;
    ds.labels.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
        const auto [it, inserted] = seen.emplace(raw_targets[r][0], ds.label_names.size());
        if (inserted) ds.label_names.push_back(raw_targets[r][0]);
        ds.labels[r] = it->second;
    }
    ds.y = Matrix(m, ds.label_names.size());
    for (std::size_t r = 0; r < m; ++r) ds.y(r, ds.labels[r]) = 1.0;
    return ds;
}

Matrix load_feature_csv(const std::string& path, bool has_header) {
    auto rows = read_rows(path);
    std::vector<std::string> header;
    std::size_t first_data = 0;
    if (has_header) {
        for (const auto& h : rows[0]) header.push_back(trimmed(h));
        first_data = 1;
        if (rows.size() < 2) throw Error("csv: '" + path + "' has a header but no data rows");
    }
    const std::size_t n_cols = rows[0].size();
    const std::size_t m = rows.size() - first_data;
    std::vector<double> data(m * n_cols);
    for (std::size_t r = 0; r < m; ++r) {
        const auto& cells = rows[first_data + r];
        const std::size_t line_no = first_data + r + 1;
        if (cells.size() != n_cols) {
            throw Error("csv: row " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(n_cols));
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (!parse_double(cells[c], data[r * n_cols + c])) {
                throw Error("csv: non-numeric value at row " + std::to_string(line_no) +
                            ", column " + column_name(header, c));
            }
        }
    }
    return Matrix(m, n_cols, std::move(data));
}

namespace {

constexpr const char* kMagic = "swimnet-model";
constexpr int kVersion = 1;

void write_double(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

void write_row(std::ostream& os, std::span<const double> row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ' ';
        write_double(os, row[i]);
    }
    os << '\n';
}

class LineReader {
public:
    explicit LineReader(const std::string& path) : in_(path), path_(path) {
        if (!in_) throw Error("model: cannot open '" + path + "'");
    }

    std::string next() {
        std::string line;
        if (!std::getline(in_, line)) {
            throw Error("model: '" + path_ + "' truncated at line " + std::to_string(line_no_ + 1));
        }
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    std::size_t line_no() const { return line_no_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& why) const {
        throw Error("model: '" + path_ + "' line " + std::to_string(line_no_) + ": " + why);
    }

private:
    std::ifstream in_;
    std::string path_;
    std::size_t line_no_ = 0;
};

std::vector<double> parse_doubles(LineReader& r, const std::string& line, std::size_t expect) {
    std::vector<double> out;
    out.reserve(expect);
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) r.fail("bad number '" + tok + "'");
        if (!std::isfinite(v)) r.fail("non-finite value");
        out.push_back(v);
    }
    if (out.size() != expect)
        r.fail("expected " + std::to_string(expect) + " values, got " + std::to_string(out.size()));
    return out;
}

}  // namespace

void save_model(const SampledNetwork& net, const std::string& path) {
    if (!net.trained()) throw Error("save_model: network has no output layer");
    net.validate();
    std::ofstream os(path);
    if (!os) throw Error("save_model: cannot write '" + path + "'");
    os << kMagic << " v" << kVersion << '\n';
    os << "activation " << net.activation.name() << ' ';
    write_double(os, net.activation.s1);
    os << ' ';
    write_double(os, net.activation.s2);
    os << '\n';
    os << "input_dim " << net.input_dim << '\n';
    os << "seed " << net.meta.seed << '\n';
    os << "config " << net.meta.config_echo << '\n';
    os << "residual ";
    write_double(os, net.meta.train_residual_norm);
    os << '\n';
    os << "labels " << net.meta.class_labels.size() << '\n';
    for (const auto& l : net.meta.class_labels) os << l << '\n';
    os << "hidden_layers " << net.hidden.size() << '\n';
    for (std::size_t l = 0; l < net.hidden.size(); ++l) {
        const auto& layer = net.hidden[l];
        os << "layer " << l << ' ' << layer.weights.rows() << ' ' << layer.weights.cols() << '\n';
        for (std::size_t i = 0; i < layer.weights.rows(); ++i) write_row(os, layer.weights.row(i));
        write_row(os, layer.biases);
    }
    os << "output " << net.output_weights.rows() << ' ' << net.output_weights.cols() << '\n';
    for (std::size_t i = 0; i < net.output_weights.rows(); ++i)
        write_row(os, net.output_weights.row(i));
    write_row(os, net.output_bias);
    os << "end\n";
    if (!os) throw Error("save_model: write to '" + path + "' failed");
}

SampledNetwork load_model(const std::string& path) {
    LineReader r(path);
    SampledNetwork net;
    {
        std::istringstream is(r.next());
        std::string magic, ver;
        is >> magic >> ver;
        if (magic != kMagic) r.fail("not a swimnet model file");
        if (ver != "v" + std::to_string(kVersion))
            r.fail("unsupported version '" + ver + "' (expected v" + std::to_string(kVersion) + ")");
    }
    {
        std::istringstream is(r.next());
        std::string key, name;
        double s1, s2;
        is >> key >> name >> s1 >> s2;
        if (key != "activation" || !is) r.fail("expected activation line");
        net.activation = Activation::with_constants(Activation::parse(name).kind, s1, s2);
    }
    auto read_kv = [&r](const std::string& key) {
        std::istringstream is(r.next());
        std::string k;
        is >> k;
        if (k != key) r.fail("expected '" + key + "' line");
        return is;
    };
    {
        auto is = read_kv("input_dim");
        is >> net.input_dim;
        if (!is) r.fail("bad input_dim");
    }
    {
        auto is = read_kv("seed");
        is >> net.meta.seed;
        if (!is) r.fail("bad seed");
    }
    {
        const std::string line = r.next();
        if (line.rfind("config ", 0) != 0) r.fail("expected config line");
        net.meta.config_echo = line.substr(7);
    }
    {
        auto is = read_kv("residual");
        is >> net.meta.train_residual_norm;
        if (!is) r.fail("bad residual");
    }
    {
        std::size_t n;
        auto is = read_kv("labels");
        is >> n;
        if (!is) r.fail("bad label count");
        for (std::size_t i = 0; i < n; ++i) net.meta.class_labels.push_back(r.next());
    }
    std::size_t n_layers;
    {
        auto is = read_kv("hidden_layers");
        is >> n_layers;
        if (!is) r.fail("bad hidden layer count");
    }
    for (std::size_t l = 0; l < n_layers; ++l) {
        std::size_t idx, rows, cols;
        auto is = read_kv("layer");
        is >> idx >> rows >> cols;
        if (!is || idx != l) r.fail("bad layer header");
        LayerParams layer;
        layer.weights = Matrix::uninitialized(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            const auto vals = parse_doubles(r, r.next(), cols);
            std::copy(vals.begin(), vals.end(), layer.weights.row(i).begin());
        }
        layer.biases = parse_doubles(r, r.next(), rows);
        net.hidden.push_back(std::move(layer));
    }
    {
        std::size_t rows, cols;
        auto is = read_kv("output");
        is >> rows >> cols;
        if (!is) r.fail("bad output header");
        net.output_weights = Matrix::uninitialized(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            const auto vals = parse_doubles(r, r.next(), cols);
            std::copy(vals.begin(), vals.end(), net.output_weights.row(i).begin());
        }
        net.output_bias = parse_doubles(r, r.next(), rows);
    }
    if (r.next() != "end") r.fail("expected 'end'");
    try {
        net.validate();
    } catch (const Error& e) {
        throw Error("model: '" + path + "': " + e.what());
    }
    return net;
}

void write_results_csv(const std::string& path, const std::vector<ExperimentRow>& rows) {
    std::ofstream os(path);
    if (!os) throw Error("results: cannot write '" + path + "'");
    os << "method,depth,width,seed,metric,value,fit_seconds\n";
    for (const auto& row : rows) {
        os << row.method << ',' << row.depth << ',' << row.width << ',' << row.seed << ','
           << (row.failed ? "failed:" + row.metric : row.metric) << ',';
        write_double(os, row.value);
        os << ',';
        write_double(os, row.fit_seconds);
        os << '\n';
    }
    if (!os) throw Error("results: write to '" + path + "' failed");
}

}  // namespace swim
