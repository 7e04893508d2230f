#include "pgrad/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pgrad {

std::string fp17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s.empty()) throw IoError("empty numeric field");
    const char* c = s.c_str();
    char* end = nullptr;
    double v = std::strtod(c, &end);
    if (end != c + s.size()) throw IoError("bad numeric field: " + s);
    return v;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("read failed: " + path);
    return ss.str();
}

static const char* kGridHeader = "i,j,r,theta,p,dp_plus,dp_minus,status";

std::string grid_csv_string(const CharGrid& grid) {
    std::string out = kGridHeader;
    out += '\n';
    for (std::size_t i = 0; i < grid.n_rows; ++i)
        for (std::size_t j = 0; j < grid.n_cols; ++j) {
            const StateNode& n = grid.at(i, j);
            out += std::to_string(i);
            out += ',';
            out += std::to_string(j);
            out += ',';
            out += fp17(n.r);
            out += ',';
            out += fp17(n.theta);
            out += ',';
            out += fp17(n.p);
            out += ',';
            out += fp17(n.dp_plus);
            out += ',';
            out += fp17(n.dp_minus);
            out += ',';
            out += status_name(n.status);
            out += '\n';
        }
    return out;
}

void write_grid_csv(const std::string& path, const CharGrid& grid) {
    write_text_file(path, grid_csv_string(grid));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::size_t parse_index(const std::string& s) {
    if (s.empty()) throw IoError("empty index field");
    const char* c = s.c_str();
    char* end = nullptr;
    unsigned long v = std::strtoul(c, &end, 10);
    if (end != c + s.size()) throw IoError("bad index field: " + s);
    return static_cast<std::size_t>(v);
}

}  // namespace

CharGrid parse_grid_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("grid csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kGridHeader) throw IoError("grid csv: unexpected header: " + line);

    struct Row {
        std::size_t i, j;
        StateNode n;
    };
    std::vector<Row> rows;
    std::size_t max_i = 0, max_j = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 8) throw IoError("grid csv: expected 8 fields, got row: " + line);
        Row row;
        row.i = parse_index(f[0]);
        row.j = parse_index(f[1]);
        row.n.r = parse_double(f[2]);
        row.n.theta = parse_double(f[3]);
        row.n.p = parse_double(f[4]);
        row.n.dp_plus = parse_double(f[5]);
        row.n.dp_minus = parse_double(f[6]);
        try {
            row.n.status = status_from_name(f[7]);
        } catch (const std::invalid_argument& e) {
            throw IoError(std::string("grid csv: ") + e.what());
        }
        max_i = std::max(max_i, row.i);
        max_j = std::max(max_j, row.j);
        rows.push_back(row);
    }
    if (rows.empty()) throw IoError("grid csv: no data rows");

    CharGrid g;
    g.n_rows = max_i + 1;
    g.n_cols = max_j + 1;
    if (rows.size() != g.n_rows * g.n_cols)
        throw IoError("grid csv: row count does not fill the index grid");
    g.nodes.assign(rows.size(), StateNode{});
    g.diag.assign(rows.size(), NodeDiag{});
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].i != k / g.n_cols || rows[k].j != k % g.n_cols)
            throw IoError("grid csv: rows out of row-major order");
        g.nodes[k] = rows[k].n;
    }
    return g;
}

CharGrid read_grid_csv(const std::string& path) {
    return parse_grid_csv(read_text_file(path));
}

void JsonBuilder::newline_indent() {
    out_ += '\n';
    out_.append(2 * stack_.size(), ' ');
}

void JsonBuilder::before_value() {
    if (stack_.empty()) return;
    Frame& top = stack_.back();
    if (top.is_object) {
        if (!pending_key_) throw IoError("json: value in object without key");
        pending_key_ = false;
        return;
    }
    if (!top.first) out_ += ',';
    top.first = false;
    newline_indent();
}

JsonBuilder& JsonBuilder::key(const std::string& k) {
    if (stack_.empty() || !stack_.back().is_object) throw IoError("json: key outside object");
    if (pending_key_) throw IoError("json: key after key");
    if (!stack_.back().first) out_ += ',';
    stack_.back().first = false;
    newline_indent();
    out_ += '"';
    out_ += k;
    out_ += "\": ";
    pending_key_ = true;
    return *this;
}

JsonBuilder& JsonBuilder::value_number(double v) {
    before_value();
    if (std::isfinite(v))
        out_ += fp17(v);
    else
        out_ += "null";
    return *this;
}

JsonBuilder& JsonBuilder::value_int(long long v) {
    before_value();
    out_ += std::to_string(v);
    return *this;
}

JsonBuilder& JsonBuilder::value_string(const std::string& s) {
    before_value();
    out_ += '"';
    for (char c : s) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            case '\r': out_ += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out_ += buf;
                } else {
                    out_ += c;
                }
        }
    }
    out_ += '"';
    return *this;
}

JsonBuilder& JsonBuilder::value_bool(bool b) {
    before_value();
    out_ += b ? "true" : "false";
    return *this;
}

JsonBuilder& JsonBuilder::value_null() {
    before_value();
    out_ += "null";
    return *this;
}

JsonBuilder& JsonBuilder::begin_object() {
    before_value();
    out_ += '{';
    stack_.push_back({true, true});
    return *this;
}

JsonBuilder& JsonBuilder::end_object() {
    if (stack_.empty() || !stack_.back().is_object) throw IoError("json: mismatched end_object");
    bool empty = stack_.back().first;
    stack_.pop_back();
    if (!empty) newline_indent();
    out_ += '}';
    return *this;
}

JsonBuilder& JsonBuilder::begin_array() {
    before_value();
    out_ += '[';
    stack_.push_back({false, true});
    return *this;
}

JsonBuilder& JsonBuilder::end_array() {
    if (stack_.empty() || stack_.back().is_object) throw IoError("json: mismatched end_array");
    bool empty = stack_.back().first;
    stack_.pop_back();
    if (!empty) newline_indent();
    out_ += ']';
    return *this;
}

std::string JsonBuilder::str() const {
    if (!stack_.empty()) throw IoError("json: unterminated document");
    return out_ + "\n";
}

}  // namespace pgrad
