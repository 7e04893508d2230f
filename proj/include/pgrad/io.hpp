#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pgrad/solver.hpp"

namespace pgrad {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Shortest 17-significant-digit form; round-trips any finite double exactly.
// NaN and infinities normalize to "nan", "inf", "-inf".
std::string fp17(double v);
double parse_double(const std::string& s);  // strict: whole string must parse

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// grid.csv: header i,j,r,theta,p,dp_plus,dp_minus,status then one row per
// node in row-major order.  Reading restores nodes and dimensions only;
// write(read(x)) is byte-identical to x.
void write_grid_csv(const std::string& path, const CharGrid& grid);
std::string grid_csv_string(const CharGrid& grid);
CharGrid read_grid_csv(const std::string& path);
CharGrid parse_grid_csv(const std::string& text);

// Small ordered JSON emitter for the fixed-shape reports; two-space pretty
// printing, insertion order preserved, numbers via fp17.
class JsonBuilder {
  public:
    JsonBuilder& key(const std::string& k);
    JsonBuilder& value_number(double v);
    JsonBuilder& value_int(long long v);
    JsonBuilder& value_string(const std::string& s);
    JsonBuilder& value_bool(bool b);
    JsonBuilder& value_null();
    JsonBuilder& begin_object();
    JsonBuilder& end_object();
    JsonBuilder& begin_array();
    JsonBuilder& end_array();
    std::string str() const;

  private:
    struct Frame {
        bool is_object;
        bool first = true;
    };
    std::string out_;
    std::vector<Frame> stack_;
    bool pending_key_ = false;

    void before_value();
    void newline_indent();
};

}  // namespace pgrad
