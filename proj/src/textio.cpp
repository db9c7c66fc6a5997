#include "critline/textio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace critline {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
    return raw_field(key, "\"" + value + "\"");
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
    return raw_field(key, fmt17(value));
}

JsonWriter& JsonWriter::field(const std::string& key, std::int64_t value) {
    return raw_field(key, std::to_string(value));
}

JsonWriter& JsonWriter::raw_field(const std::string& key, const std::string& raw_json) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"" + key + "\":" + raw_json;
    return *this;
}

std::string JsonWriter::str() const { return "{" + body_ + "}"; }

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_failure("cannot open '" + path + "'");
    std::vector<std::pair<double, double>> out;
    std::string line;
    bool first_line = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;  // metadata/comment lines
        for (char& c : line)
            if (c == ',' || c == '\t' || c == ';') c = ' ';
        std::istringstream row(line);
        double x, y;
        if (row >> x >> y) {
            out.emplace_back(x, y);
        } else if (first_line) {
            // header line: skip
        } else {
            throw io_failure("unparsable row in '" + path + "': " + line);
        }
        first_line = false;
    }
    if (out.empty()) throw io_failure("no data rows in '" + path + "'");
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::string s = text;
    for (char& c : s)
        if (c == ',' || c == ';') c = ' ';
    std::istringstream in(s);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    std::string rest;
    if (in.clear(), in >> rest)
        throw invalid_input("unparsable numeric list: '" + text + "'");
    if (out.empty()) throw invalid_input("empty numeric list");
    return out;
}

} // namespace critline
