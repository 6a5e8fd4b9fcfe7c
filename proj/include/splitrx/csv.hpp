// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace splitrx {

// CSV with '#'-prefixed metadata comments, then a header row, then data
// rows. Numbers print with %.17g so re-runs with one seed are byte-identical.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : os_(path) {
        if (!os_) throw std::invalid_argument("cannot open output file: " + path);
    }

    void comment(const std::string& key, const std::string& value) {
        os_ << "# " << key << ": " << value << "\n";
    }

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            os_ << (i ? "," : "") << cols[i];
        }
        os_ << "\n";
    }

    void field(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        sep();
        os_ << buf;
    }
    void field(long long v) {
        sep();
        os_ << v;
    }
    void field(const std::string& v) {
        sep();
        os_ << v;
    }
    void end_row() {
        os_ << "\n";
        first_ = true;
    }

    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

private:
    void sep() {
        if (!first_) os_ << ",";
        first_ = false;
    }
    std::ofstream os_;
    bool first_ = true;
};

}  // namespace splitrx
