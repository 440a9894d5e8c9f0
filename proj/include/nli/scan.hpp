#pragma once

#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nli {

// Labeled numeric table produced by sweeps; the harness serializes one of
// these per CSV with its metadata in a JSON sidecar.
struct ScanResult {
    std::string name;
    std::vector<std::string> columns;
    std::vector<double> data;  // row-major
    std::map<std::string, std::string> metadata;
    std::vector<std::string> warnings;

    std::size_t rows() const {
        return columns.empty() ? 0 : data.size() / columns.size();
    }

    void add_row(std::initializer_list<double> row) {
        if (row.size() != columns.size())
            throw std::invalid_argument("ScanResult: row length does not match columns");
        data.insert(data.end(), row.begin(), row.end());
    }
};

}  // namespace nli
