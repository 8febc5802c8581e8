#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "toporeg/errors.hpp"

namespace toporeg {

// A point cloud is an n x d matrix, one point per row. Row order is
// significant everywhere (CSV files, diagrams, embeddings).
using PointCloud = Eigen::MatrixXd;

inline void validate_point_cloud(const PointCloud& cloud) {
    if (cloud.rows() < 1)
        throw invalid_input_error("point cloud must contain at least one point");
    if (cloud.cols() < 1)
        throw invalid_input_error("point cloud must have dimension >= 1");
    if (!cloud.allFinite())
        throw invalid_input_error("point cloud contains non-finite coordinates");
}

/// Euclidean distance between rows i and j.
inline double point_distance(const PointCloud& cloud, int i, int j) {
    return (cloud.row(i) - cloud.row(j)).norm();
}

// --- headerless CSV, '.' decimals, one point per row ---

inline PointCloud read_point_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open point cloud file: " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        int field = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            ++field;
            const char* first = line.data() + pos;
            const char* last = line.data() + comma;
            while (first < last && (*first == ' ' || *first == '\t')) ++first;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(first, last, v);
            while (ptr < last && (*ptr == ' ' || *ptr == '\t' || *ptr == '\r')) ++ptr;
            if (ec != std::errc() || ptr != last)
                throw io_error(path + ":" + std::to_string(line_no) + ": field " +
                               std::to_string(field) + " is not a number");
            row.push_back(v);
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw io_error(path + ":" + std::to_string(line_no) +
                           ": inconsistent column count");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw io_error(path + ": empty point cloud file");

    PointCloud cloud(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j)
            cloud(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    validate_point_cloud(cloud);
    return cloud;
}

/// Shortest decimal form that round-trips a double (C locale, '.' decimals).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shorter %.15g / %.16g form when it round-trips
    for (int prec = 15; prec <= 16; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        double back = 0.0;
        std::from_chars(shorter, shorter + std::char_traits<char>::length(shorter), back);
        if (back == v) return shorter;
    }
    return buf;
}

inline void write_point_cloud_csv(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write point cloud file: " + path);
    for (Eigen::Index i = 0; i < cloud.rows(); ++i) {
        for (Eigen::Index j = 0; j < cloud.cols(); ++j) {
            if (j) out << ',';
            out << format_double(cloud(i, j));
        }
        out << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

} // namespace toporeg
