#pragma once

#include <limits>
#include <vector>

#include "toporeg/errors.hpp"

namespace toporeg {

struct AssignmentResult {
    std::vector<int> col_of_row; // size n_rows, assigned column per row
    double total = 0.0;
};

/**
 * Exact rectangular min-cost assignment (n_rows <= n_cols) by shortest
 * augmenting paths with dual potentials, O(n_rows^2 * n_cols). `cost` is
 * row-major with finite entries.
 */
inline AssignmentResult solve_assignment(const std::vector<double>& cost, int n_rows,
                                         int n_cols) {
    if (n_rows > n_cols)
        throw invalid_input_error("solve_assignment: requires n_rows <= n_cols");
    if (static_cast<int>(cost.size()) != n_rows * n_cols)
        throw invalid_input_error("solve_assignment: cost matrix size mismatch");

    AssignmentResult res;
    res.col_of_row.assign(n_rows, -1);
    if (n_rows == 0) return res;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n_rows, 0.0), v(n_cols, 0.0);
    std::vector<int> row_of_col(n_cols, -1);
    std::vector<double> shortest(n_cols);
    std::vector<int> prev_row(n_cols);
    std::vector<char> row_visited(n_rows), col_visited(n_cols);

    for (int cur = 0; cur < n_rows; ++cur) {
        std::fill(shortest.begin(), shortest.end(), kInf);
        std::fill(prev_row.begin(), prev_row.end(), -1);
        std::fill(row_visited.begin(), row_visited.end(), 0);
        std::fill(col_visited.begin(), col_visited.end(), 0);

        double min_val = 0.0;
        int i = cur;
        int sink = -1;
        while (sink < 0) {
            row_visited[i] = 1;
            double lowest = kInf;
            int index = -1;
            for (int j = 0; j < n_cols; ++j) {
                if (col_visited[j]) continue;
                const double r = min_val + cost[i * n_cols + j] - u[i] - v[j];
                if (r < shortest[j]) {
                    shortest[j] = r;
                    prev_row[j] = i;
                }
                if (shortest[j] < lowest ||
                    (shortest[j] == lowest && index >= 0 && row_of_col[j] < 0 &&
                     row_of_col[index] >= 0)) {
                    lowest = shortest[j];
                    index = j;
                }
            }
            min_val = lowest;
            const int j = index;
            if (row_of_col[j] < 0)
                sink = j;
            else
                i = row_of_col[j];
            col_visited[j] = 1;
        }

        u[cur] += min_val;
        for (int r = 0; r < n_rows; ++r)
            if (row_visited[r] && r != cur) u[r] += min_val - shortest[res.col_of_row[r]];
        for (int j = 0; j < n_cols; ++j)
            if (col_visited[j]) v[j] -= min_val - shortest[j];

        // augment along the recorded path
        int j = sink;
        while (true) {
            const int r = prev_row[j];
            row_of_col[j] = r;
            std::swap(res.col_of_row[r], j);
            if (r == cur) break;
        }
    }

    res.total = 0.0;
    for (int r = 0; r < n_rows; ++r) res.total += cost[r * n_cols + res.col_of_row[r]];
    return res;
}

} // namespace toporeg
