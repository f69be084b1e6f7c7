#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "extval/tables.hpp"

namespace fixture {

// The published 5 x 8 joint distribution, typed in by hand.
inline std::vector<std::vector<double>> table1_probabilities() {
    std::vector<std::vector<double>> p(5, std::vector<double>(8, 0.0));
    for (int c = 0; c < 5; ++c)
        for (int k = 0; k < 8; ++k)
            p[c][k] = k >= 5 ? 0.02 : (k == c ? 0.10 : 0.01);
    return p;
}

inline extval::ContingencyTable table1_counts(double n) {
    auto p = table1_probabilities();
    for (auto& row : p)
        for (auto& x : row)
            x *= n;
    return extval::ContingencyTable::from_rows(p);
}

// 500 objects whose contingency table is table1_counts(500).
inline std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> table1_labels() {
    std::vector<std::int64_t> classes, clusters;
    for (int c = 0; c < 5; ++c)
        for (int k = 0; k < 8; ++k) {
            int count = k >= 5 ? 10 : (k == c ? 50 : 5);
            for (int i = 0; i < count; ++i) {
                classes.push_back(c + 1);
                clusters.push_back(k + 1);
            }
        }
    return {classes, clusters};
}

inline extval::ContingencyTable diagonal(int size, double per_cell) {
    std::vector<std::vector<double>> rows(size, std::vector<double>(size, 0.0));
    for (int i = 0; i < size; ++i)
        rows[i][i] = per_cell;
    return extval::ContingencyTable::from_rows(rows);
}

inline extval::ContingencyTable uniform(int classes, int clusters, double per_cell) {
    return extval::ContingencyTable::from_rows(
        std::vector<std::vector<double>>(classes, std::vector<double>(clusters, per_cell)));
}

} // namespace fixture
