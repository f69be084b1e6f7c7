#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "extval/joint_distribution.hpp"

namespace extval {

// Per-object (class, cluster) pairs with labels canonicalized to dense
// 0-based ids in order of first appearance.
class Labeling {
public:
    static Labeling from_strings(std::span<const std::string> classes,
                                 std::span<const std::string> clusters);
    static Labeling from_ids(std::span<const std::int64_t> classes,
                             std::span<const std::int64_t> clusters);

    std::size_t size() const { return class_ids_.size(); }
    std::size_t num_classes() const { return class_labels_.size(); }
    std::size_t num_clusters() const { return cluster_labels_.size(); }

    std::span<const std::size_t> class_ids() const { return class_ids_; }
    std::span<const std::size_t> cluster_ids() const { return cluster_ids_; }
    const std::vector<std::string>& class_labels() const { return class_labels_; }
    const std::vector<std::string>& cluster_labels() const { return cluster_labels_; }

private:
    std::vector<std::size_t> class_ids_;
    std::vector<std::size_t> cluster_ids_;
    std::vector<std::string> class_labels_;
    std::vector<std::string> cluster_labels_;
};

// |C| x |K| table of (possibly fractional) object counts h(c,k).
class ContingencyTable {
public:
    ContingencyTable() = default;

    // counts is row-major, classes x clusters. Empty label vectors get
    // 1-based numeric names.
    ContingencyTable(std::size_t num_classes, std::size_t num_clusters, std::vector<double> counts,
                     std::vector<std::string> class_labels = {},
                     std::vector<std::string> cluster_labels = {});

    static ContingencyTable from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t num_classes() const { return rows_; }
    std::size_t num_clusters() const { return cols_; }
    double n() const { return n_; }
    double at(std::size_t c, std::size_t k) const { return counts_[c * cols_ + k]; }

    const std::vector<double>& counts() const { return counts_; }
    const std::vector<double>& row_marginal() const { return row_marginal_; }
    const std::vector<double>& col_marginal() const { return col_marginal_; }
    const std::vector<std::string>& class_labels() const { return class_labels_; }
    const std::vector<std::string>& cluster_labels() const { return cluster_labels_; }

    bool is_integral(double tol = 1e-9) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> counts_;
    std::vector<double> row_marginal_;
    std::vector<double> col_marginal_;
    std::vector<std::string> class_labels_;
    std::vector<std::string> cluster_labels_;
    double n_ = 0.0;
};

// The 2x2 pair table. Index 0 means "same": a01 counts pairs in the same
// class but different clusters, a10 pairs in different classes but the same
// cluster.
struct PairCounts {
    double a00 = 0.0;
    double a01 = 0.0;
    double a10 = 0.0;
    double a11 = 0.0;
    double total = 0.0;

    double same_class() const { return a00 + a01; }   // a0.
    double same_cluster() const { return a00 + a10; } // a.0

    bool operator==(const PairCounts&) const = default;
};

// x(x-1)/2, applied verbatim to fractional x.
inline double pairs_of(double x) { return x * (x - 1.0) / 2.0; }

ContingencyTable build_contingency(const Labeling& labels);

PairCounts pair_counts_from_table(const ContingencyTable& table);

// O(n^2) enumeration of every unordered pair.
PairCounts pair_counts_bruteforce(const Labeling& labels);

// h(c,k) = n p(c,k), unrounded.
ContingencyTable expected_table(const JointDistribution& p, std::size_t n);

// Rounds every cell to the nearest integer; marginals and n are recomputed
// from the rounded cells.
ContingencyTable rounded_table(const ContingencyTable& table);

} // namespace extval
