#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "extval/tables.hpp"

namespace extval {

// All quantities below are in bits.

// -sum p log2 p over a marginal of counts, with 0 log 0 = 0.
double empirical_entropy(std::span<const double> marginal);

// Plug-in estimate of H(C|K) from the table:
//   -sum_{c,k} h(c,k)/n * log2(h(c,k)/h(k))
double empirical_conditional_entropy(const ContingencyTable& table);

double mutual_information(const ContingencyTable& table);

// log2 of the number of |C|-component non-negative integer vectors summing
// to h_k, i.e. log2 C(h_k + |C| - 1, |C| - 1). Fractional h_k uses the
// gamma-function extension.
double column_code_length(double h_k, std::size_t num_classes);

// Total bits to enumeratively encode every column given {h(k)}.
double table_code_length(const ContingencyTable& table);

// Per-object description length of the class labels given the clusters:
// conditional entropy plus the table code length divided by n. The constant
// log n for transmitting |C| is left out.
double q0(const ContingencyTable& table);

// h_cond + |K| (|C| - 1) log2(n) / n
double q0_asymptotic(double h_cond, std::size_t num_clusters, std::size_t num_classes, double n);

// Lower bound of q0 over clusterings against this class marginal; attained
// by the perfect clustering.
double q0_min(std::span<const double> class_marginal);

// Upper bound H(C) + log2 |C|; not the exact maximum.
double q0_max(std::span<const double> class_marginal);

// (q0_max - q0) / (q0_max - q0_min). Throws DegenerateNormalization when the
// bounds coincide (e.g. a single class).
double q2(const ContingencyTable& table);

struct QScores {
    double h_cond = 0.0;
    double model_cost_per_object = 0.0;
    double q0 = 0.0;
    double q0_min = 0.0;
    double q0_max = 0.0;
    std::optional<double> q2; // empty when the normalization is degenerate
    double mutual_information = 0.0;
};

QScores q_scores(const ContingencyTable& table);

} // namespace extval
