#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "extval/tables.hpp"

namespace extval {

// Pair-counting indices. M is the total pair count n(n-1)/2.

// (a00 + a11) / M
double rand_index(const PairCounts& a);

struct FlaggedValue {
    double value = 0.0;
    bool degenerate = false;
};

// a00 / (a00 + a01 + a10); 0 with the degenerate flag when no pair shares a
// class or a cluster.
FlaggedValue jaccard_index(const PairCounts& a);

// a00 / sqrt(a0. a.0)
double fowlkes_mallows(const PairCounts& a);

// Hubert-Schultz Gamma:
//   (M a00 - a0. a.0) / sqrt(a0. a.0 (M - a0.) (M - a.0))
double hubert_gamma(const PairCounts& a);

// Majority associations used by the Hamming distance. Ties go to the lowest
// index; an empty row or column maps to 0 and is flagged.
struct HammingAssignments {
    std::vector<std::size_t> class_of_cluster;
    std::vector<std::size_t> cluster_of_class;
    std::vector<bool> empty_cluster;
    std::vector<bool> empty_class;

    bool degenerate() const;
};

HammingAssignments hamming_assignments(const ContingencyTable& table);

// Sum over clusters of the mass outside each cluster's majority class.
double directional_hamming_class_given_cluster(const ContingencyTable& table);
// Sum over classes of the mass outside each class's majority cluster.
double directional_hamming_cluster_given_class(const ContingencyTable& table);

// 1 - (D_H(C;K) + D_H(K;C)) / 2n
double normalized_hamming(const ContingencyTable& table);

enum class Measure : std::size_t { Q0, Q2, Rand, Jaccard, FowlkesMallows, Gamma, Hamming };

inline constexpr std::size_t kNumMeasures = 7;

// Order used for reports and JSON.
inline constexpr std::array<Measure, kNumMeasures> kReportOrder = {
    Measure::Q0,    Measure::Q2,      Measure::Rand,   Measure::FowlkesMallows,
    Measure::Gamma, Measure::Jaccard, Measure::Hamming,
};

// Column order of grid CSV output.
inline constexpr std::array<Measure, kNumMeasures> kCsvOrder = {
    Measure::Q0,      Measure::Q2,    Measure::Rand,    Measure::Jaccard,
    Measure::FowlkesMallows, Measure::Gamma, Measure::Hamming,
};

std::string_view measure_key(Measure m);   // "q0", "fowlkes_mallows", ...
std::string_view measure_column(Measure m); // "q0", "fm", ...
std::string_view measure_title(Measure m);  // "Q0", "Fowlkes", ...

// Q0 is a code length: smaller is better. Everything else grows with quality.
constexpr bool higher_is_better(Measure m) { return m != Measure::Q0; }

struct MeasureVector {
    std::array<double, kNumMeasures> values{};
    std::array<bool, kNumMeasures> degenerate{};

    double operator[](Measure m) const { return values[static_cast<std::size_t>(m)]; }
    double& operator[](Measure m) { return values[static_cast<std::size_t>(m)]; }
    bool is_degenerate(Measure m) const { return degenerate[static_cast<std::size_t>(m)]; }
    bool any_degenerate() const;

    bool operator==(const MeasureVector&) const = default;
};

// All seven measures. Component failures are recorded in the degenerate
// flags (value NaN, or 0 for Jaccard) instead of being thrown.
MeasureVector all_measures(const ContingencyTable& table);

// Same, with the pair-based measures computed from the given pair table.
MeasureVector all_measures(const ContingencyTable& table, const PairCounts& pairs);

} // namespace extval
